"""Pure-NumPy kernels: Fresnel integrals and the scaled complementary error function.

Mirrors the compiled ``_ckernels`` extension function for function; used when the
extension is not built or ``DINTIME_PURE_PYTHON`` is set.
"""
import numpy as np

SQRT_PI = 1.7724538509055160273
SQRT_2_OVER_PI = 0.79788456080286535588
SQRT_HALF = 0.70710678118654752440
# e^{-i pi/4}
ROT = SQRT_HALF - 1j * SQRT_HALF

# Region split for erfcx, shared with the compiled kernel.
CF_MIN_REAL = 1.5
CF_MIN_ABS = 7.0
FRESNEL_SERIES_MAX = 3.0

_SERIES_TOL = 1e-17
_CF_TOL = 1e-16
_CF_START_DEPTH = 24
_CF_MAX_DEPTH = 1536


def _erf_series(z):
    """Maclaurin series of erf, summed until the added term is negligible everywhere."""
    z2 = z * z
    term = z.copy()
    total = z.copy()
    n = 0
    while True:
        n += 1
        term = term * (-z2 / n)
        add = term / (2 * n + 1)
        total += add
        if n > 2 and np.all(np.abs(add) <= _SERIES_TOL * np.maximum(np.abs(total), 1e-300)):
            break
    return total * (2.0 / SQRT_PI)


def _cf_backward(z, depth):
    # erfcx(z) * sqrt(pi) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    tail = np.zeros_like(z)
    for n in range(depth, 0, -1):
        tail = (0.5 * n) / (z + tail)
    return 1.0 / (z + tail)


def _erfcx_cf(z):
    depth = _CF_START_DEPTH
    prev = _cf_backward(z, depth)
    while True:
        depth *= 2
        cur = _cf_backward(z, depth)
        if np.all(np.abs(cur - prev) <= _CF_TOL * np.abs(cur)) or depth >= _CF_MAX_DEPTH:
            return cur / SQRT_PI
        prev = cur


def erfcx(z):
    """exp(z**2) * erfc(z) for complex ``z``, elementwise.

    Accurate in the closed right half plane.  For ``Re z < 0`` the reflection
    ``2 exp(z**2) - erfcx(-z)`` is applied and may overflow.
    """
    z = np.asarray(z, dtype=np.complex128)
    flat = z.ravel()
    out = np.empty_like(flat)
    neg = flat.real < 0
    zr = np.where(neg, -flat, flat)
    use_cf = (zr.real >= CF_MIN_REAL) | (np.abs(zr) >= CF_MIN_ABS)
    if np.any(use_cf):
        out[use_cf] = _erfcx_cf(zr[use_cf])
    ser = ~use_cf
    if np.any(ser):
        zs = zr[ser]
        out[ser] = np.exp(zs * zs) * (1.0 - _erf_series(zs))
    if np.any(neg):
        zn = flat[neg]
        with np.errstate(over="ignore", invalid="ignore"):
            out[neg] = 2.0 * np.exp(zn * zn) - out[neg]
    return out.reshape(z.shape)


def _fresnel_series(w):
    # sum_m (i w^2)^m w / (m! (2m+1))
    iw2 = 1j * w * w
    term = w.astype(np.complex128)
    total = term.copy()
    m = 0
    while True:
        m += 1
        term = term * iw2 / m
        add = term / (2 * m + 1)
        total += add
        if np.all(np.abs(add) < _SERIES_TOL):
            break
    return total


def fresnel(w):
    """Fresnel integrals sqrt(2/pi) * int_0^w (cos y^2, sin y^2) dy, elementwise."""
    w = np.asarray(w, dtype=np.float64)
    flat = w.ravel()
    a = np.abs(flat)
    val = np.empty(flat.shape, dtype=np.complex128)
    small = a <= FRESNEL_SERIES_MAX
    if np.any(small):
        val[small] = SQRT_2_OVER_PI * _fresnel_series(a[small])
    big = ~small
    if np.any(big):
        ab = a[big]
        # int_w^inf e^{iy^2} dy = (sqrt(pi)/2) e^{i pi/4} e^{i w^2} erfcx(e^{-i pi/4} w)
        tail = SQRT_HALF * np.exp(1j * (0.25 * np.pi + ab * ab)) * erfcx(ROT * ab)
        val[big] = (0.5 + 0.5j) - tail
    sign = np.where(flat < 0, -1.0, 1.0)
    c = (sign * val.real).reshape(w.shape)
    s = (sign * val.imag).reshape(w.shape)
    return c, s
