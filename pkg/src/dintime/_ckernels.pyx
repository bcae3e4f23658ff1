# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Fresnel integrals and the scaled complementary error function.

Same region split and series/continued-fraction algorithms as ``_pykernels``,
evaluated point by point with early termination.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, fabs, sqrt, hypot, M_PI

cnp.import_array()

cdef double SQRT_PI = 1.7724538509055160273
cdef double SQRT_2_OVER_PI = 0.79788456080286535588
cdef double SQRT_HALF = 0.70710678118654752440

cdef double CF_MIN_REAL = 1.5
cdef double CF_MIN_ABS = 7.0
cdef double FRESNEL_SERIES_MAX = 3.0

cdef double SERIES_TOL = 1e-17
cdef double CF_TOL = 1e-16
cdef int CF_MAX_ITER = 5000


cdef inline double complex cexp_(double complex z) nogil:
    cdef double r = exp(z.real)
    return r * cos(z.imag) + 1j * (r * sin(z.imag))


cdef inline double cabs_(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef double complex erf_series(double complex z) nogil:
    cdef double complex z2 = z * z
    cdef double complex term = z
    cdef double complex total = z
    cdef double complex add
    cdef int n = 0
    while True:
        n += 1
        term = term * (-z2 / n)
        add = term / (2 * n + 1)
        total = total + add
        if n > 2 and cabs_(add) <= SERIES_TOL * cabs_(total):
            break
    return total * (2.0 / SQRT_PI)


cdef double complex erfcx_cf(double complex z) nogil:
    # modified Lentz on 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    cdef double tiny = 1e-300
    cdef double complex f = z
    cdef double complex c = z
    cdef double complex d = 0.0
    cdef double complex delta
    cdef double a
    cdef int n
    for n in range(1, CF_MAX_ITER):
        a = 0.5 * n
        d = z + a * d
        if d == 0:
            d = tiny
        d = 1.0 / d
        c = z + a / c
        if c == 0:
            c = tiny
        delta = c * d
        f = f * delta
        if cabs_(delta - 1.0) < CF_TOL:
            break
    return 1.0 / (f * SQRT_PI)


cdef double complex erfcx_rhp(double complex z) nogil:
    if z.real >= CF_MIN_REAL or cabs_(z) >= CF_MIN_ABS:
        return erfcx_cf(z)
    return cexp_(z * z) * (1.0 - erf_series(z))


cdef double complex erfcx_scalar(double complex z) nogil:
    if z.real < 0:
        return 2.0 * cexp_(z * z) - erfcx_rhp(-z)
    return erfcx_rhp(z)


cdef double complex fresnel_scalar(double w) nogil:
    cdef double a = fabs(w)
    cdef double complex iw2, term, total, add, val, zrot
    cdef int m = 0
    if a <= FRESNEL_SERIES_MAX:
        iw2 = 1j * a * a
        term = a
        total = a
        while True:
            m += 1
            term = term * iw2 / m
            add = term / (2 * m + 1)
            total = total + add
            if cabs_(add) < SERIES_TOL:
                break
        val = SQRT_2_OVER_PI * total
    else:
        zrot = (SQRT_HALF - 1j * SQRT_HALF) * a
        val = (0.5 + 0.5j) - SQRT_HALF * cexp_(1j * (0.25 * M_PI + a * a)) * erfcx_rhp(zrot)
    if w < 0:
        return -val
    return val


def erfcx(z):
    """exp(z**2) * erfc(z) for complex ``z``, elementwise."""
    shape = np.shape(z)
    arr = np.ascontiguousarray(z, dtype=np.complex128)
    cdef double complex[::1] src = arr.ravel()
    out = np.empty(src.shape[0], dtype=np.complex128)
    cdef double complex[::1] dst = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(src.shape[0]):
            dst[i] = erfcx_scalar(src[i])
    return out.reshape(shape)


def fresnel(w):
    """Fresnel integrals sqrt(2/pi) * int_0^w (cos y^2, sin y^2) dy, elementwise."""
    shape = np.shape(w)
    arr = np.ascontiguousarray(w, dtype=np.float64)
    cdef double[::1] src = arr.ravel()
    c = np.empty(src.shape[0], dtype=np.float64)
    s = np.empty(src.shape[0], dtype=np.float64)
    cdef double[::1] cv = c
    cdef double[::1] sv = s
    cdef double complex v
    cdef Py_ssize_t i
    with nogil:
        for i in range(src.shape[0]):
            v = fresnel_scalar(src[i])
            cv[i] = v.real
            sv[i] = v.imag
    return c.reshape(shape), s.reshape(shape)
