"""Quadrature used by every oracle in the package.

* `integrate_adaptive` -- vectorised 7/15-point Gauss-Kronrod with bisection,
  for smooth complex integrands on finite intervals.
* `integrate_oscillatory_halfline` -- sums integrals over consecutive
  half-periods of a known phase and accelerates the alternating partial sums
  by iterated averaging (Euler transformation).
* `richardson_extrapolate` -- polynomial extrapolation to a vanishing
  regularisation parameter.

Integrands take and return NumPy arrays (real or complex).
"""
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateNodesError, QuadratureError

__all__ = [
    "QuadConfig",
    "OscIntegralResult",
    "NonAlternationWarning",
    "integrate_adaptive",
    "integrate_oscillatory_halfline",
    "quadratic_phase_zeros",
    "linear_phase_zeros",
    "iterated_average",
    "richardson_extrapolate",
]

# Kronrod nodes on [0, 1] (positive half, descending) and weights; the Gauss
# 7-point rule uses the odd-indexed nodes.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # 15 nodes ascending
_WK15 = np.concatenate([_WK[:-1], _WK[::-1]])
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[7] = _WG[3]
_WG15[[9, 11, 13]] = _WG[:3][::-1]


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances and budgets shared by the integrators.

    ``max_segments`` bounds both the number of oscillation segments of a
    half-line integral and the number of subintervals of an adaptive one.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_segments: int = 500
    acceleration_depth: int = 6

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_segments <= 0:
            raise ValueError("max_segments must be positive")
        if self.acceleration_depth < 0:
            raise ValueError("acceleration_depth must be >= 0")

    def target(self, value) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class OscIntegralResult:
    value: complex
    error_estimate: float
    segments_used: int


class NonAlternationWarning(RuntimeWarning):
    """Consecutive segment integrals stopped alternating; acceleration was disabled."""


def _gk15(f, a, b):
    """Kronrod value and error estimate for each interval [a_i, b_i] (arrays).

    The estimate is the QUADPACK scaling of ``|K - G|``:
    ``asc * min(1, (200 |K - G| / asc)^1.5)`` with ``asc`` the Kronrod integral of
    ``|f - mean|``, floored at a few ulps of ``int |f|``.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel())).reshape(x.shape)
    k = (fx @ _WK15) * half
    g = (fx @ _WG15) * half
    ahalf = np.abs(half)
    mean = (k / np.where(half == 0, 1.0, 2.0 * half))[:, None]
    asc = (np.abs(fx - mean) @ _WK15) * ahalf
    absint = (np.abs(fx) @ _WK15) * ahalf
    raw = np.abs(k - g)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(asc > 0, asc * np.minimum(1.0, (200.0 * raw / asc) ** 1.5), raw)
    return k, np.maximum(scaled, 50.0 * np.finfo(float).eps * absint)


def _adaptive_pieces(f, a, b, abs_tol, rel_tol, budget):
    los = np.array([a], dtype=float)
    his = np.array([b], dtype=float)
    vals, errs = _gk15(f, los, his)
    width = b - a
    while True:
        total = vals.sum()
        err = float(errs.sum())
        tol = max(abs_tol, rel_tol * abs(total))
        if err <= tol:
            return total, err, len(los), True
        # bisect every interval exceeding its length-proportional share
        share = tol * (his - los) / width
        split = errs > share
        if not np.any(split):
            split = errs == errs.max()
        if len(los) + int(split.sum()) > budget:
            return total, err, len(los), False
        mids = 0.5 * (los[split] + his[split])
        if np.any((mids <= los[split]) | (mids >= his[split])):
            return total, err, len(los), False
        new_lo = np.concatenate([los[split], mids])
        new_hi = np.concatenate([mids, his[split]])
        nv, ne = _gk15(f, new_lo, new_hi)
        keep = ~split
        los = np.concatenate([los[keep], new_lo])
        his = np.concatenate([his[keep], new_hi])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])
        order = np.argsort(los, kind="stable")
        los, his, vals, errs = los[order], his[order], vals[order], errs[order]


def integrate_adaptive(f, a: float, b: float, cfg: QuadConfig = QuadConfig()) -> OscIntegralResult:
    """Integrate ``f`` over ``[a, b]`` by adaptive Gauss-Kronrod bisection.

    The error estimate is the sum of the per-interval Kronrod estimates.

    Raises
    ------
    QuadratureError
        When the tolerance is not met within ``cfg.max_segments`` subintervals;
        the best estimate is attached.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    total, err, n, ok = _adaptive_pieces(f, float(a), float(b), cfg.abs_tol, cfg.rel_tol, cfg.max_segments)
    result = OscIntegralResult(complex(total), err, n)
    if not ok:
        raise QuadratureError(f"adaptive quadrature on [{a}, {b}] stopped at error {err:.3g}", result)
    return result


def integrate_piecewise(f, a: float, b: float, cfg: QuadConfig = QuadConfig(),
                        max_rate: float = 0.0, per_piece: float = 50.0) -> OscIntegralResult:
    """`integrate_adaptive` over equal pieces holding about ``per_piece`` oscillations each.

    ``max_rate`` bounds ``|dphase/dx|`` on ``[a, b]``; the absolute tolerance is
    shared evenly so the summed error estimate still meets ``cfg``.
    """
    n = max(1, int(math.ceil(max_rate * (b - a) / (math.pi * per_piece))))
    if n == 1:
        return integrate_adaptive(f, a, b, cfg)
    piece_cfg = replace(cfg, abs_tol=cfg.abs_tol / n)
    edges = np.linspace(a, b, n + 1)
    total = 0j
    err = 0.0
    used = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        try:
            r = integrate_adaptive(f, lo, hi, piece_cfg)
        except QuadratureError as exc:
            best = exc.best
            raise QuadratureError(str(exc), OscIntegralResult(total + best.value, err + best.error_estimate,
                                                              used + best.segments_used)) from None
        total += r.value
        err += r.error_estimate
        used += r.segments_used
    return OscIntegralResult(total, err, used)


def quadratic_phase_zeros(c: float, d: float, start: float, direction: int):
    """Boundaries where the phase ``c*y^2 + d*y`` has moved by ``n*pi`` from ``start``.

    ``start`` must lie on the far side of the vertex ``-d/(2c)`` in the direction
    of travel, so that the phase is monotone along the half-line.
    """
    if c == 0:
        return linear_phase_zeros(d, start, direction)
    vertex = -d / (2.0 * c)
    off = start - vertex
    if off * direction < 0:
        raise ValueError("start lies before the vertex of the quadratic phase")
    off2 = off * off
    step = math.pi / abs(c)

    def zeros(n):
        return vertex + direction * np.sqrt(off2 + step * np.asarray(n, dtype=float))

    return zeros


def linear_phase_zeros(omega: float, start: float, direction: int):
    """Boundaries ``start + direction * n * pi / |omega|`` of a linear phase."""
    if omega == 0:
        raise ValueError("a linear phase needs a nonzero rate")
    step = math.pi / abs(omega)

    def zeros(n):
        return start + direction * step * np.asarray(n, dtype=float)

    return zeros


def iterated_average(partial_sums, depth: int):
    """Average neighbouring partial sums ``depth`` times; returns the last entry.

    For an alternating series with smooth term magnitudes this is the Euler
    transformation of its tail.
    """
    s = np.asarray(partial_sums)
    depth = min(depth, len(s) - 1)
    for _ in range(depth):
        s = 0.5 * (s[1:] + s[:-1])
    return s[-1]


def integrate_oscillatory_halfline(f, phase_zeros, cfg: QuadConfig = QuadConfig(), batch: int = 16) -> OscIntegralResult:
    """Integrate ``f`` over the half-line swept by ``phase_zeros(0), phase_zeros(1), ...``.

    Each segment between consecutive boundaries is integrated with Gauss-Kronrod
    (refined adaptively when needed).  The partial sums are accelerated by
    `iterated_average` of depth ``cfg.acceleration_depth``; the run stops when two
    successive accelerated values agree to the configured tolerance.

    The orientation is always positive: for decreasing boundaries the result is
    ``int_{-inf}^{phase_zeros(0)} f``.

    Raises
    ------
    QuadratureError
        On exhausting ``cfg.max_segments``; the best estimate is attached.

    Warns
    -----
    NonAlternationWarning
        If the segment integrals stop alternating in sign; the plain partial sum
        is then reported instead of the accelerated value.
    """
    depth = cfg.acceleration_depth
    terms = []
    quad_err = 0.0
    n0 = 0
    accel_prev = None
    accel_hist = []
    alternating = True
    while n0 < cfg.max_segments:
        nb = min(batch, cfg.max_segments - n0)
        edges = phase_zeros(np.arange(n0, n0 + nb + 1))
        lo = np.minimum(edges[:-1], edges[1:])
        hi = np.maximum(edges[:-1], edges[1:])
        vals, errs = _gk15(f, lo, hi)
        vals = vals.astype(complex)
        for i in range(nb):
            seg_tol = 0.1 * cfg.abs_tol
            if errs[i] > seg_tol and errs[i] > 0.1 * cfg.rel_tol * abs(vals[i]):
                v, e, _, _ = _adaptive_pieces(f, lo[i], hi[i], seg_tol, 0.1 * cfg.rel_tol, 64)
                vals[i], errs[i] = v, e
        terms.extend(vals.tolist())
        quad_err += float(errs.sum())
        n0 += nb

        t = np.asarray(terms)
        sums = np.cumsum(t)
        if len(t) >= 4:
            prods = (t[1:] * np.conj(t[:-1])).real
            tail = prods[-min(8, len(prods)):]
            if np.any(tail > 0) and np.all(np.abs(t[-len(tail):]) > 1e-300):
                alternating = False
        if not alternating:
            warnings.warn("segment integrals stopped alternating; reporting the plain partial sum",
                          NonAlternationWarning, stacklevel=2)
            value = sums[-1]
            err = abs(t[-1]) + quad_err
            result = OscIntegralResult(complex(value), err, len(t))
            if err <= cfg.target(value):
                return result
            raise QuadratureError("non-alternating segments; truncation error too large", result)
        if len(sums) < depth + 2:
            continue
        # accelerated estimates at the last few truncation points
        accel = [iterated_average(sums[: len(sums) - j], depth) for j in (2, 1, 0)]
        accel_hist = accel
        diff = max(abs(accel[2] - accel[1]), abs(accel[1] - accel[0]))
        value = accel[2]
        err = diff + quad_err
        if err <= cfg.target(value):
            return OscIntegralResult(complex(value), err, len(t))
        accel_prev = value
    value = accel_hist[-1] if accel_hist else (np.sum(terms) if terms else 0j)
    result = OscIntegralResult(complex(value), float("inf") if accel_prev is None else err, len(terms))
    raise QuadratureError(f"oscillatory integral not converged after {len(terms)} segments", result)


def richardson_extrapolate(samples) -> complex:
    """Extrapolate ``[(eps, value), ...]`` to ``eps = 0`` with the interpolating polynomial.

    Uses Neville's scheme; the polynomial degree is ``len(samples) - 1``.
    """
    pts = [(float(e), complex(v)) for e, v in samples]
    if len(pts) < 2:
        raise DegenerateNodesError("richardson_extrapolate needs at least two samples")
    eps = [e for e, _ in pts]
    if len(set(eps)) != len(eps):
        raise DegenerateNodesError(f"repeated extrapolation nodes {eps}")
    if any(e <= 0 for e in eps):
        raise DegenerateNodesError("extrapolation nodes must be positive")
    p = [v for _, v in pts]
    n = len(p)
    for m in range(1, n):
        for i in range(n - m):
            # value at 0 of the polynomial through nodes i..i+m
            p[i] = (eps[i + m] * p[i] - eps[i] * p[i + 1]) / (eps[i + m] - eps[i])
    return p[0]
