"""Wigner quasiprobability of the opened-shutter state.

With ``u = p t - x`` the Wigner function of ``M(x, k, t)`` is

    W(x, p; k, t) = sin(2 u (k - p)) / (pi (k - p)) * theta(u)
                  = (2 u / pi) * sinc(2 u (k - p)) * theta(u),

the free-flight image ``W_0(x - p t, p)`` of the initial truncated plane wave.
It vanishes for ``x > p t`` and takes both signs behind that line.  In
physical units the sine argument becomes ``g (k - p)`` with
``g = 2 (p t / m - x) / hbar``, and as ``hbar -> 0`` the distribution
concentrates on ``p = k``.

`wigner_oracle` evaluates the defining integral
``(1/pi) int M*(x+y) M(x-y) exp(2ipy) dy`` directly from the amplitude;
`wigner_marginal` integrates the closed form over momentum.
"""
import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NonPositiveTimeError, NonRealResultError, QuadratureError
from .quad import (
    QuadConfig,
    integrate_adaptive,
    integrate_oscillatory_halfline,
    integrate_piecewise,
    linear_phase_zeros,
    quadratic_phase_zeros,
    richardson_extrapolate,
)
from .shutter import ShutterParams, amplitude_array, plane_wave_array
from .specfun import sinc, sinc_array

__all__ = [
    "PhasePoint",
    "PhysicalUnits",
    "wigner_closed",
    "wigner_closed_array",
    "wigner_cgs",
    "wigner_cgs_array",
    "wigner_oracle",
    "wigner_oracle_extrapolated",
    "wigner_marginal",
    "classical_concentration",
    "DEFAULT_EPS_LADDER",
]

DEFAULT_EPS_LADDER = (4e-3, 2e-3, 1e-3)


class PhasePoint(NamedTuple):
    x: float
    p: float


class PhysicalUnits(NamedTuple):
    hbar: float
    mass: float

    def check(self):
        if not (self.hbar > 0 and self.mass > 0):
            raise ValueError(f"hbar and mass must be positive, got {self}")


def _check_time(t):
    if not np.all(np.asarray(t) > 0):
        raise NonPositiveTimeError(f"time must be positive, got t={t}")


def wigner_closed(pp: PhasePoint, k: float, t: float) -> float:
    """W(x, p; k, t) in natural units; exactly zero for ``x >= p t``.

    The ``p = k`` point is regular (value ``2 u / pi``) and is reached through
    `sinc`, never by dividing by ``k - p``.
    """
    _check_time(t)
    u = pp.p * t - pp.x
    if u <= 0:
        return 0.0
    return (2.0 * u / math.pi) * sinc(2.0 * u * (k - pp.p))


def wigner_closed_array(x, p, k, t):
    """Vectorised `wigner_closed` (broadcasts ``x`` against ``p``)."""
    _check_time(t)
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    u = p * t - x
    val = (2.0 * u / math.pi) * sinc_array(2.0 * u * (k - p))
    return np.where(u > 0, val, 0.0)


def wigner_cgs(pp: PhasePoint, k: float, t: float, units: PhysicalUnits) -> float:
    """W in physical units: ``sin[g (k - p)] / (pi (k - p)) * theta(p t/m - x)``.

    ``g = 2 (p t / m - x) / hbar``; ``k`` and ``p`` are momenta.  With
    ``hbar = m = 1`` this is `wigner_closed`.
    """
    _check_time(t)
    units.check()
    u = pp.p * t / units.mass - pp.x
    if u <= 0:
        return 0.0
    g = 2.0 * u / units.hbar
    return (g / math.pi) * sinc(g * (k - pp.p))


def wigner_cgs_array(x, p, k, t, units: PhysicalUnits):
    _check_time(t)
    units.check()
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    u = p * t / units.mass - x
    g = 2.0 * u / units.hbar
    return np.where(u > 0, (g / math.pi) * sinc_array(g * (k - p)), 0.0)


# ---------------------------------------------------------------------------
# Definitional oracle


def _oracle_pieces(x, p, k, eps, t, quad):
    """Integral of M*(x+y) M(x-y) e^{2ipy} over y, as (value, error)."""
    kc = complex(k, -eps)
    rt = math.sqrt(t)
    two_p = 2.0 * p

    def full(y):
        return np.conj(amplitude_array(x + y, t, kc)) * amplitude_array(x - y, t, kc) * np.exp(1j * two_p * y)

    # y > 0: x + y runs ahead of the front (pure tail), x - y behind (plane wave + tail)
    def pos_chirp(y):
        return np.conj(amplitude_array(x + y, t, kc)) * plane_wave_array(x - y, t, kc) * np.exp(1j * two_p * y)

    def pos_cross(y):
        xm = x - y
        tail = amplitude_array(xm, t, kc) - plane_wave_array(xm, t, kc)
        return np.conj(amplitude_array(x + y, t, kc)) * tail * np.exp(1j * two_p * y)

    # y < 0: mirror image
    def neg_chirp(y):
        return np.conj(plane_wave_array(x + y, t, kc)) * amplitude_array(x - y, t, kc) * np.exp(1j * two_p * y)

    def neg_cross(y):
        xp = x + y
        tail = amplitude_array(xp, t, kc) - plane_wave_array(xp, t, kc)
        return np.conj(tail) * amplitude_array(x - y, t, kc) * np.exp(1j * two_p * y)

    # chirp phase: -/+ y^2/2t + (2p - k - x/t) y ; cross phase: 2 (p - x/t) y
    lin = two_p - k - x / t
    vertex = abs(lin) * t
    omega = 2.0 * (p - x / t)
    reach = abs(x - k * t) + 6.0 * math.sqrt(2.0 * t) + vertex + 2.0 * rt
    rate = 2.0 * (abs(x) + reach) / t + 2.0 * abs(p) + 2.0 * abs(k)
    head = integrate_piecewise(full, -reach, reach, quad, rate)
    value = head.value
    err = head.error_estimate
    pieces = [
        (pos_chirp, quadratic_phase_zeros(-0.5 / t, lin, reach, +1)),
        (neg_chirp, quadratic_phase_zeros(0.5 / t, lin, -reach, -1)),
    ]
    for fn, zeros in pieces:
        r = integrate_oscillatory_halfline(fn, zeros, quad)
        value += r.value
        err += r.error_estimate
    for fn, sign in ((pos_cross, +1), (neg_cross, -1)):
        r = _cross_tail(fn, omega, sign * reach, sign, quad)
        value += r[0]
        err += r[1]
    return value, err


def _cross_tail(fn, omega, start, direction, quad):
    # product of two 1/y tails with a linear phase; without oscillation the
    # integrand is absolutely integrable and is mapped onto a finite interval
    if abs(omega) * abs(start) > 1.0:
        r = integrate_oscillatory_halfline(fn, linear_phase_zeros(omega, start, direction), quad)
        return r.value, r.error_estimate

    def mapped(s):
        y = start / (1.0 - s)
        return fn(y) * abs(start) / (1.0 - s) ** 2

    r = integrate_adaptive(mapped, 0.0, 1.0 - 1e-12, quad)
    return r.value, r.error_estimate


def wigner_oracle(pp: PhasePoint, params: ShutterParams, t: float, quad: QuadConfig = QuadConfig()) -> float:
    """W at finite regularisation ``eps`` from the defining y-integral.

    The integration range is split into a central interval and four half-line
    tails; on each tail the integrand is separated into a quadratic-phase part
    (tail times plane wave) and a linear-phase part (tail times tail), and each
    is summed over its own half-periods with acceleration.

    Raises
    ------
    NonRealResultError
        If the imaginary part exceeds ten times the tolerance.
    """
    _check_time(t)
    if not params.eps > 0:
        raise ValueError("wigner_oracle needs eps > 0")
    value, err = _oracle_pieces(pp.x, pp.p, params.k, params.eps, t, quad)
    w = value / math.pi
    tol = quad.target(w)
    if abs(w.imag) > 10.0 * max(tol, err / math.pi):
        raise NonRealResultError(f"Wigner oracle imaginary part {w.imag:.3g} at {pp}")
    return w.real


def wigner_oracle_extrapolated(pp: PhasePoint, k: float, t: float, quad: QuadConfig = QuadConfig(),
                               eps_ladder=DEFAULT_EPS_LADDER) -> float:
    """Oracle values on a geometric ``eps`` ladder extrapolated quadratically to ``eps = 0``."""
    samples = [(e, wigner_oracle(pp, ShutterParams(k, e), t, quad)) for e in eps_ladder]
    return richardson_extrapolate(samples).real


# ---------------------------------------------------------------------------
# Momentum marginal


def wigner_marginal(x: float, k: float, t: float, quad: QuadConfig = QuadConfig()) -> float:
    """``int W(x, p) dp`` over the support ``p > x/t``.

    The sine argument ``g(p) = 2 (p t - x)(k - p)`` is a downward parabola in
    ``p``.  Past its vertex the integral is cut at the exact roots of
    ``g(p) = m pi`` and the alternating segment sums are accelerated.
    """
    _check_time(t)
    p_lo = x / t
    vertex = (k * t + x) / (2.0 * t)
    p_start = max(p_lo, vertex)
    g_start = 2.0 * (p_start * t - x) * (k - p_start)
    disc0 = (k * t - x) ** 2

    def root(m):
        # larger root of g(p) = m pi
        return ((k * t + x) + np.sqrt(np.maximum(disc0 - 2.0 * t * m * math.pi, 0.0))) / (2.0 * t)

    m0 = math.floor(g_start / math.pi + 1e-12)
    if m0 * math.pi > g_start:
        m0 -= 1
    first = float(root(m0))

    def f(p):
        return wigner_closed_array(x, p, k, t)

    total = 0.0
    if first > p_lo:
        total += integrate_adaptive(f, p_lo, first, quad).value.real

    def zeros(n):
        return root(m0 - np.asarray(n, dtype=float))

    tail = integrate_oscillatory_halfline(f, zeros, quad)
    return total + tail.value.real


def classical_concentration(k: float, t: float, x: float, units: PhysicalUnits, delta: float,
                            quad: QuadConfig = QuadConfig(), box: float = None) -> float:
    """Share of the momentum window ``|p - k| < box`` carried by ``|p - k| < delta``.

    Ratio ``int_{|p-k|<delta} W dp / int_{|p-k|<box} W dp`` of the physical-unit
    Wigner function, ``box = 10 delta`` by default; tends to 1 as ``hbar -> 0``.
    The ratio is not monotone in ``hbar``: the inner window integral behaves
    like ``Si(g delta)`` and overshoots 1 before settling.
    """
    units.check()
    _check_time(t)
    if not delta > 0:
        raise ValueError("delta must be positive")
    if not x < k * t / units.mass:
        raise DomainError(f"x={x} must lie behind the classical front k t / m = {k * t / units.mass}")

    def f(p):
        return wigner_cgs_array(x, p, k, t, units)

    box = 10.0 * delta if box is None else box
    if not box >= delta:
        raise ValueError("box must be at least delta")

    def window(half):
        # split at the support edge p = m x / t so the integrand is smooth per piece
        lo, hi = k - half, k + half
        edge = units.mass * x / t
        cuts = [lo] + [c for c in (edge,) if lo < c < hi] + [hi]
        n = max(1, int(math.ceil((hi - lo) * 2.0 * (k * t / units.mass - x + half * t / units.mass)
                                 / units.hbar / math.pi)))
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            edges = np.linspace(a, b, min(n, 4000) + 1)
            for lo_i, hi_i in zip(edges[:-1], edges[1:]):
                total += integrate_adaptive(f, lo_i, hi_i, quad).value.real
        return total

    return window(delta) / window(box)
