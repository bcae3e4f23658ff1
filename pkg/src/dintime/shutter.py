"""The opened-shutter state in configuration space (hbar = m = 1).

A beam ``exp(i k x)`` occupies ``x < 0`` and the absorbing shutter at ``x = 0``
is removed at ``t = 0``.  The free evolution is

    M(x, k, t) = 1/2 exp[i(k x - k^2 t / 2)] erfc(exp(-i pi/4) w),   w = (x - k t) / sqrt(2 t),

and the density ``|M|^2`` is the Fresnel straight-edge pattern in ``w``.
A complex momentum ``k - i eps`` (``eps > 0``) makes the state square-integrable.
"""
import cmath
import math
from typing import NamedTuple

import numpy as np

from .errors import NonPositiveTimeError, QuadratureError
from .quad import (
    OscIntegralResult,
    QuadConfig,
    integrate_adaptive,
    integrate_oscillatory_halfline,
    quadratic_phase_zeros,
)
from .specfun import erfcx_array, fresnel, fresnel_array

__all__ = [
    "ShutterParams",
    "SpacetimePoint",
    "step",
    "w_of",
    "m_amplitude",
    "m_density",
    "propagator",
    "m_via_propagator",
    "amplitude_array",
    "plane_wave_array",
    "density_array",
]

_ROT = complex(math.sqrt(0.5), -math.sqrt(0.5))  # e^{-i pi/4}


class ShutterParams(NamedTuple):
    """Beam momentum ``k`` and regularisation ``eps``; the effective momentum is ``k - i eps``."""

    k: float
    eps: float = 0.0

    @property
    def k_complex(self) -> complex:
        return complex(self.k, -self.eps)


class SpacetimePoint(NamedTuple):
    x: float
    t: float


def _check_time(t):
    if not t > 0:
        raise NonPositiveTimeError(f"time must be positive, got t={t}")


def _check_params(params: ShutterParams):
    if not math.isfinite(params.k):
        raise ValueError(f"k must be finite, got {params.k}")
    if params.eps < 0:
        raise ValueError(f"eps must be >= 0, got {params.eps}")


def step(x: float) -> float:
    """Heaviside step with the symmetric value 1/2 at the origin."""
    if x > 0:
        return 1.0
    if x < 0:
        return 0.0
    return 0.5


def w_of(pt: SpacetimePoint, k: float) -> float:
    """Diffraction variable ``(x - k t) / sqrt(2 t)``."""
    _check_time(pt.t)
    return (pt.x - k * pt.t) / math.sqrt(2.0 * pt.t)


def plane_wave_array(x, t, k):
    """``exp[i(k x - k^2 t / 2)]`` for complex ``k``, elementwise in ``x``."""
    x = np.asarray(x, dtype=float)
    return np.exp(1j * (k * x - 0.5 * k * k * t))


def amplitude_array(x, t, k):
    """M(x, k, t) for real ``t > 0`` and real or complex ``k``, elementwise in ``x``.

    Evaluated as ``1/2 exp(i x^2/2t) erfcx(z)`` when ``Re z >= 0`` and as
    ``exp[i(kx - k^2 t/2)] - 1/2 exp(i x^2/2t) erfcx(-z)`` otherwise, where
    ``z = exp(-i pi/4) (x - k t)/sqrt(2t)``.  Combining the exponentials this way
    keeps every factor bounded for complex ``k``.
    """
    x = np.asarray(x, dtype=float)
    k = complex(k)
    z = _ROT * (x - k * t) / math.sqrt(2.0 * t)
    chirp = np.exp(1j * (x * x) / (2.0 * t))
    ahead = z.real >= 0
    zz = np.where(ahead, z, -z)
    out = (0.5 * chirp * erfcx_array(zz)).reshape(x.shape)
    behind = ~ahead
    if np.any(behind):
        # the plane wave is only bounded behind the front; evaluate it there only
        out = np.asarray(out)
        out[behind] = plane_wave_array(x[behind], t, k) - out[behind]
    return out


def density_array(x, t, k):
    """``1/2 {[1/2 - C(w)]^2 + [1/2 - S(w)]^2}`` elementwise (real ``k``)."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise NonPositiveTimeError("time must be positive")
    w = (np.asarray(x, dtype=float) - k * t) / np.sqrt(2.0 * t)
    c, s = fresnel_array(w)
    return 0.5 * ((0.5 - c) ** 2 + (0.5 - s) ** 2)


def m_amplitude(pt: SpacetimePoint, params: ShutterParams) -> complex:
    """The shutter amplitude M(x, k, t).

    For ``eps = 0`` the Fresnel form
    ``exp(-i pi/4) exp[i(kx - k^2 t/2)] {[1/2 - C(w)] + i [1/2 - S(w)]} / sqrt(2)``
    is used; for ``eps > 0`` the complementary error function form with momentum
    ``k - i eps``.
    """
    _check_time(pt.t)
    _check_params(params)
    x, t = pt.x, pt.t
    if params.eps == 0:
        k = params.k
        c, s = fresnel(w_of(pt, k))
        phase = cmath.exp(1j * (k * x - 0.5 * k * k * t))
        return _ROT * phase * complex(0.5 - c, 0.5 - s) / math.sqrt(2.0)
    return complex(amplitude_array(np.array([x]), t, params.k_complex)[0])


def m_density(pt: SpacetimePoint, params: ShutterParams) -> float:
    """Probability density ``|M|^2`` from the Fresnel integrals (``eps = 0`` only)."""
    _check_time(pt.t)
    _check_params(params)
    if params.eps != 0:
        raise ValueError("m_density is defined for real momentum (eps = 0)")
    c, s = fresnel(w_of(pt, params.k))
    return 0.5 * ((0.5 - c) ** 2 + (0.5 - s) ** 2)


def propagator(x: float, xprime: float, t: float) -> complex:
    """Free-particle kernel ``exp(i (x - x')^2 / 2t) / sqrt(2 pi i t)``, ``sqrt(i) = e^{i pi/4}``."""
    _check_time(t)
    d = x - xprime
    return cmath.exp(1j * (d * d / (2.0 * t) - 0.25 * math.pi)) / math.sqrt(2.0 * math.pi * t)


def m_via_propagator(pt: SpacetimePoint, params: ShutterParams, quad: QuadConfig = QuadConfig()) -> OscIntegralResult:
    """Propagate the truncated plane wave numerically: ``int_{-inf}^0 U(x - x', t) e^{i k x'} dx'``.

    The kernel phase ``(x' - x)^2 / 2t + Re(k) x'`` is quadratic in ``x'``, so the
    half-line beyond its vertex is cut at exact half-periods and summed with
    acceleration; the finite remainder is integrated adaptively.  ``eps > 0``
    makes the integral absolutely convergent.
    """
    _check_time(pt.t)
    _check_params(params)
    x, t = pt.x, pt.t
    k = params.k_complex
    norm = cmath.exp(-0.25j * math.pi) / math.sqrt(2.0 * math.pi * t)

    def f(xp):
        d = x - xp
        return norm * np.exp(1j * (d * d / (2.0 * t) + k * xp))

    c = 1.0 / (2.0 * t)
    d = params.k - x / t
    vertex = x - params.k * t
    start = min(0.0, vertex - 2.0 * math.sqrt(t))
    head = OscIntegralResult(0j, 0.0, 0)
    if start < 0.0:
        head = integrate_adaptive(f, start, 0.0, quad)
    try:
        tail = integrate_oscillatory_halfline(f, quadratic_phase_zeros(c, d, start, -1), quad)
    except QuadratureError as exc:
        best = exc.best
        raise QuadratureError(str(exc), OscIntegralResult(head.value + best.value,
                                                          head.error_estimate + best.error_estimate,
                                                          best.segments_used)) from None
    return OscIntegralResult(head.value + tail.value, head.error_estimate + tail.error_estimate,
                             head.segments_used + tail.segments_used)
