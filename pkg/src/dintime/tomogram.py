"""Symplectic tomogram of the opened-shutter state.

The tomogram ``w(X, mu, nu)`` is the probability density of ``X = mu x + nu p``.
From the state it follows as ``|chi|^2 / (2 pi |nu|)`` with

    chi(X, mu, nu) = int M(u) exp[i (mu u^2 / 2 nu - u X / nu)] du.

For the shutter state, with ``nu' = mu t + nu``,

    w = {[1/2 + C(rho)]^2 + [1/2 + S(rho)]^2} / (2 |mu|),
    rho = sign(mu) (k nu' - X) / sqrt(2 mu nu'),

defined on the admissible set ``mu * nu' > 0``.  Frames are also written as
``mu = e^tau cos(theta)``, ``nu = e^-tau sin(theta)``.
"""
import cmath
import math
from typing import NamedTuple

import numpy as np

from .errors import FrameSingularError, NonPositiveTimeError, QuadratureError
from .quad import (
    OscIntegralResult,
    QuadConfig,
    integrate_oscillatory_halfline,
    integrate_piecewise,
    quadratic_phase_zeros,
    richardson_extrapolate,
)
from .shutter import ShutterParams, amplitude_array, plane_wave_array
from .specfun import fresnel, fresnel_array
from .wigner import DEFAULT_EPS_LADDER, PhasePoint

__all__ = [
    "Frame",
    "TomogramPoint",
    "frame_from_angles",
    "canonical_matrix",
    "canonical_map",
    "rho_of",
    "tomogram_closed",
    "tomogram_array",
    "chi_closed",
    "chi_oracle",
    "chi_oracle_extrapolated",
    "tomogram_from_chi",
]


class Frame(NamedTuple):
    mu: float
    nu: float


class TomogramPoint(NamedTuple):
    X: float
    frame: Frame
    k: float
    t: float


def frame_from_angles(tau: float, theta: float) -> Frame:
    """``(e^tau cos theta, e^-tau sin theta)``."""
    return Frame(math.exp(tau) * math.cos(theta), math.exp(-tau) * math.sin(theta))


def canonical_matrix(tau: float, theta: float) -> np.ndarray:
    """The unit-determinant map taking ``(x, p)`` to the frame coordinates ``(X, P)``."""
    et, emt = math.exp(tau), math.exp(-tau)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[et * c, emt * s], [-et * s, emt * c]])


def canonical_map(tau: float, theta: float, pp: PhasePoint) -> PhasePoint:
    m = canonical_matrix(tau, theta)
    X = m[0, 0] * pp.x + m[0, 1] * pp.p
    P = m[1, 0] * pp.x + m[1, 1] * pp.p
    return PhasePoint(X, P)


def _check(tp: TomogramPoint):
    if not tp.t > 0:
        raise NonPositiveTimeError(f"time must be positive, got t={tp.t}")
    mu, nu = tp.frame
    if mu == 0 and nu == 0:
        raise FrameSingularError("frame (mu, nu) = (0, 0) is not a frame")
    nup = mu * tp.t + nu
    if not mu * nup > 0:
        raise FrameSingularError(
            f"closed form needs mu*(mu*t + nu) > 0; got mu={mu}, nu={nu}, t={tp.t} "
            f"(mu*(mu*t + nu) = {mu * nup:.6g})")
    return mu, nu, nup


def rho_of(tp: TomogramPoint) -> float:
    """Fresnel argument ``(k (mu t + nu) - X) / sqrt(2 mu (mu t + nu))``, sign-folded for ``mu < 0``.

    The fold keeps ``w(-X, -mu, -nu) = w(X, mu, nu)``; for ``mu > 0`` nothing changes.
    """
    mu, nu, nup = _check(tp)
    r = (tp.k * nup - tp.X) / math.sqrt(2.0 * mu * nup)
    return r if mu > 0 else -r


def tomogram_closed(tp: TomogramPoint) -> float:
    """``{[1/2 + C(rho)]^2 + [1/2 + S(rho)]^2} / (2 |mu|)``; nonnegative."""
    rho = rho_of(tp)
    c, s = fresnel(rho)
    return ((0.5 + c) ** 2 + (0.5 + s) ** 2) / (2.0 * abs(tp.frame.mu))


def tomogram_array(X, frame: Frame, k: float, t: float):
    """Vectorised `tomogram_closed` over ``X``; returns ``(rho, w)`` arrays."""
    mu, nu, nup = _check(TomogramPoint(0.0, frame, k, t))
    X = np.asarray(X, dtype=float)
    rho = (k * nup - X) / math.sqrt(2.0 * mu * nup)
    if mu < 0:
        rho = -rho
    c, s = fresnel_array(rho)
    return rho, ((0.5 + c) ** 2 + (0.5 + s) ** 2) / (2.0 * abs(mu))


def chi_closed(tp: TomogramPoint) -> complex:
    """Closed form of ``chi(X, mu, nu)`` for the shutter state.

    ``sqrt(pi |nu/mu|) * phase * exp(-i X^2 t / (2 nu nu')) * exp(-i rho^2)
    * {[1/2 + C(rho)] + i [1/2 + S(rho)]}``, where ``phase`` is 1 when
    ``nu'/nu > 0`` and ``-i`` otherwise (the sign of the Gaussian integral over
    the final position).
    """
    mu, nu, nup = _check(tp)
    if nu == 0:
        raise FrameSingularError("chi needs nu != 0; use tomogram_closed at nu = 0")
    rho = rho_of(tp)
    c, s = fresnel(rho)
    phase = 1.0 if nup / nu > 0 else -1j
    amp = math.sqrt(math.pi * abs(nu / mu))
    x_phase = cmath.exp(-1j * tp.X * tp.X * tp.t / (2.0 * nu * nup))
    return amp * phase * x_phase * cmath.exp(-1j * rho * rho) * complex(0.5 + c, 0.5 + s)


def tomogram_from_chi(chi: complex, nu: float) -> float:
    """``|chi|^2 / (2 pi |nu|)``."""
    if nu == 0:
        raise FrameSingularError("tomogram_from_chi needs nu != 0")
    return abs(chi) ** 2 / (2.0 * math.pi * abs(nu))


def chi_oracle(tp: TomogramPoint, params: ShutterParams, quad: QuadConfig = QuadConfig()) -> OscIntegralResult:
    """``chi`` at momentum ``k - i eps`` by direct quadrature of its defining integral.

    ``tp.k`` is ignored in favour of ``params.k``.  Works on any frame with
    ``nu != 0``, including ``mu = 0`` and frames outside the admissible set.
    Ahead of the front the integrand is a single chirp; behind it the plane-wave
    and diffracted parts have different chirp rates and are summed separately.
    """
    if not tp.t > 0:
        raise NonPositiveTimeError(f"time must be positive, got t={tp.t}")
    if not params.eps > 0:
        raise ValueError("chi_oracle needs eps > 0")
    mu, nu = tp.frame
    if nu == 0:
        raise FrameSingularError("chi needs nu != 0")
    t, X = tp.t, tp.X
    k = params.k
    kc = params.k_complex
    kq = mu / (2.0 * nu)
    kl = -X / nu

    def kernel(u):
        return np.exp(1j * (kq * u * u + kl * u))

    def full(u):
        return amplitude_array(u, t, kc) * kernel(u)

    def plane(u):
        return plane_wave_array(u, t, kc) * kernel(u)

    def diffracted(u):
        return (amplitude_array(u, t, kc) - plane_wave_array(u, t, kc)) * kernel(u)

    a = 0.5 / t + kq
    verts = [abs(kl) / (2.0 * abs(a)) if a != 0 else 0.0]
    if kq != 0:
        verts.append(abs(k + kl) / (2.0 * abs(kq)))
    reach = abs(k * t) + 6.0 * math.sqrt(2.0 * t) + max(verts) + 2.0 * math.sqrt(t)
    rate = reach / t + 2.0 * abs(kq) * reach + abs(kl) + abs(k)
    parts = [integrate_piecewise(full, -reach, reach, quad, rate)]
    try:
        parts.append(integrate_oscillatory_halfline(full, quadratic_phase_zeros(a, kl, reach, +1), quad))
        parts.append(integrate_oscillatory_halfline(plane, quadratic_phase_zeros(kq, k + kl, -reach, -1), quad))
        parts.append(integrate_oscillatory_halfline(diffracted, quadratic_phase_zeros(a, kl, -reach, -1), quad))
    except QuadratureError as exc:
        done = parts + [exc.best]
        raise QuadratureError(str(exc), OscIntegralResult(sum(p.value for p in done),
                                                          sum(p.error_estimate for p in done),
                                                          sum(p.segments_used for p in done))) from None
    return OscIntegralResult(sum(p.value for p in parts), sum(p.error_estimate for p in parts),
                             sum(p.segments_used for p in parts))


def chi_oracle_extrapolated(tp: TomogramPoint, quad: QuadConfig = QuadConfig(),
                            eps_ladder=DEFAULT_EPS_LADDER) -> complex:
    """`chi_oracle` on a geometric ``eps`` ladder, extrapolated to ``eps = 0``."""
    samples = [(e, chi_oracle(tp, ShutterParams(tp.k, e), quad).value) for e in eps_ladder]
    return richardson_extrapolate(samples)
