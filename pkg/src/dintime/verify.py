"""Self-verification suite: closed forms against independent oracles and invariants.

Each check returns a `CheckResult`; `run_suite` collects them.  The
definitional oracles are extrapolated to ``eps -> 0``: ``quick`` linearly from
two coarse values, ``full`` from the default three-value ladder.
"""
import contextlib
import math
import time
from dataclasses import dataclass
from decimal import Decimal, localcontext
from unittest import mock

import numpy as np

from . import specfun
from .quad import QuadConfig, integrate_adaptive, integrate_oscillatory_halfline, quadratic_phase_zeros
from .shutter import (
    ShutterParams,
    SpacetimePoint,
    amplitude_array,
    density_array,
    m_amplitude,
    m_via_propagator,
)
from .specfun import erfc_complex, fresnel_array
from .tomogram import (
    Frame,
    TomogramPoint,
    chi_oracle_extrapolated,
    tomogram_array,
    tomogram_closed,
    tomogram_from_chi,
)
from .wigner import (
    DEFAULT_EPS_LADDER,
    PhasePoint,
    PhysicalUnits,
    classical_concentration,
    wigner_closed,
    wigner_closed_array,
    wigner_marginal,
    wigner_oracle_extrapolated,
)

QUICK_EPS_LADDER = (4e-3, 2e-3)

_PI_50 = Decimal("3.14159265358979323846264338327950288419716939937511")

# phase-space points (x, p) at k = 1, t = 1: p = k, p != k, near and beyond the line x = p t
WIGNER_POINTS = [(0.0, 1.0), (0.5, 1.0), (-1.0, 1.0), (0.0, 2.0), (0.0, 0.5),
                 (-0.5, 0.3), (0.9, 1.0), (0.95, 1.0), (1.4, 1.5), (1.2, 1.0)]
# admissible (X, mu, nu) at k = 1, t = 1, both signs of mu and nu
TOMOGRAM_POINTS = [(1.0, 1.0, 0.5), (0.0, 1.0, 0.5), (2.0, 1.0, 1.0), (-1.0, 2.0, -1.5),
                   (0.5, 0.5, 2.0), (3.0, 1.0, -0.5), (-1.0, -1.0, -0.5), (1.0, -2.0, 1.0),
                   (-2.0, -0.5, -1.0), (0.7, 0.3, 0.2)]


@dataclass
class CheckResult:
    name: str
    measured: float
    tolerance: float
    passed: bool
    relation: str = "<="

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.name:<28} {self.measured:>12.3e} {self.relation} {self.tolerance:<10.3g} {status}"


def fresnel_series_reference(w: float, digits: int = 50):
    """Maclaurin series of the Fresnel integrals in decimal arithmetic."""
    with localcontext() as ctx:
        ctx.prec = digits
        x = Decimal(w)
        x2 = x * x
        x4 = x2 * x2
        c_sum = Decimal(0)
        s_sum = Decimal(0)
        c_term = x          # (-1)^n x^{4n+1} / (2n)!
        s_term = x * x2     # (-1)^n x^{4n+3} / (2n+1)!
        n = 0
        eps = Decimal(10) ** (-digits + 5)
        while True:
            c_add = c_term / (4 * n + 1)
            s_add = s_term / (4 * n + 3)
            c_sum += c_add
            s_sum += s_add
            if abs(c_add) < eps and abs(s_add) < eps and n > 2:
                break
            c_term = -c_term * x4 / ((2 * n + 1) * (2 * n + 2))
            s_term = -s_term * x4 / ((2 * n + 2) * (2 * n + 3))
            n += 1
        scale = (2 / _PI_50).sqrt()
        return float(scale * c_sum), float(scale * s_sum)


def fresnel_quadrature_reference(w: float, cfg: QuadConfig = QuadConfig(abs_tol=1e-11, rel_tol=1e-11)):
    """Fresnel integrals from ``sqrt(pi/8) - int_w^inf`` with segment-summed quadrature."""
    a = abs(w)
    out = []
    for fn, offset in ((np.cos, 0.5), (np.sin, 0.0)):
        # first zero of fn(y^2) at or beyond a
        m = math.ceil(a * a / math.pi - offset)
        y0 = math.sqrt((m + offset) * math.pi)
        head = integrate_adaptive(lambda y: fn(y * y), a, y0, cfg).value.real if y0 > a else 0.0
        tail = integrate_oscillatory_halfline(lambda y: fn(y * y), quadratic_phase_zeros(1.0, 0.0, y0, +1), cfg)
        val = math.sqrt(2.0 / math.pi) * (math.sqrt(math.pi / 8.0) - head - tail.value.real)
        out.append(math.copysign(val, w))
    return tuple(out)


def _rng():
    return np.random.default_rng(20240601)


def check_front_value():
    errs = [abs(float(density_array(k * t, t, k)) - 0.25) for k in (0.5, 1.0, 2.0) for t in (0.5, 2.0, 10.0)]
    m = max(errs)
    return CheckResult("front_value", m, 1e-12, m <= 1e-12)


def check_fresnel_series(n=200):
    w = np.linspace(-3.0, 3.0, n)
    c, s = fresnel_array(w)
    ref = np.array([fresnel_series_reference(v) for v in w])
    m = float(max(np.abs(c - ref[:, 0]).max(), np.abs(s - ref[:, 1]).max()))
    return CheckResult("fresnel_series", m, 1e-12, m <= 1e-12)


def check_fresnel_quadrature(n=50):
    mags = np.linspace(3.0, 30.0, n + 1)[1:]
    w = mags * np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    c, s = fresnel_array(w)
    ref = np.array([fresnel_quadrature_reference(v) for v in w])
    m = float(max(np.abs(c - ref[:, 0]).max(), np.abs(s - ref[:, 1]).max()))
    return CheckResult("fresnel_quadrature", m, 1e-8, m <= 1e-8)


def check_fresnel_oddness():
    w = _rng().uniform(-20.0, 20.0, 1000)
    c1, s1 = fresnel_array(w)
    c2, s2 = fresnel_array(-w)
    m = float(max(np.abs(c1 + c2).max(), np.abs(s1 + s2).max()))
    return CheckResult("fresnel_oddness", m, 1e-14, m <= 1e-14)


def check_erfc_reflection():
    rng = _rng()
    r = 5.0 * np.sqrt(rng.uniform(0, 1, 1000))
    z = r * np.exp(1j * rng.uniform(-math.pi, math.pi, 1000))
    m = 0.0
    for v in z:
        a = erfc_complex(v)
        b = erfc_complex(-v)
        m = max(m, abs(a + b - 2.0) / max(1.0, abs(a)))
    return CheckResult("erfc_reflection", m, 1e-12, m <= 1e-12)


def check_erfc_fresnel_consistency():
    w = np.linspace(-10.0, 10.0, 401)
    rot = complex(math.sqrt(0.5), -math.sqrt(0.5))
    c, s = fresnel_array(w)
    lhs = np.array([0.5 * erfc_complex(rot * v) for v in w])
    rhs = rot * ((0.5 - c) + 1j * (0.5 - s)) / math.sqrt(2.0)
    m = float(np.abs(lhs - rhs).max())
    return CheckResult("erfc_fresnel_consistency", m, 1e-12, m <= 1e-12)


def check_density_identity(n=100):
    x = np.linspace(-20.0, 20.0, n)
    t = np.linspace(0.05, 20.0, n)
    X, T = np.meshgrid(x, t)  # rows follow t
    m = 0.0
    for k in (0.5, 1.0, 2.0):
        dens = density_array(X, T, k)
        amp2 = np.empty_like(dens)
        for i, tt in enumerate(t):
            amp2[i] = np.abs(amplitude_array(x, tt, k)) ** 2
        m = max(m, float(np.abs(amp2 - dens).max()))
    return CheckResult("density_identity", m, 1e-12, m <= 1e-12)


def check_propagator_oracle(n=20):
    rng = _rng()
    m = 0.0
    for i in range(n):
        eps = (1e-2, 1e-3)[i % 2]
        k = rng.uniform(0.3, 2.0)
        t = rng.uniform(0.3, 5.0)
        x = rng.uniform(-5.0, 5.0) + k * t
        pt, params = SpacetimePoint(x, t), ShutterParams(k, eps)
        m = max(m, abs(m_via_propagator(pt, params).value - m_amplitude(pt, params)))
    return CheckResult("propagator_oracle", m, 1e-6, m <= 1e-6)


def check_wigner_support(n=10_000):
    rng = _rng()
    x = rng.uniform(-10, 10, n)
    p = rng.uniform(-5, 5, n)
    t = rng.uniform(0.1, 5, n)
    k = rng.uniform(-3, 3, n)
    ahead = x > p * t
    vals = np.array([wigner_closed(PhasePoint(a, b), kk, tt) for a, b, kk, tt in zip(x[ahead], p[ahead], k[ahead], t[ahead])])
    m = float(np.abs(vals).max())
    return CheckResult("wigner_support", m, 0.0, m == 0.0)


def check_wigner_oracle(full: bool):
    k, t = 1.0, 1.0
    m = 0.0
    for x, p in WIGNER_POINTS:
        pp = PhasePoint(x, p)
        ladder = DEFAULT_EPS_LADDER if full else QUICK_EPS_LADDER
        val = wigner_oracle_extrapolated(pp, k, t, eps_ladder=ladder)
        m = max(m, abs(val - wigner_closed(pp, k, t)))
    tol = 1e-4 if full else 1e-3
    return CheckResult("wigner_oracle", m, tol, m <= tol)


def check_wigner_marginal():
    k, t = 1.0, 2.0
    ws = np.linspace(-5.0, 5.0, 20)
    core = tail = 0.0
    for w in ws:
        x = k * t + w * math.sqrt(2.0 * t)
        err = abs(wigner_marginal(x, k, t) - float(density_array(x, t, k)))
        if abs(w) <= 2:
            core = max(core, err)
        else:
            tail = max(tail, err)
    return [CheckResult("wigner_marginal_core", core, 1e-3, core <= 1e-3),
            CheckResult("wigner_marginal_tail", tail, 2e-2, tail <= 2e-2)]


def default_wigner_grid(k=1.0, t=1.0):
    x = np.linspace(-2.0, 2.0, 41)
    p = np.linspace(-1.0, 3.0, 41)
    X, P = np.meshgrid(x, p, indexing="ij")
    return X, P, wigner_closed_array(X, P, k, t)


def check_wigner_negativity():
    _, _, W = default_wigner_grid()
    m = float(W.min())
    return CheckResult("wigner_has_negative", m, 0.0, m < 0.0, "<")


def check_tomogram_oracle(full: bool):
    k, t = 1.0, 1.0
    m = 0.0
    for X, mu, nu in TOMOGRAM_POINTS:
        tp = TomogramPoint(X, Frame(mu, nu), k, t)
        ladder = DEFAULT_EPS_LADDER if full else QUICK_EPS_LADDER
        chi = chi_oracle_extrapolated(tp, eps_ladder=ladder)
        m = max(m, abs(tomogram_from_chi(chi, nu) - tomogram_closed(tp)))
    tol = 1e-3
    return CheckResult("tomogram_oracle", m, tol, m <= tol)


def check_frame_reduction():
    m = 0.0
    for k, t in ((1.0, 2.0), (0.5, 1.0), (2.0, 5.0)):
        X = np.linspace(k * t - 10 * math.sqrt(t), k * t + 10 * math.sqrt(t), 200)
        _, w = tomogram_array(X, Frame(1.0, 0.0), k, t)
        m = max(m, float(np.abs(w - density_array(X, t, k)).max()))
    return CheckResult("frame_reduction", m, 1e-12, m <= 1e-12)


def random_admissible_points(n, rng):
    out = []
    while len(out) < n:
        mu = rng.uniform(-3, 3)
        nu = rng.uniform(-3, 3)
        t = rng.uniform(0.1, 5)
        if mu * (mu * t + nu) > 1e-6:
            out.append(TomogramPoint(rng.uniform(-20, 20), Frame(mu, nu), rng.uniform(-3, 3), t))
    return out


def check_tomogram_positivity(n=10_000):
    vals = [tomogram_closed(tp) for tp in random_admissible_points(n, _rng())]
    m = float(min(vals))
    return CheckResult("tomogram_nonnegative", m, 0.0, m >= 0.0, ">=")


def check_scale_covariance(n=200):
    rng = _rng()
    m = 0.0
    for tp in random_admissible_points(n, rng):
        lam = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
        scaled = TomogramPoint(lam * tp.X, Frame(lam * tp.frame.mu, lam * tp.frame.nu), tp.k, tp.t)
        a = tomogram_closed(scaled)
        b = tomogram_closed(tp) / lam
        m = max(m, abs(a - b) / max(abs(b), 1e-300))
    return CheckResult("tomogram_scale_covariance", m, 1e-12, m <= 1e-12)


def check_classical_limit():
    sharp = classical_concentration(1.0, 1.0, 0.0, PhysicalUnits(0.01, 1.0), 0.05)
    broad = classical_concentration(1.0, 1.0, 0.0, PhysicalUnits(1.0, 1.0), 0.05)
    return [CheckResult("classical_ratio_hbar_0.01", sharp, 0.95, sharp > 0.95, ">"),
            CheckResult("classical_ratio_hbar_1", broad, 0.9, broad < 0.9, "<")]


@contextlib.contextmanager
def injected_fault(name):
    """Test hook: run the suite against a deliberately broken component."""
    if name is None:
        yield
        return
    if name != "fresnel":
        raise ValueError(f"unknown fault {name!r}")
    real = specfun.kernels

    class Perturbed:
        erfcx = staticmethod(real.erfcx)

        @staticmethod
        def fresnel(w):
            c, s = real.fresnel(w)
            return c * (1 + 1e-6), s * (1 + 1e-6)

    with mock.patch.object(specfun, "kernels", Perturbed):
        yield


def run_suite(level="quick", fault=None, report=print):
    """Run all checks; returns ``(results, elapsed_seconds)``."""
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    full = level == "full"
    checks = [
        check_front_value,
        check_fresnel_series,
        check_fresnel_quadrature,
        check_fresnel_oddness,
        check_erfc_reflection,
        check_erfc_fresnel_consistency,
        check_density_identity,
        check_propagator_oracle,
        check_wigner_support,
        lambda: check_wigner_oracle(full),
        check_wigner_marginal,
        check_wigner_negativity,
        lambda: check_tomogram_oracle(full),
        check_frame_reduction,
        check_tomogram_positivity,
        check_scale_covariance,
        check_classical_limit,
    ]
    results = []
    start = time.perf_counter()
    with injected_fault(fault):
        for check in checks:
            out = check()
            for r in out if isinstance(out, list) else [out]:
                results.append(r)
                if report:
                    report(r.line())
    return results, time.perf_counter() - start
