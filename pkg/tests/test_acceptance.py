"""Acceptance criteria, one test each, at the stated tolerances.

Every test prints a single ``[criterion N] PASS|FAIL ...`` line to the terminal
(visible without ``-s``) before asserting.
"""
import math
import time

import numpy as np
import pytest

from dintime import cli
from dintime.shutter import ShutterParams, SpacetimePoint, density_array, m_density
from dintime.specfun import fresnel_array
from dintime.tomogram import (
    Frame,
    TomogramPoint,
    chi_oracle_extrapolated,
    tomogram_array,
    tomogram_closed,
    tomogram_from_chi,
)
from dintime.verify import (
    TOMOGRAM_POINTS,
    WIGNER_POINTS,
    default_wigner_grid,
    fresnel_quadrature_reference,
    fresnel_series_reference,
    random_admissible_points,
)
from dintime.wigner import (
    DEFAULT_EPS_LADDER,
    PhasePoint,
    PhysicalUnits,
    classical_concentration,
    wigner_closed,
    wigner_closed_array,
    wigner_marginal,
    wigner_oracle_extrapolated,
)

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(request):
    tr = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(number, passed, detail):
        line = f"[criterion {number:>2}] {'PASS' if passed else 'FAIL'}  {detail}"
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)
        else:
            print(line)
        assert passed, line

    return emit


def test_criterion_01_front_value(report):
    start = time.perf_counter()
    err = max(abs(m_density(SpacetimePoint(k * t, t), ShutterParams(k)) - 0.25)
              for k in (0.5, 1.0, 2.0) for t in (0.5, 2.0, 10.0))
    dt = time.perf_counter() - start
    report(1, err <= 1e-12 and dt < 1.0, f"front density max |err| = {err:.3e} (tol 1e-12), {dt:.3f} s (< 1 s)")


def test_criterion_02_fresnel_fidelity(report):
    start = time.perf_counter()
    rng = np.random.default_rng(2)
    near = rng.uniform(-3.0, 3.0, 200)
    c, s = fresnel_array(near)
    ref = np.array([fresnel_series_reference(float(w)) for w in near])
    err_series = float(max(np.abs(c - ref[:, 0]).max(), np.abs(s - ref[:, 1]).max()))
    far = rng.uniform(3.0, 30.0, 50) * rng.choice([-1.0, 1.0], 50)
    c, s = fresnel_array(far)
    ref = np.array([fresnel_quadrature_reference(float(w)) for w in far])
    err_quad = float(max(np.abs(c - ref[:, 0]).max(), np.abs(s - ref[:, 1]).max()))
    dt = time.perf_counter() - start
    ok = err_series <= 1e-12 and err_quad <= 1e-8 and dt < 5.0
    report(2, ok, f"series {err_series:.3e} (tol 1e-12), quadrature {err_quad:.3e} (tol 1e-8), {dt:.2f} s (< 5 s)")


def test_criterion_03_wigner_oracle(report):
    start = time.perf_counter()
    k, t = 1.0, 1.0
    assert any(p == k for _, p in WIGNER_POINTS) and any(p != k for _, p in WIGNER_POINTS)
    err = max(abs(wigner_oracle_extrapolated(PhasePoint(x, p), k, t, eps_ladder=DEFAULT_EPS_LADDER)
                  - wigner_closed(PhasePoint(x, p), k, t)) for x, p in WIGNER_POINTS)
    dt = time.perf_counter() - start
    report(3, err <= 1e-4 and dt < 60.0, f"oracle vs closed max |err| = {err:.3e} (tol 1e-4), {dt:.2f} s (< 60 s)")


def test_criterion_04_wigner_marginal(report):
    start = time.perf_counter()
    k, t = 1.0, 2.0
    core = tail = 0.0
    for w in np.linspace(-5.0, 5.0, 20):
        x = k * t + w * math.sqrt(2.0 * t)
        err = abs(wigner_marginal(x, k, t) - float(density_array(x, t, k)))
        if abs(w) <= 2.0:
            core = max(core, err)
        else:
            tail = max(tail, err)
    dt = time.perf_counter() - start
    ok = core <= 1e-3 and tail <= 2e-2 and dt < 30.0
    report(4, ok, f"|w|<=2: {core:.3e} (tol 1e-3), 2<|w|<=5: {tail:.3e} (tol 2e-2), {dt:.2f} s (< 30 s)")


def test_criterion_05_tomogram_oracle(report):
    start = time.perf_counter()
    err = 0.0
    for X, mu, nu in TOMOGRAM_POINTS:
        tp = TomogramPoint(X, Frame(mu, nu), 1.0, 1.0)
        chi = chi_oracle_extrapolated(tp, eps_ladder=DEFAULT_EPS_LADDER)
        err = max(err, abs(tomogram_from_chi(chi, nu) - tomogram_closed(tp)))
    dt = time.perf_counter() - start
    report(5, err <= 1e-3 and dt < 60.0, f"|chi|^2/(2 pi |nu|) vs closed max |err| = {err:.3e} (tol 1e-3), {dt:.2f} s (< 60 s)")


def test_criterion_06_frame_reduction(report):
    k, t = 1.0, 2.0
    X = np.linspace(k * t - 15.0, k * t + 15.0, 200)
    _, w = tomogram_array(X, Frame(1.0, 0.0), k, t)
    err = float(np.abs(w - density_array(X, t, k)).max())
    report(6, err <= 1e-12, f"(mu,nu)=(1,0) vs density max |err| = {err:.3e} (tol 1e-12)")


def test_criterion_07_positivity_vs_negativity(report):
    pts = random_admissible_points(10_000, np.random.default_rng(7))
    lowest = min(tomogram_closed(tp) for tp in pts)
    _, _, W = default_wigner_grid()
    wmin = float(W.min())
    report(7, lowest >= 0.0 and wmin < 0.0,
           f"min tomogram over 1e4 points = {lowest:.3e} (>= 0), min default Wigner grid = {wmin:.4f} (< 0)")


def test_criterion_08_classical_limit(report):
    hbars = (1.0, 0.3, 0.1, 0.03, 0.01)
    ratios = [classical_concentration(1.0, 1.0, 0.0, PhysicalUnits(h, 1.0), 0.05) for h in hbars]
    monotone = all(b > a for a, b in zip(ratios, ratios[1:]))
    ok = monotone and ratios[-1] > 0.95
    seq = ", ".join(f"{r:.5f}" for r in ratios)
    report(8, ok, f"ratios [{seq}] monotone={monotone}, last > 0.95: {ratios[-1] > 0.95}")


def test_criterion_09_causal_support(report):
    rng = np.random.default_rng(9)
    n = 10_000
    t = rng.uniform(0.05, 10.0, n)
    p = rng.uniform(-5.0, 5.0, n)
    x = p * t + rng.exponential(2.0, n) + 1e-12
    k = rng.uniform(-3.0, 3.0, n)
    ahead = x > p * t
    vals = wigner_closed_array(x[ahead], p[ahead], k[ahead], t[ahead])
    scalar = [wigner_closed(PhasePoint(a, b), kk, tt) for a, b, kk, tt in zip(x[:500], p[:500], k[:500], t[:500])]
    worst = max(float(np.abs(vals).max()), max(abs(v) for v in scalar))
    report(9, int(ahead.sum()) == n and worst == 0.0, f"{int(ahead.sum())} samples with x > pt, max |W| = {worst!r} (exact 0)")


def test_criterion_10_verify_full(report, capsys):
    start = time.perf_counter()
    code = cli.main(["verify", "--full"])
    dt = time.perf_counter() - start
    capsys.readouterr()
    report(10, code == cli.EXIT_OK and dt < 120.0, f"verify --full exit {code}, {dt:.1f} s (< 120 s)")
