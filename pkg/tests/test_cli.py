import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dintime import cli
from dintime.shutter import density_array
from dintime.tables import SCHEMA_VERSION, SampleTable

GOLDEN = Path(__file__).parent / "golden"
COLUMNS = {
    "density": ("x", "t", "w", "density"),
    "cornu": ("w", "C", "S"),
    "wigner": ("x", "p", "W"),
    "tomogram": ("X", "rho", "w_tomogram"),
    "classical": ("hbar", "concentration_ratio"),
}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return SampleTable.from_csv(out)


class TestTables:
    finite = st.floats(allow_nan=False, allow_infinity=False)

    @given(st.lists(st.tuples(finite, finite, finite), max_size=30))
    def test_csv_round_trip_bit_exact(self, rows):
        t = SampleTable(("a", "b", "c"), rows)
        back = SampleTable.from_csv(t.to_csv())
        assert back.column_names == t.column_names
        assert [tuple(v.hex() for v in r) for r in back.rows] == [tuple(v.hex() for v in r) for r in t.rows]

    @given(st.lists(st.tuples(finite, finite), max_size=30))
    def test_json_round_trip(self, rows):
        t = SampleTable(("a", "b"), rows)
        assert SampleTable.from_json(t.to_json()) == t

    def test_arity_checked(self):
        with pytest.raises(ValueError):
            SampleTable(("a", "b"), [(1.0,)])

    def test_finiteness_checked(self):
        with pytest.raises(ValueError):
            SampleTable(("a",), [(math.nan,)])

    def test_csv_layout(self):
        text = SampleTable(("a", "b"), [(0.1, 2.0)]).to_csv()
        assert text == "a,b\n0.1,2.0\n"

    def test_json_layout(self):
        obj = json.loads(SampleTable(("a",), [(1.5,)]).to_json())
        assert obj == {"columns": ["a"], "rows": [[1.5]]}

    def test_schema_version(self):
        assert SCHEMA_VERSION == 1


class TestGolden:
    @pytest.mark.parametrize("command", sorted(COLUMNS))
    def test_default_invocation_matches_snapshot(self, capsys, command):
        got = table(capsys, command)
        ref = SampleTable.from_csv((GOLDEN / f"{command}.csv").read_text())
        assert got.column_names == ref.column_names == COLUMNS[command]
        assert len(got.rows) == len(ref.rows)
        assert np.allclose(np.array(got.rows), np.array(ref.rows), rtol=1e-12, atol=1e-14)


class TestDensity:
    def test_time_profile_at_fixed_x(self, capsys):
        t = table(capsys, "density", "--x", "0", "--grid", "0.1:10:50")
        assert t.column_names == COLUMNS["density"]
        assert np.all(t.column("x") == 0) and t.column("t")[0] == 0.1
        # x = 0 is behind the front for every t > 0: w < 0 throughout
        assert np.all(t.column("w") < 0)

    def test_front_row(self, capsys):
        t = table(capsys, "density", "--grid", "0:4:5")
        row = dict(zip(t.column("w"), t.column("density")))
        assert row[0.0] == 0.25

    def test_overshoot_behind_front(self, capsys):
        t = table(capsys, "density")
        assert t.column("density").max() > 1.0

    def test_matches_library(self, capsys):
        t = table(capsys, "density", "--k", "0.5", "--t", "3")
        assert np.array_equal(t.column("density"), density_array(t.column("x"), 3.0, 0.5))


class TestCornu:
    def test_origin(self, capsys):
        t = table(capsys, "cornu", "--grid", "-1:1:3")
        assert t.rows[1] == (0.0, 0.0, 0.0)

    def test_antisymmetric(self, capsys):
        # step 0.25 keeps the grid exactly symmetric
        t = table(capsys, "cornu", "--grid", "-5:5:41")
        w, c, s = t.column("w"), t.column("C"), t.column("S")
        assert np.array_equal(w, -w[::-1])
        assert np.array_equal(c, -c[::-1]) and np.array_equal(s, -s[::-1])

    def test_approaches_limit_point(self, capsys):
        t = table(capsys, "cornu", "--grid", "5:50:200")
        d = np.hypot(t.column("C") - 0.5, t.column("S") - 0.5)
        assert np.all(np.diff(d) < 0)


class TestWigner:
    def test_zero_beyond_front(self, capsys):
        t = table(capsys, "wigner", "--t", "1")
        x, p, W = t.column("x"), t.column("p"), t.column("W")
        assert np.all(W[x > p] == 0) and W.min() < 0

    def test_reference_row(self, capsys):
        t = table(capsys, "wigner", "--k", "2", "--t", "1", "--grid", "-1:1:3", "--p-grid", "0:2:3")
        row = [r for r in t.rows if r[0] == 0.0 and r[1] == 1.0][0]
        assert row[2] == pytest.approx(math.sin(2) / math.pi, rel=1e-14)

    def test_p_equals_k_column(self, capsys):
        t = table(capsys, "wigner", "--t", "1")
        x, p, W = t.column("x"), t.column("p"), t.column("W")
        sel = (p == 1.0) & (x < 1.0)
        assert sel.sum() > 5
        assert np.allclose(W[sel], 2 * (1.0 - x[sel]) / math.pi, rtol=1e-14)

    def test_x_major_order(self, capsys):
        t = table(capsys, "wigner", "--grid", "0:1:2", "--p-grid", "0:1:2")
        assert [r[:2] for r in t.rows] == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]


class TestTomogram:
    def test_position_frame_equals_density(self, capsys):
        a = table(capsys, "tomogram", "--mu", "1", "--nu", "0", "--grid", "-8:12:201")
        b = table(capsys, "density", "--grid", "-8:12:201")
        assert np.abs(a.column("w_tomogram") - b.column("density")).max() <= 1e-12

    def test_rho_zero_row(self, capsys):
        # k nu' = 1 * (2 * 2 - 1) = 3
        t = table(capsys, "tomogram", "--mu", "2", "--nu", "-1", "--grid", "2:4:3")
        assert t.rows[1][1] == 0.0 and t.rows[1][2] == pytest.approx(1 / 8, abs=1e-15)

    def test_angle_frame_positive(self, capsys):
        t = table(capsys, "tomogram", "--tau", "0.3", "--theta", "0.2")
        assert np.all(t.column("w_tomogram") >= 0)

    def test_singular_frame_exit(self, capsys):
        code, _, err = run(capsys, "tomogram", "--mu", "1", "--nu", "-5")
        assert code == cli.EXIT_DOMAIN and "mu*(mu*t + nu) > 0" in err

    def test_mixed_frame_flags(self, capsys):
        code, _, _ = run(capsys, "tomogram", "--mu", "1", "--theta", "0.2")
        assert code == cli.EXIT_USAGE


class TestClassical:
    def test_default_list(self, capsys):
        t = table(capsys, "classical", "--t", "1")
        r = t.column("concentration_ratio")
        assert list(t.column("hbar")) == [1.0, 0.3, 0.1, 0.03, 0.01]
        assert r[-1] > 0.95 and r[0] < r[-1]

    def test_domain_exit(self, capsys):
        code, _, err = run(capsys, "classical", "--x", "5")
        assert code == cli.EXIT_DOMAIN and "front" in err


class TestPlumbing:
    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "cornu", "--grid", "0:1:2", "--format", "json")
        assert code == 0 and json.loads(out)["columns"] == ["w", "C", "S"]

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "d.csv"
        code, out, _ = run(capsys, "density", "--grid", "0:1:2", "--out", str(path))
        assert code == 0 and out == ""
        assert path.read_text().startswith("x,t,w,density\n")

    def test_config_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "s.json"
        cfg.write_text(json.dumps({"k": 2.0, "t": 1.0, "grid": "0:4:5"}))
        t = table(capsys, "density", "--config", str(cfg))
        assert t.column("w")[0] == pytest.approx(-2 / math.sqrt(2))
        t = table(capsys, "density", "--config", str(cfg), "--k", "0")
        assert t.column("w")[0] == 0.0

    def test_config_list_grid(self, capsys, tmp_path):
        cfg = tmp_path / "s.json"
        cfg.write_text(json.dumps({"grid": [-1, 1, 3]}))
        assert len(table(capsys, "cornu", "--config", str(cfg)).rows) == 3

    @pytest.mark.parametrize("argv", [
        ["density", "--grid", "1:0:3"],
        ["density", "--grid", "0:1:1"],
        ["density", "--grid", "a:b:c"],
        ["density", "--k", "abc"],
        ["nonsense"],
        [],
        ["classical", "--hbar", "1,x"],
        ["density", "--config", "/nonexistent/cfg.json"],
    ])
    def test_argument_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == cli.EXIT_USAGE

    def test_unknown_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "s.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        assert run(capsys, "density", "--config", str(cfg))[0] == cli.EXIT_USAGE

    @pytest.mark.parametrize("argv", [["density", "--t", "-1"], ["wigner", "--t", "0"],
                                      ["classical", "--hbar", "0"]])
    def test_domain_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == cli.EXIT_DOMAIN

    def test_negative_grid_start(self, capsys):
        assert len(table(capsys, "cornu", "--grid", "-2:2:5").rows) == 5


class TestVerify:
    def test_quick_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--level", "quick")
        assert code == cli.EXIT_OK
        lines = [ln for ln in out.splitlines() if ln.rstrip().endswith(("pass", "FAIL"))]
        assert lines and all(ln.rstrip().endswith("pass") for ln in lines)

    def test_fault_injection_fails_named(self, capsys):
        code, out, _ = run(capsys, "verify", "--inject-fault", "fresnel")
        assert code == cli.EXIT_VERIFY
        assert "FAILED:" in out and "fresnel_series" in out

    def test_full_flag(self, capsys):
        code, out, _ = run(capsys, "verify", "--full")
        assert code == cli.EXIT_OK and "passed in" in out
