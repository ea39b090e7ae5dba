import csv
import io
import json
import math

import pytest

from weakpath.cli import SWEEP_HEADER, main, parse_complex, parse_grid
from weakpath.errors import ArgumentError


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, err = invoke(*argv)
    return code, json.loads(out), err


def cx(d):
    return complex(d["re"], d["im"])


class TestParsing:
    def test_complex(self):
        assert parse_complex("0.6") == 0.6
        assert parse_complex("0.6,-0.8") == complex(0.6, -0.8)
        with pytest.raises(ArgumentError):
            parse_complex("1,2,3")
        with pytest.raises(ArgumentError):
            parse_complex("x")

    def test_grid(self):
        assert parse_grid("0:1:3") == [0.0, 0.5, 1.0]
        assert parse_grid("0.01:1.57:8")[-1] == 1.57
        with pytest.raises(ArgumentError):
            parse_grid("0:1:1")
        with pytest.raises(ArgumentError):
            parse_grid("0:1")


class TestWeakValue:
    def test_quarter_turn(self):
        code, rep, _ = invoke_json("weak-value", "--a", "0.6", "--b", "0.8", "--alpha", "1.5707963", "--arm", "II")
        assert code == 0
        assert cx(rep["results"]["modified"]["P_I"]) == pytest.approx(0.36, abs=1e-7)
        assert cx(rep["results"]["standard"]["P_I"]) == pytest.approx(3 / 7)
        assert cx(rep["results"]["ratio"]) == pytest.approx(0.5625, abs=1e-7)
        assert set(rep) >= {"inputs", "results", "seed", "version"}

    def test_symmetric(self):
        code, rep, _ = invoke_json("weak-value", "--a", "0.70710678", "--b", "0.70710678", "--alpha", "0.3")
        assert code == 0
        assert cx(rep["results"]["modified"]["P_I"]) == pytest.approx(0.5)

    def test_degenerate(self):
        code, rep, _ = invoke_json("weak-value", "--a", "0.70710678", "--b", "-0.70710678")
        assert code != 0
        assert rep["error"]["kind"] == "degenerate post-selection"
        assert set(rep["error"]) == {"kind", "message"}

    def test_custom_post_selection_uses_matrix_elements(self):
        code, rep, _ = invoke_json(
            "weak-value", "--a", "0.6", "--b", "0.8", "--pf-a", "1", "--pf-b", "0,1", "--alpha", "0.7"
        )
        assert code == 0
        assert rep["results"]["modified"]["method"] == "matrix-element"
        total = cx(rep["results"]["modified"]["P_I"]) + cx(rep["results"]["modified"]["P_II"])
        assert total == pytest.approx(1)


class TestSimulate:
    def test_quarter_turn(self):
        code, rep, _ = invoke_json("simulate", "--a", "0.6", "--b", "0.8", "--arm", "II", "--alpha", "1.5707963")
        assert code == 0
        r = rep["results"]
        assert r["success_probability"] == pytest.approx(0.5, abs=1e-7)
        b = r["bloch_exact"]
        assert (b["sx"], b["sy"], b["sz"]) == pytest.approx((-0.28, 0.96, 0), abs=1e-7)

    def test_no_coupling(self):
        code, rep, _ = invoke_json("simulate", "--alpha", "0", "--a", "0.6", "--b", "0.8")
        r = rep["results"]
        assert r["success_probability"] == pytest.approx(0.98)
        assert r["bloch_exact"] == {"sx": 1.0, "sy": 0.0, "sz": 0.0}

    def test_seeded_output_is_identical(self):
        argv = ["simulate", "--a", "0.6", "--b", "0.8", "--alpha", "0.9", "--shots", "500", "--seed", "99"]
        first, second = invoke(*argv), invoke(*argv)
        assert first == second
        rep = json.loads(first[1])
        assert rep["seed"] == 99
        assert set(rep["results"]["counts"]) == {"x", "y", "z"}

    def test_seed_generated_and_recorded(self):
        code, rep, _ = invoke_json("simulate", "--a", "0.6", "--b", "0.8", "--shots", "10")
        assert code == 0 and isinstance(rep["seed"], int)
        replay = invoke_json("simulate", "--a", "0.6", "--b", "0.8", "--shots", "10", "--seed", str(rep["seed"]))[1]
        assert replay == rep

    def test_post_selection_failure(self):
        code, rep, _ = invoke_json("simulate", "--a", "1", "--b", "1", "--alpha", str(math.pi))
        assert code != 0 and "post-selection" in rep["error"]["kind"]

    def test_csv(self):
        code, out, _ = invoke("simulate", "--a", "0.6", "--b", "0.8", "--output", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0 and len(rows) == 2
        data = dict(zip(*rows))
        assert float(data["success_probability"]) == pytest.approx(0.98)


class TestReconstruct:
    def test_strong(self):
        code, rep, _ = invoke_json(
            "reconstruct", "--method", "strong", "--a", "0.6", "--b", "0.8", "--alpha", str(math.pi / 2)
        )
        assert code == 0
        est = rep["results"]["estimated"]
        assert (cx(est["a"]), cx(est["b"])) == pytest.approx((0.6, 0.8))
        assert rep["results"]["fidelity_vs_truth"] == pytest.approx(1)

    def test_weak(self):
        code, rep, err = invoke_json("reconstruct", "--method", "weak", "--a", "0.6", "--b", "0.8", "--alpha", "1e-3")
        assert code == 0 and err == ""
        assert rep["results"]["fidelity_vs_truth"] >= 1 - 1e-5

    def test_weak_warns_for_large_alpha(self):
        code, rep, err = invoke_json("reconstruct", "--method", "weak", "--a", "0.6", "--b", "0.8", "--alpha", "0.5")
        assert code == 0 and "warning" in err and rep["warnings"]

    def test_strong_zero_coupling(self):
        code, rep, _ = invoke_json("reconstruct", "--method", "strong", "--a", "0.6", "--b", "0.8", "--alpha", "0")
        assert code != 0
        assert rep["error"]["kind"] == "non-invertible coupling"

    def test_method_required(self):
        code, rep, _ = invoke_json("reconstruct", "--a", "0.6", "--b", "0.8")
        assert code != 0 and rep["error"]["kind"] == "argument error"


class TestSweep:
    def test_table(self):
        code, out, _ = invoke("sweep", "--a", "0.6", "--b", "0.8", "--alphas", "0.01:1.57:8")
        assert code == 0
        assert out.endswith("\n") and "\r" not in out
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == SWEEP_HEADER
        assert len(rows) == 9
        assert float(rows[-1][5]) == pytest.approx(0.1875, abs=1e-3)
        # 17 significant digits
        assert rows[1][1] == format(float(rows[1][1]), ".17g")

    def test_symmetric(self):
        code, out, _ = invoke("sweep", "--a", "1", "--b", "1", "--alphas", "0.1:3:5")
        rows = list(csv.reader(io.StringIO(out)))[1:]
        assert code == 0 and all(float(r[5]) == 0 for r in rows)

    def test_single_point_grid(self):
        code, out, _ = invoke("sweep", "--a", "0.6", "--b", "0.8", "--alphas", "0.1:1:1")
        assert code != 0 and json.loads(out)["error"]["kind"] == "argument error"

    def test_json(self):
        code, rep, _ = invoke_json("sweep", "--a", "0.6", "--b", "0.8", "--alphas", "0.1:1:4", "--output", "json")
        assert code == 0 and len(rep["results"]["rows"]) == 4


class TestConfig:
    def test_file_supplies_and_flags_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# bundle\na = 0.6\nb = 0.8\nalpha = 1.5707963267948966\narm = II\nseed = 5\n")
        code, rep, _ = invoke_json("weak-value", "--config", str(cfg))
        assert code == 0 and rep["seed"] == 5
        assert cx(rep["results"]["modified"]["P_I"]) == pytest.approx(0.36)
        code, rep, _ = invoke_json("weak-value", "--config", str(cfg), "--alpha", "0")
        assert cx(rep["results"]["modified"]["P_I"]) == pytest.approx(3 / 7)

    def test_global_flags_before_subcommand(self, tmp_path):
        code, out, _ = invoke("--output", "csv", "weak-value", "--a", "0.6", "--b", "0.8")
        assert code == 0 and out.startswith("seed,")

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("colour = blue\n")
        code, rep, _ = invoke_json("weak-value", "--config", str(cfg))
        assert code != 0 and "unknown key" in rep["error"]["message"]

    def test_missing_file(self, tmp_path):
        code, rep, _ = invoke_json("weak-value", "--config", str(tmp_path / "nope.cfg"))
        assert code != 0

    def test_unnormalized_amplitudes_warn(self):
        code, rep, err = invoke_json("weak-value", "--a", "3", "--b", "4")
        assert code == 0 and "normalized" in err
        assert cx(rep["inputs"]["a"]) == pytest.approx(0.6)

    def test_bad_flag_is_an_error_object(self):
        code, rep, _ = invoke_json("weak-value", "--nonsense", "1")
        assert code != 0 and rep["error"]["kind"] == "argument error"
