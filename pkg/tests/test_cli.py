import csv
import io
import json
import math

import pytest
from numpy.testing import assert_allclose

from ballsep import probability
from ballsep.cli import main
from ballsep.geometry import Ball, make_instance
from ballsep.probability import p_fully_random, p_random_bias, p_random_weight
from ballsep.specfun import BetaArgs, reg_inc_beta

CANONICAL = ["--c", "-2,0", "--r", "1", "--x", "2,0", "--p", "1", "--k", "2"]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestExact:
    def test_canonical_json_values(self, capsys):
        code, out, _ = run(capsys, ["exact", *CANONICAL, "--format", "json"])
        assert code == 0
        record = json.loads(out)
        assert record["n"] == 2
        assert record["p_bias"] == 0.5
        assert_allclose(record["p_weight"], 2.0 / 3.0, rtol=1e-13)
        assert_allclose(record["p_full"], math.sqrt(3.0) / math.pi - 1.0 / 3.0, rtol=1e-13)

    def test_space_instance_text(self, capsys):
        code, out, _ = run(capsys, ["exact", "--c", "0,0,0", "--r", "1", "--x", "4,0,0", "--p", "1", "--k", "4"])
        assert code == 0
        lines = dict(line.split(None, 1) for line in out.strip().splitlines())
        assert lines["p_full"].strip() == "0.0625"
        assert lines["p_bias"].strip() == "0.25"

    def test_generator_matches_explicit(self, capsys):
        _, explicit, _ = run(capsys, ["exact", *CANONICAL, "--format", "json"])
        _, generated, _ = run(
            capsys, ["exact", "--dim", "2", "--sinphi", "0.5", "--format", "json"]
        )
        a, b = json.loads(explicit), json.loads(generated)
        for key in ("p_bias", "p_weight", "p_full", "sin_phi", "q", "delta", "k"):
            assert a[key] == b[key]

    def test_overlap_message_and_exit(self, capsys):
        code, _, err = run(
            capsys, ["exact", "--c", "0,0", "--r", "1", "--x", "1.5,0", "--p", "1", "--k", "9"]
        )
        assert code == 2
        assert "balls overlap or touch (delta <= 0)" in err

    def test_insufficient_k_exits_two(self, capsys):
        code, _, err = run(capsys, ["exact", *CANONICAL[:-1], "1.5"])
        assert code == 2
        assert err.startswith("error:")

    def test_missing_instance_exits_two(self, capsys):
        code, _, err = run(capsys, ["exact"])
        assert code == 2
        assert "error:" in err

    def test_mixed_entry_styles_exit_two(self, capsys):
        code, _, err = run(capsys, ["exact", *CANONICAL, "--dim", "2", "--sinphi", "0.5"])
        assert code == 2
        assert "not both" in err

    def test_unknown_flag_exits_two(self, capsys):
        code, _, err = run(capsys, ["exact", "--bogus", "1"])
        assert code == 2
        assert "usage" in err

    def test_unparsable_vector_exits_two(self, capsys):
        code, _, err = run(capsys, ["exact", "--c", "a,b", "--x", "2,0", "--k", "9"])
        assert code == 2
        assert "--c" in err

    def test_json_round_trip_re_evaluates(self, capsys):
        _, out, _ = run(capsys, ["exact", "--dim", "7", "--sinphi", "0.44", "--k-factor", "1.8", "--format", "json"])
        record = json.loads(out)
        dist = record["r"] + record["p"] + record["delta"]
        c = [0.0] * record["n"]
        c[0] = -0.5 * dist
        x = [0.0] * record["n"]
        x[0] = 0.5 * dist
        inst = make_instance(Ball(c, record["r"]), Ball(x, record["p"]), record["k"])
        assert abs(p_random_bias(inst) - record["p_bias"]) < 1e-12
        assert abs(p_random_weight(inst) - record["p_weight"]) < 1e-12
        assert abs(p_fully_random(inst) - record["p_full"]) < 1e-12

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        _, out, _ = run(capsys, ["exact", *CANONICAL, "--format", "csv"])
        target = tmp_path / "exact.csv"
        code = main(["exact", *CANONICAL, "--format", "csv", "--out", str(target)])
        capsys.readouterr()
        assert code == 0
        assert target.read_text(encoding="utf-8") == out


class TestEstimate:
    def test_zero_samples_message(self, capsys):
        code, _, err = run(capsys, ["estimate", *CANONICAL, "--samples", "0"])
        assert code == 2
        assert "samples must be >= 1" in err

    def test_three_rows_small_z(self, capsys):
        code, out, _ = run(
            capsys, ["estimate", *CANONICAL, "--samples", "100000", "--format", "csv"]
        )
        assert code == 0
        rows = parse_csv(out)
        assert [row["estimator"] for row in rows] == ["bias", "weight", "full"]
        for row in rows:
            assert abs(float(row["z"])) <= 4.0

    def test_byte_identical_reruns(self, capsys):
        argv = ["estimate", *CANONICAL, "--samples", "30000", "--seed", "5"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second

    def test_chunks_do_not_change_output(self, capsys):
        base = ["estimate", *CANONICAL, "--samples", "131072", "--seed", "9", "--format", "csv"]
        _, one, _ = run(capsys, base)
        _, four, _ = run(capsys, [*base, "--chunks", "4"])
        assert one == four

    def test_which_selects_single_estimator(self, capsys):
        code, out, _ = run(
            capsys,
            ["estimate", "--dim", "3", "--sinphi", "0.5", "--samples", "2000", "--which", "weight", "--format", "csv"],
        )
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 1
        assert rows[0]["estimator"] == "weight"
        assert float(rows[0]["exact"]) == p_random_weight_of_half()

    def test_table_header(self, capsys):
        _, out, _ = run(capsys, ["estimate", *CANONICAL, "--samples", "1000"])
        assert out.splitlines()[0].split() == ["estimator", "mean", "std_error", "exact", "z"]


def p_random_weight_of_half():
    from ballsep.geometry import symmetric_instance

    return p_random_weight(symmetric_instance(3, 0.5))


class TestSweep:
    def test_sorted_records_and_header(self, capsys):
        code, out, _ = run(capsys, ["sweep", "--dim", "5,2,3", "--delta", "2,0.5"])
        assert code == 0
        header = out.splitlines()[0]
        assert header == "n,delta,r,p,k,sin_phi,q,p_bias,p_weight,p_full,envelope"
        rows = parse_csv(out)
        keys = [(int(row["n"]), float(row["delta"])) for row in rows]
        assert keys == sorted(keys)
        assert len(rows) == 6

    def test_dimension_range_syntax(self, capsys):
        code, out, _ = run(capsys, ["sweep", "--dim", "2..6", "--delta", "1"])
        assert code == 0
        assert [int(row["n"]) for row in parse_csv(out)] == [2, 3, 4, 5, 6]

    def test_single_cell_matches_exact(self, capsys):
        _, sweep_out, _ = run(capsys, ["sweep", "--dim", "2", "--delta", "2"])
        _, exact_out, _ = run(capsys, ["exact", "--dim", "2", "--sinphi", "0.5", "--format", "csv"])
        sweep_row = parse_csv(sweep_out)[0]
        exact_row = parse_csv(exact_out)[0]
        for key in exact_row:
            assert sweep_row[key] == exact_row[key]

    def test_bias_linear_in_gap_at_fixed_range(self, capsys):
        _, out, _ = run(
            capsys, ["sweep", "--dim", "4", "--delta", "0.01,0.1,1,10", "--k", "6"]
        )
        for row in parse_csv(out):
            assert_allclose(
                float(row["p_bias"]), float(row["delta"]) / 12.0, rtol=1e-12
            )

    def test_json_stream_round_trips(self, capsys):
        _, out, _ = run(
            capsys, ["sweep", "--dim", "2,9", "--delta", "0.7,3", "--format", "json"]
        )
        lines = out.strip().splitlines()
        assert len(lines) == 4
        for line in lines:
            record = json.loads(line)
            dist = record["r"] + record["p"] + record["delta"]
            c = [0.0] * record["n"]
            c[0] = -0.5 * dist
            x = [0.0] * record["n"]
            x[0] = 0.5 * dist
            inst = make_instance(Ball(c, record["r"]), Ball(x, record["p"]), record["k"])
            assert abs(p_fully_random(inst) - record["p_full"]) < 1e-12

    def test_invalid_delta_exits_two(self, capsys):
        code, _, err = run(capsys, ["sweep", "--dim", "2", "--delta", "-1"])
        assert code == 2
        assert "delta" in err

    def test_bad_k_factor_exits_two(self, capsys):
        code, _, _ = run(capsys, ["sweep", "--dim", "2", "--delta", "1", "--k-factor", "0.2"])
        assert code == 2


class TestTessellate:
    def test_width_and_target_conflict(self, capsys):
        code, _, err = run(capsys, ["tessellate", *CANONICAL, "--width", "3", "--target", "0.9"])
        assert code == 2
        assert "exactly one" in err
        code, _, err = run(capsys, ["tessellate", *CANONICAL])
        assert code == 2
        assert "exactly one" in err

    def test_target_gives_width_19(self, capsys):
        code, out, _ = run(
            capsys, ["tessellate", *CANONICAL, "--target", "0.99", "--format", "json"]
        )
        assert code == 0
        record = json.loads(out)
        assert record["width"] == 19
        assert record["mode"] == "fully-random"
        assert record["predicted"] >= 0.99
        assert record["estimate"] >= 0.985
        assert record["samples"] == 10000

    def test_width_one_reproduces_estimate(self, capsys):
        shared = ["--dim", "3", "--sinphi", "0.5", "--samples", "20000", "--seed", "11"]
        _, tess_out, _ = run(
            capsys,
            ["tessellate", *shared, "--width", "1", "--mode", "random-weight", "--format", "json"],
        )
        _, est_out, _ = run(
            capsys, ["estimate", *shared, "--which", "weight", "--format", "csv"]
        )
        tess = json.loads(tess_out)
        est = parse_csv(est_out)[0]
        assert tess["estimate"] == float(est["mean"])

    def test_csv_header_stable(self, capsys):
        _, out, _ = run(
            capsys, ["tessellate", *CANONICAL, "--width", "2", "--format", "csv"]
        )
        header = out.splitlines()[0]
        assert header == "mode,width,samples,per_pair_exact,predicted,estimate,std_error,target"


class TestValidate:
    def test_fresh_build_passes(self, capsys):
        code, out, _ = run(capsys, ["validate", "--samples", "300"])
        assert code == 0
        assert "all 4 checks passed" in out
        assert "19900 cells" in out
        assert "330 cells" in out

    def test_injected_fault_fails_ordering_chain(self, capsys, monkeypatch):
        def flipped(inst):
            n = inst.dimension
            a = 0.5 * (n - 1)
            incomplete = reg_inc_beta(BetaArgs(inst.q_value, a, 0.5))
            first = probability._first_term(inst.q_value, n)
            scale = inst.center_distance / (2.0 * inst.bias_half_range)
            return scale * (first + inst.sin_phi * incomplete)

        monkeypatch.setattr(probability, "p_fully_random", flipped)
        code, out, _ = run(capsys, ["validate", "--samples", "50"])
        assert code == 1
        assert "ordering chain" in out
        assert "failing cell" in out
