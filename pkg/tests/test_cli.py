"""CLI subcommands and the JSON instance round trip."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest

from treeot import Measure, parse_rational, validate_tree, w1_tree
from treeot.cli import main, parse_profile_spec
from treeot.instances import (demo_instance, dump_instance, instance_from_dict,
                              instance_to_dict, load_instance)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInstances:
    def test_round_trip(self, tmp_path):
        tree = validate_tree(["x", "y", "z"], [("x", "y"), ("y", "z")])
        mu = Measure({0: Fraction(2, 3), 2: Fraction(1, 3)})
        nu = Measure({1: Fraction(1)})
        path = tmp_path / "inst.json"
        dump_instance(tree, mu, nu, path)
        tree2, mu2, nu2 = load_instance(path)
        assert tree2.labels == tree.labels
        assert mu2.masses == mu.masses and nu2.masses == nu.masses
        assert w1_tree(tree2, mu2, nu2) == w1_tree(tree, mu, nu)

    def test_fixture_file_matches_bundled_document(self, demo_instance_path):
        on_disk = json.loads(demo_instance_path.read_text())
        assert on_disk == demo_instance()

    def test_bad_json_reports_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"vertices": [1, 2],\n  "edges": [[1, 2]\n}')
        with pytest.raises(ValueError, match="line"):
            load_instance(path)

    def test_unknown_vertex_in_measure(self):
        doc = demo_instance()
        doc["mu"]["v99"] = "1"
        with pytest.raises(ValueError, match="unknown vertex"):
            instance_from_dict(doc)

    def test_rational_strings_survive(self):
        doc = {"vertices": [0, 1], "edges": [[0, 1]],
               "mu": {"0": "22/7"}, "nu": {"1": "22/7"}}
        tree, mu, nu = instance_from_dict(doc)
        rebuilt = instance_to_dict(tree, mu, nu)
        assert rebuilt["mu"]["0"] == "22/7"


class TestW1Command:
    def test_demo_agreement(self, capsys, demo_instance_path):
        code, out, _ = run_cli(capsys, "w1", str(demo_instance_path), "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["w1"] == "12"
        assert doc["paths"] == {"flow": "12", "potential": "12", "lp": "12"}
        assert doc["agree"] is True

    def test_equal_measures(self, capsys, tmp_path):
        path = tmp_path / "same.json"
        path.write_text(json.dumps({
            "vertices": ["a", "b"], "edges": [["a", "b"]],
            "mu": {"a": "1/2"}, "nu": {"a": "1/2"}}))
        code, out, _ = run_cli(capsys, "w1", str(path), "--json")
        assert code == 0
        assert json.loads(out)["w1"] == "0"

    def test_invalid_instance_is_an_error(self, capsys, tmp_path):
        path = tmp_path / "cycle.json"
        path.write_text(json.dumps({
            "vertices": [0, 1, 2], "edges": [[0, 1], [1, 2], [2, 0]],
            "mu": {"0": "1"}, "nu": {"1": "1"}}))
        code, _, err = run_cli(capsys, "w1", str(path))
        assert code == 2
        assert "error" in err


class TestSweepCommand:
    def test_sphere_adjacent_residuals_vanish(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--family", "sphere",
                               "--d", "1", "--q", "2", "--n", "0..20")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["n"] for r in rows] == [str(n) for n in range(21)]
        assert all(r["residual"] == "0" for r in rows if int(r["n"]) >= 1)

    def test_header_is_fixed(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--family", "ball",
                               "--d", "1", "--q", "3", "--n", "0..3")
        assert out.splitlines()[0] == "family,alpha,d,q,n,w1_exact,w1_decimal,asym,residual"

    def test_ball_adjacent_matches_exact_law(self, capsys):
        from treeot import ball_d1_exact
        code, out, _ = run_cli(capsys, "sweep", "--family", "ball",
                               "--d", "1", "--q", "3", "--n", "0..30")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        for row in rows:
            assert parse_rational(row["w1_exact"]) == ball_d1_exact(3, int(row["n"]))

    def test_srw_residual_decreases(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--family", "srw", "--alpha", "0",
                               "--d", "1", "--q", "2", "--n", "10,30,60")
        rows = list(csv.DictReader(io.StringIO(out)))
        residuals = [abs(float(r["residual"])) for r in rows]
        assert residuals[0] > residuals[1] > residuals[2]

    def test_json_output_and_file(self, capsys, tmp_path):
        out_path = tmp_path / "rows.json"
        code, _, _ = run_cli(capsys, "sweep", "--family", "sphere", "--d", "1,2",
                             "--q", "2", "--n", "0..2", "--format", "json",
                             "--out", str(out_path))
        assert code == 0
        rows = json.loads(out_path.read_text())
        assert len(rows) == 6
        assert rows == sorted(rows, key=lambda r: (r["family"], r["alpha"], r["d"], r["q"], r["n"]))


class TestSeriesCommand:
    def test_csv_shape(self, capsys):
        code, out, _ = run_cli(capsys, "series", "--family", "srw", "--alpha", "1/2",
                               "--q", "3", "--order", "6")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 7
        assert rows[0]["gamma"] == "1"
        # Return mass after two steps: alpha^2 + (1 - alpha)^2 / (q + 1).
        assert parse_rational(rows[2]["gamma"]) == Fraction(1, 4) + Fraction(1, 16)

    def test_sphere_series(self, capsys):
        code, out, _ = run_cli(capsys, "series", "--family", "sphere", "--q", "2",
                               "--order", "5", "--emit", "json")
        rows = json.loads(out)
        assert rows[5]["g1_at_q"] == "5/3"


class TestAsymCommand:
    def test_ball_exactness_flag_false(self, capsys):
        code, out, _ = run_cli(capsys, "asym", "--family", "ball", "--d", "2", "--q", "3")
        assert code == 0
        assert json.loads(out) == {"A": "4/3", "B": "1", "exact_for_large_n": False}

    def test_sphere_flagged_exact(self, capsys):
        code, out, _ = run_cli(capsys, "asym", "--family", "sphere", "--d", "1", "--q", "2")
        doc = json.loads(out)
        assert doc == {"A": "2/3", "B": "1", "exact_for_large_n": True}


class TestVerifyCommands:
    def test_verify_ineq_grid(self, capsys):
        code, out, _ = run_cli(capsys, "verify-ineq", "--grid",
                               "alpha=0,1/2", "d=1..3", "q=2..4")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 2 * 3 * 3
        assert all(r["passed"] == "True" for r in rows)

    def test_verify_oeis_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "oeis")
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] is True
        assert doc["suites"][0]["suite"] == "oeis"

    def test_verify_series_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "series")
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_verify_is_seed_deterministic(self, capsys):
        code1, out1, _ = run_cli(capsys, "verify", "triple", "--seed", "5")
        code2, out2, _ = run_cli(capsys, "verify", "triple", "--seed", "5")
        assert (code1, out1) == (code2, out2)


class TestRadialW1Mode:
    def test_three_route_agreement_and_value(self, capsys):
        code, out, _ = run_cli(capsys, "w1", "--radial", "srw:alpha=1/2,n=4",
                               "--q", "3", "--d", "2", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["agree"] is True
        assert len(set(doc["paths"].values())) == 1

    def test_emitted_instance_reproduces_value(self, capsys, tmp_path):
        path = tmp_path / "radial.json"
        code, out, _ = run_cli(capsys, "w1", "--radial", "sphere:r=2",
                               "--q", "2", "--d", "1", "--json",
                               "--emit-instance", str(path))
        assert code == 0
        value = json.loads(out)["w1"]
        tree, mu, nu = load_instance(path)
        assert str(w1_tree(tree, mu, nu)) == value

    def test_radial_needs_geometry(self, capsys):
        code, _, err = run_cli(capsys, "w1", "--radial", "sphere:r=2")
        assert code == 2 and "error" in err

    def test_no_arguments_is_an_error(self, capsys):
        code, _, err = run_cli(capsys, "w1")
        assert code == 2 and "error" in err


class TestProfileSpecs:
    def test_srw_spec(self):
        kind, alpha, n, profile = parse_profile_spec("srw:alpha=1/2,n=3", 2)
        assert (kind, alpha, n) == ("srw", Fraction(1, 2), 3)
        assert profile.support_radius == 3

    def test_sphere_spec(self):
        _, _, r, profile = parse_profile_spec("sphere:r=4", 3)
        assert profile.value(4) == Fraction(1, 4 * 27)

    def test_ball_spec(self):
        _, _, r, profile = parse_profile_spec("ball:r=2", 2)
        assert profile.value(0) == Fraction(1, 10)

    def test_custom_spec(self):
        _, _, _, profile = parse_profile_spec("custom:[1/2, 0, 1/3]", 2)
        assert profile.values == (Fraction(1, 2), Fraction(0), Fraction(1, 3))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            parse_profile_spec("disc:r=1", 2)
