import json

import pytest
from click.testing import CliRunner

from nearrings.cli import main
from nearrings.maps import canonical_maps, dumps_triple, loads_triple

P27 = ["--p", "3", "--m", "1", "--n", "1", "--d", "1"]
P81 = ["--p", "3", "--m", "2", "--n", "1", "--d", "1"]


@pytest.fixture()
def runner():
    return CliRunner()


class TestGroup:
    def test_facts(self, runner):
        result = runner.invoke(main, ["group", *P81])
        assert result.exit_code == 0
        assert "order            81" in result.output
        assert "exponent         9" in result.output
        assert "|Phi(G)|         9" in result.output
        assert "|Z(G)|           9" in result.output

    def test_bad_params_exit_2(self, runner):
        result = runner.invoke(main, ["group", "--p", "3", "--m", "1", "--n", "2", "--d", "1"])
        assert result.exit_code == 2


class TestVerify:
    def test_canonical_passes(self, runner):
        result = runner.invoke(main, ["verify", *P27, "--canonical"])
        assert result.exit_code == 0
        assert "left_distributive" in result.output
        assert "FAIL" not in result.output

    def test_expressions_source(self, runner):
        result = runner.invoke(
            main, ["verify", *P27, "--alpha", "0", "--beta", "x1", "--gamma", "x1*x1 - x1"]
        )
        assert result.exit_code == 0

    def test_failing_candidate_exit_1(self, runner):
        result = runner.invoke(
            main, ["verify", *P27, "--alpha", "0", "--beta", "x1", "--gamma", "x2"]
        )
        assert result.exit_code == 1
        assert "FAIL" in result.output
        assert "counterexample" in result.output

    def test_parse_error_exit_2(self, runner):
        result = runner.invoke(
            main, ["verify", *P27, "--alpha", "0", "--beta", "x1 +", "--gamma", "0"]
        )
        assert result.exit_code == 2

    def test_two_sources_rejected(self, runner):
        result = runner.invoke(
            main, ["verify", *P27, "--canonical", "--alpha", "0", "--beta", "x1", "--gamma", "0"]
        )
        assert result.exit_code == 2

    def test_sampled_without_seed_exit_2(self, runner):
        result = runner.invoke(main, ["verify", *P27, "--canonical", "--mode", "sampled"])
        assert result.exit_code == 2
        assert "--seed" in result.output

    def test_report_written(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["verify", *P27, "--canonical", "--out", str(out)])
        assert result.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["axioms"]["passed"] is True
        assert doc["profile"]["unit_count"] == 18
        assert doc["manifest"]["subcommand"] == "verify"


class TestAnalyze:
    def test_canonical(self, runner):
        result = runner.invoke(main, ["analyze", *P81, "--canonical"])
        assert result.exit_code == 0
        assert "|R*|                     54" in result.output
        assert "FAIL" not in result.output

    def test_maps_file_source(self, runner, tmp_path, g81, canonical81):
        f = tmp_path / "maps.json"
        f.write_text(dumps_triple(canonical81))
        result = runner.invoke(main, ["analyze", *P81, "--maps", str(f)])
        assert result.exit_code == 0

    def test_maps_file_param_mismatch(self, runner, tmp_path, g27, canonical27):
        f = tmp_path / "maps.json"
        f.write_text(dumps_triple(canonical27))
        result = runner.invoke(main, ["analyze", *P81, "--maps", str(f)])
        assert result.exit_code == 2


class TestEnumerate:
    def test_full_run_with_dedup(self, runner, tmp_path):
        out = tmp_path / "sols"
        result = runner.invoke(main, ["enumerate", *P27, "--out", str(out), "--dedup"])
        assert result.exit_code == 0
        assert "12 solutions" in result.output
        files = sorted(out.glob("solution_*.json"))
        assert len(files) == 12
        # every solution file loads back as a valid triple
        triples = [loads_triple(f.read_text()) for f in files]
        assert canonical_maps(triples[0].params) in triples
        summary = json.loads((out / "summary.json").read_text())
        assert summary["count"] == 12
        assert summary["dedup"]["orbit_count"] == 3
        assert summary["dedup"]["stabilizer_size"] == 18

    def test_subfamily_and_max_solutions(self, runner, tmp_path):
        out = tmp_path / "sub"
        result = runner.invoke(
            main,
            ["enumerate", *P27, "--out", str(out), "--subfamily", "alpha=0;beta=x1",
             "--max-solutions", "2"],
        )
        assert result.exit_code == 0
        assert len(list(out.glob("solution_*.json"))) == 2

    def test_bad_subfamily_entry(self, runner, tmp_path):
        result = runner.invoke(
            main, ["enumerate", *P27, "--out", str(tmp_path / "x"), "--subfamily", "alpha"]
        )
        assert result.exit_code == 2

    def test_order_bound_exit_2(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["enumerate", "--p", "3", "--m", "2", "--n", "2", "--d", "1",
             "--out", str(tmp_path / "x")],
        )
        assert result.exit_code == 2


class TestAut:
    def test_match_81(self, runner):
        result = runner.invoke(main, ["aut", *P81])
        assert result.exit_code == 0
        assert "brute-force |Aut(G)| 972" in result.output
        assert "match               True" in result.output

    def test_mismatch_warning_27(self, runner, tmp_path):
        out = tmp_path / "aut.json"
        result = runner.invoke(main, ["aut", *P27, "--out", str(out)])
        assert result.exit_code == 0  # closure audit passes; mismatch is a warning
        assert "WARNING" in result.output
        doc = json.loads(out.read_text())
        assert doc["record"]["brute_order"] == 432
        assert doc["record"]["formula_order"] == 48


class TestCompanions:
    def test_81_passes(self, runner):
        result = runner.invoke(main, ["companions", *P81])
        assert result.exit_code == 0
        assert "all admit a companion: True" in result.output

    def test_27_fails_with_ranks(self, runner):
        result = runner.invoke(main, ["companions", *P27])
        assert result.exit_code == 1
        assert "failures (ranks): [1, 2]" in result.output


class TestExport:
    def test_csv_round_trip_and_stability(self, runner, tmp_path):
        out1, out2 = tmp_path / "e1", tmp_path / "e2"
        for out in (out1, out2):
            result = runner.invoke(main, ["export", *P27, "--canonical", "--out", str(out)])
            assert result.exit_code == 0
        for name in ("addition_table.csv", "multiplication_table.csv", "maps.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
        # the table content round-trips against the library
        from nearrings.maps import mul_table
        from nearrings.pgroup import make_params

        g = make_params(3, 1, 1, 1)
        M = mul_table(g, canonical_maps(g))
        rows = (out1 / "multiplication_table.csv").read_text().strip().split("\n")
        parsed = [[int(v) for v in r.split(",")] for r in rows]
        assert parsed == M.tolist()

    def test_json_format(self, runner, tmp_path):
        out = tmp_path / "ej"
        result = runner.invoke(main, ["export", *P27, "--canonical", "--out", str(out),
                                      "--format", "json"])
        assert result.exit_code == 0
        table = json.loads((out / "addition_table.json").read_text())
        assert len(table) == 27
        assert table[0] == list(range(27))
