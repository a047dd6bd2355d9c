"""CLI parsing, subcommand behavior, and report stability."""

import json

import pytest

import netfuncap as nf
from netfuncap import cli
from netfuncap.errors import (
    NonPrimeFieldForLinear,
    ParseError,
    UnknownExample,
    ValidationError,
)

DIAMOND_DOC = json.dumps(
    {
        "nodes": ["s1", "s2", "s3", "rho"],
        "edges": [["s3", "s1"], ["s3", "s2"], ["s1", "rho"], ["s2", "rho"]],
        "sources": ["s1", "s2", "s3"],
        "receiver": "rho",
        "alphabet": 2,
    }
)


def run_cli(*argv):
    parser = cli.build_parser()
    args = parser.parse_args(list(argv))
    return cli.run(cli.config_from_args(args))


class TestParseNetwork:
    def test_diamond_document(self):
        spec = cli.parse_network(DIAMOND_DOC)
        assert len(spec.sources) == 3
        assert len(spec.edges) == 4

    def test_missing_receiver(self):
        doc = json.loads(DIAMOND_DOC)
        del doc["receiver"]
        with pytest.raises(ParseError) as err:
            cli.parse_network(json.dumps(doc))
        assert err.value.key == "receiver"

    def test_edge_to_unknown_node(self):
        doc = json.loads(DIAMOND_DOC)
        doc["edges"].append(["s1", "ghost"])
        with pytest.raises(ValidationError):
            cli.parse_network(json.dumps(doc))

    def test_round_trip(self):
        spec = cli.parse_network(DIAMOND_DOC)
        again = cli.parse_network(json.dumps(cli.emit_network(spec)))
        assert again == spec


class TestParseFunction:
    def test_arith_sum(self):
        f = cli.parse_function({"kind": "arithmetic_sum"}, 3, 2)
        assert f.kind == "arithmetic_sum"

    def test_linear_over_f3(self):
        f = cli.parse_function({"kind": "linear", "coeffs": [1, 2]}, 2, 3)
        assert f.evaluate((1, 1)) == 0

    def test_linear_over_f4_rejected(self):
        with pytest.raises(NonPrimeFieldForLinear):
            cli.parse_function({"kind": "linear", "coeffs": [1, 1]}, 2, 4)

    def test_unknown_kind(self):
        with pytest.raises(ParseError):
            cli.parse_function({"kind": "parity"}, 2, 2)

    def test_table_round_trip(self):
        f = nf.table_function(2, 2, [0, 1, 1, 0], divisible=False)
        doc = cli.emit_function(f)
        again = cli.parse_function(doc, 2, 2)
        assert again._table == f._table
        assert again.declared_divisible == f.declared_divisible

    def test_shorthand_mod_sum(self):
        f = cli.function_from_argument("mod_sum(2)", 3, 2)
        assert f.kind == "mod_sum" and f.r == 2

    def test_shorthand_linear(self):
        f = cli.function_from_argument("linear(1,2)", 2, 3)
        assert f.coeffs == (1, 2)


class TestBuiltinExamples:
    def test_n2(self):
        spec, f = cli.builtin_example("N2")
        assert len(spec.edges) == 9
        assert f.kind == "arithmetic_sum" and f.alphabet_size == 2

    def test_diamond(self):
        spec, _ = cli.builtin_example("diamond")
        assert len(spec.edges) == 4

    def test_nml(self):
        spec, f = cli.builtin_example("NML", {"M": 3, "L": 2})
        assert len(spec.edges) == 11
        assert f.arity == 3

    def test_unknown(self):
        with pytest.raises(UnknownExample):
            cli.builtin_example("N99")


class TestSubcommands:
    def test_bounds_n2_text(self):
        status, report = run_cli("bounds", "--example", "N2")
        assert status == 0
        assert "1.261860" in report
        assert "certified: true" in report
        assert "2/log2(3)" in report

    def test_bounds_diamond_shows_gap(self):
        status, report = run_cli("bounds", "--example", "diamond")
        assert status == 0
        assert "certified: false" in report
        assert "0.773706" in report

    def test_gap(self):
        status, report = run_cli("gap", "--M", "3", "--L", "2")
        assert status == 0
        assert "2.500000" in report and "m*=3" in report

    def test_steiner(self):
        status, report = run_cli("steiner", "--example", "N2")
        assert status == 0
        assert "1.500000" in report

    def test_verify_code_round_trip(self, tmp_path):
        path = tmp_path / "diamond_k2.code"
        status, _ = run_cli("diamond-code", "--k", "2", "--out", str(path))
        assert status == 0
        status, report = run_cli(
            "verify-code", "--example", "diamond", "--code", str(path)
        )
        assert status == 0
        assert "pass, 64 generators" in report

    def test_search_code_infeasible(self):
        status, report = run_cli(
            "search-code", "--example", "diamond", "--k", "1", "--n", "1"
        )
        assert status == 0
        assert "infeasible" in report

    def test_tree_code_default_pair(self):
        status, report = run_cli("tree-code", "--example", "N3")
        assert status == 0
        assert "verify: pass" in report

    def test_xor_code(self):
        status, report = run_cli("xor-code")
        assert status == 0
        assert "pass, 16 generators" in report

    def test_footprint_table(self):
        status, report = run_cli(
            "footprint", "--function", "arithmetic_sum", "--s", "3", "--q", "2"
        )
        assert status == 0
        assert "I={1,2,3} classes=4" in report

    def test_appendix_check(self):
        status, report = run_cli("appendix-check", "--families", "10")
        assert status == 0
        assert report.count("pass") >= 8 and "FAIL" not in report

    def test_error_exit_status(self):
        status, report = run_cli("bounds", "--example", "N99")
        assert status == 1
        assert "error" in report

    def test_network_file_input(self, tmp_path):
        path = tmp_path / "net.json"
        path.write_text(DIAMOND_DOC, encoding="utf-8")
        status, report = run_cli("bounds", "--network", str(path))
        assert status == 0
        assert "certified: false" in report


class TestStructuredOutput:
    def test_schema_and_stability(self):
        status, first = run_cli("--format", "structured", "bounds", "--example", "N3")
        assert status == 0
        status, second = run_cli("--format", "structured", "bounds", "--example", "N3")
        assert first == second  # byte-stable
        doc = json.loads(first)
        assert doc["schema"] == "v1"
        assert doc["command"] == "bounds"
        assert doc["certified"] is True

    def test_appendix_structured_stability(self):
        _, first = run_cli("--format", "structured", "appendix-check", "--families", "5")
        _, second = run_cli("--format", "structured", "appendix-check", "--families", "5")
        assert first == second
        doc = json.loads(first)
        assert doc["seed"] == cli.DEFAULT_SEED and doc["all_pass"] is True

    def test_seed_recorded_for_replay(self):
        _, report = run_cli(
            "--format", "structured", "--seed", "99", "appendix-check", "--families", "5"
        )
        assert json.loads(report)["seed"] == 99


class TestConfigValidation:
    def test_bad_tolerance(self):
        with pytest.raises(ValidationError):
            cli.RunConfig(subcommand="bounds", tol=0.5)

    def test_bad_budget(self):
        with pytest.raises(ValidationError):
            cli.RunConfig(subcommand="bounds", budget_edges=0)

    def test_env_state_budget(self, monkeypatch):
        monkeypatch.setenv(cli.STATE_BUDGET_ENV, "4096")
        parser = cli.build_parser()
        args = parser.parse_args(["bounds", "--example", "N3"])
        config = cli.config_from_args(args)
        assert config.budget_states == 4096
        # restore the module default for later tests
        monkeypatch.delenv(cli.STATE_BUDGET_ENV)
        cli.run(cli.config_from_args(parser.parse_args(["bounds", "--example", "N3"])))
