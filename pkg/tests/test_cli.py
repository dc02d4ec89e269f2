"""End-to-end tests of the command-line interface.

Everything runs in process through ``run(argv)`` so exit codes, stdout
bytes, and stderr diagnostics are all assertable without subprocesses.
"""

import json

import pytest

from kodairabound import cli


def invoke(capsys, argv, expect_code=0):
    try:
        code = cli.run(argv)
    except SystemExit as exc:  # argparse errors exit instead of returning
        code = exc.code
    captured = capsys.readouterr()
    assert code == expect_code, captured.err or captured.out
    return captured


class TestPlainOutputs:
    def test_hall_count(self, capsys):
        assert invoke(capsys, ["hall", "--index", "3", "--rank", "2"]).out == "13\n"

    def test_hall_upper(self, capsys):
        out = invoke(capsys, ["hall", "--index", "3", "--rank", "2", "--upper"]).out
        assert out == "18\n"

    def test_genus_bound(self, capsys):
        assert invoke(capsys, ["genus-bound", "--genus", "3", "--degree", "5"]).out == "11\n"

    def test_gl_order(self, capsys):
        assert invoke(capsys, ["gl-order", "--rank", "4"]).out == "20160\n"

    def test_ibound_log2(self, capsys):
        out = invoke(
            capsys,
            ["ibound", "--invariant-factors", "2", "--profile", "2,2", "--format", "log2"],
        ).out
        assert out == "18.000000\n"

    def test_ibound_exact(self, capsys):
        out = invoke(capsys, ["ibound", "--invariant-factors", "2", "--profile", "2,2"]).out
        assert out == "262144\n"


class TestJsonOutputs:
    def test_hall_json(self, capsys):
        out = invoke(capsys, ["hall", "--index", "3", "--rank", "2", "--json"]).out
        assert json.loads(out) == {
            "index": 3,
            "rank": 2,
            "upper_bound_only": False,
            "count": {"kind": "exact", "decimal": "13"},
        }

    def test_ibound_trace_json(self, capsys):
        out = invoke(
            capsys,
            ["ibound", "--invariant-factors", "2", "--profile", "2,2", "--trace", "--json"],
        ).out
        payload = json.loads(out)
        assert payload["total"] == {"kind": "exact", "decimal": "262144"}
        assert "trace" in payload
        assert payload["trace"]["profile"] == [
            {"kind": "exact", "decimal": "2"},
            {"kind": "exact", "decimal": "2"},
        ]

    def test_compare_closed_forms_json(self, capsys):
        out = invoke(
            capsys,
            [
                "compare-closed-forms",
                "--which",
                "i3",
                "--invariant-factors",
                "2",
                "--profile",
                "2,2",
                "--json",
            ],
        ).out
        payload = json.loads(out)
        assert payload["verdict"] == "recursive_larger"
        assert payload["log2_discrepancy"] == {
            "sign": 1,
            "depth": 2,
            "delta": "32769.263035",
        }

    def test_cover_degree_json_schema(self, capsys):
        out = invoke(capsys, ["cover-degree", "--dim", "2", "--genus", "2", "--json"]).out
        payload = json.loads(out)
        assert set(payload) == {"inputs", "stages", "total", "preset", "notes"}
        assert [s["name"] for s in payload["stages"]] == [
            "base_monodromy_cover",
            "homology_double_cover",
            "second_monodromy_cover",
            "fiber_homology_cover",
            "final_monodromy_cover",
        ]

    def test_literal_out_product_report(self, capsys):
        out = invoke(capsys, ["gl-order", "--rank", "3", "--literal-out-product", "--json"]).out
        payload = json.loads(out)
        assert payload["zero_factor_index"] == 4
        assert payload["positive_prefix_product"] == {"kind": "exact", "decimal": "168"}
        assert payload["exact_evaluation"].startswith("refused")


class TestExampleCommand:
    def test_dim3_text(self, capsys):
        out = invoke(capsys, ["example", "--dim", "3", "--genus", "2"]).out
        assert out.startswith("aggregated exponent: 156\n")
        assert "component sum" in out or "ker_mu" in out

    def test_dim3_compare(self, capsys):
        out = invoke(
            capsys, ["example", "--dim", "3", "--genus", "2", "--compare", "--json"]
        ).out
        payload = json.loads(out)
        assert payload["verdict"] == "pipeline_larger"
        assert payload["log2_discrepancy"]["delta"] == "231.000000"

    def test_dim4_compare_saturates(self, capsys):
        out = invoke(
            capsys, ["example", "--dim", "4", "--genus", "2", "--compare", "--json"]
        ).out
        payload = json.loads(out)
        assert payload["log2_discrepancy"] == {"sign": 1, "saturated": True}

    def test_dim2_statement_preset(self, capsys):
        out = invoke(
            capsys,
            [
                "example",
                "--dim",
                "2",
                "--genus",
                "2",
                "--preset",
                "statement",
                "--format",
                "log2",
            ],
        ).out
        # closed dimension-2 form at the statement rank stays below 2^1583
        assert float(out.strip()) < 1583


class TestOutFile:
    def test_out_writes_file_and_nothing_to_stdout(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        captured = invoke(
            capsys, ["cover-degree", "--dim", "2", "--genus", "2", "--out", str(target)]
        )
        assert captured.out == ""
        payload = json.loads(target.read_text())
        assert payload["inputs"]["dim"] == 2
        assert payload["total"]["kind"] == "exact"


class TestBudgetPlumbing:
    def test_env_budget(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.ENV_BUDGET, "8")
        out = invoke(capsys, ["ibound", "--invariant-factors", "2", "--profile", "2,2"]).out
        assert out == "tower(level=1, log2_magnitude=18/1)\n"

    def test_flag_overrides_env(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.ENV_BUDGET, "8")
        out = invoke(
            capsys,
            ["ibound", "--invariant-factors", "2", "--profile", "2,2", "--bit-budget", "64"],
        ).out
        assert out == "262144\n"

    def test_invalid_env_budget(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.ENV_BUDGET, "plenty")
        captured = invoke(
            capsys, ["hall", "--index", "2", "--rank", "2"], expect_code=2
        )
        assert "must be an integer" in captured.err


class TestErrorPaths:
    def test_bad_invariant_chain(self, capsys):
        captured = invoke(
            capsys,
            ["ibound", "--invariant-factors", "3,2", "--profile", "2,2"],
            expect_code=2,
        )
        assert "divisibility" in captured.err

    def test_genus_too_small(self, capsys):
        captured = invoke(
            capsys, ["genus-bound", "--genus", "1", "--degree", "5"], expect_code=2
        )
        assert "genus" in captured.err

    def test_bad_override_key(self, capsys):
        captured = invoke(
            capsys,
            ["cover-degree", "--dim", "2", "--genus", "2", "--override", "nope=3"],
            expect_code=2,
        )
        assert "override" in captured.err

    def test_compare_profile_length(self, capsys):
        captured = invoke(
            capsys,
            [
                "compare-closed-forms",
                "--which",
                "i2",
                "--invariant-factors",
                "2",
                "--profile",
                "2,2,2",
            ],
            expect_code=2,
        )
        assert "profile" in captured.err

    def test_argparse_rejects_zero(self, capsys):
        invoke(capsys, ["hall", "--index", "0", "--rank", "2"], expect_code=2)

    def test_argparse_requires_subcommand(self, capsys):
        invoke(capsys, [], expect_code=2)


class TestVerifyCommand:
    def test_gl_suite_passes(self, capsys):
        out = invoke(capsys, ["verify", "--suite", "gl", "--max", "4"]).out
        assert out == "gl: 4 cases, 0 mismatches\n"

    def test_hall_suite_passes(self, capsys):
        out = invoke(capsys, ["verify", "--suite", "hall", "--max", "4"]).out
        assert out.endswith("0 mismatches\n")

    def test_mismatch_exits_3(self, capsys, monkeypatch):
        monkeypatch.setitem(
            cli._SUITES, "gl", (lambda limit: (1, ["gl rank=1: forced failure"]), 4)
        )
        captured = invoke(capsys, ["verify", "--suite", "gl"], expect_code=3)
        assert captured.out.splitlines()[0] == "MISMATCH gl rank=1: forced failure"
        assert captured.out.splitlines()[-1] == "gl: 1 cases, 1 mismatches"

    def test_json_report(self, capsys):
        out = invoke(capsys, ["verify", "--suite", "gl", "--max", "2", "--json"]).out
        assert json.loads(out) == {"suite": "gl", "cases": 2, "mismatches": []}


class TestDeterminism:
    def test_repeated_runs_are_byte_identical(self, capsys):
        argv = ["cover-degree", "--dim", "3", "--genus", "2", "--json"]
        first = invoke(capsys, argv).out
        second = invoke(capsys, argv).out
        assert first == second
