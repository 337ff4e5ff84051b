"""End-to-end command-line behavior: output formats, golden strings,
serialization round trips, exit codes, and the table cache."""

from __future__ import annotations

import contextlib
import io
import json

import pytest

from dysonrank import load_table
from dysonrank.cli import (
    OutputRecord,
    main,
    record_from_json,
    record_to_json,
    render,
)


def run(*argv):
    """(exit_code, stdout, stderr) for one in-process invocation."""
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
    except SystemExit as exc:  # argparse's own flag errors
        code = exc.code
    return code, out.getvalue(), err.getvalue()


class TestCount:
    def test_established_counts(self):
        code, out, _ = run("count", "--r", "0", "--t", "3", "--n", "13",
                           "--n-max", "64")
        assert code == 0
        assert "result.count = 37" in out
        code, out, _ = run("count", "--r", "1", "--t", "3", "--n", "17",
                           "--n-max", "64")
        assert code == 0
        assert "result.count = 101" in out

    def test_empty_partition(self):
        code, out, _ = run("count", "--r", "0", "--t", "3", "--n", "0",
                           "--n-max", "8")
        assert code == 0
        assert "result.count = 1" in out

    def test_text_golden(self):
        _, out, _ = run("count", "--r", "0", "--t", "3", "--n", "13",
                        "--n-max", "64")
        assert out == ("command = count\n"
                       "status = ok\n"
                       "param.r = 0\n"
                       "param.t = 3\n"
                       "param.n = 13\n"
                       "param.n_max = 64\n"
                       "result.count = 37\n")

    def test_csv_golden(self):
        _, out, _ = run("count", "--r", "0", "--t", "3", "--n", "13",
                        "--n-max", "64", "--format", "csv")
        assert out == ("key,value\n"
                       "command,count\n"
                       "status,ok\n"
                       "param.r,0\n"
                       "param.t,3\n"
                       "param.n,13\n"
                       "param.n_max,64\n"
                       "result.count,37\n")

    def test_json_output_and_round_trip(self):
        code, out, _ = run("count", "--r", "1", "--t", "3", "--n", "20",
                           "--n-max", "64", "--format", "json")
        assert code == 0
        record = record_from_json(out)
        assert record.command == "count"
        assert record.status == "ok"
        assert record.results["count"] == 211
        assert record_from_json(record_to_json(record)) == record

    def test_show_row(self):
        _, out, _ = run("count", "--r", "0", "--t", "3", "--n", "4",
                        "--n-max", "16", "--show-row", "--format", "json")
        record = record_from_json(out)
        assert record.results["row"] == [[-3, 1], [-2, 0], [-1, 1], [0, 1],
                                         [1, 1], [2, 0], [3, 1]]

    def test_invalid_residue_is_usage_error(self):
        code, _, err = run("count", "--r", "3", "--t", "3", "--n", "5",
                           "--n-max", "16")
        assert code == 2
        assert "error" in err

    def test_table_too_small_names_required_size(self):
        code, _, err = run("count", "--r", "0", "--t", "3", "--n", "50",
                           "--n-max", "40")
        assert code == 2
        assert "--n-max >= 50" in err


class TestMaxn:
    def test_single_n(self):
        code, out, _ = run("maxn", "--r", "0", "--t", "3", "--n", "28",
                           "--n-max", "64", "--show-partitions")
        assert code == 0
        assert "result.rows[0].value = 2401" in out
        assert "{(7,7,7,7)}" in out

    def test_zero(self):
        code, out, _ = run("maxn", "--r", "0", "--t", "3", "--n", "0",
                           "--n-max", "8", "--show-partitions")
        assert code == 0
        assert "result.rows[0].value = 1" in out
        assert "{()}" in out

    def test_closed_form_comparison(self):
        code, out, _ = run("maxn", "--r", "1", "--t", "3", "--n", "30",
                           "--n-max", "64")
        assert code == 0
        assert "result.rows[0].value = 3481" in out
        assert "result.rows[0].closed_form = 3481" in out
        assert "result.rows[0].closed_form_agrees = True" in out

    def test_range(self):
        code, out, _ = run("maxn", "--r", "0", "--from", "33", "--to", "40",
                           "--n-max", "64", "--format", "json")
        assert code == 0
        record = record_from_json(out)
        assert len(record.results["rows"]) == 8
        assert record.results["closed_form_disagreements"] == 0

    def test_multi_optima_listed(self):
        _, out, _ = run("maxn", "--r", "0", "--t", "3", "--n", "16",
                        "--n-max", "32", "--show-partitions", "--format",
                        "json")
        record = record_from_json(out)
        assert record.results["rows"][0]["optima"] == [[4, 4, 4, 4], [16]]

    def test_n_and_range_conflict(self):
        code, _, err = run("maxn", "--r", "0", "--n", "5", "--to", "9",
                           "--n-max", "16")
        assert code == 2
        assert "not both" in err


class TestConvexity:
    def test_violations_exit_one(self):
        code, out, _ = run("convexity", "--r", "0", "--t", "3", "--min",
                           "10", "--max", "30", "--n-max", "64")
        assert code == 1
        assert "status = violation-found" in out
        assert "(11,11,256,340)" in out

    def test_clean_region_exit_zero(self):
        code, out, _ = run("convexity", "--r", "0", "--t", "3", "--min",
                           "12", "--max", "30", "--n-max", "64")
        assert code == 0
        assert "result.violations_found = 0" in out

    def test_default_min_is_threshold(self):
        code, out, _ = run("convexity", "--r", "0", "--max", "30",
                           "--n-max", "64")
        assert code == 0
        assert "param.min = 12" in out

    def test_threads_do_not_change_output(self):
        base = run("convexity", "--r", "1", "--min", "5", "--max", "40",
                   "--n-max", "96")
        threaded = run("convexity", "--r", "1", "--min", "5", "--max", "40",
                       "--n-max", "96", "--threads", "3")
        assert base == threaded


class TestBounds:
    def test_diagnostics_at_500(self):
        code, out, _ = run("bounds", "--n", "500")
        assert code == 0
        assert "result.sandwich_ok = True" in out
        assert "result.estimate_ok = True" in out
        assert "result.ratio_caps_ok = True" in out
        assert "result.cap_2_discrepant = True" in out

    def test_small_n_skips_ratios(self):
        code, out, _ = run("bounds", "--n", "10")
        assert code == 0
        assert "ratio" not in out

    def test_rejects_zero(self):
        code, _, err = run("bounds", "--n", "0")
        assert code == 2
        assert "error" in err


class TestVerifySuites:
    def test_tables(self):
        code, out, _ = run("verify", "tables", "--n-max", "64")
        assert code == 0
        assert "status = ok" in out

    def test_convexity_clean(self):
        code, _, _ = run("verify", "convexity", "--r", "0", "--max", "60",
                         "--n-max", "120")
        assert code == 0

    def test_convexity_with_min_10_exits_one(self):
        code, out, _ = run("verify", "convexity", "--r", "0", "--min", "10",
                           "--max", "30", "--n-max", "64")
        assert code == 1
        assert "status = violation-found" in out

    def test_theorem2(self):
        code, out, _ = run("verify", "theorem2", "--max", "60", "--n-max",
                           "64")
        assert code == 0
        assert "status = ok" in out

    def test_bounds(self):
        code, _, _ = run("verify", "bounds", "--max", "120")
        assert code == 0

    def test_budget(self):
        code, out, _ = run("verify", "budget", "--from", "500", "--to",
                           "600", "--step", "50", "--n-max", "600")
        assert code == 0
        assert "result.failures = 0" in out

    def test_conjectures_always_exit_zero(self):
        code, out, _ = run("verify", "conjectures", "--max", "20", "--to",
                           "30", "--n-max", "64")
        assert code == 0
        assert "status = ok" in out

    def test_unknown_suite_is_usage_error(self):
        code, _, _ = run("verify", "everything")
        assert code == 2


class TestTableCache:
    def test_cache_created_and_reused(self, tmp_path):
        path = tmp_path / "t.rnkt"
        code, _, _ = run("rank-table", "--n-max", "40", "--table-cache",
                         str(path))
        assert code == 0
        assert load_table(path).n_max == 40
        before = path.read_bytes()
        code, out, _ = run("count", "--r", "0", "--t", "3", "--n", "22",
                           "--n-max", "40", "--table-cache", str(path))
        assert code == 0
        assert "result.count = 340" in out
        assert path.read_bytes() == before  # served from cache, not rebuilt

    def test_undersized_cache_is_rebuilt(self, tmp_path):
        path = tmp_path / "t.rnkt"
        run("rank-table", "--n-max", "30", "--table-cache", str(path))
        code, out, _ = run("count", "--r", "0", "--t", "3", "--n", "50",
                           "--n-max", "60", "--table-cache", str(path))
        assert code == 0
        assert load_table(path).n_max == 60

    def test_corrupt_cache_is_surfaced(self, tmp_path):
        path = tmp_path / "t.rnkt"
        run("rank-table", "--n-max", "30", "--table-cache", str(path))
        path.write_bytes(path.read_bytes()[:10])
        code, _, err = run("count", "--r", "0", "--t", "3", "--n", "5",
                           "--n-max", "30", "--table-cache", str(path))
        assert code == 2
        assert "cache" in err


class TestRankTableCommand:
    def test_summary_only(self):
        code, out, _ = run("rank-table", "--n-max", "20")
        assert code == 0
        assert "result.n_max = 20" in out
        assert "result.partitions_of_n_max = 627" in out

    def test_row_window(self):
        code, out, _ = run("rank-table", "--from", "3", "--to", "4",
                           "--n-max", "16", "--format", "json")
        assert code == 0
        record = record_from_json(out)
        rows = record.results["rows"]
        assert rows[0]["n"] == 3
        assert rows[0]["counts"] == [[-2, 1], [-1, 0], [0, 1], [1, 0], [2, 1]]
        assert rows[1]["n"] == 4

    def test_bad_window(self):
        code, _, err = run("rank-table", "--from", "9", "--to", "2",
                           "--n-max", "16")
        assert code == 2
        assert "range" in err


class TestSerialization:
    def test_big_integers_become_decimal_strings(self):
        record = OutputRecord("probe", {"n": 1},
                              {"big": 2 ** 77, "negative": -(2 ** 77),
                               "small": 5})
        raw = json.loads(record_to_json(record))
        assert raw["results"]["big"] == str(2 ** 77)
        assert raw["results"]["negative"] == str(-(2 ** 77))
        assert raw["results"]["small"] == 5
        assert record_from_json(record_to_json(record)) == record

    def test_tuples_normalize_to_lists(self):
        record = OutputRecord("probe", {}, {"optima": ((7, 7), (14,))})
        assert record.results["optima"] == [[7, 7], [14]]

    def test_render_dispatch(self):
        record = OutputRecord("probe", {"a": 1}, {"b": True})
        assert render(record, "text").startswith("command = probe")
        assert render(record, "csv").startswith("key,value")
        assert json.loads(render(record, "json"))["status"] == "ok"


class TestParserBasics:
    def test_missing_subcommand(self):
        code, _, _ = run()
        assert code == 2

    def test_unknown_subcommand(self):
        code, _, _ = run("frobnicate")
        assert code == 2

    def test_version(self):
        code, out, _ = run("--version")
        assert code == 0
        assert "dysonrank" in out
