import json

import pytest

from corewatch.cli import build_stats, coreness_buckets, main
from corewatch.graph import load_edge_list
from corewatch.maintenance import FollowerEngine

TRIANGLE_PENDANT = "a b\na c\nb c\na d\n"
K4_MINUS = "a b\na c\na d\nb c\nb d\n"
PATH3 = "a b\nb c\n"


@pytest.fixture
def graph_file(tmp_path):
    def write(content, name="graph.txt"):
        path = tmp_path / name
        path.write_text(content)
        return str(path)

    return write


def run(argv):
    return main(argv)


class TestDecompose:
    def test_tsv_triangle(self, graph_file, tmp_path, capsys):
        path = graph_file("1 2\n2 3\n1 3\n")
        assert run(["decompose", "--input", path]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].split("\t") == [
            "vertex",
            "coreness",
            "layer",
            "higher_support",
            "component",
        ]
        assert len(lines) == 4
        assert all(line.split("\t")[1] == "2" for line in lines[1:])

    def test_empty_file(self, graph_file, capsys):
        path = graph_file("")
        assert run(["decompose", "--input", path]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 1  # header only

    def test_malformed_file_names_line(self, graph_file, capsys):
        path = graph_file("1 2\nbroken\n")
        assert run(["decompose", "--input", path]) != 0
        assert "2" in capsys.readouterr().err

    def test_json_output(self, graph_file, tmp_path):
        path = graph_file(TRIANGLE_PENDANT)
        out = tmp_path / "out.json"
        assert run(
            ["decompose", "--input", path, "--format", "json", "--output", str(out)]
        ) == 0
        doc = json.loads(out.read_text())
        assert doc["n"] == 4 and doc["m"] == 4 and doc["k_max"] == 2
        rows = {r["vertex"]: r for r in doc["vertices"]}
        assert rows["d"]["coreness"] == 1
        assert rows["d"]["higher_support"] == 1
        assert rows["a"]["component"] == "a"

    def test_missing_file_errors(self, tmp_path):
        assert run(["decompose", "--input", str(tmp_path / "nope.txt")]) != 0


class TestFollowers:
    def test_single_vertex(self, graph_file, capsys):
        path = graph_file(TRIANGLE_PENDANT)
        assert run(
            ["followers", "--input", path, "--vertex", "a", "--threads", "1"]
        ) == 0
        doc = json.loads(capsys.readouterr().out)
        (rec,) = doc["vertices"]
        assert rec == {"vertex": "a", "collapsed": ["b", "c", "d"], "anchored": []}

    def test_all_matches_oracle_sweep(self, graph_file, capsys):
        from corewatch.oracle import (
            oracle_anchored_followers,
            oracle_collapsed_followers,
        )

        path = graph_file(K4_MINUS)
        assert run(["followers", "--input", path, "--all", "--threads", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        g = load_edge_list(K4_MINUS)
        assert len(doc["vertices"]) == 4
        for rec in doc["vertices"]:
            x = g.label_to_id[rec["vertex"]]
            assert rec["collapsed"] == sorted(
                g.labels[u] for u in oracle_collapsed_followers(g, x)
            )
            assert rec["anchored"] == sorted(
                g.labels[u] for u in oracle_anchored_followers(g, x)
            )

    def test_unknown_label(self, graph_file, capsys):
        path = graph_file(PATH3)
        assert run(["followers", "--input", path, "--vertex", "zz"]) != 0
        assert "zz" in capsys.readouterr().err

    def test_output_round_trips(self, graph_file, tmp_path):
        path = graph_file(K4_MINUS)
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        run(["followers", "--input", path, "--all", "--output", str(out1)])
        run(["followers", "--input", path, "--all", "--output", str(out2)])
        assert json.loads(out1.read_text()) == json.loads(out2.read_text())


class TestStream:
    def test_insert_event_report(self, graph_file, tmp_path):
        gpath = graph_file(PATH3)
        ops = graph_file("+ a c\n", name="ops.txt")
        out = tmp_path / "report.jsonl"
        assert run(
            ["stream", "--input", gpath, "--ops", ops, "--output", str(out)]
        ) == 0
        lines = [json.loads(s) for s in out.read_text().splitlines()]
        assert len(lines) == 2  # one event + summary
        event = lines[0]
        assert event["noop"] is False
        assert event["coreness_changed"] == {"a": [1, 2], "b": [1, 2], "c": [1, 2]}
        assert lines[1]["type"] == "summary"

    def test_removing_absent_edge_is_noop(self, graph_file, tmp_path):
        gpath = graph_file(PATH3)
        ops = graph_file("- a c\n", name="ops.txt")
        out = tmp_path / "report.jsonl"
        run(["stream", "--input", gpath, "--ops", ops, "--output", str(out)])
        event = json.loads(out.read_text().splitlines()[0])
        assert event["noop"] is True

    def test_roundtrip_restores_decompose_output(self, graph_file, tmp_path, capsys):
        gpath = graph_file(TRIANGLE_PENDANT)
        ops = graph_file("+ b d\n- b d\n", name="ops.txt")
        out = tmp_path / "report.jsonl"
        run(["stream", "--input", gpath, "--ops", ops, "--output", str(out)])
        summary = json.loads(out.read_text().splitlines()[-1])

        assert run(["decompose", "--input", gpath, "--format", "json"]) == 0
        decomp = json.loads(capsys.readouterr().out)
        stripped = [
            {k: row[k] for k in ("vertex", "coreness", "layer", "higher_support", "component")}
            for row in summary["vertices"]
        ]
        assert stripped == decomp["vertices"]

    def test_summary_equals_offline_on_final_graph(self, graph_file, tmp_path, capsys):
        gpath = graph_file(TRIANGLE_PENDANT)
        ops = graph_file("- b c\n+ c d\n+ e a\n", name="ops.txt")
        out = tmp_path / "report.jsonl"
        run(["stream", "--input", gpath, "--ops", ops, "--output", str(out)])
        summary = json.loads(out.read_text().splitlines()[-1])

        final_graph = tmp_path / "final.txt"
        final_graph.write_text("a b\na c\na d\nc d\ne a\ne e\n")
        assert run(["followers", "--input", str(final_graph), "--all"]) == 0
        follower_doc = json.loads(capsys.readouterr().out)
        by_vertex = {r["vertex"]: r for r in follower_doc["vertices"]}
        for row in summary["vertices"]:
            rec = by_vertex[row["vertex"]]
            assert row["collapsed"] == rec["collapsed"]
            assert row["anchored"] == rec["anchored"]

    def test_malformed_ops_abort(self, graph_file, tmp_path):
        gpath = graph_file(PATH3)
        ops = graph_file("+ a\n", name="ops.txt")
        assert run(["stream", "--input", gpath, "--ops", ops]) != 0


class TestStats:
    def test_pendant_percentages(self, graph_file, capsys):
        path = graph_file(TRIANGLE_PENDANT)
        assert run(["stats", "--input", path, "--threads", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["valid_collapser_pct"] == 75.0
        assert doc["valid_anchor_pct"] == 0.0
        assert doc["k_max"] == 2
        assert doc["d_max"] == 3

    def test_edgeless_graph(self, graph_file, capsys):
        path = graph_file("a a\nb b\n")
        assert run(["stats", "--input", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["valid_collapser_pct"] == 0.0
        assert doc["valid_anchor_pct"] == 0.0
        assert doc["histogram"] == []

    def test_histogram_tsv_written(self, graph_file, tmp_path):
        path = graph_file(TRIANGLE_PENDANT)
        out = tmp_path / "stats.json"
        assert run(["stats", "--input", path, "--output", str(out)]) == 0
        hist = (tmp_path / "stats.json.hist.tsv").read_text().splitlines()
        assert hist[0].startswith("coreness_lo")
        assert len(hist) == 3  # header + buckets for coreness 1 and 2

    def test_bucket_rule_small_kmax(self):
        assert coreness_buckets(2) == [(1, 1), (2, 2)]
        assert coreness_buckets(0) == []

    def test_bucket_rule_merges_remainder(self):
        buckets = coreness_buckets(52)
        assert len(buckets) == 20
        assert buckets[0] == (1, 2)
        assert buckets[-2] == (37, 38)
        assert buckets[-1] == (39, 52)
        covered = [k for lo, hi in buckets for k in range(lo, hi + 1)]
        assert covered == list(range(1, 53))

    def test_bucket_rule_exact_multiple(self):
        buckets = coreness_buckets(40)
        assert len(buckets) == 20
        assert buckets[-1] == (39, 40)
        covered = [k for lo, hi in buckets for k in range(lo, hi + 1)]
        assert covered == list(range(1, 41))

    def test_bucket_means(self, graph_file):
        g = load_edge_list(TRIANGLE_PENDANT)
        engine = FollowerEngine(g)
        report = build_stats(engine)
        rows = {(r["coreness_lo"], r["coreness_hi"]): r for r in report.histogram}
        assert rows[(1, 1)]["vertices"] == 1
        assert rows[(1, 1)]["mean_collapsed"] == 0.0
        assert rows[(2, 2)]["vertices"] == 3
        assert rows[(2, 2)]["mean_collapsed"] == pytest.approx(7 / 3)


class TestBench:
    def test_smoke_and_determinism_flag(self, graph_file, tmp_path):
        gpath = graph_file(K4_MINUS)
        ops = graph_file("+ c d\n- c d\n", name="ops.txt")
        out = tmp_path / "bench.json"
        assert run(
            [
                "bench",
                "--input",
                gpath,
                "--ops",
                ops,
                "--threads",
                "2",
                "--output",
                str(out),
            ]
        ) == 0
        doc = json.loads(out.read_text())
        assert doc["outputs_identical"] is True
        assert [row["threads"] for row in doc["offline"]] == [1, 2]
        assert doc["maintenance"]["events"] == 2
        assert doc["speedup_vs_offline_1thread"] > 0

    def test_without_ops_only_offline(self, graph_file, capsys):
        gpath = graph_file(K4_MINUS)
        assert run(["bench", "--input", gpath, "--threads", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "maintenance" not in doc
