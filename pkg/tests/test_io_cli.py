import io
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings

from centra.centrality import Measure
from centra.cli import main
from centra.datasets import twin_hub_graph
from centra.exceptions import DuplicateEdgeError, NonPositiveWeightError, ParseError, SelfLoopError
from centra.graph import WeightKind, convert_weights
from centra.io import format_value, parse_config, parse_edge_list, write_csv, write_edge_list

from conftest import small_graphs

DATA = Path(__file__).parent / "data"


def write(tmp_path, text, name="g.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestParseEdgeList:
    def test_symmetric_pair(self, tmp_path):
        g, labels = parse_edge_list(write(tmp_path, "src,dst,weight\na,b,1.0\nb,a,1.0\n"))
        assert g.n == 2 and g.n_edges == 2 and g.is_symmetric
        assert labels == ["a", "b"]

    def test_undirected_flag_and_comments(self, tmp_path):
        g, labels = parse_edge_list(write(tmp_path, "# c\nsrc,dst,weight,directed\n\nb,a,2.5,false\nb,c,1,true\n"))
        assert labels == ["b", "a", "c"]
        assert g.weight(0, 1) == g.weight(1, 0) == 2.5
        assert not g.has_edge(2, 0)

    def test_fixture_file(self):
        g, labels = parse_edge_list(DATA / "twin_hub.csv", WeightKind.DISSIMILARITY)
        assert g.n == 8 and g.n_edges == 16
        assert labels[0] == "x1"

    @pytest.mark.parametrize(
        "text, error, line",
        [
            ("src,dst,weight\na,b,1\na,a,1.0\n", SelfLoopError, 3),
            ("src,dst,weight\n# x\na,b,0\n", NonPositiveWeightError, 3),
            ("src,dst,weight\na,b,1\na,b,2\n", DuplicateEdgeError, 3),
            ("src,dst,weight,directed\na,b,1,false\nb,a,2,true\n", DuplicateEdgeError, 3),
            ("src,dst,weight\na,b,heavy\n", ParseError, 2),
            ("src,dst,weight\na,b\n", ParseError, 2),
            ("from,to,weight\na,b,1\n", ParseError, 1),
            ("src,dst,weight,directed\na,b,1,maybe\n", ParseError, 2),
        ],
    )
    def test_errors_carry_line_numbers(self, tmp_path, text, error, line):
        with pytest.raises(error, match=f"line {line}"):
            parse_edge_list(write(tmp_path, text))

    def test_empty_file(self, tmp_path):
        with pytest.raises(ParseError):
            parse_edge_list(write(tmp_path, "# nothing\n"))

    def test_reciprocal_view(self, tmp_path):
        g, _ = parse_edge_list(write(tmp_path, "src,dst,weight,directed\na,b,4,false\n"))
        d = convert_weights(g, "reciprocal")
        assert d.weight_kind is WeightKind.DISSIMILARITY and d.weight(0, 1) == 0.25


@settings(suppress_health_check=[HealthCheck.function_scoped_fixture], max_examples=50)
@given(small_graphs())
def test_edge_list_round_trip(tmp_path, g):
    labels = [f"n{i}" for i in range(g.n)]
    p = tmp_path / "rt.csv"
    write_edge_list(g, p, labels)
    back, back_labels = parse_edge_list(p, g.weight_kind, labels=labels)
    assert back == g and back_labels == labels


class TestConfig:
    def test_full(self, tmp_path):
        c = parse_config(
            write(
                tmp_path,
                "# desk run\nsizes = 20, 40\ntrials = 3\nnoise = type2\nmeasures = degree,betweenness\n"
                "thresholds = 1,2\ntop_k = 3\nseed = 11\n",
                "c.conf",
            )
        )
        assert c.sizes == (20, 40) and c.trials == 3 and (c.p, c.delta) == (0.1, 0.1)
        assert c.measures == (Measure.DEGREE, Measure.BETWEENNESS)
        assert c.thresholds == (1, 2) and c.top_k == 3 and c.seed == 11

    def test_section_header_and_override(self, tmp_path):
        c = parse_config(write(tmp_path, "[experiment]\nnoise = type1\ndelta = 0\n", "c.conf"))
        assert (c.p, c.delta) == (1.0, 0.0)

    @pytest.mark.parametrize("text", ["colour = red\n", "noise = type3\n", "trials = many\n", "sizes = 5\n"])
    def test_rejects(self, tmp_path, text):
        with pytest.raises(ParseError):
            parse_config(write(tmp_path, text, "c.conf"))


def test_format_value():
    assert format_value(math.inf) == "inf"
    assert format_value(np.float64(0.1)) == "0.1"
    assert format_value(np.int64(3)) == "3"
    assert format_value(Measure.DEGREE) == "degree"
    buf = io.StringIO()
    write_csv(buf, ["a", "b"], [(1, 2.5)])
    assert buf.getvalue() == "a,b\n1,2.5\n"


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


class TestCli:
    def test_centrality_betweenness(self):
        code, out = run(["centrality", "--graph", str(DATA / "twin_hub.csv"), "--measure", "betweenness",
                         "--weight-kind", "dissimilarity"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "node,value,rank"
        assert "x1,9.0,3" in lines
        assert "x3,23.0,1" in lines

    def test_centrality_converts_kinds(self):
        code, out = run(["centrality", "--graph", str(DATA / "twin_hub.csv"), "--measure", "degree"])
        assert code == 0 and "x3,4.0" in out
        code, out = run(["centrality", "--graph", str(DATA / "twin_hub.csv"), "--measure", "closeness_decentrality"])
        assert code == 0 and "x1,12.0" in out

    def test_data_error_exit_code(self, tmp_path, capsys):
        bad = write(tmp_path, "src,dst,weight\na,a,1\n")
        code, _ = run(["centrality", "--graph", str(bad), "--measure", "degree"])
        assert code == 1
        assert "line 2" in capsys.readouterr().err
        code, _ = run(["centrality", "--graph", str(tmp_path / "missing.csv"), "--measure", "degree"])
        assert code == 1

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["nonsense"],
            ["centrality", "--measure", "degree"],
            ["centrality", "--graph", "x", "--measure", "fame"],
            ["verify-bounds", "--trials", "0"],
            ["verify-bounds", "--sizes", "a,b"],
            ["sweep", "--graph", "x", "--deltas", "1.5"],
        ],
    )
    def test_usage_errors_exit_two(self, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv, out=io.StringIO())
        assert exc.value.code == 2

    def test_bad_env_seed_is_usage_error(self, monkeypatch):
        monkeypatch.setenv("CENTRA_SEED", "abc")
        with pytest.raises(SystemExit) as exc:
            main(["compare-measures", "--sizes", "10", "--trials", "1"], out=io.StringIO())
        assert exc.value.code == 2

    def test_zero_delta_experiment(self, tmp_path):
        cfg = write(tmp_path, "sizes = 20\ntrials = 2\ndelta = 0\nthresholds = 3\n", "c.conf")
        out = tmp_path / "out"
        code, _ = run(["perturb-experiment", "--config", str(cfg), "--out", str(out), "--jobs", "1"])
        assert code == 0
        names = sorted(p.name for p in out.iterdir())
        assert names == [
            "exceedance_gt_3.csv",
            "max_displacement_histogram.csv",
            "mean_average_displacement.csv",
            "mean_max_displacement.csv",
            "top_5_retention.csv",
        ]
        for name in ("exceedance_gt_3.csv", "mean_average_displacement.csv", "mean_max_displacement.csv"):
            rows = (out / name).read_text().splitlines()
            assert rows[0] == "size,measure,value"
            assert all(r.endswith(",0.0") for r in rows[1:]) and len(rows) == 6
        assert all(r.endswith(",1.0") for r in (out / "top_5_retention.csv").read_text().splitlines()[1:])
        hist = (out / "max_displacement_histogram.csv").read_text().splitlines()[1:]
        assert all(r.endswith(",0,2") for r in hist)

    def test_env_seed_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CENTRA_SEED", "5")
        a = run(["compare-measures", "--sizes", "20", "--trials", "2"])[1]
        b = run(["compare-measures", "--sizes", "20", "--trials", "2", "--seed", "5"])[1]
        c = run(["compare-measures", "--sizes", "20", "--trials", "2", "--seed", "6"])[1]
        assert a == b != c

    def test_sweep(self, tmp_path):
        out = tmp_path / "sweep"
        code, _ = run(["sweep", "--graph", str(DATA / "twin_hub.csv"), "--deltas", "0,0.035", "--trials", "5",
                       "--out", str(out), "--seed", "1"])
        assert code == 0
        exceed = (out / "exceedance.csv").read_text().splitlines()
        assert exceed[0] == "delta,measure,threshold,probability"
        assert len(exceed) == 1 + 2 * 5 * 2
        assert all(r.endswith(",0.0") for r in exceed[1:] if r.startswith("0.0,"))
        assert (out / "histogram.csv").exists() and (out / "summary.csv").exists()

    def test_sweep_directed_graph_skips_symmetric_measures(self, tmp_path):
        g = write(tmp_path, "src,dst,weight\na,b,1\nb,c,1\nc,a,1\n")
        code, _ = run(["sweep", "--graph", str(g), "--deltas", "0.01", "--trials", "2", "--out", str(tmp_path / "o")])
        assert code == 0
        summary = (tmp_path / "o" / "summary.csv").read_text()
        assert "betweenness" in summary and "eigenvector" not in summary

    def test_compare_measures_table(self):
        code, out = run(["compare-measures", "--sizes", "20", "--trials", "2", "--measures", "degree,betweenness"])
        assert code == 0
        rows = out.splitlines()
        assert rows[0] == "size,measure,degree,betweenness"
        assert rows[1].startswith("20,degree,0.0,")

    def test_verify_bounds_passes(self):
        code, out = run(["verify-bounds", "--sizes", "10,20", "--trials", "2", "--jobs", "1"])
        assert code == 0
        assert out.splitlines()[0] == "measure,pairs,worst_ratio,worst_ratio_over_bound,violations"
        assert all(r.endswith(",0") for r in out.splitlines()[1:])
