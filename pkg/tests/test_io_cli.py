import json

import numpy as np
import pytest

import hyperwalk as hw
from hyperwalk import io as hio
from hyperwalk.cli import main

WORKED = "a b c\nc d\nd e\n"


@pytest.fixture
def worked_file(tmp_path):
    path = tmp_path / "worked.hg"
    path.write_text(WORKED)
    return path


class TestHyperedgeListFormat:
    def test_parse_basic(self, worked_file):
        h, names = hio.load_hyperedge_list(worked_file)
        assert names == ["a", "b", "c", "d", "e"]
        np.testing.assert_allclose(h.hyperedge_degree, [3.0, 2.0, 2.0])

    def test_weights_comments_blank_lines(self, tmp_path):
        path = tmp_path / "g.hg"
        path.write_text(
            "# full-line comment\n"
            "x:2.5 y   # trailing comment\n"
            "\n"
            "y:0.5 z\n")
        h, names = hio.load_hyperedge_list(path)
        assert names == ["x", "y", "z"]
        nodes, weights = h.hyperedge_incidence(0)
        assert weights.tolist() == [2.5, 1.0]
        assert h.node_degree[1] == pytest.approx(1.5)

    def test_name_with_colon_but_no_weight(self, tmp_path):
        path = tmp_path / "g.hg"
        path.write_text("a:b c\n")
        _h, names = hio.load_hyperedge_list(path)
        assert names == ["a:b", "c"]

    def test_round_trip(self, tmp_path):
        path = tmp_path / "g.hg"
        path.write_text("n1:2 n2 n3:0.5\nn3 n4\nn2:1.25 n4\n")
        h1, names1 = hio.load_hyperedge_list(path)
        out = tmp_path / "g2.hg"
        hio.save_hyperedge_list(h1, names1, out)
        h2, names2 = hio.load_hyperedge_list(out)

        def canonical(h, names):
            return sorted(
                sorted((names[n], w) for n, w in edge) for edge in h.hyperedges())

        assert canonical(h1, names1) == canonical(h2, names2)

    def test_labels_file(self, tmp_path, worked_file):
        lab = tmp_path / "labels.tsv"
        lab.write_text("a\tred\nb\tblue\nmissing\tgreen\n")
        _h, names = hio.load_hyperedge_list(worked_file)
        labels = hio.load_labels(lab, names)
        assert labels == {0: "red", 1: "blue"}

    def test_bad_label_line(self, tmp_path, worked_file):
        lab = tmp_path / "labels.tsv"
        lab.write_text("a red-no-tab\n")
        _h, names = hio.load_hyperedge_list(worked_file)
        with pytest.raises(hw.InvalidParams):
            hio.load_labels(lab, names)


def read_times(path):
    out = {}
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            continue
        name, value = line.split("\t")
        out[name] = float(value)
    return out


class TestDistancesCommand:
    def test_worked_example_frustrated(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["distances", str(worked_file), "--target", "d",
                     "--scenario", "frustrated", "--output-dir", str(out)])
        assert code == 0
        table = read_times(out / "distances_frustrated_d.tsv")
        assert table == pytest.approx({"a": 35.0, "b": 35.0, "c": 30.0, "e": 2.0})

    def test_all_targets_writes_one_file_each(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["distances", str(worked_file), "--target", "all",
                     "--scenario", "simple", "--output-dir", str(out)])
        assert code == 0
        assert len(list(out.glob("distances_simple_*.tsv"))) == 5

    def test_scenario_both(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["distances", str(worked_file), "--target", "d",
                     "--scenario", "both", "--output-dir", str(out)])
        assert code == 0
        assert (out / "distances_simple_d.tsv").exists()
        assert (out / "distances_frustrated_d.tsv").exists()

    def test_nonexistent_input(self, tmp_path):
        assert main(["distances", str(tmp_path / "nope.hg"), "--target", "x"]) == 1

    def test_unknown_target(self, worked_file, tmp_path):
        assert main(["distances", str(worked_file), "--target", "zzz",
                     "--output-dir", str(tmp_path)]) == 1

    def test_non_convergence_exit_code(self, worked_file, tmp_path):
        code = main(["distances", str(worked_file), "--target", "d",
                     "--max-iter", "1", "--output-dir", str(tmp_path)])
        assert code == 2

    def test_disconnected_without_flag(self, tmp_path):
        path = tmp_path / "two.hg"
        path.write_text("a b\nc d\n")
        assert main(["distances", str(path), "--target", "a",
                     "--output-dir", str(tmp_path)]) == 3

    def test_per_component(self, tmp_path):
        path = tmp_path / "two.hg"
        path.write_text("a b\nc d e\nd e\n")
        out = tmp_path / "out"
        code = main(["distances", str(path), "--target", "a", "d",
                     "--per-component", "--scenario", "simple",
                     "--output-dir", str(out)])
        assert code == 0
        assert read_times(out / "distances_simple_a.tsv") == {"b": 1.0}
        assert set(read_times(out / "distances_simple_d.tsv")) == {"c", "e"}

    def test_kernel_dump(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["distances", str(worked_file), "--target", "d",
                     "--dump-kernel", "--output-dir", str(out)])
        assert code == 0
        dump = (out / "kernel_frustrated.txt").read_text().splitlines()
        assert dump[0].startswith("%")
        n, m, nnz = dump[1].split()
        assert (n, m) == ("5", "5")
        assert len(dump) == 2 + int(nnz)

    def test_config_file_precedence(self, worked_file, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({"scenario": "simple", "top_n": 2}))
        out = tmp_path / "out"
        code = main(["distances", str(worked_file), "--target", "d",
                     "--config", str(config), "--output-dir", str(out)])
        assert code == 0
        assert (out / "distances_simple_d.tsv").exists()
        # explicit flag beats the config file
        code = main(["distances", str(worked_file), "--target", "d",
                     "--config", str(config), "--scenario", "frustrated",
                     "--output-dir", str(out)])
        assert code == 0
        assert (out / "distances_frustrated_d.tsv").exists()


class TestNeighborsCommand:
    def test_top_two(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["neighbors", str(worked_file), "--target", "d",
                     "--scenario", "frustrated", "--top-n", "2",
                     "--output-dir", str(out)])
        assert code == 0
        rows = (out / "neighbors_frustrated_d.csv").read_text().splitlines()
        assert rows[0] == "rank,node,distance"
        assert rows[1].split(",") == ["1", "e", "2"]
        rank2 = rows[2].split(",")
        assert rank2[0] == "2" and rank2[1] == "c"
        assert float(rank2[2]) == pytest.approx(30.0)

    def test_top_n_larger_than_graph(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["neighbors", str(worked_file), "--target", "d",
                     "--top-n", "100", "--output-dir", str(out)])
        assert code == 0
        rows = (out / "neighbors_frustrated_d.csv").read_text().splitlines()
        assert len(rows) == 1 + 4

    def test_labels_column(self, worked_file, tmp_path):
        lab = tmp_path / "labels.tsv"
        lab.write_text("a\tL1\nb\tL1\nc\tL2\nd\tL2\ne\tL2\n")
        out = tmp_path / "out"
        code = main(["neighbors", str(worked_file), "--target", "d",
                     "--labels", str(lab), "--output-dir", str(out)])
        assert code == 0
        rows = (out / "neighbors_frustrated_d.csv").read_text().splitlines()
        assert rows[0] == "rank,node,distance,label"
        assert rows[1].endswith(",L2")

    def test_runs_without_labels(self, worked_file, tmp_path):
        assert main(["neighbors", str(worked_file), "--target", "d",
                     "--output-dir", str(tmp_path)]) == 0


class TestSimulateCommand:
    def test_mean_close_to_analytic(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["simulate", str(worked_file), "--source", "c",
                     "--target", "d", "--runs", "20000", "--seed", "3",
                     "--output-dir", str(out)])
        assert code == 0
        rows = (out / "simulate_frustrated.csv").read_text().splitlines()
        header, row = rows[0].split(","), rows[1].split(",")
        rec = dict(zip(header, row))
        mean, stderr = float(rec["mean"]), float(rec["stderr"])
        assert abs(mean - 30.0) <= 4 * stderr
        assert rec["censored"] == "0"

    def test_single_run_blank_stderr(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["simulate", str(worked_file), "--source", "e",
                     "--target", "d", "--runs", "1", "--output-dir", str(out)])
        assert code == 0
        row = (out / "simulate_frustrated.csv").read_text().splitlines()[1]
        assert row.split(",")[5] == ""

    def test_all_censored_exit_code(self, worked_file, tmp_path):
        code = main(["simulate", str(worked_file), "--source", "a",
                     "--target", "d", "--runs", "100", "--max-steps", "1",
                     "--output-dir", str(tmp_path)])
        assert code == 2


class TestStatsCommand:
    def test_histograms(self, worked_file, tmp_path):
        out = tmp_path / "out"
        assert main(["stats", str(worked_file), "--output-dir", str(out)]) == 0
        node = (out / "stats_node_degree.csv").read_text().splitlines()
        assert node == ["value,count", "1,3", "2,2"]
        hyper = (out / "stats_hyperedge_degree.csv").read_text().splitlines()
        assert hyper == ["value,count", "2,2", "3,1"]
        expanded = (out / "stats_expanded_edge_weight.csv").read_text().splitlines()
        assert expanded == ["value,count", "1,5"]

    def test_stats_allows_disconnected(self, tmp_path):
        path = tmp_path / "two.hg"
        path.write_text("a b\nc d\n")
        assert main(["stats", str(path), "--output-dir", str(tmp_path)]) == 0


class TestPathsCommand:
    def test_corpus_shape(self, worked_file, tmp_path):
        out = tmp_path / "out"
        code = main(["paths", str(worked_file), "--steps", "3200",
                     "--scenario", "simple", "--seed", "5",
                     "--output-dir", str(out)])
        assert code == 0
        lines = (out / "paths_simple.txt").read_text().splitlines()
        assert len(lines) == 5
        assert all(len(line.split()) == 3201 for line in lines)

    def test_byte_identical_across_runs(self, worked_file, tmp_path):
        outs = []
        for sub in ("o1", "o2"):
            out = tmp_path / sub
            main(["paths", str(worked_file), "--steps", "50", "--seed", "9",
                  "--output-dir", str(out)])
            outs.append((out / "paths_frustrated.txt").read_bytes())
        assert outs[0] == outs[1]

    def test_zero_steps_rejected(self, worked_file, tmp_path):
        assert main(["paths", str(worked_file), "--steps", "0",
                     "--output-dir", str(tmp_path)]) == 1
