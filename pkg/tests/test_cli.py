import json
import math

import pytest

from treebound.cli import main
from treebound.graphs import gen_cycle, gen_disjoint_cliques, serialize_graph


@pytest.fixture()
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text(serialize_graph(gen_disjoint_cliques(1, 4)))
    return str(path)


@pytest.fixture()
def c5_file(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text(serialize_graph(gen_cycle(5)))
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, json.loads(captured.out)


class TestCount:
    def test_count_k4_p2(self, capsys, k4_file):
        code, envelope = run_json(capsys, ["count", "--graph", k4_file, "--tree", "path:2"])
        assert code == 0
        assert envelope["result"]["count"] == "24"
        assert envelope["schemaVersion"] == "1"
        assert envelope["command"][0] == "count"
        assert len(envelope["inputs"]["graph"]["sha256"]) == 64

    def test_tree_file_input(self, capsys, k4_file, tmp_path):
        tree_file = tmp_path / "p2.txt"
        tree_file.write_text("3 2\n1 2\n2 3\n")
        code, envelope = run_json(
            capsys, ["count", "--graph", k4_file, "--tree", str(tree_file)]
        )
        assert code == 0
        assert envelope["result"]["count"] == "24"

    def test_star_preset(self, capsys, k4_file):
        code, envelope = run_json(capsys, ["count", "--graph", k4_file, "--tree", "star:3"])
        assert code == 0
        assert envelope["result"]["count"] == "24"

    def test_payload_deterministic(self, capsys, k4_file):
        _, first = run_json(capsys, ["count", "--graph", k4_file, "--tree", "path:3"])
        _, second = run_json(capsys, ["count", "--graph", k4_file, "--tree", "path:3"])
        assert first["result"] == second["result"]
        assert first["inputs"] == second["inputs"]


class TestHomAndWalks:
    def test_hom_dp(self, capsys, k4_file):
        code, envelope = run_json(capsys, ["hom", "--graph", k4_file, "--tree", "path:2"])
        assert code == 0
        assert envelope["result"] == {"count": "36", "method": "dp"}

    def test_hom_brute(self, capsys, k4_file):
        code, envelope = run_json(
            capsys, ["hom", "--graph", k4_file, "--tree", "path:2", "--method", "brute"]
        )
        assert code == 0
        assert envelope["result"] == {"count": "36", "method": "brute"}

    def test_walks(self, capsys, k4_file):
        code, envelope = run_json(capsys, ["walks", "--graph", k4_file, "--length", "3"])
        assert code == 0
        assert envelope["result"]["count"] == "108"


class TestBounds:
    def test_k4_t2(self, capsys, k4_file):
        code, envelope = run_json(capsys, ["bounds", "--graph", k4_file, "--t", "2"])
        assert code == 0
        bounds = envelope["result"]["bounds"]
        assert bounds["copies_local"]["log"] == pytest.approx(math.log(24), abs=1e-9)
        assert bounds["copies_p3"]["applicable"] is False
        assert envelope["result"]["d"] == "3/1"

    def test_with_k(self, capsys, k4_file):
        code, envelope = run_json(capsys, ["bounds", "--graph", k4_file, "--t", "2", "--k", "2"])
        assert code == 0
        assert envelope["result"]["bounds"]["copies_induced"]["applicable"] is True

    def test_csv_format(self, capsys, k4_file):
        code = main(["bounds", "--graph", k4_file, "--t", "2", "--format", "csv"])
        captured = capsys.readouterr()
        assert code == 0
        lines = captured.out.splitlines()
        assert lines[0] == "bound,applicable,log,reason"
        assert any(line.startswith("copies_local,true") for line in lines)
        meta = json.loads(captured.err)
        assert meta["schemaVersion"] == "1"
        assert "result" not in meta


class TestGTable:
    def test_exact_majorant(self, capsys, k4_file):
        code, envelope = run_json(
            capsys, ["gtable", "--graph", k4_file, "--tree", "path:3", "--measure", "p"]
        )
        assert code == 0
        result = envelope["result"]
        assert result["mode"] == "exact"
        assert result["table"]["rows"][0] == ["1/2", "1/2", "1/2", "1/2"]
        assert result["minSlack"] == "1/4"

    def test_exact_hom_profile(self, capsys, k4_file):
        code, envelope = run_json(
            capsys, ["gtable", "--graph", k4_file, "--tree", "path:2", "--measure", "Pprime"]
        )
        assert code == 0
        assert envelope["result"]["equalsDegreeProfile"] is True

    def test_monte_carlo(self, capsys, k4_file):
        code, envelope = run_json(
            capsys,
            ["gtable", "--graph", k4_file, "--tree", "path:3", "--measure", "P",
             "--samples", "2000", "--seed", "3"],
        )
        assert code == 0
        result = envelope["result"]
        assert result["mode"] == "monte-carlo"
        assert result["samples"] == 2000

    def test_monte_carlo_rejected_for_other_measures(self, capsys, k4_file):
        code = main(
            ["gtable", "--graph", k4_file, "--tree", "path:3", "--measure", "p",
             "--samples", "10"]
        )
        assert code == 2


class TestSample:
    def test_deterministic_and_complete(self, capsys, k4_file):
        argv = ["sample", "--graph", k4_file, "--tree", "path:3", "--samples", "500", "--seed", "4"]
        _, first = run_json(capsys, argv)
        _, second = run_json(capsys, argv)
        assert first["result"] == second["result"]
        assert sum(first["result"]["frequencies"].values()) == 500
        for key in first["result"]["frequencies"]:
            assert len(key.split()) == 4


class TestVerify:
    def test_k4_p3_passes(self, capsys, k4_file):
        code, envelope = run_json(capsys, ["verify", "--graph", k4_file, "--tree", "path:3"])
        assert code == 0
        assert envelope["result"]["allPassed"] is True
        assert envelope["result"]["skipped"] == 0
        assert len(envelope["result"]["checks"]) == 8

    def test_degree_gated_checks_skip_but_exit_zero(self, capsys, c5_file):
        code, envelope = run_json(capsys, ["verify", "--graph", c5_file, "--tree", "path:3"])
        assert code == 0
        assert envelope["result"]["skipped"] == 6
        assert envelope["result"]["allPassed"] is True


class TestConjecture:
    def test_cliques(self, capsys):
        code, envelope = run_json(
            capsys,
            ["conjecture", "--family", "cliques", "--n", "15", "--t", "3",
             "--trials", "2", "--seed", "1", "--min-degree", "4"],
        )
        assert code == 0
        result = envelope["result"]
        assert result["summary"]["holds"] == 2
        assert all(row["verdict"] == "holds" for row in result["rows"])

    def test_random(self, capsys):
        code, envelope = run_json(
            capsys,
            ["conjecture", "--family", "random", "--n", "8", "--t", "2",
             "--trials", "5", "--seed", "7", "--min-degree", "3"],
        )
        assert code == 0
        assert envelope["result"]["summary"]["total"] == 5


class TestGen:
    def test_gen_cliques_round_trips(self, capsys, tmp_path):
        out = tmp_path / "cl.txt"
        code, envelope = run_json(capsys, ["gen", "cliques", "3", "5", "-o", str(out)])
        assert code == 0
        assert envelope["result"]["n"] == 15
        assert envelope["result"]["m"] == 30
        text = out.read_text()
        assert text.startswith("15 30\n")

    def test_gen_without_output_embeds_content(self, capsys):
        code, envelope = run_json(capsys, ["gen", "cycle", "5"])
        assert code == 0
        assert envelope["result"]["content"].startswith("5 5\n")

    def test_gen_random(self, capsys, tmp_path):
        out = tmp_path / "r.txt"
        code, envelope = run_json(
            capsys, ["gen", "random", "10", "0.5", "3", "7", "-o", str(out)]
        )
        assert code == 0
        assert envelope["result"]["minDegree"] >= 3


class TestExitCodes:
    def test_missing_file_is_format_error(self, capsys):
        assert main(["count", "--graph", "no-such.txt", "--tree", "path:2"]) == 3

    def test_malformed_graph_is_format_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("2 1\n0 0\n")
        assert main(["count", "--graph", str(bad), "--tree", "path:2"]) == 3
        assert "self-loop" in capsys.readouterr().err

    def test_bad_usage(self, capsys):
        assert main(["count", "--graph"]) == 2
        assert main(["no-such-command"]) == 2

    def test_bad_preset_is_usage_error(self, capsys, k4_file):
        assert main(["count", "--graph", k4_file, "--tree", "path:x"]) == 2

    def test_work_cap_env(self, capsys, monkeypatch, k4_file):
        monkeypatch.setenv("TREEBOUND_WORK_CAP", "10")
        assert main(["count", "--graph", k4_file, "--tree", "path:3"]) == 4
        assert "work cap" in capsys.readouterr().err

    def test_invalid_work_cap_env(self, capsys, monkeypatch, k4_file):
        monkeypatch.setenv("TREEBOUND_WORK_CAP", "lots")
        assert main(["count", "--graph", k4_file, "--tree", "path:3"]) == 2

    def test_retry_cap_maps_to_work_cap_exit(self, capsys, tmp_path):
        out = tmp_path / "r.txt"
        code = main(
            ["gen", "random", "4", "0.05", "3", "1", "--max-tries", "5", "-o", str(out)]
        )
        assert code == 4
