from __future__ import annotations

import json
import subprocess
import sys

import pytest

from modcount.cli import main
from modcount.fileio import parse_graph

TRI = "graph 3 3\nedge 1 2\nedge 2 3\nedge 1 3\nq 3\norder 1 2 3\n"
C4 = "graph 4 4\nedge 1 2\nedge 2 3\nedge 3 4\nedge 1 4\nq 3\norder 1 2 3 4\n"
EDGE_LISTS = "graph 2 1\nedge 1 2\nq 3\nlist 1 1 2\nlist 2 2\norder 1 2\n"
NEQ = "csp 2 3 1\ncon 2 1 2 6\n1 2\n1 3\n2 1\n2 3\n3 1\n3 2\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"tri.g": TRI, "c4.g": C4, "edge.g": EDGE_LISTS, "neq.csp": NEQ,
                       "noorder.g": "graph 2 1\nedge 1 2\nq 3\n",
                       "bad.g": "graph 2 1\nedge 1 5\n",
                       "match.b": "bipartite 2 2 2\nedge 1 1\nedge 2 2\n"}.items():
        (tmp_path / name).write_text(text)
        paths[name] = str(tmp_path / name)
    return paths


def run(capsys, *argv):
    code = main(["--no-timing", *argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 else None), err


class TestColor:
    def test_rank_residue(self, capsys, files):
        code, rep, _ = run(capsys, "color", "--graph", files["tri.g"], "--q", "3", "--mod", "2", "--algo", "rank")
        assert code == 0 and rep["residue"] == 0 and rep["modulus"] == 2
        assert rep["algorithm"] == "rank" and "exact" not in rep
        assert rep["instance"] == {"n": 3, "m": 3, "width": 2}

    def test_exact(self, capsys, files):
        code, rep, _ = run(capsys, "color", "--graph", files["c4.g"], "--exact", "--crosscheck")
        assert code == 0 and rep["exact"] == 18 and "residue" not in rep

    def test_lists(self, capsys, files):
        code, rep, _ = run(capsys, "color", "--graph", files["edge.g"], "--algo", "brute", "--exact")
        assert rep["exact"] == 1

    def test_rank_inapplicable(self, capsys, files):
        code, _, err = run(capsys, "color", "--graph", files["tri.g"], "--mod", "3", "--algo", "rank")
        assert code == 1
        assert "p=3 does not divide q-1=2" in err

    def test_missing_order_warns(self, capsys, caplog, files):
        code, rep, _ = run(capsys, "color", "--graph", files["noorder.g"], "--exact")
        assert code == 0 and rep["exact"] == 6
        assert "no order line" in caplog.text

    def test_parse_error(self, capsys, files):
        code, _, err = run(capsys, "color", "--graph", files["bad.g"], "--q", "3")
        assert code == 2 and "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "color", "--graph", str(tmp_path / "none.g"), "--q", "3")
        assert code == 2

    def test_composite_modulus(self, capsys, files):
        code, _, _ = run(capsys, "color", "--graph", files["tri.g"], "--mod", "4")
        assert code == 1


class TestOtherCommands:
    def test_cse(self, capsys, files):
        code, rep, _ = run(capsys, "cse", "--graph", files["tri.g"], "--mod", "3", "--crosscheck")
        assert code == 0 and rep["residue"] == 1

    def test_cse_exact(self, capsys, files):
        code, rep, _ = run(capsys, "cse", "--graph", files["c4.g"], "--algo", "brute")
        assert rep["exact"] == 5

    def test_rank_matching(self, capsys):
        code, rep, _ = run(capsys, "rank", "--q", "3", "--mod", "2", "--matching", "2")
        assert code == 0 and rep["exact"] == 4

    def test_rank_bipartite(self, capsys, files):
        code, rep, _ = run(capsys, "rank", "--q", "3", "--mod", "3", "--bipartite", files["match.b"])
        assert rep["exact"] == 9

    def test_tutte(self, capsys, files):
        code, rep, _ = run(capsys, "tutte", "--graph", files["tri.g"], "--x", "1/2", "--y", "2")
        # x^2 + x + y at (1/2, 2)
        assert rep["exact"] == "11/4"

    def test_stretch(self, capsys, files, tmp_path):
        out = tmp_path / "c6.g"
        code, rep, _ = run(capsys, "stretch", "--graph", files["tri.g"], "--k", "2", "--out", str(out))
        assert code == 0 and rep["equal"] is True and rep["exact"] == 7
        assert parse_graph(out.read_text()).graph.m == 6

    def test_gadget(self, capsys, tmp_path):
        out = tmp_path / "g.g"
        code, rep, _ = run(capsys, "gadget", "--q", "3", "--k", "1", "--f", "2,1,1", "--verify", "--out", str(out))
        assert code == 0 and rep["exact"] == 4
        assert "# boundary" in out.read_text()

    def test_gadget_zero_value(self, capsys):
        code, _, err = run(capsys, "gadget", "--q", "3", "--k", "1", "--f", "0,1,1")
        assert code == 1 and "encode forbidden" in err

    def test_reduce(self, capsys, files, tmp_path):
        out = tmp_path / "red.g"
        code, rep, _ = run(capsys, "reduce", "--csp", files["neq.csp"], "--mod", "3", "--crosscheck", "--out", str(out))
        assert code == 0 and rep["residue"] == 0
        assert parse_graph(out.read_text()).graph.n == rep["instance"]["n"]

    def test_reduce_bad_modulus(self, capsys, files):
        code, _, err = run(capsys, "reduce", "--csp", files["neq.csp"], "--mod", "2")
        assert code == 1 and "divides" in err

    def test_distinct(self, capsys, files):
        code, rep, _ = run(capsys, "distinct", "--graph", files["edge.g"], "--crosscheck")
        assert code == 0 and rep["exact"] == 1

    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 2


def test_output_is_byte_stable(files):
    cmd = [sys.executable, "-m", "modcount", "--no-timing", "color", "--graph", files["c4.g"], "--exact"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert first == second
    assert "elapsed_ms" not in first


def test_timing_present_by_default(capsys, files):
    assert main(["color", "--graph", files["c4.g"], "--exact"]) == 0
    assert "elapsed_ms" in json.loads(capsys.readouterr().out)
