import io
import json
import sys

import pytest

from conftest import naive_frustration
from frustrix.cli import main
from frustrix.errors import GraphFormatError
from frustrix.families import gadget_chain, gamma, petersen_negative
from frustrix.io import (
    format_signed_line,
    from_graph6,
    parse_signed_line,
    read_signed_lines,
    to_graph6,
)
from frustrix.sgcore import SignedGraph


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestLineFormat:
    def test_round_trip(self):
        for g in (gamma(2), petersen_negative(), gadget_chain("tg")):
            line = format_signed_line(g)
            assert parse_signed_line(line) == g
            assert format_signed_line(parse_signed_line(line)) == line

    def test_graph6_of_k4(self):
        assert format_signed_line(gamma(1)) == "C~ 0c"

    def test_bare_graph6_is_all_positive(self):
        g = parse_signed_line("C~")
        assert g.m == 6 and all(s > 0 for _, _, s in g.edges)

    def test_header_accepted(self):
        assert from_graph6(">>graph6<<C~").m == 6

    def test_parallel_edges_rejected(self):
        with pytest.raises(GraphFormatError):
            to_graph6(SignedGraph(2, [(0, 1, -1), (0, 1, 1)]))

    def test_errors_reported_per_line(self):
        rows = list(read_signed_lines(["C~ 0c", "", "# note", "??? 1", "C~ zz"]))
        assert [no for no, _ in rows] == [1, 4, 5]
        assert isinstance(rows[0][1], SignedGraph)
        assert all(isinstance(g, GraphFormatError) for _, g in rows[1:])

    def test_too_many_fields(self):
        with pytest.raises(GraphFormatError):
            parse_signed_line("C~ 0c extra")


class TestSolve:
    def test_family_round_trip(self, capsys, monkeypatch):
        for name, f in (("gamma1", 2), ("gamma3", 3), ("petersen", 3)):
            code, out, _ = run(capsys, ["family", name])
            assert code == 0
            code, res, _ = run(capsys, ["solve"], out, monkeypatch)
            assert code == 0 and res.startswith(f"F={f} ")
            assert naive_frustration(parse_signed_line(out)) == f

    def test_json_output(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["solve", "--json", "--method", "brute"], "C~ 0c\nC~ 3f\n", monkeypatch)
        rows = [json.loads(x) for x in out.splitlines()]
        assert code == 0 and [r["F"] for r in rows] == [2, 2]
        assert rows[0]["minimal"] and not rows[1]["minimal"]
        assert rows[0]["method"] == "bruteforce"

    def test_witness_is_switching_equivalent(self, capsys, monkeypatch):
        _, out, _ = run(capsys, ["solve", "--method", "bb"], "C~ 3f\n", monkeypatch)
        hexw = out.split("witness=")[1].split()[0]
        w = parse_signed_line(f"C~ {hexw}")
        assert sum(1 for e in w.edges if e[2] < 0) == 2

    def test_bad_line_exit_two(self, capsys, monkeypatch):
        code, out, err = run(capsys, ["solve"], "C~ 0c\nnot-a-graph\n", monkeypatch)
        assert code == 2 and out.startswith("F=2") and "line 2" in err

    def test_disconnected_exit_two(self, capsys, monkeypatch):
        code, _, err = run(capsys, ["solve"], "Co 0\n", monkeypatch)
        assert code == 2 and "disconnected" in err

    def test_capacity_exit_three(self, capsys, monkeypatch):
        monkeypatch.setenv("FRUSTRIX_MAX_N", "6")
        code, _, err = run(capsys, ["solve", "--method", "brute"], format_signed_line(gamma(3)) + "\n", monkeypatch)
        assert code == 3 and "line 1" in err

    def test_unknown_option_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--method", "magic"])
        assert exc.value.code == 2


class TestFamily:
    def test_chain(self, capsys):
        code, out, _ = run(capsys, ["family", "chain", "--gadgets", "tgt"])
        g = parse_signed_line(out)
        assert code == 0 and g.n == 12

    def test_chain_subdivision_choice(self, capsys):
        _, out, _ = run(capsys, ["family", "chain", "--gadgets", "gg", "--subdivided", "ad,ac"])
        assert parse_signed_line(out).n == 12

    def test_tritree(self, capsys):
        _, out, _ = run(capsys, ["family", "tritree", "--k", "1"])
        g = parse_signed_line(out)
        assert g.n == 18 and naive_frustration(g) == 7

    def test_digon_is_json(self, capsys):
        code, out, _ = run(capsys, ["family", "digon", "--k", "3"])
        doc = json.loads(out)
        assert code == 0 and doc["serializable"] is False and doc["n"] == 6
        assert len(doc["edges"]) == 9

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, ["family", "octopus"])
        assert code == 2 and "unknown family" in err

    def test_chain_needs_gadgets(self, capsys):
        assert run(capsys, ["family", "chain"])[0] == 2


class TestVerify:
    def test_main_summary(self, capsys, tmp_path):
        out = tmp_path / "r.jsonl"
        code, text, err = run(capsys, ["verify", "main", "--nmax", "6", "--out", str(out)])
        doc = json.loads(text)
        assert code == 0 and doc["ok"] and doc["violations"] == 0
        assert [e["match"] for e in doc["exceptions"]] == ["gamma1", "gamma2"]
        assert "runtime" in err and "runtime" not in text
        assert json.loads(out.read_text().splitlines()[-1]) == doc

    def test_violation_exit_one(self, capsys, monkeypatch):
        import frustrix.verify as v

        real = v._status_main
        monkeypatch.setattr(v, "_status_main",
                            lambda g, n, m, f, sig: "violation" if 3 * f > n else real(g, n, m, f, sig))
        code, text, _ = run(capsys, ["verify", "main", "--nmax", "4"])
        assert code == 1 and json.loads(text)["violations"] == 1

    def test_out_of_range(self, capsys):
        code, _, err = run(capsys, ["verify", "cubic29", "--n", "14"])
        assert code == 2 and "error" in err

    def test_girth5_exits_zero(self, capsys):
        code, text, _ = run(capsys, ["verify", "girth5", "--nmax", "10"])
        doc = json.loads(text)
        assert code == 0 and doc["extra"]["max_ratio"] == [3, 10]
        assert doc["extra"]["maximizers"] >= 1


class TestReduce:
    def test_triangle_chain(self, capsys):
        line = format_signed_line(gadget_chain("ttt"))
        code, out, _ = run(capsys, ["reduce", "--trace", line])
        steps = [x for x in out.splitlines() if x.startswith("step ")]
        assert code == 0 and len(steps) == 3
        assert all("NEG_TRIANGLE" in x for x in steps)
        assert out.splitlines()[-1].endswith("consistent")
        assert "offset=3" in out.splitlines()[-1]

    def test_stdin(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["reduce"], format_signed_line(gadget_chain("gtg")) + "\n", monkeypatch)
        assert code == 0 and "consistent" in out

    def test_gamma1_is_stuck(self, capsys):
        code, out, _ = run(capsys, ["reduce", "--trace", "C~", "0c"])
        assert code == 0 and "steps=0 offset=0 F(final)=2 F(input)=2" in out

    def test_empty_input(self, capsys, monkeypatch):
        assert run(capsys, ["reduce"], "", monkeypatch)[0] == 2


class TestRandom:
    def test_seed_determinism(self, capsys):
        a = run(capsys, ["random", "--seed", "5", "--n", "9", "--count", "4"])[1]
        b = run(capsys, ["random", "--seed", "5", "--n", "9", "--count", "4"])[1]
        c = run(capsys, ["random", "--seed", "6", "--n", "9", "--count", "4"])[1]
        assert a == b and a != c
        assert all(parse_signed_line(x).n == 9 for x in a.splitlines())

    def test_pipes_into_solve(self, capsys, monkeypatch):
        lines = run(capsys, ["random", "--seed", "1", "--n", "8", "--count", "5"])[1]
        code, out, _ = run(capsys, ["solve", "--json"], lines, monkeypatch)
        fs = [json.loads(x)["F"] for x in out.splitlines()]
        assert code == 0
        assert fs == [naive_frustration(parse_signed_line(x)) for x in lines.splitlines()]
