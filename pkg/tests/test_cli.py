import io
from pathlib import Path

import pytest

from dllite.cli import run
from dllite.fixtures import I_TEXT, J_TEXT


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path: Path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p

    return write


def test_answer(files):
    code, out, _ = call("answer", files("kb.dl", "A subClassOf B\nA(c)\n"), files("q.dlq", "q(x) :- B(x)\n"))
    assert code == 0 and out == "c\n"


def test_answer_tuple_and_porcelain(files):
    kb, q = files("kb.dl", "A subClassOf B\nA(c)\nC(d)\n"), files("q.dlq", "q(x) :- B(x)\n")
    assert call("answer", kb, q, "--tuple", "d")[0] == 1
    code, out, _ = call("answer", kb, q, "--tuple", "c", "--porcelain")
    assert code == 0 and out == "inconsistent\tfalse\nholds\ttrue\n"


def test_answer_inconsistent(files):
    kb = files("kb.dl", "A subClassOf not B\nA(c)\nB(c)\n")
    code, out, _ = call("answer", kb, files("q.dlq", "q(x) :- C(x)\n"))
    assert code == 0 and out.splitlines() == ["INCONSISTENT", "c"]
    assert call("consistent", kb)[0] == 1


def test_rewrite_trace(files):
    code, out, _ = call("rewrite", files("kb.dl", "A subClassOf B\n"), files("q.dlq", "q(x) :- B(x)\n"), "--trace")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("# ") and "q(x) :- A(x)" in lines


def test_chase(files, tmp_path):
    kb = files("kb.dl", "A subClassOf exists P\nA(c)\n")
    code, out, _ = call("chase", kb, "--depth", 1)
    assert code == 0 and "_n1" in out
    target = tmp_path / "out.int"
    assert call("chase", kb, "--depth", 1, "-o", target)[0] == 0
    assert target.read_text() == out


def test_simulate_and_closure(files):
    i, j = files("i.int", I_TEXT), files("j.int", J_TEXT)
    code, out, _ = call("simulate", i, j)
    assert code == 0 and "<{d}, d'>" in out and "<{e1, e2}, e'>" in out
    rel = files("rel.txt", out)
    code, out, _ = call("closure", "--formula", "∀y P(x,y)->A(y)", i, j)
    assert code == 1 and out.startswith("NOT CLOSED\ncounterexample:")
    code, out, _ = call("closure", "--formula", "forall y . P(x, y) -> A(y)", "--relation", rel, i, j)
    assert code == 1 and "NOT CLOSED" in out
    assert call("closure", "--concept", "exists P . A", i, j)[0] == 0


def test_hom_round_trip(files, tmp_path):
    g1, g2 = files("g1.graph", "1 2\n2 1\n"), files("g2.graph", "1 2\n2 3\n3 4\n4 1\n")
    kb, q = tmp_path / "h.dl", tmp_path / "h.dlq"
    assert call("encode-hom", g1, g2, "--kb", kb, "--query", q)[0] == 0
    assert call("answer", kb, q) == call("check-hom", g1, g2) == (0, "true\n", "")
    g3 = files("g3.graph", "1 2\n2 3\n3 1\n")
    assert call("check-hom", g1, g3)[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["answer"],
        ["nonsense"],
        ["chase", "missing.dl", "--depth", "1"],
        ["chase", "{kb}", "--depth", "-2"],
        ["chase", "{kb}", "--depth", "two"],
        ["answer", "{kb}", "{bad}"],
        ["closure", "{i}", "{i}"],
        ["simulate", "{i}", "{i}", "--kind", "sideways"],
        ["simulate", "{i}", "{i}", "--cap", "1"],
        ["answer", "{kb}", "{q}", "--tuple", "a,,b"],
    ],
)
def test_errors_exit_2(files, argv):
    names = {
        "kb": files("kb.dl", "A(c)\n"),
        "bad": files("bad.dlq", "q(x) :- \n"),
        "q": files("q.dlq", "q(x) :- A(x)\n"),
        "i": files("i.int", I_TEXT),
    }
    code, out, err = call(*[a.format(**names) for a in argv])
    assert code == 2
    assert err.startswith("dllite:") and err.count("\n") == 1


def test_selftest_deterministic():
    first = call("selftest", "--seed", 5, "--instances", 20)
    second = call("selftest", "--seed", 5, "--instances", 20)
    assert first == second
    code, out, _ = first
    assert code == 0 and out.startswith("seed 5\n") and "FAIL" not in out
