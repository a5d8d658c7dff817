from pathlib import Path

import pytest

from pralg.cli import main
from pralg.schemes import maximum
from pralg.surface import parse, print_term
from pralg.terms import const

GOLDEN = Path(__file__).parent / "golden"
INTERCHANGE = (
    "comp(prod(s,n),prod(n,s))",
    "prod(comp(s,n),comp(n,s))",
)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_term_commands(capsys):
    assert run(capsys, "eval", "--term", "comp(n,s)", "--input", "7") == (0, "1\n")
    assert run(capsys, "eval", "--term", "rec(id[1],comp(pi[2,2],s))", "--input", "3,4") == (
        0,
        "7\n",
    )
    assert run(capsys, "check", "--term", "rec(id[1],comp(pi[2,2],s))") == (0, "2 -> 1\n")
    assert run(capsys, "print", "--term", "comp( n , s )") == (0, "comp(n,s)\n")
    assert run(capsys, "json", "--term", "s") == (0, '{"op":"s"}\n')
    assert run(capsys, "rdepth", "--term", "rec(id[1],comp(pi[2,2],s))", "--grz") == (
        0,
        "1\nE^2\n",
    )


def test_dot(capsys):
    assert run(capsys, "dot", "--term", "comp(n,s)") == (0, (GOLDEN / "one.dot").read_text())


def test_file_input(capsys, tmp_path):
    path = tmp_path / "term.json"
    path.write_text('{"op":"comp","l":{"op":"n"},"r":{"op":"s"}}')
    assert run(capsys, "print", "--file", str(path)) == (0, "comp(n,s)\n")
    path.write_text("s\n")
    assert run(capsys, "check", "--file", str(path)) == (0, "1 -> 1\n")


def test_bad_input(capsys):
    code, out = run(capsys, "check", "--term", "comp(n")
    assert (code, out) == (1, "")
    assert run(capsys, "eval", "--term", "s", "--input", "1,2")[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["eval"],
        ["frobnicate"],
        ["eval", "--term", "s", "--input", "a"],
        ["eval", "--term", "s", "--input", "-1"],
        ["eval", "--term", "s", "--input", "1", "--fuel", "0"],
        ["check", "--file", "/nonexistent/term.txt"],
        ["rewrite"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 64
    assert "term :=" in capsys.readouterr().err


def test_deeply_nested_file(capsys, tmp_path):
    path = tmp_path / "deep.txt"
    path.write_text(print_term(const(1200)))
    assert run(capsys, "eval", "--file", str(path)) == (0, "1200\n")
    assert run(capsys, "rdepth", "--file", str(path)) == (0, "0\n")
    assert run(capsys, "check", "--file", str(path)) == (0, "0 -> 1\n")


def test_recursion_limit_is_a_domain_error(capsys, monkeypatch):
    def too_deep(t):
        raise RecursionError("maximum recursion depth exceeded")

    monkeypatch.setattr("pralg.cli.simplify", too_deep)
    assert main(["simplify", "--term", "s"]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "nested too deeply" in captured.err


def test_prune_and_simplify(capsys):
    redex = "bcomp(rec(s,comp(pi[2,2],s)),comp(mpi[1;],z))"
    assert run(capsys, "prune", "--term", redex) == (0, "s\n")
    assert run(capsys, "simplify", "--term", "comp(comp(id[1],s),id[1])") == (0, "s\n")
    assert run(capsys, "min-rdepth", "--term", redex) == (0, "0\ns\n")


def test_rewrite(capsys):
    code, out = run(capsys, "rewrite", "--list")
    assert code == 0
    assert "II.9" in out

    code, out = run(capsys, "rewrite", "--term", "comp(comp(n,s),s)", "--groups", "II")
    assert code == 0
    assert out.splitlines()[0] == "II.1\tfwd\t[]\t0\tcomp(n,comp(s,s))"


def test_equiv_and_replay(capsys, tmp_path):
    code, out = run(capsys, "equiv", "--left", "comp(id[1],s)", "--right", "s")
    assert (code, out) == (0, '[{"pos":[],"rule":"II.2","dir":"fwd"}]\n')

    proof = tmp_path / "proof.json"
    proof.write_text(out)
    assert run(capsys, "replay", "--term", "comp(id[1],s)", "--proof", str(proof)) == (0, "s\n")
    assert run(capsys, "replay", "--term", "n", "--proof", str(proof))[0] == 1


def test_equiv_refuted(capsys):
    code, out = run(capsys, "equiv", "--left", "s", "--right", "n")
    assert code == 2
    assert out.startswith("refuted at (0)")


def test_equiv_unknown(capsys, tmp_path):
    left = tmp_path / "left.txt"
    left.write_text(INTERCHANGE[0])
    argv = ["equiv", "--left", str(left), "--right", INTERCHANGE[1]]
    code, out = run(capsys, *argv, "--budget", "5", "--groups", "II,Defn")
    assert code == 3
    assert out.startswith("unknown after ")


def test_exteq(capsys):
    code, out = run(capsys, "exteq", "--left", "comp(id[1],s)", "--right", "s")
    assert code == 0
    assert out.startswith("equal on ")
    assert run(capsys, "exteq", "--left", "s", "--right", "n")[0] == 2


def test_schemes(capsys):
    code, out = run(capsys, "scheme", "--name", "max", "--n", "2")
    assert code == 0
    assert parse(out) == maximum(2)
    assert run(capsys, "scheme", "--name", "max", "--n", "0")[0] == 1
    assert run(capsys, "profile", "--name", "id", "--max-n", "3") == (
        0,
        "n,rdepth\n1,0\n2,0\n3,0\n",
    )


def test_rdepth_invariance(capsys):
    code, out = run(capsys, "theorem2", "--trials", "10", "--max-depth", "3")
    assert code == 0
    assert "group II keeps Rdepth" in out


def test_verbose_flag(capsys):
    assert run(capsys, "--verbose", "check", "--term", "s") == (0, "1 -> 1\n")
