"""End-to-end runs of the command tree against frozen text output."""

import pytest

from ordlib.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out.splitlines()


def test_braid_sign(capsys):
    rc, out = run(capsys, "braid", "sign", "--strands", "3", "--word", "1 2 -1")
    assert (rc, out) == (0, ["+"])
    rc, out = run(capsys, "braid", "sign", "--strands", "3", "--word", "-1 2",
                  "--ordering", "flip")
    assert (rc, out) == (0, ["+"])


def test_braid_compare_and_reduce(capsys):
    rc, out = run(capsys, "braid", "compare", "--strands", "3",
                  "--left", "2", "--right", "1")
    assert (rc, out) == (0, ["<"])
    rc, out = run(capsys, "braid", "reduce", "--strands", "4",
                  "--word", "1 3 2 3 -2 -3 -2 -1")
    assert (rc, out) == (0, ["e"])
    rc, out = run(capsys, "braid", "reduce", "--strands", "3",
                  "--word", "1 2 -1")
    assert (rc, out) == (0, ["-2 1 2"])


def test_braid_least(capsys):
    rc, out = run(capsys, "braid", "least", "--strands", "4")
    assert (rc, out) == (0, ["s3"])
    rc, out = run(capsys, "braid", "least", "--strands", "3", "--radius", "4",
                  "--ordering", "1")
    assert (rc, out) == (0, ["s1"])


def test_klein_commands(capsys):
    rc, out = run(capsys, "klein", "orderings")
    assert rc == 0
    assert out[0] == "klein[++] x:+ x^-1:- y:+ y^-1:-"
    assert len(out) == 4
    rc, out = run(capsys, "klein", "kernel", "--m-bound", "2")
    assert (rc, out) == (0, [f"klein-aut[1,1,{m}]" for m in range(-2, 3)])
    rc, out = run(capsys, "klein", "witness", "--eps", "-1", "--delta", "1")
    assert (rc, out) == (0, ["klein[++]@x"])
    rc, out = run(capsys, "klein", "witness", "--eps", "1", "--delta", "-1",
                  "--m", "2")
    assert (rc, out) == (0, ["klein[++]@y"])
    rc, out = run(capsys, "klein", "witness", "--eps", "1", "--delta", "1",
                  "--m", "-2")
    assert (rc, out) == (0, ["kernel"])


def test_abelian_sign(capsys):
    rc, out = run(capsys, "abelian", "sign", "--flag", "(1,0);(0,1)",
                  "--vector", "(0,-3)")
    assert (rc, out) == (0, ["-"])
    rc, out = run(capsys, "abelian", "sign", "--flag", "(-√2,1)",
                  "--vector", "(1,1)")
    assert (rc, out) == (0, ["-"])
    rc, out = run(capsys, "abelian", "sign", "--flag", "(sqrt2,1)",
                  "--vector", "(1,-1)")
    assert (rc, out) == (0, ["+"])


def test_abelian_eigen_star_vlo(capsys):
    rc, out = run(capsys, "abelian", "eigen", "--matrix", "[[1,2],[1,1]]")
    assert (rc, out) == (0, ["±(√2,1), eigenvalue 1+√2"])
    rc, out = run(capsys, "abelian", "eigen", "--matrix", "[[2,0],[0,2]]")
    assert (rc, out) == (0, ["all"])
    rc, out = run(capsys, "abelian", "eigen", "--matrix", "[[-1,0],[0,-1]]")
    assert (rc, out) == (0, ["none"])
    rc, out = run(capsys, "abelian", "star", "--matrix", "[[3,0],[0,2]]")
    assert (rc, out) == (0, ["none, witness (1,1)"])
    rc, out = run(capsys, "abelian", "star", "--matrix", "[[3,0],[0,3]]")
    assert (rc, out) == (0, ["3"])
    rc, out = run(capsys, "abelian", "vlo", "--first", "(1,0);(0,1)",
                  "--second", "(2,0);(0,2)")
    assert (rc, out) == (0, ["equal"])
    rc, out = run(capsys, "abelian", "vlo", "--first", "(1,0);(0,1)",
                  "--second", "(-1,0);(0,-1)")
    assert (rc, out) == (0, ["differ, witness (1,0)"])


def test_free_commands(capsys):
    rc, out = run(capsys, "free", "sign", "--word", "x y x^-1 y^-1")
    assert (rc, out) == (0, ["+"])
    rc, out = run(capsys, "free", "sign", "--word", "x^-1 y",
                  "--ordering", "nclex-x")
    assert (rc, out) == (0, ["-"])
    rc, out = run(capsys, "free", "witness", "--probe", "inner")
    assert (rc, out) == (0, ["nclex[x]@x y^-1"])
    rc, out = run(capsys, "free", "witness", "--probe", "swap")
    assert (rc, out) == (0, ["series[deg6]@x y^-1"])


def test_ext_commands(capsys):
    rc, out = run(capsys, "ext", "build")
    assert (rc, out) == (0, ["constructed lex[k-lex[flag[(-√2,1)]]]"])
    rc, out = run(capsys, "ext", "build", "--target", "klein")
    assert rc == 1
    assert out == ["error: RefusedConstructionError: conjugation by the "
                   "Z letter moves y across the cone"]
    rc, out = run(capsys, "ext", "verify", "--radius", "3")
    assert (rc, out) == (0, ["pass"])
    rc, out = run(capsys, "ext", "least")
    assert (rc, out) == (0, ["(((0, 0), 0), 1)"])


def test_lospace_commands(capsys):
    rc, out = run(capsys, "lospace", "enum", "--group", "klein", "--radius", "6")
    assert (rc, out) == (0, ["count: 4"])
    rc, out = run(capsys, "lospace", "enum", "--group", "z", "--radius", "2",
                  "--show")
    assert rc == 0
    assert out[0] == "count: 2"
    assert out[1:6] == ["", "(1):+", "(-1):-", "(2):+", "(-2):-"]
    rc, out = run(capsys, "lospace", "extend", "--group", "klein",
                  "--radius", "6", "--radius2", "8")
    assert (rc, out) == (0, ["completions: 1"])
    rc, out = run(capsys, "lospace", "separate", "--group", "klein",
                  "--first", "pp", "--second", "mm")
    assert (rc, out) == (0, ["x"])
    rc, out = run(capsys, "lospace", "separate", "--group", "klein",
                  "--first", "++", "--second", "+-")
    assert (rc, out) == (0, ["y"])
    rc, out = run(capsys, "lospace", "separate", "--group", "klein",
                  "--first", "++", "--second", "++")
    assert (rc, out) == (0, ["none"])


def test_lospace_star(capsys):
    rc, out = run(capsys, "lospace", "star", "--group", "z2",
                  "--matrix", "[[1,1],[0,1]]")
    assert (rc, out) == (0, ["fails at (1,0)"])
    rc, out = run(capsys, "lospace", "star", "--group", "z2",
                  "--matrix", "[[2,0],[0,2]]")
    assert (rc, out) == (0, ["holds (radius 3, bound 8)"])
    rc, out = run(capsys, "lospace", "star", "--group", "f2", "--probe", "swap")
    assert (rc, out) == (0, ["fails at x"])
    rc, out = run(capsys, "lospace", "star", "--group", "klein",
                  "--aut", "1,-1,0")
    assert (rc, out) == (0, ["fails at y"])


def test_verify_single_suite(capsys):
    rc, out = run(capsys, "verify", "matrix-eigen")
    assert rc == 0
    assert out[0] == "matrix-eigen: pass"
    assert out[-1] == "result: pass"
    rc, out = run(capsys, "verify", "7")
    assert rc == 0
    assert out[0] == "matrix-eigen: pass"


@pytest.mark.parametrize("argv", [
    ("verify", "nosuch"),
    ("verify", "99"),
    ("verify", "determinism", "matrix-eigen"),
    ("abelian", "eigen", "--matrix", "[[1,2]"),
    ("braid", "sign", "--strands", "3", "--word", "x"),
    ("braid", "sign", "--strands", "3", "--word", "1 2", "--ordering", "9"),
    ("klein", "witness", "--eps", "2", "--delta", "1"),
    ("lospace", "enum", "--group", "nope", "--radius", "2"),
    ("lospace", "separate", "--group", "z2", "--first", "++", "--second", "mm"),
    ("lospace", "star", "--group", "z2", "--matrix", "[[1,0],[0,1]]",
     "--probe", "swap"),
    ("free", "sign", "--word", "q"),
])
def test_usage_errors_exit_two(capsys, argv):
    rc, out = run(capsys, *argv)
    assert rc == 2
    assert out[0].startswith("usage error: ")


def test_computational_errors_exit_one(capsys):
    rc, out = run(capsys, "braid", "sign", "--strands", "3",
                  "--word", "1 2 -1", "--budget", "0")
    assert rc == 1
    assert out[0].startswith("error: BudgetExceededError: ")
    rc, out = run(capsys, "lospace", "enum", "--group", "z2", "--radius", "50")
    assert rc == 1
    assert out[0].startswith("error: SizeLimitError: ")


def test_repeated_runs_print_identical_text(capsys):
    first = run(capsys, "klein", "orderings", "--radius", "2")
    second = run(capsys, "klein", "orderings", "--radius", "2")
    assert first == second
