import pytest

from redicol.cli import main
from redicol.colouring import Dicolouring, ListAssignment
from redicol.digraph import GraphFormatError, directed_cycle
from redicol.io import (parse_colouring, parse_lists, parse_sequence, serialize_colouring,
                        serialize_lists, serialize_sequence, to_dot)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, dict(ln.split("=", 1) for ln in out.splitlines() if "=" in ln), out, err


@pytest.fixture
def c3(tmp_path):
    (tmp_path / "c3.dg").write_text("3 3\n0 1\n1 2\n2 0\n")
    (tmp_path / "a.col").write_text("0 1\n1 1\n2 2\n")
    (tmp_path / "b.col").write_text("0 2\n1 2\n2 1\n")
    return tmp_path


def test_io_roundtrips():
    a = Dicolouring((1, 3, 2), 3)
    assert parse_colouring(serialize_colouring(a), 3, 3) == a
    steps = [(0, 2), (2, 1)]
    assert parse_sequence(serialize_sequence(steps)) == steps
    L = ListAssignment(((1,), (1, 2), (2,)), 2)
    assert parse_lists(serialize_lists(L), 3, 2) == L
    assert parse_lists("0 1\n", 2, 2).lists == ((1,), (1, 2))
    with pytest.raises(GraphFormatError):
        parse_colouring("0 1\n", 2, 2)
    with pytest.raises(GraphFormatError) as e:
        parse_colouring("0 1\n1 5\n", 2, 2)
    assert e.value.line == 2
    dot = to_dot(directed_cycle(3), a)
    assert dot.startswith("digraph") and "fillcolor" in dot and "0 -> 1" in dot


def test_generate_and_analyze(tmp_path, capsys):
    code, kv, _, _ = run(capsys, "generate", "fig1", "--out", tmp_path / "fig1", "--dot")
    assert code == 0 and kv["frozen"] == "true"
    assert (tmp_path / "fig1.dot").exists()
    code, kv, _, _ = run(capsys, "analyze", tmp_path / "fig1.dg")
    assert code == 0
    assert kv["oriented"] == "true" and kv["mad"] == "4/1"
    assert kv["digirth"] == "3"  # a->e->f->a
    code, kv, _, _ = run(capsys, "frozen", tmp_path / "fig1.dg", tmp_path / "fig1.col", "-k", 2)
    assert code == 0 and kv["frozen"] == "true"


def test_path_subcubic_validates(c3, capsys):
    code, kv, _, _ = run(capsys, "path", c3 / "c3.dg", "--from", c3 / "a.col", "--to", c3 / "b.col",
                         "-k", 2, "--method", "subcubic", "--out", c3 / "seq.txt")
    assert code == 0 and kv["method"] == "subcubic"
    code, kv, _, _ = run(capsys, "check", c3 / "c3.dg", c3 / "a.col", "-k", 2,
                         "--sequence", c3 / "seq.txt", "--target", c3 / "b.col")
    assert code == 0 and kv["reaches_target"] == "true"


@pytest.mark.parametrize("method", ["bfs", "min-degen", "avg-degen", "linear", "auto"])
def test_every_method_output_revalidates(c3, capsys, method):
    k = 4
    (c3 / "a4.col").write_text("0 1\n1 2\n2 3\n")
    (c3 / "b4.col").write_text("0 4\n1 1\n2 1\n")
    code, _, _, _ = run(capsys, "path", c3 / "c3.dg", "--from", c3 / "a4.col", "--to", c3 / "b4.col",
                        "-k", k, "--method", method, "--out", c3 / "s.txt")
    assert code == 0
    code, kv, _, _ = run(capsys, "check", c3 / "c3.dg", c3 / "a4.col", "-k", k,
                         "--sequence", c3 / "s.txt", "--target", c3 / "b4.col")
    assert code == 0 and kv["sequence_valid"] == "true"


def test_exit_codes(c3, capsys):
    (c3 / "mono.col").write_text("0 1\n1 1\n2 1\n")
    code, kv, _, _ = run(capsys, "check", c3 / "c3.dg", c3 / "mono.col", "-k", 2)
    assert code == 1 and kv["dicolouring"] == "false"
    (c3 / "bad.dg").write_text("3 3\n0 1\n0 1\n1 2\n")
    code, _, _, err = run(capsys, "analyze", c3 / "bad.dg")
    assert code == 2 and "line 3" in err and "bad.dg" in err
    code, _, _, err = run(capsys, "analyze", c3 / "missing.dg")
    assert code == 2
    code, _, _, _ = run(capsys, "nonsense")
    assert code == 2
    code, kv, _, _ = run(capsys, "explore", c3 / "c3.dg", "-k", 2, "--budget", 4)
    assert code == 3 and kv["budget_exceeded"] == "true"
    code, kv, _, _ = run(capsys, "explore", c3 / "c3.dg", "-k", 2, "--diameter")
    assert code == 0 and kv["components"] == "1" and kv["total"] == "6"
    (c3 / "seq.txt").write_text("0 2\n1 2\n")
    code, kv, _, _ = run(capsys, "check", c3 / "c3.dg", c3 / "a.col", "-k", 2, "--sequence", c3 / "seq.txt")
    assert code == 1 and kv["failed_step"] == "2"


def test_deterministic_reports(c3, capsys):
    outs = []
    for _ in range(2):
        _, _, out, _ = run(capsys, "explore", c3 / "c3.dg", "-k", 3, "--diameter")
        outs.append(out)
        _, _, out, _ = run(capsys, "random", "oriented", "-n", 7, "--seed", 11)
        outs.append(out)
    assert outs[0] == outs[2] and outs[1] == outs[3]


def test_ncl_reduce_translate_pipeline(tmp_path, capsys):
    from redicol.digraph import complete_graph
    from redicol.reductions import NCLInstance, proper_orientations, serialize_ncl
    K4 = complete_graph(4)
    O = proper_orientations(K4, (1, 1, 1, 1))
    (tmp_path / "k4.ncl").write_text(serialize_ncl(NCLInstance(K4, (1, 1, 1, 1), O[0], O[7])))
    code, kv, _, _ = run(capsys, "ncl", "solve", tmp_path / "k4.ncl", "--out", tmp_path / "rev.txt")
    assert code == 0 and kv["reachable"] == "true"
    code, kv, _, _ = run(capsys, "reduce", "ncl2list", tmp_path / "k4.ncl", "--out", tmp_path / "L")
    assert code == 0 and kv["n"] == "22"
    code, _, _, _ = run(capsys, "translate", "fwd", tmp_path / "k4.ncl", tmp_path / "rev.txt",
                        "--out", tmp_path / "seq.txt")
    assert code == 0
    code, kv, _, _ = run(capsys, "check", tmp_path / "L.dg", tmp_path / "L.a.col", "-k", 2,
                         "--lists", tmp_path / "L.lists", "--sequence", tmp_path / "seq.txt",
                         "--target", tmp_path / "L.b.col")
    assert code == 0 and kv["reaches_target"] == "true"
    code, _, _, _ = run(capsys, "translate", "bwd", tmp_path / "k4.ncl", tmp_path / "seq.txt",
                        "--out", tmp_path / "rev2.txt")
    assert code == 0
    assert (tmp_path / "rev.txt").read_text() == (tmp_path / "rev2.txt").read_text()
    code, kv, _, _ = run(capsys, "reduce", "list2plain", tmp_path / "L.dg", tmp_path / "L.lists",
                         tmp_path / "L.a.col", tmp_path / "L.b.col", "-k", 2, "--out", tmp_path / "P")
    assert code == 0 and kv["degree_bound_ok"] == "true"
    code, kv, _, _ = run(capsys, "reduce", "orient", tmp_path / "P.dg", tmp_path / "P.a.col",
                         tmp_path / "P.b.col", "-k", 2, "--out", tmp_path / "O")
    assert code == 0 and kv["oriented"] == "true"


def test_generate_families(tmp_path, capsys):
    for fam in (["fpath", 4], ["fpath-k", 4, 3], ["btower", 2], ["gtower", 1], ["planar-freeze"]):
        code, kv, _, _ = run(capsys, "generate", *fam)
        assert code == 0
    code, kv, _, _ = run(capsys, "generate", "fpath-k", 4, 3)
    assert kv["m"] == "39"
    code, _, _, _ = run(capsys, "generate", "fpath")
    assert code == 2
    (tmp_path / "k1.g").write_text("1 0\n")
    (tmp_path / "k1.col").write_text("0 1\n")
    run(capsys, "generate", "kbipartite", 1, "--out", tmp_path / "h1")
    code, kv, _, _ = run(capsys, "generate", "compose", tmp_path / "k1.g", tmp_path / "k1.col",
                         tmp_path / "h1.g", "--out", tmp_path / "c1")
    assert code == 0 and kv["n"] == "2" and kv["frozen"] == "true"


def test_misc_commands(c3, capsys):
    code, kv, _, _ = run(capsys, "mirror", c3 / "c3.dg", c3 / "a.col")
    assert code == 0 and kv["mirror_reachable"] == "true"
    code, kv, _, _ = run(capsys, "freezable", c3 / "c3.dg", "-k", 2)
    assert code == 1 and kv["freezable"] == "false"
    code, kv, _, _ = run(capsys, "partition", c3 / "c3.dg", "--out-b", c3 / "B.dg", "--out-rest", c3 / "R.dg")
    assert code == 0 and int(kv["b_arcs"]) + int(kv["rest_arcs"]) == 3
    code, kv, _, _ = run(capsys, "analyze", c3 / "c3.dg", "--chi-limit", 3)
    assert kv["dichromatic"] == "2"
