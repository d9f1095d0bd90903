from pathlib import Path

import pytest

from fracparity import cli, instance


def run(argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def triangle_file(tmp_path):
    g = tmp_path / "triangle.graph"
    g.write_text("graph 3 3\n1 2\n2 3\n1 3\n")
    out = tmp_path / "triangle.fp"
    assert run(["gen", "graph", g, "-o", out]) == 0
    return out


def test_gen_random_round_trips(tmp_path):
    out = tmp_path / "inst.fp"
    assert run(["gen", "random", "--n", 4, "--m", 5, "--seed", 3, "-o", out]) == 0
    ls = instance.parse_line_set(out.read_text())
    assert ls.n == 4 and ls.m == 5
    # same seed, same file
    out2 = tmp_path / "inst2.fp"
    assert run(["gen", "random", "--n", 4, "--m", 5, "--seed", 3, "-o", out2]) == 0
    assert out.read_text() == out2.read_text()


def test_gen_graph(triangle_file):
    ls = instance.parse_line_set(Path(triangle_file).read_text())
    assert ls.n == 3 and ls.m == 3


def test_solve_algorithms_write_half_vectors(tmp_path, triangle_file):
    for alg, expect in (("simple", (1, 1, 1)), ("sparse", (1, 1, 1)),
                        ("faster", (1, 1, 1)), ("maxmatch", (1, 1, 1))):
        out = tmp_path / f"{alg}.sol"
        assert run(["solve", triangle_file, "--alg", alg, "--seed", 5,
                    "-o", out]) == 0
        assert instance.parse_half_vector(out.read_text()).doubled == expect


def test_solve_lasvegas_and_verify_pass(tmp_path, triangle_file, capsys):
    sol = tmp_path / "tri.sol"
    cov = tmp_path / "tri.cover"
    assert run(["solve", triangle_file, "--alg", "lasvegas", "--seed", 7,
                "--cover-out", cov, "-o", sol]) == 0
    assert run(["verify", triangle_file, "--solution", sol, "--cover", cov]) == 0
    text = capsys.readouterr().out
    assert "nested PASS" in text
    assert "covering PASS" in text
    assert "value-equality PASS" in text
    assert "certification PASS value 3/2" in text


def test_verify_rejects_wrong_solution(tmp_path, triangle_file, capsys):
    sol = tmp_path / "bad.sol"
    cov = tmp_path / "tri.cover"
    assert run(["solve", triangle_file, "--alg", "lasvegas", "--seed", 7,
                "--cover-out", cov, "-o", tmp_path / "good.sol"]) == 0
    sol.write_text("1 0 0\nvalue 1/2\n")
    assert run(["verify", triangle_file, "--solution", sol, "--cover", cov]) == 1
    assert "certification FAIL" in capsys.readouterr().out


def test_lasvegas_default_cover_path(tmp_path, triangle_file):
    sol = tmp_path / "tri.sol"
    assert run(["solve", triangle_file, "--seed", 9, "-o", sol]) == 0
    assert Path(str(triangle_file) + ".cover").exists()


def test_dual_subcommand(tmp_path, triangle_file):
    out = tmp_path / "tri.cover"
    assert run(["dual", triangle_file, "--seed", 11, "-o", out]) == 0
    assert out.read_text().startswith("cover n 3")


def test_oracle_subcommand(triangle_file, capsys):
    assert run(["oracle", triangle_file, "--seed", 13]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "optimum 3/2"
    assert lines[1] == "lexmin 1 1 1"


def test_missing_file_is_a_clean_error(tmp_path, capsys):
    assert run(["solve", tmp_path / "nope.fp", "--seed", 1]) == 2
    assert "error:" in capsys.readouterr().err


def test_sparse_without_parity_base_is_a_clean_error(tmp_path, capsys):
    g = tmp_path / "p3.graph"
    g.write_text("graph 3 2\n1 2\n2 3\n")
    inst = tmp_path / "p3.fp"
    assert run(["gen", "graph", g, "-o", inst]) == 0
    assert run(["solve", inst, "--alg", "sparse", "--seed", 1]) == 2
    assert "error:" in capsys.readouterr().err


def test_bench_figure_rendering(tmp_path):
    rows = [{"n": 4, "m": 8, "alg": "sparse", "seconds": 0.5},
            {"n": 4, "m": 8, "alg": "faster", "seconds": 0.1}]
    cli._render_bench_figure(rows, "scaling", str(tmp_path / "figs"))
    assert (tmp_path / "figs" / "bench_scaling.png").exists()
    rows = [{"trial": 0, "agree": True}, {"trial": 1, "agree": True}]
    cli._render_bench_figure(rows, "crosscheck", str(tmp_path / "figs"))
    assert (tmp_path / "figs" / "bench_crosscheck.png").exists()
