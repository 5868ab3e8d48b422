import json

import pytest

from qmatcount.cli import main, parse_shape_spec
from qmatcount.errors import ParseError
from qmatcount.support import (complement, diagonal_prefix, fano_support, graph_support,
                               skew_shape, straight_shape)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.startswith("{") else out)


def test_parse_shape_spec():
    assert parse_shape_spec("diag:3", 5) == diagonal_prefix(5, 3)
    assert parse_shape_spec("straight:4,3,2", 5) == straight_shape((4, 3, 2), 5)
    assert parse_shape_spec("skew:5,5,4,3,1/2,2,1", 5) == skew_shape((5, 5, 4, 3, 1), (2, 2, 1), 5)
    assert parse_shape_spec("fano") == fano_support()
    assert parse_shape_spec("complement(diag:2)", 3) == complement(diagonal_prefix(3, 2))
    assert parse_shape_spec("explicit:[(1,1),(2,2)]", 3) == diagonal_prefix(3, 2)
    assert parse_shape_spec("explicit:[]", 2).forbidden == frozenset()
    assert parse_shape_spec("graph:1-2,1-3,2-3") == graph_support(3, [(1, 2), (1, 3), (2, 3)])


@pytest.mark.parametrize("text,offset", [
    ("diag:x", 5), ("bogus", 0), ("complement(diag:2", 17), ("straight:3,", 11),
    ("explicit:[(1,1)(2,2)]", 15), ("diag:2 extra", 6), ("skew:2,1", 8),
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_shape_spec(text, 3)
    assert info.value.offset == offset
    assert info.value.expected


def test_parse_semantic_errors():
    with pytest.raises(ParseError):
        parse_shape_spec("straight:1,2", 3)
    with pytest.raises(ParseError):
        parse_shape_spec("diag:2")  # no size


def test_count_command(capsys):
    code, rep = run(capsys, "count", "--n", "3", "--q", "2", "--rank", "3", "--support", "diag:3",
                    "--class", "general")
    assert code == 0
    assert rep["schema"] == "qmatcount/1"
    assert rep["result"]["value"] == "14"
    assert rep["inputs"]["workers"] >= 1 and "budget" in rep["inputs"]


def test_count_is_reproducible(capsys):
    argv = ["count", "--n", "3", "--q", "3", "--rank", "all", "--support", "straight:2,1"]
    _, a = run(capsys, *argv, "--workers", "1")
    _, b = run(capsys, *argv, "--workers", "4")
    assert a["result"] == b["result"]


def test_formula_command(capsys):
    code, rep = run(capsys, "formula", "--name", "sk", "--n", "4", "--rank", "2", "--q", "2",
                    "--method", "recursive")
    _, oracle_rep = run(capsys, "count", "--n", "4", "--q", "2", "--rank", "2", "--support",
                        "diag:4", "--class", "skew")
    assert code == 0 and rep["result"]["value"] == oracle_rep["result"]["value"] == "35"
    code, rep = run(capsys, "formula", "--name", "symz", "--n", "2", "--k", "1", "--q", "3")
    assert rep["result"]["value"] == "6"


def test_verify_command(capsys):
    code, rep = run(capsys, "verify", "--suite", "clover", "--q", "3", "--quiet")
    assert code == 0 and rep["result"]["passed"]


def test_exit_codes(capsys, tmp_path):
    assert main(["count", "--n", "2", "--q", "6"]) == 2
    assert main(["count", "--n", "2", "--q", "4", "--class", "symmetric", "--character", "+"]) == 2
    assert main(["count", "--n", "3", "--q", "3", "--support", "diag:q"]) == 2
    assert main(["count", "--n", "3", "--q", "3", "--budget", "5"]) == 3
    assert main(["formula", "--name", "frect", "--n", "3"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
    capsys.readouterr()


def test_out_file_and_csv(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code = main(["bruhat", "--n", "2", "--q", "3", "--format", "csv", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert text.splitlines()[0] == "w,derangement,count,residue"
    assert "[2 1],True,4," in text
    assert list(tmp_path.iterdir()) == [out]


def test_rook_and_probe_commands(capsys):
    code, rep = run(capsys, "rook", "--support", "fano", "--rank", "7", "--q", "2")
    assert code == 0 and rep["result"]["ranks"][0]["t1"] == "24"
    code, rep = run(capsys, "probe", "--n", "2", "--support", "diag:2", "--rank", "2",
                    "--qs", "2,3,5,7")
    assert code == 0 and rep["result"]["verdict"] == "consistent"
    assert rep["result"]["fitted"] == "q^2 - 2*q + 1"
