import io
import json

import pytest

from affsemi.cli import main


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def doc(gens, dim=1, **extra):
    return json.dumps({"dim": dim, "generators": gens, **extra})


def test_analyze_example(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["analyze", "-"], doc([[0, 2], [2, 1], [0, 3], [1, 2]], 2))
    assert code == 0
    rep = json.loads(out)
    assert rep["schema_version"] == 1
    assert rep["apery"]["elements"] == [[0, 0], [0, 3], [1, 2], [1, 5]]
    assert rep["cm"]["cm"] is True
    assert rep["betti"]["equal_totals"] is True
    assert [g["text"] for g in rep["ideal"]["generators"]] == ["z3^2 - z1^3", "z4^2 - z2*z3"]


def test_byte_stable_under_permutation(capsys, monkeypatch):
    _, a, _ = run(capsys, monkeypatch, ["analyze"], doc([[9], [4], [6]]))
    _, b, _ = run(capsys, monkeypatch, ["analyze"], doc([[6], [9], [4]]))
    _, c, _ = run(capsys, monkeypatch, ["analyze"], doc([[6], [9], [4]]))
    assert a == b == c


@pytest.mark.parametrize("command", ["apery", "ideal", "stdbasis", "cm", "homogeneous", "betti", "closure"])
def test_subcommands(capsys, monkeypatch, command):
    code, out, _ = run(capsys, monkeypatch, [command], doc([[4], [5], [11]]))
    assert code == 0
    assert json.loads(out)["command"] == command


def test_cm_reports_obstruction(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["cm"], doc([[4], [5], [11]]))
    rep = json.loads(out)["cm"]
    assert rep["cm"] is False and rep["obstruction_count"] > 0


def test_text_format(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["ideal", "--format", "text"], doc([[4], [6], [9]]))
    assert code == 0
    assert "- z2^2 - z1^3" in out


def test_extend_and_sequence(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["extend"],
                       doc([[2], [3]], b=[5], alpha=[1, 1], **{"lambda": 2, "mu": 1}))
    assert code == 0
    assert json.loads(out)["checks"]["betti_recursion"] is True
    seq = json.dumps({"dim": 1, "steps": [{"b": [3], "lambda": 2, "mu": 1, "alpha": [3]}]})
    code, out, _ = run(capsys, monkeypatch, ["sequence"], seq)
    assert code == 0
    assert json.loads(out)["semigroup"]["generators"] == [[2], [3]]


def test_corpus_single(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["corpus", "--a", "2", "--b", "3", "--r", "2"])
    assert code == 0
    entry = json.loads(out)["fixtures"][0]
    assert entry["computed"]["betti"] == [1, 2, 1]


def test_exit_codes(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["apery"], "{bad")[0] == 2
    assert run(capsys, monkeypatch, ["apery"], doc([[3], [3], [5]]))[0] == 2
    assert run(capsys, monkeypatch, ["apery"], json.dumps({"dim": 1}))[0] == 2
    assert run(capsys, monkeypatch, ["apery"], doc([[1, 0, 0], [0, 1, 0], [1, 0, 1], [0, 1, 1]], 3))[0] == 3
    code, _, err = run(capsys, monkeypatch, ["ideal", "--max-spairs", "0"], doc([[7], [9], [12], [13]]))
    assert code == 4 and "ResourceBound" in err
    assert run(capsys, monkeypatch, ["extend"], doc([[2], [3]], b=[3], alpha=[0, 1], **{"lambda": 2, "mu": 3}))[0] == 2


def test_multiple_inputs_parallel(tmp_path, capsys, monkeypatch):
    files = []
    for i, gens in enumerate([[[4], [6], [9]], [[3], [4], [5]], [[4], [5], [11]]]):
        p = tmp_path / f"s{i}.json"
        p.write_text(doc(gens))
        files.append(str(p))
    _, serial, _ = run(capsys, monkeypatch, ["betti", *files])
    _, parallel, _ = run(capsys, monkeypatch, ["betti", "--jobs", "2", *files])
    assert serial == parallel
    assert len(json.loads(serial)) == 3
