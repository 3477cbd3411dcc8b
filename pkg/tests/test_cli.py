import itertools
import json
import pathlib
import subprocess
import sys

import pytest

from evoclass.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def spec(tmp_path, name, domain, matrix):
    p = tmp_path / f"{name}.json"
    p.write_text(json.dumps({"domain": domain, "matrix": matrix}))
    return p


@pytest.mark.parametrize(
    "matrix, expected",
    [
        ([["1", "0"], ["0", "1"]], {"perfect": True, "quasiperfect": True, "det": "1"}),
        ([["2", "0"], ["0", "3"]], {"perfect": False, "quasiperfect": True, "det": "6"}),
        ([["1", "2"], ["2", "4"]], {"perfect": False, "quasiperfect": False, "det": "0"}),
    ],
)
def test_check(tmp_path, capsys, matrix, expected):
    code, out, _ = run(capsys, "check", spec(tmp_path, "a", "Z", matrix))
    assert code == 0
    assert json.loads(out) == expected
    assert list(json.loads(out)) == ["perfect", "quasiperfect", "det"]


def test_check_input_errors(tmp_path, capsys):
    code, out, err = run(capsys, "check", spec(tmp_path, "a", "Z", [["1/2", "0"], ["0", "1"]]))
    assert code == 2 and out == "" and "position" in err
    code, _, _ = run(capsys, "check", spec(tmp_path, "b", "Fp:4", [["1", "0"], ["0", "1"]]))
    assert code == 2
    code, _, _ = run(capsys, "check", spec(tmp_path, "c", "Z", [["1", "0"]]))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "check", bad)[0] == 2
    assert run(capsys, "check", tmp_path / "missing.json")[0] == 2


def test_classify(tmp_path, capsys):
    code, out, _ = run(capsys, "classify", spec(tmp_path, "a", "Z", [["2", "3"], ["3", "5"]]))
    assert code == 0
    assert out == (
        '{\n  "family": "B5III",\n  "params": {\n    "α": "2",\n    "β": "3",\n'
        '    "γ": "3",\n    "δ": "5"\n  },\n  "moduli_tag": "Surfaceω"\n}\n'
    )
    _, out, _ = run(capsys, "classify", spec(tmp_path, "b", "Z", [[1, 0], [0, 1]]))
    assert json.loads(out)["family"] == "A1"
    _, out, _ = run(capsys, "classify", spec(tmp_path, "c", "Z", [["0", "1"], ["1", "2"]]))
    assert json.loads(out)["params"] == {"λ": "1", "μ": "2"}
    code, out, err = run(capsys, "classify", spec(tmp_path, "d", "Z", [["2", "0"], ["0", "3"]]))
    assert code == 3 and out == "" and "not perfect" in err


def test_iso(tmp_path, capsys):
    a = spec(tmp_path, "a", "Z", [["2", "3"], ["3", "5"]])
    b = spec(tmp_path, "b", "Z", [["-2", "3"], ["-3", "5"]])
    code, out, _ = run(capsys, "iso", a, b)
    assert code == 0
    assert json.loads(out) == {"isomorphic": "yes", "witness": {"perm": [1, 2], "k1": "-1", "k2": "1"}}
    c = spec(tmp_path, "c", "Z", [["1", "1"], ["1", "2"]])
    d = spec(tmp_path, "d", "Z", [["1", "1"], ["-1", "-2"]])
    assert json.loads(run(capsys, "iso", c, d)[1]) == {"isomorphic": "no"}
    _, out, _ = run(capsys, "iso", a, a)
    assert json.loads(out)["witness"] == {"perm": [1, 2], "k1": "1", "k2": "1"}
    q = spec(tmp_path, "q", "Q", [["1", "0"], ["0", "1"]])
    assert run(capsys, "iso", a, q)[0] == 3
    n = spec(tmp_path, "n", "Z", [["2", "0"], ["0", "1"]])
    assert run(capsys, "iso", a, n)[0] == 3


def test_iso_laurent(tmp_path, capsys):
    a = spec(tmp_path, "a", "LaurentZ:x", [["7*x^3+4*x^2", "4*x"], ["5*x^5+3*x^4", "3*x^3"]])
    b = spec(tmp_path, "b", "LaurentZ:x", [["7*x+4", "4"], ["5*x+3", "3"]])
    _, out, _ = run(capsys, "iso", a, b)
    assert json.loads(out)["witness"] == {"perm": [1, 2], "k1": "x^-2", "k2": "x^-3"}


@pytest.mark.parametrize("name", ["triangular", "identity", "b2335", "laurent"])
def test_graph_golden(capsys, name):
    code, out, _ = run(capsys, "graph", GOLDEN / f"{name}.json")
    assert code == 0
    assert out.encode() == (GOLDEN / f"{name}.dot").read_bytes()
    assert run(capsys, "graph", "--dot", GOLDEN / f"{name}.json")[1] == out


def test_graph_json_and_errors(tmp_path, capsys):
    code, out, _ = run(capsys, "graph", "--json", GOLDEN / "triangular.json")
    assert json.loads(out)["edges"] == [
        {"from": 1, "to": 1, "color": "black"},
        {"from": 2, "to": 1, "color": "blue"},
        {"from": 2, "to": 2, "color": "black"},
    ]
    assert run(capsys, "graph", spec(tmp_path, "z", "Z", [["1", "2"], ["2", "4"]]))[0] == 3


def test_orbit(tmp_path, capsys):
    _, out, _ = run(capsys, "orbit", spec(tmp_path, "a", "Z", [["2", "3"], ["3", "5"]]))
    rep = json.loads(out)
    assert rep["status"] == "ok"
    assert rep["orbit"] == [
        [["2", "3"], ["3", "5"]],
        [["2", "-3"], ["3", "-5"]],
        [["-2", "3"], ["-3", "5"]],
        [["-2", "-3"], ["-3", "-5"]],
    ]
    _, out, _ = run(capsys, "orbit", spec(tmp_path, "b", "Z", [["1", "3"], ["2", "5"]]))
    assert json.loads(out)["orbit"] == [[["1", "3"], ["2", "5"]], [["1", "-3"], ["2", "-5"]]]
    code, out, _ = run(capsys, "orbit", spec(tmp_path, "c", "PolyQ:x", [["1", "x"], ["0", "1"]]))
    assert code == 0 and json.loads(out)["status"] == "unsupported"


def _det_unit_count(bound):
    r = range(-bound, bound + 1)
    return sum(1 for p, q, s, t in itertools.product(r, repeat=4) if p * t - q * s in (1, -1))


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--domain", "Z", "--bound", "1")
    rep = json.loads(out)
    assert code == 0
    assert list(rep) == ["domain", "bound", "scanned", "total_perfect", "class_counts", "iso_class_count"]
    assert rep["scanned"] == 81
    assert rep["total_perfect"] == _det_unit_count(1)
    assert sum(rep["class_counts"].values()) == rep["total_perfect"]
    rep = json.loads(run(capsys, "enumerate", "--bound", "0")[1])
    assert rep["total_perfect"] == 0 and rep["iso_class_count"] == 0
    rep = json.loads(run(capsys, "enumerate", "--domain", "Fp:2", "--bound", "1")[1])
    assert rep["total_perfect"] == 6  # |GL_2(F_2)|
    assert run(capsys, "enumerate", "--bound", "7")[0] == 2
    assert run(capsys, "enumerate", "--domain", "Fp:9", "--bound", "1")[0] == 2


def test_enumerate_iso_classes_over_infinite_units(capsys):
    # over Q the count comes from pairwise iso merging, over Z from canonical classes
    rep = json.loads(run(capsys, "enumerate", "--domain", "Q", "--bound", "1")[1])
    assert rep["total_perfect"] == 48
    z = json.loads(run(capsys, "enumerate", "--domain", "Z", "--bound", "1")[1])
    assert rep["iso_class_count"] <= 48 and z["iso_class_count"] == 6


def test_dim1(capsys):
    assert json.loads(run(capsys, "dim1", "--domain", "Z", "6", "-6")[1])["isomorphic"] == "yes"
    assert json.loads(run(capsys, "dim1", "--domain", "Z", "6", "5")[1])["isomorphic"] == "no"
    rep = json.loads(run(capsys, "dim1", "--domain", "PolyQ:x", "2*x+2", "x+1")[1])
    assert rep["isomorphic"] == "yes" and rep["witness"] == "2"
    assert run(capsys, "dim1", "--domain", "Z", "x", "1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "evoclass", "graph", str(GOLDEN / "identity.json")],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout == (GOLDEN / "identity.dot").read_text()


def _brute_classes(bound):
    # connected components of the +-1 basis-change action on integer matrices
    r = range(-bound, bound + 1)
    pool = [m for m in itertools.product(r, repeat=4) if m[0] * m[3] - m[1] * m[2] in (1, -1)]
    seen, classes = set(), 0
    for m in pool:
        if m in seen:
            continue
        classes += 1
        w = (m[:2], m[2:])
        for perm in ((0, 1), (1, 0)):
            for k in itertools.product((1, -1), repeat=2):
                seen.add(tuple(k[i] * k[i] * k[q] * w[perm[i]][perm[q]] for i in range(2) for q in range(2)))
    return len(pool), classes


@pytest.mark.parametrize("bound", [1, 2, 3])
def test_enumerate_matches_brute_force_partition(capsys, bound):
    rep = json.loads(run(capsys, "enumerate", "--bound", bound)[1])
    assert (rep["total_perfect"], rep["iso_class_count"]) == _brute_classes(bound)
