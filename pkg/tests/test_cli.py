import json

import pytest

from treeskel.cli import main
from treeskel.linalg import TreePatternMatrix


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "p5": "a b\nb c\nc d\nd e\n",
        "k2": "a b\n",
        "k13": "c l1\nc l2\nc l3\n",
        "forest": "a b\nc d\n",
        "cycle": "a b\nb c\nc a\n",
    }.items():
        p = tmp_path / f"{name}.edges"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_basis_p5(files, capsys):
    code, doc, _ = run(capsys, "basis", files["p5"], "--lambda", "1")
    assert code == 0
    assert list(doc) == ["command", "inputs", "results", "provenance"]
    assert doc["results"]["basis"] == [["1", "1", "0", "-1", "-1"]]


def test_classc_k2(files, capsys):
    code, doc, _ = run(capsys, "classc", files["k2"])
    assert code == 0 and doc["results"]["member"] is True
    assert doc["results"]["certificate"] == ["1", "1"]


def test_spectrum_and_eigenspace(files, capsys):
    code, doc, _ = run(capsys, "spectrum", files["k13"])
    assert doc["results"]["integer_eigenvalues"] == {"0": 2} and doc["results"]["nullity"] == 2
    code, doc, _ = run(capsys, "eigenspace", files["p5"], "--lambda", "1")
    assert code == 0 and doc["results"]["always_zero"] == ["c"]
    assert doc["results"]["eigen_components"] == [["a", "b"], ["d", "e"]]


def test_kernel_basis(files, capsys):
    code, doc, _ = run(capsys, "kernel-basis", files["k13"])
    assert code == 0
    assert doc["results"]["never_missed"] == ["c"]
    assert doc["results"]["basis"] == [["0", "-1", "1", "0"], ["0", "-1", "0", "1"]]


def test_skeleton_with_dot(files, capsys, tmp_path):
    dot = tmp_path / "s.dot"
    code, doc, _ = run(capsys, "skeleton", files["p5"], "--lambda", "1", "--dot", str(dot))
    assert code == 0
    assert doc["results"]["multiplicity_via_matching"] == 1 == doc["results"]["multiplicity_exact"]
    assert [v["kind"] for v in doc["results"]["skeleton"]["vertices"]] == ["contracted", "boundary", "contracted"]
    assert dot.read_text().startswith("graph skeleton {")


def test_domain_refusals_exit_1(files, capsys):
    assert run(capsys, "skeleton", files["p5"], "--lambda", "2")[0] == 1
    assert run(capsys, "basis", files["p5"], "--lambda", "0")[0] == 0
    code, doc, err = run(capsys, "basis", files["forest"], "--lambda", "0")
    assert code == 1 and doc is None and "not a tree" in err


def test_input_errors_exit_2(files, capsys, tmp_path):
    assert run(capsys, "spectrum", files["cycle"])[0] == 2
    assert run(capsys, "spectrum", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "eigenspace", files["p5"], "--lambda", "0.5")[0] == 2
    assert run(capsys, "basis", files["p5"], "--lambda", "2")[0] == 2  # argparse choice
    assert run(capsys, "frobnicate")[0] == 2


def test_compose(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({
        "lambda": "1",
        "meta_skeleton": "m c1\nm c2\nm x",
        "non_eigenvalue_set": ["x"],
        "replacements": {"c1": {"edges": "a b"}, "c2": {"edges": "a b"}, "x": {"edges": "z"}},
    }))
    code, doc, _ = run(capsys, "compose", "--spec", str(spec))
    assert code == 0
    r = doc["results"]
    assert r["order"] == 6 and r["predicted_multiplicity"] == 1 == r["exact_multiplicity"]
    assert r["verification_failures"] == []
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"lambda": "1", "meta_skeleton": "a b\nb c\nc d"}))
    code, _, err = run(capsys, "compose", "--spec", str(bad))
    assert code == 1 and "forced_edge" in err
    (tmp_path / "junk.json").write_text("{")
    assert run(capsys, "compose", "--spec", str(tmp_path / "junk.json"))[0] == 2


def test_pattern(tmp_path, capsys):
    m = TreePatternMatrix(("a", "b", "c"), ((0, 2, 0), (3, 0, 1), (0, 5, 0)))
    path = tmp_path / "m.json"
    path.write_text(m.to_json())
    code, doc, _ = run(capsys, "pattern", str(path), "--lambda", "0")
    r = doc["results"]
    assert code == 0 and r["predicted_nullity"] == 1 == r["exact_nullity"]
    assert r["support"] == ["a", "c"]
    assert r["caveats"]  # values are not symmetric
    assert r["transferred_pattern_basis"] == [["-1", "0", "3"]]
    (tmp_path / "bad.json").write_text('{"entries": [["0", "1"], ["0", "0"]]}')
    assert run(capsys, "pattern", str(tmp_path / "bad.json"), "--lambda", "0")[0] == 2


SMALL = ["verify", "--exhaustive-n", "3", "--samples", "2", "--compositions", "3", "--patterns", "5"]


def test_verify_seed_flag_and_env(capsys, monkeypatch):
    code, doc, _ = run(capsys, *SMALL, "--seed", "5")
    assert code == 0 and doc["results"]["all_passed"] and doc["provenance"]["seed"] == 5
    monkeypatch.setenv("SEED", "9")
    assert run(capsys, *SMALL)[1]["provenance"]["seed"] == 9
    assert run(capsys, *SMALL, "--seed", "4")[1]["provenance"]["seed"] == 4
    monkeypatch.setenv("SEED", "x")
    assert run(capsys, *SMALL)[0] == 2


def test_verify_is_deterministic(capsys):
    main(SMALL + ["--seed", "3"])
    first = capsys.readouterr().out
    main(SMALL + ["--seed", "3"])
    assert capsys.readouterr().out == first
