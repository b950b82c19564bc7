"""Command line behavior: exit codes, output shapes, determinism, certificates."""

import json
import os
import subprocess
import sys

import pytest

from gradedmat.cli import main
from gradedmat.embeddings import DecompositionPair
from gradedmat.gradings import GradedAlgebra, GradedMap, elementary_grading, induced_tensor_grading
from gradedmat.groups import FiniteAbelianGroup
from gradedmat.matrices import Matrix
from gradedmat.specio import grading_to_json, map_to_json, matrix_to_json

EPS3 = '{"kind": "epsilon", "n": 3}'
Z2_GROUP = '{"factors": [2]}'


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_passes_fine_grading(capsys):
    code, out, err = run_cli(capsys, "verify", "--spec", EPS3)
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["kind"] == "grading"
    assert payload["verdict"] == "pass"
    assert payload["n"] == 3


def test_verify_text_format(capsys):
    code, out, _ = run_cli(capsys, "verify", "--spec", EPS3, "--format", "text")
    assert code == 0
    assert out.strip() == "pass"


def test_verify_fails_mislabeled_grading(capsys):
    spec = {
        "kind": "explicit",
        "group": {"factors": [2]},
        "components": {
            "0": [matrix_to_json(Matrix.unit(2, 0, 1)), matrix_to_json(Matrix.unit(2, 1, 0))],
            "1": [matrix_to_json(Matrix.unit(2, 0, 0)), matrix_to_json(Matrix.unit(2, 1, 1))],
        },
    }
    code, out, _ = run_cli(capsys, "verify", "--spec", json.dumps(spec))
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"] == "fail"
    assert payload["closure_failures"]


def test_verify_reads_spec_from_file(tmp_path, capsys):
    path = tmp_path / "eps.json"
    path.write_text(EPS3)
    code, out, _ = run_cli(capsys, "verify", "--spec", str(path))
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_verify_checks_maps(capsys):
    Z2 = FiniteAbelianGroup((2,))
    alg = elementary_grading(Z2, (Z2.identity(), Z2.element((1,))))
    pairs = tuple((m, m) for mats in alg.components.values() for m in mats)
    spec = map_to_json(GradedMap(alg, alg, pairs))
    code, out, _ = run_cli(capsys, "verify", "--spec", json.dumps(spec))
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "map"
    assert payload["injective"] is True


def test_equiv_positive_with_certificate(capsys):
    code, out, _ = run_cli(capsys, "equiv", "--group", Z2_GROUP,
                           "--tau", "[[0], [1]]", "--tau-prime", "[[1], [0]]")
    assert code == 0
    payload = json.loads(out)
    assert payload["equivalent"] is True
    assert payload["shift"] == [0]
    assert payload["beta"] == [1, 0]
    # the certificate is itself a verifiable map spec
    code2, out2, _ = run_cli(capsys, "verify", "--spec",
                             json.dumps(payload["certificate"]))
    assert code2 == 0
    assert json.loads(out2)["verdict"] == "pass"


def test_equiv_negative(capsys):
    code, out, _ = run_cli(capsys, "equiv", "--group", Z2_GROUP,
                           "--tau", "[[0], [1]]", "--tau-prime", "[[0], [0]]")
    assert code == 1
    assert json.loads(out)["equivalent"] is False


def test_embed_accepts_and_certifies(capsys):
    spec = {"group": {"factors": [2]}, "source": [[0], [1]],
            "m": 2, "r": 1, "target": [[0], [1], [0], [1], [0]]}
    code, out, _ = run_cli(capsys, "embed", "--spec", json.dumps(spec))
    assert code == 0
    payload = json.loads(out)
    assert payload["accepted"] is True and payload["verified"] is True
    code2, out2, _ = run_cli(capsys, "verify", "--spec",
                             json.dumps(payload["certificate"]))
    assert code2 == 0
    assert json.loads(out2)["verdict"] == "pass"


def test_embed_rejects_with_violated_index(capsys):
    spec = {"group": {"factors": [2]}, "source": [[0], [1]],
            "m": 2, "r": 0, "target": [[0], [1], [0], [0]]}
    code, out, _ = run_cli(capsys, "embed", "--spec", json.dumps(spec))
    assert code == 1
    payload = json.loads(out)
    assert payload["accepted"] is False
    assert payload["violated_index"] == 0


def _regularize_spec():
    G = FiniteAbelianGroup((2, 2, 2))
    from gradedmat.cyclotomic import CycNumber
    minus = CycNumber.rational(-1)
    x_a = Matrix.diagonal([minus, CycNumber.one()])
    x_b = Matrix([[CycNumber.zero(), CycNumber.one()],
                  [CycNumber.one(), CycNumber.zero()]])
    units = {}
    for i in range(2):
        for j in range(2):
            units[G.element((i, j, 0))] = (x_a ** i) * (x_b ** j)
    small = GradedAlgebra(G, 2, {t: [m] for t, m in units.items()})
    big = induced_tensor_grading(
        elementary_grading(G, (G.identity(), G.element((0, 0, 1)))), small)
    i2 = Matrix.identity(2)
    e11 = Matrix.unit(2, 0, 0)
    sign = lambda t: CycNumber.rational(-1 if t.exponents[0] else 1)
    phi = GradedMap(small, big,
                    tuple((x, e11.kron(x).scale(sign(t))) for t, x in units.items()))

    def pair_json(pair):
        return {
            "c_basis": [matrix_to_json(c) for c in pair.c_basis],
            "d_units": {",".join(map(str, t.exponents)): matrix_to_json(x)
                        for t, x in sorted(pair.d_units.items(),
                                           key=lambda kv: kv[0].exponents)},
            "identity": matrix_to_json(pair.identity),
        }

    source = DecompositionPair(small, (Matrix.identity(2),), units, Matrix.identity(2))
    target = DecompositionPair(
        big,
        tuple(Matrix.unit(2, i, j).kron(i2) for i in range(2) for j in range(2)),
        {t: i2.kron(x) for t, x in units.items()},
        Matrix.identity(4))
    return {"map": map_to_json(phi),
            "source": pair_json(source), "target": pair_json(target)}


def test_regularize_full_run(tmp_path, capsys):
    path = tmp_path / "reg.json"
    path.write_text(json.dumps(_regularize_spec()))
    code, out, _ = run_cli(capsys, "regularize", "--spec", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "pass"
    assert payload["corner_equal"] is True
    assert payload["centralizer_dimension"] == 4
    assert payload["centralizer_units"] == 2
    assert payload["problems"] == []
    assert set(payload["adjusted_units"]) == {"0,0,0", "0,1,0", "1,0,0", "1,1,0"}


def test_regularize_reports_structural_problems(capsys):
    spec = _regularize_spec()
    spec["source"]["d_units"].pop("1,1,0")
    code, out, _ = run_cli(capsys, "regularize", "--spec", json.dumps(spec))
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"] == "fail"
    assert payload["problems"]


def test_bratteli_json_and_dot(capsys):
    chain = {"group": {"factors": [2]}, "base": [[0], [1]],
             "steps": [{"kind": "double"}]}
    code, out, _ = run_cli(capsys, "bratteli", "--spec", json.dumps(chain),
                           "--depth", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["depth"] == 3
    assert len(payload["diagram"]["levels"]) == 3
    assert payload["diagram"]["levels"][2] == [{"degree": [0], "dimension": 4},
                                               {"degree": [1], "dimension": 4}]
    code, out, _ = run_cli(capsys, "bratteli", "--spec", json.dumps(chain),
                           "--depth", "3", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_bratteli_rejects_bad_depth(capsys):
    chain = {"group": {"factors": [2]}, "base": [[0]], "steps": [{"kind": "double"}]}
    code, _, err = run_cli(capsys, "bratteli", "--spec", json.dumps(chain),
                           "--depth", "0")
    assert code == 2
    assert "depth" in err


def test_demo_remark1_reproduces_the_counterexample(capsys):
    code, out, _ = run_cli(capsys, "demo-remark1", "--depth", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["diagrams_equal"] is False
    assert payload["steinitz_equal"] is True
    assert payload["steinitz"] == [{"degree": [0], "count": "omega"},
                                   {"degree": [1], "count": "omega"}]
    code, out, _ = run_cli(capsys, "demo-remark1", "--depth", "3", "--format", "dot")
    assert code == 0
    assert out.count("digraph") == 2


def test_demo_remark1_needs_depth_two(capsys):
    code, _, err = run_cli(capsys, "demo-remark1", "--depth", "1")
    assert code == 2
    assert "depth" in err


def test_cocycle_of_fine_grading(capsys):
    code, out, _ = run_cli(capsys, "cocycle", "--spec", '{"kind": "epsilon", "n": 2}')
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "pass"
    assert payload["cocycle_identity"] is True
    table = {(tuple(v["t"]), tuple(v["s"])): v["value"] for v in payload["values"]}
    assert table[((0, 1), (1, 0))] == "-1"  # alpha((i,j),(k,l)) = (-1)^(-jk)
    assert table[((1, 0), (0, 1))] == "1"


def test_cocycle_rejects_non_fine_grading(capsys):
    spec = {"kind": "elementary", "group": {"factors": [2]}, "tuple": [[0], [1]]}
    code, out, _ = run_cli(capsys, "cocycle", "--spec", json.dumps(spec))
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_malformed_json_reports_position(capsys):
    code, _, err = run_cli(capsys, "verify", "--spec", '{"kind": "epsilon", ')
    assert code == 2
    assert "line 1" in err and "column" in err


def test_missing_file_is_an_input_error(capsys):
    code, _, err = run_cli(capsys, "verify", "--spec", "/nonexistent/spec.json")
    assert code == 2
    assert "cannot read" in err


def test_semantic_error_names_the_field(capsys):
    spec = {"kind": "elementary", "group": {"factors": [2]}, "tuple": [[0], [1, 1]]}
    code, _, err = run_cli(capsys, "verify", "--spec", json.dumps(spec))
    assert code == 2
    assert "tuple" in err


def test_dimension_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GMK_MAX_DIM", "4")
    code, _, err = run_cli(capsys, "demo-remark1", "--depth", "4")
    assert code == 2
    assert "GMK_MAX_DIM" in err
    monkeypatch.setenv("GMK_MAX_DIM", "banana")
    code, _, err = run_cli(capsys, "verify", "--spec", EPS3)
    assert code == 2
    assert "GMK_MAX_DIM" in err


def test_unknown_command_exits_via_argparse(capsys):
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def _run_subprocess(argv, hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    return subprocess.run([sys.executable, "-m", "gradedmat", *argv],
                          capture_output=True, text=True, env=env, timeout=120)


def test_output_is_deterministic_across_processes():
    cases = [
        ["demo-remark1", "--depth", "4"],
        ["equiv", "--group", Z2_GROUP, "--tau", "[[0], [1], [1]]",
         "--tau-prime", "[[1], [0], [0]]"],
        ["cocycle", "--spec", '{"kind": "epsilon", "n": 4}'],
    ]
    for argv in cases:
        first = _run_subprocess(argv, "0")
        second = _run_subprocess(argv, "42")
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout
        assert first.stdout.strip()
