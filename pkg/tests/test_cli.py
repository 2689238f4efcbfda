"""CLI behavior: JSON reports, exit codes, determinism."""

import json

import helpers
from padicqm import (
    basis_vector,
    build_norm_inflating_ip_preserver,
    diagonal,
    identity,
    make_sovm,
    make_statistical,
    rank_one,
)
from padicqm.cli import main
from padicqm.jsonio import operator_to_dict, sovm_to_dict

E35 = helpers.ext_ctx(3, 5, 8)
B3 = E35.base


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_report(capsys):
    code, out, _ = run(capsys, "field", "--p", "3", "--mu", "5")
    assert code == 0
    data = json.loads(out)
    assert data["square_class_name"] == "eta"
    assert data["ramified"] is False
    assert data["isotropy_index"] == 2
    assert data["extension_count"] == 3
    assert data["isotropic_witness"] is not None


def test_field_unramified_two_adic(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--mu", "5")
    data = json.loads(out)
    assert code == 0 and data["ramified"] is False


def test_field_rejects_square_mu(capsys):
    code, _, err = run(capsys, "field", "--p", "2", "--mu", "4")
    assert code == 2
    assert "mu_is_square" in err


def test_field_rejects_bad_prime(capsys):
    code, _, err = run(capsys, "field", "--p", "9", "--mu", "5")
    assert code == 2
    assert "invalid_prime" in err


def test_sqrt_golden(capsys):
    code, out, _ = run(capsys, "sqrt", "--p", "3", "7")
    data = json.loads(out)
    assert code == 0
    assert data["root"]["digits"] == [1, 1, 1, 0, 2]
    assert data["companion"]["digits"] == [2, 1, 1, 2, 0]


def test_sqrt_non_square_fails(capsys):
    code, _, err = run(capsys, "sqrt", "--p", "3", "5")
    assert code == 2 and "not_a_square" in err


def test_classify_identity(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(json.dumps(operator_to_dict(identity(E35, 3))))
    code, out, _ = run(capsys, "classify", str(path))
    data = json.loads(out)
    assert code == 0
    assert all(
        data["classification"][flag]["holds"]
        for flag in ("bounded", "adjointable", "self_adjoint", "compact", "trace_class")
    )


def test_classify_generator_certificate(tmp_path, capsys):
    gen = {
        "kind": "generator",
        "context": {"p": 3, "precision": 8, "mu": {"p": 3, "precision": 8, "valuation": 0, "digits": [2, 1, 0, 0, 0, 0, 0, 0]}},
        "window": 2,
        "entries": [
            [
                {"mu": None, "sc": {"p": 3, "precision": 8, "valuation": m + n, "digits": [1]}, "ac": {"p": 3, "precision": 8, "valuation": None}}
                for n in (1, 2)
            ]
            for m in (1, 2)
        ],
        "decay": {"base": 0, "row_coeff": 1, "col_coeff": 1},
    }
    path = tmp_path / "gen.json"
    path.write_text(json.dumps(gen))
    code, out, _ = run(capsys, "classify", str(path))
    data = json.loads(out)
    assert code == 0
    assert data["classification"]["trace_class"] == {
        "holds": True,
        "verdict": "certified_by_decay",
        "witness": "total decay",
    }


def test_classify_multiple_files_with_jobs(tmp_path, capsys):
    paths = []
    for k in (2, 3):
        p = tmp_path / f"op{k}.json"
        p.write_text(json.dumps(operator_to_dict(identity(E35, k))))
        paths.append(str(p))
    code, out, _ = run(capsys, "classify", *paths, "--jobs", "2")
    data = json.loads(out)
    assert code == 0 and len(data) == 2


def test_trace_rank_one_unit(tmp_path, capsys):
    op = rank_one(basis_vector(E35, 2), basis_vector(E35, 2), 3)
    path = tmp_path / "proj.json"
    path.write_text(json.dumps(operator_to_dict(op)))
    code, out, _ = run(capsys, "trace", str(path))
    data = json.loads(out)
    assert code == 0
    assert data["trace"]["sc"]["digits"][0] == 1
    assert data["trace"]["sc"]["valuation"] == 0
    assert data["trace"]["ac"]["valuation"] is None


def test_decompose_zero_is_empty(tmp_path, capsys):
    from padicqm import zero_operator

    path = tmp_path / "zero.json"
    path.write_text(json.dumps(operator_to_dict(zero_operator(E35, 3))))
    code, out, _ = run(capsys, "decompose", str(path))
    data = json.loads(out)
    assert code == 0 and data["canonical"] == []


def test_decompose_symmetric(tmp_path, capsys):
    op = rank_one(basis_vector(E35, 1), basis_vector(E35, 1), 2)
    path = tmp_path / "sa.json"
    path.write_text(json.dumps(operator_to_dict(op)))
    code, out, _ = run(capsys, "decompose", str(path), "--symmetric")
    data = json.loads(out)
    assert code == 0 and len(data["symmetric"]) == 1


def test_unitary_check_counterexample(tmp_path, capsys):
    op = build_norm_inflating_ip_preserver(E35, 1)
    path = tmp_path / "ce.json"
    path.write_text(json.dumps(operator_to_dict(op)))
    code, out, _ = run(capsys, "unitary-check", str(path))
    data = json.loads(out)
    assert code == 0
    assert data["unitary"] is False
    assert data["ip_preserving"] is True
    assert data["norm"]["display"] == "3^1"


def test_pair_command(tmp_path, capsys):
    ws = helpers.simplex_weights(B3, 3)
    state = make_statistical(diagonal(E35, [E35.from_base(w) for w in ws]))
    pvm = make_sovm([rank_one(basis_vector(E35, i), basis_vector(E35, i), 3) for i in (1, 2, 3)])
    sovm_path = tmp_path / "sovm.json"
    state_path = tmp_path / "state.json"
    sovm_path.write_text(json.dumps(sovm_to_dict(pvm)))
    state_path.write_text(json.dumps(operator_to_dict(state.op)))
    code, out, _ = run(capsys, "pair", str(sovm_path), str(state_path))
    data = json.loads(out)
    assert code == 0
    assert data["distribution"]["in_simplex"] is True
    assert data["density"] is True and data["contractive"] is True
    got = [w["digits"][0] if w["valuation"] is not None else 0 for w in data["distribution"]["weights"]]
    assert len(got) == 3


def test_counterexample_command(capsys):
    code, out, _ = run(capsys, "counterexample", "--p", "3", "--mu", "5", "--K", "1")
    data = json.loads(out)
    assert code == 0
    assert data["ip_preserving"] is True and data["unitary"] is False
    assert sum(x * x for x in data["solution"]) == 9


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "field", "--p", "3", "--mu", "5")
    _, second, _ = run(capsys, "field", "--p", "3", "--mu", "5")
    assert first == second


def test_parse_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "classify", str(path))
    assert code == 3 and "parse error" in err


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "sqrt", "--p", "7", "--out", str(target), "2")
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["root"]["digits"] == [3, 1, 2, 6, 1]


def test_cli_round_trips_its_own_output(tmp_path, capsys):
    from padicqm.jsonio import operator_from_dict

    code, out, _ = run(capsys, "counterexample", "--p", "3", "--mu", "5", "--K", "1")
    data = json.loads(out)
    op = operator_from_dict(data["operator"])
    assert op.dim == 4
