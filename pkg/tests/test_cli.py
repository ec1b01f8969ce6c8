import json
from fractions import Fraction
from pathlib import Path

import pytest

from lyreynolds import adjoint_rep, cohomology_dims
from lyreynolds.cli import main
from lyreynolds.errors import NameNotFound, ParseError
from lyreynolds.fileformat import load_workspace
from lyreynolds.reporting import AxiomReport, ComplexReport, OrderReport

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
TWO_DIM = str(SAMPLES / "two_dim.lyr")

F = Fraction


def write(tmp_path, text, name="input.lyr"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# ---------------------------------------------------------------------------
# parsing

def test_load_canonical_sample(ly2, tri_t):
    ws = load_workspace([TWO_DIM])
    assert ws.algebras["ly2"].binary == ly2.binary
    assert ws.algebras["ly2"].ternary == ly2.ternary
    assert ws.operators["T"].op == tri_t
    assert ws.representations["ad"].rep == adjoint_rep(ly2, tri_t)
    assert ws.deformations["stretch"].order == 1


def test_parse_error_carries_line(tmp_path):
    path = write(tmp_path, "[algebra a]\ndim = 2\nbinary = 1 2 1\n")
    with pytest.raises(ParseError) as err:
        load_workspace([path])
    assert err.value.line == 3


def test_malformed_rational_rejected(tmp_path):
    path = write(tmp_path, "[algebra a]\ndim = 2\nbinary = 1 2 1 1/0\n")
    with pytest.raises(ParseError) as err:
        load_workspace([path])
    assert "denominator" in str(err.value)


def test_inconsistent_antisymmetric_pair_rejected(tmp_path):
    path = write(tmp_path,
                 "[algebra a]\ndim = 2\nbinary = 1 2 1 1\nbinary = 2 1 1 1\n")
    with pytest.raises(ParseError) as err:
        load_workspace([path])
    assert err.value.line == 4


def test_consistent_redundant_pair_accepted(tmp_path):
    path = write(tmp_path,
                 "[algebra a]\ndim = 2\nbinary = 1 2 1 1\nbinary = 2 1 1 -1\n")
    ws = load_workspace([path])
    assert ws.algebras["a"].binary[0][1] == (F(1), F(0))


def test_duplicate_names_rejected(tmp_path):
    path = write(tmp_path, "[algebra a]\ndim = 1\n[algebra a]\ndim = 1\n")
    with pytest.raises(ParseError):
        load_workspace([path])


def test_unknown_reference(tmp_path):
    path = write(tmp_path,
                 "[operator T]\nalgebra = missing\nweight = 0\nrow = 1\n")
    with pytest.raises(NameNotFound):
        load_workspace([path])


def test_index_out_of_range(tmp_path):
    path = write(tmp_path, "[algebra a]\ndim = 2\nbinary = 1 3 1 1\n")
    with pytest.raises(ParseError) as err:
        load_workspace([path])
    assert "out of range" in str(err.value)


def test_cross_file_references(tmp_path):
    first = write(tmp_path, "[algebra a]\ndim = 1\n", "a.lyr")
    second = write(tmp_path,
                   "[operator t]\nalgebra = a\nweight = -1\nrow = 1\n", "b.lyr")
    ws = load_workspace([first, second])
    assert ws.operators["t"].algebra == "a"


def test_explicit_representation_entries(tmp_path):
    text = """
[algebra a]
dim = 2
binary = 1 2 1 1
ternary = 1 2 2 1 1

[representation r]
algebra = a
module_dim = 2
rho = 1 1 2 1
rho = 2 1 1 -1
theta = 2 2 1 1 1
"""
    # rho(e1)[1][2] = 1 etc. match the adjoint of the canonical algebra
    ws = load_workspace([write(tmp_path, text)])
    rep = ws.representations["r"].rep
    assert rep.rho[0].column(1) == (F(1), F(0))
    assert rep.theta[1][1].column(0) == (F(1), F(0))


# ---------------------------------------------------------------------------
# verify command

def test_verify_algebra_ok(capsys):
    assert main(["verify", TWO_DIM, "--name", "ly2"]) == 0
    out = capsys.readouterr().out
    assert "LY6: pass" in out


def test_verify_operator_wrong_weight(tmp_path, capsys):
    text = """
[algebra a]
dim = 2
binary = 1 2 1 1
ternary = 1 2 2 1 1

[operator bad]
algebra = a
weight = 1/5
row = 2 3
row = 0 5
"""
    path = write(tmp_path, text)
    assert main(["verify", path, "--name", "bad"]) == 1
    out = capsys.readouterr().out
    assert "reynolds-binary: FAIL at basis tuple (0, 1)" in out


def test_verify_empty_algebra(tmp_path, capsys):
    path = write(tmp_path, "[algebra nil]\ndim = 0\n")
    assert main(["verify", path, "--name", "nil"]) == 0


def test_verify_missing_name_exit_code(capsys):
    assert main(["verify", TWO_DIM, "--name", "nothing"]) == 2


def test_verify_missing_file_exit_code(capsys):
    assert main(["verify", "no/such/file.lyr", "--name", "x"]) == 2


def test_verify_deformation_and_cochain(tmp_path, capsys):
    text = """
[algebra a]
dim = 2
binary = 1 2 1 1
ternary = 1 2 2 1 1

[operator t]
algebra = a
weight = -1
row = 1 0
row = 0 1

[representation ad]
algebra = a
adjoint = true
operator = t

[cochain ident]
algebra = a
operator = t
representation = ad
complex = rly
degree = 1
map = 1 1 1
map = 2 2 1
"""
    path = write(tmp_path, text)
    # the identity map is not a cone cocycle here: its coboundary is nonzero
    code = main(["verify", path, "--name", "ident"])
    out = capsys.readouterr().out
    assert code == 1 and "is-cocycle: FAIL" in out
    assert main(["verify", TWO_DIM, "--name", "stretch"]) == 0


def test_verify_representation_reports_both_layers(capsys):
    assert main(["verify", TWO_DIM, "--name", "ad"]) == 0
    out = capsys.readouterr().out
    assert "theta-of-bracket: pass" in out
    assert "rho-module-op: pass" in out


def test_verify_json_round_trip(capsys):
    assert main(["verify", TWO_DIM, "--name", "T", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    report = AxiomReport.from_json(payload["report"])
    assert report.ok
    assert report.to_json() == payload["report"]


# ---------------------------------------------------------------------------
# cohomology command

def test_cohomology_table(capsys):
    code = main(["cohomology", TWO_DIM, "--algebra", "ly2", "--operator", "T",
                 "--rep", "ad", "--complex", "ly", "--max-degree", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "complex ly" in out
    dims = [line.split()[1] for line in out.splitlines()[2:5]]
    assert dims == ["4", "6", "6"]
    assert "d2 o d1 = 0: pass" in out


def test_cohomology_rly_dims(capsys):
    code = main(["cohomology", TWO_DIM, "--algebra", "ly2", "--operator", "T",
                 "--rep", "ad", "--complex", "rly", "--max-degree", "3"])
    out = capsys.readouterr().out
    assert code == 0
    dims = [line.split()[1] for line in out.splitlines()[2:5]]
    assert dims == ["4", "10", "12"]


def test_cohomology_json_round_trip(ly2, tri_t, capsys):
    code = main(["cohomology", TWO_DIM, "--algebra", "ly2", "--operator", "T",
                 "--rep", "ad", "--complex", "rly", "--max-degree", "3",
                 "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    parsed = ComplexReport.from_json(payload)
    in_memory = cohomology_dims(ly2, tri_t, adjoint_rep(ly2, tri_t), "rly", 3)
    assert parsed == in_memory
    assert payload["square_zero"] == [True, True]
    assert payload["chain_map"] == [True, True]


# ---------------------------------------------------------------------------
# classify-extensions command

def test_classify_extensions_count_matches_betti(ly2, tri_t, capsys):
    code = main(["classify-extensions", TWO_DIM, "--algebra", "ly2",
                 "--operator", "T", "--rep", "ad", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    betti2 = cohomology_dims(ly2, tri_t, adjoint_rep(ly2, tri_t),
                             "rly", 2).betti(2)
    assert payload["betti2"] == betti2
    assert len(payload["representatives"]) == betti2


def test_classify_extensions_trivial_group(tmp_path, capsys):
    # a 1-dim base with an injective comparison map has no degree-2 classes
    text = """
[algebra a]
dim = 1

[operator t]
algebra = a
weight = -1/2
row = 2

[representation r]
algebra = a
module_dim = 1
module_op_row = 3
operator = t
"""
    path = write(tmp_path, text)
    code = main(["classify-extensions", path, "--algebra", "a",
                 "--operator", "t", "--rep", "r"])
    out = capsys.readouterr().out
    assert code == 0
    assert "second cohomology dimension: 0" in out
    assert "semidirect" in out


# ---------------------------------------------------------------------------
# deform-check command

def test_deform_check_ok(capsys):
    assert main(["deform-check", TWO_DIM, "--name", "stretch"]) == 0
    out = capsys.readouterr().out
    assert "order 1: pass" in out


def test_deform_check_json_round_trip(capsys):
    assert main(["deform-check", TWO_DIM, "--name", "stretch", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    report = OrderReport.from_json(payload["report"])
    assert report.ok


def test_deform_check_failing_deformation(tmp_path, capsys):
    text = """
[algebra a]
dim = 2
binary = 1 2 1 1
ternary = 1 2 2 1 1

[operator t]
algebra = a
weight = -1
row = 1 0
row = 0 1

[deformation wonky]
algebra = a
operator = t
order = 1
T = 1 2 1 1
"""
    path = write(tmp_path, text)
    code = main(["deform-check", path, "--name", "wonky"])
    out = capsys.readouterr().out
    assert code == 1
    assert "order 1: FAIL" in out


def test_deform_check_order_flag(tmp_path, capsys):
    assert main(["deform-check", TWO_DIM, "--name", "stretch", "--order", "1"]) == 0
    assert main(["deform-check", TWO_DIM, "--name", "stretch", "--order", "2"]) == 2


def test_cli_output_deterministic(capsys):
    args = ["cohomology", TWO_DIM, "--algebra", "ly2", "--operator", "T",
            "--rep", "ad", "--complex", "rly", "--max-degree", "3", "--json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second


def test_extension_sample_verifies(capsys):
    path = str(SAMPLES / "extension.lyr")
    assert main(["verify", path, "--name", "E1"]) == 0
    out = capsys.readouterr().out
    assert "base-data-matches: pass" in out
    assert main(["verify", path, "--name", "chidefect"]) == 0
