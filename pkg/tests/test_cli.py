"""End-to-end tests of the command-line interface"""

import json

import pytest
from typer.testing import CliRunner

from cli import EXIT_INVALID, EXIT_NO_CONVERGENCE, app
from src.core.exceptions import ConvergenceError
from src.eigen import solver_registry
from src.forms import parse_poly, print_poly

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


def test_help_command():
    result = invoke("help")
    assert result.exit_code == 0
    assert "Usage Guide" in result.stdout


def test_parse_inline(quartic_form_text):
    """Canonical text, class and term list of an inline polynomial"""
    result = invoke("parse", quartic_form_text, "--text")
    assert result.exit_code == 0, result.output

    payload = json.loads(result.stdout)
    assert payload["text"] == print_poly(parse_poly(quartic_form_text))
    assert payload["class"] == {"kind": "symmetric_conjugate_form", "degree": 2}
    assert payload["n"] == 2
    assert len(payload["terms"]) == 3


def test_convert_s_inverse_from_file(data_dir):
    """The quartic form becomes a 2×2×2×2 tensor with seven entries"""
    result = invoke("convert", data_dir / "symmetric_conjugate_quartic.txt", "--mode", "S-inv")
    assert result.exit_code == 0, result.output

    document = json.loads(result.stdout)
    assert document["dims"] == [2, 2, 2, 2]
    entries = {tuple(e["idx"]): (e["re"], e["im"]) for e in document["entries"]}
    assert len(entries) == 7
    assert entries[(1, 1, 1, 1)] == (1.0, -1.0)
    assert entries[(1, 2, 2, 1)] == (1.0, 0.0)
    assert entries[(2, 1, 2, 2)] == (3.0, 0.0)


def test_convert_round_trip(tmp_path, quartic_form_text):
    """S-inv followed by S gives back the canonical text"""
    tensor_path = tmp_path / "quartic.json"
    first = invoke("convert", quartic_form_text, "--text", "--mode", "S-inv", "--output", tensor_path)
    assert first.exit_code == 0, first.output

    second = invoke("convert", tensor_path, "--mode", "S")
    assert second.exit_code == 0, second.output
    assert second.stdout.strip() == print_poly(parse_poly(quartic_form_text))


def test_convert_g_from_matrix_document(data_dir, quadratic_form_text):
    result = invoke("convert", data_dir / "general_conjugate_quadratic.json", "--mode", "G")
    assert result.exit_code == 0, result.output
    assert parse_poly(result.stdout.strip()) == parse_poly(quadratic_form_text)


def test_convert_rejects_wrong_class(data_dir):
    """A general conjugate form has no partial-symmetric tensor"""
    result = invoke("convert", data_dir / "general_conjugate_quadratic.txt", "--mode", "S-inv")
    assert result.exit_code == EXIT_INVALID


def test_eig_on_hermitian_matrix(data_dir):
    result = invoke("eig", data_dir / "hermitian_diagonal.json", "--kind", "C", "--seed", 0)
    assert result.exit_code == 0, result.output

    pairs = json.loads(result.stdout)
    assert [p["lam"] for p in pairs] == pytest.approx([2.0, 1.0], abs=1e-9)
    assert all(p["kind"] == "C" for p in pairs)


def test_eig_is_deterministic(data_dir):
    """Same seed, byte-identical output"""
    args = ("eig", data_dir / "cps_quartic_gap.json", "--kind", "C", "--seed", 0, "--starts", 8)
    first, second = invoke(*args), invoke(*args)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout


def test_banach_cps_gap(data_dir):
    result = invoke("banach", data_dir / "cps_quartic_gap.json", "--check", "cps", "--seed", 0)
    assert result.exit_code == 0, result.output

    report = json.loads(result.stdout)
    assert report["lhs"] == pytest.approx(0.5, abs=1e-8)
    assert report["rhs"] == pytest.approx(1.0, abs=1e-8)
    assert report["gap"] == pytest.approx(0.5, abs=1e-8)
    assert report["verdict"] == "gap_found"
    assert report["expected_equal"] is False


def test_banach_hermitian_degenerate(data_dir, tmp_path):
    document = tmp_path / "q.json"
    document.write_text(json.dumps({"dims": [2, 2], "entries": [{"idx": [1, 1], "re": 1}, {"idx": [2, 2], "re": -3}]}))
    result = invoke("banach", document, "--check", "hermitian")
    assert result.exit_code == 0, result.output

    report = json.loads(result.stdout)
    assert report["recovery"] == "degenerate"
    assert report["alternate_value"] == pytest.approx(-3.0, abs=1e-8)


def test_banach_hermitian_needs_matrix(data_dir):
    result = invoke("banach", data_dir / "cps_quartic_gap.json", "--check", "hermitian")
    assert result.exit_code == EXIT_INVALID


def test_relation_c_g(data_dir):
    result = invoke("relation", data_dir / "cps_quartic_gap.json", "--pair", "c-g")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["verified"] is True


def test_decompose_tensor_and_form(data_dir):
    result = invoke("decompose", data_dir / "cps_quartic_gap.json")
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["alphas"] == pytest.approx([1.0, -1.0])
    assert payload["flattening_psd"] is False

    split = invoke("decompose", "2*~x1*x1 + ~x2*x2", "--form", "--text")
    assert split.exit_code == 0, split.output
    assert json.loads(split.stdout)["alphas"] == pytest.approx([2.0, 1.0])


def test_rank1_on_hermitian_matrix(data_dir):
    """[[1, i], [−i, 1]] has singular values 2 and 0"""
    result = invoke("rank1", data_dir / "hermitian_coupled.json", "--method", "als")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["scale"] == pytest.approx(2.0, abs=1e-8)


def test_check_real_reports_violation(data_dir):
    result = invoke("check-real", data_dir / "general_conjugate_quadratic.txt")
    assert result.exit_code == 0
    assert '"real_valued": false' in result.stdout


def test_radar_writes_csv(data_dir, tmp_path):
    csv_path = tmp_path / "ambiguity.csv"
    result = invoke("radar", data_dir / "radar_penalty_only.yaml", "--csv", csv_path, "--output", tmp_path / "radar.json")
    assert result.exit_code == 0, result.output

    solution = json.loads((tmp_path / "radar.json").read_text())
    assert solution["route"] == "G"
    assert solution["alignment"] == pytest.approx(1.0, abs=1e-6)
    assert csv_path.read_text() == "r,j,x_j,weight,value\n"


def test_manifest_records_the_run(tmp_path, quartic_form_text):
    manifest = tmp_path / "run.json"
    result = invoke("parse", quartic_form_text, "--text", "--manifest", manifest)
    assert result.exit_code == 0, result.output

    record = json.loads(manifest.read_text())
    assert record["command"] == "parse"
    assert record["input_digest"].startswith("sha256:")
    assert record["payload"]["n"] == 2
    assert record["wall_time"] >= 0


def test_schema_command():
    result = invoke("schema", "tensor")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["title"]
    assert invoke("schema", "nothing").exit_code == EXIT_INVALID


@pytest.mark.parametrize(
    "args",
    [
        ("parse", "x1 +", "--text"),
        ("parse", "missing-file.txt"),
        ("eig", "missing.json", "--kind", "Z"),
        ("eig", "data/hermitian_diagonal.json", "--starts", "0"),
        ("check-real", "x1", "--text", "--tol", "-1"),
    ],
)
def test_invalid_input_exit_code(args):
    result = invoke(*args)
    assert result.exit_code == EXIT_INVALID, result.output


def test_no_convergence_exit_code(data_dir, monkeypatch):
    def stalled(*args, **kwargs):
        raise ConvergenceError("No C-eigenpair converged", best_residual=1.0)

    monkeypatch.setattr(solver_registry.get("C"), "solve", stalled)
    result = invoke("eig", data_dir / "hermitian_diagonal.json", "--kind", "C")
    assert result.exit_code == EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
