"""Tests for document loading, validation messages and deterministic output"""

import io
import json
import sys

import numpy as np
import pytest

from src.core.exceptions import DocumentError, ParseError
from src.core.models import AmbiguityRow, TensorDocument
from src.forms import parse_poly
from src.io import (
    digest,
    load_polynomial,
    load_scenario,
    load_tensor,
    read_source,
    render_json,
    round_float,
    tensor_to_document,
    to_jsonable,
    validate_document,
    write_ambiguity_csv,
    write_text,
)
from src.tensor import DenseComplexTensor


def test_load_tensor_from_data_file(data_dir, quartic_gap_tensor):
    F, sha = load_tensor(str(data_dir / "cps_quartic_gap.json"))
    assert F.allclose(quartic_gap_tensor)
    assert sha.startswith("sha256:") and len(sha) == len("sha256:") + 64


def test_load_polynomial_from_file_and_inline(data_dir, quartic_form_text):
    p, _ = load_polynomial(str(data_dir / "symmetric_conjugate_quartic.txt"))
    assert p == parse_poly(quartic_form_text)

    q, sha = load_polynomial("x1 + ~x2", n=3, inline=True)
    assert q.n == 3
    assert sha == digest(b"x1 + ~x2")

    with pytest.raises(ParseError):
        load_polynomial("x1 +", inline=True)


def test_load_scenarios(data_dir):
    yaml_sc, _ = load_scenario(str(data_dir / "radar_penalty_only.yaml"))
    assert yaml_sc.n == 3 and yaml_sc.penalty == 1.0
    assert yaml_sc.reference_vector() == pytest.approx([1, 1j, -1])

    json_sc, _ = load_scenario(str(data_dir / "radar_clutter.json"))
    assert len(json_sc.scatterers) == 3
    assert json_sc.scatterers[2].tolerance == 0.2


def test_read_source_from_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"2*~x1*x1\n")))
    text, sha = read_source("-")
    assert text == "2*~x1*x1\n"
    assert sha == digest(b"2*~x1*x1\n")


def test_missing_and_undecodable_files(tmp_path):
    with pytest.raises(DocumentError, match="no such file"):
        read_source(str(tmp_path / "absent.json"))

    bad = tmp_path / "latin1.txt"
    bad.write_bytes(b"\xff\xfe x1")
    with pytest.raises(DocumentError, match="not UTF-8"):
        read_source(str(bad))


def test_malformed_json_and_yaml(tmp_path):
    broken = tmp_path / "tensor.json"
    broken.write_text('{"dims": [2, 2], ')
    with pytest.raises(DocumentError, match="malformed JSON"):
        load_tensor(str(broken))

    scenario = tmp_path / "scenario.yaml"
    scenario.write_text("n: [1, 2\n")
    with pytest.raises(DocumentError, match="malformed YAML"):
        load_scenario(str(scenario))


@pytest.mark.parametrize(
    "document, field",
    [
        ({"dims": [2, 2], "entries": [{"idx": [1, 1], "re": "one"}]}, "entries[0].re"),
        ({"dims": [2, 2], "bogus": 1}, "bogus"),
        ({"entries": []}, "dims"),
        ({"dims": [2, 2], "entries": [{"idx": [3, 1], "re": 1}]}, "<root>"),
    ],
)
def test_validation_names_the_field(document, field):
    """The first failing location is reported as the error field"""
    with pytest.raises(DocumentError) as excinfo:
        validate_document(TensorDocument, document, "doc.json")
    assert excinfo.value.field == field
    assert str(excinfo.value).startswith(f"{field}: ")


def test_scenario_shape_checks(tmp_path):
    path = tmp_path / "sc.json"
    path.write_text(json.dumps({"n": 2, "m": 4, "reference": [1, 1, 1]}))
    with pytest.raises(DocumentError, match="reference has 3 entries"):
        load_scenario(str(path))

    path.write_text(json.dumps({"n": 2, "m": 4, "reference": [1, 1], "scatterers": [{"lag": 2, "doppler": 0, "power": 1}]}))
    with pytest.raises(DocumentError, match="exceeds n - 1"):
        load_scenario(str(path))


def test_round_float():
    assert round_float(1 / 3, 12) == 0.333333333333
    assert round_float(2 / 3, 4) == 0.6667
    zero = round_float(-0.0)
    assert zero == 0.0 and str(zero) == "0.0", "Negative zero is normalized"
    assert round_float(123456789.123, 5) == 123460000.0


def test_to_jsonable_handles_library_types():
    F = DenseComplexTensor.from_entries([2], [((1,), 1 + 2j), ((2,), 1e-20)])
    payload = to_jsonable({
        "tensor": F,
        "poly": parse_poly("~x1*x1"),
        "vector": np.array([0.5, -1j]),
        (1, 2): np.float64(1 / 3),
        "flag": np.bool_(True),
    }, digits=6)

    assert payload["tensor"] == {"dims": [2], "entries": [{"idx": [1], "re": 1.0, "im": 2.0}, {"idx": [2], "re": 1e-20, "im": 0.0}]}
    assert payload["poly"] == "~x1*x1"
    assert payload["vector"] == [{"re": 0.5, "im": 0.0}, {"re": 0.0, "im": -1.0}]
    assert payload["1,2"] == 0.333333
    assert payload["flag"] is True


def test_render_json_is_deterministic():
    text = render_json({"b": 1.0, "a": [1 + 1j]})
    assert text.endswith("\n")
    assert json.loads(text) == {"b": 1.0, "a": [{"re": 1.0, "im": 1.0}]}
    assert render_json({"b": 1.0, "a": [1 + 1j]}) == text


def test_tensor_to_document_is_sparse():
    """Only nonzero entries are written, with 1-based indices"""
    F = DenseComplexTensor(np.array([[1.0, 1e-30], [0.0, -2.5j]]))
    document = tensor_to_document(F, digits=12)
    assert [e.idx for e in document.entries] == [[1, 1], [1, 2], [2, 2]]
    assert document.to_tensor().allclose(F, 1e-12)


def test_write_ambiguity_csv(tmp_path):
    rows = [
        AmbiguityRow(r=0, j=1, x_j=-0.25, weight=0.0, value=1 / 3),
        AmbiguityRow(r=1, j=2, x_j=0.0, weight=2.0, value=-0.0),
    ]
    buffer = io.StringIO()
    write_ambiguity_csv(rows, buffer, digits=6)
    assert buffer.getvalue() == "r,j,x_j,weight,value\n0,1,-0.25,0.0,0.333333\n1,2,0.0,2.0,0.0\n"

    target = tmp_path / "reports" / "ambiguity.csv"
    write_ambiguity_csv(rows, target, digits=6)
    assert target.read_text() == buffer.getvalue()


def test_write_text_creates_parents(tmp_path):
    target = tmp_path / "nested" / "out.json"
    write_text("{}\n", target)
    assert target.read_text() == "{}\n"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
