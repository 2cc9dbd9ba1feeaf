"""Reading polynomials, tensor documents and radar scenarios"""

import hashlib
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Tuple, Type, TypeVar

import yaml
from pydantic import BaseModel, ValidationError

from ..core.exceptions import DocumentError
from ..core.models import RadarScenario, TensorDocument
from ..forms.parser import parse_poly
from ..forms.polynomial import ConjugatePolynomial
from ..tensor.dense import DenseComplexTensor

logger = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)

STDIN = "-"


def digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def read_source(source: str) -> Tuple[str, str]:
    """Text of a path, or of stdin for "-", with its SHA-256 digest"""
    if source == STDIN:
        raw = sys.stdin.buffer.read() if hasattr(sys.stdin, "buffer") else sys.stdin.read().encode("utf-8")
    else:
        path = Path(source)
        if not path.is_file():
            raise DocumentError(f"no such file: {source}")
        raw = path.read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise DocumentError(f"{source} is not UTF-8 text ({e.reason} at byte {e.start})")
    logger.debug(f"Read {len(raw)} bytes from {source}")
    return text, digest(raw)


def _field(loc: Tuple[Any, ...]) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def validate_document(model: Type[Model], data: Any, source: str = "<input>") -> Model:
    """Validate parsed data, naming the first offending field on failure"""
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        others = e.error_count() - 1
        suffix = f" (and {others} more)" if others else ""
        raise DocumentError(f"{first['msg']}{suffix} in {source}", field=_field(first["loc"])) from e


def _parse_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"malformed JSON in {source}: {e.msg} (line {e.lineno}, column {e.colno})") from e


def _parse_yaml(text: str, source: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise DocumentError(f"malformed YAML in {source}: {e}") from e


def load_polynomial(source: str, n: Optional[int] = None, inline: bool = False) -> Tuple[ConjugatePolynomial, str]:
    """Parse polynomial text from a file, stdin, or the argument itself when ``inline``"""
    if inline:
        text, sha = source, digest(source.encode("utf-8"))
    else:
        text, sha = read_source(source)
    return parse_poly(text.strip(), n), sha


def load_tensor_document(source: str) -> Tuple[TensorDocument, str]:
    text, sha = read_source(source)
    return validate_document(TensorDocument, _parse_json(text, source), source), sha


def load_tensor(source: str) -> Tuple[DenseComplexTensor, str]:
    document, sha = load_tensor_document(source)
    F = document.to_tensor()
    logger.info(f"Loaded tensor with dims {list(F.dims)} and {len(document.entries)} entries from {source}")
    return F, sha


def load_scenario(source: str) -> Tuple[RadarScenario, str]:
    """JSON for *.json, YAML otherwise (YAML also reads JSON)"""
    text, sha = read_source(source)
    if source != STDIN and Path(source).suffix.lower() == ".json":
        data = _parse_json(text, source)
    else:
        data = _parse_yaml(text, source)
    scenario = validate_document(RadarScenario, data, source)
    logger.info(f"Loaded radar scenario n={scenario.n}, m={scenario.m}, {len(scenario.scatterers)} scatterers")
    return scenario, sha
