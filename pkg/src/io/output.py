"""Deterministic JSON rendering and the ambiguity CSV report"""

import csv
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional, TextIO, Union

import numpy as np
from pydantic import BaseModel

from ..core.config import settings
from ..core.models import AmbiguityRow, TensorDocument
from ..forms.parser import print_poly
from ..forms.polynomial import ConjugatePolynomial, MonomialKey
from ..tensor.dense import DenseComplexTensor

logger = logging.getLogger(__name__)

AMBIGUITY_COLUMNS = ("r", "j", "x_j", "weight", "value")


def round_float(x: float, digits: Optional[int] = None) -> float:
    """Round to significant digits; −0.0 becomes 0.0"""
    digits = settings.output_digits if digits is None else digits
    value = float(f"{float(x):.{digits}g}")
    return 0.0 if value == 0.0 else value


def _complex(z: complex, digits: int) -> dict:
    return {"re": round_float(z.real, digits), "im": round_float(z.imag, digits)}


def _tensor_document(F: DenseComplexTensor, digits: int) -> dict:
    """Sparse entries with 1-based indices; entries that round to zero are dropped"""
    entries = []
    for idx, value in F.entries():
        re, im = round_float(value.real, digits), round_float(value.imag, digits)
        if re or im:
            entries.append({"idx": list(idx), "re": re, "im": im})
    return {"dims": list(F.dims), "entries": entries}


def to_jsonable(obj: Any, digits: Optional[int] = None) -> Any:
    """Plain JSON values for models, numpy data, complex numbers, tensors and polynomials"""
    digits = settings.output_digits if digits is None else digits

    if isinstance(obj, BaseModel):
        return {name: to_jsonable(getattr(obj, name), digits) for name in type(obj).model_fields}
    if isinstance(obj, DenseComplexTensor):
        return _tensor_document(obj, digits)
    if isinstance(obj, ConjugatePolynomial):
        return print_poly(obj)
    if isinstance(obj, MonomialKey):
        return {"conj": list(obj.conj), "plain": list(obj.plain)}
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v, digits) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_float(obj, digits)
    if isinstance(obj, (complex, np.complexfloating)):
        return _complex(complex(obj), digits)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def _key(k: Any) -> str:
    if isinstance(k, tuple):
        return ",".join(str(part) for part in k)
    return str(k)


def render_json(obj: Any, digits: Optional[int] = None) -> str:
    return json.dumps(to_jsonable(obj, digits), indent=2, ensure_ascii=False) + "\n"


def tensor_to_document(F: DenseComplexTensor, digits: Optional[int] = None) -> TensorDocument:
    digits = settings.output_digits if digits is None else digits
    return TensorDocument.model_validate(_tensor_document(F, digits))


def write_text(text: str, path: Union[str, Path]) -> None:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {len(text)} characters to {path}")


def write_ambiguity_csv(rows: Iterable[AmbiguityRow], target: Union[str, Path, TextIO],
                        digits: Optional[int] = None) -> None:
    """Columns r, j, x_j, weight, value"""
    if isinstance(target, (str, Path)):
        path = Path(target)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as f:
            write_ambiguity_csv(rows, f, digits)
        logger.info(f"Wrote ambiguity report to {path}")
        return

    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(AMBIGUITY_COLUMNS)
    for row in rows:
        writer.writerow([
            row.r,
            row.j,
            repr(round_float(row.x_j, digits)),
            repr(round_float(row.weight, digits)),
            repr(round_float(row.value, digits)),
        ])
