"""Document loading and deterministic output"""

from .loader import (
    STDIN,
    digest,
    load_polynomial,
    load_scenario,
    load_tensor,
    load_tensor_document,
    read_source,
    validate_document,
)
from .output import (
    AMBIGUITY_COLUMNS,
    render_json,
    round_float,
    tensor_to_document,
    to_jsonable,
    write_ambiguity_csv,
    write_text,
)

__all__ = [
    "AMBIGUITY_COLUMNS",
    "STDIN",
    "digest",
    "load_polynomial",
    "load_scenario",
    "load_tensor",
    "load_tensor_document",
    "read_source",
    "render_json",
    "round_float",
    "tensor_to_document",
    "to_jsonable",
    "validate_document",
    "write_ambiguity_csv",
    "write_text",
]
