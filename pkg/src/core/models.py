"""Pydantic data models for conjtensor"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..tensor.dense import DenseComplexTensor
from .config import settings


class SymmetryClass(str, Enum):
    """Structure tags a tensor can carry"""
    NONE = "none"
    SYMMETRIC = "symmetric"
    PARTIAL_SYMMETRIC = "partial_symmetric"
    CONJUGATE_PARTIAL_SYMMETRIC = "conjugate_partial_symmetric"
    CONJUGATE_SUPER_SYMMETRIC = "conjugate_super_symmetric"


class FormKind(str, Enum):
    """Conjugate polynomial classes"""
    SYMMETRIC_CONJUGATE = "symmetric_conjugate_form"
    GENERAL_CONJUGATE = "general_conjugate_form"
    COMPLEX = "complex_form"
    GENERAL = "general"


class EigenKind(str, Enum):
    """Eigenpair notions for structured complex tensors"""
    C = "C"
    G = "G"
    Q = "Q"


class Verdict(str, Enum):
    EQUAL = "equal"
    GAP_FOUND = "gap_found"


class RecoveryStatus(str, Enum):
    RECOVERED = "recovered"
    DEGENERATE = "degenerate"


# Structure Models

class SymmetryCheck(BaseModel):
    """Outcome of a symmetry predicate; truthy iff the predicate passed"""
    symmetry: SymmetryClass
    passed: bool
    reason: str = Field(default="ok", description="Machine-readable reason code")
    index: Optional[Tuple[int, ...]] = Field(default=None, description="First 1-based index of the worst violation")
    violation: float = Field(default=0.0, description="Largest defect of the defining identity")

    def __bool__(self) -> bool:
        return self.passed


class FormClass(BaseModel):
    """Tightest class of a conjugate polynomial"""
    kind: FormKind
    degree: Optional[int] = Field(default=None, description="d of the class definition (half degree for symmetric conjugate forms)")

    @property
    def total_degree(self) -> Optional[int]:
        if self.degree is None:
            return None
        if self.kind == FormKind.SYMMETRIC_CONJUGATE:
            return 2 * self.degree
        return self.degree


class Witness(BaseModel):
    """One violated conjugate-pair condition"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    key: Tuple[Tuple[int, ...], Tuple[int, ...]]
    partner: Tuple[Tuple[int, ...], Tuple[int, ...]]
    coefficient: complex
    partner_coefficient: complex
    violation: float


class RealnessVerdict(BaseModel):
    """Real-valuedness verdict with the worst witness pairs"""
    real_valued: bool
    tolerance: float
    violations: int = Field(default=0, description="Total number of violated pairs")
    witnesses: List[Witness] = Field(default_factory=list)

    def __bool__(self) -> bool:
        return self.real_valued


class CpsDecomposition(BaseModel):
    """F = Σ αₖ conj(Hₖ)⊗Hₖ with unit symmetric components"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    alphas: List[float]
    components: List[DenseComplexTensor]
    residual: float


# Solver Models

class SolverConfig(BaseModel):
    """Budget and tolerances of a multistart solver run"""
    starts: int = Field(..., ge=1)
    max_iters: int = Field(..., ge=1)
    tau_eig: float = Field(..., gt=0)
    shift: Optional[float] = Field(default=None, ge=0, description="Fixed shift; None adapts it")
    seed: int = 0
    newton_max_iters: int = Field(default=60, ge=1)
    shift_cap_exponent: int = Field(default=10, ge=0)
    tau_bca: float = Field(default=1e-10, gt=0)
    tau_eq: float = Field(default=1e-6, gt=0)

    @classmethod
    def from_settings(cls, **overrides: Any) -> "SolverConfig":
        values = dict(
            starts=settings.starts,
            max_iters=settings.max_iters,
            tau_eig=settings.tau_eig,
            seed=settings.seed,
            newton_max_iters=settings.newton_max_iters,
            shift_cap_exponent=settings.shift_cap_exponent,
            tau_bca=settings.tau_bca,
            tau_eq=settings.tau_eq,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class EigenPair(BaseModel):
    """Real eigenvalue with a unit eigenvector and diagnostics"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    lam: float = Field(..., description="Eigenvalue λ")
    x: np.ndarray = Field(..., description="Unit eigenvector")
    residual: float
    kind: EigenKind
    iters: int = 0
    start_id: int = 0
    imag_defect: float = Field(default=0.0, description="|Im| of the eigenvalue before projection")


class AscentResult(BaseModel):
    """Best block-ascent point over all starts"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: float
    blocks: List[np.ndarray]
    converged: bool
    iters: int
    start_id: int
    trace: List[float] = Field(default_factory=list, description="Objective after every block update of the winning start")


class EqualityReport(BaseModel):
    """Single-vector maximum against its multilinear relaxation"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    check: str
    lhs: float
    rhs: float
    gap: float
    tolerance: float
    verdict: Verdict
    expected_equal: bool = Field(default=True, description="Whether both sides are known to agree on this instance")
    escalated: bool = Field(default=False, description="Starts were multiplied after a first gap")
    lhs_witness: List[np.ndarray] = Field(default_factory=list)
    rhs_witness: List[np.ndarray] = Field(default_factory=list)


class HermitianBanachReport(EqualityReport):
    """Degree-two report with the constructive recovery"""
    lhs_signed: float = Field(..., description="max zᴴQz")
    recovery: RecoveryStatus
    recovered: Optional[np.ndarray] = None
    recovered_value: Optional[float] = None
    alternate: Optional[np.ndarray] = Field(default=None, description="(x̄* − y*)/‖·‖ when the sum degenerates")
    alternate_value: Optional[float] = None


class SandwichReport(BaseModel):
    """Single-vector ≤ tied two-vector ≤ multilinear maxima of a CPS tensor"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    lower: float
    middle: float
    upper: float
    tolerance: float
    psd_flattening: bool
    chain_holds: bool
    collapsed: bool
    escalated: bool = False


class RelationEntry(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    direction: str
    source_lam: float
    target_lam: float
    residual: float
    x: np.ndarray


class RelationReport(BaseModel):
    """Verified correspondence between two eigen notions"""
    relation: str
    verified: bool
    tolerance: float
    entries: List[RelationEntry] = Field(default_factory=list)


# Application Models

class RankOneResult(BaseModel):
    """λ z¹⊗⋯⊗z^d ≈ F"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    factors: List[np.ndarray]
    scale: float = Field(..., ge=0)
    objective: float
    residual: float
    converged: bool = True


class ComplexValue(BaseModel):
    """Complex scalar as a JSON record"""
    model_config = ConfigDict(extra="forbid")

    re: float
    im: float = 0.0

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


class Scatterer(BaseModel):
    """One clutter or interference source seen by the radar"""
    model_config = ConfigDict(extra="forbid")

    lag: int = Field(..., ge=0, description="Time-lag r_k")
    doppler: float = Field(..., ge=-0.5, lt=0.5, description="Mean normalized Doppler frequency")
    tolerance: float = Field(default=0.0, ge=0, description="Doppler uncertainty width ε_k")
    power: float = Field(..., ge=0, description="Echo power σ_k²")


class RadarScenario(BaseModel):
    """Code-design problem for ambiguity shaping"""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1, description="Code length")
    m: int = Field(..., ge=1, description="Doppler bins")
    scatterers: List[Scatterer] = Field(default_factory=list)
    noise: float = Field(default=0.0, ge=0, description="Noise power σ²")
    reference: List[ComplexValue] = Field(..., description="Reference code s⁰")
    penalty: float = Field(default=0.0, ge=0, description="Similarity weight ρ")

    @field_validator("reference", mode="before")
    @classmethod
    def _coerce_reference(cls, value: Any) -> Any:
        if isinstance(value, list):
            out = []
            for item in value:
                if isinstance(item, (int, float)):
                    out.append({"re": item, "im": 0.0})
                elif isinstance(item, (list, tuple)) and len(item) == 2:
                    out.append({"re": item[0], "im": item[1]})
                else:
                    out.append(item)
            return out
        return value

    @model_validator(mode="after")
    def _check_shapes(self) -> "RadarScenario":
        if len(self.reference) != self.n:
            raise ValueError(f"reference has {len(self.reference)} entries, expected n = {self.n}")
        for k, sc in enumerate(self.scatterers):
            if sc.lag > self.n - 1:
                raise ValueError(f"scatterers[{k}].lag = {sc.lag} exceeds n - 1 = {self.n - 1}")
        return self

    def reference_vector(self) -> np.ndarray:
        return np.array([complex(c) for c in self.reference], dtype=np.complex128)


class AmbiguityRow(BaseModel):
    r: int
    j: int
    x_j: float
    weight: float
    value: float


class RadarSolution(BaseModel):
    """Designed code with its objective breakdown"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    code: np.ndarray
    objective: float = Field(..., description="Penalized objective including the noise constant")
    disturbance: float = Field(..., description="φ(s*)")
    penalty_term: float = Field(..., description="ρ(s*ᴴs⁰ + s⁰ᴴs*)²‖s*‖²")
    noise: float
    route: str
    alignment: float = Field(..., description="|s*ᴴs⁰|/‖s⁰‖, zero without a reference")
    rows: List[AmbiguityRow] = Field(default_factory=list)


# Document Models

class TensorEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    idx: List[int] = Field(..., min_length=1, description="1-based multi-index")
    re: float
    im: float = 0.0


class TensorDocument(BaseModel):
    """Sparse JSON carrier of a dense tensor"""
    model_config = ConfigDict(extra="forbid")

    dims: List[int] = Field(..., min_length=1)
    entries: List[TensorEntry] = Field(default_factory=list)

    @field_validator("dims")
    @classmethod
    def _positive_dims(cls, dims: List[int]) -> List[int]:
        for k, n in enumerate(dims):
            if n < 1:
                raise ValueError(f"dims[{k}] = {n} must be positive")
        return dims

    @model_validator(mode="after")
    def _check_entries(self) -> "TensorDocument":
        seen = set()
        for k, entry in enumerate(self.entries):
            if len(entry.idx) != len(self.dims):
                raise ValueError(f"entries[{k}].idx has {len(entry.idx)} components, dims has {len(self.dims)}")
            for i, n in zip(entry.idx, self.dims):
                if not 1 <= i <= n:
                    raise ValueError(f"entries[{k}].idx = {entry.idx} outside dims {self.dims}")
            key = tuple(entry.idx)
            if key in seen:
                raise ValueError(f"entries[{k}].idx = {entry.idx} is duplicated")
            seen.add(key)
        return self

    def to_tensor(self) -> DenseComplexTensor:
        return DenseComplexTensor.from_entries(
            self.dims, ((e.idx, complex(e.re, e.im)) for e in self.entries)
        )

    @classmethod
    def from_tensor(cls, F: DenseComplexTensor) -> "TensorDocument":
        return cls(
            dims=list(F.dims),
            entries=[TensorEntry(idx=list(idx), re=v.real, im=v.imag) for idx, v in F.entries()],
        )


class RunManifest(BaseModel):
    """Provenance record of one CLI run"""
    command: str
    config: Dict[str, Any]
    input_digest: str
    payload: Any
    wall_time: float
