"""Radar code design by ambiguity-function shaping"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..bijection.embedding import embed_cps_to_css
from ..bijection.maps import g_inverse, s_inverse
from ..core.exceptions import ArgumentError, InternalError
from ..core.models import AmbiguityRow, RadarScenario, RadarSolution, SolverConfig
from ..eigen.c_eigen import solve_c_eig
from ..eigen.g_eigen import solve_g_eig
from ..forms.polynomial import ConjugatePolynomial, eval_poly
from ..forms.realness import check_real_valued
from ..tensor.dense import DenseComplexTensor, tensor_norm
from ..tensor.symmetry import is_cps, is_css

logger = logging.getLogger(__name__)


class RadarObjective(BaseModel):
    """Quartic pieces of the penalized design objective (constants excluded)"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    disturbance: DenseComplexTensor  # CPS, order 4 over n
    disturbance_form: ConjugatePolynomial
    penalty_form: ConjugatePolynomial  # (sᴴs⁰ + s⁰ᴴs)²‖s‖², unweighted
    objective: DenseComplexTensor  # CSS, order 4 over 2n: φ(s) − ρ·penalty(s)
    weights: Dict[Tuple[int, int], float]


def build_shift_matrix(r: int, n: int) -> np.ndarray:
    """(J^r)_{ij} = 1 iff i − j = r"""
    if n < 1 or not 0 <= r <= n - 1:
        raise ArgumentError(f"Shift r = {r} outside 0..{n - 1}")
    return np.eye(n, k=-r)


def steering_vector(v: float, n: int) -> np.ndarray:
    """(1, e^{i2πv}, …, e^{i2π(n−1)v})"""
    return np.exp(2j * np.pi * v * np.arange(n))


def doppler_bins(m: int) -> np.ndarray:
    """x_j = −½ + j/m for j = 1..m"""
    if m < 1:
        raise ArgumentError(f"Need at least one Doppler bin, got m = {m}")
    return -0.5 + np.arange(1, m + 1) / m


def bin_support(v_hat: float, eps: float, m: int) -> List[int]:
    """1-based bins whose half-open cell [x_j − 1/2m, x_j + 1/2m) meets [v̂ − ε/2, v̂ + ε/2] on the unit Doppler circle"""
    if eps < 0:
        raise ArgumentError(f"Doppler tolerance must be nonnegative, got {eps}")
    lo, hi = v_hat - eps / 2, v_hat + eps / 2
    support = []
    for j, x in enumerate(doppler_bins(m), start=1):
        a, b = x - 0.5 / m, x + 0.5 / m
        if any(a + shift <= hi and lo < b + shift for shift in (-1.0, 0.0, 1.0)):
            support.append(j)
    return support


def radar_weights(sc: RadarScenario) -> Dict[Tuple[int, int], float]:
    """ρ(r, j) = Σₖ δ(r, rₖ)·1_{Δₖ}(j)·σₖ²/|Δₖ|, zero weights omitted"""
    weights: Dict[Tuple[int, int], float] = {}
    for k, scatterer in enumerate(sc.scatterers):
        support = bin_support(scatterer.doppler, scatterer.tolerance, sc.m)
        if not support:
            raise InternalError(f"Scatterer {k} hits no Doppler bin")
        share = scatterer.power / len(support)
        for j in support:
            key = (scatterer.lag, j)
            weights[key] = weights.get(key, 0.0) + share
    return {key: w for key, w in sorted(weights.items()) if w > 0}


def ambiguity(s, r: int, v: float) -> float:
    """g_s(r, v) = |sᴴ J^r (s ⊙ p(v))|² / ‖s‖²"""
    s = np.asarray(s, dtype=np.complex128)
    norm2 = float(np.vdot(s, s).real)
    if norm2 == 0.0:
        raise ArgumentError("Ambiguity of the zero code is undefined")
    n = s.shape[0]
    value = np.vdot(s, build_shift_matrix(r, n) @ (s * steering_vector(v, n)))
    return float(abs(value) ** 2 / norm2)


def _lag_doppler_form(r: int, v: float, n: int) -> ConjugatePolynomial:
    """sᴴ J^r (s ⊙ p(v)) = Σ_b conj(s_{b+r}) p_b s_b"""
    p = steering_vector(v, n)
    terms = {((b + r + 1,), (b + 1,)): complex(p[b]) for b in range(n - r)}
    return ConjugatePolynomial(n, terms)


def penalty_form(s0: np.ndarray) -> ConjugatePolynomial:
    """(sᴴs⁰ + s⁰ᴴs)²·‖s‖²"""
    n = s0.shape[0]
    inner = ConjugatePolynomial(n, {})
    norm = ConjugatePolynomial(n, {})
    for i in range(1, n + 1):
        conj_var = ConjugatePolynomial.variable(i, conjugated=True, n=n)
        plain_var = ConjugatePolynomial.variable(i, conjugated=False, n=n)
        inner = inner + conj_var * complex(s0[i - 1]) + plain_var * complex(np.conj(s0[i - 1]))
        norm = norm + conj_var * plain_var
    return inner * inner * norm


def build_radar_objective(sc: RadarScenario) -> RadarObjective:
    """Disturbance φ as a CPS tensor and the penalized objective φ − ρ·penalty as a CSS tensor"""
    n, bins = sc.n, doppler_bins(sc.m)
    weights = radar_weights(sc)

    phi = ConjugatePolynomial(n, {})
    for (r, j), w in weights.items():
        q = _lag_doppler_form(r, bins[j - 1], n)
        phi = phi + q * q.conjugate() * w
    disturbance = s_inverse(phi, d=2, n=n)
    if not is_cps(disturbance, 1e-9 * max(1.0, sum(weights.values()))):
        raise InternalError("Disturbance tensor is not conjugate partial-symmetric")

    penalty = penalty_form(sc.reference_vector())
    total = embed_cps_to_css(disturbance, 1e-9 * max(1.0, sum(weights.values())))
    if sc.penalty > 0 and not penalty.is_zero():
        verdict = check_real_valued(penalty, 1e-9)
        if not verdict:
            raise InternalError("Penalty form is not real-valued")
        total = total + g_inverse(penalty * (-sc.penalty), d=4, n=n)
    if not is_css(total, 1e-9 * max(1.0, tensor_norm(total))):
        raise InternalError("Penalized objective is not conjugate super-symmetric")

    logger.info(f"Radar objective: {len(weights)} weighted (lag, bin) pairs, penalty ρ = {sc.penalty:g}")
    return RadarObjective(
        disturbance=disturbance, disturbance_form=phi, penalty_form=penalty, objective=total, weights=weights,
    )


def ambiguity_rows(sc: RadarScenario, s: np.ndarray, weights: Optional[Dict[Tuple[int, int], float]] = None) -> List[AmbiguityRow]:
    """g_s(r, x_j) for every scatterer lag and every bin"""
    weights = radar_weights(sc) if weights is None else weights
    rows = []
    for r in sorted({scatterer.lag for scatterer in sc.scatterers}):
        for j, x in enumerate(doppler_bins(sc.m), start=1):
            rows.append(AmbiguityRow(r=r, j=j, x_j=float(x), weight=weights.get((r, j), 0.0), value=ambiguity(s, r, x)))
    return rows


def solve_radar(sc: RadarScenario, cfg: Optional[SolverConfig] = None) -> RadarSolution:
    """Minimize φ(s) − ρ(sᴴs⁰ + s⁰ᴴs)²‖s‖² + σ² over the unit sphere.

    Without a penalty the objective is the symmetric conjugate form φ and the
    minimizer is the top C-eigenvector of −φ; with a penalty the objective is a
    general conjugate form and the top G-eigenvector of its negated CSS tensor.
    """
    cfg = cfg or SolverConfig.from_settings()
    problem = build_radar_objective(sc)
    s0 = sc.reference_vector()
    ref_norm = float(np.linalg.norm(s0))
    seeds = [s0 / ref_norm] if ref_norm > 0 else None

    if sc.penalty == 0 or problem.penalty_form.is_zero():
        route = "C"
        s = solve_c_eig(-problem.disturbance, cfg, seeds=seeds)[0].x
    else:
        route = "G"
        s = solve_g_eig(-problem.objective, cfg, seeds=seeds)[0].x

    if ref_norm > 0:
        overlap = np.vdot(s, s0)
        if route == "C" and abs(overlap) > 0:
            # φ is phase invariant: make sᴴs⁰ real positive
            s = s * (overlap / abs(overlap))
        elif overlap.real < 0:
            # the penalized objective is only sign invariant
            s = -s

    disturbance = float(eval_poly(problem.disturbance_form, s).real)
    penalty_term = sc.penalty * float(eval_poly(problem.penalty_form, s).real)
    alignment = float(abs(np.vdot(s, s0)) / ref_norm) if ref_norm > 0 else 0.0
    objective = disturbance - penalty_term + sc.noise * float(np.vdot(s, s).real)

    logger.info(f"Radar design via {route}-eigen route: objective {objective:.12g}, alignment {alignment:.6f}")
    return RadarSolution(
        code=s,
        objective=objective,
        disturbance=disturbance,
        penalty_term=penalty_term,
        noise=sc.noise,
        route=route,
        alignment=alignment,
        rows=ambiguity_rows(sc, s, problem.weights),
    )
