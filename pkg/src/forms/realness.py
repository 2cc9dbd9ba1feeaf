"""Real-valuedness test and form classification"""

import logging
from typing import List, Optional, Set, Tuple

import numpy as np

from ..core.config import settings
from ..core.models import FormClass, FormKind, RealnessVerdict, Witness
from .polynomial import ConjugatePolynomial, MonomialKey

logger = logging.getLogger(__name__)


def check_real_valued(p: ConjugatePolynomial, tau: Optional[float] = None,
                      cap: Optional[int] = None) -> RealnessVerdict:
    """Real-valued iff every coefficient equals the conjugate of its partner's.

    A polynomial in x and x̄ takes only real values exactly when the coefficients
    of each pair of conjugate monomials are conjugate to each other; absent
    coefficients count as zero, so self-conjugate monomials need real coefficients.
    """
    tau = settings.tau_real_parsed if tau is None else tau
    cap = settings.witness_cap if cap is None else cap

    seen: Set[Tuple[MonomialKey, MonomialKey]] = set()
    witnesses: List[Witness] = []
    for key, coeff in p.items():
        partner = key.conjugate()
        pair = tuple(sorted((key, partner), key=MonomialKey.sort_key))
        if pair in seen:
            continue
        seen.add(pair)
        partner_coeff = p.coefficient(partner)
        violation = float(abs(coeff - np.conj(partner_coeff)))
        if violation > tau:
            witnesses.append(Witness(
                key=key,
                partner=partner,
                coefficient=complex(coeff),
                partner_coefficient=complex(partner_coeff),
                violation=violation,
            ))

    witnesses.sort(key=lambda w: -w.violation)
    if witnesses:
        logger.debug(f"Polynomial is not real-valued: {len(witnesses)} violated pairs, worst {witnesses[0].violation:.3e}")
    return RealnessVerdict(
        real_valued=not witnesses,
        tolerance=tau,
        violations=len(witnesses),
        witnesses=witnesses[:cap],
    )


def classify_form(p: ConjugatePolynomial) -> FormClass:
    """Tightest class: symmetric conjugate, complex, general conjugate, or general.

    The zero polynomial carries no degree and is classified as general.
    """
    if p.is_zero():
        return FormClass(kind=FormKind.GENERAL)
    degrees = {key.degree for key in p.terms}
    if len(degrees) > 1:
        return FormClass(kind=FormKind.GENERAL)
    degree = degrees.pop()
    if all(len(key.conj) == len(key.plain) for key in p.terms):
        return FormClass(kind=FormKind.SYMMETRIC_CONJUGATE, degree=degree // 2)
    if all(not key.conj for key in p.terms):
        return FormClass(kind=FormKind.COMPLEX, degree=degree)
    return FormClass(kind=FormKind.GENERAL_CONJUGATE, degree=degree)
