"""Weighted Sobolev norms of monomial series."""

import logging
import math

from bergman_reg.core.moments import MomentTable
from bergman_reg.core.series import Series, d_mixed, embed, norm0
from bergman_reg.models.report import MultiIndexTerm, SobolevResult

logger = logging.getLogger(__name__)


def sobolev_norm(f: Series, k: int, table: MomentTable) -> SobolevResult:
    """||f||_{k,lambda}^2 = sum over b1 + b2 <= k of ||d_z^b1 d_zbar^b2 f||_{0,lambda}^2.

    Args:
        f: Monomial or holomorphic series
        k: Sobolev order
        table: Moment table covering deg f

    Returns:
        SobolevResult with the total and every squared term
    """
    if k < 0:
        raise ValueError(f"Sobolev order must be non-negative, got {k}")
    f = embed(f)
    terms: list[MultiIndexTerm] = []
    for order in range(k + 1):
        for b2 in range(order + 1):
            b1 = order - b2
            derivative = d_mixed(f, b1, b2)
            sq = norm0(derivative, table) ** 2 if not derivative.is_zero else 0.0
            terms.append(MultiIndexTerm(b1=b1, b2=b2, sq=sq))
    total = math.sqrt(sum(term.sq for term in terms))
    logger.debug(f"Sobolev norm k={k} of degree-{f.degree} series: {total:.6e}")
    return SobolevResult(k=k, total=total, terms=terms)
