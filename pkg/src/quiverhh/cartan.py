"""
Graded Cartan matrix of a graded algebra and the quantities derived from its
determinant: log-derivative coefficients, their linear recurrence, the loop
count identity, and the ungraded Cartan matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from quiverhh.algebra import build_graded_algebra
from quiverhh.errors import ArithmeticInvariantError
from quiverhh.polyseries import (
    IntPolynomial,
    IntPolynomialMatrix,
    det_poly_matrix,
    series_derivative,
    series_log,
)

DEFAULT_ORDER = 50


@dataclass(frozen=True)
class GradedCartanMatrix:
    matrix: IntPolynomialMatrix
    r: int
    s: int

    def __post_init__(self):
        ident = [[int(i == j) for j in range(self.r)] for i in range(self.r)]
        if self.matrix.coefficient_matrix(0) != ident:
            raise ArithmeticInvariantError("degree-0 Cartan matrix is not the identity")


def graded_cartan(alg):
    """Entry (i, j) is sum_l dim(e_j A_l e_i) x^l (row = source, column = target)."""
    r = alg.r
    counts = [[[0] * (alg.s + 1) for _ in range(r)] for _ in range(r)]
    for b in alg.basis:
        counts[b.source][b.target][b.degree] += 1
    return GradedCartanMatrix(IntPolynomialMatrix(counts), r, alg.s)


def cartan_det(alg):
    det = det_poly_matrix(graded_cartan(alg).matrix)
    if det[0] != 1:
        raise ArithmeticInvariantError("Cartan determinant has constant term %d" % det[0])
    return det


def ungraded_cartan(alg):
    return graded_cartan(alg).matrix.evaluate(1)


@dataclass(frozen=True)
class LogDerivativeData:
    b: Tuple[int, ...]  # b_k = coefficient of x^k in D_x log det, k < order
    c: Tuple[int, ...]  # c_1..c_u of det = 1 + c_1 x + ... + c_u x^u
    u: int

    @property
    def order(self):
        return len(self.b)


def log_derivative(det, order=DEFAULT_ORDER):
    """Coefficients b_0..b_{order-1} of D_x log det, asserted integral."""
    if det[0] != 1:
        raise ValueError("determinant must have constant term 1")
    deriv = series_derivative(series_log(det, order))
    if not deriv.is_integral():
        k = next(k for k, c in enumerate(deriv.coeffs) if c.denominator != 1)
        raise ArithmeticInvariantError("D_x log det has a non-integer coefficient at x^%d" % k)
    u = max(det.degree, 0)
    return LogDerivativeData(tuple(deriv.integer_coeffs()), tuple(det[k] for k in range(1, u + 1)), u)


@dataclass(frozen=True)
class RecurrenceVerdict:
    holds: bool
    first_violation: Optional[int] = None
    checked: Tuple[int, int] = (0, -1)


def check_recurrence(data):
    """Check b_m + c_1 b_{m-1} + ... + c_u b_{m-u} = 0 for u <= m < order."""
    b, c, u = data.b, data.c, data.u
    if len(b) < u:
        raise ValueError("need at least u=%d coefficients" % u)
    for m in range(u, len(b)):
        if b[m] + sum(c[k - 1] * b[m - k] for k in range(1, u + 1)) != 0:
            return RecurrenceVerdict(False, m, (u, len(b) - 1))
    return RecurrenceVerdict(True, None, (u, len(b) - 1))


@dataclass(frozen=True)
class LoopCriterion:
    loops: int
    loops_per_vertex: Tuple[int, ...]
    degree_one_coefficient: int
    certified: bool


def loop_count_criterion(pres, alg=None):
    """Loops at the vertices versus the x-coefficient of the Cartan determinant.

    The two must agree; a positive count certifies det != 1.
    """
    if alg is None:
        alg = build_graded_algebra(pres)
    per_vertex = tuple(pres.quiver.loops())
    coefficient = cartan_det(alg)[1]
    if coefficient != sum(per_vertex):
        raise ArithmeticInvariantError(
            "degree-1 coefficient %d of det differs from loop count %d" % (coefficient, sum(per_vertex))
        )
    return LoopCriterion(sum(per_vertex), per_vertex, coefficient, sum(per_vertex) > 0)


def integer_det(rows: List[List[int]]):
    """Determinant of an integer matrix (via the polynomial machinery)."""
    return det_poly_matrix(IntPolynomialMatrix([[IntPolynomial((e,)) for e in row] for row in rows]))[0]
