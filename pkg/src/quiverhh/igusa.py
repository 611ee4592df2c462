"""
Euler characteristic of relative cyclic homology HC_*(A, J), computed from
homology or from the graded Cartan determinant, the inverse transform back to
log det, properness evidence, and the hhdim verdict engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from quiverhh.cartan import cartan_det, integer_det, loop_count_criterion, ungraded_cartan
from quiverhh.errors import ArithmeticInvariantError
from quiverhh.homology import relative_hc_table
from quiverhh.numtheory import divisors, mobius
from quiverhh.polyseries import TruncatedRationalSeries, series_log
from quiverhh.resolution import betti_table, global_dimension_probe, koszul_check

DEFAULT_ORDER = 60
DEFAULT_WINDOW = 10


class EulerSeries(TruncatedRationalSeries):
    """sum_{m>=1} chi(HC_*^m(A,J)) x^m; integer coefficients, no constant term."""

    def __init__(self, order, coeffs=()):
        super().__init__(order, coeffs)
        if self.coeffs[0] != 0:
            raise ArithmeticInvariantError("Euler series has a constant term")
        if not self.is_integral():
            k = next(k for k, c in enumerate(self.coeffs) if c.denominator != 1)
            raise ArithmeticInvariantError("Euler characteristic at m=%d is not an integer" % k)

    def as_sequence(self):
        """``{m: a_m}`` for 1 <= m <= order, suitable for ``f_weighted``."""
        return {m: int(self.coeffs[m]) for m in range(1, self.order + 1)}


def chi_from_homology(rel, m_max):
    """a_m = sum_{n<m} (-1)^n dim HC_n^m(A,J), for m <= m_max.

    Every entry present in the table with n >= m must vanish.
    """
    coeffs = [0] * (m_max + 1)
    for m in range(1, m_max + 1):
        total = 0
        for n in range(m):
            d = rel.get(n, m)
            if d is None:
                raise KeyError("relative table lacks HC_%d^%d" % (n, m))
            total += (-1) ** n * d
        for n in range(m, rel.n_max + 1):
            d = rel.get(n, m)
            if d:
                raise ArithmeticInvariantError("HC_%d^%d(A,J) = %d, expected 0 for n >= m" % (n, m, d))
        coeffs[m] = total
    return EulerSeries(m_max, coeffs)


def chi_from_cartan(det, order):
    """sum_{m>=1} log det(x^m) * sum_{d|m} mu(d)/d, truncated at ``order``.

    log det(x^m) starts at x^m, so m <= order suffices.
    """
    if det[0] != 1:
        raise ValueError("det must have constant term 1")
    logdet = series_log(det, order)
    total = TruncatedRationalSeries(order)
    for m in range(1, order + 1):
        weight = sum(Fraction(mobius(d), d) for d in divisors(m))
        if weight:
            total = total + logdet.substitute_power(m).scale(weight)
    return EulerSeries(order, total.coeffs)


def logdet_from_chi(chi, order):
    """sum_{m>=1} chi(x^m) * sum_{d|m} d mu(d) / m, truncated at ``order``."""
    if chi.order < order:
        raise ValueError("chi known only to order %d" % chi.order)
    chi = chi.truncate(order)
    total = TruncatedRationalSeries(order)
    for m in range(1, order + 1):
        weight = Fraction(sum(d * mobius(d) for d in divisors(m)), m)
        if weight:
            total = total + chi.substitute_power(m).scale(weight)
    return total


@dataclass(frozen=True)
class ProperEvidence:
    order: int
    window: int
    checkpoints: Tuple[Tuple[int, Optional[int]], ...]  # (B, nonzero index in (B, B+window] or None)
    chi: EulerSeries = field(compare=False)

    @property
    def found_all(self):
        return all(k is not None for _, k in self.checkpoints)


def properness_evidence(det, order=DEFAULT_ORDER, window=DEFAULT_WINDOW):
    """Locate nonzero Euler coefficients beyond N/4, N/2 and 3N/4."""
    if det.is_one():
        raise ValueError("properness evidence needs det != 1")
    if window < 1:
        raise ValueError("window must be positive")
    chi = chi_from_cartan(det, order)
    found = []
    for B in (order // 4, order // 2, 3 * order // 4):
        hit = next((k for k in range(B + 1, min(B + window, order) + 1) if chi[k]), None)
        found.append((B, hit))
    return ProperEvidence(order, window, tuple(found), chi)


@dataclass(frozen=True)
class ClassNote:
    name: str
    status: str
    detail: str


@dataclass(frozen=True)
class HanVerdict:
    det: str
    det_is_one: bool
    certified_infinite_hhdim: bool
    classes: Tuple[ClassNote, ...]
    evidence: Optional[ProperEvidence] = None

    def __post_init__(self):
        if self.certified_infinite_hhdim and self.det_is_one:
            raise ArithmeticInvariantError("certified verdict with det = 1")

    @property
    def verdict(self):
        return "certified: hhdim = infinity" if self.certified_infinite_hhdim else "inconclusive"


@dataclass(frozen=True)
class HanOptions:
    order: int = DEFAULT_ORDER
    window: int = DEFAULT_WINDOW
    v_max: int = 6


def han_verdict(alg, options=None):
    """Decide what the Cartan determinant says about hhdim A.

    det != 1 is the only route to a certified verdict.  Otherwise the result
    is inconclusive, annotated with what each class theorem contributes.
    """
    if options is None:
        options = HanOptions()
    det = cartan_det(alg)
    det_is_one = det.is_one()
    notes: List[ClassNote] = []

    if alg.r == 1:
        if det_is_one and alg.dim > 1:
            raise ArithmeticInvariantError("local algebra with Hilbert polynomial 1 but dim %d" % alg.dim)
        notes.append(ClassNote(
            "local", "applies",
            "A_0 = k: det is the Hilbert polynomial %s" % det
            + ("; det = 1 forces A = k" if det_is_one else "; det != 1 so hhdim = infinity"),
        ))
    else:
        notes.append(ClassNote("local", "n/a", "A_0 has %d simple factors" % alg.r))

    if alg.presentation is not None:
        loops = loop_count_criterion(alg.presentation, alg)
        notes.append(ClassNote(
            "loop",
            "certifies det != 1" if loops.certified else "no loops",
            "loops = %d, x-coefficient of det = %d" % (loops.loops, loops.degree_one_coefficient),
        ))

    table = betti_table(alg, max(options.v_max, 2))
    kos = koszul_check(alg, max(options.v_max, 2), table)
    gl = global_dimension_probe(alg, options.v_max, table)
    if kos.consistent:
        detail = str(kos)
        if det_is_one:
            detail += "; det = 1 together with genuine Koszulity would force finite global dimension"
        notes.append(ClassNote("koszul", "consistent (bounded)", detail))
    else:
        notes.append(ClassNote("koszul", "not koszul", str(kos)))
    notes.append(ClassNote("global dimension", "finite" if gl.finite else "undetermined", str(gl)))

    U = ungraded_cartan(alg)
    detU = integer_det(U)
    notes.append(ClassNote(
        "cellular", "corroborating data",
        "det U_A = det C_A(1) = %d%s" % (detU, "" if detU == 1 else " != 1, so det C_A(x) != 1"),
    ))

    if alg.presentation is not None and alg.presentation.is_monomial() and alg.dim > alg.r:
        notes.append(ClassNote(
            "monomial", "outside this engine",
            "monomial algebra: Han's conjecture is known for this class, so infinite global dimension "
            "gives hhdim = infinity by other means (not certified here)",
        ))

    evidence = None
    if not det_is_one:
        evidence = properness_evidence(det, options.order, options.window)
    return HanVerdict(str(det), det_is_one, not det_is_one, tuple(notes), evidence)


def compare_chi(alg, m_max, jobs=1):
    """Both Euler pipelines on m <= m_max; returns (from_homology, from_cartan, rel table)."""
    rel = relative_hc_table(alg, m_max + 1, m_max, jobs=jobs)
    hom = chi_from_homology(rel, m_max)
    cart = chi_from_cartan(cartan_det(alg), m_max)
    return hom, cart, rel
