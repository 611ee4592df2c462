"""
Minimal graded projective resolutions of the simple modules S_i = A e_i / J A e_i
(left modules), graded Ext dimensions, and the checks built on them.

A free module is a list of generators ``(vertex j, degree u)``; the summand
for a generator is A e_j shifted up by ``u``.  Its basis is the set of pairs
``(g, a)`` with ``a`` a basis element of A whose source is the generator's
vertex; such a pair sits in degree ``u + deg a`` at vertex ``target(a)``.
Every map between free modules preserves (degree, vertex), so kernels and
generators are computed one (degree, vertex) component at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from quiverhh.errors import ArithmeticInvariantError, QuiverHHError
from quiverhh.linalg import Echelon, kernel
from quiverhh.polyseries import (
    TruncatedRationalSeries,
    matrix_inverse_series,
)
from quiverhh.cartan import graded_cartan


class InsufficientBound(QuiverHHError):
    pass


class FreeModule:
    def __init__(self, alg, generators):
        self.generators = list(generators)
        self.basis = []
        self.components: Dict[Tuple[int, int], List[int]] = {}
        for g, (vertex, u) in enumerate(self.generators):
            for a in alg.basis:
                if a.source == vertex:
                    key = (u + a.degree, a.target)
                    self.components.setdefault(key, []).append(len(self.basis))
                    self.basis.append((g, a.index))
        self.index = {ga: k for k, ga in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)


def _act(alg, c, vec, F):
    """Left multiplication by basis element ``c`` on a vector of ``F``."""
    out: Dict[int, Fraction] = {}
    for k, x in vec.items():
        g, a = F.basis[k]
        for d, coef in alg.mul_basis(c, a):
            key = F.index[(g, d)]
            v = out.get(key, 0) + x * coef
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


@dataclass
class ResolutionStep:
    """Free module P^v, and the images in P^(v-1) of its generators (v >= 1)."""

    module: FreeModule
    images: List[Dict[int, Fraction]]


@dataclass
class Resolution:
    simple: int
    steps: List[ResolutionStep]
    terminated: bool  # the last module's syzygy is zero

    @property
    def length(self):
        return len(self.steps) - 1

    def betti(self):
        """{(v, j, u): multiplicity} for the generators of each P^v."""
        out: Dict[Tuple[int, int, int], int] = {}
        for v, step in enumerate(self.steps):
            for j, u in step.module.generators:
                out[(v, j, u)] = out.get((v, j, u), 0) + 1
        return out


def _kernel_components(alg, F, images, prev):
    """ker(F -> prev), as {(degree, vertex): [vectors of F]}.

    ``images[g]`` is the image of generator g; the basis vector (g, a) maps to
    a * images[g].
    """
    image_of = []
    for g, a in F.basis:
        image_of.append(_act(alg, a, images[g], prev))
    out = {}
    for key, idxs in sorted(F.components.items()):
        cols = [image_of[k] for k in idxs]
        ker = kernel(cols)
        if ker:
            out[key] = [{idxs[j]: c for j, c in vec.items()} for vec in ker]
    return out


def _minimal_generators(alg, F, K):
    """Choose generators of the submodule K of F spanning K modulo J K."""
    arrows = [a for a in alg.basis if a.degree == 1]
    chosen = []
    for key in sorted(K):
        degree, vertex = key
        span = Echelon()
        for c in arrows:
            if c.target != vertex:
                continue
            for w in K.get((degree - 1, c.source), ()):
                span.add(_act(alg, c.index, w, F))
        for w in K[key]:
            if span.add(w):
                chosen.append(((vertex, degree), w))
    return chosen


def minimal_graded_resolution(alg, i, v_max):
    """Resolve S_i (0-based vertex ``i``) through P^{v_max}, or until it stops."""
    if v_max < 0:
        raise ValueError("v_max must be nonnegative")
    F = FreeModule(alg, [(i, 0)])
    steps = [ResolutionStep(F, [])]
    # syzygy of S_i: the radical of A e_i
    K: Dict[Tuple[int, int], List[Dict[int, Fraction]]] = {}
    for k, (g, a) in enumerate(F.basis):
        b = alg.basis[a]
        if b.degree > 0:
            K.setdefault((b.degree, b.target), []).append({k: Fraction(1)})
    for v in range(1, v_max + 1):
        if not K:
            return Resolution(i, steps, True)
        gens = _minimal_generators(alg, F, K)
        newF = FreeModule(alg, [g for g, _ in gens])
        images = [w for _, w in gens]
        for (vertex, u), w in gens:
            for k in w:
                g, a = F.basis[k]
                if alg.basis[a].degree == 0:
                    raise ArithmeticInvariantError("non-minimal step: generator image has a unit entry")
        steps.append(ResolutionStep(newF, images))
        K = _kernel_components(alg, newF, images, F)
        F = newF
    return Resolution(i, steps, not K)


@dataclass(frozen=True)
class BettiTable:
    """dim Ext^v(S_i, S_j[u]) for all simples i, j (0-based), v <= v_max."""

    r: int
    v_max: int
    entries: Dict[Tuple[int, int, int, int], int]  # (v, i, j, u) -> dim
    terminated: Tuple[bool, ...]
    lengths: Tuple[int, ...]

    def get(self, v, i, j, u):
        return self.entries.get((v, i, j, u), 0)

    def nonzero(self):
        return sorted(self.entries.items())


def betti_table(alg, v_max, resolutions=None):
    if resolutions is None:
        resolutions = [minimal_graded_resolution(alg, i, v_max) for i in range(alg.r)]
    entries = {}
    for res in resolutions:
        for (v, j, u), c in res.betti().items():
            entries[(v, res.simple, j, u)] = c
    return BettiTable(
        alg.r,
        v_max,
        entries,
        tuple(res.terminated for res in resolutions),
        tuple(res.length for res in resolutions),
    )


@dataclass(frozen=True)
class KoszulVerdict:
    consistent: bool
    v_max: int
    witness: Optional[Tuple[int, int, int, int]] = None  # (v, u, i, j), 1-based i, j

    def __str__(self):
        if self.consistent:
            return "consistent with Koszul up to v=%d" % self.v_max
        v, u, i, j = self.witness
        return "not Koszul: Ext^%d(S_%d, S_%d[%d]) != 0" % (v, i, j, u)


def koszul_check(alg, v_max, table=None):
    if v_max < 2:
        raise ValueError("koszul_check needs v_max >= 2")
    if table is None:
        table = betti_table(alg, v_max)
    for (v, i, j, u), c in sorted(table.entries.items(), key=lambda kv: (kv[0][0], kv[0][3], kv[0][1], kv[0][2])):
        if c and u != v:
            return KoszulVerdict(False, v_max, (v, u, i + 1, j + 1))
    return KoszulVerdict(True, v_max)


def wilson_series(table, order):
    """Matrix of sum_{v,u} (-1)^v dim Ext^v(S_i, S_j[u]) x^u, truncated at ``order``."""
    r = table.r
    coeffs = [[[Fraction(0)] * (order + 1) for _ in range(r)] for _ in range(r)]
    for (v, i, j, u), c in table.entries.items():
        if u <= order:
            coeffs[i][j][u] += (-1) ** v * c
    return [[TruncatedRationalSeries(order, coeffs[i][j]) for j in range(r)] for i in range(r)]


@dataclass(frozen=True)
class WilsonVerdict:
    match: bool
    order: int
    mismatch: Optional[Tuple[int, int, int]] = None  # (i, j, x-power), 1-based i, j
    ext_side: Tuple = field(default=(), compare=False)
    inverse_side: Tuple = field(default=(), compare=False)


def wilson_inverse_check(alg, order, v_max, table=None):
    """Compare the alternating Ext series with C_A(x)^{-1} modulo x^(order+1).

    Generators of P^v live in degree >= v, so resolving to v_max >= order
    captures every contribution up to x^order; a shorter bound is accepted
    only when every resolution terminated.
    """
    if table is None:
        table = betti_table(alg, v_max)
    if v_max < order and not all(table.terminated):
        raise InsufficientBound("v_max=%d < order=%d and some resolution did not terminate" % (v_max, order))
    ext = wilson_series(table, order)
    inv = matrix_inverse_series(graded_cartan(alg).matrix, order)
    for i in range(alg.r):
        for j in range(alg.r):
            for k in range(order + 1):
                if ext[i][j][k] != inv[i][j][k]:
                    return WilsonVerdict(False, order, (i + 1, j + 1, k), tuple(map(tuple, ext)), tuple(map(tuple, inv)))
    return WilsonVerdict(True, order, None, tuple(map(tuple, ext)), tuple(map(tuple, inv)))


@dataclass(frozen=True)
class GlobalDimension:
    finite: bool
    value: Optional[int]
    v_max: int
    projective_dims: Tuple[Optional[int], ...]

    def __str__(self):
        if self.finite:
            return "finite, gldim = %d" % self.value
        return "not determined up to v=%d" % self.v_max


def global_dimension_probe(alg, v_max, table=None):
    if table is None:
        table = betti_table(alg, v_max)
    pds = tuple(length if done else None for done, length in zip(table.terminated, table.lengths))
    if all(pd is not None for pd in pds):
        return GlobalDimension(True, max(pds, default=0), v_max, pds)
    return GlobalDimension(False, None, v_max, pds)
