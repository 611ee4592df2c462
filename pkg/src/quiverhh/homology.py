"""
Hochschild and cyclic complexes of a graded algebra, split by internal degree.

The chain module A^{(x)(n+1)} is spanned by tuples ``(a_0, ..., a_n)`` of
basis elements; its internal-degree-``m`` piece keeps the tuples whose degrees
sum to ``m``.  Two bases are available:

* ``composable=False``: every tuple, i.e. the tensor product over the ground
  field.
* ``composable=True``: only cyclically composable tuples (``source(a_i) ==
  target(a_{i+1})`` and ``source(a_n) == target(a_0)``).  Every operator here
  (b, b', t, N) maps composable tuples to composable tuples and tuples with a
  break to tuples with a break, so this is a direct summand of the full
  bicomplex; it is the tensor product over A_0 = k^r.  The complementary
  summand is acyclic because A_0 is separable, and the test-suite checks that
  both bases give the same homology wherever the full one is affordable.

Homology tables use the composable basis by default.

Bicomplex conventions: column ``p`` holds A^{(x)(q+1)} in row ``q``; even
columns carry ``b``, odd columns ``-b'``; the horizontal map out of an odd
column is ``1 - t`` and out of an even column (p >= 2) is ``N``.  The
cyclic operator carries the sign ``(-1)^n`` on A^{(x)(n+1)}.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from quiverhh.errors import ComplexError, ResourceCapExceeded
from quiverhh.linalg import Echelon, RationalMatrix, kernel

log = logging.getLogger(__name__)

MAX_COMPONENT_DIM = 200_000
MAX_N = 10
MAX_M = 8


@dataclass(frozen=True)
class Limits:
    component_dim: int = MAX_COMPONENT_DIM
    n_max: int = MAX_N
    m_max: int = MAX_M


DEFAULT_LIMITS = Limits()


class TensorBasis:
    """Tuples of ``length`` basis elements with degrees summing to ``m``."""

    def __init__(self, alg, length, m, composable):
        self.length = length
        self.m = m
        self.composable = composable
        self.tuples = list(_enumerate_tuples(alg, length, m, composable))
        self.index = {tup: k for k, tup in enumerate(self.tuples)}

    def __len__(self):
        return len(self.tuples)


def _enumerate_tuples(alg, length, m, composable):
    by_degree: Dict[int, List] = {}
    for b in alg.basis:
        by_degree.setdefault(b.degree, []).append(b)
    degrees = sorted(by_degree)
    elems = [b for d in degrees for b in by_degree[d]]
    elems.sort(key=lambda b: b.index)
    src = {b.index: b.source for b in alg.basis}
    tgt = {b.index: b.target for b in alg.basis}

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                if not composable or src[prefix[-1]] == tgt[prefix[0]]:
                    yield tuple(prefix)
            return
        for b in elems:
            if b.degree > remaining:
                continue
            if composable and prefix and src[prefix[-1]] != b.target:
                continue
            prefix.append(b.index)
            yield from rec(prefix, remaining - b.degree, slots - 1)
            prefix.pop()

    if length == 0:
        return
    yield from rec([], m, length)


def tensor_dim(alg, length, m, composable):
    """Size of the degree-``m`` piece of A^{(x)length} without enumerating it."""
    if length == 0:
        return 0
    if not composable:
        dims = alg.degree_dims()
        poly = [1]
        for _ in range(length):
            out = [0] * min(len(poly) + len(dims) - 1, m + 1)
            for i, a in enumerate(poly):
                for j, b in enumerate(dims):
                    if i + j <= m:
                        out[i + j] += a * b
            poly = out
        return poly[m] if m < len(poly) else 0
    r = alg.r
    # counts[d][t][s]: elements of degree d from s to t
    counts = {}
    for b in alg.basis:
        counts.setdefault(b.degree, [[0] * r for _ in range(r)])[b.target][b.source] += 1
    total = 0
    for start in range(r):
        # state: (degree used, current source vertex) -> number of prefixes
        state = {(0, start): 1}
        for _ in range(length):
            new = {}
            for (used, v), c in state.items():
                for d, mat in counts.items():
                    if used + d > m:
                        continue
                    for s in range(r):
                        k = mat[v][s]
                        if k:
                            key = (used + d, s)
                            new[key] = new.get(key, 0) + c * k
            state = new
        total += state.get((m, start), 0)
    return total


class CyclicBicomplex:
    """Degree-wise builder for b, b', t, N and the cyclic total complex of ``alg``."""

    def __init__(self, alg, composable=True, limits=DEFAULT_LIMITS):
        self.alg = alg
        self.composable = composable
        self.limits = limits
        self._bases: Dict[Tuple[int, int], TensorBasis] = {}
        self._ops: Dict[Tuple[str, int, int], RationalMatrix] = {}

    def module(self, length, m, n=None):
        key = (length, m)
        if key not in self._bases:
            size = tensor_dim(self.alg, length, m, self.composable)
            if size > self.limits.component_dim:
                raise ResourceCapExceeded(
                    "component A^(x)%d in internal degree %d has dimension %d > cap %d"
                    % (length, m, size, self.limits.component_dim),
                    n if n is not None else length - 1,
                    m,
                )
            self._bases[key] = TensorBasis(self.alg, length, m, self.composable)
        return self._bases[key]

    def _cached(self, name, n, m, build):
        key = (name, n, m)
        if key not in self._ops:
            self._ops[key] = build()
        return self._ops[key]

    def _boundary(self, n, m, cyclic):
        src = self.module(n + 1, m)
        tgt = self.module(n, m)
        products = self.alg.products
        tindex = tgt.index
        columns = []
        for tup in src.tuples:
            col: Dict[int, Fraction] = {}
            for i in range(n):
                prod = products.get((tup[i], tup[i + 1]))
                if not prod:
                    continue
                for c, coef in prod:
                    row = tindex[tup[:i] + (c,) + tup[i + 2:]]
                    v = col.get(row, 0) + (coef if i % 2 == 0 else -coef)
                    if v:
                        col[row] = v
                    else:
                        del col[row]
            if cyclic:
                prod = products.get((tup[n], tup[0]))
                if prod:
                    for c, coef in prod:
                        row = tindex[(c,) + tup[1:n]]
                        v = col.get(row, 0) + (coef if n % 2 == 0 else -coef)
                        if v:
                            col[row] = v
                        else:
                            del col[row]
            columns.append(col)
        return RationalMatrix(len(tgt), len(src), columns)

    def b(self, n, m):
        """Hochschild boundary A^{(x)(n+1)} -> A^{(x)n}."""
        if n < 1:
            raise ValueError("b is defined for n >= 1")
        return self._cached("b", n, m, lambda: self._boundary(n, m, True))

    def bprime(self, n, m):
        """Bar boundary b' (no wrap-around term)."""
        if n < 1:
            raise ValueError("b' is defined for n >= 1")
        return self._cached("b'", n, m, lambda: self._boundary(n, m, False))

    def t(self, n, m):
        """Cyclic operator on A^{(x)(n+1)}: (a_0,...,a_n) -> (-1)^n (a_n, a_0, ..., a_{n-1}).

        Without the sign (1-t)b' = b(1-t) already fails for n = 1.
        """
        sign = Fraction(-1) ** n

        def build():
            mod = self.module(n + 1, m)
            cols = [{mod.index[(tup[-1],) + tup[:-1]]: sign} for tup in mod.tuples]
            return RationalMatrix(len(mod), len(mod), cols)

        return self._cached("t", n, m, build)

    def norm(self, n, m):
        """N = 1 + t + ... + t^n."""
        def build():
            mod = self.module(n + 1, m)
            cols = []
            sign = -1 if n % 2 else 1
            for tup in mod.tuples:
                col: Dict[int, Fraction] = {}
                rot = tup
                coef = Fraction(1)
                for _ in range(n + 1):
                    row = mod.index[rot]
                    v = col.get(row, 0) + coef
                    if v:
                        col[row] = v
                    else:
                        del col[row]
                    rot = (rot[-1],) + rot[:-1]
                    coef *= sign
                cols.append(col)
            return RationalMatrix(len(mod), len(mod), cols)

        return self._cached("N", n, m, build)

    def one_minus_t(self, n, m):
        return self._cached(
            "1-t", n, m, lambda: RationalMatrix.identity(len(self.module(n + 1, m))) - self.t(n, m)
        )

    # -- total complex ------------------------------------------------------

    def total_blocks(self, n, m):
        """``[(p, q, offset, size)]`` for Tot_n, columns p = 0..n."""
        out = []
        offset = 0
        for p in range(n + 1):
            q = n - p
            size = len(self.module(q + 1, m, n))
            out.append((p, q, offset, size))
            offset += size
        return out

    def total_dim(self, n, m):
        return sum(size for *_, size in self.total_blocks(n, m))

    def total_differential(self, n, m):
        """d_n : Tot_n -> Tot_{n-1} (n >= 1)."""
        def build():
            src = self.total_blocks(n, m)
            tgt = {(p, q): off for p, q, off, _ in self.total_blocks(n - 1, m)}
            rows = self.total_dim(n - 1, m)
            columns: List[Dict[int, Fraction]] = []
            for p, q, _, size in src:
                pieces = []
                if q >= 1:
                    vert = self.b(q, m) if p % 2 == 0 else -self.bprime(q, m)
                    pieces.append((tgt[(p, q - 1)], vert))
                if p >= 1:
                    horiz = self.one_minus_t(q, m) if p % 2 == 1 else self.norm(q, m)
                    pieces.append((tgt[(p - 1, q)], horiz))
                for j in range(size):
                    col: Dict[int, Fraction] = {}
                    for off, mat in pieces:
                        for i, v in mat.columns[j].items():
                            col[off + i] = v
                    columns.append(col)
            return RationalMatrix(rows, len(columns), columns)

        return self._cached("Tot", n, m, build)

    def hochschild_piece(self, n_max, m):
        dims = [len(self.module(n + 1, m, n)) for n in range(n_max + 2)]
        maps = {n: self.b(n, m) for n in range(1, n_max + 2)}
        return GradedChainPiece("HH", m, n_max, dims, maps)

    def cyclic_piece(self, n_max, m):
        dims = [self.total_dim(n, m) for n in range(n_max + 2)]
        maps = {n: self.total_differential(n, m) for n in range(1, n_max + 2)}
        return GradedChainPiece("HC", m, n_max, dims, maps)


# -- operator entry points (full tensor basis unless asked) ------------------


def hochschild_boundary(alg, n, m, composable=False):
    return CyclicBicomplex(alg, composable).b(n, m)


def bar_boundary(alg, n, m, composable=False):
    return CyclicBicomplex(alg, composable).bprime(n, m)


def cyclic_operator(alg, n, m, composable=False):
    return CyclicBicomplex(alg, composable).t(n, m)


def norm_operator(alg, n, m, composable=False):
    return CyclicBicomplex(alg, composable).norm(n, m)


def cyclic_total_complex(alg, n_max, m, composable=True, limits=DEFAULT_LIMITS):
    return CyclicBicomplex(alg, composable, limits).cyclic_piece(n_max, m)


def hochschild_complex(alg, n_max, m, composable=True, limits=DEFAULT_LIMITS):
    return CyclicBicomplex(alg, composable, limits).hochschild_piece(n_max, m)


# -- homology -------------------------------------------------------------------


@dataclass
class GradedChainPiece:
    """Internal-degree-``m`` part of a complex, degrees 0..n_max.

    ``boundaries[n]`` is d_n : C_n -> C_{n-1} for 1 <= n <= n_max + 1; the
    extra top map is what makes H_{n_max} computable.
    """

    theory: str
    m: int
    n_max: int
    dims: List[int]
    boundaries: Dict[int, RationalMatrix]

    def check_square_zero(self):
        for n in range(2, self.n_max + 2):
            if not (self.boundaries[n - 1] @ self.boundaries[n]).is_zero():
                raise ComplexError("%s piece m=%d: d_%d d_%d != 0" % (self.theory, self.m, n - 1, n))


def homology_dims(piece, check=True):
    """dim H_n = dim C_n - rank d_n - rank d_{n+1}, for n = 0..n_max."""
    if check:
        piece.check_square_zero()
    ranks = {0: 0}
    for n in range(1, piece.n_max + 2):
        ranks[n] = piece.boundaries[n].rank()
    return [piece.dims[n] - ranks[n] - ranks[n + 1] for n in range(piece.n_max + 1)]


@dataclass(frozen=True)
class BigradedDimTable:
    theory: str
    n_max: int
    m_max: int
    dims: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, nm):
        return self.dims[nm]

    def get(self, n, m, default=None):
        return self.dims.get((n, m), default)

    def row(self, m):
        return [self.dims[(n, m)] for n in range(self.n_max + 1)]

    def nonzero(self):
        return {k: v for k, v in self.dims.items() if v}


def _check_bounds(n_max, m_max, limits):
    if n_max < 0 or m_max < 0:
        raise ValueError("bounds must be nonnegative")
    if n_max > limits.n_max:
        raise ResourceCapExceeded("n_max=%d exceeds cap %d" % (n_max, limits.n_max), n_max, None)
    if m_max > limits.m_max:
        raise ResourceCapExceeded("m_max=%d exceeds cap %d" % (m_max, limits.m_max), None, m_max)


def _row(alg, theory, n_max, m, composable, limits, check):
    cx = CyclicBicomplex(alg, composable, limits)
    piece = cx.hochschild_piece(n_max, m) if theory == "HH" else cx.cyclic_piece(n_max, m)
    dims = homology_dims(piece, check)
    log.debug("%s m=%d: %s", theory, m, dims)
    return dims


def _table(alg, theory, n_max, m_max, composable, limits, jobs, check, skip_zero_degree=False):
    _check_bounds(n_max, m_max, limits)
    ms = [m for m in range(m_max + 1) if not (skip_zero_degree and m == 0)]
    args = [(alg, theory, n_max, m, composable, limits, check) for m in ms]
    if jobs and jobs > 1 and len(ms) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row, *zip(*args)))
    else:
        rows = [_row(*a) for a in args]
    dims = {}
    for m, row in zip(ms, rows):
        for n, d in enumerate(row):
            dims[(n, m)] = d
    return dims


def hh_table(alg, n_max, m_max, composable=True, limits=DEFAULT_LIMITS, jobs=1, check=True):
    dims = _table(alg, "HH", n_max, m_max, composable, limits, jobs, check)
    return BigradedDimTable("HH", n_max, m_max, dims)


def hc_table(alg, n_max, m_max, composable=True, limits=DEFAULT_LIMITS, jobs=1, check=True):
    dims = _table(alg, "HC", n_max, m_max, composable, limits, jobs, check)
    return BigradedDimTable("HC", n_max, m_max, dims)


def relative_hc_table(alg, n_max, m_max, composable=True, limits=DEFAULT_LIMITS, jobs=1, check=True):
    """HC_n^m(A, J).

    The quotient bicomplex for A -> A/J = A_0 lives in internal degree 0, so
    for m >= 1 the kernel bicomplex is the whole degree-m piece and for m = 0
    it is zero.
    """
    dims = _table(alg, "HC", n_max, m_max, composable, limits, jobs, check, skip_zero_degree=True)
    for n in range(n_max + 1):
        dims[(n, 0)] = 0
    return BigradedDimTable("HC-relative", n_max, m_max, dims)


def relative_cyclic_piece_literal(alg, n_max, m, composable=False, limits=DEFAULT_LIMITS):
    """Relative cyclic complex built literally as a kernel (small sizes only).

    Forms the projection of the total complex onto the total complex of
    A/J (spanned by tuples of idempotents), takes its kernel in every total
    degree and writes the restricted differential in kernel coordinates.
    """
    cx = CyclicBicomplex(alg, composable, limits)
    degree = {b.index: b.degree for b in alg.basis}

    def kernel_basis(n):
        cols = []
        quotient_index: Dict[Tuple[int, int, Tuple[int, ...]], int] = {}
        for p, q, _, _ in cx.total_blocks(n, m):
            for tup in cx.module(q + 1, m).tuples:
                if all(degree[a] == 0 for a in tup):
                    key = (p, q, tup)
                    quotient_index.setdefault(key, len(quotient_index))
                    cols.append({quotient_index[key]: Fraction(1)})
                else:
                    cols.append({})
        return kernel(cols)

    bases = {n: kernel_basis(n) for n in range(n_max + 2)}
    maps = {}
    for n in range(1, n_max + 2):
        d = cx.total_differential(n, m)
        ech = Echelon(track=True)
        for k, v in enumerate(bases[n - 1]):
            ech.add(v, {k: Fraction(1)})
        columns = []
        for v in bases[n]:
            residual, combo = ech.reduce(d.apply(v), {})
            if residual:
                raise ComplexError("differential leaves the kernel subcomplex")
            columns.append({k: -c for k, c in combo.items() if c})
        maps[n] = RationalMatrix(len(bases[n - 1]), len(bases[n]), columns)
    dims = [len(bases[n]) for n in range(n_max + 2)]
    return GradedChainPiece("HC-relative", m, n_max, dims, maps)


@dataclass(frozen=True)
class SBIReport:
    holds: bool
    violations: Tuple[Tuple[int, int, int, int, int], ...]  # (n, i, HH, HC_{n-1}, HC_n)
    hh: BigradedDimTable
    hc: BigradedDimTable


def verify_sbi(alg, n_max, m_max, composable=True, limits=DEFAULT_LIMITS, jobs=1, hh=None, hc=None):
    """dim HH_n^i = dim HC_{n-1}^i + dim HC_n^i for 1 <= n <= n_max, 1 <= i <= m_max."""
    if hh is None:
        hh = hh_table(alg, n_max, m_max, composable, limits, jobs)
    if hc is None:
        hc = hc_table(alg, n_max, m_max, composable, limits, jobs)
    bad = []
    for i in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            lhs = hh[(n, i)]
            if lhs != hc[(n - 1, i)] + hc[(n, i)]:
                bad.append((n, i, lhs, hc[(n - 1, i)], hc[(n, i)]))
    return SBIReport(not bad, tuple(bad), hh, hc)


def commutator_rank(alg):
    """Rank of a (x) b -> ab - ba on all of A (A/[A,A] has dimension dim A minus this)."""
    cols = []
    for a in range(alg.dim):
        for b in range(alg.dim):
            col: Dict[int, Fraction] = {}
            for c, coef in alg.mul_basis(a, b):
                col[c] = col.get(c, 0) + coef
            for c, coef in alg.mul_basis(b, a):
                col[c] = col.get(c, 0) - coef
            col = {k: v for k, v in col.items() if v}
            if col:
                cols.append(col)
    return RationalMatrix(alg.dim, len(cols), cols).rank()


def structural_identities(alg, n_max, m_max, composable=False, limits=DEFAULT_LIMITS) -> List[str]:
    """Check the exact operator identities; returns a list of failures (empty = all hold).

    b b = 0, b' b' = 0, (1-t) b' = b (1-t), b' N = N b, t^{n+1} = 1,
    N (1-t) = 0 = (1-t) N, and d d = 0 on the total complex, for n <= n_max,
    m <= m_max.
    """
    failures = []
    cx = CyclicBicomplex(alg, composable, limits)
    for m in range(m_max + 1):
        for n in range(0, n_max + 1):
            t = cx.t(n, m)
            power = t
            for _ in range(n):
                power = t @ power
            if power != RationalMatrix.identity(t.rows):
                failures.append("t^%d != 1 (n=%d, m=%d)" % (n + 1, n, m))
            omt = cx.one_minus_t(n, m)
            N = cx.norm(n, m)
            if not (N @ omt).is_zero() or not (omt @ N).is_zero():
                failures.append("N(1-t) or (1-t)N nonzero (n=%d, m=%d)" % (n, m))
            if n >= 1:
                b, bp = cx.b(n, m), cx.bprime(n, m)
                if cx.one_minus_t(n - 1, m) @ bp != b @ omt:
                    failures.append("(1-t)b' != b(1-t) (n=%d, m=%d)" % (n, m))
                if bp @ N != cx.norm(n - 1, m) @ b:
                    failures.append("b'N != Nb (n=%d, m=%d)" % (n, m))
            if n >= 2:
                if not (cx.b(n - 1, m) @ cx.b(n, m)).is_zero():
                    failures.append("bb != 0 (n=%d, m=%d)" % (n, m))
                if not (cx.bprime(n - 1, m) @ cx.bprime(n, m)).is_zero():
                    failures.append("b'b' != 0 (n=%d, m=%d)" % (n, m))
                if not (cx.total_differential(n - 1, m) @ cx.total_differential(n, m)).is_zero():
                    failures.append("dd != 0 on Tot (n=%d, m=%d)" % (n, m))
    return failures
