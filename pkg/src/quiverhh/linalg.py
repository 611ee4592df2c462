"""
Exact linear algebra over the rationals.

Matrices are sparse and stored column-wise: column ``j`` is a dict mapping row
index to a nonzero ``Fraction``.  Ranks are computed by fraction-free
elimination on integer-scaled columns; kernels and spans go through
``Echelon``, an incremental row-echelon basis with optional tracking of the
combinations that produced each vector.
"""

from fractions import Fraction
from math import gcd


def _lcm(a, b):
    return a // gcd(a, b) * b


class RationalMatrix:
    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows, cols, columns=None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        assert len(columns) == cols
        self.columns = columns

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_dense(cls, dense):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        columns = [{} for _ in range(cols)]
        for i, row in enumerate(dense):
            assert len(row) == cols
            for j, value in enumerate(row):
                if value:
                    columns[j][i] = Fraction(value)
        return cls(rows, cols, columns)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def nnz(self):
        return sum(len(c) for c in self.columns)

    def to_dense(self):
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, value in col.items():
                dense[i][j] = value
        return dense

    def entries(self):
        """Yield ``(row, col, value)`` for every stored entry."""
        for j, col in enumerate(self.columns):
            for i, value in col.items():
                yield i, j, value

    def is_zero(self):
        return all(not c for c in self.columns)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __repr__(self):
        return "RationalMatrix(%d x %d, nnz=%d)" % (self.rows, self.cols, self.nnz())

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError("shape mismatch: %s vs %s" % (self.shape, other.shape))
        out = []
        for a, b in zip(self.columns, other.columns):
            col = dict(a)
            for i, value in b.items():
                v = col.get(i, 0) + sign * value
                if v:
                    col[i] = v
                else:
                    col.pop(i, None)
            out.append(col)
        return RationalMatrix(self.rows, self.cols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return RationalMatrix.zero(self.rows, self.cols)
        return RationalMatrix(
            self.rows, self.cols, [{i: c * v for i, v in col.items()} for col in self.columns]
        )

    def apply(self, vec):
        """Image of a sparse vector (dict index -> value)."""
        out = {}
        for j, x in vec.items():
            for i, value in self.columns[j].items():
                v = out.get(i, 0) + x * value
                if v:
                    out[i] = v
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("cannot compose %s with %s" % (self.shape, other.shape))
        return RationalMatrix(self.rows, other.cols, [self.apply(col) for col in other.columns])

    def transpose(self):
        columns = [{} for _ in range(self.rows)]
        for i, j, value in self.entries():
            columns[i][j] = value
        return RationalMatrix(self.cols, self.rows, columns)

    def rank(self):
        return sparse_rank(self.columns)


def _as_integer_vector(vec):
    den = 1
    for value in vec.values():
        den = _lcm(den, Fraction(value).denominator)
    out = {}
    g = 0
    for key, value in vec.items():
        value = Fraction(value)
        n = value.numerator * (den // value.denominator)
        if n:
            out[key] = n
            g = gcd(g, n)
    if g > 1:
        for key in out:
            out[key] //= g
    return out


def sparse_rank(vectors):
    """Rank of a family of sparse rational vectors, exactly.

    Fraction-free: every vector is scaled to a primitive integer vector and
    reduced against pivots keyed by their smallest index.  Shorter vectors are
    processed first to keep fill-in down.
    """
    work = [v for v in vectors if v]
    work.sort(key=len)
    pivots = {}
    for vec in work:
        v = _as_integer_vector(vec)
        while v:
            k = min(v)
            p = pivots.get(k)
            if p is None:
                pivots[k] = v
                break
            a = p[k]
            c = v[k]
            g = gcd(a, c)
            a //= g
            c //= g
            if a != 1:
                v = {key: a * val for key, val in v.items()}
            for key, val in p.items():
                nv = v.get(key, 0) - c * val
                if nv:
                    v[key] = nv
                else:
                    v.pop(key, None)
            if v:
                g = 0
                for val in v.values():
                    g = gcd(g, val)
                    if g == 1:
                        break
                if g > 1:
                    v = {key: val // g for key, val in v.items()}
    return len(pivots)


class Echelon:
    """Incremental echelon basis of a subspace of Q^(keys).

    Each stored pivot vector has its smallest key as pivot with coefficient 1.
    With ``track=True`` every stored vector carries the combination of input
    vectors that produced it, which is what ``kernel`` needs.
    """

    def __init__(self, track=False):
        self.pivots = {}
        self.track = track
        self.combos = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec, combo=None):
        v = {k: Fraction(x) for k, x in vec.items() if x}
        if combo is not None:
            combo = dict(combo)
        while v:
            k = min(v)
            p = self.pivots.get(k)
            if p is None:
                break
            c = v[k]
            for key, val in p.items():
                nv = v.get(key, 0) - c * val
                if nv:
                    v[key] = nv
                else:
                    v.pop(key, None)
            if combo is not None:
                for key, val in self.combos[k].items():
                    nv = combo.get(key, 0) - c * val
                    if nv:
                        combo[key] = nv
                    else:
                        combo.pop(key, None)
        return v, combo

    def add(self, vec, combo=None):
        """Insert ``vec``; returns True when it enlarged the span."""
        v, combo = self.reduce(vec, combo)
        if not v:
            return False
        self._store(v, combo)
        return True

    def _store(self, v, combo):
        k = min(v)
        c = v[k]
        if c != 1:
            v = {key: val / c for key, val in v.items()}
            if combo is not None:
                combo = {key: val / c for key, val in combo.items()}
        self.pivots[k] = v
        if self.track:
            self.combos[k] = combo

    def __contains__(self, vec):
        return not self.reduce(vec)[0]


def kernel(columns):
    """Basis of the null space of the matrix with the given sparse columns.

    Returned vectors are sparse dicts over column indices, in a deterministic
    order (one per dependent column, scanning left to right).
    """
    ech = Echelon(track=True)
    basis = []
    for j, col in enumerate(columns):
        residual, combo = ech.reduce(col, {j: Fraction(1)})
        if residual:
            ech._store(residual, combo)
        else:
            basis.append(combo)
    return basis


def rref(rows, ncols):
    """Reduced row echelon form of a dense rational matrix.

    Returns ``(reduced_rows, pivot_columns)`` with zero rows dropped; the pivot
    of each row is its leftmost nonzero entry.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots
