"""
Exact univariate arithmetic: integer polynomials, square matrices of integer
polynomials, and power series over Q truncated at an explicit order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Tuple

from quiverhh.errors import ArithmeticInvariantError


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _term(c, k, var):
    if k == 0:
        return str(c)
    mono = var if k == 1 else "%s^%d" % (var, k)
    if c == 1:
        return mono
    if Fraction(c).denominator == 1:
        return "%s%s" % (c, mono)
    return "(%s)%s" % (c, mono)


def format_terms(coeffs, var="x"):
    """Human-readable sum of terms, e.g. ``1 + 2x + x^2`` or ``x - (1/2)x^2``."""
    out = ""
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if not out:
            out = _term(c, k, var) if c > 0 else "-" + _term(-c, k, var)
        elif c > 0:
            out += " + " + _term(c, k, var)
        else:
            out += " - " + _term(-c, k, var)
    return out or "0"


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: Tuple[int, ...]

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        for c in coeffs:
            if int(c) != c:
                raise ValueError("non-integer coefficient %r" % (c,))
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, c, k):
        return cls((0,) * k + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return self.coeffs == (1,)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] - other[k] for k in range(n))

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(other * c for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def exact_div(self, other):
        """Quotient ``self / other``; raises unless the division is exact over Z."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            if rem:
                raise ArithmeticInvariantError("inexact polynomial division")
            return IntPolynomial()
        q = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        if any(rem) or any(c.denominator != 1 for c in q):
            raise ArithmeticInvariantError("inexact polynomial division")
        return IntPolynomial(int(c) for c in q)

    def __str__(self):
        return format_terms(self.coeffs)

    def __repr__(self):
        return "IntPolynomial(%s)" % (list(self.coeffs),)


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))


@dataclass(frozen=True)
class IntPolynomialMatrix:
    entries: Tuple[Tuple[IntPolynomial, ...], ...]

    def __init__(self, entries):
        rows = tuple(tuple(e if isinstance(e, IntPolynomial) else IntPolynomial(e) for e in row) for row in entries)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("polynomial matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self):
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self):
        n = self.size
        return IntPolynomialMatrix([[self.entries[j][i] for j in range(n)] for i in range(n)])

    def evaluate(self, x):
        return [[e(x) for e in row] for row in self.entries]

    def coefficient_matrix(self, k):
        return [[e[k] for e in row] for row in self.entries]

    def minor(self, i, j):
        return IntPolynomialMatrix(
            [[e for c, e in enumerate(row) if c != j] for r, row in enumerate(self.entries) if r != i]
        )

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries) + "]"


def _det_cofactor(rows):
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ZERO
    for j in range(n):
        if not rows[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _det_cofactor(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(rows):
    m = [list(row) for row in rows]
    n = len(m)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1] if n else ONE
    return det if sign > 0 else -det


def det_poly_matrix(M, method=None):
    """Exact determinant over Z[x].

    Cofactor expansion up to 4x4, fraction-free Bareiss elimination above;
    ``method`` ("cofactor" or "bareiss") forces one of them.
    """
    rows = [list(row) for row in M.entries]
    if method is None:
        method = "cofactor" if M.size <= 4 else "bareiss"
    if method == "cofactor":
        return _det_cofactor(rows)
    if method == "bareiss":
        return _det_bareiss(rows)
    raise ValueError("unknown determinant method %r" % method)


def det_leibniz(M):
    """Permutation-expansion determinant (slow; used as an oracle)."""
    n = M.size
    total = ZERO
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = ONE
        for i in range(n):
            term = term * M.entries[i][perm[i]]
        total = total - term if inversions % 2 else total + term
    return total


def adjugate(M):
    n = M.size
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            d = det_poly_matrix(M.minor(i, j)) if n > 1 else ONE
            out[j][i] = d if (i + j) % 2 == 0 else -d
    return IntPolynomialMatrix(out)


@dataclass(frozen=True)
class TruncatedRationalSeries:
    """Power series ``sum a_k x^k`` known exactly for ``k <= order``."""

    order: int
    coeffs: Tuple[Fraction, ...]

    def __init__(self, order, coeffs=()):
        if order < 0:
            raise ValueError("negative truncation order")
        cs = [Fraction(c) for c in list(coeffs)[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_polynomial(cls, p, order):
        return cls(order, p.coeffs if isinstance(p, IntPolynomial) else p)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedRationalSeries(order, self.coeffs)

    def _common(self, other):
        if isinstance(other, IntPolynomial):
            other = TruncatedRationalSeries.from_polynomial(other, self.order)
        n = min(self.order, other.order)
        return n, other

    def __add__(self, other):
        n, other = self._common(other)
        return TruncatedRationalSeries(n, [self[k] + other[k] for k in range(n + 1)])

    def __sub__(self, other):
        n, other = self._common(other)
        return TruncatedRationalSeries(n, [self[k] - other[k] for k in range(n + 1)])

    def __neg__(self):
        return TruncatedRationalSeries(self.order, [-c for c in self.coeffs])

    def scale(self, c):
        c = Fraction(c)
        return TruncatedRationalSeries(self.order, [c * a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n, other = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self[i]
            if a:
                for j in range(n + 1 - i):
                    b = other[j]
                    if b:
                        out[i + j] += a * b
        return TruncatedRationalSeries(n, out)

    __rmul__ = __mul__

    def substitute_power(self, m, order=None):
        """The series f(x^m), truncated at ``order`` (defaults to ``self.order``)."""
        if order is None:
            order = self.order
        if order // m > self.order:
            raise ValueError("not enough terms to substitute x^%d up to order %d" % (m, order))
        out = [Fraction(0)] * (order + 1)
        for k in range(order // m + 1):
            out[k * m] = self[k]
        return TruncatedRationalSeries(order, out)

    def is_zero(self):
        return not any(self.coeffs)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coeffs(self):
        if not self.is_integral():
            raise ArithmeticInvariantError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def nonzero_indices(self):
        return [k for k, c in enumerate(self.coeffs) if c]

    def __str__(self):
        return format_terms(self.coeffs) + " + O(x^%d)" % (self.order + 1)


def series_log(p, order):
    """log p as a truncated series, for p with constant term 1.

    Expands ``sum_{m>=1} (-1)^(m+1) (p-1)^m / m``; since p-1 has no constant
    term only ``m <= order`` contribute.
    """
    if p[0] != 1:
        raise ValueError("series_log needs constant term 1, got %r" % p[0])
    q = TruncatedRationalSeries.from_polynomial(p, order) - TruncatedRationalSeries(order, [1])
    total = TruncatedRationalSeries(order)
    power = TruncatedRationalSeries(order, [1])
    for m in range(1, order + 1):
        power = power * q
        if power.is_zero():
            break
        total = total + power.scale(Fraction((-1) ** (m + 1), m))
    return total


def series_exp(f):
    """exp f for f with zero constant term, via g' = f' g."""
    if f[0] != 0:
        raise ValueError("series_exp needs zero constant term")
    n = f.order
    g = [Fraction(0)] * (n + 1)
    g[0] = Fraction(1)
    for k in range(1, n + 1):
        g[k] = sum(j * f[j] * g[k - j] for j in range(1, k + 1)) / k
    return TruncatedRationalSeries(n, g)


def series_derivative(f):
    if f.order == 0:
        return TruncatedRationalSeries(0)
    return TruncatedRationalSeries(f.order - 1, [k * f[k] for k in range(1, f.order + 1)])


def series_inverse(p, order):
    """1/p mod x^(order+1) for an integer polynomial (or series) with p(0) = +-1."""
    c0 = p[0]
    if c0 not in (1, -1):
        raise ValueError("constant term %r is not a unit in Z" % c0)
    q = [Fraction(0)] * (order + 1)
    q[0] = Fraction(c0)  # 1/c0 == c0 for units
    for k in range(1, order + 1):
        q[k] = -c0 * sum(p[j] * q[k - j] for j in range(1, k + 1))
    return TruncatedRationalSeries(order, q)


def matrix_inverse_series(M, order):
    """Entrywise series of M^{-1} = adj(M) / det(M), for M(0) the identity."""
    n = M.size
    if M.coefficient_matrix(0) != [[int(i == j) for j in range(n)] for i in range(n)]:
        raise ValueError("constant-term matrix is not the identity")
    inv_det = series_inverse(det_poly_matrix(M), order)
    adj = adjugate(M)
    return [[inv_det * adj[i, j] for j in range(n)] for i in range(n)]


def series_matrix_product(A, B):
    """Product of two square matrices of truncated series (lists of lists)."""
    n = len(A)
    order = min(A[0][0].order, B[0][0].order)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = TruncatedRationalSeries(order)
            for k in range(n):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def poly_matrix_as_series(M, order):
    return [[TruncatedRationalSeries.from_polynomial(e, order) for e in row] for row in M.entries]
