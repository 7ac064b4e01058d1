"""Exact dense matrices over the integers and the rationals.

Everything here is arbitrary precision: integer matrices use Python ints,
rational matrices use ``fractions.Fraction``.  Matrices are immutable values
(tuples of tuples), so they are hashable, safe to share, and every operation
returns a fresh matrix.

The characteristic polynomial is computed with the Berkowitz scheme, which is
division free, so all intermediate values of an integer matrix stay integers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import Polynomial


def _as_rows(entries):
    return tuple(tuple(row) for row in entries)


def _berkowitz(rows):
    """Division-free characteristic polynomial; coefficients descending.

    Returns [1, c_{n-1}, ..., c_0] with char(x) = x^n + c_{n-1} x^{n-1} + ...
    """
    n = len(rows)
    c = [1, -rows[0][0]]
    for r in range(2, n + 1):
        sub = [row[: r - 1] for row in rows[: r - 1]]
        bottom = rows[r - 1][: r - 1]
        right = [rows[i][r - 1] for i in range(r - 1)]
        # Toeplitz column: 1, -a_rr, -(bottom . sub^k . right)
        t = [1, -rows[r - 1][r - 1]]
        v = right
        for k in range(2, r + 1):
            if k > 2:
                v = [sum(sub[i][j] * v[j] for j in range(r - 1)) for i in range(r - 1)]
            t.append(-sum(bottom[j] * v[j] for j in range(r - 1)))
        c = [
            sum(t[i - j] * c[j] for j in range(max(0, i - r), min(i, r - 1) + 1))
            for i in range(r + 1)
        ]
    return c


def _det_bareiss(rows):
    """Fraction-free determinant of an integer matrix (exact divisions only)."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for i in range(n):
        if a[i][i] == 0:
            for j in range(i + 1, n):
                if a[j][i] != 0:
                    a[i], a[j] = a[j], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[-1][-1]


def rref(rows):
    """Reduced row echelon form over the rationals.

    Returns (rows, pivot_columns).  Pivots are chosen leftmost-first, which is
    the tie-breaking convention used everywhere a basis must be deterministic.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [row[:] for row in m], pivots


def kernel_basis(rows, ncols):
    """Right kernel basis of a matrix given as rows; deterministic RREF form."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return basis


class _SpanTracker:
    """Incremental rational span with leftmost-pivot reduction."""

    def __init__(self, length):
        self.length = length
        self.rows = []  # echelonized, pivot column strictly increasing per row order of insertion
        self.pivots = []

    def reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec):
        """Add vec to the span; returns True when it was independent."""
        v = self.reduce(vec)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv for x in v]
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    @property
    def dim(self):
        return len(self.rows)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable square matrix with arbitrary-precision integer entries."""

    rows: tuple

    def __init__(self, entries):
        rows = _as_rows(entries)
        if any(len(r) != len(rows) for r in rows) or not rows:
            raise ValueError("matrix must be square and non-empty")
        if any(not isinstance(x, int) for r in rows for x in r):
            raise TypeError("IntMatrix entries must be ints")
        object.__setattr__(self, "rows", rows)

    # construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, dim):
        return cls([[int(i == j) for j in range(dim)] for i in range(dim)])

    @classmethod
    def zero(cls, dim):
        return cls([[0] * dim for _ in range(dim)])

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        return cls([[entries[i] if i == j else 0 for j in range(len(entries))] for i in range(len(entries))])

    @classmethod
    def unit(cls, dim, i, j):
        """Matrix with a single 1 in position (i, j)."""
        return cls([[int(r == i and c == j) for c in range(dim)] for r in range(dim)])

    @classmethod
    def elementary(cls, dim, i, j, value=1):
        """Identity plus ``value`` in off-diagonal position (i, j)."""
        if i == j:
            raise ValueError("elementary matrix needs i != j")
        return cls.identity(dim) + cls.unit(dim, i, j) * value

    @classmethod
    def companion(cls, poly):
        """Companion matrix of a monic integer polynomial."""
        if not poly.is_monic():
            raise ValueError("companion matrix needs a monic polynomial")
        n = poly.degree()
        coeffs = [int(c) for c in poly.coeffs[:-1]]
        rows = [[0] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = 1
        for i in range(n):
            rows[i][n - 1] = -coeffs[i]
        return cls(rows)

    @classmethod
    def block_diagonal(cls, blocks):
        dims = [b.dim for b in blocks]
        total = sum(dims)
        rows = [[0] * total for _ in range(total)]
        off = 0
        for b in blocks:
            for i in range(b.dim):
                for j in range(b.dim):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.dim
        return cls(rows)

    # basic protocol --------------------------------------------------------

    @property
    def dim(self):
        return len(self.rows)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __add__(self, other):
        return IntMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return IntMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            n = self.dim
            if other.dim != n:
                raise ValueError("dimension mismatch")
            bt = list(zip(*other.rows))
            return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.rows])
        if isinstance(other, int):
            return IntMatrix([[a * other for a in r] for r in self.rows])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = IntMatrix.identity(self.dim)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def transpose(self):
        return IntMatrix(list(zip(*self.rows)))

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.dim))

    def is_identity(self):
        return all(self.rows[i][j] == int(i == j) for i in range(self.dim) for j in range(self.dim))

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def flatten(self):
        return tuple(x for r in self.rows for x in r)

    # exact linear algebra ---------------------------------------------------

    def det(self):
        return _det_bareiss(self.rows)

    def is_unimodular(self):
        return abs(self.det()) == 1

    def char_poly(self) -> Polynomial:
        """Monic characteristic polynomial det(xI - self), exact."""
        desc = _berkowitz(self.rows)
        return Polynomial(list(reversed(desc)))

    def minimal_poly(self) -> Polynomial:
        return self.to_rational().minimal_poly()

    def inverse(self):
        """Exact inverse; integer result requires |det| = 1."""
        inv = self.to_rational().inverse()
        if any(x.denominator != 1 for r in inv.rows for x in r):
            raise ValueError("inverse is not integral (matrix not unimodular)")
        return IntMatrix([[int(x) for x in r] for r in inv.rows])

    def exterior_power(self, k):
        """Compound matrix on k-fold wedges, rows/cols in lexicographic subset order.

        Multiplicative by the Cauchy-Binet formula, so it models the induced
        action on graded pieces when no explicit grading is available.
        """
        n = self.dim
        if not 0 <= k <= n:
            raise ValueError(f"exterior power k={k} out of range 0..{n}")
        if k == 0:
            return IntMatrix([[1]])
        subsets = list(itertools.combinations(range(n), k))
        rows = []
        for rsub in subsets:
            row = []
            for csub in subsets:
                minor = [[self.rows[i][j] for j in csub] for i in rsub]
                row.append(_det_bareiss(minor))
            rows.append(row)
        return IntMatrix(rows)

    def to_rational(self):
        return RatMatrix([[Fraction(x) for x in r] for r in self.rows])

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


@dataclass(frozen=True)
class RatMatrix:
    """Immutable square matrix with exact rational entries."""

    rows: tuple

    def __init__(self, entries):
        rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if any(len(r) != len(rows) for r in rows) or not rows:
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, dim):
        return cls([[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)])

    @classmethod
    def zero(cls, dim):
        return cls([[Fraction(0)] * dim for _ in range(dim)])

    @property
    def dim(self):
        return len(self.rows)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __add__(self, other):
        return RatMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return RatMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return RatMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            bt = list(zip(*other.rows))
            return RatMatrix([[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.rows])
        if isinstance(other, IntMatrix):
            return self * other.to_rational()
        if isinstance(other, (int, Fraction)):
            return RatMatrix([[a * other for a in r] for r in self.rows])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, IntMatrix):
            return other.to_rational() * self
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = RatMatrix.identity(self.dim)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def transpose(self):
        return RatMatrix(list(zip(*self.rows)))

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def is_identity(self):
        return all(self.rows[i][j] == int(i == j) for i in range(self.dim) for j in range(self.dim))

    def flatten(self):
        return tuple(x for r in self.rows for x in r)

    def det(self):
        # Bareiss works verbatim over the rationals (divisions stay exact).
        a = [list(r) for r in self.rows]
        n = len(a)
        sign = 1
        prev = Fraction(1)
        for i in range(n):
            if a[i][i] == 0:
                for j in range(i + 1, n):
                    if a[j][i] != 0:
                        a[i], a[j] = a[j], a[i]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for r in range(i + 1, n):
                for c in range(i + 1, n):
                    a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev
                a[r][i] = Fraction(0)
            prev = a[i][i]
        return sign * a[-1][-1]

    def inverse(self):
        n = self.dim
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return RatMatrix([row[n:] for row in red[:n]])

    def char_poly(self) -> Polynomial:
        desc = _berkowitz(self.rows)
        return Polynomial(list(reversed(desc)))

    def minimal_poly(self) -> Polynomial:
        """Monic minimal polynomial via the first linear dependence among powers."""
        n = self.dim
        powers = [RatMatrix.identity(n)]
        span = _SpanTracker(n * n)
        span.add(powers[0].flatten())
        while True:
            nxt = powers[-1] * self
            if span.contains(nxt.flatten()):
                break
            span.add(nxt.flatten())
            powers.append(nxt)
        k = len(powers)
        # solve sum_j x_j A^j = A^k exactly
        cols = [p.flatten() for p in powers]
        target = (powers[-1] * self).flatten()
        system = [[cols[j][i] for j in range(k)] + [target[i]] for i in range(n * n)]
        red, pivots = rref(system)
        x = [Fraction(0)] * k
        for r, p in enumerate(pivots):
            if p < k:
                x[p] = red[r][k]
        coeffs = [-xi for xi in x] + [Fraction(1)]
        return Polynomial(coeffs)

    def kernel(self):
        """Basis of the right kernel as tuples of Fractions (RREF convention)."""
        return kernel_basis([list(r) for r in self.rows], self.dim)

    def rank(self):
        _, pivots = rref([list(r) for r in self.rows])
        return len(pivots)

    def is_integral(self):
        return all(x.denominator == 1 for r in self.rows for x in r)

    def to_int(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix([[int(x) for x in r] for r in self.rows])

    def max_abs_row_sum(self):
        """Operator norm for the sup norm on vectors; exact Fraction."""
        return max(sum(abs(x) for x in r) for r in self.rows)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def conjugate(g, u):
    """u^{-1} g u in whichever exact type fits both arguments."""
    if isinstance(g, IntMatrix) and isinstance(u, IntMatrix):
        return u.inverse() * g * u
    gr = g.to_rational() if isinstance(g, IntMatrix) else g
    ur = u.to_rational() if isinstance(u, IntMatrix) else u
    return ur.inverse() * gr * ur


def binomial(n, k):
    return math.comb(n, k)
