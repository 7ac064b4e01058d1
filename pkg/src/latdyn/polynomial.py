"""Exact univariate polynomials with integer or rational coefficients.

Coefficients are stored densely in ascending order and normalized so that a
Fraction with denominator 1 becomes a plain int.  All arithmetic is exact;
nothing here ever touches floating point.

Besides the ring operations this module carries the number-theoretic helpers
used by the entropy classifier (cyclotomic polynomials, Euler phi) and the
exact root-location predicates (Sturm counting, the all-roots-on-the-unit-
circle test via the palindromic substitution y = x + 1/x).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple  # ascending; () is the zero polynomial

    def __init__(self, coeffs=()):
        if any(isinstance(c, float) for c in coeffs):
            raise TypeError("float coefficients are not exact; use int or Fraction")
        cs = [_norm_coeff(Fraction(c) if not isinstance(c, int) else c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # constructors ----------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls((0,) * degree + (coeff,))

    # inspection ------------------------------------------------------------

    def degree(self):
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    def is_monic(self):
        return not self.is_zero() and self.leading() == 1

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    def __call__(self, x):
        """Evaluate by Horner; works for numbers and for square matrices."""
        if not self.coeffs:
            return 0 * x if not hasattr(x, "dim") else x - x
        if hasattr(x, "dim"):  # matrix argument
            from .matrix import IntMatrix, RatMatrix

            cls = IntMatrix if isinstance(x, IntMatrix) and self.is_integral() else RatMatrix
            xx = x if cls is IntMatrix else (x.to_rational() if isinstance(x, IntMatrix) else x)
            acc = cls.identity(x.dim) * self.coeffs[-1]
            for c in reversed(self.coeffs[:-1]):
                acc = acc * xx + cls.identity(x.dim) * c
            return acc
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, e):
        result = Polynomial.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return NotImplemented

    def __divmod__(self, other):
        """Exact rational division with remainder."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = Polynomial.zero()
        r = self
        d = other.degree()
        lead = Fraction(other.leading())
        while not r.is_zero() and r.degree() >= d:
            shift = r.degree() - d
            coeff = Fraction(r.leading()) / lead
            term = Polynomial.monomial(shift, coeff)
            q = q + term
            r = r - term * other
        return q, r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{self} is not divisible by {other}")
        return q

    def divides(self, other):
        if self.is_zero():
            return other.is_zero()
        return divmod(other, self)[1].is_zero()

    # calculus-side helpers ---------------------------------------------------

    def derivative(self):
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def reversed_coeffs(self):
        """x^deg * p(1/x): coefficient sequence reversed."""
        return Polynomial(tuple(reversed(self.coeffs)))

    def scale_roots(self, c):
        """p(c*x); roots of the result are roots of p divided by c."""
        return Polynomial([a * c**i for i, a in enumerate(self.coeffs)])

    def shift_out_zero_roots(self):
        """Divide out x^k so the constant term is nonzero; returns (k, quotient)."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        k = 0
        cs = list(self.coeffs)
        while cs[0] == 0:
            cs.pop(0)
            k += 1
        return k, Polynomial(cs)

    def primitive(self):
        """Integer polynomial with content 1, positive leading coefficient.

        Scales by a rational, so the root set is unchanged.
        """
        if self.is_zero():
            return self
        den = math.lcm(*(Fraction(c).denominator for c in self.coeffs))
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        g = math.gcd(*(abs(c) for c in ints))
        ints = [c // g for c in ints]
        if ints[-1] < 0:
            ints = [-c for c in ints]
        return Polynomial(ints)

    def monic(self):
        if self.is_zero():
            raise ValueError("zero polynomial")
        lead = Fraction(self.leading())
        return Polynomial([Fraction(c) / lead for c in self.coeffs])

    def content_gcd(self, other):
        """gcd via the Euclidean algorithm, content-normalized over the integers."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.primitive()

    def squarefree_decomposition(self):
        """Return (gcd(p, p'), squarefree part p / gcd), both content-normalized."""
        if self.is_zero():
            raise ValueError("zero polynomial has no squarefree part")
        g = self.content_gcd(self.derivative())
        if g.degree() == 0:
            return Polynomial.one(), self.primitive() if self.is_integral() else self
        sf = self.exact_div(g.monic())
        if self.is_integral():
            sf = sf.primitive()
        return g, sf

    def is_squarefree(self):
        return self.content_gcd(self.derivative()).degree() <= 0

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            sign = " + " if (c > 0 and parts) else (" - " if parts else ("-" if c < 0 else ""))
            mag = abs(c)
            term = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coeff = str(mag) if (i == 0 or mag != 1) else ""
            parts.append(sign + coeff + term)
        return "".join(parts)


# ---------------------------------------------------------------------------
# number-theoretic helpers


def euler_phi(d):
    """Euler's totient, by trial-division factorization."""
    if d < 1:
        raise ValueError("euler_phi needs d >= 1")
    result = d
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if n > 1:
        result -= result // n
    return result


@functools.lru_cache(maxsize=32)
def phi_sieve(limit):
    """phi(d) for all d in 0..limit as a tuple (phi[0] unused)."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return tuple(phi)


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(d):
    """The d-th cyclotomic polynomial, by exact division of x^d - 1."""
    if d < 1:
        raise ValueError("cyclotomic index must be >= 1")
    poly = Polynomial((-1,) + (0,) * (d - 1) + (1,))
    for e in range(1, d):
        if d % e == 0:
            poly = poly.exact_div(cyclotomic_polynomial(e))
    return poly


# ---------------------------------------------------------------------------
# exact real root counting (Sturm) and the unit-circle predicate


def sturm_sequence(p):
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree() > 0:
        seq.append(-(seq[-2] % seq[-1]))
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots_in(p, a, b):
    """Number of distinct real roots of p in the open interval (a, b).

    Requires p(a) != 0 and p(b) != 0; p need not be squarefree (the count is
    of distinct roots of the squarefree part).
    """
    _, sf = p.squarefree_decomposition()
    if sf(a) == 0 or sf(b) == 0:
        raise ValueError("Sturm endpoints must not be roots")
    seq = sturm_sequence(sf)
    va = _sign_changes([q(a) for q in seq])
    vb = _sign_changes([q(b) for q in seq])
    return va - vb


def _strip_root(p, root_poly):
    mult = 0
    while root_poly.divides(p):
        p = p.exact_div(root_poly)
        mult += 1
    return p, mult


def _palindromic_to_interval_poly(h):
    """For palindromic h of even degree 2m, the degree-m polynomial q with
    h(x) = x^m q(x + 1/x).  Uses c_k(y) = x^k + x^{-k}, c_{k+1} = y c_k - c_{k-1}.
    """
    m = h.degree() // 2
    cs = [Fraction(c) for c in h.coeffs]
    # c_k polynomials in y
    ck = [Polynomial((2,)), Polynomial.x()]
    while len(ck) <= m:
        ck.append(Polynomial.x() * ck[-1] - ck[-2])
    q = Polynomial((cs[m],))
    for k in range(1, m + 1):
        q = q + cs[m + k] * ck[k]
    return q


def all_roots_on_unit_circle(p):
    """Exact predicate: every complex root of p has modulus exactly 1.

    Counted with multiplicity; works for any rational-coefficient polynomial.
    The route: such a polynomial must be palindromic up to sign, roots at
    x = +-1 are stripped, and the remaining even palindromic factor has all
    roots on the circle iff its image under y = x + 1/x has only real roots
    in (-2, 2), which Sturm counting decides exactly.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree() == 0:
        return True
    if p.constant_term() == 0:
        return False  # root at 0
    rev = p.reversed_coeffs()
    lead = Fraction(p.leading())
    cst = Fraction(p.constant_term())
    # roots all on the circle force x^n p(1/x) = +- (cst/lead-normalized) p
    if rev * lead != p * cst and rev * lead != -(p * cst):
        return False
    h, _ = _strip_root(p, Polynomial((-1, 1)))
    h, _ = _strip_root(h, Polynomial((1, 1)))
    if h.degree() == 0:
        return True
    if h.degree() % 2 == 1:
        return False
    # h must now be genuinely palindromic
    hl = Fraction(h.leading())
    hc = Fraction(h.constant_term())
    if h.reversed_coeffs() * hl != h * hc:
        return False
    if hc != hl:
        # anti-palindromic is impossible once +-1 roots are gone
        return False
    q = _palindromic_to_interval_poly(h)
    _, qsf = q.squarefree_decomposition()
    if qsf(Fraction(2)) == 0 or qsf(Fraction(-2)) == 0:
        return False  # would mean a residual root at +-1
    return count_real_roots_in(qsf, Fraction(-2), Fraction(2)) == qsf.degree()
