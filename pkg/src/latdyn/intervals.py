"""Rational intervals and exact enclosures of the largest root modulus.

A RealInterval is the only approximate object in the package, and it is
approximate in a controlled sense: the endpoints are exact rationals that
provably bracket the quantity.  Every routine producing one takes a width
budget; if the budget cannot be met the routine raises PrecisionError rather
than guessing.

The largest root modulus of a polynomial is bracketed by coefficient bounds
(Fujiwara-style above, elementary-symmetric below) sharpened by repeated
root squaring, whose convergence is geometric in the number of squarings.
Root extractions reduce to exact integer square roots; floating point is used
only to predict how many squarings will be needed, never in the certified
endpoints themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import Polynomial


class PrecisionError(ArithmeticError):
    """A width budget could not be met."""


def int_nth_root(n, k):
    """Largest integer r with r**k <= n (n >= 0, k >= 1); exact.

    Intended for small k (k bounded by a polynomial degree); powers of two go
    through iterated isqrt instead.
    """
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    r = 1 << -(-n.bit_length() // k)  # r**k >= n, within a factor 2 of the root
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _iterated_isqrt(n, e):
    """floor(n ** (1 / 2**e)), exact; floor composes through nested sqrt."""
    for _ in range(e):
        if n <= 1:
            return n
        n = math.isqrt(n)
    return n


def pow2_root_bounds(x, e, bits):
    """(lo, hi) rationals provably enclosing x**(1/2**e), width about 2**-bits.

    Two stages keep the bignums tame: the floor of an iterated square root is
    exact without any scaling (floor composes through nested roots), so the
    chain first runs unscaled until the intermediate drops to a target size,
    and only the short remaining tail is run on a scaled value to win the
    fractional bits.
    """
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Fraction(0), Fraction(1, 1 << bits)
    k = 1 << e
    num, den = x.numerator, x.denominator
    lg = num.bit_length() - den.bit_length()  # log2(x) within +-1
    c = 0
    if lg < k + 2:
        c = (k + 2 - lg + k - 1) // k  # scale by 2**(c*k) so the root is >= 2
    t = (num << (c * k)) // den
    threshold = bits + 16 + max(0, lg // k + 1)
    inter = [t]
    for _ in range(e):
        inter.append(math.isqrt(inter[-1]))
    istar = 0
    for i in range(e + 1):
        if inter[i].bit_length() >= threshold:
            istar = i
        else:
            break
    j = e - istar
    u = inter[istar]
    guard = bits + 6
    lo_int = _iterated_isqrt(u << (guard * (1 << j)), j)
    hi_int = _iterated_isqrt((u + 1) << (guard * (1 << j)), j) + 1
    denom = 1 << (guard + c)
    return Fraction(lo_int, denom), Fraction(hi_int, denom)


def frac_root_bounds(x, k, digits):
    """(lo, hi) rationals enclosing x**(1/k), width 10**-digits; small k only."""
    if x < 0:
        raise ValueError("negative radicand")
    scale = 10**digits
    num = x.numerator * scale**k // x.denominator
    lo = int_nth_root(num, k)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


@dataclass(frozen=True)
class RealInterval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo, hi):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value):
        return cls(value, value)

    def width(self):
        return self.hi - self.lo

    def contains(self, value):
        return self.lo <= value <= self.hi

    def is_point(self):
        return self.lo == self.hi

    def intersect(self, other):
        return RealInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __mul__(self, other):
        """Product of intervals of non-negative quantities."""
        if isinstance(other, RealInterval):
            if self.lo < 0 or other.lo < 0:
                raise ValueError("interval product implemented for non-negative intervals only")
            return RealInterval(self.lo * other.lo, self.hi * other.hi)
        return NotImplemented

    def __pow__(self, e):
        if self.lo < 0:
            raise ValueError("interval power implemented for non-negative intervals only")
        return RealInterval(self.lo**e, self.hi**e)

    # three-valued comparisons; "undecided" when the intervals overlap
    def compare_le(self, other):
        if self.hi <= other.lo:
            return "holds"
        if self.lo > other.hi:
            return "fails"
        return "undecided"

    def compare_ge(self, other):
        return other.compare_le(self)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _modulus_power_bounds(g):
    """Rational (lo, hi) with lo <= max|root of g| <= hi, from coefficients.

    For integer g = sum a_i x^i of degree n:
      upper: 2 * max_k |a_{n-k}/a_n|^(1/k)      (Fujiwara type)
      lower: max_k (|a_{n-k}/a_n| / C(n,k))^(1/k)
    """
    n = g.degree()
    an = abs(g.leading())
    hi = Fraction(0)
    lo = Fraction(0)
    for k in range(1, n + 1):
        a = abs(g.coeffs[n - k])
        if a == 0:
            continue
        q = Fraction(a, an)
        _, up = frac_root_bounds(q, k, 6)
        down, _ = frac_root_bounds(q / math.comb(n, k), k, 6)
        hi = max(hi, 2 * up)
        lo = max(lo, down)
    return lo, hi


def _graeffe_step(g):
    """Root-squaring: returns h with roots {r^2 : g(r) = 0}, content-reduced."""
    even = g.coeffs[0::2]
    odd = g.coeffs[1::2]
    e = Polynomial(even)
    o = Polynomial(odd)
    h = e * e - Polynomial.x() * (o * o)
    return h.primitive()


def _log_fraction(x):
    """Float approximation of ln(x) that survives astronomically large x."""
    num, den = x.numerator, x.denominator
    shift_n = max(num.bit_length() - 53, 0)
    shift_d = max(den.bit_length() - 53, 0)
    return math.log(num >> shift_n) + shift_n * math.log(2) - (
        math.log(den >> shift_d) + shift_d * math.log(2)
    )


def max_root_modulus(poly, width, max_squarings=64):
    """RealInterval of requested width around max{|r| : poly(r) = 0}.

    The endpoints are exact and provably bracket the modulus at every stage;
    the only heuristic is the prediction of how many squarings to run before
    the next (exact, somewhat costly) bound extraction.  Raises
    PrecisionError only when the squaring budget is exhausted.
    """
    if poly.is_zero():
        raise ValueError("zero polynomial has no roots")
    if poly.degree() == 0:
        raise ValueError("constant polynomial has no roots")
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width budget must be positive")
    _, core = poly.shift_out_zero_roots()
    if core.degree() == 0:
        return RealInterval.point(Fraction(0))  # all roots are 0
    g = core.primitive()
    bits = max(8, width.denominator.bit_length() - width.numerator.bit_length() + 4)

    lo_acc = Fraction(0)
    hi_acc = None
    e = 0
    plo, phi = _modulus_power_bounds(g)
    lo_acc, hi_acc = plo, phi
    if hi_acc - lo_acc <= width:
        return RealInterval(lo_acc, hi_acc)
    while True:
        # predict the squaring depth that shrinks the enclosure under budget
        ratio_log = _log_fraction(phi / plo) if plo > 0 else 1.0
        rho_hi = min(float(hi_acc), 1e300)
        target = max(1.0, ratio_log * rho_hi / (0.8 * float(width)))
        e_target = max(e + 1, min(math.ceil(math.log2(target)), max_squarings))
        while e < e_target:
            g = _graeffe_step(g)
            e += 1
        plo, phi = _modulus_power_bounds(g)
        lo = pow2_root_bounds(plo, e, bits)[0] if plo > 0 else Fraction(0)
        hi = pow2_root_bounds(phi, e, bits)[1]
        lo_acc = max(lo_acc, lo)
        hi_acc = min(hi_acc, hi)
        if hi_acc - lo_acc <= width:
            return RealInterval(lo_acc, hi_acc)
        if e >= max_squarings:
            raise PrecisionError(
                f"root modulus not enclosed to width {width} within {max_squarings} squarings"
            )
