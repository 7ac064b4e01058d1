"""Entropy classification of unimodular integer matrices.

A unimodular integer matrix has spectral radius 1 exactly when its
characteristic polynomial is a product of cyclotomic polynomials: the
polynomial is monic with constant term of absolute value 1, so roots of
modulus <= 1 everywhere force every root to be a root of unity.  Stripping
cyclotomic factors to maximal multiplicity therefore decides, exactly, whether
a matrix is quasi-unipotent, and the surviving residual certifies positive
entropy together with a rational enclosure of its largest root modulus.

The uniform exponent machinery provides, for each lattice rank r, an exponent
m such that g^m is unipotent for every quasi-unipotent g of size r: the
cyclotomic indices that can occur are exactly the d with phi(d) <= r, a
finite list because phi(d) >= sqrt(d/2), so enumerating d <= 2 r^2 suffices.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .intervals import RealInterval, max_root_modulus
from .matrix import IntMatrix
from .polynomial import Polynomial, cyclotomic_polynomial, euler_phi, phi_sieve

__all__ = [
    "EntropyKind",
    "EntropyClassification",
    "UniformExponent",
    "GradedRepresentation",
    "euler_phi",
    "cyclotomic_polynomial",
    "uniform_exponent",
    "strip_cyclotomic_factors",
    "classify_entropy",
    "dynamical_degrees",
    "check_degree_inequalities",
]

DEFAULT_WIDTH = Fraction(1, 1024)


class EntropyKind(enum.Enum):
    UNIPOTENT = "unipotent"
    QUASI_UNIPOTENT = "quasi_unipotent"
    POSITIVE_ENTROPY = "positive_entropy"


@dataclass(frozen=True)
class EntropyClassification:
    kind: EntropyKind
    cyclotomic_profile: tuple  # ((d, multiplicity), ...) sorted by d
    residual: Polynomial
    quasi_order: int | None = None  # smallest power that is unipotent
    spectral_radius: RealInterval | None = None

    def is_zero_entropy(self):
        return self.kind is not EntropyKind.POSITIVE_ENTROPY


@dataclass(frozen=True)
class UniformExponent:
    rank: int
    d_list: tuple  # all d with phi(d) <= rank
    m_paper: int  # product of d_list
    m_lcm: int  # lcm of d_list; divides m_paper and already kills every quasi-order

    def search_bound(self):
        return 2 * self.rank * self.rank


def uniform_exponent(r) -> UniformExponent:
    """All cyclotomic indices d with phi(d) <= r, with their product and lcm.

    phi(d) >= sqrt(d/2) for every d >= 1, so the enumeration over d <= 2 r^2
    is exhaustive.
    """
    if r < 1:
        raise ValueError("rank must be >= 1")
    bound = 2 * r * r
    phis = phi_sieve(bound)
    d_list = tuple(d for d in range(1, bound + 1) if phis[d] <= r)
    m_paper = math.prod(d_list)
    m_lcm = math.lcm(*d_list)
    return UniformExponent(rank=r, d_list=d_list, m_paper=m_paper, m_lcm=m_lcm)


@functools.lru_cache(maxsize=4096)
def strip_cyclotomic_factors(f):
    """Divide out every cyclotomic factor of f to maximal multiplicity.

    f must be monic with |f(0)| = 1 (the unimodular case).  Returns
    (profile, residual) where profile is a sorted tuple of (d, multiplicity)
    and residual is monic.  A constant residual certifies that every root of
    f is a root of unity; a non-constant one certifies a root of modulus > 1.
    """
    if f.is_zero() or not f.is_monic():
        raise ValueError("input must be monic")
    if abs(f.constant_term()) != 1:
        raise ValueError(f"|constant term| must be 1, got {f.constant_term()}")
    deg = f.degree()
    if deg == 0:
        return (), f
    bound = 2 * deg * deg
    phis = phi_sieve(bound)
    profile = []
    residual = f
    for d in range(1, bound + 1):
        if phis[d] > deg or residual.degree() == 0:
            continue
        if phis[d] > residual.degree():
            continue
        phi_d = cyclotomic_polynomial(d)
        mult = 0
        while phi_d.divides(residual):
            residual = residual.exact_div(phi_d)
            mult += 1
        if mult:
            profile.append((d, mult))
    return tuple(profile), residual


def classify_entropy(g, width=DEFAULT_WIDTH) -> EntropyClassification:
    """Classify a unimodular integer matrix as unipotent, quasi-unipotent, or
    positive entropy.

    For the zero-entropy kinds the result is cross-checked against the
    independent certificate (g^q - I)^dim = 0 with q the lcm of the cyclotomic
    indices; for positive entropy the spectral radius comes back as a rational
    enclosure of the requested width.
    """
    if not isinstance(g, IntMatrix):
        raise TypeError("entropy classification is defined for integer matrices")
    if not g.is_unimodular():
        raise ValueError(f"matrix is not unimodular (det = {g.det()})")
    profile, residual = strip_cyclotomic_factors(g.char_poly())
    if residual.degree() > 0:
        rho = max_root_modulus(residual, width)
        return EntropyClassification(
            kind=EntropyKind.POSITIVE_ENTROPY,
            cyclotomic_profile=profile,
            residual=residual,
            spectral_radius=rho,
        )
    quasi_order = math.lcm(*(d for d, _ in profile))
    # independent certificate: g^q unipotent, verified exactly
    power = g**quasi_order
    delta = power - IntMatrix.identity(g.dim)
    if not (delta**g.dim).is_zero():
        raise AssertionError("internal certificate (g^q - I)^dim = 0 failed; this is a bug")
    kind = EntropyKind.UNIPOTENT if profile == ((1, g.dim),) else EntropyKind.QUASI_UNIPOTENT
    return EntropyClassification(
        kind=kind,
        cyclotomic_profile=profile,
        residual=residual,
        quasi_order=quasi_order,
    )


@dataclass(frozen=True)
class GradedRepresentation:
    """Per-degree integer matrices for a list of group generators.

    Degree 1 must equal the generators.  Degree 0 is the 1x1 identity and
    degree n the 1x1 determinant, matching the convention that the extreme
    graded pieces are one-dimensional.  When no explicit grading is supplied
    the compound-matrix model (exterior powers) is used; that is a modeling
    choice, documented here, preserving the multiplicative structure the
    series computations rely on.
    """

    n: int
    degrees: tuple  # degrees[k] = tuple of IntMatrix, one per generator, k = 0..n

    def __init__(self, n, degrees):
        degrees = tuple(tuple(ms) for ms in degrees)
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        if len(degrees) != n + 1:
            raise ValueError(f"need matrices for degrees 0..{n}, got {len(degrees)} lists")
        ngen = len(degrees[1])
        for k, ms in enumerate(degrees):
            if len(ms) != ngen:
                raise ValueError(f"degree {k} has {len(ms)} matrices, expected {ngen}")
            dims = {m.dim for m in ms}
            if len(dims) > 1:
                raise ValueError(f"degree {k} matrices have inconsistent sizes {sorted(dims)}")
        if any(m.dim != 1 for m in degrees[0]) or any(m.dim != 1 for m in degrees[n]):
            raise ValueError("degrees 0 and n must be 1x1 by convention")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degrees", degrees)

    @property
    def num_generators(self):
        return len(self.degrees[1])

    @classmethod
    def compound_model(cls, generators, n):
        """Exterior-power model of the graded action for unimodular generators."""
        generators = list(generators)
        if not generators:
            raise ValueError("need at least one generator")
        r = generators[0].dim
        if n - 1 > r:
            raise ValueError(f"compound model needs n - 1 <= rank, got n = {n}, rank = {r}")
        degrees = []
        for k in range(n + 1):
            if k == 0:
                degrees.append(tuple(IntMatrix([[1]]) for _ in generators))
            elif k == n:
                degrees.append(tuple(IntMatrix([[g.det()]]) for g in generators))
            else:
                degrees.append(tuple(g.exterior_power(k) for g in generators))
        return cls(n, degrees)

    def generator_matrices(self, k):
        return self.degrees[k]

    def spot_check_homomorphy(self, max_len=4, cap=200):
        """Cross-degree consistency on short words.

        Whenever two distinct words agree in degree 1 they must agree in every
        degree; in particular words that collapse to the identity must do so
        in all degrees.  Returns the number of collisions checked.
        """
        words = [((), tuple(IntMatrix.identity(ms[0].dim) for ms in self.degrees))]
        seen = {}
        checked = 0
        frontier = words
        for _ in range(max_len):
            nxt = []
            for word, mats in frontier:
                for i in range(self.num_generators):
                    nword = word + (i,)
                    nmats = tuple(m * self.degrees[k][i] for k, m in enumerate(mats))
                    key = nmats[1].rows
                    if key in seen:
                        other = seen[key]
                        checked += 1
                        for k in range(len(self.degrees)):
                            if nmats[k].rows != other[k].rows:
                                raise ValueError(
                                    f"grading inconsistency: words agree in degree 1 "
                                    f"but differ in degree {k}"
                                )
                    else:
                        seen[key] = nmats
                        nxt.append((nword, nmats))
                    if len(seen) >= cap:
                        return checked
            frontier = nxt
        return checked


def dynamical_degrees(source, n=None, generator=0, width=DEFAULT_WIDTH):
    """Sequence of degree-k growth rates d_0..d_n as rational enclosures.

    ``source`` is either a GradedRepresentation (with ``generator`` selecting
    the column) or a single unimodular IntMatrix, in which case the compound
    model with ambient dimension ``n`` is used.  Quasi-unipotent pieces give
    the exact point interval [1, 1].
    """
    if isinstance(source, GradedRepresentation):
        rep = source
    else:
        if n is None:
            raise ValueError("ambient dimension n required for a bare matrix")
        if not source.is_unimodular():
            raise ValueError(f"matrix is not unimodular (det = {source.det()})")
        rep = GradedRepresentation.compound_model([source], n)
        generator = 0
    out = []
    for k in range(rep.n + 1):
        m = rep.generator_matrices(k)[generator]
        if m.dim == 1:
            out.append(RealInterval.point(abs(m.rows[0][0])))
            continue
        profile, residual = strip_cyclotomic_factors(m.char_poly())
        if residual.degree() == 0:
            out.append(RealInterval.point(Fraction(1)))
        else:
            out.append(max_root_modulus(residual, width))
    return out


@dataclass(frozen=True)
class DegreeInequalityReport:
    generator: int
    degrees: tuple  # RealInterval per k
    submultiplicative: tuple  # verdict strings for d_k <= d_1^k, k = 0..n
    log_concave: tuple  # verdict strings for d_k^2 >= d_{k-1} d_{k+1}, k = 1..n-1

    def all_hold(self):
        return all(v == "holds" for v in self.submultiplicative + self.log_concave)


def check_degree_inequalities(rep, width=DEFAULT_WIDTH):
    """Verdicts for the degree-growth inequalities of every generator.

    Each verdict is "holds", "fails", or "undecided" (interval overlap at the
    requested width); undecided is a verdict, not an error.
    """
    reports = []
    for gi in range(rep.num_generators):
        ds = dynamical_degrees(rep, generator=gi, width=width)
        sub = []
        for k in range(rep.n + 1):
            sub.append(ds[k].compare_le(ds[1] ** k))
        logc = []
        for k in range(1, rep.n):
            logc.append((ds[k] ** 2).compare_ge(ds[k - 1] * ds[k + 1]))
        reports.append(
            DegreeInequalityReport(
                generator=gi,
                degrees=tuple(ds),
                submultiplicative=tuple(sub),
                log_concave=tuple(logc),
            )
        )
    return reports
