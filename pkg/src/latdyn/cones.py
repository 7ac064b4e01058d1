"""Polyhedral cone dynamics with exact rational arithmetic.

Cones are given by finitely many rational rays; facet functionals are derived
by brute-force dualization (normals of rank d-1 ray subsets), which is exact
and entirely adequate at the dimensions this package targets (<= 10).  Both
the salience and full-dimensionality requirements are verified at
construction.

The dynamical side implements the equivalence, for an invertible map f fixing
a salient full-dimensional closed cone: f fixes an interior point up to the
factor q exactly when the iterates f^i / q^i stay bounded in both directions,
and either condition forces f to be diagonalizable with every eigenvalue of
modulus q.  Both criteria are decided exactly: the fixed point by rational
kernel computation plus exact LP, the boundedness by squarefreeness of the
minimal polynomial plus the all-roots-on-a-circle predicate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .entropy import strip_cyclotomic_factors, uniform_exponent
from .linprog import Feasibility, solve_feasibility, strictly_positive_combination
from .matrix import IntMatrix, RatMatrix, rref
from .polynomial import all_roots_on_unit_circle

DEFAULT_GROUP_CAP = 10**6
DEFAULT_SAMPLE_RANGE = 40


def _primitive(vec):
    """Scale a rational vector to coprime integers with the same direction."""
    fracs = [Fraction(v) for v in vec]
    den = math.lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    g = math.gcd(*(abs(v) for v in ints))
    if g:
        ints = [v // g for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class PolyhedralCone:
    """Salient, full-dimensional rational polyhedral cone.

    rays: primitive integer generators as given (deduplicated).
    facets: primitive inward normals; x is in the cone iff every facet
        functional is >= 0 at x, and that description is exact.
    extreme_rays: indices into rays of the non-redundant generators.
    """

    dim: int
    rays: tuple
    facets: tuple
    extreme_rays: tuple

    def contains(self, vec):
        return all(_dot(f, vec) >= 0 for f in self.facets)

    def contains_interior(self, vec):
        return all(_dot(f, vec) > 0 for f in self.facets)

    def dual(self):
        """The dual cone, generated by the facet normals of this one."""
        return cone_from_rays(self.facets)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def cone_from_rays(rays) -> PolyhedralCone:
    """Build the facet description of the cone generated by the given rays.

    Raises ValueError when the rays do not span (not full-dimensional) or the
    cone contains a line (not salient); the salience certificate is an exact
    LP run.
    """
    rays = [_primitive(r) for r in rays]
    seen = []
    for r in rays:
        if r not in seen:
            seen.append(r)
    rays = seen
    if not rays:
        raise ValueError("a cone needs at least one ray")
    dim = len(rays[0])
    if any(len(r) != dim for r in rays):
        raise ValueError("rays have mismatched dimensions")
    if any(all(v == 0 for v in r) for r in rays):
        raise ValueError("zero vector is not a ray")
    rank = len(rref([list(r) for r in rays])[1])
    if rank < dim:
        raise ValueError(f"rays span a {rank}-dimensional space, cone is not full-dimensional")
    sal = strictly_positive_combination(rays)
    if not sal.feasible:
        raise ValueError("cone contains a line (not salient)")

    if dim == 1:
        sign = 1 if rays[0][0] > 0 else -1
        facets = ((sign,),)
        return PolyhedralCone(dim=dim, rays=tuple(rays), facets=facets, extreme_rays=(0,))

    facets = []
    for subset in itertools.combinations(range(len(rays)), dim - 1):
        sub = [list(rays[i]) for i in subset]
        red, pivots = rref(sub)
        if len(pivots) != dim - 1:
            continue
        normal = _normal_of(red, pivots, dim)
        pos = any(_dot(normal, r) > 0 for r in rays)
        neg = any(_dot(normal, r) < 0 for r in rays)
        if pos and neg:
            continue
        if neg:
            normal = tuple(-v for v in normal)
        normal = _primitive(normal)
        if normal not in facets:
            facets.append(normal)
    # a salient full-dimensional cone always has at least dim facets
    if len(facets) < dim:
        raise AssertionError("facet enumeration produced too few facets; this is a bug")
    extreme = []
    for i, r in enumerate(rays):
        tight = [list(f) for f in facets if _dot(f, r) == 0]
        if tight and len(rref(tight)[1]) == dim - 1:
            extreme.append(i)
    return PolyhedralCone(
        dim=dim, rays=tuple(rays), facets=tuple(sorted(facets)), extreme_rays=tuple(extreme)
    )


def _normal_of(red, pivots, dim):
    """One nonzero kernel vector of a rank d-1 system in RREF."""
    free = next(c for c in range(dim) if c not in pivots)
    v = [Fraction(0)] * dim
    v[free] = Fraction(1)
    for r, p in enumerate(pivots):
        v[p] = -red[r][free]
    return tuple(v)


def _as_rational(f):
    return f.to_rational() if isinstance(f, IntMatrix) else f


def preserves_cone(f, cone: PolyhedralCone) -> bool:
    """True iff f and f^{-1} both map the cone into itself (hence f(C) = C)."""
    fr = _as_rational(f)
    if fr.det() == 0:
        raise ValueError("cone preservation is defined for invertible maps")
    finv = fr.inverse()
    for ray in cone.rays:
        img = _apply(fr, ray)
        if not cone.contains(img):
            return False
        img = _apply(finv, ray)
        if not cone.contains(img):
            return False
    return True


def _apply(m, vec):
    return tuple(sum(m.rows[i][j] * vec[j] for j in range(len(vec))) for i in range(m.dim))


@dataclass(frozen=True)
class InteriorFixedResult:
    vector: tuple | None  # rational interior vector with f x = q x, or None
    eigenspace_dim: int
    certificate: Feasibility | None  # LP outcome over the eigenspace, when nonzero

    @property
    def found(self):
        return self.vector is not None


def interior_fixed_vector(f, q, cone: PolyhedralCone) -> InteriorFixedResult:
    """Rational x in the open cone with f x = q x, or a certified absence.

    The eigenspace for q is computed exactly; strict positivity of all facet
    functionals is normalized to >= 1 and decided by exact LP, whose Farkas
    certificate is carried in the result when the answer is "none exists".
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("the scaling factor must be positive")
    fr = _as_rational(f)
    shifted = fr - RatMatrix.identity(fr.dim) * q
    kernel = shifted.kernel()
    if not kernel:
        return InteriorFixedResult(vector=None, eigenspace_dim=0, certificate=None)
    # LP over eigenspace coordinates t: facet(sum_j t_j k_j) >= 1 for every facet
    a = [[_dot(facet, k) for k in kernel] for facet in cone.facets]
    b = [Fraction(1)] * len(cone.facets)
    lp = solve_feasibility(a, b)
    if not lp.feasible:
        return InteriorFixedResult(vector=None, eigenspace_dim=len(kernel), certificate=lp)
    x = [
        sum(t * k[i] for t, k in zip(lp.x, kernel))
        for i in range(fr.dim)
    ]
    x = _primitive(x)
    if _apply(fr, x) != tuple(v * q for v in x) or not cone.contains_interior(x):
        raise AssertionError("interior fixed vector failed verification; this is a bug")
    return InteriorFixedResult(vector=x, eigenspace_dim=len(kernel), certificate=lp)


@dataclass(frozen=True)
class PowerBoundedness:
    bounded: bool
    diagonalizable: bool
    eigen_moduli_all_q: bool
    reason: str


def power_bounded_exact(f, q) -> PowerBoundedness:
    """Exact two-sided power boundedness of f / q.

    Criterion: the minimal polynomial is squarefree (diagonalizability) and
    every characteristic root has modulus exactly q.  For integer matrices
    with q = 1 the modulus test is the cyclotomic stripping route; otherwise
    roots are rescaled to the unit circle and decided by the exact
    palindrome-and-Sturm predicate.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("the scaling factor must be positive")
    fr = _as_rational(f)
    if fr.det() == 0:
        raise ValueError("power boundedness is defined for invertible maps")
    minpoly = fr.minimal_poly()
    diagonalizable = minpoly.is_squarefree()
    char = fr.char_poly()
    if isinstance(f, IntMatrix) and q == 1:
        if abs(f.det()) != 1:
            moduli_ok = False
        else:
            _, residual = strip_cyclotomic_factors(char)
            moduli_ok = residual.degree() == 0
    else:
        moduli_ok = all_roots_on_unit_circle(char.scale_roots(q))
    bounded = diagonalizable and moduli_ok
    if bounded:
        reason = "diagonalizable with all eigenvalue moduli equal to the scaling factor"
    elif not diagonalizable:
        reason = "minimal polynomial has a repeated factor, so iterates grow polynomially"
    else:
        reason = "some eigenvalue modulus differs from the scaling factor, so iterates grow geometrically"
    return PowerBoundedness(
        bounded=bounded, diagonalizable=diagonalizable, eigen_moduli_all_q=moduli_ok, reason=reason
    )


@dataclass(frozen=True)
class ConeMapAnalysis:
    preserves: bool
    q: Fraction
    interior_fixed: tuple | None
    power_bounded_exact: bool
    diagonalizable: bool
    eigen_moduli_all_q: bool
    numeric_iterate_bound: Fraction  # max |i| <= sample_range of ||f^i|| / q^i
    sample_range: int


def meng_zhang_report(f, q, cone: PolyhedralCone, sample_range=DEFAULT_SAMPLE_RANGE) -> ConeMapAnalysis:
    """Run both sides of the fixed-point / boundedness equivalence and compare.

    The two exact verdicts must agree on every instance; disagreement raises,
    because it cannot happen for a cone-preserving map unless there is a bug.
    The numeric witness is the exact maximum of ||f^i|| / q^i over the sampled
    window, in the max-absolute-row-sum norm.
    """
    q = Fraction(q)
    if not preserves_cone(f, cone):
        raise ValueError("map does not preserve the cone")
    fr = _as_rational(f)
    fixed = interior_fixed_vector(f, q, cone)
    power = power_bounded_exact(f, q)
    if fixed.found != power.bounded:
        raise AssertionError(
            "fixed-point and boundedness criteria disagree on a cone-preserving map; this is a bug"
        )
    finv = fr.inverse()
    bound = Fraction(1)
    fwd = RatMatrix.identity(fr.dim)
    bwd = RatMatrix.identity(fr.dim)
    for i in range(1, sample_range + 1):
        fwd = fwd * fr
        bwd = bwd * finv
        bound = max(bound, fwd.max_abs_row_sum() / q**i, bwd.max_abs_row_sum() * q**i)
    return ConeMapAnalysis(
        preserves=True,
        q=q,
        interior_fixed=fixed.vector,
        power_bounded_exact=power.bounded,
        diagonalizable=power.diagonalizable,
        eigen_moduli_all_q=power.eigen_moduli_all_q,
        numeric_iterate_bound=bound,
        sample_range=sample_range,
    )


def group_closure(generators, cap=DEFAULT_GROUP_CAP):
    """Breadth-first closure of the generated matrix group.

    Returns (elements, complete); ``complete`` is False when the cap was hit,
    in which case elements is the BFS prefix gathered so far.
    """
    generators = list(generators)
    if not generators:
        return [IntMatrix.identity(1)], True
    dim = generators[0].dim
    identity = type(generators[0]).identity(dim)
    elements = {identity.rows: identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for mat in frontier:
            for g in generators:
                nm = mat * g
                if nm.rows not in elements:
                    if len(elements) >= cap:
                        return list(elements.values()), False
                    elements[nm.rows] = nm
                    nxt.append(nm)
        frontier = nxt
    return list(elements.values()), True


@dataclass(frozen=True)
class FiniteOrderStep:
    generator: int
    cone_preserved: bool
    class_fixed: bool
    class_interior: bool
    power_bounded: bool
    power_bounded_reason: str
    dual_interior_fixed: tuple | None
    order_divides_exponent: bool
    ok: bool
    message: str


@dataclass(frozen=True)
class FiniteOrderReport:
    steps: tuple
    exponent: int
    image_order: int | None
    image_complete: bool
    success: bool
    conclusion: str


def fujiki_lieberman_pipeline(generators, cone: PolyhedralCone, fixed_classes, rank=None,
                              group_cap=DEFAULT_GROUP_CAP) -> FiniteOrderReport:
    """Finiteness pipeline for cone-preserving maps with fixed interior classes.

    Per generator: (i) the declared class is fixed exactly and lies in the
    open cone (the cone models the effective side, interior points model big
    classes); (ii) iterates are power bounded with q = 1; (iii) the induced
    map on the dual cone (contragredient action) fixes an interior dual
    vector; (iv) the generator's order divides the uniform exponent of the
    rank.  Then the whole image group is enumerated breadth-first; for valid
    inputs it is finite, so hitting the cap signals bad input or a bug, and is
    reported as such.  Cone preservation is recorded per generator as a
    diagnostic rather than enforced up front, so later steps still report
    their own failures honestly.
    """
    generators = list(generators)
    if len(fixed_classes) != len(generators):
        raise ValueError("need exactly one declared fixed class per generator")
    rank = rank if rank is not None else (generators[0].dim if generators else 1)
    for i, g in enumerate(generators):
        if isinstance(g, IntMatrix) and not g.is_unimodular():
            raise ValueError(f"generator {i} is not unimodular (det = {g.det()})")
    exponent = uniform_exponent(rank).m_lcm
    dual = cone.dual()
    steps = []
    all_ok = True
    for i, (g, cls) in enumerate(zip(generators, fixed_classes)):
        gr = _as_rational(g)
        preserved = preserves_cone(g, cone)
        cls = tuple(Fraction(c) for c in cls)
        fixed_ok = _apply(gr, cls) == cls
        interior_ok = cone.contains_interior(cls)
        notes = []
        if not preserved:
            notes.append("cone not preserved")
        if not fixed_ok:
            notes.append("declared class is not fixed")
        if not interior_ok:
            notes.append("declared class is not interior")
        power = power_bounded_exact(g, 1)
        if not power.bounded:
            notes.append(f"power boundedness fails: {power.reason}")
        dual_fixed = interior_fixed_vector(gr.inverse().transpose(), 1, dual)
        if not dual_fixed.found:
            notes.append("no interior fixed vector in the dual cone")
        power_of_g = g**exponent
        order_ok = power_of_g.is_identity()
        if not order_ok:
            notes.append(f"generator^{exponent} is not the identity")
        ok = fixed_ok and interior_ok and power.bounded and dual_fixed.found and order_ok
        steps.append(
            FiniteOrderStep(
                generator=i,
                cone_preserved=preserved,
                class_fixed=fixed_ok,
                class_interior=interior_ok,
                power_bounded=power.bounded,
                power_bounded_reason=power.reason,
                dual_interior_fixed=dual_fixed.vector,
                order_divides_exponent=order_ok,
                ok=ok,
                message="; ".join(notes) if notes else "all per-generator checks passed",
            )
        )
        all_ok = all_ok and ok
    if not all_ok:
        return FiniteOrderReport(
            steps=tuple(steps),
            exponent=exponent,
            image_order=None,
            image_complete=False,
            success=False,
            conclusion="per-generator checks failed; finiteness not certified",
        )
    elements, complete = group_closure(generators, cap=group_cap)
    if not complete:
        return FiniteOrderReport(
            steps=tuple(steps),
            exponent=exponent,
            image_order=None,
            image_complete=False,
            success=False,
            conclusion=(
                f"image not certified finite within the cap of {group_cap} elements; "
                "for valid inputs this cannot happen, so check the input"
            ),
        )
    return FiniteOrderReport(
        steps=tuple(steps),
        exponent=exponent,
        image_order=len(elements),
        image_complete=True,
        success=True,
        conclusion=(
            f"image group is finite of order {len(elements)}; the kernel of the lattice "
            "action acts trivially on the lattice, which is the lattice-level form of the "
            "finiteness conclusion"
        ),
    )
