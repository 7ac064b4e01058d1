"""Derived length and nilpotency class of certified-unipotent matrix groups.

The series lengths are computed on the nilpotent Lie algebra generated by the
logarithms of the generators; closure of a unipotent group under the Zariski
topology commutes with commutators, so the algebra-side lengths are the group
ones.  An independent word-level search over explicit iterated commutators
[a, b] = a^-1 b^-1 a b provides a lower bound that must never exceed the
algebra answer; a violation aborts the run because it can only mean a bug.

Also here: the essential-length computation (derived length of the certified
unipotent image, checked against the ambient bound n - 1), the
derived-vs-nilpotency inequality check 2^(l-1) <= c, and the solvable
extension chain for groups with a designated abelian kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .liealg import derived_length, lie_closure, matrix_log_unipotent, nilpotency_class
from .matrix import IntMatrix
from .unipotent import UnipotentPipelineReport, unipotent_pipeline

# Commutator convention used everywhere: [a, b] = a^-1 b^-1 a b.

DEFAULT_WORD_BUDGET = 10
BALL_CAP = 4000
POOL_CAP = 128


@dataclass(frozen=True)
class SeriesReport:
    derived_length: int
    nilpotency_class: int
    derived_dims: tuple
    lcs_dims: tuple
    word_search_lower_bound: int
    word_budget: int

    def validate(self):
        ok = self.derived_length <= self.nilpotency_class
        ok = ok and self.word_search_lower_bound <= self.derived_length
        ok = ok and all(a > b for a, b in zip(self.derived_dims, self.derived_dims[1:]))
        ok = ok and all(a > b for a, b in zip(self.lcs_dims, self.lcs_dims[1:]))
        return ok


def _inverse_cache():
    cache = {}

    def inv(m):
        got = cache.get(m.rows)
        if got is None:
            got = m.inverse()
            cache[m.rows] = got
        return got

    return inv


def _word_ball(generators, radius, cap):
    """Deduplicated breadth-first ball of the generated group, shortest first.

    Capped at ``cap`` elements; the prefix of the BFS order is kept, so the
    result is deterministic and every element has a word of length <= radius.
    """
    dim = generators[0].dim
    letters = list(generators) + [g.inverse() for g in generators]
    identity = IntMatrix.identity(dim)
    seen = {identity.rows: identity}
    frontier = [identity]
    for _ in range(radius):
        nxt = []
        for mat in frontier:
            for letter in letters:
                nm = mat * letter
                if nm.rows not in seen:
                    seen[nm.rows] = nm
                    nxt.append(nm)
                    if len(seen) >= cap:
                        return list(seen.values())
        frontier = nxt
        if not frontier:
            break
    return list(seen.values())


def derived_word_lower_bound(generators, budget=DEFAULT_WORD_BUDGET, ball_cap=BALL_CAP, pool_cap=POOL_CAP):
    """Empirical derived length from explicit commutators of bounded words.

    Pool 0 is the word ball of radius ``budget``; pool i+1 collects the
    commutators of pool i.  Pools sample the true derived subgroups from
    below, so the value returned is a certified lower bound for the derived
    length.  Pools are capped (BFS prefix) to stay tractable; caps only make
    the bound smaller, never wrong.
    """
    generators = [g for g in generators if not g.is_identity()]
    if not generators:
        return 0
    dim = generators[0].dim
    identity_rows = IntMatrix.identity(dim).rows
    inv = _inverse_cache()
    pool = [m for m in _word_ball(generators, budget, ball_cap) if m.rows != identity_rows]
    pool = pool[:pool_cap]
    level = 0
    while pool:
        level += 1
        seen = set()
        nxt = []
        for i, a in enumerate(pool):
            for b in pool[i + 1 :]:
                c = inv(a) * inv(b) * a * b
                if c.rows == identity_rows or c.rows in seen:
                    continue
                seen.add(c.rows)
                nxt.append(c)
                if len(nxt) >= pool_cap:
                    break
            if len(nxt) >= pool_cap:
                break
        pool = nxt
    return level


def group_series_report(generators, budget=DEFAULT_WORD_BUDGET) -> SeriesReport:
    """Series lengths of the group generated by certified-unipotent matrices.

    Runs the Lie route (logs, closure, subspace series) and the word-level
    lower bound; if the word search ever exceeded the Lie answer the report
    construction fails loudly.
    """
    generators = list(generators)
    logs = [matrix_log_unipotent(g) for g in generators]
    algebra = lie_closure([l for l in logs if not l.is_zero()])
    ell, ddims = derived_length(algebra)
    cls, ldims = nilpotency_class(algebra)
    wb = derived_word_lower_bound([g for g in generators if isinstance(g, IntMatrix)], budget)
    if wb > ell:
        raise AssertionError(
            f"word search found derived length >= {wb} but the Lie computation says {ell}; "
            "this is a bug"
        )
    report = SeriesReport(
        derived_length=ell,
        nilpotency_class=cls,
        derived_dims=ddims,
        lcs_dims=ldims,
        word_search_lower_bound=wb,
        word_budget=budget,
    )
    if not report.validate():
        raise AssertionError("series report violates its own invariants; this is a bug")
    return report


@dataclass(frozen=True)
class RobinsonVerdict:
    derived_length: int
    nilpotency_class: int
    holds: bool
    statement: str


def robinson_check(ell, cls) -> RobinsonVerdict:
    """Exact form of l <= log2(c) + 1: holds iff 2^(l-1) <= c."""
    if cls == 0 and ell > 0:
        raise ValueError("nilpotency class 0 with positive derived length is inconsistent")
    holds = ell == 0 or 2 ** (ell - 1) <= cls
    statement = "trivial group" if ell == 0 else f"2^{ell - 1} = {2 ** (ell - 1)} <= {cls}"
    if ell > 0 and not holds:
        statement = f"2^{ell - 1} = {2 ** (ell - 1)} > {cls}"
    return RobinsonVerdict(
        derived_length=ell, nilpotency_class=cls, holds=holds, statement=statement
    )


@dataclass(frozen=True)
class EssentialLengthReport:
    applicable: bool
    pipeline: UnipotentPipelineReport
    value: int | None = None
    ambient_n: int | None = None
    bound_holds: bool | None = None
    series: SeriesReport | None = None
    per_degree: tuple = ()  # (degree, derived_length) pairs when gradings supplied
    message: str = ""

    @property
    def maximal(self):
        return self.bound_holds and self.value == self.ambient_n - 1


def essential_length(generators, n, gradings=None, budget=DEFAULT_WORD_BUDGET,
                     pipeline=None, series=None) -> EssentialLengthReport:
    """Derived length of the certified unipotent image, against the bound n - 1.

    ``gradings`` optionally maps degree k to the per-generator matrices of the
    induced action; the derived length is then recomputed on every degree and
    all of them must coincide, since the graded images are isomorphic.
    A bound violation is reported, never silently accepted.
    ``pipeline`` and ``series`` may be passed in when already computed.
    """
    if n < 1:
        raise ValueError("ambient dimension must be >= 1")
    if pipeline is None:
        pipeline = unipotent_pipeline(generators, rank=generators[0].dim if generators else 1)
    if not pipeline.applicable or not pipeline.certified:
        return EssentialLengthReport(
            applicable=False,
            pipeline=pipeline,
            ambient_n=n,
            message="essential length undefined: " + pipeline.message,
        )
    if series is None:
        series = group_series_report(pipeline.replaced_generators, budget=budget)
    value = series.derived_length
    per_degree = []
    if gradings:
        m = pipeline.exponent_effective
        for k in sorted(gradings):
            if not 1 <= k <= n - 1:
                continue  # extreme degrees are one-dimensional, outside the isomorphism range
            mats = [g**m for g in gradings[k]]
            sub = unipotent_pipeline(mats, rank=mats[0].dim)
            if not sub.certified:
                raise ValueError(f"degree {k} image is not unipotent after power replacement")
            ks = group_series_report(sub.replaced_generators, budget=budget)
            per_degree.append((k, ks.derived_length))
        values = {v for _, v in per_degree} | {value}
        if len(values) > 1:
            return EssentialLengthReport(
                applicable=True,
                pipeline=pipeline,
                value=value,
                ambient_n=n,
                bound_holds=None,
                series=series,
                per_degree=tuple(per_degree),
                message=f"derived lengths differ across degrees: {sorted(values)}",
            )
    holds = value <= n - 1
    message = f"derived length of unipotent image = {value}, bound n-1 = {n - 1}: " + (
        "holds" if holds else "VIOLATED"
    )
    return EssentialLengthReport(
        applicable=True,
        pipeline=pipeline,
        value=value,
        ambient_n=n,
        bound_holds=holds,
        series=series,
        per_degree=tuple(per_degree),
        message=message,
    )


@dataclass(frozen=True)
class CorollaryChainReport:
    applicable: bool
    image_length: int | None = None
    chain_value: int | None = None  # image length + 1, the solvable extension bound
    ambient_n: int | None = None
    holds: bool | None = None
    message: str = ""


def corollary_chain_check(generators, n, kernel_abelian, budget=DEFAULT_WORD_BUDGET,
                          essential=None) -> CorollaryChainReport:
    """Chain check for a group extension of the matrix image by an abelian kernel.

    The checkable fragment: the image derived length plus one bounds the
    derived length of any extension by an abelian kernel, and must be <= n.
    Finite-index minimization is not enumerable; the image length stands in
    for it, which is legitimate because finite-index subgroups of a unipotent
    group share its derived length.
    """
    if not kernel_abelian:
        raise ValueError("chain check requires the kernel to be flagged abelian")
    rep = essential if essential is not None else essential_length(generators, n, budget=budget)
    if not rep.applicable:
        return CorollaryChainReport(applicable=False, ambient_n=n, message=rep.message)
    chain = rep.value + 1
    holds = chain <= n
    return CorollaryChainReport(
        applicable=True,
        image_length=rep.value,
        chain_value=chain,
        ambient_n=n,
        holds=holds,
        message=(
            f"solvable extension of the unipotent image by an abelian kernel has derived "
            f"length <= {chain}; bound n = {n}: " + ("holds" if holds else "VIOLATED")
        ),
    )
