"""Nilpotent Lie algebras of rational matrices.

For a certified-unipotent matrix group the logarithms of the generators are
nilpotent rational matrices, the finite sum log(g) = sum (-1)^{j+1}(g-I)^j / j.
The bracket-closed span of those logarithms carries the derived and lower
central series of the group: series lengths computed on the algebra side are
exact subspace-dimension computations, with deterministic echelonized bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrix import IntMatrix, RatMatrix, _SpanTracker
from .unipotent import is_unipotent


def matrix_log_unipotent(g) -> RatMatrix:
    """Exact logarithm of a unipotent matrix; the series is finite.

    The inverse identity exp(log g) = g is re-verified exactly on every call,
    which is cheap because both series stop at the nilpotency index.
    """
    if not is_unipotent(g):
        raise ValueError("matrix logarithm requires a unipotent input")
    dim = g.dim
    gr = g.to_rational() if isinstance(g, IntMatrix) else g
    n = gr - RatMatrix.identity(dim)
    result = RatMatrix.zero(dim)
    power = RatMatrix.identity(dim)
    for j in range(1, dim):
        power = power * n
        if power.is_zero():
            break
        result = result + power * Fraction((-1) ** (j + 1), j)
    if _exp_nilpotent(result).rows != gr.rows:
        raise AssertionError("exp(log g) != g; this is a bug")
    return result


def _exp_nilpotent(m) -> RatMatrix:
    dim = m.dim
    result = RatMatrix.identity(dim)
    term = RatMatrix.identity(dim)
    fact = 1
    for j in range(1, dim + 1):
        term = term * m
        if term.is_zero():
            break
        fact *= j
        result = result + term * Fraction(1, fact)
    return result


def bracket(x, y):
    """Lie bracket xy - yx."""
    return x * y - y * x


@dataclass(frozen=True)
class NilpotentLieAlgebra:
    """Bracket-closed rational span of nilpotent matrices.

    basis is echelonized deterministically (leftmost pivot on the flattened
    entries); structure holds the bracket table [b_i, b_j] in basis
    coordinates.
    """

    ambient_dim: int
    basis: tuple  # RatMatrix
    structure: tuple  # structure[i][j] = coordinates of [b_i, b_j]

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, m):
        """Coordinates of m in the basis, or None when m is outside the span."""
        try:
            return _coords_against(list(self.basis), m, self.ambient_dim)
        except _OutsideSpan:
            return None

    def validate(self):
        """Check the stated invariants: independence, bracket closure, nilpotency."""
        span = _SpanTracker(self.ambient_dim**2)
        for b in self.basis:
            if not span.add(b.flatten()):
                return False
        for b in self.basis:
            if not (b**self.ambient_dim).is_zero():
                return False
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                coords = self.coordinates(bracket(bi, bj))
                if coords is None or tuple(coords) != tuple(self.structure[i][j]):
                    return False
        return True


def lie_closure(seeds) -> NilpotentLieAlgebra:
    """Smallest bracket-closed rational span containing the seed matrices."""
    seeds = [s.to_rational() if isinstance(s, IntMatrix) else s for s in seeds]
    if seeds:
        ambient = seeds[0].dim
        if any(s.dim != ambient for s in seeds):
            raise ValueError("seeds have mismatched dimensions")
    else:
        ambient = 1
    for i, s in enumerate(seeds):
        if not (s**ambient).is_zero():
            raise ValueError(f"seed {i} is not nilpotent")
    span = _SpanTracker(ambient * ambient)
    basis = []
    queue = list(seeds)
    qi = 0
    while qi < len(queue):
        cand = queue[qi]
        qi += 1
        if span.add(cand.flatten()):
            for b in basis:
                queue.append(bracket(b, cand))
            basis.append(cand)
    for b in basis:
        if not (b**ambient).is_zero():
            raise ValueError("closure contains a non-nilpotent element; the span is not a nilpotent algebra")
    table = tuple(
        tuple(_coords_against(basis, bracket(bi, bj), ambient) for bj in basis) for bi in basis
    )
    return NilpotentLieAlgebra(ambient_dim=ambient, basis=tuple(basis), structure=table)


class _OutsideSpan(Exception):
    pass


def _coords_against(basis, m, ambient):
    k = len(basis)
    span = _SpanTracker(ambient * ambient + k)
    for i, b in enumerate(basis):
        marker = [Fraction(0)] * k
        marker[i] = Fraction(1)
        span.add(tuple(b.flatten()) + tuple(marker))
    v = span.reduce(tuple(m.flatten()) + (Fraction(0),) * k)
    if any(x != 0 for x in v[: ambient * ambient]):
        raise _OutsideSpan
    return tuple(-x for x in v[ambient * ambient :])


def _span_of(matrices, ambient):
    """Deterministic independent subset spanning the same subspace."""
    span = _SpanTracker(ambient * ambient)
    out = []
    for m in matrices:
        if span.add(m.flatten()):
            out.append(m)
    return out


def derived_series_dims(algebra: NilpotentLieAlgebra):
    """Dimensions of L = L^(0) >= L^(1) >= ... down to 0, bracketing each term."""
    ambient = algebra.ambient_dim
    current = list(algebra.basis)
    dims = [len(current)]
    while current:
        brackets = [bracket(x, y) for i, x in enumerate(current) for y in current[i + 1 :]]
        current = _span_of([b for b in brackets if not b.is_zero()], ambient)
        if current and len(current) >= dims[-1]:
            raise ValueError("derived series stalled; algebra is not solvable")
        dims.append(len(current))
    return dims


def lower_central_series_dims(algebra: NilpotentLieAlgebra):
    """Dimensions of L = L_(0) >= L_(1) >= ... with L_(i+1) = [L_(i), L]."""
    ambient = algebra.ambient_dim
    whole = list(algebra.basis)
    current = whole
    dims = [len(current)]
    while current:
        brackets = [bracket(x, y) for x in current for y in whole]
        current = _span_of([b for b in brackets if not b.is_zero()], ambient)
        if current and len(current) >= dims[-1]:
            raise ValueError("lower central series stalled; algebra is not nilpotent")
        dims.append(len(current))
    return dims


def derived_length(algebra: NilpotentLieAlgebra):
    """(smallest l with L^(l) = 0, dimension sequence)."""
    dims = derived_series_dims(algebra)
    return len(dims) - 1, tuple(dims)


def nilpotency_class(algebra: NilpotentLieAlgebra):
    """(smallest c with L_(c) = 0, dimension sequence)."""
    dims = lower_central_series_dims(algebra)
    return len(dims) - 1, tuple(dims)
