"""Exact rational linear feasibility via phase-1 simplex.

Solves: find x (free sign) with A x >= b, all data rational.  Returns either
a witness x or a Farkas certificate y >= 0 with y^T A = 0 and y^T b > 0,
proving infeasibility.  Pivoting uses Bland's rule, so the method terminates
on every input; all arithmetic is over Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    x: tuple | None = None
    farkas: tuple | None = None

    def verify(self, a, b):
        """Exact re-check of whichever certificate is present."""
        if self.feasible:
            return all(
                sum(ai * xi for ai, xi in zip(row, self.x)) >= bi for row, bi in zip(a, b)
            )
        y = self.farkas
        if any(yi < 0 for yi in y):
            return False
        n = len(a[0]) if a else 0
        combo = [sum(y[i] * a[i][j] for i in range(len(a))) for j in range(n)]
        return all(c == 0 for c in combo) and sum(yi * bi for yi, bi in zip(y, b)) > 0


def solve_feasibility(a, b) -> Feasibility:
    """Find x with A x >= b or produce a Farkas certificate of infeasibility."""
    m = len(a)
    if m == 0:
        return Feasibility(feasible=True, x=())
    n = len(a[0])
    a = [[Fraction(v) for v in row] for row in a]
    b = [Fraction(v) for v in b]

    # standard form: A u - A v - s = b, u, v, s >= 0, then artificials.
    # rows with negative rhs are negated so the artificial basis is feasible.
    flipped = []
    rows = []
    for i in range(m):
        row = a[i] + [-v for v in a[i]] + [Fraction(0)] * m
        row[2 * n + i] = Fraction(-1)
        rhs = b[i]
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            flipped.append(True)
        else:
            flipped.append(False)
        rows.append(row + [rhs])

    ncols = 2 * n + m  # before artificials
    total = ncols + m
    for i in range(m):
        ext = [Fraction(0)] * m
        ext[i] = Fraction(1)
        rows[i] = rows[i][:ncols] + ext + rows[i][ncols:]
    basis = [ncols + i for i in range(m)]

    # phase-1 objective: minimize the sum of artificials.
    # reduced-cost row r_j = c_j - sum_i c_{B_i} T_ij with c = 1 on artificials.
    cost = [Fraction(0)] * total + [Fraction(0)]
    for j in range(total + 1):
        s = sum(rows[i][j] for i in range(m))
        cj = Fraction(1) if ncols <= j < total else Fraction(0)
        cost[j] = cj - s

    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        ratios = [
            (rows[i][total] / rows[i][enter], basis[i], i)
            for i in range(m)
            if rows[i][enter] > 0
        ]
        if not ratios:
            raise ArithmeticError("phase-1 objective unbounded; this is a bug")
        _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
        piv = rows[leave][enter]
        rows[leave] = [v / piv for v in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[leave])]
        f = cost[enter]
        cost = [v - f * w for v, w in zip(cost, rows[leave])]
        basis[leave] = enter

    objective = -cost[total]
    if objective == 0:
        x = [Fraction(0)] * n
        for i, bi in enumerate(basis):
            if bi < n:
                x[bi] += rows[i][total]
            elif bi < 2 * n:
                x[bi - n] -= rows[i][total]
        result = Feasibility(feasible=True, x=tuple(x))
    else:
        # multipliers: for artificial column e_i, reduced cost = 1 - pi_i
        pi = [Fraction(1) - cost[ncols + i] for i in range(m)]
        y = [(-p if flip else p) for p, flip in zip(pi, flipped)]
        result = Feasibility(feasible=False, farkas=tuple(y))
    if not result.verify(a, b):
        raise ArithmeticError("simplex produced an invalid certificate; this is a bug")
    return result


def strictly_positive_combination(vectors) -> Feasibility:
    """Find y with (v . y) >= 1 for every v, or certify none exists.

    Used for cone salience: a finitely generated cone is salient exactly when
    some functional is strictly positive on all its rays.
    """
    vectors = [list(v) for v in vectors]
    ones = [Fraction(1)] * len(vectors)
    return solve_feasibility(vectors, ones)
