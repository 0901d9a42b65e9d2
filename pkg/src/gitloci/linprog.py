"""Exact rational linear programming (two-phase simplex, Bland's rule).

Problems here are tiny (a handful of rows, a few dozen columns), so the
implementation favours clarity over speed: the reduced-cost row is
recomputed every iteration and all arithmetic is on Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def solve_lp(
    A: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
    c: Sequence[Fraction | int],
    maximize: bool = False,
) -> tuple[str, Optional[list[Fraction]], Optional[Fraction]]:
    """Solve min (or max) c.x subject to A x = b, x >= 0.

    Returns (status, x, value).  Bland's rule prevents cycling, so the
    routine always terminates; exactness means no tolerance knobs.
    """
    m = len(A)
    n = len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    cost = [Fraction(v) for v in c]
    if maximize:
        cost = [-v for v in cost]
    for i in range(m):
        if len(A[i]) != n:
            raise ValueError("inconsistent LP dimensions")
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    # tableau: columns = n structural + m artificial + rhs
    T = [A[i][:] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    if _simplex(T, basis, phase1, n + m) != OPTIMAL:
        raise AssertionError("phase 1 cannot be unbounded")
    if sum(phase1[basis[i]] * T[i][-1] for i in range(m)) > 0:
        return INFEASIBLE, None, None

    # drive artificial variables out of the basis (or drop redundant rows)
    for i in range(m - 1, -1, -1):
        if basis[i] >= n:
            piv = next((j for j in range(n) if T[i][j] != 0), None)
            if piv is None:
                T.pop(i)
                basis.pop(i)
            else:
                _pivot(T, basis, i, piv)

    # phase 2 on structural columns only
    for row in T:
        del row[n:-1]
    phase2 = cost[:]
    status = _simplex(T, basis, phase2, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = T[i][-1]
    value = sum(cost[j] * x[j] for j in range(n))
    if maximize:
        value = -value
    return OPTIMAL, x, value


def _simplex(
    T: list[list[Fraction]], basis: list[int], cost: list[Fraction], ncols: int
) -> str:
    while True:
        entering = None
        for j in range(ncols):
            if j in basis:
                continue
            reduced = cost[j] - sum(
                cost[basis[i]] * T[i][j] for i in range(len(T))
            )
            if reduced < 0:
                entering = j
                break  # Bland: smallest index
        if entering is None:
            return OPTIMAL
        leaving = None
        best: Optional[Fraction] = None
        for i in range(len(T)):
            if T[i][entering] > 0:
                ratio = T[i][-1] / T[i][entering]
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leaving])
                ):
                    best = ratio
                    leaving = i
        if leaving is None:
            return UNBOUNDED
        _pivot(T, basis, leaving, entering)


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    for i in range(len(T)):
        if i != row and T[i][col] != 0:
            f = T[i][col]
            T[i] = [a - f * v for a, v in zip(T[i], T[row])]
    basis[row] = col


def lp_feasible(
    A: Sequence[Sequence[Fraction | int]], b: Sequence[Fraction | int]
) -> tuple[bool, Optional[list[Fraction]]]:
    """Feasibility of A x = b, x >= 0; returns a witness when feasible."""
    n = len(A[0]) if A else 0
    status, x, _ = solve_lp(A, b, [Fraction(0)] * n)
    return (status == OPTIMAL), x


def lp_maximize_free(
    objective: Sequence[Fraction | int],
    eqs: Sequence[tuple[Sequence[Fraction | int], Fraction | int]],
    ges: Sequence[tuple[Sequence[Fraction | int], Fraction | int]],
) -> tuple[str, Optional[list[Fraction]], Optional[Fraction]]:
    """Maximise over FREE variables subject to <a,x> = b and <a,x> >= b rows.

    Free variables are split into positive and negative parts; inequality
    rows get slack variables.  Returns values for the original variables.
    """
    nv = len(objective)
    nslack = len(ges)
    ncols = 2 * nv + nslack

    def stretch(row: Sequence[Fraction | int]) -> list[Fraction]:
        out = []
        for v in row:
            v = Fraction(v)
            out.append(v)
        return [x for v in out for x in (v, -v)]

    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for row, rhs in eqs:
        A.append(stretch(row) + [Fraction(0)] * nslack)
        b.append(Fraction(rhs))
    for k, (row, rhs) in enumerate(ges):
        slacks = [Fraction(0)] * nslack
        slacks[k] = Fraction(-1)
        A.append(stretch(row) + slacks)
        b.append(Fraction(rhs))
    c = stretch(objective) + [Fraction(0)] * nslack
    status, x, value = solve_lp(A, b, c, maximize=True)
    if status != OPTIMAL:
        return status, None, None
    orig = [x[2 * i] - x[2 * i + 1] for i in range(nv)]
    return OPTIMAL, orig, value
