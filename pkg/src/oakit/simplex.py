"""Two-phase tableau simplex over exact rationals with Bland's pivot rule."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SolverError


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: tuple[tuple[int, int], ...]


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = []

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        row[:] = [v / p for v in row]
        self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                other[:] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c
        self.pivots.append((r, c))

    def reduced_costs(self, cost):
        red = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                red = [v - cb * a for v, a in zip(red, self.rows[r])]
        return red

    def minimize(self, cost, allowed):
        """Bland's rule: entering = lowest index with negative reduced cost,
        leaving = lowest basic index among ratio-test ties."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in allowed if red[j] < 0), None)
            if entering is None:
                return
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[r] / a, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                raise SolverError("linear program is unbounded")
            self.pivot(best[1], entering)


def solve_standard(cost: Sequence, A: Sequence[Sequence], b: Sequence) -> LPSolution:
    """Minimize cost.x subject to A x = b, x >= 0, all data exact."""
    m, n = len(A), len(cost)
    cost = [Fraction(c) for c in cost]
    rows, rhs = [], []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row, bi = [-v for v in row], -bi
        rows.append(row + [Fraction(int(i == r)) for r in range(m)])
        rhs.append(bi)
    t = _Tableau(rows, rhs, [n + i for i in range(m)])

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    t.minimize(phase1, range(n + m))
    if sum(t.rhs[r] for r, bv in enumerate(t.basis) if bv >= n) != 0:
        raise SolverError("linear program is infeasible")
    # drive zero-level artificials out of the basis where possible
    for r, bv in enumerate(t.basis):
        if bv >= n:
            c = next((j for j in range(n) if t.rows[r][j] != 0), None)
            if c is not None:
                t.pivot(r, c)

    full_cost = cost + [Fraction(0)] * m
    t.minimize(full_cost, range(n))
    x = [Fraction(0)] * n
    for r, bv in enumerate(t.basis):
        if bv < n:
            x[bv] = t.rhs[r]
    value = sum((c * v for c, v in zip(cost, x)), Fraction(0))
    return LPSolution(value, tuple(x), tuple(t.pivots))
