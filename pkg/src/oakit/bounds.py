"""Lower bounds on the run size of an OA(N, s^k, t).

``lp_bound`` solves the Delsarte program over distance-distribution
variables A_0..A_k.  With L_i = sum_j A_j P_i(j) the constraints are

    A_0 >= 1,  A_i >= 0,  L_1 = ... = L_t = 0,  L_i >= 0 for i > t,

and B_i = L_i / L_0 so that B_0 = 1 holds by normalisation.  Because the
constraints are homogeneous apart from A_0 >= 1, the optimum sits at A_0 = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidParams, SolverScaleExceeded
from .simplex import LPSolution, solve_standard

MAX_LP_FACTORS = 40


def _check(k: int, s: int, t: int) -> None:
    if not (1 <= t <= k and s >= 2):
        raise InvalidParams(f"need k >= t >= 1 and s >= 2, got k={k}, s={s}, t={t}")


def rao_bound(k: int, s: int, t: int) -> int:
    _check(k, s, t)
    u, odd = divmod(t, 2)
    total = sum(math.comb(k, i) * (s - 1) ** i for i in range(u + 1))
    if odd:
        total += math.comb(k - 1, u) * (s - 1) ** (u + 1)
    return total


def krawtchouk(i: int, j: int, k: int, s: int) -> int:
    if not (0 <= i <= k and 0 <= j <= k and s >= 2):
        raise InvalidParams(f"need 0 <= i, j <= k and s >= 2, got i={i}, j={j}, k={k}, s={s}")
    return sum(
        (-1) ** r * (s - 1) ** (i - r) * math.comb(j, r) * math.comb(k - j, i - r)
        for r in range(i + 1)
    )


@dataclass(frozen=True)
class LPProblem:
    """Delsarte program data: ``coefficients[i][j] = P_i(j)``."""

    k: int
    s: int
    t: int
    coefficients: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, k: int, s: int, t: int) -> "LPProblem":
        _check(k, s, t)
        rows = tuple(tuple(krawtchouk(i, j, k, s) for j in range(k + 1)) for i in range(k + 1))
        return cls(k, s, t, rows)

    def standard_form(self):
        """Substitute A_0 = 1 + y_0 and add one surplus per inequality row.

        Variables: y_0, A_1..A_k, then surpluses for rows t+1..k.
        """
        k, t, P = self.k, self.t, self.coefficients
        n_surplus = k - t
        A, b = [], []
        for i in range(1, k + 1):
            row = list(P[i]) + [0] * n_surplus
            if i > t:
                row[k + 1 + (i - t - 1)] = -1
            A.append(row)
            b.append(-P[i][0])
        cost = [1] * (k + 1) + [0] * n_surplus
        return cost, A, b

    def is_feasible(self, a) -> bool:
        a = [Fraction(v) for v in a]
        if a[0] < 1 or any(v < 0 for v in a[1:]):
            return False
        for i in range(1, self.k + 1):
            L = sum(p * v for p, v in zip(self.coefficients[i], a))
            if (i <= self.t and L != 0) or L < 0:
                return False
        return True


@lru_cache(maxsize=None)
def lp_solve(k: int, s: int, t: int) -> LPSolution:
    if k > MAX_LP_FACTORS:
        raise SolverScaleExceeded(f"k={k} exceeds the solver cap {MAX_LP_FACTORS}")
    problem = LPProblem.build(k, s, t)
    cost, A, b = problem.standard_form()
    sol = solve_standard(cost, A, b)
    a = (1 + sol.x[0],) + sol.x[1 : k + 1]
    return LPSolution(sol.value + 1, a, sol.pivots)


def lp_bound(k: int, s: int, t: int) -> Fraction:
    return lp_solve(k, s, t).value


@dataclass(frozen=True)
class BoundReport:
    k: int
    s: int
    t: int
    rao: int
    lp: Fraction
    lp_ceiled: int
    admissible: int

    def lines(self) -> list[str]:
        return [
            f"k {self.k}",
            f"s {self.s}",
            f"t {self.t}",
            f"rao {self.rao}",
            f"lp {self.lp}",
            f"lp_ceiled {self.lp_ceiled}",
            f"admissible {self.admissible}",
        ]


def bound_report(k: int, s: int, t: int) -> BoundReport:
    rao = rao_bound(k, s, t)
    lp = lp_bound(k, s, t)
    lp_ceiled = math.ceil(lp)
    step = s**t
    low = max(rao, lp_ceiled)
    admissible = -(-low // step) * step
    return BoundReport(k, s, t, rao, lp, lp_ceiled, admissible)
