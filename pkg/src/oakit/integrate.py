"""Monte Carlo integration over [0,1)^k with random, Latin hypercube and
OA-based Latin hypercube samples, plus a replicate variance study."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import stats

from .errors import PlanInvalid
from .oa import OrthogonalArray, verify_strength
from .spacefill import oa_to_lhc

METHODS = ("random", "lhs", "oa_lhs", "oa_jitter")
PLACEMENTS = ("jitter", "midpoint")


@dataclass(frozen=True)
class SamplePlan:
    method: str
    n: int
    k: int
    seed: int | np.random.SeedSequence | None = None
    oa: OrthogonalArray | None = None
    placement: str = "jitter"

    def __post_init__(self):
        if self.method not in METHODS:
            raise PlanInvalid(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.placement not in PLACEMENTS:
            raise PlanInvalid(f"unknown placement {self.placement!r}")
        if self.n < 1 or self.k < 1:
            raise PlanInvalid("need at least one point and one dimension")
        if self.method.startswith("oa_"):
            A = self.oa
            if A is None:
                raise PlanInvalid(f"{self.method} needs a source array")
            if A.shape != (self.n, self.k):
                raise PlanInvalid(f"array is {A.shape}, plan wants ({self.n}, {self.k})")
            if not A.is_fixed_level():
                raise PlanInvalid("source array must be fixed-level")
            if A.factors < 2 or not verify_strength(A, 2):
                raise PlanInvalid("source array must have strength at least 2")


def _offsets(rng: np.random.Generator, shape, placement: str) -> np.ndarray:
    # u in (0, 1]; x = (l - u) / N stays inside [0, 1)
    if placement == "midpoint":
        return np.full(shape, 0.5)
    return 1.0 - rng.random(shape)


def draw_points(plan: SamplePlan) -> np.ndarray:
    """N x k points in [0,1)^k; a fixed seed gives a fixed matrix."""
    rng = np.random.default_rng(plan.seed)
    n, k = plan.n, plan.k
    if plan.method == "random":
        return rng.random((n, k))
    if plan.method == "lhs":
        ranks = np.column_stack([rng.permutation(n) + 1 for _ in range(k)])
    elif plan.method == "oa_lhs":
        ranks = oa_to_lhc(plan.oa, rng).cells
    else:
        # plain OA cells, jittered uniformly inside each cell
        s = plan.oa.levels[0]
        return (plan.oa.cells + 1 - _offsets(rng, (n, k), plan.placement)) / s
    return (ranks - _offsets(rng, (n, k), plan.placement)) / n


def estimate_integral(f: Callable[[np.ndarray], np.ndarray], points) -> float:
    """Sample mean of f over the rows of ``points``; f maps (N, k) -> (N,)."""
    pts = np.asarray(points, dtype=float)
    return float(np.mean(f(pts)))


# --- test functions with exact integrals ------------------------------------------


@dataclass(frozen=True)
class Integrand:
    name: str
    f: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    integral: Callable[[int], float] = field(repr=False)

    def __call__(self, x):
        return self.f(x)


def _weights(k: int) -> np.ndarray:
    return np.arange(1, k + 1, dtype=float)


def _additive(x):
    # sum_j j * (exp(x_j) - 1): smooth, monotone, nonlinear
    return (np.expm1(x) * _weights(x.shape[1])).sum(axis=1)


def _interaction(x):
    c = x - 0.5
    total = c.sum(axis=1)
    return 6.0 * (total**2 - (c**2).sum(axis=1))  # 12 * sum_{i<j} c_i c_j


INTEGRANDS = {
    "constant": Integrand("constant", lambda x: np.full(len(x), 3.0), lambda k: 3.0),
    "additive": Integrand("additive", _additive, lambda k: float(_weights(k).sum() * (np.e - 2))),
    "interaction": Integrand("interaction", _interaction, lambda k: 0.0),
    "mixed": Integrand(
        "mixed",
        lambda x: _additive(x) + _interaction(x),
        lambda k: float(_weights(k).sum() * (np.e - 2)),
    ),
}


# --- replicate study ------------------------------------------------------------------


@dataclass(frozen=True)
class MethodStats:
    method: str
    estimates: np.ndarray = field(repr=False)
    mean: float
    variance: float
    se_variance: float

    @classmethod
    def of(cls, method: str, estimates: np.ndarray) -> "MethodStats":
        r = len(estimates)
        dev2 = (estimates - estimates.mean()) ** 2
        var = float(dev2.sum() / (r - 1))
        se = float(np.std(dev2, ddof=1) / np.sqrt(r))
        return cls(method, estimates, float(estimates.mean()), var, se)


@dataclass(frozen=True)
class VarianceStudy:
    function: str
    n: int
    k: int
    replicates: int
    seed: int
    truth: float | None
    stats: dict[str, MethodStats]

    def __getitem__(self, method: str) -> MethodStats:
        return self.stats[method]

    def squared_errors(self, method: str) -> np.ndarray:
        est = self.stats[method].estimates
        centre = self.truth if self.truth is not None else est.mean()
        return (est - centre) ** 2

    def less_variable(self, a: str, b: str) -> float:
        """One-sided Welch p-value for 'method a has smaller variance than b'."""
        xa, xb = self.squared_errors(a), self.squared_errors(b)
        if np.ptp(xa) == 0 and np.ptp(xb) == 0:
            return 0.0 if xa.mean() < xb.mean() else 1.0
        return float(stats.ttest_ind(xa, xb, equal_var=False, alternative="less").pvalue)

    def gap_in_se(self, a: str, b: str) -> float:
        """(var_b - var_a) in units of the standard error of that difference."""
        sa, sb = self.stats[a], self.stats[b]
        se = np.hypot(sa.se_variance, sb.se_variance)
        diff = sb.variance - sa.variance
        return float("inf") if se == 0 and diff > 0 else float(diff / se) if se else 0.0

    def table(self) -> str:
        lines = [f"# function: {self.function}  N={self.n} k={self.k} R={self.replicates} seed={self.seed}"]
        if self.truth is not None:
            lines.append(f"# truth: {self.truth:.12g}")
        lines.append(f"{'method':<10} {'mean':>16} {'variance':>14} {'se':>12} {'R':>6} {'seed':>6}")
        for m in self.stats.values():
            lines.append(
                f"{m.method:<10} {m.mean:>16.10g} {m.variance:>14.6e} {m.se_variance:>12.4e} "
                f"{self.replicates:>6} {self.seed:>6}"
            )
        return "\n".join(lines) + "\n"


def variance_study(
    f,
    n: int,
    k: int,
    A: OrthogonalArray | None,
    replicates: int,
    seed: int,
    methods=("random", "lhs", "oa_lhs"),
    placement: str = "jitter",
    truth: float | None = None,
) -> VarianceStudy:
    """R independent estimates per method; method m, replicate r uses the seed
    sequence SeedSequence(seed).spawn(len(methods))[m].spawn(R)[r]."""
    if replicates < 2:
        raise PlanInvalid("need at least two replicates")
    if isinstance(f, Integrand):
        truth = f.integral(k) if truth is None else truth
        name, fn = f.name, f.f
    else:
        name, fn = getattr(f, "__name__", "f"), f
    results = {}
    for method, ss in zip(methods, np.random.SeedSequence(seed).spawn(len(methods))):
        SamplePlan(method, n, k, None, A, placement)  # validate once up front
        est = np.array(
            [
                estimate_integral(fn, draw_points(SamplePlan(method, n, k, child, A, placement)))
                for child in ss.spawn(replicates)
            ]
        )
        results[method] = MethodStats.of(method, est)
    return VarianceStudy(name, n, k, replicates, seed, truth, results)
