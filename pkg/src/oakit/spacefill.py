"""Space-filling designs built from orthogonal arrays, and verifiers for the
sliced, nested, strong and grouped variants.

Random permutation contract for ``oa_to_lhc``: ``numpy.random.default_rng(seed)``
(PCG64) is created once; columns are visited left to right and, within a
column, levels 0..s-1 in order; each (column, level) pair consumes one
``rng.permutation(N // s)`` call.  Position i (in row order) among the rows
holding level u receives u*N/s + 1 + perm[i].
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    InvalidParams,
    LevelCountMismatch,
    MixedLevelsUnsupported,
    NotFromGamma,
    ShapeMismatch,
)
from .oa import LevelCollapseMap, OrthogonalArray, collapse_levels, project, verify_strength

RNG_CONTRACT = "numpy-default_rng(PCG64); per column, per level: rng.permutation(N/s)"


# --- Latin hypercubes -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LatinHypercube:
    """N x k integer matrix whose columns are permutations of 1..N."""

    cells: np.ndarray

    def __post_init__(self):
        c = np.array(self.cells, dtype=np.int64)
        if c.ndim != 2 or c.size == 0:
            raise ShapeMismatch("a Latin hypercube needs a nonempty matrix")
        if not is_latin_hypercube(c):
            raise ShapeMismatch("every column must be a permutation of 1..N")
        c.setflags(write=False)
        object.__setattr__(self, "cells", c)

    @property
    def runs(self) -> int:
        return self.cells.shape[0]

    @property
    def factors(self) -> int:
        return self.cells.shape[1]

    def to_oa(self) -> OrthogonalArray:
        """Interchange form: N levels per column, entries stored as l - 1."""
        return OrthogonalArray.fixed(self.cells - 1, self.runs)

    @classmethod
    def from_oa(cls, A: OrthogonalArray) -> "LatinHypercube":
        if set(A.levels) != {A.runs}:
            raise ShapeMismatch("a stored Latin hypercube has N levels in every column")
        return cls(A.cells + 1)

    def __eq__(self, other):
        return isinstance(other, LatinHypercube) and np.array_equal(self.cells, other.cells)


def is_latin_hypercube(cells) -> bool:
    c = np.asarray(cells)
    if c.ndim != 2:
        return False
    target = np.arange(1, c.shape[0] + 1)
    return bool((np.sort(c, axis=0) == target[:, None]).all())


def _level_blocks(A: OrthogonalArray) -> int:
    if not A.is_fixed_level():
        raise MixedLevelsUnsupported(f"levels {A.levels} are not all equal")
    s = A.levels[0]
    if A.runs % s:
        raise InvalidParams(f"{A.runs} runs are not divisible by s={s}")
    if any((np.bincount(A.cells[:, j], minlength=s) != A.runs // s).any() for j in range(A.factors)):
        raise InvalidParams("every column must hold each level N/s times")
    return s


def oa_to_lhc(A: OrthogonalArray, seed: int | None = None, permutations=None) -> LatinHypercube:
    """Replace the N/s entries equal to u in each column by u*N/s + 1 .. (u+1)*N/s.

    ``permutations[j][u]`` (a permutation of 0..N/s-1) overrides the random
    draw for column j, level u; otherwise the module-level RNG contract applies.
    """
    s = _level_blocks(A)
    n, k = A.shape
    m = n // s
    if permutations is None:
        if seed is None:
            raise InvalidParams("a seed is required for random permutations")
        rng = np.random.default_rng(seed)
        permutations = [[rng.permutation(m) for _ in range(s)] for _ in range(k)]
    out = np.empty((n, k), dtype=np.int64)
    for j in range(k):
        for u in range(s):
            perm = np.asarray(permutations[j][u], dtype=np.int64)
            if sorted(perm.tolist()) != list(range(m)):
                raise InvalidParams(f"permutation for column {j}, level {u} is not a permutation of 0..{m - 1}")
            out[A.cells[:, j] == u, j] = u * m + 1 + perm
    return LatinHypercube(out)


def lhc_to_oa(L: LatinHypercube, s: int) -> OrthogonalArray:
    """Collapse entry l to ceil(l*s/N) - 1."""
    n = L.runs
    if n % s:
        raise InvalidParams(f"{n} runs are not divisible by s={s}")
    return OrthogonalArray.fixed(-((-L.cells * s) // n) - 1, s)


def lhc_permutations(A: OrthogonalArray, L: LatinHypercube) -> list[list[np.ndarray]]:
    """The per-(column, level) permutations that turn A into L."""
    s = _level_blocks(A)
    m = A.runs // s
    return [
        [L.cells[A.cells[:, j] == u, j] - u * m - 1 for u in range(s)]
        for j in range(A.factors)
    ]


# --- rotation-based orthogonal Latin hypercubes ---------------------------------


def centered_levels(u: int) -> np.ndarray:
    """g_u: the vector with i-th entry i - (u+1)/2."""
    return np.arange(1, u + 1) - (u + 1) / 2


def lin_rotation_olhd(A: OrthogonalArray, B) -> np.ndarray:
    """Rotate column pairs of A (symbols replaced via B) by V = [[1, -n], [n, 1]].

    A must be an OA(n^2, n^{2f}, 2); B is n x p with columns permuting g_n.
    Returns the n^2 x 2pf matrix [M_1, ..., M_p].
    """
    B = np.asarray(B, dtype=float)
    if B.ndim == 1:
        B = B[:, None]
    if not A.is_fixed_level():
        raise ShapeMismatch("A must be a fixed-level array")
    n = A.levels[0]
    if A.runs != n * n or A.factors % 2 or A.factors == 0:
        raise ShapeMismatch(f"A must be n^2 x 2f with n={n}, got {A.shape}")
    if B.ndim != 2 or B.shape[0] != n:
        raise ShapeMismatch(f"B must have {n} rows, got shape {B.shape}")
    g = centered_levels(n)
    for j in range(B.shape[1]):
        if not np.array_equal(np.sort(B[:, j]), g):
            raise NotFromGamma(f"column {j} of B is not a permutation of {g.tolist()}")
    if not verify_strength(A, 2):
        raise ShapeMismatch("A is not an orthogonal array of strength 2")
    V = np.array([[1.0, -n], [n, 1.0]])
    blocks = []
    for j in range(B.shape[1]):
        Aj = B[A.cells, j]
        blocks.extend(Aj[:, 2 * i : 2 * i + 2] @ V for i in range(A.factors // 2))
    return np.hstack(blocks)


# --- sliced and nested ----------------------------------------------------------


@dataclass(frozen=True)
class SlicePartition:
    """Ordered disjoint row blocks of equal size covering 0..N-1."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(r) for r in b) for b in self.blocks)
        if not blocks or not blocks[0]:
            raise InvalidParams("a partition needs at least one nonempty block")
        if len({len(b) for b in blocks}) != 1:
            raise InvalidParams("slices must have equal size")
        rows = sorted(r for b in blocks for r in b)
        if rows != list(range(len(rows))):
            raise InvalidParams("slices must be disjoint and cover every row")
        object.__setattr__(self, "blocks", blocks)

    @property
    def runs(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def contiguous(cls, n: int, v: int) -> "SlicePartition":
        if v < 1 or n % v:
            raise InvalidParams(f"{n} rows do not split into {v} slices")
        m = n // v
        return cls(tuple(tuple(range(i * m, (i + 1) * m)) for i in range(v)))

    @classmethod
    def parse(cls, text: str) -> "SlicePartition":
        """Annotation form ``0-3 4-7 8-11`` (inclusive, 0-based); single rows allowed."""
        return cls(tuple(tuple(_parse_range(tok)) for tok in text.split()))

    def format(self) -> str:
        return " ".join(_format_range(b) for b in self.blocks)


def _parse_range(tok: str) -> list[int]:
    out = []
    for part in tok.split(","):
        lo, _, hi = part.partition("-")
        try:
            a, b = int(lo), int(hi or lo)
        except ValueError:
            raise InvalidParams(f"bad index range {tok!r}") from None
        out.extend(range(a, b + 1))
    return out


def _format_range(idx: Sequence[int]) -> str:
    idx = list(idx)
    if idx == list(range(idx[0], idx[-1] + 1)) and len(idx) > 1:
        return f"{idx[0]}-{idx[-1]}"
    return ",".join(str(i) for i in idx)


def _collapsed_is_oa2(sub: OrthogonalArray, maps, s0: int) -> bool:
    C = collapse_levels(sub, maps)
    return set(C.levels) == {s0} and verify_strength(C, min(2, C.factors))


def verify_sliced(A: OrthogonalArray, P: SlicePartition, maps, s0: int, balanced: bool = False) -> bool:
    """Every slice collapses to an OA(N/v, s0^k, 2); ``maps`` is one map or one per column."""
    if P.runs != A.runs:
        return False
    for block in P.blocks:
        sub = OrthogonalArray(A.cells[list(block)], A.levels)
        if not _collapsed_is_oa2(sub, maps, s0):
            return False
        if balanced and not verify_strength(sub, 1):
            return False
    return True


def verify_nested(A: OrthogonalArray, rows: Sequence[int], maps, s0: int) -> bool:
    rows = sorted(set(int(r) for r in rows))
    if not rows or rows[0] < 0 or rows[-1] >= A.runs:
        return False
    sub = OrthogonalArray(A.cells[rows], A.levels)
    return _collapsed_is_oa2(sub, maps, s0)


def shared_map(maps) -> bool:
    """True when a single collapse map is applied to every column."""
    return isinstance(maps, LevelCollapseMap) or len({m.mapping for m in maps}) == 1


# --- strong orthogonal arrays ---------------------------------------------------


def compositions(t: int, g: int):
    """Ordered tuples of g positive integers summing to t."""
    for cuts in itertools.combinations(range(1, t), g - 1):
        bounds = (0, *cuts, t)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(g))


def _require_levels(A: OrthogonalArray, levels: int) -> None:
    bad = [j for j, s in enumerate(A.levels) if s != levels]
    if bad:
        raise LevelCountMismatch(f"columns {bad} do not have {levels} levels")


def _floor_collapse(cells: np.ndarray, s: int, t: int, us: Sequence[int]) -> OrthogonalArray:
    cols = [cells[:, i] // s ** (t - u) for i, u in enumerate(us)]
    return OrthogonalArray(np.column_stack(cols), tuple(s**u for u in us))


def strong_failure(A: OrthogonalArray, s: int, t: int):
    """First (columns, composition) whose collapse is not of strength g, else None."""
    _require_levels(A, s**t)
    for g in range(1, min(t, A.factors) + 1):
        for cols in itertools.combinations(range(A.factors), g):
            sub = A.cells[:, cols]
            for us in compositions(t, g):
                if not verify_strength(_floor_collapse(sub, s, t, us), g):
                    return cols, us
    return None


def verify_strong(A: OrthogonalArray, s: int, t: int) -> bool:
    return strong_failure(A, s, t) is None


def verify_strong_2plus(A: OrthogonalArray, s: int) -> bool:
    """Every ordered column pair collapses to OA(N, (s^2)^1 s^1, 2)."""
    _require_levels(A, s * s)
    for i, j in itertools.permutations(range(A.factors), 2):
        C = OrthogonalArray(np.column_stack([A.cells[:, i], A.cells[:, j] // s]), (s * s, s))
        if not verify_strength(C, 2):
            return False
    return True


# --- grouped orthogonal arrays --------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    """Column groups with per-group strengths t_i and an overall strength t."""

    groups: tuple[tuple[int, ...], ...]
    strengths: tuple[int, ...]
    t: int

    def __post_init__(self):
        groups = tuple(tuple(int(c) for c in g) for g in self.groups)
        strengths = tuple(int(x) for x in self.strengths)
        if len(groups) != len(strengths) or not groups:
            raise InvalidParams("need one strength per group")
        cols = sorted(c for g in groups for c in g)
        if cols != list(range(len(cols))):
            raise InvalidParams("groups must be disjoint and cover every column")
        if any(ti < self.t for ti in strengths):
            raise InvalidParams(f"group strengths {strengths} must all be >= t={self.t}")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "strengths", strengths)

    @property
    def factors(self) -> int:
        return sum(len(g) for g in self.groups)

    @classmethod
    def parse(cls, text: str, t: int) -> "GroupSpec":
        """Annotation form ``0-3:3 4-6:3 7-9:3`` (columns:strength)."""
        groups, strengths = [], []
        for tok in text.split():
            cols, sep, ti = tok.rpartition(":")
            if not sep:
                raise InvalidParams(f"group {tok!r} lacks ':strength'")
            groups.append(tuple(_parse_range(cols)))
            strengths.append(int(ti))
        return cls(tuple(groups), tuple(strengths), t)

    def format(self) -> str:
        return " ".join(f"{_format_range(g)}:{ti}" for g, ti in zip(self.groups, self.strengths))


def verify_grouped(A: OrthogonalArray, spec: GroupSpec) -> bool:
    if spec.factors != A.factors:
        return False
    if not verify_strength(A, spec.t):
        return False
    return all(verify_strength(project(A, g), ti) for g, ti in zip(spec.groups, spec.strengths))
