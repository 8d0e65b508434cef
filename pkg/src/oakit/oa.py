"""Orthogonal array value type, strength checks and the interchange format.

Interchange format (ASCII, LF)::

    # optional comment lines anywhere
    N k
    s_1 s_2 ... s_k
    N rows of k integers, cell j in 0..s_j-1

Serialization writes no trailing whitespace and ends with a single LF.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptySelection,
    FormatError,
    IndexOutOfRange,
    InvalidParams,
    MapMismatch,
    RangeError,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    """An N x k array with per-column level counts.

    ``strength`` is only ever set by code that has verified it; arrays built
    from raw data leave it as ``None``.
    """

    cells: np.ndarray
    levels: tuple[int, ...]
    strength: int | None = None

    def __post_init__(self):
        cells = np.array(self.cells, dtype=np.int64, copy=True)
        if cells.ndim != 2:
            raise InvalidParams("cells must be a 2-d array")
        levels = tuple(int(s) for s in self.levels)
        n, k = cells.shape
        if n == 0 or k == 0:
            raise InvalidParams("an orthogonal array needs at least one run and one column")
        if len(levels) != k:
            raise InvalidParams(f"{k} columns but {len(levels)} level counts")
        if min(levels) < 2:
            raise InvalidParams("every column needs at least two levels")
        bad = (cells < 0) | (cells >= np.array(levels))
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise RangeError(f"cell ({i}, {j}) = {cells[i, j]} outside 0..{levels[j] - 1}")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "levels", levels)

    @classmethod
    def fixed(cls, cells, s: int, strength: int | None = None) -> "OrthogonalArray":
        cells = np.asarray(cells)
        return cls(cells, (s,) * cells.shape[1], strength)

    @property
    def runs(self) -> int:
        return self.cells.shape[0]

    @property
    def factors(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def is_fixed_level(self) -> bool:
        return len(set(self.levels)) == 1

    def with_strength(self, t: int | None) -> "OrthogonalArray":
        return OrthogonalArray(self.cells, self.levels, t)

    def __eq__(self, other):
        return (
            isinstance(other, OrthogonalArray)
            and self.levels == other.levels
            and np.array_equal(self.cells, other.cells)
        )

    def __repr__(self):
        lv = " ".join(str(s) for s in self.levels)
        return f"OrthogonalArray(N={self.runs}, levels=[{lv}], strength={self.strength})"


@dataclass(frozen=True)
class LevelCollapseMap:
    """Surjection from 0..s-1 onto 0..s0-1 with equal-size preimages."""

    mapping: tuple[int, ...]
    target: int = field(default=0)

    def __post_init__(self):
        mapping = tuple(int(v) for v in self.mapping)
        target = self.target or (max(mapping) + 1 if mapping else 0)
        s = len(mapping)
        if target < 1 or s % target:
            raise MapMismatch(f"cannot collapse {s} levels onto {target}")
        counts = np.bincount(mapping, minlength=target) if s else np.zeros(0)
        if len(counts) != target or (counts != s // target).any():
            raise MapMismatch(f"preimages of {mapping} are not all of size {s // target}")
        object.__setattr__(self, "mapping", mapping)
        object.__setattr__(self, "target", target)

    @classmethod
    def floor_div(cls, s: int, s0: int) -> "LevelCollapseMap":
        """The map a -> floor(a / (s / s0))."""
        if s % s0:
            raise MapMismatch(f"{s0} does not divide {s}")
        return cls(tuple(a // (s // s0) for a in range(s)), s0)

    @classmethod
    def identity(cls, s: int) -> "LevelCollapseMap":
        return cls(tuple(range(s)), s)

    @property
    def source(self) -> int:
        return len(self.mapping)

    def __call__(self, values):
        return np.asarray(self.mapping)[values]


# --- strength -----------------------------------------------------------------


def tuple_counts(cells: np.ndarray, levels: Sequence[int]) -> np.ndarray:
    """Counts of every level combination, indexed in mixed radix (last column fastest)."""
    idx = np.zeros(cells.shape[0], dtype=np.int64)
    for j, s in enumerate(levels):
        idx = idx * s + cells[:, j]
    return np.bincount(idx, minlength=math.prod(levels))


def strength_failure(A: OrthogonalArray, t: int) -> tuple[int, ...] | None:
    """First column subset (lexicographic) violating strength ``t``, or None."""
    if not 1 <= t <= A.factors:
        raise InvalidParams(f"strength must lie in 1..{A.factors}, got {t}")
    n = A.runs
    for cols in combinations(range(A.factors), t):
        lv = [A.levels[j] for j in cols]
        size = math.prod(lv)
        if n % size:
            return cols
        counts = tuple_counts(A.cells[:, cols], lv)
        if counts.min() != counts.max():
            return cols
    return None


def verify_strength(A: OrthogonalArray, t: int) -> bool:
    """True iff every t-column projection holds each level tuple equally often."""
    bad = strength_failure(A, t)
    if bad is not None:
        log.debug("strength %d fails on columns %s", t, bad)
        return False
    return True


def strength_cap(levels: Sequence[int], n: int) -> int:
    """Largest t whose t smallest level counts multiply to at most n."""
    prod, t = 1, 0
    for s in sorted(levels):
        prod *= s
        if prod > n:
            break
        t += 1
    return t


def max_strength(A: OrthogonalArray) -> int:
    best = 0
    for t in range(1, strength_cap(A.levels, A.runs) + 1):
        if not verify_strength(A, t):
            break
        best = t
    return best


# --- transformations ----------------------------------------------------------


def project(A: OrthogonalArray, cols: Iterable[int]) -> OrthogonalArray:
    cols = list(cols)
    if not cols:
        raise EmptySelection("no columns selected")
    for j in cols:
        if not 0 <= j < A.factors:
            raise IndexOutOfRange(f"column {j} outside 0..{A.factors - 1}")
    return OrthogonalArray(A.cells[:, cols], tuple(A.levels[j] for j in cols))


def collapse_levels(A: OrthogonalArray, maps) -> OrthogonalArray:
    """Apply one LevelCollapseMap per column (a single map is shared by all)."""
    if isinstance(maps, LevelCollapseMap):
        maps = [maps] * A.factors
    maps = list(maps)
    if len(maps) != A.factors:
        raise MapMismatch(f"{len(maps)} maps for {A.factors} columns")
    cols = []
    for j, m in enumerate(maps):
        if m.source != A.levels[j]:
            raise MapMismatch(f"column {j} has {A.levels[j]} levels, map expects {m.source}")
        cols.append(m(A.cells[:, j]))
    return OrthogonalArray(np.column_stack(cols), tuple(m.target for m in maps))


def is_simple(A: OrthogonalArray) -> bool:
    return len(np.unique(A.cells, axis=0)) == A.runs


def distinct_rows(A: OrthogonalArray) -> int:
    return len(np.unique(A.cells, axis=0))


# --- interchange format -------------------------------------------------------


def _content_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise FormatError(f"expected integers, got {line!r}", lineno) from None


def parse_oa(text: str | bytes) -> OrthogonalArray:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = _content_lines(text)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise FormatError("empty input", 1) from None
    header = _ints(line, lineno)
    if len(header) != 2:
        raise FormatError("header must be 'N k'", lineno)
    n, k = header
    if n < 1 or k < 1:
        raise FormatError("N and k must be positive", lineno)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise FormatError("missing level line", lineno + 1) from None
    levels = _ints(line, lineno)
    if len(levels) != k:
        raise FormatError(f"expected {k} level counts, got {len(levels)}", lineno)
    if min(levels) < 2:
        raise FormatError("level counts must be at least 2", lineno)
    rows = []
    for lineno, line in lines:
        row = _ints(line, lineno)
        if len(row) != k:
            raise FormatError(f"expected {k} entries, got {len(row)}", lineno)
        for j, (v, s) in enumerate(zip(row, levels)):
            if not 0 <= v < s:
                raise RangeError(f"row {len(rows)}, column {j}: {v} outside 0..{s - 1}", lineno)
        rows.append(row)
    if len(rows) != n:
        raise FormatError(f"header declares {n} rows, found {len(rows)}", lineno)
    return OrthogonalArray(np.array(rows, dtype=np.int64), tuple(levels))


def read_annotations(text: str) -> dict[str, str]:
    """``# key: value`` comment lines as a dict (later keys win)."""
    notes = {}
    for raw in text.split("\n"):
        line = raw.strip()
        if line.startswith("#") and ":" in line:
            key, _, value = line[1:].partition(":")
            notes[key.strip()] = value.strip()
    return notes


def format_oa(A: OrthogonalArray, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{A.runs} {A.factors}")
    out.append(" ".join(str(s) for s in A.levels))
    out.extend(" ".join(str(int(v)) for v in row) for row in A.cells)
    return "\n".join(out) + "\n"


def read_oa(path) -> OrthogonalArray:
    with open(path, "rb") as fh:
        return parse_oa(fh.read())


def write_oa(A: OrthogonalArray, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_oa(A, comments))
