"""Mutually orthogonal Latin squares and their strength-2 arrays.

Square file format: a header ``s k`` followed by k blocks of s rows each
(comments start with '#').
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import FormatError, NotConvertible, NotMOLS
from ..oa import OrthogonalArray, verify_strength


def is_latin_square(L) -> bool:
    L = np.asarray(L)
    s = L.shape[0]
    if L.shape != (s, s):
        return False
    target = np.arange(s)
    return all((np.sort(L, axis=ax) == (target[None, :] if ax == 1 else target[:, None])).all() for ax in (0, 1))


def orthogonal_pair(L1, L2) -> bool:
    L1, L2 = np.asarray(L1), np.asarray(L2)
    s = L1.shape[0]
    return len(np.unique(L1 * s + L2)) == s * s


def mols_failure(squares) -> str | None:
    for i, L in enumerate(squares):
        if not is_latin_square(L):
            return f"square {i} is not a Latin square"
    for i, j in combinations(range(len(squares)), 2):
        if not orthogonal_pair(squares[i], squares[j]):
            return f"squares {i} and {j} are not orthogonal"
    return None


def verify_mols(squares) -> bool:
    return mols_failure(squares) is None


@dataclass(frozen=True, eq=False)
class LatinSquareSet:
    order: int
    squares: tuple[np.ndarray, ...]

    def __post_init__(self):
        squares = tuple(np.array(L, dtype=np.int64) for L in self.squares)
        if any(L.shape != (self.order, self.order) for L in squares):
            raise NotMOLS(f"every square must be {self.order} x {self.order}")
        problem = mols_failure(squares)
        if problem:
            raise NotMOLS(problem)
        object.__setattr__(self, "squares", squares)

    def __eq__(self, other):
        return (
            isinstance(other, LatinSquareSet)
            and self.order == other.order
            and len(self.squares) == len(other.squares)
            and all(np.array_equal(a, b) for a, b in zip(self.squares, other.squares))
        )


def mols_to_oa(L: LatinSquareSet) -> OrthogonalArray:
    s = L.order
    r, c = np.divmod(np.arange(s * s), s)
    cols = [r, c] + [sq[r, c] for sq in L.squares]
    A = OrthogonalArray.fixed(np.column_stack(cols), s)
    if not verify_strength(A, 2):
        raise NotMOLS("superimposed squares do not give a strength-2 array")
    return A.with_strength(2)


def oa_to_mols(A: OrthogonalArray) -> LatinSquareSet:
    if not A.is_fixed_level() or A.factors < 3:
        raise NotConvertible("need a fixed-level array with at least three columns")
    s = A.levels[0]
    if A.runs != s * s:
        raise NotConvertible(f"need {s * s} runs, got {A.runs}")
    cell = A.cells[:, 0] * s + A.cells[:, 1]
    if len(np.unique(cell)) != s * s:
        raise NotConvertible("first two columns do not index every cell exactly once")
    squares = []
    for j in range(2, A.factors):
        sq = np.empty((s, s), dtype=np.int64)
        sq[A.cells[:, 0], A.cells[:, 1]] = A.cells[:, j]
        squares.append(sq)
    try:
        return LatinSquareSet(s, tuple(squares))
    except NotMOLS as exc:
        raise NotConvertible(str(exc)) from None


def parse_squares(text: str) -> LatinSquareSet:
    rows = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            try:
                rows.append((lineno, [int(v) for v in line.split()]))
            except ValueError:
                raise FormatError(f"expected integers, got {line!r}", lineno) from None
    if not rows or len(rows[0][1]) != 2:
        raise FormatError("header must be 's k'", rows[0][0] if rows else 1)
    s, k = rows[0][1]
    body = rows[1:]
    if len(body) != s * k or any(len(r) != s for _, r in body):
        raise FormatError(f"expected {k} squares of {s} rows with {s} entries each")
    data = np.array([r for _, r in body], dtype=np.int64).reshape(k, s, s)
    return LatinSquareSet(s, tuple(data))


def format_squares(L: LatinSquareSet) -> str:
    out = [f"{L.order} {len(L.squares)}"]
    for sq in L.squares:
        out.extend(" ".join(str(int(v)) for v in row) for row in sq)
    return "\n".join(out) + "\n"
