"""Difference schemes and the group Kronecker product built on them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import ConstructionInvalid, GroupMismatch, InvalidParams, InvalidScheme
from ..galois import is_prime_power, make_field
from ..oa import OrthogonalArray, verify_strength


@dataclass(frozen=True, eq=False)
class AdditiveGroup:
    """Addition tables of GF(s) when s is a prime power, else of Z_s."""

    order: int
    add_table: np.ndarray
    sub_table: np.ndarray

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.sub_table[a, b]


@lru_cache(maxsize=None)
def additive_group(s: int) -> AdditiveGroup:
    if s < 2:
        raise InvalidParams(f"group order must be at least 2, got {s}")
    if is_prime_power(s) and s <= 64:
        f = make_field(s)
        return AdditiveGroup(s, f.add_table, f.sub_table)
    e = np.arange(s)
    add = (e[:, None] + e[None, :]) % s
    sub = (e[:, None] - e[None, :]) % s
    return AdditiveGroup(s, add, sub)


def group_kron(A, B, s: int) -> np.ndarray:
    """Block matrix whose (i, j) block is a_ij + B under the group of order s."""
    A, B = np.asarray(A), np.asarray(B)
    g = additive_group(s)
    n1, m1 = A.shape
    n2, m2 = B.shape
    out = g.add_table[A[:, None, :, None], B[None, :, None, :]]
    return out.reshape(n1 * n2, m1 * m2)


def verify_difference_scheme(M, s: int) -> bool:
    M = np.asarray(M)
    r, c = M.shape
    if M.size and (M.min() < 0 or M.max() >= s):
        return False
    if r % s:
        return c < 2
    g = additive_group(s)
    for i in range(c):
        for j in range(i + 1, c):
            counts = np.bincount(g.sub(M[:, j], M[:, i]), minlength=s)
            if (counts != r // s).any():
                return False
    return True


@dataclass(frozen=True, eq=False)
class DifferenceScheme:
    """A validated D(r, c, s)."""

    matrix: np.ndarray
    s: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.int64)
        if m.ndim != 2 or not verify_difference_scheme(m, self.s):
            raise InvalidScheme(f"matrix is not a difference scheme over a group of order {self.s}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def shape(self):
        return self.matrix.shape


def gf_difference_scheme(s: int) -> DifferenceScheme:
    """The multiplication table of GF(s), a D(s, s, s)."""
    f = make_field(s)
    return DifferenceScheme(f.mul_table.copy(), s)


def _checked(cells, s: int, t: int, what: str) -> OrthogonalArray:
    A = OrthogonalArray.fixed(cells, s)
    if not verify_strength(A, t):
        raise ConstructionInvalid(f"{what} did not produce strength {t}")
    return A.with_strength(t)


def ds_expand(D: DifferenceScheme, add_column: bool = True) -> OrthogonalArray:
    """Stack D + sigma_0, ..., D + sigma_{s-1}; optionally append one more column.

    The extra column repeats sigma_0 1_{r/s} (x) (sigma_0, ..., sigma_{s-1})^T inside
    each of the s stacked blocks, giving an OA(rs, s^(c+1), 2).
    """
    if not isinstance(D, DifferenceScheme):
        raise InvalidScheme("ds_expand needs a DifferenceScheme")
    s = D.s
    r, c = D.shape
    g = additive_group(s)
    blocks = [g.add(D.matrix, sigma) for sigma in range(s)]
    cells = np.vstack(blocks)
    if add_column:
        extra = group_kron(np.zeros((r // s, 1), dtype=np.int64), np.arange(s)[:, None], s)
        cells = np.hstack([cells, np.tile(extra, (s, 1))])
    return _checked(cells, s, 2, "difference scheme expansion")


def kronecker_oa(B: OrthogonalArray, D: DifferenceScheme) -> OrthogonalArray:
    """B (x) D for an OA(N, s^k, 2) B and a D(r, c, s) over the same group."""
    if not B.is_fixed_level() or B.levels[0] != D.s:
        raise GroupMismatch(f"array levels {set(B.levels)} do not match group order {D.s}")
    if B.factors < 2 or not verify_strength(B, 2):
        raise InvalidParams("kronecker_oa needs B of strength 2")
    return _checked(group_kron(B.cells, D.matrix, D.s), D.s, 2, "Kronecker product")
