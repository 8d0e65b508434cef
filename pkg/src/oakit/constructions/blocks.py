"""Block designs from Hadamard matrices: SBIBD, complement and residual."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BlockIndexOutOfRange, ConstructionInvalid, InvalidParams, NotSBIBD
from .hadamard import _require, normalize


def bibd_parameters_hold(v: int, b: int, r: int, k: int, lam: int) -> bool:
    return b * k == v * r and lam * (v - 1) == r * (k - 1)


def verify_bibd(M, v: int, b: int, r: int, k: int, lam: int) -> bool:
    """Direct counts: row sums r, column sums k, every treatment pair together lam times."""
    M = np.asarray(M)
    if M.shape != (v, b) or not np.isin(M, (0, 1)).all():
        return False
    if not ((M.sum(axis=1) == r).all() and (M.sum(axis=0) == k).all()):
        return False
    G = M @ M.T
    off = G[~np.eye(v, dtype=bool)]
    return bool((off == lam).all()) and bibd_parameters_hold(v, b, r, k, lam)


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """v x b 0/1 matrix, entry (i, j) = 1 iff treatment i is in block j."""

    matrix: np.ndarray
    v: int
    b: int
    r: int
    k: int
    lam: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.int64)
        if not verify_bibd(m, self.v, self.b, self.r, self.k, self.lam):
            raise ConstructionInvalid(f"matrix is not a BIBD{self.parameters}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def parameters(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.b, self.r, self.k, self.lam)

    @property
    def symmetric(self) -> bool:
        return self.v == self.b

    def __eq__(self, other):
        return (
            isinstance(other, IncidenceMatrix)
            and self.parameters == other.parameters
            and np.array_equal(self.matrix, other.matrix)
        )


def hadamard_to_sbibd(H) -> IncidenceMatrix:
    """SBIBD(N-1, N-1, N/2-1, N/2-1, N/4-1); +1 entries become incidences."""
    H = _require(H)
    n = H.shape[0]
    if n < 8 or n % 4:
        raise InvalidParams(f"order must be a multiple of 4 and at least 8, got {n}")
    core = normalize(H)[1:, 1:]
    M = (core == 1).astype(np.int64)
    return IncidenceMatrix(M, n - 1, n - 1, n // 2 - 1, n // 2 - 1, n // 4 - 1)


def _require_sbibd(M: IncidenceMatrix) -> None:
    if not isinstance(M, IncidenceMatrix) or not M.symmetric:
        raise NotSBIBD("expected a symmetric BIBD")


def bibd_complement(M: IncidenceMatrix) -> IncidenceMatrix:
    """Replace every block by its complement: (v, v, v-k, v-k, v-2k+lam)."""
    _require_sbibd(M)
    v, k, lam = M.v, M.k, M.lam
    return IncidenceMatrix(1 - M.matrix, v, v, v - k, v - k, v - 2 * k + lam)


def bibd_residual(M: IncidenceMatrix, block: int) -> IncidenceMatrix:
    """Drop one block and its treatments: (v-k, v-1, k, k-lam, lam)."""
    _require_sbibd(M)
    if not 0 <= block < M.b:
        raise BlockIndexOutOfRange(f"block {block} outside 0..{M.b - 1}")
    keep_rows = M.matrix[:, block] == 0
    keep_cols = np.arange(M.b) != block
    sub = M.matrix[np.ix_(keep_rows, keep_cols)]
    v, k, lam = M.v, M.k, M.lam
    return IncidenceMatrix(sub, v - k, v - 1, k, k - lam, lam)
