"""J-characteristics, generalized resolution and regularity for two-level designs.

Levels map 0 -> +1 and 1 -> -1.  Flipping the map for any column only
changes signs of the column products, so every |J| value is unaffected.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import AllZeroJ, EmptySubset, IndexOutOfRange, NotTwoLevel, TooManyColumns
from .oa import OrthogonalArray

MAX_EXHAUSTIVE_COLUMNS = 20


def signed_view(A: OrthogonalArray) -> np.ndarray:
    if any(s != 2 for s in A.levels):
        raise NotTwoLevel("J-characteristics are defined for two-level arrays only")
    return 1 - 2 * A.cells


def _as_signed(D) -> np.ndarray:
    if isinstance(D, OrthogonalArray):
        return signed_view(D)
    D = np.asarray(D)
    if not np.isin(D, (-1, 1)).all():
        raise NotTwoLevel("signed view must contain only +1 and -1")
    return D


def j_characteristic(D, cols: Iterable[int]) -> int:
    D = _as_signed(D)
    cols = list(cols)
    if not cols:
        raise EmptySubset("J is undefined for the empty column set")
    if min(cols) < 0 or max(cols) >= D.shape[1]:
        raise IndexOutOfRange(f"columns {cols} outside 0..{D.shape[1] - 1}")
    return abs(int(np.prod(D[:, cols], axis=1).sum()))


def j_spectrum(D) -> np.ndarray:
    """|J| for every column subset, indexed by bitmask (bit j = column j).

    Uses a Walsh-Hadamard transform of the row-pattern counts, so the cost is
    O(k 2^k) rather than O(N 2^k) products.
    """
    D = _as_signed(D)
    k = D.shape[1]
    if k > MAX_EXHAUSTIVE_COLUMNS:
        raise TooManyColumns(f"{k} columns exceeds the exhaustive limit {MAX_EXHAUSTIVE_COLUMNS}")
    bits = (D == -1).astype(np.int64)
    codes = bits @ (1 << np.arange(k, dtype=np.int64))
    w = np.bincount(codes, minlength=1 << k).astype(np.int64)
    h = 1
    while h < len(w):
        w = w.reshape(-1, 2, h)
        w = np.stack((w[:, 0] + w[:, 1], w[:, 0] - w[:, 1]), axis=1).reshape(-1)
        h *= 2
    return np.abs(w)


def _popcounts(k: int) -> np.ndarray:
    masks = np.arange(1 << k)
    return np.array([bin(m).count("1") for m in masks])


def generalized_resolution(D) -> Fraction:
    """r + (1 - max J_r / N) for the smallest r with a nonzero J_r, as an exact rational."""
    D = _as_signed(D)
    n, k = D.shape
    if k <= MAX_EXHAUSTIVE_COLUMNS:
        spectrum = j_spectrum(D)
        sizes = _popcounts(k)
        for r in range(1, k + 1):
            top = int(spectrum[sizes == r].max())
            if top > 0:
                return r + (1 - Fraction(top, n))
    else:
        for r in range(1, k + 1):
            top = max(j_characteristic(D, c) for c in combinations(range(k), r))
            if top > 0:
                return r + (1 - Fraction(top, n))
    raise AllZeroJ(f"every J vanishes up to size {k}; resolution undefined > {k}")


def is_regular(D) -> bool:
    D = _as_signed(D)
    n = D.shape[0]
    spectrum = j_spectrum(D)[1:]
    return bool(np.isin(spectrum, (0, n)).all())
