from __future__ import annotations

import itertools

import numpy as np

from ..errors import ConstructionInvalid, InvalidParams
from ..galois import make_field
from ..oa import OrthogonalArray, verify_strength


def full_factorial(s: int, n: int) -> np.ndarray:
    """All n-tuples over 0..s-1 in lexicographic order."""
    return np.array(list(itertools.product(range(s), repeat=n)), dtype=np.int64).reshape(-1, n)


def projective_points(s: int, n: int) -> np.ndarray:
    """Nonzero n-tuples whose first nonzero entry is 1, lexicographic."""
    pts = full_factorial(s, n)[1:]
    first = pts[np.arange(len(pts)), (pts != 0).argmax(axis=1)]
    return pts[first == 1]


def rao_hamming(s: int, n: int) -> OrthogonalArray:
    """OA(s^n, s^k, 2) with k = (s^n - 1)/(s - 1): column z is [C_1 ... C_n] z over GF(s)."""
    if n < 2:
        raise InvalidParams(f"n must be at least 2, got {n}")
    f = make_field(s)
    runs = full_factorial(s, n)
    cols = []
    for z in projective_points(s, n):
        col = np.zeros(len(runs), dtype=np.int64)
        for i, zi in enumerate(z):
            col = f.add_table[col, f.mul_table[runs[:, i], zi]]
        cols.append(col)
    A = OrthogonalArray.fixed(np.column_stack(cols), s)
    if not verify_strength(A, 2):
        raise ConstructionInvalid(f"Rao-Hamming array for s={s}, n={n} is not strength 2")
    return A.with_strength(2)
