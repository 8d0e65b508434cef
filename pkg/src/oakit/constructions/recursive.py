"""Generalized Kronecker product and the (s+1)-block expansion built on it."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import ConstructionInvalid, PartitionMismatch, PreconditionViolated
from ..galois import make_field
from ..oa import OrthogonalArray, verify_strength
from .difference import group_kron


def generalized_kronecker(A, blocks: Sequence, s: int) -> np.ndarray:
    """Stack a_i (x) B_i over the rows a_i of A, with (x) based on GF(s) addition.

    ``blocks`` is the row partition B_1, ..., B_n1 of B, in order.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise PartitionMismatch("A must be a matrix")
    blocks = [np.asarray(b, dtype=np.int64) for b in blocks]
    if len(blocks) != A.shape[0]:
        raise PartitionMismatch(f"A has {A.shape[0]} rows but B has {len(blocks)} blocks")
    widths = {b.shape[1] for b in blocks}
    if len(widths) != 1:
        raise PartitionMismatch(f"blocks have differing column counts {sorted(widths)}")
    make_field(s)
    return np.vstack([group_kron(A[i : i + 1], b, s) for i, b in enumerate(blocks)])


def split_rows(B, parts: int) -> list[np.ndarray]:
    B = np.asarray(B)
    if len(B) % parts:
        raise PartitionMismatch(f"{len(B)} rows do not split into {parts} equal blocks")
    return np.split(B, parts)


def he_expand(A: OrthogonalArray, Bs: Sequence[OrthogonalArray]) -> OrthogonalArray:
    """E = [D_1, ..., D_{s+1}] with D_g = A (*) (alpha_g B) for the nonzero alpha_g,
    D_s = 0 (*) B and D_{s+1} = A (x) 0.

    Returns an OA(n2, s^k, 2), k = (s-1) m1 m2 + m1 + m2.
    """
    if not A.is_fixed_level():
        raise PreconditionViolated("A must be a fixed-level array")
    s = A.levels[0]
    f = make_field(s)
    n1, m1 = A.shape
    if len(Bs) != n1:
        raise PreconditionViolated(f"A has {n1} rows but {len(Bs)} arrays B_i were given")
    if m1 == 1:
        if not verify_strength(A, 1):
            raise PreconditionViolated("A: single-column A must be an OA of strength 1")
    elif not verify_strength(A, 2):
        raise PreconditionViolated("A: multi-column A must be an OA of strength 2")
    shapes = {B.shape for B in Bs}
    if len(shapes) != 1:
        raise PreconditionViolated(f"B_i differ in shape: {sorted(shapes)}")
    for i, B in enumerate(Bs):
        if set(B.levels) != {s}:
            raise PreconditionViolated(f"B_{i + 1}: levels {set(B.levels)} differ from s={s}")
        if B.factors < 2 or not verify_strength(B, 2):
            raise PreconditionViolated(f"B_{i + 1}: not an OA of strength 2")

    blocks = [B.cells for B in Bs]
    rows_per_block = blocks[0].shape[0]
    parts = [
        generalized_kronecker(A.cells, [f.mul_table[alpha, b] for b in blocks], s)
        for alpha in range(1, s)
    ]
    parts.append(generalized_kronecker(np.zeros((n1, 1), dtype=np.int64), blocks, s))
    parts.append(group_kron(A.cells, np.zeros((rows_per_block, 1), dtype=np.int64), s))
    E = OrthogonalArray.fixed(np.hstack(parts), s)
    if not verify_strength(E, 2):
        raise ConstructionInvalid("expanded array is not strength 2")
    return E.with_strength(2)
