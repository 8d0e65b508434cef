"""Hadamard matrices (Sylvester, Paley I/II) and their two-level arrays.

Matrices are plain integer numpy arrays over {+1, -1}.  Conversions to
arrays map +1 -> 0 and -1 -> 1.
"""
from __future__ import annotations

import numpy as np

from ..errors import BadResidueClass, ConstructionInvalid, InvalidParams, NotHadamard
from ..galois import make_field, prime_power
from ..oa import OrthogonalArray, verify_strength

SYLVESTER_SEED = np.array([[1, -1], [1, 1]])


def is_hadamard(H) -> bool:
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or not np.isin(H, (-1, 1)).all():
        return False
    n = H.shape[0]
    return bool((H @ H.T == n * np.eye(n, dtype=H.dtype)).all())


def _require(H) -> np.ndarray:
    H = np.asarray(H, dtype=np.int64)
    if not is_hadamard(H):
        raise NotHadamard("matrix fails H H^T = N I")
    return H


def normalize_first_column(H) -> np.ndarray:
    H = np.array(H, dtype=np.int64)
    return H * H[:, :1]


def normalize(H) -> np.ndarray:
    """Negate rows, then columns, so the first row and column are all +1."""
    H = normalize_first_column(H)
    return H * H[:1, :]


def sylvester(m: int) -> np.ndarray:
    if m < 1:
        raise InvalidParams(f"m must be at least 1, got {m}")
    H = SYLVESTER_SEED
    for _ in range(m - 1):
        H = np.kron(H, SYLVESTER_SEED)
    return H


def hadamard_kron(H1, H2) -> np.ndarray:
    return np.kron(_require(H1), _require(H2))


def jacobsthal(q: int) -> np.ndarray:
    """a_ij = chi(alpha_i - alpha_j) over GF(q), elements in field index order."""
    f = make_field(q)
    e = np.arange(q)
    return np.asarray(f.quadratic_character(f.sub_table[e[:, None], e[None, :]]), dtype=np.int64)


def _odd_prime_power(q: int) -> None:
    p, _ = prime_power(q)
    if p == 2:
        raise BadResidueClass(f"q must be odd, got {q}")


def paley1(q: int) -> np.ndarray:
    _odd_prime_power(q)
    if q % 4 != 3:
        raise BadResidueClass(f"Paley I needs q = 3 mod 4, got {q}")
    A = jacobsthal(q)
    ones = np.ones((q, 1), dtype=np.int64)
    H = np.block([[np.ones((1, 1), dtype=np.int64), -ones.T], [ones, A + np.eye(q, dtype=np.int64)]])
    if not is_hadamard(H):
        raise ConstructionInvalid(f"Paley I failed for q={q}")
    return H


def paley2(q: int) -> np.ndarray:
    """Order 2q + 2 Hadamard matrix for q = 1 mod 4.

    The lower-left inner block is A - I_q; reading it as A - J_q never gives
    a Hadamard matrix, which the validation below would catch.
    """
    _odd_prime_power(q)
    if q % 4 != 1:
        raise BadResidueClass(f"Paley II needs q = 1 mod 4, got {q}")
    A = jacobsthal(q)
    I = np.eye(q, dtype=np.int64)
    o = np.ones((q, 1), dtype=np.int64)
    one = np.ones((1, 1), dtype=np.int64)
    H = np.block([
        [one, o.T, -one, o.T],
        [o, A + I, o, A - I],
        [-one, o.T, -one, -o.T],
        [o, A - I, -o, -A - I],
    ])
    if not is_hadamard(H):
        raise ConstructionInvalid(f"Paley II failed for q={q}")
    return H


def hadamard_to_oa(H) -> OrthogonalArray:
    """OA(N, 2^(N-1), 2) from a Hadamard matrix of order N > 2."""
    H = _require(H)
    if H.shape[0] <= 2:
        raise InvalidParams("Hadamard order must exceed 2")
    cells = (1 - normalize_first_column(H)[:, 1:]) // 2
    A = OrthogonalArray.fixed(cells, 2)
    if not verify_strength(A, 2):
        raise ConstructionInvalid("Hadamard columns are not strength 2")
    return A.with_strength(2)


def oa_to_hadamard(A: OrthogonalArray) -> np.ndarray:
    """Append a column of +1 (level 0) in front and map back to +/-1."""
    if any(s != 2 for s in A.levels) or A.factors != A.runs - 1:
        raise NotHadamard("need an OA(N, 2^(N-1), 2)")
    H = np.hstack([np.ones((A.runs, 1), dtype=np.int64), 1 - 2 * A.cells])
    return _require(H)


def hadamard_double(H) -> OrthogonalArray:
    """[H; -H] as an OA(2N, 2^N, 3)."""
    H = _require(H)
    cells = (1 - np.vstack([H, -H])) // 2
    A = OrthogonalArray.fixed(cells, 2)
    if not verify_strength(A, 3):
        raise ConstructionInvalid("[H; -H] is not strength 3")
    return A.with_strength(3)


def format_pm(H) -> str:
    return "".join("".join("+" if v > 0 else "-" for v in row) + "\n" for row in np.asarray(H))


def parse_pm(text: str) -> np.ndarray:
    rows = [line.strip() for line in text.split("\n") if line.strip() and not line.startswith("#")]
    if any(set(r) - {"+", "-"} for r in rows):
        raise NotHadamard("rows may contain only '+' and '-'")
    return np.array([[1 if ch == "+" else -1 for ch in r] for r in rows], dtype=np.int64)
