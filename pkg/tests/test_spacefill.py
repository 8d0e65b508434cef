import itertools

import numpy as np
import pytest

from conftest import data_path, load
from oakit.constructions import mols_to_oa, parse_squares, rao_hamming
from oakit.errors import InvalidParams, LevelCountMismatch, MixedLevelsUnsupported, NotFromGamma, ShapeMismatch
from oakit.oa import LevelCollapseMap, OrthogonalArray, collapse_levels, read_annotations, verify_strength
from oakit.spacefill import (
    GroupSpec,
    LatinHypercube,
    SlicePartition,
    centered_levels,
    compositions,
    is_latin_hypercube,
    lhc_permutations,
    lhc_to_oa,
    lin_rotation_olhd,
    oa_to_lhc,
    shared_map,
    strong_failure,
    verify_grouped,
    verify_nested,
    verify_sliced,
    verify_strong,
    verify_strong_2plus,
)

DELTA = LevelCollapseMap((0, 0, 1, 1))


def example3_l():
    return LatinHypercube.from_oa(load("example3_L.oa"))


# --- OA-based Latin hypercubes ---------------------------------------------------------


def test_example3_reproduced_by_injected_permutations(example3_d):
    L = example3_l()
    assert L.cells[:, 0].tolist() == list(range(1, 10))
    assert lhc_to_oa(L, 3) == example3_d
    perms = lhc_permutations(example3_d, L)
    assert oa_to_lhc(example3_d, permutations=perms) == L


def test_s_equals_n_gives_shifted_array():
    A = OrthogonalArray.fixed(np.array([[0, 1], [1, 2], [2, 0]]), 3)
    assert (oa_to_lhc(A, 0).cells == A.cells + 1).all()


def test_seed_determinism(example3_d):
    assert oa_to_lhc(example3_d, 11) == oa_to_lhc(example3_d, 11)
    assert any(oa_to_lhc(example3_d, 11) != oa_to_lhc(example3_d, s) for s in range(12, 20))


@pytest.mark.parametrize("seed", range(25))
def test_lhc_laws(example3_d, seed):
    L = oa_to_lhc(example3_d, seed)
    assert is_latin_hypercube(L.cells)
    assert lhc_to_oa(L, 3) == example3_d


def test_lhc_from_mixed_or_unbalanced_rejected(table2):
    with pytest.raises(MixedLevelsUnsupported):
        oa_to_lhc(table2, 0)
    with pytest.raises(InvalidParams):
        oa_to_lhc(OrthogonalArray.fixed([[0], [0], [1]], 2), 0)
    with pytest.raises(InvalidParams):
        oa_to_lhc(load("table1.oa"))


def test_lhc_serialization():
    L = example3_l()
    A = L.to_oa()
    assert A.levels == (9,) * 4 and A.cells.min() == 0
    assert LatinHypercube.from_oa(A) == L
    with pytest.raises(ShapeMismatch):
        LatinHypercube(np.array([[1, 1], [2, 2], [2, 3]]))


# --- rotation construction ---------------------------------------------------------------


def test_centered_levels():
    assert centered_levels(3).tolist() == [-1, 0, 1]
    assert centered_levels(4).tolist() == [-1.5, -0.5, 0.5, 1.5]


def is_centered_permutation(col, n):
    return np.array_equal(np.sort(col), centered_levels(n * n))


def test_rotation_n3():
    M = lin_rotation_olhd(rao_hamming(3, 2), [[-1], [0], [1]])
    assert M.shape == (9, 4)
    assert all(is_centered_permutation(M[:, j], 3) for j in range(4))
    G = np.rint(M.T @ M).astype(int)
    assert (G == np.diag(np.diag(G))).all()


@pytest.mark.parametrize("b", [[-1, 0, 1], [0, 1, -1], [1, -1, 0]])
def test_rotation_n3_every_column_is_permutation(b):
    M = lin_rotation_olhd(rao_hamming(3, 2), np.array(b)[:, None])
    assert all(is_centered_permutation(M[:, j], 3) for j in range(4))


def test_rotation_orthogonal_b_columns_n4():
    A = mols_to_oa(parse_squares(data_path("mols4.sq").read_text()))
    A4 = OrthogonalArray.fixed(A.cells[:, :4], 4)
    B = np.array([[-1.5, 0.5], [-0.5, -1.5], [0.5, 1.5], [1.5, -0.5]])
    assert B[:, 0] @ B[:, 1] == 0
    M = lin_rotation_olhd(A4, B)
    assert M.shape == (16, 8)
    assert all(is_centered_permutation(M[:, j], 4) for j in range(8))
    G = (2 * M).astype(int).T @ (2 * M).astype(int)
    assert (G == np.diag(np.diag(G))).all()


def test_rotation_cross_block_inner_products_follow_b():
    # matching columns of M_1 and M_2 have inner product n (1 + n^2) b_1 . b_2; others vanish
    n = 3
    B = np.array([[-1, 1], [0, -1], [1, 0]])
    M = lin_rotation_olhd(rao_hamming(3, 2), B)
    G = np.rint(M.T @ M).astype(int)
    cross = G[:4, 4:]
    assert (cross == n * (1 + n * n) * int(B[:, 0] @ B[:, 1]) * np.eye(4, dtype=int)).all()


def test_rotation_errors():
    with pytest.raises(NotFromGamma):
        lin_rotation_olhd(rao_hamming(3, 2), [[0], [0], [0]])
    with pytest.raises(ShapeMismatch):
        lin_rotation_olhd(rao_hamming(3, 2), [[-1], [1]])
    with pytest.raises(ShapeMismatch):
        lin_rotation_olhd(OrthogonalArray.fixed(rao_hamming(3, 2).cells[:, :3], 3), [[-1], [0], [1]])


# --- sliced and nested -----------------------------------------------------------------------


def table6_partition():
    return SlicePartition.parse(read_annotations(data_path("table6.oa").read_text())["slices"])


def test_table6_is_balanced_sliced():
    T6 = load("table6.oa")
    P = table6_partition()
    assert P.blocks == tuple(tuple(range(4 * i, 4 * i + 4)) for i in range(4))
    assert verify_sliced(T6, P, DELTA, 2, balanced=True)
    assert verify_sliced(T6, P, [DELTA] * 3, 2, balanced=True)


def test_shuffled_partition_fails():
    T6 = load("table6.oa")
    P = SlicePartition(((0, 1, 2, 4), (3, 5, 6, 7), (8, 9, 10, 12), (11, 13, 14, 15)))
    assert not verify_sliced(T6, P, DELTA, 2)


def test_trivial_partition():
    T6 = load("table6.oa")
    assert verify_sliced(T6, SlicePartition.contiguous(16, 1), DELTA, 2)


def test_balanced_flag_is_stricter():
    # collapse-valid slices whose columns miss some original levels
    A = OrthogonalArray.fixed(np.array([[0, 0], [0, 2], [2, 0], [2, 2], [1, 1], [1, 3], [3, 1], [3, 3]]), 4)
    P = SlicePartition.contiguous(8, 2)
    assert verify_sliced(A, P, DELTA, 2)
    assert not verify_sliced(A, P, DELTA, 2, balanced=True)


def test_nested():
    T6 = load("table6.oa")
    for block in table6_partition().blocks:
        assert verify_nested(T6, block, DELTA, 2)
    assert not verify_nested(T6, [0, 1, 2, 4], DELTA, 2)


def test_partition_validation_and_format():
    with pytest.raises(InvalidParams):
        SlicePartition(((0, 1), (1, 2)))
    with pytest.raises(InvalidParams):
        SlicePartition(((0, 1), (2,)))
    assert SlicePartition.parse("0-3 4-7").format() == "0-3 4-7"
    assert SlicePartition.parse("0,2 1,3").blocks == ((0, 2), (1, 3))


def test_map_mode():
    assert shared_map(DELTA) and shared_map([DELTA, DELTA])
    assert not shared_map([DELTA, LevelCollapseMap((0, 1, 0, 1))])


# --- strong orthogonal arrays -------------------------------------------------------------


def test_compositions():
    assert list(compositions(3, 2)) == [(1, 2), (2, 1)]
    assert list(compositions(4, 1)) == [(4,)]
    assert len(list(compositions(5, 3))) == 6


def test_table7_strong_and_listed_properties():
    T7 = load("table7.oa")
    assert verify_strong(T7, 2, 3)
    # all columns collapsed by floor(a/4) form an OA(8, 2^3, 3)
    assert verify_strength(collapse_levels(T7, LevelCollapseMap.floor_div(8, 2)), 3)
    # any two columns collapsed to 2 and 4 levels are strength 2
    for i, j in itertools.permutations(range(3), 2):
        C = OrthogonalArray(np.column_stack([T7.cells[:, i] // 4, T7.cells[:, j] // 2]), (2, 4))
        assert verify_strength(C, 2)
    assert verify_strength(T7, 1)


def test_table7_swap_breaks_strength():
    c = load("table7.oa").cells.copy()
    c[[0, 1], 0] = c[[1, 0], 0]
    A = OrthogonalArray.fixed(c, 8)
    assert not verify_strong(A, 2, 3)
    assert strong_failure(A, 2, 3) is not None


def test_strong_t1_is_balance():
    A = OrthogonalArray.fixed(np.array([[0, 1], [1, 2], [2, 0], [0, 2], [1, 0], [2, 1]]), 3)
    assert verify_strong(A, 3, 1)


def test_strong_level_mismatch():
    with pytest.raises(LevelCountMismatch):
        verify_strong(load("table1.oa"), 2, 3)


def test_strong_implies_collapsed_strength_two():
    T7 = load("table7.oa")
    assert verify_strength(collapse_levels(T7, LevelCollapseMap.floor_div(8, 2)), 2)


def test_strength_2plus():
    T7 = load("table7.oa")
    assert verify_strong_2plus(OrthogonalArray.fixed(T7.cells // 2, 4), 2)
    counter = np.array([[1, 2, 1, 3, 2, 0, 0, 3], [3, 1, 3, 2, 2, 0, 0, 1]]).T
    A = OrthogonalArray.fixed(counter, 4)
    assert verify_strength(OrthogonalArray.fixed(counter // 2, 2), 2)
    assert not verify_strong_2plus(A, 2)
    assert verify_strong_2plus(OrthogonalArray.fixed(np.arange(4)[:, None], 4), 2)
    with pytest.raises(LevelCountMismatch):
        verify_strong_2plus(T7, 2)


# --- grouped ------------------------------------------------------------------------------


def table8_spec(t=None):
    notes = read_annotations(data_path("table8.oa").read_text())
    return GroupSpec.parse(notes["groups"], int(notes["strength"]) if t is None else t)


def test_table8_grouped():
    T8 = load("table8.oa")
    spec = table8_spec()
    assert spec.groups == ((0, 1, 2, 3), (4, 5, 6), (7, 8, 9)) and spec.strengths == (3, 3, 3)
    assert verify_grouped(T8, spec)
    assert not verify_grouped(T8, table8_spec(t=3))


def test_single_group_reduces_to_strength(table1):
    for t in (1, 2, 3):
        spec = GroupSpec(((0, 1, 2, 3),), (t,), t)
        assert verify_grouped(table1, spec) == verify_strength(table1, t)


def test_group_spec_validation():
    with pytest.raises(InvalidParams):
        GroupSpec(((0, 1), (1, 2)), (2, 2), 2)
    with pytest.raises(InvalidParams):
        GroupSpec(((0, 1), (2, 3)), (1, 2), 2)
    assert table8_spec().format() == "0-3:3 4-6:3 7-9:3"
