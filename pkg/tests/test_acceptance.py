"""Acceptance gate: one test per criterion; the terminal summary prints PASS/FAIL per criterion."""
import itertools
import time
from fractions import Fraction

import numpy as np

from conftest import data_path, load
from oakit.bounds import lp_bound, rao_bound
from oakit.codes import code_from_generator, code_to_oa, dual_generator, in_span, min_distance, parse_matrix
from oakit.constructions import (
    DifferenceScheme,
    bibd_complement,
    bibd_residual,
    ds_expand,
    gf_difference_scheme,
    hadamard_to_oa,
    hadamard_to_sbibd,
    he_expand,
    is_hadamard,
    kronecker_oa,
    mols_to_oa,
    oa_to_hadamard,
    oa_to_mols,
    paley1,
    paley2,
    parse_squares,
    rao_hamming,
    sylvester,
    verify_bibd,
    verify_difference_scheme,
)
from oakit.constructions.hadamard import normalize_first_column
from oakit.galois import make_field
from oakit.integrate import INTEGRANDS, variance_study
from oakit.metrics import generalized_resolution, j_characteristic, j_spectrum
from oakit.oa import LevelCollapseMap, OrthogonalArray, collapse_levels, max_strength, read_annotations, verify_strength
from oakit.spacefill import (
    GroupSpec,
    SlicePartition,
    is_latin_hypercube,
    lhc_to_oa,
    lin_rotation_olhd,
    oa_to_lhc,
    verify_grouped,
    verify_nested,
    verify_sliced,
    verify_strong,
)
from test_properties import FIXTURES, flip_columns, krawtchouk_orthogonal, perturb, scramble, strength_profile


def exact_strength(A, t):
    return verify_strength(A, t) and (t == A.factors or not verify_strength(A, t + 1))


def rows(a):
    return sorted(map(tuple, np.asarray(a).tolist()))


def test_criterion_1_golden_fixtures():
    arrays = {name: load(name) for name in ["table1.oa", "table2.oa", "table3.oa", "table5.oa", "table6.oa", "table7.oa", "table8.oa"]}
    start = time.perf_counter()
    assert exact_strength(arrays["table1.oa"], 3)
    assert exact_strength(arrays["table2.oa"], 2) and len(set(arrays["table2.oa"].levels)) == 2
    assert exact_strength(arrays["table3.oa"], 2)

    T5 = arrays["table5.oa"]
    assert T5.shape == (9, 9) and verify_difference_scheme(T5.cells, 3)

    T6 = arrays["table6.oa"]
    P = SlicePartition.parse(read_annotations(data_path("table6.oa").read_text())["slices"])
    delta = LevelCollapseMap((0, 0, 1, 1))
    assert len(P.blocks) == 4 and T6.shape == (16, 3) and verify_strength(T6, 2)
    assert verify_sliced(T6, P, delta, 2, balanced=True)
    assert all(verify_nested(T6, block, delta, 2) for block in P.blocks)

    T7 = arrays["table7.oa"]
    assert T7.shape == (8, 3) and verify_strong(T7, 2, 3)
    assert verify_strength(collapse_levels(T7, LevelCollapseMap.floor_div(8, 2)), 3)
    for i, j in itertools.permutations(range(3), 2):
        pair = OrthogonalArray(np.column_stack([T7.cells[:, i] // 4, T7.cells[:, j] // 2]), (2, 4))
        assert verify_strength(pair, 2)
    assert verify_strength(T7, 1)

    T8 = arrays["table8.oa"]
    spec = GroupSpec(((0, 1, 2, 3), (4, 5, 6), (7, 8, 9)), (3, 3, 3), 2)
    assert T8.shape == (27, 10) and set(T8.levels) == {3}
    assert verify_grouped(T8, spec)
    assert time.perf_counter() - start < 1.0


def test_criterion_2_j_and_resolution():
    T3 = load("table3.oa")
    start = time.perf_counter()
    assert j_characteristic(T3, [0, 1, 2]) == 4 == Fraction(1, 3) * 12
    signed = np.where(T3.cells == 0, 1, -1)
    brute = max(abs(int(signed[:, list(S)].prod(axis=1).sum())) for S in itertools.combinations(range(11), 3))
    assert brute == 4
    spec = j_spectrum(T3)
    sizes = np.array([bin(m).count("1") for m in range(len(spec))])
    assert spec[sizes == 3].max() == brute
    R = generalized_resolution(T3)
    assert isinstance(R, Fraction) and R == Fraction(11, 3)
    assert time.perf_counter() - start < 1.0


def test_criterion_3_bound_dominance():
    start = time.perf_counter()
    for k in range(1, 13):
        for s in (2, 3, 4):
            for t in range(1, min(k, 4) + 1):
                assert lp_bound(k, s, t) >= rao_bound(k, s, t), (k, s, t)
    assert time.perf_counter() - start < 60.0
    assert rao_bound(11, 2, 2) == 12 and rao_bound(4, 2, 3) == 8 and rao_bound(4, 3, 2) == 9
    for name, (k, s, t) in [("table3.oa", (11, 2, 2)), ("table1.oa", (4, 2, 3)), ("example3_D.oa", (4, 3, 2))]:
        A = load(name)
        assert A.shape == (rao_bound(k, s, t), k) and set(A.levels) == {s} and verify_strength(A, t)


def test_criterion_4_constructions_verify_independently():
    start = time.perf_counter()
    checked = []
    for s, n in itertools.product([2, 3, 4, 5, 7, 8, 9], [2, 3]):
        checked.append((rao_hamming(s, n), 2))
    for m in range(1, 6):
        H = sylvester(m)
        assert is_hadamard(H)
        if m >= 2:
            checked.append((hadamard_to_oa(H), 2))
    for q in (3, 7, 11, 19, 23):
        checked.append((hadamard_to_oa(paley1(q)), 2))
    for q in (5, 13):
        checked.append((hadamard_to_oa(paley2(q)), 2))
    for s in (2, 3):
        D = gf_difference_scheme(s)
        E = ds_expand(D)
        checked.append((E, 2))
        checked.append((kronecker_oa(E, D), 2))
        A = OrthogonalArray.fixed(np.arange(s)[:, None], s)
        checked.append((he_expand(A, [E] * s), 2))
    checked.append((ds_expand(DifferenceScheme(load("table5.oa").cells, 3)), 2))
    for A, t in checked:
        assert verify_strength(A, t)
    assert time.perf_counter() - start < 30.0


def test_criterion_5_round_trips():
    L = parse_squares(data_path("mols4.sq").read_text())
    A = mols_to_oa(L)
    assert A.shape == (16, 5) and oa_to_mols(A) == L

    for H in (sylvester(3), paley1(11), paley2(5)):
        B = hadamard_to_oa(H)
        back = oa_to_hadamard(B)
        assert rows(back) == rows(normalize_first_column(H))
        assert hadamard_to_oa(back) == B

    G = parse_matrix(data_path("example4_generator.mat").read_text())
    C = code_from_generator(G, 2)
    assert rows(C.codewords) == rows(load("table4_code.oa").cells)
    O = code_to_oa(C)
    H = dual_generator(C)
    dual_d = min_distance(code_from_generator(H, 2))
    assert O.strength == 2 == dual_d - 1 == max_strength(O)
    printed = parse_matrix(data_path("example4_dual.mat").read_text())
    f = make_field(2)
    assert all(in_span(v, H, f) for v in printed) and all(in_span(v, printed, f) for v in H)


def _five_identities(m, v, b, r, k, lam):
    m = np.asarray(m)
    pairs = [int(m[i] @ m[j]) for i, j in itertools.combinations(range(v), 2)]
    return (
        m.shape == (v, b)
        and (m.sum(axis=1) == r).all()
        and (m.sum(axis=0) == k).all()
        and set(pairs) == {lam}
        and b * k == v * r
        and lam * (v - 1) == r * (k - 1)
    )


def test_criterion_6_bibd_arithmetic():
    M = hadamard_to_sbibd(sylvester(3))
    assert _five_identities(M.matrix, 7, 7, 3, 3, 1)
    N = 8
    C = bibd_complement(M)
    assert C.parameters == (N - 1, N - 1, N // 2, N // 2, N // 4)
    assert _five_identities(C.matrix, *C.parameters)
    R = bibd_residual(M, 0)
    assert R.parameters == (N // 2, N - 2, N // 2 - 1, N // 4, N // 4 - 1)
    assert _five_identities(R.matrix, *R.parameters) and verify_bibd(R.matrix, *R.parameters)


def test_criterion_7_latin_hypercube_laws():
    D = load("example3_D.oa")
    for seed in range(200):
        L = oa_to_lhc(D, seed)
        assert is_latin_hypercube(L.cells)
        assert lhc_to_oa(L, 3) == D

    M = lin_rotation_olhd(rao_hamming(3, 2), [[-1], [0], [1]])
    target = np.arange(-4, 5)
    assert all(np.array_equal(np.sort(M[:, j]), target) for j in range(M.shape[1]))
    G = np.rint(M.T @ M).astype(int)
    assert (G[:2, 2:] == 0).all()  # the two rotation blocks of M_1
    assert (G == np.diag(np.diag(G))).all()

    # orthogonal B columns need n >= 4 (no two permutations of (-1, 0, 1) are orthogonal)
    A = mols_to_oa(parse_squares(data_path("mols4.sq").read_text()))
    A4 = OrthogonalArray.fixed(A.cells[:, :4], 4)
    B = np.array([[-1.5, 0.5], [-0.5, -1.5], [0.5, 1.5], [1.5, -0.5]])
    M4 = (2 * lin_rotation_olhd(A4, B)).astype(int)
    G4 = M4.T @ M4
    assert (G4[:4, 4:] == 0).all()
    assert all(np.array_equal(np.sort(M4[:, j]), np.arange(-15, 16, 2)) for j in range(8))


def test_criterion_8_variance_ordering():
    D = load("example3_D.oa")
    start = time.perf_counter()
    S = variance_study(INTEGRANDS["additive"], 9, 4, D, 2000, 12345)
    elapsed = time.perf_counter() - start
    print(S.table())
    p_oa = S.less_variable("oa_lhs", "lhs")
    p_lhs = S.less_variable("lhs", "random")
    print(f"p(oa_lhs < lhs) = {p_oa:.4g}; p(lhs < random) = {p_lhs:.4g}")
    assert elapsed < 60.0
    assert S["lhs"].variance < S["random"].variance and p_lhs < 0.01
    assert S["oa_lhs"].variance < S["lhs"].variance and p_oa < 0.01, (
        f"var(oa_lhs)={S['oa_lhs'].variance:.6g} var(lhs)={S['lhs'].variance:.6g} p={p_oa:.4g}"
    )


def test_criterion_9_property_suites():
    start = time.perf_counter()
    rng = np.random.default_rng(9)
    arrays = [load(name) for name in FIXTURES] + [rao_hamming(4, 2)]
    profiles = [strength_profile(A) for A in arrays]
    for trial in range(500):
        idx = trial % len(arrays)
        A = arrays[idx]
        assert strength_profile(scramble(A, rng)) == profiles[idx]
        if trial % 5 == 0:
            B = perturb(A, rng)
            assert strength_profile(scramble(B, rng)) == strength_profile(B)
    for name in ["table1.oa", "table3.oa", "table4_code.oa"]:
        A = load(name)
        spec = j_spectrum(A)
        for _ in range(50):
            mask = rng.integers(0, 2, A.factors)
            assert (j_spectrum(flip_columns(A, mask)) == spec).all()
    for k in range(1, 9):
        for s in (2, 3, 4, 5):
            assert krawtchouk_orthogonal(k, s)
    assert time.perf_counter() - start < 30.0
