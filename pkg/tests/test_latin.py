import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ameb_forge import latin
from ameb_forge.catalog import square
from ameb_forge.errors import (
    BudgetExhausted,
    NonexistentResolution,
    NotAResolution,
    NotLatin,
    OrderMismatch,
    ShapeError,
    ShiftOutOfRange,
    UnsupportedOrder,
)
from ameb_forge.latin import LatinSquare, cyclic_square

from conftest import brute_mols, brute_mwols

FIG1_LEFT = [[0, 2, 1], [1, 0, 2], [2, 1, 0]]


def test_is_latin_examples():
    assert latin.is_latin(FIG1_LEFT)
    assert latin.is_latin([[0]])
    assert not latin.is_latin([[0, 1], [0, 1]])
    assert not latin.is_latin([[0, 2], [2, 0]])
    with pytest.raises(ShapeError):
        latin.is_latin([[0, 1, 2], [1, 2, 0]])


def test_latin_square_rejects_bad_grid():
    with pytest.raises(NotLatin):
        LatinSquare([[0, 1], [0, 1]])
    L = LatinSquare(FIG1_LEFT)
    with pytest.raises(ValueError):
        L.grid[0, 0] = 5  # read-only


def test_mols_examples():
    left, right = square("fig1_left"), square("fig1_right")
    assert latin.are_mols(left, right)
    assert not latin.are_mols(left, left)
    c3 = cyclic_square(3)
    assert not latin.are_mols(c3, latin.shift_symbols(c3, 1))
    with pytest.raises(OrderMismatch):
        latin.are_mols(c3, cyclic_square(4))


def test_mwols_examples():
    assert latin.are_mwols(square("fig1_left"), square("fig1_right"))
    for a, b in itertools.combinations(["fig2_a", "fig2_b", "fig2_c"], 2):
        assert latin.are_mwols(square(a), square(b))
    assert latin.are_mwols(square("ex4_L1"), square("ex4_L2"))
    with pytest.raises(OrderMismatch):
        latin.are_mwols(cyclic_square(3), cyclic_square(5))


def test_order10_pair_is_weak_but_not_orthogonal():
    L1, L2 = square("ex4_L1"), square("ex4_L2")
    assert brute_mwols(L1.grid, L2.grid) and not brute_mols(L1.grid, L2.grid)
    assert not latin.are_mols(L1, L2)


def test_check_family():
    fig2 = [square(k) for k in ("fig2_a", "fig2_b", "fig2_c")]
    assert latin.check_family(fig2, "mwols") == []
    # the printed order-4 triple also happens to be pairwise orthogonal
    assert latin.check_family(fig2, "mols") == []
    assert all(brute_mols(a.grid, b.grid) for a, b in itertools.combinations(fig2, 2))
    assert latin.check_family([square("ex4_L1"), square("ex4_L2")], "mols") == [(0, 1)]
    assert latin.check_family([cyclic_square(5)], "mols") == []
    # a row-constant member is judged weakly even in mols mode
    assert latin.check_family(fig2 + [latin.row_constant_array(4)], "mols") == []
    with pytest.raises(OrderMismatch):
        latin.check_family([cyclic_square(3), cyclic_square(4)])


def test_cyclic():
    assert cyclic_square(1).grid.tolist() == [[0]]
    assert cyclic_square(3).grid.tolist() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    assert cyclic_square(5)[2, 4] == 1
    assert cyclic_square(3) == square("fig1_right")


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_gf_family_is_complete_mols(q):
    fam = latin.gf_mwols_family(q)
    assert len(fam) == q - 1
    assert latin.check_family(fam, "mols") == []
    assert latin.check_family(fam, "mwols") == []


def test_gf_family_q2_and_errors():
    assert len(latin.gf_mwols_family(2)) == 1
    from ameb_forge.errors import NotPrimePower
    with pytest.raises(NotPrimePower):
        latin.gf_mwols_family(6)


def test_gf_family_entries_follow_field_arithmetic():
    from ameb_forge import gf
    els = gf.enumerate_field(gf.field_of_order(5))
    vals = [int(e) for e in els]  # [0, 1, 2, 4, 3]: powers of the generator 2
    assert vals == [0, 1, 2, 4, 3]
    fam = latin.gf_mwols_family(5)
    for s, L in enumerate(fam):
        a = pow(2, s, 5)
        for i, j in itertools.product(range(5), repeat=2):
            assert vals[L[i, j]] == (vals[i] + a * vals[j]) % 5


def test_shift_symbols():
    L = square("fig1_left")
    assert latin.shift_symbols(L, 0) == L
    assert latin.shift_symbols(L, 1).grid.tolist() == [[1, 0, 2], [2, 1, 0], [0, 2, 1]]
    with pytest.raises(ShiftOutOfRange):
        latin.shift_symbols(L, 3)


def test_shift_invariance_gf_family():
    A, B = latin.gf_mwols_family(4)[:2]
    for l, m in itertools.product(range(4), repeat=2):
        SA, SB = latin.shift_symbols(A, l), latin.shift_symbols(B, m)
        assert latin.are_mols(SA, SB)


def test_column_of():
    assert latin.column_of(square("fig1_left"), 0, 2) == 1
    assert all(latin.column_of(cyclic_square(6), 0, k) == k for k in range(6))
    assert latin.column_of(square("fig2_a"), 1, 0) == 3
    pos = latin.column_lookup(square("ex4_L1"))
    g = square("ex4_L1").grid
    for i in range(10):
        for k in range(10):
            assert g[i, pos[i, k]] == k


def test_direct_product():
    one = cyclic_square(1)
    K = square("fig2_a")
    assert latin.direct_product(one, K) == K
    assert latin.direct_product(K, one) == K
    P = latin.direct_product(cyclic_square(2), cyclic_square(2))
    assert P.order == 4 and latin.is_latin(P.grid)
    L = square("fig1_left")
    assert P[0, 0] == 0
    Q = latin.direct_product(L, cyclic_square(2))
    for i, j, s, t in itertools.product(range(3), range(3), range(2), range(2)):
        assert Q[2 * i + s, 2 * j + t] == 2 * L[i, j] + (s + t) % 2


@pytest.mark.parametrize("d1,d2", [(3, 5), (4, 3), (4, 5)])
def test_direct_product_preserves_weak_orthogonality(d1, d2):
    A = latin.gf_mwols_family(d1)[:2]
    B = latin.gf_mwols_family(d2)[:2]
    fam = latin.direct_product_family(A, B)
    assert len(fam) == 2
    assert brute_mwols(fam[0].grid, fam[1].grid)


def test_fig1_times_gf5_gives_order15_pair():
    fam = latin.direct_product_family([square("fig1_left"), square("fig1_right")],
                                      latin.gf_mwols_family(5))
    assert len(fam) == 2 and fam[0].order == 15
    assert latin.are_mwols(fam[0], fam[1])


def test_find_resolution_examples():
    R3 = latin.find_resolution(cyclic_square(3))
    assert R3.is_valid_for(cyclic_square(3))
    # the only transversals of cyclic(3) are the broken diagonals j - i = c
    for t in R3:
        assert len({(c - r) % 3 for r, c in t.cells}) == 1
    R5 = latin.find_resolution(cyclic_square(5))
    assert len(R5) == 5 and R5.is_valid_for(cyclic_square(5))
    with pytest.raises(NonexistentResolution):
        latin.find_resolution(cyclic_square(2))
    with pytest.raises(NonexistentResolution):
        latin.find_resolution(cyclic_square(4))


def test_find_resolution_budget_and_determinism():
    with pytest.raises(BudgetExhausted) as info:
        latin.find_resolution(cyclic_square(9), budget=10)
    assert info.value.nodes > 10
    a = latin.find_resolution(square("fig2_a"))
    b = latin.find_resolution(square("fig2_a"))
    assert a == b


def test_bundled_order10_square_has_resolution():
    L = square("ex4_L1")
    R = latin.find_resolution(L)
    assert R.is_valid_for(L)
    comp = latin.transversal_companion(L, R)
    assert latin.are_mwols(comp.base, comp.square)


def test_transversal_oracle_on_small_squares(order3_squares):
    # brute force: every permutation whose cells carry distinct symbols
    for g in order3_squares:
        L = LatinSquare(g)
        brute = [p for p in itertools.permutations(range(3))
                 if len({g[r][p[r]] for r in range(3)}) == 3]
        assert latin.enumerate_transversals(L) == sorted(brute)


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
def test_companion_of_cyclic(n):
    L = cyclic_square(n)
    comp = latin.transversal_companion(L, latin.find_resolution(L))
    assert latin.is_latin(comp.square.grid)
    assert brute_mwols(comp.base.grid, comp.square.grid)
    assert [comp.base[i, 0] for i in range(n)] == list(range(n))


def test_companion_normalizes_rows():
    L = LatinSquare(square("fig2_a").grid[[2, 0, 3, 1]])
    comp = latin.transversal_companion(L, latin.find_resolution(L))
    assert comp.base.grid[:, 0].tolist() == [0, 1, 2, 3]
    assert np.array_equal(comp.base.grid, L.grid[list(comp.row_perm)])
    assert latin.are_mwols(comp.base, comp.square)


def test_companion_rejects_bad_resolution():
    L = cyclic_square(3)
    t = latin.Transversal(((0, 0), (1, 1), (2, 2)))  # entries 0, 2, 1
    with pytest.raises(NotAResolution):
        latin.transversal_companion(L, latin.TransversalResolution((t, t, t)))


def test_row_constant_array(order3_squares):
    M4 = latin.row_constant_array(4)
    assert M4.grid.tolist() == [[0] * 4, [1] * 4, [2] * 4, [3] * 4]
    assert latin.row_constant_array(1).grid.tolist() == [[0]]
    assert len(order3_squares) == 12
    M3 = latin.row_constant_array(3)
    for g in order3_squares:
        assert latin.are_mwols(M3, LatinSquare(g))


def test_require_pair_order():
    for n in (2, 6):
        with pytest.raises(UnsupportedOrder):
            latin.require_pair_order(n)
    latin.require_pair_order(10)


def test_text_roundtrip(tmp_path):
    fam = list(latin.gf_mwols_family(4)) + [latin.row_constant_array(4)]
    path = tmp_path / "fam.txt"
    latin.write_squares(path, fam)
    back = latin.read_squares(path)
    assert isinstance(back[-1], latin.RowConstantArray)
    assert [b.grid.tolist() for b in back] == [s.grid.tolist() for s in fam]
    assert path.read_text().startswith("4\n0 1 2 3\n")


@pytest.mark.parametrize("text", ["", "3\n0 1 2\n1 2 0\n", "2\n0 1\n1 x\n", "x\n", "2\n0 1 1\n1 0\n"])
def test_parse_malformed(text):
    with pytest.raises(ShapeError):
        latin.parse_squares(text)


def test_parse_not_latin():
    with pytest.raises(NotLatin):
        latin.parse_squares("2\n0 1\n0 1\n")
    assert latin.parse_grids("2\n0 1\n0 1\n")[0].tolist() == [[0, 1], [0, 1]]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 9), st.integers(1, 7), st.integers(0, 1000), st.integers(0, 1000))
def test_generic_squares_and_products(n1, n2, s1, s2):
    A, B = latin.generic_square(n1, s1), latin.generic_square(n2, s2)
    assert latin.is_latin(A.grid) and latin.is_latin(B.grid)
    assert latin.is_latin(latin.direct_product(A, B).grid)
    assert latin.generic_square(n1, s1) == A


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(0, 500), st.integers(0, 500))
def test_predicates_match_brute_force(n, s1, s2):
    A, B = latin.generic_square(n, s1), latin.generic_square(n, s2)
    assert latin.are_mols(A, B) == brute_mols(A.grid, B.grid)
    assert latin.are_mwols(A, B) == brute_mwols(A.grid, B.grid)


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 7), st.integers(0, 10_000))
def test_found_resolutions_are_valid(n, seed):
    L = latin.generic_square(n, seed)
    try:
        R = latin.find_resolution(L, budget=200_000)
    except NonexistentResolution:
        return
    assert R.is_valid_for(L)
    comp = latin.transversal_companion(L, R)
    assert brute_mwols(comp.base.grid, comp.square.grid)
