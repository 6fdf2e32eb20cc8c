import pytest
from hypothesis import given, settings, strategies as st

from nimseq.nim_core import oracle_max_histogram, oracle_total_histogram
from nimseq.sequences import (
    A_total,
    D_total,
    Family,
    MaxDecomposition,
    SequenceEngine,
    SequenceQuery,
    a_max,
    binary_weight,
    d_max,
    decompose_max_index,
    sequence_prefix,
)


@pytest.mark.parametrize("n, b, c", [(1, 0, 1), (4, 2, 1), (6, 2, 3), (7, 2, 4), (8, 3, 1)])
def test_decompose(n, b, c):
    assert decompose_max_index(n) == MaxDecomposition(b, c)


@given(st.integers(min_value=1, max_value=2**70))
def test_decompose_range(n):
    b, c = decompose_max_index(n)
    assert n == 2**b - 1 + c
    assert 1 <= c <= 2**b


def test_decompose_rejects_zero():
    with pytest.raises(ValueError):
        decompose_max_index(0)


def test_binary_weight():
    assert binary_weight(0) == 0
    assert binary_weight(7) == 3
    for t in range(70):
        assert binary_weight(2**t) == 1


def test_examples():
    assert a_max(3, 5) == 28
    assert a_max(4, 4) == 89
    assert a_max(5, 4) == 421
    assert a_max(5, 7) == 4096
    assert d_max(3, 6) == 15
    assert d_max(4, 4) == 25
    assert d_max(5, 4) == 165
    assert D_total(3, 7) == 27
    assert D_total(4, 4) == 13
    assert D_total(5, 4) == 65
    assert A_total(3, 6) == 37
    assert A_total(4, 4) == 63
    assert A_total(5, 8) == 2081


@pytest.mark.parametrize("n", range(0, 40))
def test_two_piles_constant(n):
    assert D_total(2, n) == 1
    assert d_max(2, n) == 1


def test_prefix_examples():
    assert sequence_prefix("a", 3, 8) == [1, 4, 7, 16, 19, 28, 43, 64]
    assert sequence_prefix("D", 4, 8) == [1, 6, 7, 36, 13, 42, 43, 216]
    assert sequence_prefix("d", 1, 4) == [1, 0, 0, 0]
    with pytest.raises(ValueError):
        sequence_prefix("a", 3, 0)


def test_query():
    eng = SequenceEngine()
    assert eng.query(SequenceQuery(Family.A, 4, 13)) == 1141


@pytest.mark.parametrize("fn", [a_max, d_max, A_total, D_total])
def test_rejects_zero_piles(fn):
    with pytest.raises(ValueError):
        fn(0, 3)


@pytest.mark.parametrize("k", range(1, 8))
def test_first_differences(k):
    for n in range(1, 130):
        assert d_max(k, n) == a_max(k, n) - a_max(k, n - 1)
        assert D_total(k, n) == A_total(k, n) - A_total(k, n - 1)


@pytest.mark.parametrize("k", range(1, 9))
@pytest.mark.parametrize("m", range(0, 7))
def test_full_binary_box(k, m):
    assert a_max(k, 2**m - 1) == 2 ** (m * (k - 1))


@pytest.mark.parametrize("k", range(1, 7))
def test_general_paths_reproduce_shortcuts(k):
    eng = SequenceEngine()
    for n in range(0, 100):
        assert eng.a_max_general(k, n) == eng.a_max(k, n)
        assert eng.d_max_general(k, n) == eng.d_max(k, n)
        assert eng.D_total_recursive(k, n) == eng.D_total(k, n)
        assert eng.A_total_recursive(k, n) == eng.A_total(k, n)


@pytest.mark.parametrize("k", range(1, 8))
def test_recursive_and_running_sums_agree(k):
    eng = SequenceEngine()
    for n in range(0, 80):
        assert eng.A_total_recursive(k, n) == eng.A_total_partial_sums(k, n)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_formulas_match_brute_force_small(k):
    bound = 20 if k < 5 else 12
    hist = oracle_max_histogram(k, bound)
    assert [d_max(k, n) for n in range(bound + 1)] == hist
    assert [a_max(k, n) for n in range(bound + 1)] == [sum(hist[: n + 1]) for n in range(bound + 1)]
    totals = oracle_total_histogram(k, bound // 2)
    assert [D_total(k, n) for n in range(len(totals))] == totals


@pytest.mark.parametrize("k", [6, 7])
def test_more_piles_match_brute_force(k):
    hist = oracle_max_histogram(k, 6)
    assert [d_max(k, n) for n in range(7)] == hist
    assert [D_total(k, n) for n in range(4)] == oracle_total_histogram(k, 3)


def test_three_pile_weight_formula_via_recursion():
    eng = SequenceEngine()
    for n in range(4096):
        assert eng.D_total_recursive(3, n) == 3 ** binary_weight(n)


def test_printed_swapped_three_pile_recursion_is_wrong():
    # D(2n) = 3 D(n) would give D(2) = 9
    assert D_total(3, 2) == 3 != 3 * D_total(3, 1)
    for n in range(200):
        assert D_total(3, 2 * n + 1) == 3 * D_total(3, n)
        assert D_total(3, 2 * n + 2) == D_total(3, n + 1)


def test_three_pile_partial_sum_recursion():
    for n in range(1, 300):
        assert A_total(3, 2 * n) == 3 * A_total(3, n - 1) + A_total(3, n)
        assert A_total(3, 2 * n + 1) == 4 * A_total(3, n)


def test_four_pile_recursions():
    for n in range(0, 300):
        assert D_total(4, 2 * n + 1) == 6 * D_total(4, n)
        assert D_total(4, 2 * n + 2) == D_total(4, n + 1) + D_total(4, n)
    for n in range(1, 300):
        assert A_total(4, 2 * n + 1) == 7 * A_total(4, n) + A_total(4, n - 1)
        assert A_total(4, 2 * n + 2) == 7 * A_total(4, n) + A_total(4, n + 1)


def test_five_pile_recursions():
    assert A_total(5, 1) == 11
    for n in range(0, 200):
        assert D_total(5, 2 * n + 1) == 10 * D_total(5, n)
        assert D_total(5, 2 * n + 2) == D_total(5, n + 1) + 5 * D_total(5, n)
    for n in range(1, 200):
        assert A_total(5, 2 * n + 1) == 11 * A_total(5, n) + 5 * A_total(5, n - 1)
        assert A_total(5, 2 * n + 2) == A_total(5, n + 1) + 15 * A_total(5, n)


@pytest.mark.parametrize("k", [3, 5])
def test_odd_pile_closed_forms_expand(k):
    # k=3 and k=5 polynomial forms
    for n in range(1, 200):
        b, c = decompose_max_index(n)
        if k == 3:
            assert a_max(3, n) == 2 ** (2 * b) + 3 * c**2
        else:
            assert a_max(5, n) == 2 ** (4 * b) + 10 * 2 ** (2 * b) * c**2 + 5 * c**4
            assert d_max(5, n) == 10 * 2 ** (2 * b) * (2 * c - 1) + 20 * c**3 - 30 * c**2 + 20 * c - 5


def test_four_pile_closed_form():
    for n in range(1, 300):
        b, c = decompose_max_index(n)
        assert a_max(4, n) == 2 ** (3 * b) + 6 * c**2 * 2**b + a_max(4, c - 1)


def test_three_pile_max_triangle_rows():
    for r in range(1, 9):
        row = [d_max(3, n) for n in range(2**r, 2 ** (r + 1))]
        assert row == [6 * j + 3 for j in range(2**r)]


@pytest.mark.parametrize("k", range(1, 8))
def test_pile_count_bounds(k):
    for n in range(0, 200):
        lo_idx = 2 * n // k
        floor_log = (lo_idx + 1).bit_length() - 1
        ceil_log = n.bit_length()  # ceil(log2(n + 1))
        lower = 2 ** ((k - 1) * floor_log)
        upper = 2 ** ((k - 1) * ceil_log)
        assert lower <= a_max(k, lo_idx) <= A_total(k, n) <= a_max(k, n) <= upper


@settings(max_examples=50)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**60))
def test_huge_indices_are_exact(k, n):
    eng = SequenceEngine()
    if n:
        assert eng.d_max(k, n) == eng.a_max(k, n) - eng.a_max(k, n - 1)
        assert eng.D_total(k, n) == eng.A_total(k, n) - eng.A_total(k, n - 1)
    assert eng.D_total_recursive(k, n) == eng.D_total(k, n)


def test_huge_index_memo_stays_small():
    eng = SequenceEngine()
    eng.A_total(6, 2**60 + 12345)
    assert len(eng.memo) < 1000


def test_memo_round_trip(tmp_path):
    eng = SequenceEngine()
    eng.prefix("A", 5, 50)
    path = tmp_path / "memo.bin"
    eng.save(path)
    other = SequenceEngine()
    other.load(path)
    assert other.memo == eng.memo
    assert other.prefix("A", 5, 50) == eng.prefix("A", 5, 50)
