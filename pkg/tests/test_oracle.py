import itertools
import random

import pytest

from qmatcount import oracle
from qmatcount.errors import BudgetExceeded, EvenCharacteristic, InvalidQuery
from qmatcount.gf import Character
from qmatcount.matq import MatrixGF, Permutation, bruhat_permutation, rank
from qmatcount.oracle import CountQuery, count, count_distribution, count_restricted
from qmatcount.support import SupportSet, diagonal_prefix, fano_support


def test_general_examples():
    D2 = diagonal_prefix(2, 2)
    assert count(2, 2, D2, 2, 2) == 1
    assert count(2, 2, D2, 2, 3) == 4
    assert count(3, 3, diagonal_prefix(3, 3), 3, 2) == 14


def test_symmetric_examples():
    assert count(2, 2, None, 1, 3, "symmetric") == 8
    assert count(2, 2, None, 2, 2, "symmetric") == 4
    assert count(2, 2, diagonal_prefix(2, 2), 2, 3, "symmetric_with_character", "-") == 2
    assert count(3, 3, diagonal_prefix(3, 3), 3, 3, "skew") == 0
    table = oracle.count_rank_character_table(1, SupportSet.of(1, 1), 5)
    assert {k: v.value for k, v in table.items() if v.value} == {
        (0, Character.PLUS): 1, (1, Character.PLUS): 2, (1, Character.MINUS): 2}


def test_character_needs_odd_q():
    with pytest.raises(EvenCharacteristic):
        count(2, 2, None, 1, 4, "symmetric_with_character", "+")


def test_invalid_queries():
    with pytest.raises(InvalidQuery):
        count(2, 3, None, 1, 3, "symmetric")
    with pytest.raises(InvalidQuery):
        count(2, 2, SupportSet.of(2, 2, [(1, 2)]), 1, 3, "symmetric")
    with pytest.raises(InvalidQuery):
        count(2, 2, None, 3, 3)
    with pytest.raises(InvalidQuery):
        count(2, 2, None, 1, 3, "symmetric", method="pruned_column_dfs")


def _brute_general(m, n, S, q):
    free = S.free_cells()
    hist = {}
    for vals in itertools.product(range(q), repeat=len(free)):
        ent = dict(zip(free, vals))
        A = MatrixGF.from_rows(q, [[ent.get((i, j), 0) for j in range(1, n + 1)]
                                   for i in range(1, m + 1)])
        r = rank(A)
        hist[r] = hist.get(r, 0) + 1
    return hist


@pytest.mark.parametrize("seed", range(6))
def test_three_strategies_agree_with_python_brute_force(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 3), rng.randint(1, 4)
    q = rng.choice([2, 3, 4])
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if rng.random() < 0.3]
    S = SupportSet.of(m, n, cells)
    if q ** S.free_count > 5000:
        q = 2
    truth = _brute_general(m, n, S, q)
    for r in range(min(m, n) + 1):
        for method in oracle.METHODS:
            assert count(m, n, S, r, q, method=method) == truth.get(r, 0)


@pytest.mark.parametrize("seed", range(10))
def test_strategy_agreement_randomized(seed):
    rng = random.Random(100 + seed)
    q = rng.choice([2, 3, 4, 5])
    m, n = rng.randint(2, 4), rng.randint(2, 4)
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    rng.shuffle(cells)
    free_target = rng.randint(3, 12 if q <= 3 else 8)
    S = SupportSet.of(m, n, cells[: max(0, m * n - free_target)])
    for r in range(min(m, n) + 1):
        vals = {method: count(m, n, S, r, q, method=method) for method in oracle.METHODS}
        assert len(set(vals.values())) == 1, vals


@pytest.mark.parametrize("cls", ["symmetric", "skew", "symmetric_with_character"])
def test_symmetric_strategies_agree(cls):
    q = 3
    S = diagonal_prefix(3, 1)
    for r in range(4):
        a = count(3, 3, S, r, q, cls, method="exhaustive")
        b = count(3, 3, S, r, q, cls, method="projectivized")
        assert a == b


@pytest.mark.parametrize("cls,q", [("general", 3), ("symmetric", 3), ("skew", 5),
                                   ("symmetric_with_character", 5), ("symmetric", 4)])
def test_rank_distribution_completeness(cls, q):
    n = 3
    S = diagonal_prefix(n, 2) if cls != "skew" else diagonal_prefix(n, n)
    total = count_restricted(CountQuery(n, n, S, None, q, cls)).value
    if cls == "general":
        free = S.free_count
    elif cls == "skew":
        free = n * (n - 1) // 2
    else:
        free = sum(1 for i, j in S.free_cells() if i <= j)
    assert total == q**free


@pytest.mark.parametrize("workers", [1, 2, 3, 4, 7, 16])
def test_partition_determinism(workers):
    S = diagonal_prefix(4, 4)
    base = count_distribution(CountQuery(4, 4, S, None, 3), workers=1)
    assert count_distribution(CountQuery(4, 4, S, None, 3), workers=workers) == base
    for method in oracle.METHODS:
        assert count(4, 4, S, 3, 3, method=method, workers=workers) == base[3]
    sym = CountQuery(4, 4, S, None, 5, "symmetric_with_character")
    assert count_distribution(sym, workers=workers) == count_distribution(sym, workers=1)


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        count(4, 4, None, 4, 3, budget=10)
    assert info.value.estimate > 10
    monkey = pytest.MonkeyPatch()
    monkey.setenv("QMAT_BUDGET", "5")
    try:
        with pytest.raises(BudgetExceeded):
            count(3, 3, None, 3, 3)
    finally:
        monkey.undo()


def test_bruhat_examples():
    cells = oracle.bruhat_cell_counts(2, 2)
    assert cells[Permutation((2, 1))] == 1 and cells[Permutation((1, 2))] == 0
    cells = oracle.bruhat_cell_counts(2, 3)
    assert cells[Permutation((2, 1))] == 4 and cells[Permutation((1, 2))] == 0
    assert oracle.bruhat_cell_counts(1, 5)[Permutation((1,))] == 0
    with pytest.raises(BudgetExceeded):
        oracle.bruhat_cell_counts(6, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_bruhat_cells_match_python_classifier(q):
    n = 3
    S = diagonal_prefix(n, n)
    free = S.free_cells()
    tally = {}
    for vals in itertools.product(range(q), repeat=len(free)):
        ent = dict(zip(free, vals))
        A = MatrixGF.from_rows(q, [[ent.get((i, j), 0) for j in range(1, 4)] for i in range(1, 4)])
        if rank(A) == n:
            w = bruhat_permutation(A)
            tally[w] = tally.get(w, 0) + 1
    cells = oracle.bruhat_cell_counts(n, q)
    assert {w: v.value for w, v in cells.items() if v.value} == tally


@pytest.mark.parametrize("q", [2, 3])
def test_bruhat_partitions_gl(q):
    n = 3
    cells = oracle.bruhat_cell_counts(n, q, SupportSet.of(n, n))
    order = 1
    for i in range(n):
        order *= q**n - q**i
    assert sum(v.value for v in cells.values()) == order
    # cell sizes are (q-1)^n q^(n(n-1)/2 + length) for the lower Borel
    assert cells[Permutation.identity(n)] == (q - 1) ** n * q ** 3


@pytest.mark.parametrize("q", [2, 3])
def test_bruhat_congruence_n4(q):
    cells = oracle.bruhat_cell_counts(4, q)
    mod = (q - 1) ** 5
    for w, v in cells.items():
        assert v.value % mod == ((q - 1) ** 4 % mod if w.is_derangement() else 0)


def test_quadratic_form_examples():
    assert oracle.quadratic_form_zero_count(2, 5, "+").value == 9
    assert oracle.quadratic_form_zero_count(2, 3, "+").value == 1
    assert oracle.quadratic_form_zero_count(1, 7, "+").value == 1
    with pytest.raises(EvenCharacteristic):
        oracle.quadratic_form_zero_count(2, 4, "+")


def test_bilinear_counts():
    assert oracle.bilinear_solution_count(2, 2).value == 10
    assert oracle.bilinear_solution_count(1, 7).value == 13
    assert oracle.bilinear_solution_count(1, 7, 3).value == 6


def test_fano_q2_fast():
    cv = count_restricted(CountQuery(7, 7, fano_support(), 7, 2))
    assert cv.value == 184768
    assert cv.elapsed < 1.0
