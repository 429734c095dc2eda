import pytest
from hypothesis import given, settings, strategies as st

from hornlab.errors import DomainError
from hornlab.lr import (
    dual_partition,
    expand_product,
    lr_coefficient,
    lr_fillings,
    pieri_column_expand,
    pieri_row_expand,
    point_class_multiple,
    schubert_coefficient,
)
from hornlab.partitions import IndexSet, Partition, conjugate, partitions_of, reverse_subset
from oracles import brute_fillings, lr_by_kostka

PINNED = [
    ((3, 2, 1), (3, 2, 2), (5, 4, 3, 1), 3),
    ((2, 1), (2, 1), (3, 2, 1), 2),
    ((5, 4, 3, 2, 1), (2, 2, 2), (6, 5, 4, 3, 2, 1), 5),
    ((10, 8, 6, 4, 2), (4, 4, 4), (12, 10, 8, 6, 4, 2), 16),
    ((4, 3, 2, 1), (2, 2, 1), (5, 4, 3, 2, 1), 5),
    ((8, 6, 4, 2), (4, 4, 2), (10, 8, 6, 4, 2), 16),
]


@pytest.mark.parametrize("lam, mu, nu, c", PINNED)
def test_pinned_coefficients(lam, mu, nu, c):
    assert lr_coefficient(lam, mu, nu) == c


@pytest.mark.parametrize("lam, mu, nu, c", PINNED[:3])
def test_pinned_against_kostka_oracle(lam, mu, nu, c):
    assert lr_by_kostka(lam, mu, nu) == c


def test_degenerate_cases():
    for lam in [(), (1,), (3, 1), (4, 4, 2)]:
        assert lr_coefficient(lam, (), lam) == 1
        assert lr_coefficient((), lam, lam) == 1
    assert lr_coefficient((2,), (2,), (3,)) == 0
    assert lr_coefficient((3,), (1,), (2, 2)) == 0
    assert lr_coefficient((), (), ()) == 1


def test_worked_fillings():
    # the two arrays for ((2,1),(2,1),(3,2,1))
    assert lr_fillings((2, 1), (2, 1), (3, 2, 1)) == [((1,), (1,), (2,)), ((1,), (2,), (1,))]
    fills = lr_fillings((3, 2, 1), (3, 2, 2), (5, 4, 3, 1))
    assert len(fills) == 3
    assert all(sorted(v for row in f for v in row) == [1, 1, 1, 2, 2, 3, 3] for f in fills)


def _triples(max_weight):
    for w in range(max_weight + 1):
        for nu in partitions_of(w):
            for a in range(w + 1):
                for lam in partitions_of(a):
                    for mu in partitions_of(w - a):
                        yield lam, mu, nu


def test_against_kostka_oracle_exhaustive():
    for lam, mu, nu in _triples(6):
        assert lr_coefficient(lam, mu, nu) == lr_by_kostka(lam, mu, nu), (lam, mu, nu)


def test_fillings_match_unpruned_enumeration():
    for lam, mu, nu in _triples(5):
        if not Partition(nu).contains(lam):
            continue
        expected = brute_fillings(lam, mu, nu)
        assert len(lr_fillings(lam, mu, nu)) == expected
        assert lr_coefficient(lam, mu, nu) == expected


def test_symmetry_and_conjugation_exhaustive():
    for lam, mu, nu in _triples(10):
        c = lr_coefficient(lam, mu, nu)
        assert c == lr_coefficient(mu, lam, nu)
        assert c == lr_coefficient(conjugate(lam), conjugate(mu), conjugate(nu))


def test_pieri_examples():
    assert pieri_row_expand((1,), 1, 2) == {(2,), (1, 1)}
    assert pieri_row_expand((), 3) == {(3,)}
    assert pieri_row_expand((2, 1), 2, 3) == {(4, 1), (3, 2), (3, 1, 1), (2, 2, 1)}
    assert pieri_column_expand((1,), 1, 2) == {(2,), (1, 1)}
    assert pieri_column_expand((2, 2), 2) == {(3, 3), (3, 2, 1), (2, 2, 1, 1)}
    assert pieri_column_expand((2, 2), 2, 3) == {(3, 3), (3, 2, 1)}
    assert pieri_column_expand((3, 1), 0) == {(3, 1)}
    with pytest.raises(DomainError):
        pieri_row_expand((1,), -1)


def test_pieri_agrees_with_lr():
    for w in range(6):
        for alpha in partitions_of(w):
            for p in range(4):
                rows = pieri_row_expand(alpha, p)
                cols = pieri_column_expand(alpha, p)
                for gamma in partitions_of(w + p):
                    assert lr_coefficient(alpha, (p,), gamma) == (gamma in rows)
                    assert lr_coefficient(alpha, (1,) * p, gamma) == (gamma in cols)


def test_schubert_coefficient():
    assert schubert_coefficient((1,), (1,), (1, 1), 2, 2) == 1
    assert schubert_coefficient((2, 1), (2, 1), (3, 2, 1), 3, 3) == 2
    assert schubert_coefficient((1,), (1,), (1,), 2, 2) == 0
    with pytest.raises(DomainError):
        schubert_coefficient((3,), (1,), (3, 1), 2, 2)


def test_expand_product_examples():
    assert expand_product([IndexSet((1, 3, 5), 6)], 3, 6) == {(2, 1): 1}
    # sigma_(1) * sigma_(1) in Gr(2, 4)
    box = [IndexSet((1, 3), 4)] * 2
    assert expand_product(box, 2, 4) == {(2,): 1, (1, 1): 1}
    assert expand_product([IndexSet((1, 3, 5), 6)] * 2, 3, 6)[(3, 2, 1)] == 2


def test_expand_product_is_commutative():
    sets = [IndexSet((1, 3, 5), 6), IndexSet((1, 2, 5), 6), IndexSet((2, 3, 4), 6)]
    assert expand_product(sets, 3, 6) == expand_product(sets[::-1], 3, 6)


def test_point_class_multiple_examples():
    assert point_class_multiple([IndexSet((2, 4, 6), 6)] * 3, 3, 6) == 2
    # omega_{1..r} is the point, omega_{r+1..n} the fundamental class
    assert point_class_multiple([IndexSet((1, 2), 5), IndexSet((4, 5), 5)], 2, 5) == 1
    with pytest.raises(DomainError):
        point_class_multiple([IndexSet((1, 3, 5), 6)] * 3, 3, 6)


def test_point_class_weyl_triples():
    for n in range(2, 8):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                k = i + j - 1
                if k > n:
                    continue
                sets = [IndexSet((n + 1 - i,), n), IndexSet((n + 1 - j,), n), IndexSet((k,), n)]
                assert point_class_multiple(sets, 1, n) == 1


def test_point_class_matches_lr_through_duality():
    from hornlab.horn import u_set, lr_of_triple
    for n in range(2, 7):
        for r in range(1, n):
            for I, J, K in u_set(r, n):
                sets = [reverse_subset(IndexSet(I, n)), reverse_subset(IndexSet(J, n)), IndexSet(K, n)]
                assert point_class_multiple(sets, r, n) == lr_of_triple((I, J, K))


def test_dual_partition():
    assert dual_partition((2, 1), 3, 3) == (3, 2, 1)
    assert dual_partition((), 2, 3) == (3, 3)


small = st.lists(st.integers(0, 4), min_size=1, max_size=4).map(lambda xs: sorted(xs, reverse=True))


@settings(max_examples=200, deadline=None)
@given(small, small, st.permutations(range(4)), st.permutations(range(4)))
def test_permutation_sums_are_positive(alpha, beta, sigma, tau):
    n = max(len(alpha), len(beta))
    a = alpha + [0] * (n - len(alpha))
    b = beta + [0] * (n - len(beta))
    s = [x for x in sigma if x < n]
    t = [x for x in tau if x < n]
    gamma = sorted((a[s[i]] + b[t[i]] for i in range(n)), reverse=True)
    assert lr_coefficient(a, b, gamma) > 0
