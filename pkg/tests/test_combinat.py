import itertools
from math import factorial

import pytest
from hypothesis import given, strategies as st

from zerohecke.combinat import (
    Composition, Partition, Permutation, compositions_of, descent_class, kostka,
    partitions_of, permutations_of, ribbon_conjugates, rsk, standard_tableaux,
    two_line_array, w0, w1, weak_leq,
)
from zerohecke.errors import SizeLimitError


def brute_descents(w):
    return tuple(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def brute_inv(w):
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


compositions = st.integers(1, 7).flatmap(
    lambda n: st.sets(st.integers(1, n - 1) if n > 1 else st.nothing(), max_size=n - 1).map(
        lambda D: Composition.from_descents(D, n)))


@given(compositions)
def test_descent_round_trip(a):
    assert Composition.from_descents(a.descents, a.n) == a
    assert len(a.descents) == len(a) - 1
    assert all(1 <= d <= a.n - 1 for d in a.descents)


def test_compositions_of_small():
    assert compositions_of(1) == [Composition((1,))]
    assert compositions_of(3) == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    assert len(compositions_of(6)) == 32


def test_compositions_size_guard():
    with pytest.raises(SizeLimitError):
        compositions_of(13)
    with pytest.raises(SizeLimitError):
        compositions_of(0)
    assert len(compositions_of(13, max_n=13)) == 2 ** 12


def test_ribbon_conjugates_worked_example():
    rev, comp, tr = ribbon_conjugates(Composition((2, 3, 1, 1)))
    assert rev == (1, 1, 3, 2)
    assert comp == (1, 2, 1, 3)
    assert tr == (3, 1, 2, 1)


def test_ribbon_conjugates_one_row():
    rev, comp, tr = ribbon_conjugates(Composition((5,)))
    assert rev == (5,) and comp == (1,) * 5 and tr == (1,) * 5


def _diagram_transpose(a):
    # cells of the ribbon (rows bottom to top, each row starts under the end of the next)
    cells, col = [], 0
    for r, part in enumerate(a):
        for c in range(col, col + part):
            cells.append((r, c))
        col += part - 1
    # reflect in the anti-diagonal: row index becomes the negated column
    refl = {(-c, -r) for r, c in cells}
    rows = sorted({r for r, _ in refl})
    return tuple(sum(1 for rr, _ in refl if rr == r) for r in rows)


@pytest.mark.parametrize("n", range(1, 7))
def test_transpose_matches_diagram(n):
    for a in compositions_of(n):
        assert a.transpose() == _diagram_transpose(a)
        assert a.transpose().transpose() == a
        assert a.transpose() == a.complement().reverse() == a.reverse().complement()
    assert Composition((1, 2, 1)).transpose() == (2, 2)


@pytest.mark.parametrize("n", range(1, 11))
def test_transpose_involution(n):
    if n > 8:
        a = Composition((1, n - 2, 1))
        assert a.transpose().transpose() == a
        return
    for a in compositions_of(n):
        assert a.transpose().transpose() == a


@pytest.mark.parametrize("n", range(1, 8))
def test_descent_classes_partition_sn(n):
    assert sum(len(descent_class(a)) for a in compositions_of(n)) == factorial(n)


def test_descent_class_examples():
    cls = descent_class(Composition((1, 2, 1)))
    assert len(cls) == 5
    assert all(brute_descents(w) == (1, 3) for w in cls)
    assert descent_class(Composition((4,))) == [Permutation.identity(4)]
    assert descent_class(Composition((1, 1, 1, 1))) == [Permutation.longest(4)]


@pytest.mark.parametrize("n", range(1, 6))
def test_w0_w1_extremes_in_weak_order(n):
    for a in compositions_of(n):
        cls = descent_class(a)
        assert cls[0] == w0(a) and cls[-1] == w1(a)
        for u in cls:
            assert weak_leq(w0(a), u) and weak_leq(u, w1(a))


def test_w0_column_filling():
    # columns of the ribbon (1,2,1) read top to bottom: 1 | 2 3 | 4 (rows bottom to top)
    assert w0(Composition((1, 2, 1))).descents() == (1, 3)
    assert w0(Composition((1, 2, 1))).inv() == min(w.inv() for w in descent_class(Composition((1, 2, 1))))


@given(st.permutations(range(1, 7)))
def test_permutation_statistics(images):
    w = Permutation(images)
    assert w.inv() == brute_inv(images)
    assert w.inv() == w.inverse().inv()
    assert w.maj() == sum(brute_descents(images))
    assert len(w.reduced_word()) == w.inv()
    # rebuild w from its reduced word
    u = Permutation.identity(len(w))
    for i in reversed(w.reduced_word()):
        u = u.left_mul_simple(i)
    assert u == w


def test_standard_tableaux_examples():
    assert len(standard_tableaux(Composition((1, 2, 1)))) == 5
    assert len(standard_tableaux(Partition((4,)))) == 1
    tabs = standard_tableaux(Partition((2, 1)))
    assert sorted(t.maj() for t in tabs) == [1, 2]


@pytest.mark.parametrize("n", range(1, 7))
def test_ribbon_reading_words_biject_with_descent_class(n):
    for a in compositions_of(n):
        words = {tuple(t.reading_word()) for t in standard_tableaux(a)}
        assert words == {tuple(w) for w in descent_class(a)}


def test_kostka_examples():
    for lam in partitions_of(5):
        assert kostka(lam, lam) == 1
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((1, 1), (2,)) == 0
    with pytest.raises(ValueError):
        kostka((2,), (1, 1, 1))


def test_rsk_two_line_array():
    top, bottom = two_line_array(Permutation((3, 5, 6, 1, 2, 4, 7)), (3, 2, 2))
    assert top == (1, 1, 1, 2, 2, 3, 3)
    P, Q = rsk(bottom, top)
    assert P.shape == Q.shape
    assert sorted(P.entries()) == list(range(1, 8))
    # D(w) = {3} also sits inside D((3,3,1)) = {3,6}
    assert two_line_array(Permutation((3, 5, 6, 1, 2, 4, 7)), (3, 3, 1))[0] == (1, 1, 1, 2, 2, 2, 3)
    with pytest.raises(ValueError):
        two_line_array(Permutation((3, 5, 6, 1, 2, 4, 7)), (2, 5))


def test_rsk_identity_single_row():
    P, Q = rsk((1, 2, 3, 4))
    assert P.rows == ((1, 2, 3, 4),) and Q.rows == ((1, 2, 3, 4),)


def test_rsk_rejects_malformed():
    with pytest.raises(ValueError):
        rsk((1, 2), (2, 1))
    with pytest.raises(ValueError):
        rsk((1, 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_rsk_descents_of_P_are_inverse_descents(n):
    for w in permutations_of(n):
        P, _ = rsk(w)
        assert P.descents() == w.inverse().descents()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_partitions_and_hooks(n):
    parts = partitions_of(n)
    assert all(sum(p) == n for p in parts)
    assert sum(1 for p in parts if p.is_hook()) == n
    for p in parts:
        if p.is_hook():
            c = p.as_hook_composition()
            assert c.descents == tuple(range(1, len(p)))


def test_partition_any_order():
    assert Partition((1, 3, 2)) == (3, 2, 1)
    assert Partition((2, 1)).conjugate() == (2, 1)
    assert Partition((3, 1)).conjugate() == (2, 1, 1)
