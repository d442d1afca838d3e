from itertools import product

import pytest

from zerohecke.combinat import Composition, compositions_of
from zerohecke.errors import SizeLimitError
from zerohecke.flagvar import (
    GaloisField, enumerate_flags, factor_table_csv, flag_characteristic, flag_composition_factors,
    flag_count, flag_factor_table, hecke_action_flags, partial_flags, tits_chain_complex,
)
from zerohecke.linalg import dense
from zerohecke.qtarith import ribbon_number_q

SMALL = [(2, 2), (2, 3), (3, 2), (3, 3)]


def _mat(fm, i):
    d = len(fm.flags)
    return [[x % fm.p for x in row] for row in dense(fm.module.matrices[i - 1], d)]


def _mul(A, B, p):
    n = len(A)
    return [[sum(A[r][k] * B[k][c] for k in range(n)) % p for c in range(n)] for r in range(n)]


@pytest.mark.parametrize("n,q", SMALL)
def test_flag_counts(n, q):
    assert len(enumerate_flags(n, q)) == flag_count(n, q)


def test_frozen_counts():
    assert [flag_count(2, 2), flag_count(3, 2), flag_count(2, 3), flag_count(3, 3)] == [3, 21, 4, 52]


def _brute_force_lines(n, p):
    """Projective points of F_p^n by normalising the first nonzero entry."""
    pts = set()
    for v in product(range(p), repeat=n):
        if any(v):
            lead = next(x for x in v if x)
            inv = pow(lead, -1, p)
            pts.add(tuple(x * inv % p for x in v))
    return pts


@pytest.mark.parametrize("n,q", SMALL)
def test_first_subspaces_are_all_lines(n, q):
    lines = {f.subspace(1)[0] for f in enumerate_flags(n, q)}
    assert lines == _brute_force_lines(n, q)


@pytest.mark.parametrize("n,q", SMALL)
def test_hecke_relations_dense(n, q):
    fm = hecke_action_flags(n, q)
    p = fm.p
    mats = {i: _mat(fm, i) for i in range(1, n)}
    for i, A in mats.items():
        sq = _mul(A, A, p)
        assert sq == [[(-x) % p for x in row] for row in A]
        for row in zip(*A):      # columns: q ones each, so column sums vanish mod p
            assert sum(row) % p == 0
    for i in range(1, n - 1):
        A, B = mats[i], mats[i + 1]
        assert _mul(A, _mul(B, A, p), p) == _mul(B, _mul(A, B, p), p)


def test_n2_matrix_is_all_ones_off_diagonal():
    fm = hecke_action_flags(2, 2)
    assert _mat(fm, 1) == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


@pytest.mark.parametrize("n,q", SMALL)
def test_factor_table(n, q):
    for row in flag_factor_table(n, q):
        assert row.multiplicity == row.predicted_r_alpha_q == ribbon_number_q(row.alpha).evaluate(q=q, t=1)


def test_frozen_factors():
    assert flag_composition_factors(2, 2) == {Composition((2,)): 1, Composition((1, 1)): 2}
    f = flag_composition_factors(3, 2)
    assert {tuple(a): m for a, m in f.items()} == {(3,): 1, (1, 2): 6, (2, 1): 6, (1, 1, 1): 8}


def test_characteristic_and_csv():
    ch = flag_characteristic(2, 3)
    assert {tuple(a): c.evaluate(q=1, t=1) for a, c in ch.coeffs.items()} == {(2,): 1, (1, 1): 3}
    text = factor_table_csv(flag_factor_table(2, 2))
    lines = text.splitlines()
    assert lines[0] == "alpha,dim_Q_alpha,multiplicity,predicted_r_alpha_q"
    assert lines[1:] == ['2,1,1,1', '"1,1",3,2,2']


def test_size_cap():
    with pytest.raises(SizeLimitError):
        enumerate_flags(5, 3)
    with pytest.raises(SizeLimitError):
        tits_chain_complex(4, 3, (2, 2))


def test_gf4():
    F = GaloisField(4)
    elems = range(4)
    for a in elems:
        assert F.add(a, a) == 0
        if a:
            assert any(F.mul(a, b) == 1 for b in elems)
        for b in elems:
            for c in elems:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert len(enumerate_flags(2, 4)) == 5
    fm = hecke_action_flags(2, 4)
    assert fm.p == 2
    assert flag_composition_factors(2, 4) == {Composition((2,)): 1, Composition((1, 1)): 4}


def test_partial_flags_counts():
    flags = enumerate_flags(3, 2)
    assert len(partial_flags(3, 2, (1,), flags)) == 7
    assert len(partial_flags(3, 2, (2,), flags)) == 7
    assert len(partial_flags(3, 2, (), flags)) == 1


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_chain_complexes(n, q):
    for a in compositions_of(n):
        cc = tits_chain_complex(n, q, a)
        assert cc.chi_dimension == ribbon_number_q(a).evaluate(q=q, t=1)


def test_chain_dims_frozen():
    cc = tits_chain_complex(3, 2, (1, 1, 1))
    assert cc.dims == [1, 14, 21] and cc.chi_dimension == 8
