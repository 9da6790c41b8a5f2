from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dialg.errors import AmbientMismatchError, FieldError
from dialg.linalg import (
    QQ,
    Field,
    Subspace,
    complement,
    contains,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    rref,
    solve,
    subspace_intersect,
    subspace_sum,
    zeros,
)

from oracles import rank_gauss, rank_mod_p

F2, F5 = Field.prime(2), Field.prime(5)
FIELDS = [QQ, F2, F5, Field.prime(3)]


def matrices(field, max_rows=4, max_cols=5):
    if field.p:
        entry = st.integers(0, field.p - 1)
    else:
        entry = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r).map(
                lambda rows: (tuple(tuple(field(v) for v in row) for row in rows), c)
            )
        )
    )


def test_field_parsing():
    assert Field.from_spec("Q") == QQ
    assert Field.from_spec("p=5") == F5
    assert str(F5) == "p=5" and str(QQ) == "Q"
    with pytest.raises(FieldError):
        Field.from_spec("p=4")
    with pytest.raises(FieldError):
        Field.prime(1)
    assert F5(Fraction(1, 2)) == 3
    assert F5.inv(2) == 3


def test_rref_examples():
    assert rref(identity(3, QQ), QQ) == identity(3, QQ)
    assert rref(zeros(2, 2, QQ), QQ, 2) == ()
    assert rref(((2, 4), (1, 2)), QQ) == ((1, 2),)


def test_rank_examples():
    assert rank(identity(4, F5), F5) == 4
    assert rank(zeros(3, 3, QQ), QQ, 3) == 0
    assert rank(((1, 1), (1, 1)), QQ) == 1


def test_nullspace_examples():
    assert nullspace(zeros(2, 2, QQ), QQ, 2) == Subspace.full(QQ, 2)
    assert nullspace(identity(3, QQ), QQ).dim == 0
    ns = nullspace(((1, 1),), F5)
    assert ns.basis == ((1, 4),)


def test_solve_examples():
    assert solve(((2,),), (1,), F5) == (3,)
    assert solve(identity(3, QQ), (Fraction(1, 2), 0, 7), QQ) == (Fraction(1, 2), 0, 7)
    assert solve(((1,), (1,)), (0, 1), QQ) is None


def test_solve_sets_free_variables_to_zero():
    assert solve(((1, 1, 0),), (5,), QQ) == (5, 0, 0)


def test_subspace_examples():
    e1 = Subspace.span(QQ, 2, [(1, 0)])
    e2 = Subspace.span(QQ, 2, [(0, 1)])
    zero = Subspace.zero(QQ, 2)
    assert subspace_sum(e1, zero) == e1
    assert subspace_intersect(e1, e1) == e1
    assert subspace_sum(e1, e2) == Subspace.full(QQ, 2)
    assert subspace_intersect(e1, e2).dim == 0
    assert contains(e1, (3, 0)) and not contains(e1, (0, 1))
    assert complement(e1) == e2


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        Subspace.full(QQ, 2) + Subspace.full(QQ, 3)


def test_inverse():
    m = ((1, 2), (3, 4))
    inv = inverse(m, QQ)
    assert mat_mul(m, inv, QQ) == identity(2, QQ)
    assert inverse(((1, 1), (1, 1)), QQ) is None


@pytest.mark.parametrize("field", FIELDS, ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_rref_idempotent_and_rank(field, data):
    m, c = data.draw(matrices(field))
    r = rref(m, field, c)
    assert rref(r, field, c) == r
    assert rank(m, field, c) == len(r)
    if field.p and m:
        assert len(r) == rank_gauss([list(map(int, row)) for row in m], field.p)


@pytest.mark.parametrize("field", [F2, Field.prime(3)], ids=str)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_rank_matches_span_enumeration(field, data):
    m, c = data.draw(matrices(field, max_rows=3, max_cols=4))
    rows = [[int(v) for v in row] for row in m]
    assert rank(m, field, c) == (rank_mod_p(rows, field.p) if rows else 0)


@pytest.mark.parametrize("field", FIELDS, ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_nullspace_and_solve(field, data):
    m, c = data.draw(matrices(field))
    ns = nullspace(m, field, c)
    assert ns.dim == c - rank(m, field, c)
    for v in ns.basis:
        assert all(x == 0 for x in mat_vec(m, v, field))
    x = tuple(data.draw(st.integers(-2, 2)) for _ in range(c))
    x = tuple(field(v) for v in x)
    b = mat_vec(m, x, field)
    sol = solve(m, b, field, c)
    assert sol is not None and mat_vec(m, sol, field) == b


@pytest.mark.parametrize("field", FIELDS, ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_grassmann_and_complement(field, data):
    a_rows, c = data.draw(matrices(field, max_cols=5))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    b_rows = tuple(tuple(field.random(rng) for _ in range(c)) for _ in range(rng.randint(0, 4)))
    a = Subspace.span(field, c, a_rows)
    b = Subspace.span(field, c, b_rows)
    s, i = a + b, a & b
    assert s.dim + i.dim == a.dim + b.dim
    assert a <= s and b <= s and i <= a and i <= b
    comp = a.complement()
    assert (a + comp).dim == c and (a & comp).dim == 0
