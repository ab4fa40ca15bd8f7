import itertools
import pickle

import pytest
from hypothesis import given, strategies as st

from fqsquares import (
    DivisionByZero, EvenCharacteristic, Field, FieldError, FieldMismatch, NonPrime,
    ReducibleModulus, enumerate_field, field_arith, field_new, parse_field, trace,
)
from fqsquares.field import field_spec


def test_construction_and_errors():
    assert field_new(3).q == 3
    assert field_new(3, 2, [1, 0, 1]).q == 9
    with pytest.raises(EvenCharacteristic):
        field_new(2)
    with pytest.raises(NonPrime):
        field_new(9)
    with pytest.raises(ReducibleModulus):
        field_new(3, 2, [2, 0, 1])  # x^2 - 1 = (x-1)(x+1)
    with pytest.raises(FieldError):
        field_new(3, 2)


def test_prime_field_arithmetic(F3):
    two = F3(2)
    assert field_arith(two, two, "mul") == F3(1)
    assert field_arith(two, None, "inv") == F3(2)
    assert field_arith(F3(1), F3(2), "add") == F3(0)
    assert field_arith(F3(1), F3(2), "sub") == F3(2)
    assert field_arith(F3(1), None, "neg") == F3(2)
    assert field_arith(F3(1), F3(2), "div") == F3(2)
    with pytest.raises(DivisionByZero):
        field_arith(F3(1), F3(0), "div")
    with pytest.raises(DivisionByZero):
        F3(0).inv()


def test_extension_field_spot_values(F9):
    x = F9([0, 1])
    assert x * x == F9(2)
    assert trace(x) == 0
    # x + 1 is a generator-free spot check: (x+1)^2 = 2x
    assert (x + 1) ** 2 == F9([0, 2])
    assert len(set(e.index for e in enumerate_field(F9))) == 9


def test_enumeration_order(F3, F5, F9):
    assert [e.index for e in enumerate_field(F3)] == [0, 1, 2]
    assert [e.index for e in enumerate_field(F5)] == [0, 1, 2, 3, 4]
    elems = enumerate_field(F9)
    assert elems[0] == F9.zero
    assert [tuple(reversed(e.coeffs)) for e in elems] == sorted(itertools.product(range(3), repeat=2))


def test_field_axioms_exhaustive(small_fields):
    for F in small_fields:
        A, M, N, I = F.add_table, F.mul_table, F.neg_table, F.inv_table
        r = range(F.q)
        for a in r:
            assert A[a, 0] == a and M[a, 1] == a and A[a, N[a]] == 0
            if a:
                assert M[a, I[a]] == 1
            assert F.pow(a, F.q) == a
            for b in r:
                assert A[a, b] == A[b, a] and M[a, b] == M[b, a]
                for c in r:
                    assert A[A[a, b], c] == A[a, A[b, c]]
                    assert M[M[a, b], c] == M[a, M[b, c]]
                    assert M[a, A[b, c]] == A[M[a, b], M[a, c]]


def test_trace_linear_and_surjective(small_fields):
    for F in small_fields:
        for a in range(F.q):
            for b in range(F.q):
                assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % F.p
            for c in range(F.p):
                assert F.trace(F.mul(c, a)) == (c * F.trace(a)) % F.p
        assert sorted(set(F.trace_table.tolist())) == list(range(F.p))
        for a in range(F.p):
            assert F.trace(a) == (F.k * a) % F.p


def test_trace_is_frobenius_sum(F25):
    for a in range(25):
        frob = [F25.pow(a, 5**j) for j in range(F25.k)]
        acc = 0
        for f in frob:
            acc = F25.add(acc, f)
        assert acc == F25.trace(a)


def test_parse_and_spec_round_trip(F9):
    assert parse_field("3^2:1,0,1") == F9
    assert field_spec(F9) == "3^2:1,0,1"
    assert parse_field(" 5 ") == Field(5)
    with pytest.raises(EvenCharacteristic):
        parse_field("4")
    with pytest.raises(FieldError, match="needs a modulus"):
        parse_field("9")
    with pytest.raises(FieldError):
        parse_field("three")


def test_mixed_fields_rejected(F3, F5):
    with pytest.raises(FieldMismatch):
        F3(1) + F5(1)


def test_pickle_round_trip(F9):
    G = pickle.loads(pickle.dumps(F9))
    assert G == F9 and hash(G) == hash(F9)
    assert (G.mul_table == F9.mul_table).all()


@given(st.integers(0, 24), st.integers(0, 24), st.integers(1, 24))
def test_division_inverts_multiplication(a, b, c):
    F = Field(5, 2, [3, 0, 1])
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert (x * z) / z == x
    assert (x + y) * z == x * z + y * z
    assert -(x - y) == y - x
