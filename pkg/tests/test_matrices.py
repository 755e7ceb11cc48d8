import pytest
from hypothesis import given, strategies as st

from orelab.errors import ContextMismatchError
from orelab.field import GF
from orelab.freealg import FreePoly, parse_poly
from orelab.matrices import MatConst, MatFree

F2, F3, F4 = GF(2), GF(3), GF(2, 2)


def consts(ctx, d=2):
    return st.lists(st.lists(st.integers(0, ctx.order - 1), min_size=d, max_size=d),
                    min_size=d, max_size=d).map(lambda rows: MatConst(ctx, rows))


@given(consts(F3), consts(F3), consts(F3))
def test_const_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * MatConst.identity(F3, 2) == a
    assert (a - a) == MatConst.zero(F3, 2)


@given(consts(F4), consts(F4))
def test_const_times_free_agrees_with_lift(a, b):
    m = MatFree.parse(F4, [["ax", "b"], ["(t)*x", "ab"]])
    assert a * m == MatFree.from_const(a) * m
    assert m * b == m * MatFree.from_const(b)
    assert (a * m) * b == a * (m * b)


def test_units_and_power():
    e12 = MatConst.unit(F2, 2, 1, 2)
    e21 = MatConst.unit(F2, 2, 2, 1)
    assert e12 * e21 == MatConst.unit(F2, 2, 1, 1)
    assert not e12 ** 2
    assert (e12 + e21) ** 2 == MatConst.identity(F2, 2)
    assert MatConst.of(F3, [[1, 1], [0, 1]]) ** 3 == MatConst.identity(F3, 2)
    assert MatConst.of(F2, [[1, 1], [1, 1]]).rank() == 1
    assert not MatConst.of(F2, [[1, 1], [1, 1]]).is_invertible()


def test_json_roundtrip():
    a = MatConst.of(F4, [[[0, 1], 1], [0, [1, 1]]])
    assert a.to_json() == [[[0, 1], [1, 0]], [[0, 0], [1, 1]]]
    assert MatConst.from_json(F4, a.to_json()) == a
    b = MatConst.of(F3, [[1, 2], [0, 1]])
    assert b.to_json() == [[1, 2], [0, 1]]
    assert str(b) == "[1, 2; 0, 1]"
    m = MatFree.parse(F3, [["ax + 2", "0"], ["b", "xa"]])
    assert MatFree.from_json(F3, m.to_json()) == m


def test_free_matrix_product():
    m = MatFree.parse(F2, [["0", "ax"], ["bx", "0"]])
    sq = m * m
    assert sq.entry(0, 0) == parse_poly(F2, "axbx")
    assert sq.entry(1, 1) == parse_poly(F2, "bxax")
    assert not sq.entry(0, 1)
    assert m.max_x_degree() == 1 and m.gradation() == 1
    assert m ** 3 == sq * m


def test_combine_and_scalar_mul():
    e11 = MatConst.unit(F3, 2, 1, 1)
    e12 = MatConst.unit(F3, 2, 1, 2)
    m = MatFree.combine([(e11, parse_poly(F3, "ax")), (e12, parse_poly(F3, "bx"))], F3, 2)
    assert m == MatFree.parse(F3, [["ax", "bx"], ["0", "0"]])
    assert m * 2 == MatFree.parse(F3, [["2ax", "2bx"], ["0", "0"]])
    assert m * FreePoly.word(F3, "a") == MatFree.parse(F3, [["axa", "bxa"], ["0", "0"]])


def test_mismatch_errors():
    with pytest.raises(ContextMismatchError):
        MatConst.identity(F2, 2) + MatConst.identity(F3, 2)
    with pytest.raises(ValueError):
        MatFree.zero(F2, 2) + MatFree.zero(F2, 3)
    with pytest.raises(ValueError):
        MatFree(F2, [[FreePoly.zero(F2)], []])
