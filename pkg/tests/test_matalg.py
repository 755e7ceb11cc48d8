import pytest

from algebras import all_subalgebras, random_algebras
from oracles import all_elements, elementwise_radical, largest_nilpotent_ideal, reverify_witness
from orelab.errors import DecompositionError, NilpotentAlgebraError, SearchCeilingError
from orelab.field import GF
from orelab.freealg import parse_poly
from orelab.matalg import (MatSpan, ZeroPower, algebra_closure, assumption3_check, check_pseudo_idempotent,
                           check_radical, check_word_shape, coefficient_decomposition, corollary_change,
                           idempotent_power, nilpotency_index, power_to_assumption3, pseudo_homogeneous_span,
                           pseudo_idempotent, radical)
from orelab.matrices import MatConst, MatFree

F2, F3, F4 = GF(2), GF(3), GF(2, 2)


def E(i, j, d=2, ctx=F2):
    return MatConst.unit(ctx, d, i, j)


SUBALGEBRAS_2x2 = all_subalgebras(F2, 2)


def test_closure_examples():
    assert algebra_closure([E(1, 1)]).basis == [E(1, 1)]
    assert algebra_closure([E(1, 1), E(1, 2)]).basis == [E(1, 1), E(1, 2)]
    assert algebra_closure([E(1, 2), E(2, 1)]).basis == [E(1, 2), E(2, 1), E(1, 1), E(2, 2)]


def test_subalgebra_census():
    # the zero algebra is not listed
    assert len(SUBALGEBRAS_2x2) > 10
    assert max(h.dim for h in SUBALGEBRAS_2x2) == 4


def test_radical_examples():
    r = radical(algebra_closure([E(1, 1), E(1, 2)]))
    assert r.basis == [E(1, 2)] and r.s == 2
    full = radical(algebra_closure([E(1, 2), E(2, 1)]))
    assert full.dim == 0 and full.s == 1
    nil = radical(algebra_closure([E(1, 2)]))
    assert nil.basis == [E(1, 2)] and nil.s == 2


@pytest.mark.parametrize("h", SUBALGEBRAS_2x2, ids=lambda h: f"dim{h.dim}")
def test_radical_2x2_against_oracles(h):
    rad = radical(h)
    check_radical(rad)
    members = frozenset(all_elements(F2, rad.basis, 2))
    assert members == largest_nilpotent_ideal(F2, h.basis, 2)
    assert members == elementwise_radical(F2, h.basis, 2)


@pytest.mark.parametrize("h", random_algebras(F2, 3, 12, seed=5), ids=lambda h: f"dim{h.dim}")
def test_radical_3x3_gf2(h):
    rad = radical(h)
    check_radical(rad)
    members = frozenset(all_elements(F2, rad.basis, 3))
    if h.dim <= 4:
        assert members == largest_nilpotent_ideal(F2, h.basis, 3)
    if h.dim <= 5:
        assert members == elementwise_radical(F2, h.basis, 3)


@pytest.mark.parametrize("ctx", [F3, F4])
def test_radical_other_fields(ctx):
    for h in random_algebras(ctx, 2, 8, seed=11):
        rad = radical(h)
        check_radical(rad)
        if h.dim <= 3:
            assert frozenset(all_elements(ctx, rad.basis, 2)) == elementwise_radical(ctx, h.basis, 2)


def test_upper_triangular_3x3_gf3():
    gens = [E(1, 1, 3, F3), E(2, 2, 3, F3), E(1, 2, 3, F3), E(2, 3, 3, F3)]
    rad = radical(algebra_closure(gens))
    assert rad.dim == 3 and rad.s == 3
    assert rad.contains(E(1, 3, 3, F3))


def test_nilpotency_index():
    assert nilpotency_index([], F2, 2) == 1
    assert nilpotency_index([E(1, 2)], F2, 2) == 2
    assert nilpotency_index([E(1, 1)], F2, 2) is None


def test_idempotent_power():
    assert idempotent_power(E(1, 1)).gamma == 1
    cyc = idempotent_power(MatConst.of(F2, [[1, 1], [0, 1]]))
    assert cyc.gamma == 2
    assert idempotent_power(E(1, 2)).gamma == 2


def test_pseudo_homogeneous_spans():
    h = algebra_closure([E(1, 1), E(2, 2)])
    assert pseudo_homogeneous_span(h, 1) == MatSpan(F2, 2, [E(1, 1), E(2, 2)])
    assert pseudo_homogeneous_span(h, 2) == MatSpan(F2, 2, [E(1, 1), E(2, 2)])
    assert pseudo_homogeneous_span(algebra_closure([E(1, 2)]), 2).dim == 0


def test_pseudo_idempotent_examples():
    res = pseudo_idempotent(algebra_closure([E(1, 1), E(2, 2)]))
    assert res.beta == 1 and res.e == MatConst.identity(F2, 2) and res.f == res.e
    res = pseudo_idempotent(algebra_closure([E(1, 1), E(1, 2)]))
    assert res.beta == 1 and res.e == E(1, 1)
    res = pseudo_idempotent(algebra_closure([E(1, 2), E(2, 1)]))
    assert res.beta == 2 and res.e == MatConst.identity(F2, 2)
    with pytest.raises(NilpotentAlgebraError):
        pseudo_idempotent(algebra_closure([E(1, 2)]))


def test_pseudo_idempotent_ceiling():
    with pytest.raises(SearchCeilingError, match="ceiling"):
        pseudo_idempotent(algebra_closure([E(1, 2), E(2, 1)]), ceiling=1)


def _pseudo_cases():
    cases = [h for h in SUBALGEBRAS_2x2 if not h.is_nilpotent()]
    cases += [h for h in random_algebras(F2, 3, 10, seed=2) if not h.is_nilpotent()]
    cases += [h for h in random_algebras(F3, 2, 6, seed=4) if not h.is_nilpotent()]
    return cases


@pytest.mark.parametrize("h", _pseudo_cases(), ids=lambda h: f"dim{h.dim}")
def test_pseudo_idempotent_postconditions(h):
    res = pseudo_idempotent(h)
    check_pseudo_idempotent(h, res)
    rad = res.radical
    assert res.f * res.f == res.f
    for r in h.basis:
        assert rad.contains(r - res.f * r) and rad.contains(r - r * res.f)


def test_coefficient_decomposition_and_shape():
    n = MatFree.parse(F2, [["ax + bx", "bx"], ["0", "ax"]])
    pairs = coefficient_decomposition(n)
    assert [str(w) for _, w in pairs] == ["ax", "bx"]
    assert pairs[0][0] == MatConst.identity(F2, 2)
    assert check_word_shape(["ax", "bx"]) == (1, True)
    with pytest.raises(DecompositionError):
        check_word_shape(["ax", "b"])
    with pytest.raises(DecompositionError):
        check_word_shape(["xa"])
    with pytest.raises(DecompositionError):
        check_word_shape(["ax", "abx"])


def test_corollary_change():
    a_list = [parse_poly(F3, "ax"), parse_poly(F3, "bx")]
    A_list = [E(1, 1, 2, F3) + E(2, 2, 2, F3), E(2, 2, 2, F3)]
    e = E(1, 1, 2, F3)
    new_A, new_a = corollary_change(A_list, a_list, e)
    assert new_A[0] == e
    assert MatFree.combine(zip(new_A, new_a), F3, 2) == MatFree.combine(zip(A_list, a_list), F3, 2)


PIPELINE = [
    (F2, [["ax"]]),
    (F2, [["0", "ax"], ["0", "0"]]),
    (F2, [["ax", "bx"], ["0", "0"]]),
    (F2, [["0", "ax"], ["bx", "0"]]),
    (F2, [["ax", "ax"], ["0", "ax"]]),
    (F2, [["a", "b"], ["0", "a"]]),
    (F3, [["0", "ax"], ["ax", "0"]]),
    (F4, [["(t)*ax", "bx"], ["0", "ax"]]),
]


@pytest.mark.parametrize("ctx,rows", PIPELINE, ids=[str(r) for _, r in PIPELINE])
def test_power_to_assumption3(ctx, rows):
    n = MatFree.parse(ctx, rows)
    w = power_to_assumption3(n)
    if isinstance(w, ZeroPower):
        assert not n ** w.exponent and n ** (w.exponent - 1)
        return
    assert all(assumption3_check(w).values())
    reverify_witness(n, w)


def test_pipeline_values():
    assert isinstance(power_to_assumption3(MatFree.parse(F2, [["0", "ax"], ["0", "0"]])), ZeroPower)
    w = power_to_assumption3(MatFree.parse(F2, [["ax", "bx"], ["0", "0"]]))
    assert w.power == 1 and w.s == 2 and w.e == E(1, 1)
    w = power_to_assumption3(MatFree.parse(F2, [["0", "ax"], ["bx", "0"]]))
    assert w.power == 2 and w.e == MatConst.identity(F2, 2)
    assert [str(p) for p in w.polys] == ["axbx", "axbx + bxax"]
    w = power_to_assumption3(MatFree.parse(F2, [["ax"]]))
    assert w.power == 1 and w.e == MatConst.identity(F2, 1)
    assert w.to_json()["s"] == 1


def test_pipeline_rejects_bad_shape():
    with pytest.raises(DecompositionError):
        power_to_assumption3(MatFree.parse(F2, [["xa"]]))
