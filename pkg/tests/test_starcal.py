import pytest
from hypothesis import given, strategies as st

from oracles import r_dim_by_projection
from orelab.errors import FactorizationError, HypothesisError, PreconditionError
from orelab.field import GF
from orelab.freealg import FreePoly, Span, parse_poly
from orelab.matalg import ZeroPower, power_to_assumption3
from orelab.matrices import MatConst, MatFree
from orelab.shift import gamma_y_expand
from orelab.starcal import (BlockBasis, GoodSet, Quintuple, StarCalculus, apply_deletion, compute_BZ,
                            naj_spot_check, quintuple_cmp, t_prefix, telescope_check, uv_split, zerowy_check)

F2, F3 = GF(2), GF(3)

WITNESS_SOURCES = [
    (F2, [["ax"]]),
    (F2, [["ax", "bx"], ["0", "0"]]),
    (F2, [["ax", "0"], ["bx", "0"]]),
    (F2, [["0", "ax"], ["bx", "0"]]),
    (F2, [["ax", "ax"], ["0", "ax"]]),
    (F2, [["a", "b"], ["0", "a"]]),
    (F3, [["0", "ax"], ["ax", "0"]]),
    (F2, [["ax", "0", "0"], ["bx", "bx", "0"], ["0", "0", "0"]]),
]


def witness(ctx, rows):
    w = power_to_assumption3(MatFree.parse(ctx, rows))
    assert not isinstance(w, ZeroPower)
    return w


@pytest.fixture(scope="module", params=WITNESS_SOURCES, ids=[str(r) for _, r in WITNESS_SOURCES])
def setup(request):
    w = witness(*request.param)
    return w, GoodSet(w), StarCalculus(gamma_y_expand(w.m))


def test_identity_prefix_is_w(setup):
    w, good, calc = setup
    ident = MatConst.identity(w.ctx, w.d)
    for m in range(1, 5):
        for n in range(calc.g.t * m + 2):
            assert calc.star((), n, m) == calc.g.w(n, m)
            assert calc.star((ident, ident), n, m) == calc.g.w(n, m)


def test_split_formula(setup):
    w, good, calc = setup
    for u in good:
        for m in range(2, 4):
            for n in range(calc.g.t * m + 1):
                assert calc.star(u.mats, n, m) == calc.star_split(u.mats, n, m, 1)


def test_zero_prefixes_vanish(setup):
    w, good, calc = setup
    for m in range(w.s, w.s + 3):
        for n in range(calc.g.t * m + 1):
            assert zerowy_check(calc, good, n, m)


def test_telescoping(setup):
    w, good, calc = setup
    for m in range(1, w.s + 4):
        for n in range(calc.g.t * m + 1):
            assert telescope_check(calc, w.e, w.s, n, m)


def test_sweep_invariants(setup):
    w, good, calc = setup
    for m in range(1, 5):
        res = compute_BZ(w, m, good=good, calc=calc)
        assert not (res.B & res.Z)
        values = Span(w.ctx)
        for u in good:
            for n in range(calc.g.t * m + 1):
                for e in calc.star(u.mats, n, m).entries():
                    values.add(e)
        assert len(res.Z) == r_dim_by_projection(values) == res.r_dim


def test_scalar_star_values():
    w = witness(F2, [["ax"]])
    calc = StarCalculus(gamma_y_expand(w.m))
    assert calc.star(t_prefix(w.e, 1), 1, 2) == calc.g.w(1, 2)
    res = compute_BZ(w, 1)
    assert len(res.Z) == 1 and res.r_dim == 1
    assert [r["in_Z"] for r in res.records] == [False, True]


def test_r_entry_sweep():
    w = witness(F2, [["a"]])
    res = compute_BZ(w, 2)
    assert len(res.Z) == 1 == res.r_dim


def test_sweep_cap_precondition():
    w = witness(F2, [["ax"]])
    with pytest.raises(PreconditionError):
        compute_BZ(w, 3, n_cap=2)


def test_good_set_shape():
    w = witness(F2, [["ax", "0", "0"], ["bx", "bx", "0"], ["0", "0", "0"]])
    good = GoodSet(w)
    assert good.e_symbols == ["E1", "1-e"]
    assert good.head_symbols == ["e", "P1"]
    assert [u.symbols for u in good] == [("E1", "e"), ("E1", "P1"), ("1-e", "e"), ("1-e", "P1"), ("e",), ("P1",)]
    for p_ in good.P:
        assert p_ * w.e == p_
    assert len(good) <= good.count_bound()


def test_quintuple_order():
    w = witness(F2, [["ax", "0", "0"], ["bx", "bx", "0"], ["0", "0", "0"]])
    good = GoodSet(w)
    a = Quintuple(good.make(["1-e", "e"]), 0, 3, 1, 1)
    b = Quintuple(good.make(["P1"]), 0, 3, 1, 1)
    assert quintuple_cmp(a, b) == -1
    u = good.make(["e"])
    assert quintuple_cmp(Quintuple(u, 1, 3, 1, 1), Quintuple(u, 2, 3, 1, 1)) == -1
    assert quintuple_cmp(Quintuple(u, 1, 3, 1, 1), Quintuple(u, 1, 3, 1, 2)) == -1
    assert quintuple_cmp(Quintuple(u, 1, 3, 2, 1), Quintuple(u, 1, 3, 2, 1)) == 0
    with pytest.raises(ValueError):
        quintuple_cmp(Quintuple(u, 1, 3, 1, 1), Quintuple(u, 1, 4, 1, 1))


def test_naj_scalar():
    w = witness(F2, [["ax"]])
    rep = naj_spot_check(w, 4, 2)
    assert rep["violations"] == [] and rep["s"] == 1
    assert rep["Z_m"] >= 1


def test_naj_two_by_two():
    w = witness(F2, [["ax", "bx"], ["0", "0"]])
    assert w.s == 2
    rep = naj_spot_check(w, 6, 3)
    assert rep["violations"] == []
    assert rep["C_m_size"] > 0 and rep["z_constant"] * 6 > rep["C_m_size"]


def test_naj_hypotheses():
    w = witness(F2, [["ax", "bx"], ["0", "0"]])
    with pytest.raises(HypothesisError):
        naj_spot_check(w, 6, 2)
    with pytest.raises(HypothesisError):
        naj_spot_check(w, 5, 3)
    with pytest.raises(HypothesisError):
        naj_spot_check(witness(F2, [["a", "b"], ["0", "a"]]), 8, 3)


def P(text, ctx=F2):
    return parse_poly(ctx, text)


def test_uv_split_examples():
    basis = [P("ax"), P("bx")]
    sp = uv_split(P("aaxb"), 1, 1, basis)
    assert sp.v_part == P("aaxb") and not sp.u_part
    assert apply_deletion(sp) == P("ab")
    sp = uv_split(P("abxb"), 1, 1, basis)
    assert sp.u_part == P("abxb") and not sp.v_part
    assert not apply_deletion(sp)


def test_uv_split_nontrivial_completion():
    # a_1 = ax + bx, a_2 = bx: the word ax has a_1-coordinate 1, bx has 0
    basis = BlockBasis([P("ax + bx"), P("bx")])
    assert basis.first_coordinate("ax") == 1
    assert basis.first_coordinate("bx") == 0
    assert basis.first_coordinate("ab") == 0
    sp = uv_split(P("aax"), 1, 1, basis)
    assert sp.v_part == P("aax + abx")
    assert sp.v_part + sp.u_part == P("aax")


def test_uv_split_errors():
    with pytest.raises(FactorizationError, match="xab"):
        uv_split(P("xab"), 0, 1, [P("a")])
    with pytest.raises(FactorizationError):
        uv_split(P("ab"), 1, 2, [P("a")])


block_words = st.lists(st.sampled_from(["ax", "bx", "axx"]), min_size=2, max_size=2).map("".join)


@given(st.lists(st.tuples(st.sampled_from(["a", "b"]), block_words, st.sampled_from(["", "a", "bx"])),
                min_size=1, max_size=4))
def test_uv_split_linear_and_reassembles(parts):
    basis = [P("ax"), P("bx + axx")]
    total = FreePoly.zero(F2)
    pieces = []
    for pre, mid, tail in parts:
        v = FreePoly.word(F2, pre + mid + tail)
        pieces.append(v)
        total = total + v
    sp = uv_split(total, 1, 2, basis)
    assert sp.v_part + sp.u_part == total
    deleted = FreePoly.zero(F2)
    for v in pieces:
        deleted = deleted + apply_deletion(uv_split(v, 1, 2, basis))
    assert apply_deletion(sp) == deleted
