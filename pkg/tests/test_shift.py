import pytest
from hypothesis import given, strategies as st

from oracles import brute_products, r_dim_by_projection
from orelab.errors import FieldTooSmallError
from orelab.field import GF, enumerate_distinct, field_with_nodes
from orelab.freealg import FreePoly, Span, parse_poly
from orelab.matrices import MatFree
from orelab.ore import ad_x
from orelab.shift import (ESeq, assumption1_scan, extract_components, gamma_fixes_P_check, gamma_t, gamma_t_mat,
                          gamma_y_expand, gamma_y_poly, platinum_closure, pointwise_closure, slm_span,
                          span_pointwise, vandermonde_extract)
from strategies import polys

F2, F3, F5 = GF(2), GF(3), GF(5)


def P(text, ctx=F2):
    return parse_poly(ctx, text)


def M(rows, ctx=F2):
    return MatFree.parse(ctx, rows)


def test_gamma_examples():
    assert gamma_t(P("ax"), 1) == P("ax + a")
    assert gamma_t(P("ab"), 1) == P("ab")
    assert gamma_t(P("axx", F3), 2) == P("axx + ax + a", F3)
    assert gamma_t(P("ax"), 0) == P("ax")


@given(polys(F5), polys(F5), st.integers(0, 4), st.integers(0, 4))
def test_gamma_is_a_homomorphism_and_group_action(u, v, s, t):
    assert gamma_t(u * v, t) == gamma_t(u, t) * gamma_t(v, t)
    assert gamma_t(u + v, t) == gamma_t(u, t) + gamma_t(v, t)
    assert gamma_t(gamma_t(u, s), t) == gamma_t(u, (s + t) % 5)


@given(polys(F5))
def test_components_evaluate_to_shifts(u):
    comps = gamma_y_poly(u)
    for t in range(5):
        acc = FreePoly.zero(F5)
        for i, c in enumerate(comps):
            acc = acc + c.scale(pow(t, i, 5))
        assert acc == gamma_t(u, t)


def test_fixed_elements():
    assert gamma_fixes_P_check(ad_x(P("a", F3)), [1, 2])
    assert gamma_fixes_P_check(P("a", F3), [1, 2])
    assert not gamma_fixes_P_check(P("ax", F3), [1])


def test_matrix_components():
    g = gamma_y_expand(M([["ax"]]))
    assert [c.entry(0, 0) for c in g.components] == [P("ax"), P("a")]
    assert gamma_y_expand(M([["a"]])).t == 0
    comps = gamma_y_expand(M([["axx"]])).components
    assert [c.entry(0, 0) for c in comps] == [P("axx"), FreePoly.zero(F2), P("a")]


def test_evaluation_at_three_nodes():
    ctx = GF(2, 2)
    m = MatFree.parse(ctx, [["axx + (t)*bx", "ax"], ["b", "xax"]])
    g = gamma_y_expand(m)
    for s in enumerate_distinct(ctx, 3):
        assert g.evaluate(s) == gamma_t_mat(m, s)


def test_vandermonde():
    m = M([["ax"]], F3)
    comps = vandermonde_extract([(0, gamma_t_mat(m, 0)), (1, gamma_t_mat(m, 1))])
    assert [c.entry(0, 0) for c in comps] == [P("ax", F3), P("a", F3)]
    const = M([["ab"]], F3)
    assert vandermonde_extract([(0, const)]) == [const]
    with pytest.raises(FieldTooSmallError, match="field too small"):
        extract_components(M([["axx"]]))
    big = field_with_nodes(2, 3)
    mm = MatFree.parse(big, [["axx", "bx"], ["0", "xa"]])
    assert extract_components(mm) == gamma_y_expand(mm).components


def test_w_examples():
    g = gamma_y_expand(M([["ax"]]))
    assert g.w(1, 2).entry(0, 0) == P("axa + aax")
    assert g.w(0, 2).entry(0, 0) == P("axax")
    assert not g.w(5, 2)
    assert g.w(1, 1) == g.components[1]


@pytest.mark.parametrize("ctx", [F2, F3])
def test_w_against_composition_enumeration(ctx):
    m = MatFree.parse(ctx, [["ax", "bxx"], ["x", "a"]])
    g = gamma_y_expand(m)
    zero = MatFree.zero(ctx, 2)
    for mm in range(1, 4):
        for n in range(0, g.t * mm + 1):
            assert g.w(n, mm) == brute_products(g.components, n, mm, zero)
            for k in range(1, mm):
                assert g.w_split(n, mm, k) == g.w(n, mm)


def test_platinum_closure_examples():
    assert platinum_closure(Span.of(F2, [P("a")])) == Span.of(F2, [P("a")])
    assert platinum_closure(Span.of(F2, [P("ax")])) == Span.of(F2, [P("ax"), P("a")])
    assert platinum_closure(Span.of(F2, [P("ax + b")])) == Span.of(F2, [P("ax + b"), P("a")])


@given(st.lists(polys(F5, max_len=3), max_size=3))
def test_closure_matches_all_shifts(vs):
    s = Span.of(F5, vs)
    assert platinum_closure(s) == pointwise_closure(s)


@pytest.mark.parametrize("rows", [[["ax"]], [["ax", "bx"], ["0", "ax"]], [["xa", "b"], ["bx", "0"]]])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_slm_span(rows, m):
    mat = M(rows)
    assert slm_span(mat, m, check=True).dim > 0
    ctx = field_with_nodes(2, mat.max_x_degree() * m + 1)
    lifted = MatFree.parse(ctx, rows)
    s = slm_span(lifted, m)
    power = lifted ** m
    assert s == span_pointwise(power.entry_span(), enumerate_distinct(ctx, power.max_x_degree() + 1))


def test_slm_examples():
    assert slm_span(M([["ax"]]), 2) == Span.of(F2, [P("axax"), P("axa + aax"), P("aa")])
    assert slm_span(M([["a"]]), 4) == Span.of(F2, [P("aaaa")])
    assert slm_span(MatFree.zero(F2, 1), 2).dim == 0


def test_eseq():
    e = ESeq([P("aa"), P("bb")])
    assert e.e(1, 2) == P("aabb + bbaa")
    assert e.e(0, 3) == P("aa") ** 3
    gens = [P("ab", F3), P("ba + 2aa", F3), P("bb", F3)]
    es = ESeq(gens)
    for m in range(1, 5):
        for n in range(0, 7):
            assert es.e(n, m) == brute_products(gens, n, m, FreePoly.zero(F3))
            for k in range(1, m):
                assert es.e_split(n, m, k) == es.e(n, m)
    lifted = es.lifted(2)
    for n in range(0, 5):
        assert lifted.e(n, 2) == es.e(n, 4)


def test_scan_examples():
    rep = assumption1_scan(M([["ax"]]), range(1, 13))
    assert [r["dim"] for r in rep["rows"]] == [1] * 12
    assert rep["regime"] == "powers-in-x-ideal-on-window"
    rep = assumption1_scan(M([["a"]]), range(2, 51))
    assert all(r["dim"] == 1 and r["bound_met"] for r in rep["rows"])
    assert rep["regime"] == "entries-in-R"
    assert "finite window" in rep["evidence"]
    zero = assumption1_scan(MatFree.zero(F2, 2), [1, 2])
    assert [r["dim"] for r in zero["rows"]] == [0, 0]


def test_scan_dims_match_projection_oracle():
    m = M([["ax", "b"], ["0", "a"]])
    rep = assumption1_scan(m, [1, 2, 3])
    for row in rep["rows"]:
        s = platinum_closure((m ** row["n"]).entry_span(), check=False)
        assert row["dim"] == r_dim_by_projection(s)
