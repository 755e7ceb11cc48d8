import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from orelab.errors import DomainError, NotNilpotentError, PreconditionError
from orelab.field import GF
from orelab.freealg import FreePoly, gradation, parse_poly
from orelab.matrices import MatConst
from orelab.ore import (Derivation, OrePoly, ad_x, binom_mod, d_binomial, free_derivation, frobenius_d_rhs,
                        inner_derivation, is_quasi_inverse, iterated_d, ore_mul, ore_to_free, p_decompose,
                        quasi_inverse_nilpotent, quasi_inverse_unique_check, zero_derivation)
from orelab.shift import gamma_fixes_P_check
from strategies import polys

F2, F3, F5 = GF(2), GF(3), GF(5)


def P(text, ctx=F2):
    return parse_poly(ctx, text)


def ore_polys(ctx, max_deg=3):
    der = free_derivation(ctx)
    return st.lists(polys(ctx, max_len=2, max_terms=2), min_size=0, max_size=max_deg + 1).map(
        lambda cs: OrePoly(cs, der))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lucas_binomials(p):
    for n in range(30):
        for k in range(n + 2):
            assert binom_mod(n, k, p) == comb(n, k) % p


def test_ad_x_examples():
    assert ad_x(P("a", F3)) == P("xa - ax", F3)
    assert ad_x(P("ab", F3)) == P("xab - abx", F3)
    assert iterated_d(P("a"), 2) == P("xxa + axx")
    assert d_binomial(P("a", F5), 2) == P("xxa + 3xax + axx", F5)
    assert iterated_d(P("a"), 0) == P("a")


@pytest.mark.parametrize("ctx", [F2, F3])
def test_leibniz(ctx):
    @given(polys(ctx), polys(ctx))
    def check(u, v):
        assert ad_x(u * v) == ad_x(u) * v + u * ad_x(v)

    check()


@pytest.mark.parametrize("ctx", [F2, F3, F5])
def test_closed_form_matches_iteration(ctx):
    rng = random.Random(1)
    for n in range(7):
        c = FreePoly(ctx, {"".join(rng.choice("ab") for _ in range(2)): 1, "a": 1})
        assert d_binomial(c, n) == iterated_d(c, n)


@pytest.mark.parametrize("ctx", [F2, F3])
@pytest.mark.parametrize("m", [1, 2])
def test_frobenius_identity(ctx, m):
    @given(polys(ctx, max_len=2))
    def check(c):
        assert iterated_d(c, ctx.p**m) == frobenius_d_rhs(c, m)

    check()


@pytest.mark.parametrize("ctx", [F2, F3])
def test_ore_mul_associative_and_evaluates(ctx):
    @given(ore_polys(ctx), ore_polys(ctx), ore_polys(ctx))
    def check(u, v, w):
        assert ore_mul(ore_mul(u, v), w) == ore_mul(u, ore_mul(v, w))
        assert ore_to_free(u * v) == ore_to_free(u) * ore_to_free(v)
        assert ore_to_free(u + v) == ore_to_free(u) + ore_to_free(v)

    check()


def test_ore_mul_examples():
    der = free_derivation(F2)
    x = OrePoly.monomial(FreePoly.one(F2), 1, der)
    a = OrePoly.const(P("a"), der)
    assert x * a == OrePoly([P("xa + ax"), P("a")], der)
    x2 = x ** 2
    assert x2 * a == OrePoly([iterated_d(P("a"), 2), FreePoly.zero(F2), P("a")], der)
    b = OrePoly.const(P("b"), der)
    assert a * b == OrePoly.const(P("ab"), der)
    assert str(x * a) == "ax + xa + (a)x"


def test_inner_derivation_on_matrices():
    n = MatConst.of(F3, [[1, 2], [0, 1]])
    units = [MatConst.unit(F3, 2, i, j) for i in (1, 2) for j in (1, 2)]
    der = inner_derivation(n, units)
    rng = random.Random(3)

    def rand():
        return OrePoly([MatConst.of(F3, [[rng.randrange(3) for _ in range(2)] for _ in range(2)])
                        for _ in range(rng.randint(1, 3))], der)

    for _ in range(30):
        u, v, w = rand(), rand(), rand()
        assert (u * v) * w == u * (v * w)


def test_non_derivation_rejected():
    with pytest.raises(PreconditionError):
        Derivation(lambda c: c, FreePoly.zero(F2), samples=[P("a"), P("b")])


def test_quasi_inverse_examples():
    e12 = MatConst.unit(F2, 2, 1, 2)
    s = quasi_inverse_nilpotent(e12, 2)
    assert s == e12
    assert is_quasi_inverse(e12, s)
    assert quasi_inverse_unique_check(e12, e12, e12)
    zero = MatConst.zero(F2, 2)
    assert quasi_inverse_unique_check(zero, zero, zero)


def test_quasi_inverse_truncated_series():
    # F[a]/(a^3) with a the 3x3 shift matrix, D = 0, r = a x^2 over GF(2)
    a = MatConst.of(F2, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    der = zero_derivation(F2, 3)
    z = der.zero
    r = OrePoly([z, z, a], der)
    s = quasi_inverse_nilpotent(r, 3)
    assert s == OrePoly([z, z, a, z, a * a], der)


def test_quasi_inverse_square_zero_gf3():
    e12 = MatConst.unit(F3, 2, 1, 2)
    assert quasi_inverse_nilpotent(e12, 2) == -e12


def test_quasi_inverse_errors():
    with pytest.raises(NotNilpotentError, match="not nilpotent at declared bound"):
        quasi_inverse_nilpotent(MatConst.identity(F2, 2), 4)
    e12 = MatConst.unit(F2, 2, 1, 2)
    with pytest.raises(PreconditionError):
        quasi_inverse_unique_check(e12, e12, MatConst.zero(F2, 2))


def test_p_decompose_examples():
    assert [str(p) for p in p_decompose(P("a")).parts] == ["a"]
    assert [str(p) for p in p_decompose(P("xa")).parts] == ["D(a)", "a"]
    assert [str(p) for p in p_decompose(P("xab")).parts] == ["a*D(b) + D(a)*b", "a*b"]
    with pytest.raises(DomainError):
        p_decompose(P("xx + a"))


def test_p_decompose_gf3_roundtrip():
    v = P("xxa + 2axbx", F3)
    dec = p_decompose(v)
    assert dec.reassemble() == v
    for part in dec.parts:
        assert gamma_fixes_P_check(part, [1, 2])


abar_words = st.text(alphabet="abx", min_size=1, max_size=6).filter(lambda w: gradation(w) >= 1)


@given(st.lists(abar_words, min_size=1, max_size=3))
def test_p_decompose_random(ws):
    v = FreePoly(F2, {})
    for w in ws:
        v = v + FreePoly.word(F2, w)
    if not v:
        return
    dec = p_decompose(v)
    assert dec.reassemble() == v
    for part in dec.parts:
        assert gamma_fixes_P_check(part, [1])
