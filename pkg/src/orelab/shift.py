"""Shift automorphisms x -> x + t, their generic form x -> x + y, platinum
closures, and the memoized w(n, m) / e(n, m) sums."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import FieldTooSmallError
from .field import FieldCtx, FieldElem, enumerate_distinct
from .freealg import FreePoly, Span, intersect_with_R
from .linalg import vec_add_scaled
from .matrices import MatFree
from .ore import PElem


# -- shifts on polynomials ---------------------------------------------------------


def _shift_word(ctx: FieldCtx, word: str, t: int) -> dict[str, int]:
    """Expansion of the word with every x replaced by x + t."""
    cur = {"": 1}
    add, mul = ctx.add, ctx.mul
    for ch in word:
        nxt: dict[str, int] = {}
        for w, c in cur.items():
            k = w + ch
            nxt[k] = add(nxt.get(k, 0), c)
            if ch == "x" and t:
                nxt[w] = add(nxt.get(w, 0), mul(c, t))
        cur = {w: c for w, c in nxt.items() if c}
    return cur


def gamma_t(v: FreePoly, t) -> FreePoly:
    """The automorphism fixing a, b and sending x to x + t."""
    ctx = v.ctx
    traw = ctx.coerce(t)
    if not traw:
        return v
    out: dict[str, int] = {}
    for w, c in v.terms.items():
        vec_add_scaled(ctx, out, _shift_word(ctx, w, traw), c)
    return FreePoly(ctx, out)


def gamma_y_poly(v: FreePoly) -> list[FreePoly]:
    """Components v_0, v_1, ... with gamma_y(v) = sum y^i v_i.

    The i-th component of a word sums all ways of deleting i of its x's.
    """
    ctx = v.ctx
    comps: dict[int, dict[str, int]] = {}
    add = ctx.add
    for word, coeff in v.terms.items():
        cur: dict[tuple[int, str], int] = {(0, ""): coeff}
        for ch in word:
            nxt: dict[tuple[int, str], int] = {}
            for (i, w), c in cur.items():
                k = (i, w + ch)
                nxt[k] = add(nxt.get(k, 0), c)
                if ch == "x":
                    k = (i + 1, w)
                    nxt[k] = add(nxt.get(k, 0), c)
            cur = nxt
        for (i, w), c in cur.items():
            if c:
                tgt = comps.setdefault(i, {})
                vec_add_scaled(ctx, tgt, {w: c}, 1)
    top = max((i for i, t in comps.items() if t), default=0)
    return [FreePoly(ctx, comps.get(i, {})) for i in range(top + 1)]


def gamma_t_mat(m: MatFree, t) -> MatFree:
    return m.map(lambda e: gamma_t(e, t))


def gamma_fixes_P_check(p, samples: Iterable) -> bool:
    """True iff every sampled shift fixes p (a PElem or a FreePoly)."""
    v = p.expand() if isinstance(p, PElem) else p
    return all(gamma_t(v, t) == v for t in samples)


# -- the generic shift on matrices ------------------------------------------------------


class GammaExpansion:
    """gamma_y(M) = sum_{i <= t} y^i M_i, with memoized w(n, m)."""

    def __init__(self, base: MatFree, components: list[MatFree]):
        self.base = base
        self.components = components
        self.t = len(components) - 1
        self.ctx = base.ctx
        self.d = base.d
        self._w: dict[tuple[int, int], MatFree] = {}
        self._zero = MatFree.zero(self.ctx, self.d)

    def component(self, i: int) -> MatFree:
        if 0 <= i <= self.t:
            return self.components[i]
        return self._zero

    def evaluate(self, s) -> MatFree:
        """sum s^i M_i."""
        ctx = self.ctx
        sraw = ctx.coerce(s)
        out = self._zero
        for i, mi in enumerate(self.components):
            out = out + mi * FieldElem(ctx, ctx.pow(sraw, i))
        return out

    def w(self, n: int, m: int) -> MatFree:
        """Sum over compositions i_1 + ... + i_m = n of M_{i_1} ... M_{i_m}."""
        if m < 1:
            raise ValueError("m must be >= 1")
        if n < 0 or n > self.t * m:
            return self._zero
        key = (n, m)
        hit = self._w.get(key)
        if hit is not None:
            return hit
        if m == 1:
            val = self.component(n)
        else:
            val = self._zero
            for i in range(0, min(n, self.t) + 1):
                rest = self.w(n - i, m - 1)
                if rest:
                    mi = self.components[i]
                    if mi:
                        val = val + mi * rest
        self._w[key] = val
        return val

    def w_split(self, n: int, m: int, k: int) -> MatFree:
        """sum_i w(i, k) w(n - i, m - k), for checking the recurrence."""
        if not 1 <= k < m:
            raise ValueError("need 1 <= k < m")
        out = self._zero
        for i in range(n + 1):
            out = out + self.w(i, k) * self.w(n - i, m - k)
        return out

    def __repr__(self) -> str:
        return f"GammaExpansion(t={self.t}, components={[str(c) for c in self.components]})"


def gamma_y_expand(m: MatFree) -> GammaExpansion:
    ctx = m.ctx
    per_entry = [[gamma_y_poly(e) for e in row] for row in m.rows]
    top = max((len(c) for row in per_entry for c in row), default=1) - 1
    zero = FreePoly.zero(ctx)
    comps = []
    for i in range(top + 1):
        comps.append(MatFree(ctx, [[c[i] if i < len(c) else zero for c in row] for row in per_entry]))
    return GammaExpansion(m, comps)


def w_sum(g: GammaExpansion, n: int, m: int) -> MatFree:
    return g.w(n, m)


# -- Vandermonde extraction -------------------------------------------------------------


def _solve_square(ctx: FieldCtx, a: list[list[int]], rhs: list) -> list:
    """Gauss-Jordan on a square invertible system whose right sides are
    anything supporting + and scalar scale by FieldElem."""
    n = len(a)
    a = [list(r) for r in a]
    rhs = list(rhs)
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = ctx.inv(a[col][col])
        a[col] = [ctx.mul(inv, v) for v in a[col]]
        rhs[col] = rhs[col] * FieldElem(ctx, inv)
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(a[r], a[col])]
                rhs[r] = rhs[r] - rhs[col] * FieldElem(ctx, f)
    return rhs


def vandermonde_extract(values: Sequence[tuple], t: int | None = None) -> list[MatFree]:
    """Recover M_0..M_t from pairs (s_i, gamma_{s_i}(M)).

    ``t`` defaults to the largest x-degree among the values.
    """
    if not values:
        raise ValueError("no values given")
    ctx = values[0][1].ctx
    if t is None:
        t = max(v.max_x_degree() for _, v in values)
    nodes: dict[int, MatFree] = {}
    for s, v in values:
        nodes.setdefault(ctx.coerce(s), v)
    if len(nodes) < t + 1:
        raise FieldTooSmallError(ctx.p, ctx.k, t + 1) if ctx.order < t + 1 else ValueError(
            f"need {t + 1} distinct nodes, got {len(nodes)}")
    chosen = sorted(nodes)[: t + 1]
    vand = [[ctx.pow(s, j) for j in range(t + 1)] for s in chosen]
    comps = _solve_square(ctx, vand, [nodes[s] for s in chosen])
    for s, v in nodes.items():
        acc = MatFree.zero(ctx, v.d)
        for j, c in enumerate(comps):
            acc = acc + c * FieldElem(ctx, ctx.pow(s, j))
        if acc != v:
            raise ValueError("values are not of the form gamma_s(M) for a common M of x-degree <= t")
    return comps


def extract_components(m: MatFree, ctx: FieldCtx | None = None) -> list[MatFree]:
    """Components of gamma_y(M) computed by evaluation at field nodes."""
    ctx = ctx or m.ctx
    t = m.max_x_degree()
    nodes = enumerate_distinct(ctx, t + 1)
    comps = vandermonde_extract([(s, gamma_t_mat(m, s)) for s in nodes], t)
    generic = gamma_y_expand(m).components
    zero = MatFree.zero(ctx, m.d)
    for i in range(max(len(comps), len(generic))):
        a = comps[i] if i < len(comps) else zero
        b = generic[i] if i < len(generic) else zero
        assert a == b, f"component {i} differs between Vandermonde and generic expansion"
    return comps


# -- platinum closure ----------------------------------------------------------------------


def platinum_closure(s: Span, check: bool = True) -> Span:
    """Span of every gamma_y component of every basis vector of s."""
    ctx = s.ctx
    out = Span(ctx)
    top = 0
    for v in s.basis():
        comps = gamma_y_poly(v)
        top = max(top, len(comps) - 1)
        for c in comps:
            out.add(c)
    if check:
        assert s.issubset(out), "closure does not contain the input"
        nodes = ctx.elements()[: top + 2]
        for v in out.basis():
            for t in nodes:
                assert out.contains(gamma_t(v, t)), "closure not shift invariant"
        if ctx.order >= top + 1:
            assert span_pointwise(s, enumerate_distinct(ctx, top + 1)) == out
    return out


def span_pointwise(s: Span, nodes: Iterable) -> Span:
    """span{gamma_t(v) : v in s, t in nodes}."""
    nodes = list(nodes)
    return Span.of(s.ctx, [gamma_t(v, t) for v in s.basis() for t in nodes])


def pointwise_closure(s: Span) -> Span:
    """Union of shifts by every element of the (finite) field."""
    return span_pointwise(s, s.ctx.elements())


def slm_span(m: MatFree, power: int, check: bool = False) -> Span:
    """Span of all entries of w(i, power) for i = 0..t*power."""
    g = gamma_y_expand(m)
    out = Span(m.ctx)
    for i in range(g.t * power + 1):
        for e in g.w(i, power).entries():
            out.add(e)
    if check:
        direct = platinum_closure((m ** power).entry_span(), check=False)
        assert direct == out, "span of w(i, m) differs from the closure of M^m"
    return out


# -- the e(n, m) sums ------------------------------------------------------------------------


class ESeq:
    """e(n, m) = sum over i_1 + ... + i_m = n of r_{i_1} ... r_{i_m}."""

    def __init__(self, gens: Sequence[FreePoly]):
        if not gens:
            raise ValueError("need at least one generator")
        self.gens = list(gens)
        self.l = len(gens) - 1
        self.ctx = gens[0].ctx
        self._memo: dict[tuple[int, int], FreePoly] = {}

    def e(self, n: int, m: int) -> FreePoly:
        if m < 1:
            raise ValueError("m must be >= 1")
        if n < 0 or n > self.l * m:
            return FreePoly.zero(self.ctx)
        key = (n, m)
        if key in self._memo:
            return self._memo[key]
        if m == 1:
            val = self.gens[n]
        else:
            val = FreePoly.zero(self.ctx)
            for i in range(min(n, self.l) + 1):
                rest = self.e(n - i, m - 1)
                if rest and self.gens[i]:
                    val = val + self.gens[i] * rest
        self._memo[key] = val
        return val

    def e_split(self, n: int, m: int, k: int) -> FreePoly:
        out = FreePoly.zero(self.ctx)
        for i in range(n + 1):
            out = out + self.e(i, k) * self.e(n - i, m - k)
        return out

    def lifted(self, m: int) -> "ESeq":
        """The sequence r'_i = e(i, m), i = 0..l*m."""
        return ESeq([self.e(i, m) for i in range(self.l * m + 1)])


def e_sum(e: ESeq, n: int, m: int) -> FreePoly:
    return e.e(n, m)


# -- dimension scans -------------------------------------------------------------------------


def _isqrt_ok(dim: int, n: int) -> bool:
    return dim * dim <= n


def assumption1_scan(m: MatFree, n_values: Iterable[int]) -> dict:
    """dim(R intersect S(L(M^n))) over a window of n, with dim^2 <= n marked.

    The result is evidence on a finite window only.
    """
    n_values = sorted(set(n_values))
    if any(n < 1 for n in n_values):
        raise ValueError("n must be >= 1")
    entries_in_R = all(e.is_x_free() for e in m.entries())
    rows = []
    powers_in_x = []
    power = None
    last = 0
    for n in n_values:
        while last < n:
            power = m if power is None else power * m
            last += 1
        span = platinum_closure(power.entry_span(), check=False)
        dim = intersect_with_R(span).dim
        rows.append({"n": n, "dim": dim, "bound_met": _isqrt_ok(dim, n)})
        powers_in_x.append(all(e.in_ideal_x() for e in power.entries()))
    if entries_in_R:
        regime = "entries-in-R"
    elif powers_in_x and all(powers_in_x):
        regime = "powers-in-x-ideal-on-window"
    else:
        regime = "unclassified"
    return {
        "window": [n_values[0], n_values[-1]] if n_values else [],
        "regime": regime,
        "rows": rows,
        "witnesses": [r["n"] for r in rows if r["bound_met"]],
        "evidence": "finite window only; says nothing about n outside the window",
    }

