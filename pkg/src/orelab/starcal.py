"""Star products (f_1, f_2, ...) * w(n, m), good prefixes, the quintuple
order, the B/Z sweep and the block-deletion map."""

from __future__ import annotations

import itertools
from functools import cmp_to_key
from typing import Sequence

from .errors import FactorizationError, HypothesisError, PreconditionError
from .field import FieldCtx, FieldElem
from .freealg import FreePoly, Span, deglex, intersect_with_R, x_first
from .linalg import Echelon
from .matalg import Assumption3Witness, MatSpan
from .matrices import MatConst, MatFree
from .shift import GammaExpansion, gamma_y_expand


# -- star products --------------------------------------------------------------------


class StarCalculus:
    """Evaluates u * w(n, m) for prefixes u = (f_1, ..., f_L, I, I, ...)."""

    def __init__(self, g: GammaExpansion):
        self.g = g
        self.ctx = g.ctx
        self.d = g.d
        self.identity = MatFree.identity(self.ctx, self.d)
        self.zero = MatFree.zero(self.ctx, self.d)
        self._fm: dict[tuple[MatConst, int], MatFree] = {}
        self._memo: dict = {}

    def _f_times_m(self, f: MatConst, i: int) -> MatFree:
        key = (f, i)
        hit = self._fm.get(key)
        if hit is None:
            hit = self.g.components[i]._const_mul(f)
            self._fm[key] = hit
        return hit

    def star(self, prefix: Sequence[MatConst], n: int, m: int) -> MatFree:
        """sum over i_1 + ... + i_m = n of f_1 M_{i_1} f_2 M_{i_2} ... f_m M_{i_m}."""
        if m < 1:
            raise ValueError("m must be >= 1")
        prefix = tuple(prefix[:m])
        # trailing identities change nothing
        ident = MatConst.identity(self.ctx, self.d)
        while prefix and prefix[-1] == ident:
            prefix = prefix[:-1]
        return self._rec(prefix, n, m)

    def _rec(self, prefix: tuple, n: int, rem: int) -> MatFree:
        if n < 0 or n > self.g.t * rem:
            return self.zero
        if not prefix:
            return self.g.w(n, rem)
        key = (prefix, n, rem)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        f, rest = prefix[0], prefix[1:]
        out = self.zero
        if f:
            for i in range(min(n, self.g.t) + 1):
                if rem == 1:
                    tail = self.identity if n == i else None
                else:
                    tail = self._rec(rest, n - i, rem - 1)
                if tail is None or not tail:
                    continue
                fm = self._f_times_m(f, i)
                if fm:
                    out = out + (fm if rem == 1 else fm * tail)
        self._memo[key] = out
        return out

    def star_split(self, prefix: Sequence[MatConst], n: int, m: int, k: int) -> MatFree:
        """The same value via the split at position k (1 <= k < m)."""
        if not 1 <= k < m:
            raise ValueError("need 1 <= k < m")
        head, tail = tuple(prefix[:k]), tuple(prefix[k:])
        out = self.zero
        for j in range(n + 1):
            left = self.star(head, j, k)
            if left:
                right = self.star(tail, n - j, m - k)
                if right:
                    out = out + left * right
        return out


def star(prefix: Sequence[MatConst], g: GammaExpansion, n: int, m: int) -> MatFree:
    return StarCalculus(g).star(prefix, n, m)


def t_prefix(e: MatConst, i: int) -> tuple[MatConst, ...]:
    """t_i = (1-e, ..., 1-e, e) with i-1 copies of 1-e."""
    one = MatConst.identity(e.ctx, e.d)
    return tuple([one - e] * (i - 1) + [e])


def t_prime_prefix(e: MatConst, i: int) -> tuple[MatConst, ...]:
    one = MatConst.identity(e.ctx, e.d)
    return tuple([one - e] * i)


def telescope_check(calc: StarCalculus, e: MatConst, s: int, n: int, m: int) -> bool:
    """w(n, m) as a sum of t_i * w(n, m).

    For m >= s the sum runs over i = 1..s (the t'_s remainder vanishes);
    for m < s the remainder t'_m * w(n, m) is added explicitly.
    """
    w = calc.g.w(n, m)
    top = min(s, m)
    total = calc.zero
    for i in range(1, top + 1):
        total = total + calc.star(t_prefix(e, i), n, m)
    if m < s:
        total = total + calc.star(t_prime_prefix(e, m), n, m)
    else:
        assert not calc.star(t_prime_prefix(e, s), n, m)
    return total == w


def zerowy_check(calc: StarCalculus, good: "GoodSet", n: int, m: int) -> bool:
    """Every prefix of s factors from W-basis and 1-e kills w(n, m) once m >= s."""
    if m < good.s:
        raise PreconditionError(f"need m >= s (m={m}, s={good.s})")
    for combo in itertools.product(good.e_symbols, repeat=good.s):
        if calc.star(good.make(combo).mats, n, m):
            return False
    return True


# -- good prefixes and the quintuple order ---------------------------------------------------


class StarPrefix:
    """A good prefix: symbols like 'E1', '1-e', 'e', 'P2' and their matrices."""

    __slots__ = ("symbols", "mats", "ranks")

    def __init__(self, symbols: tuple[str, ...], mats: tuple[MatConst, ...], ranks: tuple[int, ...]):
        self.symbols = symbols
        self.mats = mats
        self.ranks = ranks

    @property
    def distance(self) -> int:
        return len(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, StarPrefix) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __str__(self) -> str:
        return "(" + ", ".join(self.symbols + ("I", "...")) + ")"

    def __repr__(self) -> str:
        return f"StarPrefix{self}"


class GoodSet:
    """E = {E_1..E_beta (basis of W), 1-e}, P_i = h e independent modulo W + Fe,
    and all good prefixes of distance 1..s."""

    def __init__(self, witness: Assumption3Witness):
        ctx, d = witness.ctx, witness.d
        e = witness.e
        one = MatConst.identity(ctx, d)
        self.e = e
        self.s = witness.s
        self.E = list(witness.radical.basis)
        self.one_minus_e = one - e
        span = MatSpan(ctx, d, self.E + [e])
        self.P = []
        for b in witness.algebra.basis:
            cand = b * e
            if span.add(cand):
                self.P.append(cand)
        for p_ in self.P:
            assert p_ * e == p_
        beta = len(self.E)
        self.symbols: dict[str, MatConst] = {}
        self.rank: dict[str, int] = {}
        for i, m in enumerate(self.E, start=1):
            self.symbols[f"E{i}"] = m
            self.rank[f"E{i}"] = i - 1
        self.symbols["1-e"] = self.one_minus_e
        self.rank["1-e"] = beta
        self.symbols["e"] = e
        self.rank["e"] = beta + 1
        for i, m in enumerate(self.P, start=1):
            self.symbols[f"P{i}"] = m
            self.rank[f"P{i}"] = beta + 1 + i
        e_syms = [f"E{i}" for i in range(1, beta + 1)]
        if self.one_minus_e:
            e_syms.append("1-e")
        head_syms = ["e"] + [f"P{i}" for i in range(1, len(self.P) + 1)]
        self.e_symbols = e_syms
        self.head_symbols = head_syms
        prefixes = []
        layer = [()]
        for q in range(self.s):
            for pre in layer:
                for h in head_syms:
                    prefixes.append(self.make(pre + (h,)))
            layer = [pre + (x,) for pre in layer for x in e_syms]
        self.prefixes = sorted(prefixes, key=self.prefix_key)

    def make(self, symbols: Sequence[str]) -> StarPrefix:
        symbols = tuple(symbols)
        return StarPrefix(symbols, tuple(self.symbols[x] for x in symbols), tuple(self.rank[x] for x in symbols))

    @staticmethod
    def prefix_key(u: StarPrefix) -> tuple:
        return (-u.distance, u.ranks)

    def __len__(self) -> int:
        return len(self.prefixes)

    def __iter__(self):
        return iter(self.prefixes)

    def count_bound(self) -> int:
        beta, beta2 = len(self.E), len(self.P)
        return (beta + 1) ** self.s * (beta2 + 1) * self.s


def good_set(witness: Assumption3Witness) -> GoodSet:
    return GoodSet(witness)


class Quintuple:
    """[u * w(n, m)]_{k,l} with 1-based entry indices k, l."""

    __slots__ = ("u", "n", "m", "k", "l")

    def __init__(self, u: StarPrefix, n: int, m: int, k: int, l: int):
        self.u, self.n, self.m, self.k, self.l = u, n, m, k, l

    def key(self) -> tuple:
        return (-self.u.distance, self.n, self.u.ranks, self.k, self.l)

    def ident(self) -> tuple:
        return (self.u.symbols, self.n, self.k, self.l)

    def __repr__(self) -> str:
        return f"[{self.u}*w({self.n},{self.m})]_{self.k},{self.l}"


def quintuple_cmp(q1: Quintuple, q2: Quintuple) -> int:
    if q1.m != q2.m:
        raise ValueError(f"quintuples compare only at equal m ({q1.m} vs {q2.m})")
    a, b = q1.key(), q2.key()
    return (a > b) - (a < b)


quintuple_sort_key = cmp_to_key(quintuple_cmp)


# -- the B/Z sweep ---------------------------------------------------------------------------


class BZResult:
    def __init__(self, m: int, records: list[dict], B: set, Z: set, r_dim: int, n_cap: int):
        self.m = m
        self.records = records
        self.B = B
        self.Z = Z
        self.r_dim = r_dim
        self.n_cap = n_cap

    def summary(self) -> dict:
        return {"m": self.m, "n_cap": self.n_cap, "quintuples": len(self.records),
                "B": len(self.B), "Z": len(self.Z), "R_dim": self.r_dim}

    def __repr__(self) -> str:
        return f"BZResult({self.summary()})"


def compute_BZ(witness: Assumption3Witness, m: int, n_cap: int | None = None,
               good: GoodSet | None = None, calc: StarCalculus | None = None) -> BZResult:
    """Sweep the quintuples at level m in increasing order.

    B: the value is already in the span of earlier values.
    Z: the value enlarges the x-free part of that span.
    """
    good = good or GoodSet(witness)
    calc = calc or StarCalculus(gamma_y_expand(witness.m))
    t = calc.g.t
    if n_cap is None:
        n_cap = t * m
    if n_cap < t * m:
        raise PreconditionError(f"n_cap = {n_cap} is below t*m = {t * m}; nonzero values would be missed")
    d, ctx = witness.d, witness.ctx
    quints = [Quintuple(u, n, m, k, l) for u in good for n in range(n_cap + 1)
              for k in range(1, d + 1) for l in range(1, d + 1)]
    quints.sort(key=Quintuple.key)
    ech = Echelon(ctx, x_first)
    all_values = Span(ctx)
    B, Z, records = set(), set(), []
    for q in quints:
        val = calc.star(q.u.mats, q.n, m).rows[q.k - 1][q.l - 1]
        all_values.add(val)
        res, _ = ech.reduce(val.terms)
        in_b = not res
        in_z = False
        if not in_b:
            piv = min(res, key=x_first)
            in_z = "x" not in piv
            ech.insert(val.terms)
        if in_b:
            B.add(q.ident())
        if in_z:
            Z.add(q.ident())
        records.append({"prefix": list(q.u.symbols), "n": q.n, "k": q.k, "l": q.l,
                        "in_B": in_b, "in_Z": in_z})
    r_dim = intersect_with_R(all_values).dim
    assert len(Z) == r_dim, f"|Z_m| = {len(Z)} but dim R_m = {r_dim}"
    assert not (B & Z), "B_m and Z_m intersect"
    return BZResult(m, records, B, Z, r_dim, n_cap)


def naj_spot_check(witness: Assumption3Witness, m: int, t: int,
                   good: GoodSet | None = None, calc: StarCalculus | None = None) -> dict:
    """Every Z_m quintuple must map to a B_(m-t) quintuple.

    Hypotheses: t > s, m > t + max(d, s) and a_1 in the ideal generated by x.
    """
    s, d = witness.s, witness.d
    if not witness.polys[0].in_ideal_x():
        raise HypothesisError("a_1 must lie in the ideal generated by x")
    if not t > s:
        raise HypothesisError(f"need t > s (t={t}, s={s})")
    if not m > t + max(d, s):
        raise HypothesisError(f"need m > t + max(d, s) (m={m}, t={t}, d={d}, s={s})")
    good = good or GoodSet(witness)
    calc = calc or StarCalculus(gamma_y_expand(witness.m))
    cap = calc.g.t * m
    upper = compute_BZ(witness, m, cap, good, calc)
    lower = compute_BZ(witness, m - t, cap, good, calc)
    violations = [list(map(lambda x: list(x) if isinstance(x, tuple) else x, z))
                  for z in sorted(upper.Z) if z not in lower.B]
    c_size = len(good) * (m * (s + 2) * calc.g.t + 1) * d * d
    return {
        "m": m, "t": t, "s": s, "d": d,
        "Z_m": len(upper.Z), "B_m_minus_t": len(lower.B),
        "violations": violations,
        "good_set_size": len(good),
        "C_m_size": c_size,
        "z_constant": c_size // m + 1,
    }


# -- U/V split and the deletion map ----------------------------------------------------------------


class BlockBasis:
    """a_1..a_xi completed by deglex-first words to a basis of their support."""

    def __init__(self, polys: Sequence[FreePoly]):
        if not polys:
            raise ValueError("need at least one basis element")
        self.polys = list(polys)
        self.ctx = polys[0].ctx
        self.alpha = polys[0].gradation()
        if self.alpha is None or any(p.gradation() != self.alpha for p in polys):
            raise ValueError("basis elements must be homogeneous of one gradation")
        self.ech = Echelon(self.ctx, track=True)
        for i, p in enumerate(self.polys):
            if not self.ech.insert(p.terms, tag=("a", i)):
                raise ValueError("basis elements are linearly dependent")
        support = sorted({w for p in self.polys for w in p.terms}, key=deglex)
        self.completion = [w for w in support if self.ech.insert({w: 1}, tag=("w", w))]

    def first_coordinate(self, word: str) -> int:
        """Raw coefficient of a_1 when ``word`` is written in the completed basis."""
        combo = self.ech.express({word: 1})
        if combo is None:
            return 0  # a word outside the support is itself a completion vector
        return combo.get(("a", 0), 0)


def _cut(word: str, k: int, t: int, alpha: int) -> tuple[str, list[str], str]:
    if word[:1] not in ("a", "b"):
        raise FactorizationError(word, "does not start with a or b")
    pos = [i for i, ch in enumerate(word) if ch != "x"]
    need = k + t * alpha
    if len(pos) < need:
        raise FactorizationError(word, f"gradation {len(pos)} is below k + t*alpha = {need}")
    cuts = [pos[k + j * alpha] if k + j * alpha < len(pos) else len(word) for j in range(t + 1)]
    start = pos[k] if k < len(pos) else len(word)
    prefix = word[:start] if k else ""
    if k == 0:
        start = 0
        cuts[0] = 0
    blocks = [word[cuts[j]:cuts[j + 1]] for j in range(t)]
    tail = word[cuts[t]:]
    return prefix, blocks, tail


class UVSplit:
    def __init__(self, k: int, t: int, v_part: FreePoly, u_part: FreePoly, records: list):
        self.k = k
        self.t = t
        self.v_part = v_part
        self.u_part = u_part
        self.records = records

    def __repr__(self) -> str:
        return f"UVSplit(k={self.k}, t={self.t}, V={self.v_part}, U={self.u_part})"


def uv_split(v: FreePoly, k: int, t: int, basis: BlockBasis | Sequence[FreePoly]) -> UVSplit:
    """Split v into its part in A(k) a_1^t A and the complementary part."""
    if not isinstance(basis, BlockBasis):
        basis = BlockBasis(basis)
    ctx = v.ctx
    a1t = basis.polys[0] ** t
    v_part = FreePoly.zero(ctx)
    records = []
    for word, c in v.terms.items():
        prefix, blocks, tail = _cut(word, k, t, basis.alpha)
        coef = c
        for b in blocks:
            coef = ctx.mul(coef, basis.first_coordinate(b))
        if coef:
            records.append((coef, prefix, tail))
            v_part = v_part + (FreePoly.word(ctx, prefix) * a1t * FreePoly.word(ctx, tail)).scale(FieldElem(ctx, coef))
    return UVSplit(k, t, v_part, v - v_part, records)


def apply_deletion(split: UVSplit, ctx: FieldCtx | None = None) -> FreePoly:
    """G(w a_1^t w') = w w', extended linearly."""
    ctx = ctx or split.v_part.ctx
    out = FreePoly.zero(ctx)
    for coef, prefix, tail in split.records:
        out = out + FreePoly.word(ctx, prefix + tail, FieldElem(ctx, coef))
    return out
