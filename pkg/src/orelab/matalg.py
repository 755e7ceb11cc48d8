"""Finite-dimensional matrix algebras: closure, radical, idempotents, and
the search for matrices of the form sum A_i a_i with a leading idempotent.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DecompositionError, NilpotentAlgebraError, SearchCeilingError
from .field import FieldCtx, FieldElem
from .freealg import FreePoly, Span, deglex, gradation
from .linalg import Echelon, vec_add_scaled
from .matrices import MatConst, MatFree


# -- spans of constant matrices ------------------------------------------------------


class MatSpan:
    """Subspace of d x d matrices, kept in reduced echelon form."""

    def __init__(self, ctx: FieldCtx, d: int, elems: Iterable[MatConst] = (), track: bool = False):
        self.ctx = ctx
        self.d = d
        self.ech = Echelon(ctx, track=track)
        for i, m in enumerate(elems):
            self.add(m, tag=i)

    def add(self, m: MatConst, tag=None) -> bool:
        return self.ech.insert(m.vec(), tag)

    @property
    def dim(self) -> int:
        return self.ech.dim

    def contains(self, m: MatConst) -> bool:
        return self.ech.contains(m.vec())

    __contains__ = contains

    def reduce(self, m: MatConst) -> MatConst:
        return MatConst.from_vec(self.ctx, self.d, self.ech.reduce(m.vec())[0])

    def basis(self) -> list[MatConst]:
        return [MatConst.from_vec(self.ctx, self.d, r) for r in self.ech.basis()]

    def issubset(self, other: "MatSpan") -> bool:
        return all(other.contains(b) for b in self.basis())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatSpan):
            return NotImplemented
        return self.dim == other.dim and self.issubset(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"MatSpan(dim={self.dim}, basis={[str(b) for b in self.basis()]})"


def products_span(left: Sequence[MatConst], right: Sequence[MatConst], ctx: FieldCtx, d: int) -> MatSpan:
    return MatSpan(ctx, d, [x * y for x in left for y in right])


# -- algebras --------------------------------------------------------------------------


class AlgebraBasis:
    """The algebra generated by ``gens``; ``basis[i] * basis[j]`` is stored
    as a dict of basis index -> raw coefficient in ``table[i][j]``."""

    def __init__(self, ctx: FieldCtx, d: int, gens: list[MatConst], basis: list[MatConst], ech: Echelon):
        self.ctx = ctx
        self.d = d
        self.gens = gens
        self.basis = basis
        self.ech = ech
        self.table = [[self._express(x * y) for y in basis] for x in basis]

    def _express(self, m: MatConst) -> dict:
        combo = self.ech.express(m.vec())
        assert combo is not None, "algebra not closed under multiplication"
        return {k: v for k, v in combo.items() if v}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, m: MatConst) -> list[int] | None:
        combo = self.ech.express(m.vec())
        if combo is None:
            return None
        return [combo.get(i, 0) for i in range(self.dim)]

    def contains(self, m: MatConst) -> bool:
        return self.ech.contains(m.vec())

    __contains__ = contains

    def element(self, coords: Sequence[int]) -> MatConst:
        out = MatConst.zero(self.ctx, self.d)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(FieldElem(self.ctx, c))
        return out

    def span(self) -> MatSpan:
        return MatSpan(self.ctx, self.d, self.basis)

    def has_identity_matrix(self) -> bool:
        return self.contains(MatConst.identity(self.ctx, self.d))

    def is_nilpotent(self) -> bool:
        return nilpotency_index(self.basis, self.ctx, self.d) is not None

    def __repr__(self) -> str:
        return f"AlgebraBasis(dim={self.dim}, basis={[str(b) for b in self.basis]})"


def algebra_closure(gens: Sequence[MatConst], ctx: FieldCtx | None = None, d: int | None = None) -> AlgebraBasis:
    """Smallest multiplicatively closed subspace containing ``gens``.

    Basis order is the order in which independent elements are found: the
    generators first, then products basis[j]*basis[i] and basis[i]*basis[j]
    for j <= i, sweeping i upward.
    """
    gens = list(gens)
    if ctx is None or d is None:
        if not gens:
            raise ValueError("need ctx and d for an empty generator list")
        ctx, d = gens[0].ctx, gens[0].d
    ech = Echelon(ctx, track=True)
    basis: list[MatConst] = []

    def push(m: MatConst) -> None:
        if ech.insert(m.vec(), tag=len(basis)):
            basis.append(m)

    for g in gens:
        push(g)
    i = 0
    while i < len(basis):
        for j in range(i + 1):
            push(basis[j] * basis[i])
            push(basis[i] * basis[j])
        i += 1
    alg = AlgebraBasis(ctx, d, gens, basis, ech)
    for x in basis:
        for y in basis:
            assert alg.contains(x * y)
    return alg


def nilpotency_index(elems: Sequence[MatConst], ctx: FieldCtx, d: int, limit: int | None = None) -> int | None:
    """Smallest s with (span elems)^s = 0, or None if the span is not nilpotent."""
    base = MatSpan(ctx, d, elems).basis()
    if not base:
        return 1
    limit = limit if limit is not None else d * d + 1
    cur = base
    for s in range(2, limit + 2):
        cur = products_span(cur, base, ctx, d).basis()
        if not cur:
            return s
    return None


# -- the radical (trace of p-power maps over the prime field) -----------------------------


def _mult_block(ctx: FieldCtx, a: int) -> list[list[int]]:
    """Matrix over GF(p) of multiplication by a on GF(p^k) in the power basis."""
    k, p = ctx.k, ctx.p
    cols = [ctx.to_coeffs(ctx.mul(a, ctx.pow(p, j) if k > 1 else 1)) for j in range(k)]
    return [[cols[c][r] for c in range(k)] for r in range(k)]


def _to_prime(m: MatConst) -> list[list[int]]:
    """Restrict scalars: d x d over GF(p^k) -> dk x dk over GF(p)."""
    ctx, d, k = m.ctx, m.d, m.ctx.k
    out = [[0] * (d * k) for _ in range(d * k)]
    for i, row in enumerate(m.rows):
        for j, v in enumerate(row):
            if v:
                blk = _mult_block(ctx, v)
                for r in range(k):
                    for c in range(k):
                        out[i * k + r][j * k + c] = blk[r][c]
    return out


def _imat_mul(a: list[list[int]], b: list[list[int]], mod: int) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) % mod for c in cols] for r in a]


def _imat_pow_trace(a: list[list[int]], e: int, mod: int) -> int:
    n = len(a)
    res = [[int(i == j) for j in range(n)] for i in range(n)]
    base = a
    while e:
        if e & 1:
            res = _imat_mul(res, base, mod)
        e >>= 1
        if e:
            base = _imat_mul(base, base, mod)
    return sum(res[i][i] for i in range(n)) % mod


def _imat_lin(coeffs: Sequence[int], mats: Sequence[list[list[int]]], p: int) -> list[list[int]]:
    n = len(mats[0])
    out = [[0] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if c:
            for i in range(n):
                ri, mi = out[i], m[i]
                for j in range(n):
                    ri[j] = (ri[j] + c * mi[j]) % p
    return out


def kernel(ctx: FieldCtx, rows: Sequence[dict]) -> list[dict]:
    """Basis of {c : sum_k c_k rows[k] = 0}, as dicts k -> raw value."""
    ech = Echelon(ctx, track=True)
    out = []
    for k, r in enumerate(rows):
        res, combo = ech.reduce(r)
        if res:
            ech.insert(r, tag=k)
        else:
            vec = {k: 1}
            vec_add_scaled(ctx, vec, combo, ctx.neg(1))
            out.append(vec)
    return out


def _prime_radical(mats: Sequence[list[list[int]]], p: int) -> list[list[int]]:
    """Radical of the unital GF(p)-algebra spanned by the integer matrices ``mats``.

    Returns coefficient vectors over ``mats``.  Uses I_{-1} = A and
    I_i = {x in I_{i-1} : g_i(xy) = 0 for all y in A}, with
    g_i(z) = Tr(z~^(p^i)) / p^i mod p for an integer lift z~; the radical is
    I_l for l = floor(log_p n), n the matrix size.
    """
    from .field import GF

    fp = GF(p)
    dim = len(mats)
    n = len(mats[0]) if mats else 0
    l = 0
    while p ** (l + 1) <= n:
        l += 1
    cur = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for i in range(l + 1):
        if not cur:
            break
        mod = p ** (i + 1)
        elems = [_imat_lin(c, mats, p) for c in cur]
        rows = []
        for u in elems:
            row = {}
            for j, y in enumerate(mats):
                z = _imat_mul(u, y, p)
                tr = _imat_pow_trace(z, p**i, mod)
                assert tr % (p**i) == 0, "trace of p-power not divisible as expected"
                g = (tr // p**i) % p
                if g:
                    row[j] = g
            rows.append(row)
        ker = kernel(fp, rows)
        new = []
        for kv in ker:
            vec = [0] * dim
            for k, c in kv.items():
                for t in range(dim):
                    vec[t] = (vec[t] + c * cur[k][t]) % p
            new.append(vec)
        cur = new
    return cur


def _radical_of_unital(basis: Sequence[MatConst], ctx: FieldCtx, d: int) -> MatSpan:
    """Radical of the algebra spanned by ``basis`` (which must contain I)."""
    k, p = ctx.k, ctx.p
    scaled = []
    for b in basis:
        for j in range(k):
            t = FieldElem(ctx, ctx.pow(p, j) if k > 1 else 1)
            scaled.append(b.scale(t))
    mats = [_to_prime(m) for m in scaled]
    vecs = _prime_radical(mats, p)
    out = MatSpan(ctx, d)
    for v in vecs:
        m = MatConst.zero(ctx, d)
        for c, s in zip(v, scaled):
            if c:
                m = m + s.scale(c)
        out.add(m)
    return out


class RadicalData:
    """W = radical of H with W^s = 0 and W^(s-1) != 0 (s = 1 when W = 0)."""

    def __init__(self, algebra: AlgebraBasis, span: MatSpan, s: int):
        self.algebra = algebra
        self.span = span
        self.basis = span.basis()
        self.s = s

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, m: MatConst) -> bool:
        return self.span.contains(m)

    __contains__ = contains

    def __repr__(self) -> str:
        return f"RadicalData(s={self.s}, basis={[str(b) for b in self.basis]})"


def _unital_basis(h: AlgebraBasis) -> list[MatConst]:
    ident = MatConst.identity(h.ctx, h.d)
    return list(h.basis) + ([] if h.contains(ident) else [ident])


def radical(h: AlgebraBasis, check: bool = True) -> RadicalData:
    """Largest nilpotent two-sided ideal of H, with its nilpotency index."""
    ctx, d = h.ctx, h.d
    if h.dim == 0:
        return RadicalData(h, MatSpan(ctx, d), 1)
    w = _radical_of_unital(_unital_basis(h), ctx, d)
    wb = w.basis()
    for x in wb:
        assert h.contains(x), "radical of H + FI escaped H"
    s = nilpotency_index(wb, ctx, d)
    assert s is not None, "computed radical is not nilpotent"
    data = RadicalData(h, w, s)
    if check:
        check_radical(data)
    return data


def quotient_regular_rep(h: AlgebraBasis, w: MatSpan) -> list[MatConst]:
    """Left-regular matrices of (H + FI)/W on itself."""
    ctx = h.ctx
    ech = Echelon(ctx, track=True)
    for i, b in enumerate(w.basis()):
        ech.insert(b.vec(), tag=("w", i))
    comp = []
    for b in _unital_basis(h):
        if ech.insert(b.vec(), tag=("c", len(comp))):
            comp.append(b)
    r = len(comp)
    reps = []
    for x in comp:
        cols = []
        for y in comp:
            combo = ech.express((x * y).vec())
            assert combo is not None
            cols.append([combo.get(("c", i), 0) for i in range(r)])
        reps.append(MatConst(ctx, [[cols[c][row] for c in range(r)] for row in range(r)]))
    return reps


def check_radical(data: RadicalData) -> None:
    """Assert: W is an ideal, W^s = 0, W^(s-1) != 0, and (H+FI)/W has zero radical."""
    h, ctx, d = data.algebra, data.algebra.ctx, data.algebra.d
    wb = data.basis
    for x in wb:
        for b in h.basis:
            assert data.contains(x * b) and data.contains(b * x), "radical is not an ideal"
    assert nilpotency_index(wb, ctx, d) == data.s
    if data.s > 1:
        cur = wb
        for _ in range(data.s - 2):
            cur = products_span(cur, wb, ctx, d).basis()
        assert cur, "W^(s-1) vanishes"
    reps = quotient_regular_rep(h, data.span)
    if reps:
        r = reps[0].d
        q_basis = MatSpan(ctx, r, reps).basis()
        assert MatSpan(ctx, r, q_basis).contains(MatConst.identity(ctx, r))
        assert _radical_of_unital(q_basis, ctx, r).dim == 0, "quotient by the radical is not semisimple"


# -- powers and idempotents --------------------------------------------------------------


class PowerCycle:
    """Eventually periodic powers m, m^2, ...: m^(i+per) = m^i for i >= start."""

    def __init__(self, start: int, period: int, gamma: int, beta: int | None):
        self.start = start
        self.period = period
        self.gamma = gamma
        self.beta = beta

    def __repr__(self) -> str:
        return f"PowerCycle(start={self.start}, period={self.period}, gamma={self.gamma}, beta={self.beta})"


def idempotent_power(m: MatConst) -> PowerCycle:
    """Least gamma >= 1 with m^gamma idempotent; beta with m^beta = I when m is invertible."""
    seen: dict[MatConst, int] = {}
    cur, i = m, 1
    while cur not in seen:
        seen[cur] = i
        cur = cur * m
        i += 1
    start = seen[cur]
    period = i - start
    gamma = period * max(1, -(-start // period))
    g = m**gamma
    assert g * g == g
    beta = None
    if m.is_invertible():
        beta = period
        assert m**beta == MatConst.identity(m.ctx, m.d)
    return PowerCycle(start, period, gamma, beta)


def pseudo_homogeneous_span(h: AlgebraBasis, beta: int) -> MatSpan:
    """Span of all products of exactly beta generators (each of weight 1)."""
    if not h.gens:
        raise ValueError("generators (and hence weights) are not set")
    if beta < 1:
        raise ValueError("weight must be >= 1")
    ctx, d = h.ctx, h.d
    cur = MatSpan(ctx, d, h.gens)
    for _ in range(beta - 1):
        cur = products_span(h.gens, cur.basis(), ctx, d)
    return cur


class PseudoIdempotent:
    """e of weight beta acting as identity modulo W; f = e^(p^n) idempotent."""

    def __init__(self, e: MatConst, beta: int, f: MatConst, n: int, radical_data: RadicalData):
        self.e = e
        self.beta = beta
        self.f = f
        self.n = n
        self.radical = radical_data
        p = e.ctx.p
        self.f_weight = beta * p**n

    def __repr__(self) -> str:
        return f"PseudoIdempotent(beta={self.beta}, e={self.e}, f={self.f}, f_weight={self.f_weight})"


def _acts_as_identity(e: MatConst, h: AlgebraBasis, rad: RadicalData) -> bool:
    return all(rad.contains(r - e * r) and rad.contains(r - r * e) for r in h.basis)


def pseudo_idempotent(h: AlgebraBasis, ceiling: int | None = None, rad: RadicalData | None = None) -> PseudoIdempotent:
    """Search beta = 1, 2, ... for e in the weight-beta span with er = r = re mod W."""
    rad = rad or radical(h)
    if rad.dim == h.dim:
        raise NilpotentAlgebraError("algebra is nilpotent: no idempotent exists")
    ctx, d = h.ctx, h.d
    if ceiling is None:
        ceiling = 2 * h.dim + rad.s
    wech = rad.span.ech
    # Target and columns, reduced modulo W, indexed by (r, side, i, j).
    target: dict = {}
    for ri, r in enumerate(h.basis):
        red = wech.reduce(r.vec())[0]
        for side in (0, 1):
            for key, v in red.items():
                target[(ri, side) + key] = v
    span = MatSpan(ctx, d, h.gens)
    for beta in range(1, ceiling + 1):
        if beta > 1:
            span = products_span(h.gens, span.basis(), ctx, d)
        cands = span.basis()
        columns = []
        for s_ in cands:
            col = {}
            for ri, r in enumerate(h.basis):
                for side, prod in ((0, s_ * r), (1, r * s_)):
                    for key, v in wech.reduce(prod.vec())[0].items():
                        col[(ri, side) + key] = v
            columns.append(col)
        ech = Echelon(ctx, track=True)
        for i, col in enumerate(columns):
            ech.insert(col, tag=i)
        combo = ech.express(target)
        if combo is None:
            continue
        e = MatConst.zero(ctx, d)
        for i, c in combo.items():
            if c:
                e = e + cands[i].scale(FieldElem(ctx, c))
        assert _acts_as_identity(e, h, rad)
        f, n = e, 0
        while f * f != f:
            f = f ** ctx.p
            n += 1
            if n > 64:  # pragma: no cover - p-power lifting always terminates
                raise SearchCeilingError("p-power lifting", 64)
        result = PseudoIdempotent(e, beta, f, n, rad)
        check_pseudo_idempotent(h, result)
        return result
    raise SearchCeilingError("pseudo-homogeneous identity search over weight", ceiling)


def check_pseudo_idempotent(h: AlgebraBasis, res: PseudoIdempotent) -> None:
    assert res.f * res.f == res.f, "f is not idempotent"
    assert _acts_as_identity(res.f, h, res.radical), "f is not an identity modulo W"
    assert _acts_as_identity(res.e, h, res.radical)
    assert pseudo_homogeneous_span(h, res.beta).contains(res.e)
    assert res.e ** (res.e.ctx.p ** res.n) == res.f
    if res.f_weight <= 64:
        assert pseudo_homogeneous_span(h, res.f_weight).contains(res.f)


# -- decompositions M = sum A_i a_i ------------------------------------------------------------


def coefficient_decomposition(n: MatFree) -> list[tuple[MatConst, FreePoly]]:
    """Pairs (C_w, w) over the words w of N, so N = sum C_w w."""
    ctx, d = n.ctx, n.d
    words = sorted(n.words(), key=deglex)
    out = []
    for w in words:
        rows = [[n.rows[i][j].terms.get(w, 0) for j in range(d)] for i in range(d)]
        out.append((MatConst(ctx, rows), FreePoly.word(ctx, w)))
    return out


def check_word_shape(words: Sequence[str]) -> tuple[int, bool]:
    """Common gradation and whether the words lie in the x-ideal (else in R).

    Words must start with a or b, share one positive gradation, and either
    all contain x or all be x-free.
    """
    if not words:
        raise DecompositionError("zero matrix has no decomposition")
    bad = [w for w in words if w[:1] not in ("a", "b")]
    if bad:
        raise DecompositionError(f"words {bad} do not start with a or b")
    grads = {gradation(w) for w in words}
    if len(grads) != 1:
        raise DecompositionError(f"entries are not homogeneous: gradations {sorted(grads)}")
    with_x = {("x" in w) for w in words}
    if len(with_x) != 1:
        raise DecompositionError("some words contain x and some do not")
    return grads.pop(), with_x.pop()


class ZeroPower:
    """The coefficient algebra is nilpotent, so N^exponent = 0."""

    def __init__(self, n: MatFree, exponent: int):
        self.n = n
        self.exponent = exponent

    def __repr__(self) -> str:
        return f"ZeroPower(exponent={self.exponent})"


class Assumption3Witness:
    """M = sum A_i a_i with A_1 = e idempotent and e acting as identity mod W."""

    def __init__(self, m: MatFree, coeffs: list[MatConst], polys: list[FreePoly], h: AlgebraBasis,
                 rad: RadicalData, e: MatConst, power: int, source: MatFree | None = None,
                 pseudo: PseudoIdempotent | None = None):
        self.m = m
        self.coeffs = coeffs
        self.polys = polys
        self.algebra = h
        self.radical = rad
        self.e = e
        self.power = power
        self.source = source
        self.pseudo = pseudo

    @property
    def s(self) -> int:
        return self.radical.s

    @property
    def d(self) -> int:
        return self.m.d

    @property
    def ctx(self) -> FieldCtx:
        return self.m.ctx

    @property
    def alpha(self) -> int:
        return self.polys[0].gradation()

    def to_json(self) -> dict:
        ctx = self.ctx
        return {
            "field": ctx.describe(),
            "power": self.power,
            "M": self.m.to_json(),
            "A": [a.to_json() for a in self.coeffs],
            "a": [str(p) for p in self.polys],
            "e": self.e.to_json(),
            "radical_basis": [w.to_json() for w in self.radical.basis],
            "s": self.s,
            "H_dim": self.algebra.dim,
        }

    def __repr__(self) -> str:
        return f"Assumption3Witness(power={self.power}, xi={len(self.polys)}, s={self.s}, e={self.e})"


def corollary_change(coeffs: list[MatConst], polys: list[FreePoly], e: MatConst) -> tuple[list[MatConst], list[FreePoly]]:
    """Rewrite sum A_i a_i so that the first coefficient is e (e in span A_i)."""
    ctx = e.ctx
    ech = Echelon(ctx, track=True)
    for i, a in enumerate(coeffs):
        ech.insert(a.vec(), tag=i)
    combo = ech.express(e.vec())
    if combo is None:
        raise DecompositionError("e is not a combination of the coefficient matrices")
    c = [combo.get(i, 0) for i in range(len(coeffs))]
    j = next(i for i, v in enumerate(c) if v)
    inv = ctx.inv(c[j])
    new_a = [polys[j].scale(FieldElem(ctx, inv))]
    new_A = [e]
    for i, (A, a) in enumerate(zip(coeffs, polys)):
        if i == j:
            continue
        r = FieldElem(ctx, ctx.mul(c[i], inv))
        new_A.append(A)
        new_a.append(a - polys[j] * r)
    return new_A, new_a


def power_to_assumption3(n: MatFree, ceiling: int | None = None) -> Assumption3Witness | ZeroPower:
    """Raise N to the weight of a pseudo-homogeneous idempotent of its coefficient algebra."""
    ctx, d = n.ctx, n.d
    pairs = coefficient_decomposition(n)
    check_word_shape([str(a) for _, a in pairs])
    gens = [A for A, _ in pairs]
    h_src = algebra_closure(gens, ctx, d)
    exp = nilpotency_index(h_src.basis, ctx, d)
    if exp is not None:
        k = 1
        while n**k:
            k += 1
        assert k <= exp, "N^s != 0 although the coefficient algebra is nilpotent"
        return ZeroPower(n, k)
    rad_src = radical(h_src)
    pseudo = pseudo_idempotent(h_src, ceiling=ceiling, rad=rad_src)
    power = pseudo.f_weight
    m = n**power
    pairs_m = [(A, a) for A, a in coefficient_decomposition(m) if A]
    A_list = [A for A, _ in pairs_m]
    a_list = [a for _, a in pairs_m]
    # the coefficients of N^power span the weight-power part of H'
    assert MatSpan(ctx, d, A_list) == pseudo_homogeneous_span(h_src, power)
    A_new, a_new = corollary_change(A_list, a_list, pseudo.f)
    h = algebra_closure(A_new, ctx, d)
    rad = radical(h)
    # H intersect W' lies in W
    hw = MatSpan(ctx, d, h.basis)
    for w in rad_src.basis:
        if hw.contains(w):
            assert rad.contains(w)
    for b in h.basis:
        if rad_src.contains(b):
            assert rad.contains(b)
    wit = Assumption3Witness(m, A_new, a_new, h, rad, pseudo.f, power, source=n, pseudo=pseudo)
    report = assumption3_check(wit)
    assert all(report.values()), f"witness fails re-verification: {report}"
    return wit


def assumption3_check(w: Assumption3Witness) -> dict:
    """Re-verify the three items from scratch; returns item -> bool."""
    ctx, d = w.ctx, w.d
    out = {}
    recomb = MatFree.combine(zip(w.coeffs, w.polys), ctx, d)
    grads = {p.gradation() for p in w.polys}
    independent = Span.of(ctx, w.polys).dim == len(w.polys)
    all_x = all(p.in_ideal_x() for p in w.polys)
    all_r = all(p.is_x_free() for p in w.polys)
    in_a = all(word[:1] in ("a", "b") for p in w.polys for word in p.terms)
    out["item1_reassembles"] = recomb == w.m
    out["item1_independent"] = independent
    out["item1_same_degree"] = len(grads) == 1 and None not in grads and grads.pop() > 0
    out["item1_in_A_and_x_ideal_or_R"] = in_a and (all_x or all_r)
    h = algebra_closure(w.coeffs, ctx, d)
    rad = radical(h)
    out["item2_radical_matches"] = rad.span == w.radical.span and rad.s == w.radical.s
    e = w.coeffs[0]
    out["item3_first_is_e"] = e == w.e
    out["item3_idempotent"] = e * e == e
    out["item3_identity_mod_W"] = _acts_as_identity(e, h, rad)
    wb = rad.basis
    out["item3_W_power_s_zero"] = nilpotency_index(wb, ctx, d) == rad.s
    return out
