"""Derivations, differential polynomial rings R[X; D] and quasi-inverses.

The derivation of interest is ``ad_x: c -> xc - cx`` on F<a,b,x>.  Ore
polynomials take coefficients either in F<a,b,x> (with ad_x) or in a
matrix algebra (with any inner derivation).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from .errors import ContextMismatchError, DomainError, NotNilpotentError, PreconditionError
from .field import FieldCtx, FieldElem
from .freealg import FreePoly, gradation
from .matrices import MatConst


def binom_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        out = out * comb(ni, ki) % p
        n //= p
        k //= p
    return out


# -- the inner derivation ad_x on the free algebra ------------------------------


def ad_x(c: FreePoly) -> FreePoly:
    """xc - cx."""
    x = FreePoly.word(c.ctx, "x")
    return x * c - c * x


def iterated_d(c: FreePoly, n: int) -> FreePoly:
    """ad_x applied n times."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for _ in range(n):
        c = ad_x(c)
    return c


def d_binomial(c: FreePoly, n: int) -> FreePoly:
    """Closed form sum_i (-1)^i C(n, i) x^(n-i) c x^i."""
    ctx = c.ctx
    out = FreePoly.zero(ctx)
    for i in range(n + 1):
        coef = ctx.from_int((-1) ** i * binom_mod(n, i, ctx.p))
        if coef:
            left = FreePoly.word(ctx, "x" * (n - i))
            right = FreePoly.word(ctx, "x" * i)
            out = out + (left * c * right).scale(FieldElem(ctx, coef))
    return out


def frobenius_d_rhs(c: FreePoly, m: int) -> FreePoly:
    """x^(p^m) c - c x^(p^m), which equals D^(p^m)(c) in characteristic p."""
    q = c.ctx.p**m
    xq = FreePoly.word(c.ctx, "x" * q)
    return xq * c - c * xq


@lru_cache(maxsize=None)
def _d_generator(ctx: FieldCtx, letter: str, k: int) -> FreePoly:
    if k == 0:
        return FreePoly.word(ctx, letter)
    return ad_x(_d_generator(ctx, letter, k - 1))


# -- derivations ----------------------------------------------------------------------


class Derivation:
    """A derivation on a coefficient ring, checked on samples at registration.

    ``bound`` is an optional nilpotency certificate: D^bound vanishes on the
    samples.
    """

    def __init__(self, fn: Callable, zero, name: str = "D", samples: Sequence = (), bound: int | None = None):
        self.fn = fn
        self.zero = zero
        self.name = name
        self.bound = bound
        samples = list(samples)
        for u in samples:
            for v in samples:
                lhs = fn(u * v)
                rhs = fn(u) * v + u * fn(v)
                if lhs != rhs:
                    raise PreconditionError(f"{name} breaks the Leibniz rule on ({u}, {v})")
        if bound is not None:
            for u in samples:
                for _ in range(bound):
                    u = fn(u)
                if u:
                    raise PreconditionError(f"{name}^{bound} does not vanish on a sample")

    def __call__(self, c):
        return self.fn(c)

    def power(self, c, k: int):
        for _ in range(k):
            c = self.fn(c)
        return c

    def __repr__(self) -> str:
        return f"Derivation({self.name})"


@lru_cache(maxsize=None)
def free_derivation(ctx: FieldCtx) -> Derivation:
    """ad_x on F<a,b,x>."""
    gens = [FreePoly.word(ctx, w) for w in ("a", "b", "x", "ab")]
    return Derivation(ad_x, FreePoly.zero(ctx), name="ad_x", samples=gens)


def inner_derivation(n: MatConst, samples: Sequence[MatConst] = ()) -> Derivation:
    """c -> nc - cn on d x d matrices."""
    return Derivation(lambda c: n * c - c * n, MatConst.zero(n.ctx, n.d), name=f"ad {n}", samples=samples)


def zero_derivation(ctx: FieldCtx, d: int) -> Derivation:
    z = MatConst.zero(ctx, d)
    return Derivation(lambda c: z, z, name="0", bound=1)


# -- differential polynomials -------------------------------------------------------------


class OrePoly:
    """sum c_i X^i in R[X; D], with X c = c X + D(c)."""

    __slots__ = ("coeffs", "der")

    def __init__(self, coeffs: Iterable, der: Derivation):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.der = der

    @classmethod
    def const(cls, c, der: Derivation) -> "OrePoly":
        return cls([c], der)

    @classmethod
    def monomial(cls, c, n: int, der: Derivation) -> "OrePoly":
        return cls([der.zero] * n + [c], der)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.der.zero

    def _check(self, other: "OrePoly") -> None:
        if other.der is not self.der:
            raise ContextMismatchError("Ore polynomials over different derivations")

    def __add__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return OrePoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.der)

    def __neg__(self):
        return OrePoly([-c for c in self.coeffs], self.der)

    def __sub__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return ore_mul(self, other)

    def __pow__(self, e: int) -> "OrePoly":
        if e < 1:
            raise ValueError("power must be >= 1 (no unit assumed in the coefficient ring)")
        out = self
        for _ in range(e - 1):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.der is other.der and self.coeffs == other.coeffs

    __hash__ = None

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"({c})x")
            else:
                parts.append(f"({c})x^{i}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"OrePoly({self})"


def ore_mul(u: OrePoly, v: OrePoly) -> OrePoly:
    """Leibniz rule c X^n * d X^m = sum_i C(n,i) c D^i(d) X^(n-i+m)."""
    u._check(v)
    der = u.der
    if not u.coeffs or not v.coeffs:
        return OrePoly([], der)
    p = _char(u.coeffs[0]) if u.coeffs else 2
    n_max = u.degree
    # derivs[j][i] = D^i(v_j)
    derivs = []
    for d in v.coeffs:
        row = [d]
        for _ in range(n_max):
            row.append(der(row[-1]))
        derivs.append(row)
    out = [der.zero] * (u.degree + v.degree + 1)
    for n, c in enumerate(u.coeffs):
        if not c:
            continue
        for m, row in enumerate(derivs):
            for i in range(n + 1):
                b = binom_mod(n, i, p)
                if not b or not row[i]:
                    continue
                term = c * row[i]
                if b != 1:
                    term = term * b
                out[n - i + m] = out[n - i + m] + term
    return OrePoly(out, der)


def _char(c) -> int:
    return c.ctx.p


def ore_to_free(u: OrePoly) -> FreePoly:
    """Evaluate X -> x; a ring map when the coefficients are free polynomials."""
    ctx = u.der.zero.ctx
    out = FreePoly.zero(ctx)
    for i, c in enumerate(u.coeffs):
        out = out + c * FreePoly.word(ctx, "x" * i)
    return out


# -- quasi-inverses -------------------------------------------------------------------------


def is_quasi_inverse(r, s) -> bool:
    return not (r + s + r * s) and not (r + s + s * r)


def quasi_inverse_nilpotent(r, bound: int):
    """s = sum_{i=1}^{bound-1} (-1)^i r^i for r with r^bound = 0.

    Both defining equations are asserted, and the series is recomputed in
    left- and right-nested form; all three must agree.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    powers = [r]
    for _ in range(bound - 1):
        powers.append(powers[-1] * r)
    if powers[-1]:
        raise NotNilpotentError(f"r^{bound} != 0: not nilpotent at declared bound {bound}")
    s = r - r
    for i, ri in enumerate(powers[:-1], start=1):
        s = s - ri if i % 2 else s + ri
    assert not (r + s + r * s), "r + s + rs != 0"
    assert not (r + s + s * r), "r + s + sr != 0"
    left = right = r - r
    for _ in range(bound - 1):
        left = -r - r * left
        right = -r - right * r
    assert left == s and right == s, "nested series disagree"
    return s


def quasi_inverse_unique_check(r, s1, s2) -> bool:
    for name, s in (("s1", s1), ("s2", s2)):
        if not is_quasi_inverse(r, s):
            raise PreconditionError(f"{name} = {s} is not a quasi-inverse of {r}")
    return s1 == s2


# -- decomposition over the subalgebra P generated by D^k(a), D^k(b) ---------------------------


class PElem:
    """A polynomial in the symbols D^k(a), D^k(b).

    Keys are tuples of (letter, k) factors; values are raw coefficients.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict | None = None):
        self.ctx = ctx
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __add__(self, other: "PElem") -> "PElem":
        out = dict(self.terms)
        add = self.ctx.add
        for k, v in other.terms.items():
            out[k] = add(out.get(k, 0), v)
        return PElem(self.ctx, out)

    def prepend(self, letter: str) -> "PElem":
        return PElem(self.ctx, {((letter, 0),) + k: v for k, v in self.terms.items()})

    def derive(self) -> "PElem":
        """Leibniz rule on each product of generators."""
        out: dict = {}
        add = self.ctx.add
        for key, v in self.terms.items():
            for i, (letter, k) in enumerate(key):
                nk = key[:i] + ((letter, k + 1),) + key[i + 1:]
                out[nk] = add(out.get(nk, 0), v)
        return PElem(self.ctx, out)

    def expand(self) -> FreePoly:
        out = FreePoly.zero(self.ctx)
        for key, v in self.terms.items():
            prod = FreePoly.one(self.ctx)
            for letter, k in key:
                prod = prod * _d_generator(self.ctx, letter, k)
            out = out + prod.scale(FieldElem(self.ctx, v))
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            factors = []
            for letter, k in key:
                factors.append(letter if k == 0 else (f"D({letter})" if k == 1 else f"D^{k}({letter})"))
            body = "*".join(factors) if factors else "1"
            c = self.ctx.format(self.terms[key])
            parts.append(body if c == "1" else f"({c})*{body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PElem({self})"


class PDecomposition:
    """v = sum_i parts[i] x^i with every part in P."""

    def __init__(self, v: FreePoly, parts: list[PElem]):
        self.v = v
        self.parts = parts
        self.expanded = [p.expand() for p in parts]

    def reassemble(self) -> FreePoly:
        ctx = self.v.ctx
        out = FreePoly.zero(ctx)
        for i, p in enumerate(self.expanded):
            out = out + p * FreePoly.word(ctx, "x" * i)
        return out

    def __len__(self) -> int:
        return len(self.parts)


def p_decompose(v: FreePoly) -> PDecomposition:
    """Write v in A + xA + ... as p_0 + p_1 x + ... + p_n x^n with p_i in P.

    Each word is scanned right to left.  A letter a or b multiplies every
    current part on the left; a letter x uses x p = p x + D(p).
    """
    ctx = v.ctx
    total: dict[int, PElem] = {}
    for word, coeff in v.terms.items():
        if gradation(word) < 1:
            raise DomainError(f"word {word!r} has gradation 0, outside A + xA + x^2A + ...")
        state = {0: PElem(ctx, {(): coeff})}
        for ch in reversed(word):
            if ch == "x":
                nxt: dict[int, PElem] = {}
                for j, p in state.items():
                    nxt[j + 1] = nxt.get(j + 1, PElem(ctx)) + p
                    dp = p.derive()
                    if dp:
                        nxt[j] = nxt.get(j, PElem(ctx)) + dp
                state = nxt
            else:
                state = {j: p.prepend(ch) for j, p in state.items()}
        for j, p in state.items():
            total[j] = total.get(j, PElem(ctx)) + p
    top = max((j for j, p in total.items() if p), default=-1)
    parts = [total.get(j, PElem(ctx)) for j in range(top + 1)]
    dec = PDecomposition(v, parts)
    assert dec.reassemble() == v, "P-decomposition does not reassemble"
    return dec
