"""Exact arithmetic in GF(p) and GF(p^k).

Elements are encoded as integers ``v = c0 + c1*p + ... + c_{k-1}*p^(k-1)``
where ``c_i`` are the coordinates in the power basis ``1, t, ..., t^(k-1)``
of ``GF(p)[t]/(modulus)``.  :class:`FieldCtx` does arithmetic on those raw
integers (the hot path for everything built on top), and :class:`FieldElem`
is the user-facing wrapper with operators.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .errors import ContextMismatchError, FieldTooSmallError, ParseError

# Irreducible moduli, coefficients listed low degree first (monic).
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
}

_ADD_TABLE_LIMIT = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of ``num`` modulo ``den`` over GF(p); ``den`` nonzero."""
    r = _trim([c % p for c in num])
    den = _trim([c % p for c in den])
    inv_lead = pow(den[-1], p - 2, p)
    while len(r) >= len(den):
        shift = len(r) - len(den)
        coef = r[-1] * inv_lead % p
        for i, c in enumerate(den):
            r[shift + i] = (r[shift + i] - coef * c) % p
        _trim(r)
    return r


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial factorization: no monic factor of degree 1..k//2."""
    k = len(modulus) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for low in product(range(p), repeat=deg):
            if not _poly_rem(modulus, list(low) + [1], p):
                return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree k over GF(p)."""
    for low in product(range(p), repeat=k):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldCtx:
    """The field GF(p^k) = GF(p)[t]/(modulus).

    Immutable after construction.  Use :func:`GF` to get a shared instance.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = MODULI.get((p, k)) or find_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if k > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self._exp: list[int] = []
        self._log: list[int] = []
        self._add_table: list[list[int]] | None = None
        if k > 1:
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _poly_mulmod(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod_ = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod_[i + j] += x * y
        rem = _poly_rem(prod_, self.modulus, p)
        return self.from_coeffs(rem)

    def _build_tables(self) -> None:
        q = self.order
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in factors):
                break
        else:  # pragma: no cover - GF(p^k)* is always cyclic
            raise RuntimeError("no primitive element found")
        exp = [1] * (2 * q)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._poly_mulmod(x, g)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log = exp, log
        if self.p != 2 and q <= _ADD_TABLE_LIMIT:
            self._add_table = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mulmod(result, base)
            base = self._poly_mulmod(base, base)
            e >>= 1
        return result

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def _digit_neg(self, a: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    # -- raw integer arithmetic ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._digit_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d^%d)" % (self.p, self.k))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> GF(p)."""
        return n % self.p

    # -- encoding -------------------------------------------------------------

    def to_coeffs(self, v: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        v, scale = 0, 1
        for c in coeffs:
            v += (int(c) % self.p) * scale
            scale *= self.p
        return v

    def elem(self, value: int | Sequence[int] | "FieldElem") -> "FieldElem":
        """Build an element from an integer (reduced mod p) or a coefficient list."""
        if isinstance(value, FieldElem):
            self.check(value.ctx)
            return value
        if isinstance(value, int):
            return FieldElem(self, self.from_int(value))
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise ValueError(f"expected at most {self.k} coefficients")
        return FieldElem(self, self.from_coeffs(coeffs))

    def coerce(self, value) -> int:
        """Raw encoding of an int, FieldElem, coefficient list, or text."""
        if isinstance(value, FieldElem):
            self.check(value.ctx)
            return value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, str):
            return self.parse(value).value
        return self.elem(value).value

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        """The residue class t of the modulus variable."""
        if self.k == 1:
            return FieldElem(self, 0)
        return FieldElem(self, self.p)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, v) for v in range(self.order)]

    def check(self, other: "FieldCtx") -> None:
        if other is not self and other != self:
            raise ContextMismatchError(f"{self} vs {other}")

    # -- text -----------------------------------------------------------------

    def format(self, v: int) -> str:
        if self.k == 1:
            return str(v)
        terms = []
        for i, c in enumerate(self.to_coeffs(v)):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = "t" if i == 1 else f"t^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    _TERM = re.compile(r"^(?:(\d+)\*?)?(t(?:\^(\d+))?)?$")

    def parse(self, text: str) -> "FieldElem":
        """Inverse of :meth:`format`; also accepts signs and unreduced integers."""
        s = text.replace(" ", "")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if not s:
            raise ParseError("empty field element", column=1, source="field")
        total = 0
        pos = 0
        for m in re.finditer(r"[+-]?[^+-]+", s):
            if m.start() != pos:
                raise ParseError(f"unexpected {s[pos]!r}", column=pos + 1, source="field")
            pos = m.end()
            chunk = m.group(0)
            sign = -1 if chunk.startswith("-") else 1
            body = chunk.lstrip("+-")
            tm = self._TERM.match(body)
            if not tm or not body:
                raise ParseError(f"bad field term {chunk!r}", column=m.start() + 1, source="field")
            coef = int(tm.group(1)) if tm.group(1) else 1
            if tm.group(2):
                if self.k == 1:
                    raise ParseError("'t' used in a prime field", column=m.start() + 1, source="field")
                deg = int(tm.group(3)) if tm.group(3) else 1
                val = self.pow(self.p, deg)
            else:
                val = 1
            total = self.add(total, self.mul(self.from_int(sign * coef), val))
        if pos != len(s):
            raise ParseError(f"trailing input {s[pos:]!r}", column=pos + 1, source="field")
        return FieldElem(self, total)

    # -- misc -----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def _gf_cached(p: int, k: int, modulus: tuple[int, ...] | None) -> FieldCtx:
    return FieldCtx(p, k, modulus)


def GF(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Shared field context for GF(p^k)."""
    return _gf_cached(p, k, tuple(modulus) if modulus is not None else None)


def field_with_nodes(p: int, required: int, k_max: int = 20) -> FieldCtx:
    """Smallest GF(p^k) holding at least ``required`` distinct elements."""
    k = 1
    while p**k < required:
        k += 1
        if k > k_max:
            raise FieldTooSmallError(p, k_max, required)
    return GF(p, k)


class FieldElem:
    """An element of a :class:`FieldCtx`."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.to_coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            self.ctx.check(other.ctx)
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.mul(self.value, self.ctx.inv(o)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def inv(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def frobenius(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.pow(self.value, self.ctx.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.value))

    def __str__(self) -> str:
        return self.ctx.format(self.value)

    def __repr__(self) -> str:
        return f"FieldElem({self}, {self.ctx!r})"


def frobenius(a: FieldElem) -> FieldElem:
    return a.frobenius()


def enumerate_distinct(ctx: FieldCtx, n: int) -> list[FieldElem]:
    """``n`` distinct elements in the deterministic order 0, 1, 2, ... of encodings.

    The encoding order is lexicographic on the coefficient vector read from
    the highest power of ``t`` down, so GF(4) starts ``0, 1, t, 1+t``.
    """
    if n > ctx.order:
        raise FieldTooSmallError(ctx.p, ctx.k, n)
    return [FieldElem(ctx, v) for v in range(n)]
