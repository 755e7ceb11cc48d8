"""The free algebra F<a, b, x> with gradation, word classes and spans.

A word is a plain string over ``"abx"``; the empty string is the unit.
Coefficients are kept as raw field encodings (see :mod:`orelab.field`).
"""

from __future__ import annotations

import enum
from typing import Iterable, Mapping

from .errors import ContextMismatchError, ParseError
from .field import FieldCtx, FieldElem
from .linalg import Echelon, vec_add_scaled

LETTERS = "abx"


def deglex(word: str) -> tuple[int, str]:
    """Sort key: shorter first, then lexicographic with a < b < x."""
    return (len(word), word)


def x_first(word: str) -> tuple[bool, int, str]:
    """Column order putting every x-containing word before all x-free words."""
    return ("x" not in word, len(word), word)


def gradation(word: str) -> int:
    return len(word) - word.count("x")


def check_word(word: str) -> str:
    bad = set(word) - set(LETTERS)
    if bad:
        raise ValueError(f"word {word!r} uses letters outside a, b, x: {sorted(bad)}")
    return word


class FreePoly:
    """A finite linear combination of words, coefficients nonzero."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: FieldCtx, terms: Mapping[str, int] | None = None):
        self.ctx = ctx
        self.terms: dict[str, int] = {w: c for w, c in (terms or {}).items() if c}
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "FreePoly":
        return cls(ctx)

    @classmethod
    def one(cls, ctx: FieldCtx) -> "FreePoly":
        return cls(ctx, {"": 1})

    @classmethod
    def word(cls, ctx: FieldCtx, word: str, coeff=1) -> "FreePoly":
        return cls(ctx, {check_word(word): ctx.coerce(coeff)})

    @classmethod
    def const(cls, ctx: FieldCtx, coeff) -> "FreePoly":
        return cls(ctx, {"": ctx.coerce(coeff)})

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str, source: str = "") -> "FreePoly":
        return _Parser(ctx, text, source).parse()

    # -- inspection -----------------------------------------------------------

    def words(self) -> list[str]:
        return sorted(self.terms, key=deglex)

    def coeff(self, word: str) -> FieldElem:
        return FieldElem(self.ctx, self.terms.get(word, 0))

    def items(self) -> list[tuple[str, FieldElem]]:
        return [(w, FieldElem(self.ctx, self.terms[w])) for w in self.words()]

    def gradations(self) -> set[int]:
        return {gradation(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.gradations()) <= 1

    def gradation(self) -> int | None:
        """Common gradation of all words, None for 0 or mixed."""
        g = self.gradations()
        return g.pop() if len(g) == 1 else None

    def max_x_degree(self) -> int:
        return max((w.count("x") for w in self.terms), default=0)

    def is_x_free(self) -> bool:
        return all("x" not in w for w in self.terms)

    def in_ideal_x(self) -> bool:
        return all("x" in w for w in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "FreePoly":
        if isinstance(other, FreePoly):
            if other.ctx != self.ctx:
                raise ContextMismatchError(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, FieldElem)) and not isinstance(other, bool):
            return FreePoly.const(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        vec_add_scaled(self.ctx, out, o.terms, 1)
        return FreePoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return FreePoly(self.ctx, {w: neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        vec_add_scaled(self.ctx, out, o.terms, self.ctx.neg(1))
        return FreePoly(self.ctx, out)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def scale(self, c) -> "FreePoly":
        raw = self.ctx.coerce(c)
        if not raw:
            return FreePoly(self.ctx)
        mul = self.ctx.mul
        return FreePoly(self.ctx, {w: mul(raw, v) for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, FreePoly):
            return NotImplemented
        o = self._coerce(other)
        ctx = self.ctx
        add, mul = ctx.add, ctx.mul
        out: dict[str, int] = {}
        for u, cu in self.terms.items():
            for v, cv in o.terms.items():
                w = u + v
                nv = add(out.get(w, 0), mul(cu, cv))
                if nv:
                    out[w] = nv
                else:
                    out.pop(w, None)
        return FreePoly(ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElem)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "FreePoly":
        if e < 0:
            raise ValueError("negative power in the free algebra")
        out = FreePoly.one(self.ctx)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, FreePoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self == FreePoly.const(self.ctx, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    # -- text -----------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.words():
            c = self.ctx.format(self.terms[w])
            if not c.isdigit():
                c = f"({c})"
            if not w:
                parts.append(c)
            elif c == "1":
                parts.append(w)
            else:
                parts.append(f"{c}*{w}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FreePoly({self})"


class _Parser:
    """Grammar: ``['-'] term (('+'|'-') term)*``, term = ``[coeff ['*']] [word]``.

    A coefficient is an integer or a parenthesized field element; a term
    needs at least one of the two.
    """

    def __init__(self, ctx: FieldCtx, text: str, source: str):
        self.ctx = ctx
        self.text = text
        self.source = source
        self.pos = 0

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        pos = self.pos if pos is None else pos
        before = self.text[:pos]
        line = before.count("\n") + 1
        col = pos - (before.rfind("\n") + 1) + 1
        return ParseError(msg, line=line, column=col, source=self.source)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> FreePoly:
        ctx = self.ctx
        out: dict[str, int] = {}
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        elif self.peek() == "":
            raise self.error("empty polynomial")
        while True:
            word, coeff = self.term()
            if sign < 0:
                coeff = ctx.neg(coeff)
            vec_add_scaled(ctx, out, {word: coeff}, 1)
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                raise self.error(f"expected '+' or '-', found {ch!r}")
            sign = 1 if ch == "+" else -1
            self.pos += 1
        return FreePoly(ctx, out)

    def term(self) -> tuple[str, int]:
        ch = self.peek()
        start = self.pos
        coeff = None
        if ch.isdigit():
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            coeff = self.ctx.from_int(int(self.text[start:self.pos]))
        elif ch == "(":
            depth, end = 0, self.pos
            while end < len(self.text):
                if self.text[end] == "(":
                    depth += 1
                elif self.text[end] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                end += 1
            else:
                raise self.error("unbalanced '('")
            inner = self.text[self.pos + 1:end]
            try:
                coeff = self.ctx.parse(inner).value
            except ParseError as exc:
                raise self.error(f"bad coefficient {inner!r}: {exc.bare}", self.pos + 1) from None
            self.pos = end + 1
        if coeff is not None and self.peek() == "*":
            self.pos += 1
            if self.peek() not in LETTERS or self.peek() == "":
                raise self.error("expected a word after '*'")
        self.skip()
        wstart = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in LETTERS:
            self.pos += 1
        word = self.text[wstart:self.pos]
        if coeff is None and not word:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected a term, found {found!r}")
        if self.pos < len(self.text) and self.text[self.pos].isalnum():
            raise self.error(f"unexpected character {self.text[self.pos]!r}")
        return word, 1 if coeff is None else coeff


def parse_poly(ctx: FieldCtx, text: str, source: str = "") -> FreePoly:
    return FreePoly.parse(ctx, text, source)


# -- word classes --------------------------------------------------------------


class SubspaceTag(enum.Enum):
    R = "R"
    A = "A"
    Astar = "Astar"
    B = "B"
    IdealX = "IdealX"
    Abar = "Abar"

    def __repr__(self) -> str:
        return self.value


def _ab_blocks(word: str) -> list[str]:
    letters = [ch for ch in word if ch != "x"]
    return ["".join(letters[i:i + 2]) for i in range(0, len(letters) - 1, 2)]


def classify_word(word: str) -> frozenset:
    """Letter-pattern classes of a word.

    R: no x.  IdealX: some x.  A: starts with a or b.  For A-words the a/b
    letters are cut into consecutive pairs; Astar when the gradation is even
    and every pair repeats a letter, B when some pair is mixed.  The Abar
    class (gradation >= 1) is reported separately by :func:`is_abar`.
    """
    check_word(word)
    tags = set()
    if "x" in word:
        tags.add(SubspaceTag.IdealX)
    else:
        tags.add(SubspaceTag.R)
    if word[:1] in ("a", "b"):
        tags.add(SubspaceTag.A)
        blocks = _ab_blocks(word)
        if any(b[0] != b[1] for b in blocks):
            tags.add(SubspaceTag.B)
        elif gradation(word) % 2 == 0:
            tags.add(SubspaceTag.Astar)
    return frozenset(tags)


def is_abar(word: str) -> bool:
    """Membership in A + xA + x^2A + ..., i.e. at least one a or b."""
    return gradation(word) >= 1


# -- spans -----------------------------------------------------------------------


class Span:
    """Subspace of F<a,b,x> spanned by finitely many polynomials."""

    def __init__(self, ctx: FieldCtx, key=deglex):
        self.ctx = ctx
        self.key = key
        self.ech = Echelon(ctx, key)

    @classmethod
    def of(cls, ctx: FieldCtx, elems: Iterable[FreePoly], key=deglex) -> "Span":
        s = cls(ctx, key)
        for e in elems:
            s.add(e)
        return s

    def _check(self, v: FreePoly) -> None:
        if v.ctx != self.ctx:
            raise ContextMismatchError(f"{self.ctx} vs {v.ctx}")

    def add(self, v: FreePoly) -> bool:
        self._check(v)
        return self.ech.insert(v.terms)

    @property
    def dim(self) -> int:
        return self.ech.dim

    def __len__(self) -> int:
        return self.ech.dim

    def contains(self, v: FreePoly) -> bool:
        self._check(v)
        return self.ech.contains(v.terms)

    __contains__ = contains

    def reduce(self, v: FreePoly) -> FreePoly:
        return FreePoly(self.ctx, self.ech.reduce(v.terms)[0])

    def basis(self) -> list[FreePoly]:
        return [FreePoly(self.ctx, r) for r in self.ech.basis()]

    def coordinates(self) -> list[str]:
        """The words that occur in the basis, in deglex order."""
        cols = set()
        for r in self.ech.rows.values():
            cols.update(r)
        return sorted(cols, key=deglex)

    def __add__(self, other: "Span") -> "Span":
        return span_sum(self, other)

    def issubset(self, other: "Span") -> bool:
        return all(other.contains(v) for v in self.basis())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Span):
            return NotImplemented
        return span_equal(self, other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Span(dim={self.dim}, basis=[{', '.join(map(str, self.basis()))}])"


def span_from(elems: Iterable[FreePoly], ctx: FieldCtx | None = None) -> Span:
    elems = list(elems)
    if ctx is None:
        if not elems:
            raise ValueError("span_from needs a ctx for an empty list")
        ctx = elems[0].ctx
    return Span.of(ctx, elems)


def span_dim(s: Span) -> int:
    return s.dim


def span_contains(s: Span, v: FreePoly) -> bool:
    return s.contains(v)


def span_sum(s1: Span, s2: Span) -> Span:
    return Span.of(s1.ctx, s1.basis() + s2.basis())


def span_equal(s1: Span, s2: Span) -> bool:
    # Reduced echelon forms under the same order are unique.
    if s1.dim != s2.dim:
        return False
    if s1.key is s2.key:
        return s1.ech.rows == s2.ech.rows
    return s1.issubset(s2)


def intersect_with_R(s: Span) -> Span:
    """The x-free part of ``s``: rows whose pivot is x-free once x-words come first."""
    ech = Echelon(s.ctx, x_first)
    for v in s.ech.rows.values():
        ech.insert(v)
    out = Span(s.ctx)
    for piv, row in ech.rows.items():
        if "x" not in piv:
            assert all("x" not in w for w in row), "x-free pivot with an x column"
            out.add(FreePoly(s.ctx, row))
    assert out.issubset(s)
    return out


def graded_words(g: int, max_x_run: int, letters: str = "ab") -> list[str]:
    """All words of gradation g where every maximal x-run (including a leading
    or trailing one) has length at most ``max_x_run``."""
    out = [""]
    for _ in range(g):
        out = [w + l for w in out for l in letters]
    runs = ["x" * i for i in range(max_x_run + 1)]
    res = []
    for w in out:
        parts = [""]
        for ch in w:
            parts = [p + r + ch for p in parts for r in runs]
        parts = [p + r for p in parts for r in runs]
        res.extend(parts)
    return sorted(set(res), key=deglex)
