"""Square matrices over GF(p^k) (MatConst) and over F<a,b,x> (MatFree)."""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import ContextMismatchError
from .field import FieldCtx, FieldElem
from .freealg import FreePoly, Span
from .linalg import Echelon


def _check_ctx(a: FieldCtx, b: FieldCtx) -> None:
    if a != b:
        raise ContextMismatchError(f"{a} vs {b}")


class MatConst:
    """A d x d matrix of field elements, stored as raw encodings."""

    __slots__ = ("ctx", "d", "rows", "_hash")

    def __init__(self, ctx: FieldCtx, rows: Sequence[Sequence[int]]):
        self.ctx = ctx
        self.rows = tuple(tuple(r) for r in rows)
        self.d = len(self.rows)
        if any(len(r) != self.d for r in self.rows):
            raise ValueError("matrix must be square")
        self._hash = None

    @classmethod
    def of(cls, ctx: FieldCtx, rows) -> "MatConst":
        """Build from ints, FieldElems, coefficient lists or text entries."""
        return cls(ctx, [[ctx.coerce(v) for v in r] for r in rows])

    @classmethod
    def zero(cls, ctx: FieldCtx, d: int) -> "MatConst":
        return cls(ctx, [[0] * d for _ in range(d)])

    @classmethod
    def identity(cls, ctx: FieldCtx, d: int) -> "MatConst":
        return cls(ctx, [[int(i == j) for j in range(d)] for i in range(d)])

    @classmethod
    def unit(cls, ctx: FieldCtx, d: int, i: int, j: int) -> "MatConst":
        """E_ij with 1-based indices."""
        return cls(ctx, [[int((r, c) == (i - 1, j - 1)) for c in range(d)] for r in range(d)])

    @classmethod
    def from_vec(cls, ctx: FieldCtx, d: int, vec: dict) -> "MatConst":
        return cls(ctx, [[vec.get((i, j), 0) for j in range(d)] for i in range(d)])

    def vec(self) -> dict:
        return {(i, j): v for i, r in enumerate(self.rows) for j, v in enumerate(r) if v}

    def entry(self, i: int, j: int) -> FieldElem:
        return FieldElem(self.ctx, self.rows[i][j])

    def _same(self, other: "MatConst") -> None:
        _check_ctx(self.ctx, other.ctx)
        if self.d != other.d:
            raise ValueError(f"size mismatch {self.d} vs {other.d}")

    def __add__(self, other):
        if not isinstance(other, MatConst):
            return NotImplemented
        self._same(other)
        add = self.ctx.add
        return MatConst(self.ctx, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        neg = self.ctx.neg
        return MatConst(self.ctx, [[neg(x) for x in r] for r in self.rows])

    def __sub__(self, other):
        if not isinstance(other, MatConst):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "MatConst":
        raw = self.ctx.coerce(c)
        mul = self.ctx.mul
        return MatConst(self.ctx, [[mul(raw, x) for x in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, MatConst):
            self._same(other)
            ctx = self.ctx
            add, mul = ctx.add, ctx.mul
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = 0
                    for x, y in zip(r, c):
                        if x and y:
                            acc = add(acc, mul(x, y))
                    row.append(acc)
                out.append(row)
            return MatConst(ctx, out)
        if isinstance(other, MatFree):
            return other._const_mul(self)
        if isinstance(other, FreePoly):
            return MatFree.from_const(self, other)
        if isinstance(other, (int, FieldElem)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElem)) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, FreePoly):
            return MatFree.from_const(self, other)
        return NotImplemented

    def __pow__(self, e: int) -> "MatConst":
        if e < 0:
            raise ValueError("negative matrix power")
        out = MatConst.identity(self.ctx, self.d)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def rank(self) -> int:
        ech = Echelon(self.ctx)
        for r in self.rows:
            ech.insert({j: v for j, v in enumerate(r) if v})
        return ech.dim

    def is_invertible(self) -> bool:
        return self.rank() == self.d

    def __bool__(self) -> bool:
        return any(any(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatConst):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, self.rows))
        return self._hash

    def to_json(self) -> list:
        if self.ctx.k == 1:
            return [list(r) for r in self.rows]
        return [[self.ctx.to_coeffs(v) for v in r] for r in self.rows]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "MatConst":
        return cls.of(ctx, data)

    def __str__(self) -> str:
        fmt = self.ctx.format
        return "[" + "; ".join(", ".join(fmt(v) for v in r) for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"MatConst({self})"


class MatFree:
    """A d x d matrix with entries in F<a,b,x>."""

    __slots__ = ("ctx", "d", "rows")

    def __init__(self, ctx: FieldCtx, rows: Sequence[Sequence[FreePoly]]):
        self.ctx = ctx
        self.rows = tuple(tuple(r) for r in rows)
        self.d = len(self.rows)
        if any(len(r) != self.d for r in self.rows):
            raise ValueError("matrix must be square")
        for r in self.rows:
            for e in r:
                _check_ctx(ctx, e.ctx)

    @classmethod
    def parse(cls, ctx: FieldCtx, rows: Sequence[Sequence[str]], source: str = "") -> "MatFree":
        out = []
        for i, r in enumerate(rows):
            out.append([FreePoly.parse(ctx, s, f"{source}[{i}][{j}]" if source else f"[{i}][{j}]")
                        for j, s in enumerate(r)])
        return cls(ctx, out)

    @classmethod
    def zero(cls, ctx: FieldCtx, d: int) -> "MatFree":
        z = FreePoly.zero(ctx)
        return cls(ctx, [[z] * d for _ in range(d)])

    @classmethod
    def identity(cls, ctx: FieldCtx, d: int) -> "MatFree":
        return cls.from_const(MatConst.identity(ctx, d))

    @classmethod
    def from_const(cls, m: MatConst, poly: FreePoly | None = None) -> "MatFree":
        """The matrix ``m * poly`` (poly defaults to 1)."""
        ctx = m.ctx
        if poly is None:
            poly = FreePoly.one(ctx)
        return cls(ctx, [[poly.scale(FieldElem(ctx, v)) for v in r] for r in m.rows])

    @classmethod
    def combine(cls, pairs: Iterable[tuple[MatConst, FreePoly]], ctx: FieldCtx, d: int) -> "MatFree":
        """sum A_i * a_i."""
        out = cls.zero(ctx, d)
        for A, a in pairs:
            out = out + cls.from_const(A, a)
        return out

    def entry(self, i: int, j: int) -> FreePoly:
        return self.rows[i][j]

    def entries(self) -> list[FreePoly]:
        return [e for r in self.rows for e in r]

    def map(self, fn: Callable[[FreePoly], FreePoly]) -> "MatFree":
        return MatFree(self.ctx, [[fn(e) for e in r] for r in self.rows])

    def entry_span(self) -> Span:
        return Span.of(self.ctx, self.entries())

    def words(self) -> set[str]:
        out = set()
        for e in self.entries():
            out.update(e.terms)
        return out

    def vec(self) -> dict:
        """Sparse vector with columns (i, j, word)."""
        return {(i, j, w): c for i, r in enumerate(self.rows) for j, e in enumerate(r) for w, c in e.terms.items()}

    def max_x_degree(self) -> int:
        return max((e.max_x_degree() for e in self.entries()), default=0)

    def gradation(self) -> int | None:
        """Common gradation of all nonzero entries; None if mixed or zero."""
        g = set()
        for e in self.entries():
            g |= e.gradations()
        return g.pop() if len(g) == 1 else None

    def _same(self, other: "MatFree") -> None:
        _check_ctx(self.ctx, other.ctx)
        if self.d != other.d:
            raise ValueError(f"size mismatch {self.d} vs {other.d}")

    def __add__(self, other):
        if isinstance(other, MatConst):
            other = MatFree.from_const(other)
        if not isinstance(other, MatFree):
            return NotImplemented
        self._same(other)
        return MatFree(self.ctx, [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda e: -e)

    def __sub__(self, other):
        if isinstance(other, MatConst):
            other = MatFree.from_const(other)
        if not isinstance(other, MatFree):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MatConst):
            return self._mul_const(other)
        if isinstance(other, (int, FieldElem)) and not isinstance(other, bool):
            return self.map(lambda e: e.scale(other))
        if isinstance(other, FreePoly):
            return self.map(lambda e: e * other)
        if not isinstance(other, MatFree):
            return NotImplemented
        self._same(other)
        d = self.d
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = FreePoly.zero(self.ctx)
                for k in range(d):
                    x, y = self.rows[i][k], other.rows[k][j]
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return MatFree(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, MatConst):
            return self._const_mul(other)
        if isinstance(other, (int, FieldElem)) and not isinstance(other, bool):
            return self.map(lambda e: e.scale(other))
        if isinstance(other, FreePoly):
            return self.map(lambda e: other * e)
        return NotImplemented

    def _mul_const(self, m: MatConst) -> "MatFree":
        _check_ctx(self.ctx, m.ctx)
        d = self.d
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = FreePoly.zero(self.ctx)
                for k in range(d):
                    c = m.rows[k][j]
                    if c and self.rows[i][k]:
                        acc = acc + self.rows[i][k].scale(FieldElem(self.ctx, c))
                row.append(acc)
            out.append(row)
        return MatFree(self.ctx, out)

    def _const_mul(self, m: MatConst) -> "MatFree":
        _check_ctx(self.ctx, m.ctx)
        d = self.d
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = FreePoly.zero(self.ctx)
                for k in range(d):
                    c = m.rows[i][k]
                    if c and self.rows[k][j]:
                        acc = acc + self.rows[k][j].scale(FieldElem(self.ctx, c))
                row.append(acc)
            out.append(row)
        return MatFree(self.ctx, out)

    def __pow__(self, e: int) -> "MatFree":
        if e < 0:
            raise ValueError("negative matrix power")
        out = MatFree.identity(self.ctx, self.d)
        for _ in range(e):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return any(self.entries())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatFree):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    __hash__ = None

    def to_json(self) -> list:
        return [[str(e) for e in r] for r in self.rows]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "MatFree":
        return cls.parse(ctx, data)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in r) for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"MatFree({self})"
