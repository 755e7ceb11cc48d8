"""Sparse exact row reduction over a finite field.

Vectors are dicts ``column -> raw field value`` (see :class:`FieldCtx`).
Columns can be anything hashable; their order is given by a key function,
and the pivot of a row is its smallest column under that key.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .field import FieldCtx

Vec = dict


def vec_add_scaled(ctx: FieldCtx, target: Vec, src: Vec, c: int) -> None:
    """In place: target += c * src, dropping zeros."""
    if not c:
        return
    add, mul = ctx.add, ctx.mul
    for col, v in src.items():
        nv = add(target.get(col, 0), mul(c, v))
        if nv:
            target[col] = nv
        else:
            target.pop(col, None)


def vec_scale(ctx: FieldCtx, src: Vec, c: int) -> Vec:
    if not c:
        return {}
    mul = ctx.mul
    return {col: mul(c, v) for col, v in src.items()}


class Echelon:
    """Incrementally maintained reduced row-echelon basis.

    Every stored row has pivot entry 1 and is zero on every other pivot.
    With ``track=True`` each row also remembers how it is built from the
    vectors passed to :meth:`insert`, keyed by the ``tag`` given there.
    """

    def __init__(self, ctx: FieldCtx, key: Callable[[Hashable], object] | None = None, track: bool = False):
        self.ctx = ctx
        self.key = key if key is not None else (lambda c: c)
        self.track = track
        self.rows: dict = {}
        self.combos: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _pivot(self, vec: Vec):
        return min(vec, key=self.key)

    def reduce(self, vec: Vec) -> tuple[Vec, Vec | None]:
        """Residual of ``vec`` against the basis, and (if tracking) the
        combination of the basis subtracted, as ``vec - residual``."""
        ctx = self.ctx
        res = dict(vec)
        used = {}
        for piv in [c for c in vec if c in self.rows]:
            c = res.get(piv, 0)
            if c:
                vec_add_scaled(ctx, res, self.rows[piv], ctx.neg(c))
                used[piv] = c
        if not self.track:
            return res, None
        combo: Vec = {}
        for piv, c in used.items():
            vec_add_scaled(ctx, combo, self.combos[piv], c)
        return res, combo

    def insert(self, vec: Vec, tag: Hashable = None) -> bool:
        """Add ``vec`` to the span; return True if the dimension grew."""
        res, combo = self.reduce(vec)
        if not res:
            return False
        ctx = self.ctx
        piv = self._pivot(res)
        inv = ctx.inv(res[piv])
        row = vec_scale(ctx, res, inv)
        if self.track:
            # row = inv * (tag - combo)
            own = {tag: 1}
            vec_add_scaled(ctx, own, combo, ctx.neg(1))
            own = vec_scale(ctx, own, inv)
        for other_piv, other in self.rows.items():
            c = other.get(piv, 0)
            if c:
                vec_add_scaled(ctx, other, row, ctx.neg(c))
                if self.track:
                    vec_add_scaled(ctx, self.combos[other_piv], own, ctx.neg(c))
        self.rows[piv] = row
        if self.track:
            self.combos[piv] = own
        return True

    def extend(self, vecs: Iterable[Vec]) -> int:
        return sum(self.insert(v) for v in vecs)

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)[0]

    def express(self, vec: Vec) -> Vec | None:
        """Coefficients over inserted tags reproducing ``vec``, or None."""
        if not self.track:
            raise ValueError("express needs an Echelon built with track=True")
        res, combo = self.reduce(vec)
        if res:
            return None
        return combo

    def coordinates(self, vec: Vec) -> Vec | None:
        """Coefficients over the pivot rows, or None if ``vec`` is outside."""
        res, _ = self.reduce(vec)
        if res:
            return None
        return {piv: vec[piv] for piv in vec if piv in self.rows}

    def basis(self) -> list[Vec]:
        """Rows sorted by pivot order."""
        return [self.rows[p] for p in sorted(self.rows, key=self.key)]

    def pivots(self) -> list:
        return sorted(self.rows, key=self.key)

    def copy(self) -> "Echelon":
        out = Echelon(self.ctx, self.key, self.track)
        out.rows = {p: dict(r) for p, r in self.rows.items()}
        out.combos = {p: dict(c) for p, c in self.combos.items()}
        return out


def solve_affine(ctx: FieldCtx, columns: list[Vec], target: Vec) -> list[int] | None:
    """Find raw coefficients c with sum c_i * columns[i] == target.

    Free variables are set to zero, so earlier columns are preferred.
    Returns None when the system is inconsistent.
    """
    ech = Echelon(ctx, track=True)
    # Insert columns in order so that a dependent column never gets a pivot.
    for i, col in enumerate(columns):
        ech.insert(col, tag=i)
    combo = ech.express(target)
    if combo is None:
        return None
    return [combo.get(i, 0) for i in range(len(columns))]


def rank(ctx: FieldCtx, vecs: Iterable[Vec]) -> int:
    ech = Echelon(ctx)
    ech.extend(vecs)
    return ech.dim
