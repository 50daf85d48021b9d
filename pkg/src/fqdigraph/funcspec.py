"""Defining functions f: F_q^2 -> F_q^l and their derived parts.

Every form (table, polynomial, monomial) is normalised to a dense
``(q, q, l)`` index table ``T[x, y]`` at construction; the original form is
kept alongside for provenance.  Serialised tables list rows in the order
``index(x) * q + index(y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Mapping, Optional, Sequence

import numpy as np

from .errors import RangeError, SchemaError, ShapeError
from .field import GF


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def _field_sum(ctx: GF, values: np.ndarray, axis: int) -> np.ndarray:
    # addition in F_q is coefficient-wise addition in F_p^e
    d = ctx.digits[values].sum(axis=axis) % ctx.p
    return d @ np.asarray([ctx.p**i for i in range(ctx.e)], dtype=np.int64)


def _power_table(ctx: GF) -> np.ndarray:
    """``P[i, x] = x**i`` for 0 <= i <= q-1, with ``0**0 == 1``."""
    q = ctx.q
    P = np.zeros((q, q), dtype=np.int64)
    P[0, :] = 1
    for i in range(1, q):
        P[i] = ctx.mul_table[P[i - 1], np.arange(q)]
    return P


@dataclass(frozen=True, eq=False)
class FuncSpec:
    """A defining function together with its dense value table."""

    q: int
    l: int
    form: str
    table: np.ndarray
    m: Optional[int] = None
    n: Optional[int] = None
    poly: Optional[tuple] = None

    @classmethod
    def from_table(cls, ctx: GF, table: Any, l: Optional[int] = None) -> "FuncSpec":
        """Accepts ``q*q`` rows (row order ``x*q + y``) or a ``(q, q, l)`` array."""
        q = ctx.q
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim == 3:
            if arr.shape[:2] != (q, q):
                raise ShapeError(f"table must have shape ({q}, {q}, l), got {arr.shape}")
        elif arr.ndim == 2:
            if arr.shape[0] != q * q:
                raise ShapeError(f"table must have {q * q} rows, got {arr.shape[0]}")
            arr = arr.reshape(q, q, arr.shape[1])
        else:
            raise ShapeError(f"table must be a list of {q * q} rows of equal length")
        if l is not None and arr.shape[2] != l:
            raise ShapeError(f"table rows must have {l} entries, got {arr.shape[2]}")
        if arr.shape[2] < 1:
            raise ShapeError("table rows must be nonempty")
        if arr.size and (arr.min() < 0 or arr.max() >= q):
            raise RangeError(f"table entries must be element indices in [0, {q})")
        return cls(q, int(arr.shape[2]), "table", _frozen(arr))

    @classmethod
    def from_callable(cls, ctx: GF, fn: Callable[[int, int], Sequence[int]], l: int) -> "FuncSpec":
        rows = [[int(c) for c in fn(x, y)] for x in range(ctx.q) for y in range(ctx.q)]
        return cls.from_table(ctx, rows, l)

    @classmethod
    def from_poly(cls, ctx: GF, grids: Any) -> "FuncSpec":
        """``grids[k][i][j]`` is the coefficient of ``x^i y^j`` in coordinate ``k``."""
        q = ctx.q
        if not isinstance(grids, (list, tuple)) or not grids:
            raise SchemaError("poly must be a nonempty list of coefficient grids")
        tables = []
        norm = []
        for grid in grids:
            if not isinstance(grid, (list, tuple)) or len(grid) > q:
                raise RangeError(f"x-degree of each grid must be at most {q - 1}")
            rows = []
            for row in grid:
                if not isinstance(row, (list, tuple)) or len(row) > q:
                    raise RangeError(f"y-degree of each grid must be at most {q - 1}")
                vals = []
                for c in row:
                    if not isinstance(c, int) or isinstance(c, bool):
                        raise SchemaError("poly coefficients must be integers")
                    if not 0 <= c < q:
                        raise RangeError(f"coefficient {c} is not an element index in [0, {q})")
                    vals.append(c)
                rows.append(tuple(vals))
            norm.append(tuple(rows))
        P = _power_table(ctx)
        mul = ctx.mul_table
        for grid in norm:
            terms = []
            for i, row in enumerate(grid):
                for j, c in enumerate(row):
                    if c:
                        mono = mul[P[i][:, None], P[j][None, :]]
                        terms.append(mul[c, mono])
            if terms:
                tables.append(_field_sum(ctx, np.stack(terms), axis=0))
            else:
                tables.append(np.zeros((q, q), dtype=np.int64))
        arr = np.stack(tables, axis=-1)
        return cls(q, len(norm), "poly", _frozen(arr), poly=tuple(norm))

    @classmethod
    def monomial(cls, ctx: GF, m: int, n: int) -> "FuncSpec":
        q = ctx.q
        for name, k in (("m", m), ("n", n)):
            if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
                raise SchemaError(f"exponent {name} must be an integer")
            if not 1 <= k <= q - 1:
                raise RangeError(f"exponent {name} = {k} outside [1, {q - 1}]")
        P = _power_table(ctx)
        xs, ys = P[m], P[n]
        arr = ctx.mul_table[xs[:, None], ys[None, :]][:, :, None]
        return cls(q, 1, "monomial", _frozen(arr), m=int(m), n=int(n))

    @classmethod
    def constant(cls, ctx: GF, values: Sequence[int]) -> "FuncSpec":
        vals = np.asarray(values, dtype=np.int64)
        arr = np.broadcast_to(vals, (ctx.q, ctx.q, len(vals)))
        return cls.from_table(ctx, arr)

    def __call__(self, x: int, y: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.table[x, y])

    def rows(self) -> list[list[int]]:
        return self.table.reshape(self.q * self.q, self.l).tolist()

    def to_document(self, ctx: GF) -> dict:
        doc: dict = {"field": {"p": ctx.p, "e": ctx.e, "modulus": list(ctx.modulus)}, "l": self.l}
        if self.form == "monomial":
            doc["monomial"] = {"m": self.m, "n": self.n}
        elif self.form == "poly":
            doc["poly"] = [[list(r) for r in g] for g in self.poly]
        else:
            doc["table"] = self.rows()
        return doc


@dataclass(frozen=True, eq=False)
class DerivedFuncs:
    """Index tables for g(t) = f(t,0) - f(0,0), h(t) = f(0,t) - f(0,0), f(0,0)
    and the mixed residual f~0(x, y) = f(x, y) - f(0,0) - g(y) - h(x)."""

    g: np.ndarray
    h: np.ndarray
    f00: tuple[int, ...]
    tilde_f0: np.ndarray
    f0: np.ndarray


def eval_f(ctx: GF, f: FuncSpec, x: int, y: int) -> tuple[int, ...]:
    ctx._check(x)
    ctx._check(y)
    return f(x, y)


def eval_poly(ctx: GF, grids: Sequence[Sequence[Sequence[int]]], x: int, y: int) -> tuple[int, ...]:
    """Horner evaluation of a coefficient-grid polynomial at one point."""
    out = []
    for grid in grids:
        acc = 0
        for row in reversed(grid):
            inner = 0
            for c in reversed(row):
                inner = ctx.add(ctx.mul(inner, y), c)
            acc = ctx.add(ctx.mul(acc, x), inner)
        out.append(acc)
    return tuple(out)


def derive(ctx: GF, f: FuncSpec) -> DerivedFuncs:
    sub = ctx.sub_table
    T = f.table
    f00 = T[0, 0]
    g = sub[T[:, 0, :], f00]
    h = sub[T[0, :, :], f00]
    f0 = sub[T, f00]
    # g is evaluated at y and h at x
    tilde = sub[sub[f0, g[None, :, :]], h[:, None, :]]
    return DerivedFuncs(
        g=_frozen(g),
        h=_frozen(h),
        f00=tuple(int(c) for c in f00),
        tilde_f0=_frozen(tilde),
        f0=_frozen(f0),
    )


def _interp_matrix(ctx: GF) -> np.ndarray:
    """``L[k, a]``: weight of F(a) in the x^k coefficient of the interpolant."""
    q = ctx.q
    P = _power_table(ctx)
    L = np.zeros((q, q), dtype=np.int64)
    L[0, 0] = 1
    for k in range(1, q):
        L[k] = ctx.neg_array[P[q - 1 - k]]
    return L


def interpolate(ctx: GF, f: FuncSpec) -> FuncSpec:
    """Unique polynomial form (per-variable degree <= q-1) of a table."""
    L = _interp_matrix(ctx)
    mul = ctx.mul_table
    grids = []
    for k in range(f.l):
        V = f.table[:, :, k]
        # transform along x: C1[i, y] = sum_a L[i, a] * V[a, y]
        C1 = _field_sum(ctx, mul[L[:, :, None], V[None, :, :]], axis=1)
        # then along y: C[i, j] = sum_b L[j, b] * C1[i, b]
        C = _field_sum(ctx, mul[L[None, :, :], C1[:, None, :]], axis=2)
        grids.append(C.tolist())
    return FuncSpec.from_poly(ctx, grids)


def _require_int(doc: Mapping, key: str) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{key!r} must be an integer")
    return v


def parse_field(doc: Any) -> GF:
    if not isinstance(doc, Mapping):
        raise SchemaError("'field' must be an object with keys p, e, modulus")
    p = _require_int(doc, "p")
    e = doc.get("e", 1)
    if isinstance(e, bool) or not isinstance(e, int):
        raise SchemaError("'e' must be an integer")
    modulus = doc.get("modulus")
    if modulus is not None and (
        not isinstance(modulus, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in modulus)
    ):
        raise SchemaError("'modulus' must be a list of integers")
    return GF(p, e, modulus)


def parse_funcspec(ctx: GF, document: Any) -> FuncSpec:
    if not isinstance(document, Mapping):
        raise SchemaError("function document must be a JSON object")
    forms = [k for k in ("table", "poly", "monomial") if k in document]
    if len(forms) != 1:
        raise SchemaError("document must contain exactly one of 'table', 'poly', 'monomial'")
    l = document.get("l")
    if l is not None and (isinstance(l, bool) or not isinstance(l, int) or l < 1):
        raise SchemaError("'l' must be a positive integer")
    form = forms[0]
    if form == "monomial":
        mono = document["monomial"]
        if not isinstance(mono, Mapping):
            raise SchemaError("'monomial' must be an object with keys m, n")
        if l not in (None, 1):
            raise SchemaError("monomial functions have l = 1")
        return FuncSpec.monomial(ctx, _require_int(mono, "m"), _require_int(mono, "n"))
    if form == "poly":
        f = FuncSpec.from_poly(ctx, document["poly"])
        if l is not None and f.l != l:
            raise ShapeError(f"poly has {f.l} coordinates but l = {l}")
        return f
    rows = document["table"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("'table' must be a list of rows")
    if len(rows) != ctx.q * ctx.q:
        raise ShapeError(f"table must have {ctx.q * ctx.q} rows, got {len(rows)}")
    width = l if l is not None else (len(rows[0]) if rows else 0)
    for r in rows:
        if len(r) != width:
            raise ShapeError(f"every table row must have {width} entries")
        for c in r:
            if isinstance(c, bool) or not isinstance(c, int):
                raise SchemaError("table entries must be integers")
    return FuncSpec.from_table(ctx, rows, width)


def load_document(document: Any) -> tuple[GF, FuncSpec]:
    """Parse a full input document (``field`` plus one function form)."""
    if not isinstance(document, Mapping) or "field" not in document:
        raise SchemaError("input document must be an object with a 'field' entry")
    ctx = parse_field(document["field"])
    return ctx, parse_funcspec(ctx, document)
