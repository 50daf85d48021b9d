"""Linear algebra over F_p on F_q^l viewed as F_p^{el}.

Vectors are tuples of ints in [0, p).  Subspaces are kept in reduced row
echelon form, which makes coset reduction canonical: the representative of
``v + W`` is the unique member with zeros in every pivot column of ``W``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, TooLarge
from .field import GF

COSET_CAP = 2**20

FpVector = tuple[int, ...]


def flatten(ctx: GF, vec: Sequence[int]) -> FpVector:
    """F_q^l (element indices) -> F_p^{el}, coefficient blocks in coordinate order."""
    out: list[int] = []
    for a in vec:
        out.extend(ctx.coeffs(int(a)))
    return tuple(out)


def unflatten(ctx: GF, flat: Sequence[int]) -> tuple[int, ...]:
    e = ctx.e
    if len(flat) % e:
        raise DimensionMismatch(f"length {len(flat)} is not a multiple of e = {e}")
    return tuple(ctx.index(flat[i : i + e]) for i in range(0, len(flat), e))


def flatten_array(ctx: GF, indices: np.ndarray) -> np.ndarray:
    """Vectorised :func:`flatten` over the last axis of an index array."""
    d = ctx.digits[np.asarray(indices, dtype=np.int64)]
    return d.reshape(*d.shape[:-2], d.shape[-2] * d.shape[-1])


def unflatten_array(ctx: GF, flat: np.ndarray) -> np.ndarray:
    flat = np.asarray(flat, dtype=np.int64)
    blocks = flat.reshape(*flat.shape[:-1], -1, ctx.e)
    return blocks @ np.asarray([ctx.p**i for i in range(ctx.e)], dtype=np.int64)


def _to_mask(v: Sequence[int]) -> int:
    m = 0
    for i, c in enumerate(v):
        if int(c) & 1:
            m |= 1 << i
    return m


def _from_mask(m: int, n: int) -> FpVector:
    return tuple((m >> i) & 1 for i in range(n))


@dataclass(frozen=True)
class SubspaceFp:
    """An F_p-subspace of F_p^{ambient_dim} in reduced row echelon form."""

    p: int
    ambient_dim: int
    basis: tuple[FpVector, ...] = ()
    pivots: tuple[int, ...] = ()
    _masks: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.p**self.dim

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "SubspaceFp":
        return cls(p, ambient_dim)

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")

    def reduce(self, v: Sequence[int]) -> FpVector:
        self._check(v)
        p = self.p
        if p == 2:
            m = _to_mask(v)
            for piv, row in zip(self.pivots, self._masks):
                if (m >> piv) & 1:
                    m ^= row
            return _from_mask(m, self.ambient_dim)
        w = [int(c) % p for c in v]
        for piv, row in zip(self.pivots, self.basis):
            c = w[piv]
            if c:
                for j in range(piv, self.ambient_dim):
                    if row[j]:
                        w[j] = (w[j] - c * row[j]) % p
        return tuple(w)

    def reduce_array(self, vs: np.ndarray) -> np.ndarray:
        """Row-wise :meth:`reduce` on an ``(N, ambient_dim)`` array."""
        vs = np.array(vs, dtype=np.int64) % self.p
        if vs.shape[-1] != self.ambient_dim:
            raise DimensionMismatch(f"array of width {vs.shape[-1]} in ambient dimension {self.ambient_dim}")
        for piv, row in zip(self.pivots, self.basis):
            c = vs[..., piv : piv + 1]
            vs = (vs - c * np.asarray(row, dtype=np.int64)) % self.p
        return vs

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coefficients of ``v`` in the echelon basis (``v`` must lie in the subspace)."""
        self._check(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[piv] % self.p for piv in self.pivots)

    def extend(self, v: Sequence[int]) -> "SubspaceFp":
        r = self.reduce(v)
        if not any(r):
            return self
        p = self.p
        # normalise the new row and clear its pivot column from the old rows
        piv = next(i for i, c in enumerate(r) if c)
        inv = pow(r[piv], p - 2, p)
        new = tuple(c * inv % p for c in r)
        rows = []
        for old in self.basis:
            c = old[piv]
            rows.append(tuple((a - c * b) % p for a, b in zip(old, new)) if c else old)
        rows.append(new)
        order = sorted(range(len(rows)), key=lambda i: next(j for j, c in enumerate(rows[i]) if c))
        basis = tuple(rows[i] for i in order)
        pivots = tuple(next(j for j, c in enumerate(b) if c) for b in basis)
        masks = tuple(_to_mask(b) for b in basis) if p == 2 else ()
        return SubspaceFp(p, self.ambient_dim, basis, pivots, masks)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def enumerate_coset(self, v: Sequence[int], cap: int = COSET_CAP) -> list[FpVector]:
        """All ``p**dim`` members of ``v + W``, lexicographic in basis coefficients."""
        self._check(v)
        if self.size > cap:
            raise TooLarge(f"coset has {self.size} elements, cap is {cap}")
        p = self.p
        base = [int(c) % p for c in v]
        out = []
        for coefs in itertools.product(range(p), repeat=self.dim):
            w = list(base)
            for a, row in zip(coefs, self.basis):
                if a:
                    for j, c in enumerate(row):
                        if c:
                            w[j] = (w[j] + a * c) % p
            out.append(tuple(w))
        return out

    def elements(self, cap: int = COSET_CAP) -> list[FpVector]:
        return self.enumerate_coset((0,) * self.ambient_dim, cap)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.basis]


def span_of(p: int, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> SubspaceFp:
    W = SubspaceFp.zero(p, ambient_dim)
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if W.is_full():
            break
        W = W.extend(v)
    return W


def reduce(W: SubspaceFp, v: Sequence[int]) -> FpVector:
    return W.reduce(v)


def extend(W: SubspaceFp, v: Sequence[int]) -> SubspaceFp:
    return W.extend(v)


def enumerate_coset(W: SubspaceFp, v: Sequence[int], cap: int = COSET_CAP) -> list[FpVector]:
    return W.enumerate_coset(v, cap)


def solve_combination(p: int, vectors: Sequence[Sequence[int]], target: Sequence[int]) -> tuple[int, ...]:
    """Coefficients ``a`` in [0, p) with ``sum(a_i * vectors[i]) == target``.

    ``vectors`` must be linearly independent; raises ValueError if ``target``
    is outside their span.
    """
    k = len(vectors)
    n = len(target)
    # augmented system, one row per coordinate: [v_1[j] ... v_k[j] | t[j]]
    rows = [[vectors[i][j] % p for i in range(k)] + [target[j] % p] for j in range(n)]
    pivot_row = 0
    where = [-1] * k
    for col in range(k):
        sel = next((r for r in range(pivot_row, n) if rows[r][col]), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        inv = pow(rows[pivot_row][col], p - 2, p)
        rows[pivot_row] = [c * inv % p for c in rows[pivot_row]]
        for r in range(n):
            if r != pivot_row and rows[r][col]:
                c = rows[r][col]
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[pivot_row])]
        where[col] = pivot_row
        pivot_row += 1
    if any(rows[r][k] for r in range(pivot_row, n)):
        raise ValueError("target is not in the span of the given vectors")
    if -1 in where:
        raise ValueError("vectors are linearly dependent")
    return tuple(rows[where[i]][k] for i in range(k))
