"""Vertices of D(q; f) and their mixed-radix integer encoding."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class Vertex(NamedTuple):
    """A vertex ``(v1, v)``; coordinates are element indices."""

    first: int
    rest: tuple[int, ...]

    @classmethod
    def of(cls, first: int, *rest: int) -> "Vertex":
        return cls(int(first), tuple(int(c) for c in rest))


def vertex_index(q: int, v: Vertex) -> int:
    """Mixed-radix index, first coordinate most significant."""
    idx = v.first
    for c in v.rest:
        idx = idx * q + c
    return idx


def vertex_from_index(q: int, l: int, idx: int) -> Vertex:
    rest = []
    for _ in range(l):
        idx, r = divmod(idx, q)
        rest.append(r)
    return Vertex(idx, tuple(reversed(rest)))


def all_vertices(q: int, l: int) -> tuple[np.ndarray, np.ndarray]:
    """``(first, rest)`` coordinate arrays of every vertex, in index order."""
    n = q ** (l + 1)
    r = np.arange(n, dtype=np.int64)
    rest = np.empty((n, l), dtype=np.int64)
    for k in range(l - 1, -1, -1):
        rest[:, k] = r % q
        r = r // q
    return r, rest
