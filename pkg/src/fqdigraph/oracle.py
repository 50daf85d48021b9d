"""Brute-force ground truth: explicit digraphs, Tarjan SCC, BFS diameter.

Nothing here consults the closed-form engine; it only evaluates the arc rule.
Vertex ``(x1, ..., x_{l+1})`` has index ``sum(x_i * q**(l+1-i))`` (first
coordinate most significant).
"""

from __future__ import annotations

import gzip
import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import GroundSetMismatch, NotStrong, ShapeError, TooLarge
from .field import GF
from .funcspec import FuncSpec
from .vertices import Vertex, all_vertices

ARC_CAP = 10**7


@dataclass(frozen=True, eq=False)
class DigraphExplicit:
    """Adjacency in CSR form: heads of vertex ``i`` are ``indices[indptr[i]:indptr[i+1]]``."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_lists(cls, adjacency: Sequence[Iterable[int]]) -> "DigraphExplicit":
        lists = [list(a) for a in adjacency]
        indptr = np.zeros(len(lists) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in lists])
        indices = np.fromiter((h for a in lists for h in a), dtype=np.int64, count=int(indptr[-1]))
        return cls(len(lists), indptr, indices)

    @classmethod
    def from_heads(cls, heads: np.ndarray) -> "DigraphExplicit":
        n, k = heads.shape
        return cls(n, np.arange(n + 1, dtype=np.int64) * k, np.ascontiguousarray(heads.reshape(-1)))

    @property
    def arc_count(self) -> int:
        return int(self.indptr[-1])

    def successors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.indices, minlength=self.n)

    def arcs(self) -> Iterable[tuple[int, int]]:
        tails = np.repeat(np.arange(self.n), self.out_degrees())
        return zip(tails.tolist(), self.indices.tolist())


def out_neighbors(ctx: GF, f: FuncSpec, v: Vertex) -> list[Vertex]:
    """The q heads of ``v``: for each y1, ``(y1, f(v1, y1) - v)``."""
    if len(v.rest) != f.l:
        raise ShapeError(f"vertex needs {f.l} trailing coordinates, got {len(v.rest)}")
    out = []
    for y1 in range(ctx.q):
        fx = f(v.first, y1)
        out.append(Vertex(y1, tuple(ctx.sub(a, b) for a, b in zip(fx, v.rest))))
    return out


def build_explicit(ctx: GF, f: FuncSpec, arc_cap: int = ARC_CAP) -> DigraphExplicit:
    q, l = ctx.q, f.l
    if q ** (l + 2) > arc_cap:
        raise TooLarge(f"D has {q ** (l + 2)} arcs, cap is {arc_cap}")
    n = q ** (l + 1)
    first, rest = all_vertices(q, l)
    sub = ctx.sub_table
    heads = np.empty((n, q), dtype=np.int64)
    for y1 in range(q):
        fx = f.table[first, y1, :]  # (n, l)
        new = sub[fx, rest]
        code = np.full(n, y1, dtype=np.int64)
        for k in range(l):
            code = code * q + new[:, k]
        heads[:, y1] = code
    g = DigraphExplicit.from_heads(heads)
    indeg = g.in_degrees()
    if not (indeg == q).all():
        raise AssertionError("in-degree regularity violated")
    return g


def scc(g: DigraphExplicit) -> list[list[int]]:
    """Strong components by iterative Tarjan.

    Classes are sorted and listed by their smallest vertex.
    """
    n = g.n
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for s in range(n):
        if index[s] != -1:
            continue
        index[s] = low[s] = counter
        counter += 1
        stack.append(s)
        onstack[s] = True
        work = [[s, indptr[s]]]
        while work:
            frame = work[-1]
            v, ptr = frame
            end = indptr[v + 1]
            descended = False
            while ptr < end:
                w = indices[ptr]
                ptr += 1
                if index[w] == -1:
                    frame[1] = ptr
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append([w, indptr[w]])
                    descended = True
                    break
                if onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                comps.append(comp)
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    comps.sort(key=lambda c: c[0])
    return comps


def _expand(g: DigraphExplicit, frontier: np.ndarray) -> np.ndarray:
    starts = g.indptr[frontier]
    lens = g.indptr[frontier + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    offs = np.repeat(starts - np.cumsum(lens) + lens, lens) + np.arange(total)
    return g.indices[offs]


def bfs_distances(g: DigraphExplicit, source: int) -> np.ndarray:
    """Directed distances from ``source`` (-1 for unreachable)."""
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nxt = np.unique(_expand(g, frontier))
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = level
        frontier = nxt
    return dist


def diameter(g: DigraphExplicit) -> int:
    """Largest directed distance over ordered pairs; requires a strong digraph."""
    if len(scc(g)) != 1:
        raise NotStrong("diameter is only defined here for strong digraphs")
    best = 0
    for s in range(g.n):
        best = max(best, int(bfs_distances(g, s).max()))
    return best


@dataclass(frozen=True)
class PartitionComparison:
    ok: bool
    pair: Optional[tuple[int, int]] = None
    together_in: Optional[str] = None

    def describe(self) -> str:
        if self.ok:
            return "partitions agree"
        a, b = self.pair
        apart = "second" if self.together_in == "first" else "first"
        return f"mismatch at pair ({a}, {b}): together in {self.together_in}, apart in {apart}"


def compare_partitions(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> PartitionComparison:
    """Compare two partitions; on disagreement name the smallest offending pair."""
    label_a: dict[int, int] = {}
    for i, cls in enumerate(a):
        for v in cls:
            label_a[v] = i
    label_b: dict[int, int] = {}
    for i, cls in enumerate(b):
        for v in cls:
            label_b[v] = i
    if set(label_a) != set(label_b):
        raise GroundSetMismatch("partitions are over different vertex sets")
    sets_a = [set(c) for c in a]
    sets_b = [set(c) for c in b]
    for v in sorted(label_a):
        ca, cb = sets_a[label_a[v]], sets_b[label_b[v]]
        later = [x for x in ca ^ cb if x > v]
        if later:
            w = min(later)
            return PartitionComparison(False, (v, w), "first" if w in ca else "second")
    return PartitionComparison(True)


def partition_to_json(partition: Sequence[Sequence[int]]) -> list[list[int]]:
    classes = [sorted(int(v) for v in c) for c in partition]
    classes.sort(key=lambda c: c[0])
    return classes


def write_dot(g: DigraphExplicit, sink: Union[str, Path, IO[str]]) -> None:
    """One ``i -> j;`` line per arc; a ``.gz`` path is gzip-compressed."""
    lines = ["digraph D {"]
    lines.extend(f"  {u} -> {v};" for u, v in g.arcs())
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if isinstance(sink, (str, Path)):
        path = Path(sink)
        if path.suffix == ".gz":
            with gzip.open(path, "wt", encoding="ascii") as fh:
                fh.write(text)
        else:
            path.write_text(text, encoding="ascii")
    else:
        sink.write(text)


def dot_string(g: DigraphExplicit) -> str:
    buf = io.StringIO()
    write_dot(g, buf)
    return buf.getvalue()
