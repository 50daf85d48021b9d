"""Closed-form strong-component structure of D(q; f).

Arc rule: ``(x1, x) -> (y1, y)`` iff ``x + y = f(x1, y1)`` coordinate-wise.
With W0 the F_p-span of the range of the mixed residual f~0 and d = dim W0:

* odd q: the component of ``(u, v)`` is the union of the coset families
  ``(a, v - g(u) + h(a) + W0)`` and ``(b, -v + g(u) + f(0,0) + h(b) + W0)``;
* even q: it is ``(a, v + g(u) + h(a) + W)`` with ``W = W0 + <f(0,0)>``.

All vector arithmetic here happens on F_q^l flattened to F_p^{el}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import (
    EvenCharacteristic,
    IndexOutOfRange,
    NotSameComponent,
    OrderMismatch,
    ShapeError,
    TooLarge,
    VertexNotInComponent,
)
from .field import GF
from .fplinalg import COSET_CAP, FpVector, SubspaceFp, flatten_array, solve_combination, unflatten
from .funcspec import DerivedFuncs, FuncSpec, derive
from .vertices import Vertex, all_vertices

MATERIALIZE_CAP = 2**20


@dataclass(frozen=True)
class ComponentStructure:
    parity: str
    p: int
    e: int
    l: int
    W0: SubspaceFp
    W: SubspaceFp
    f00_in_W0: bool
    count: int
    orders: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.W0.dim

    @property
    def el(self) -> int:
        return self.e * self.l

    @property
    def strong(self) -> bool:
        return self.count == 1

    def to_report(self) -> dict:
        return {
            "parity": self.parity,
            "p": self.p,
            "e": self.e,
            "q": self.p**self.e,
            "l": self.l,
            "d": self.d,
            "el": self.el,
            "count": self.count,
            "orders": list(self.orders),
            "W0_basis": self.W0.to_json(),
            "W_basis": self.W.to_json(),
            "f00_in_W0": self.f00_in_W0,
            "strong": self.strong,
        }


@dataclass(frozen=True)
class ComponentDescriptor:
    """Lazy description of one strong component by reduced coset representatives.

    ``half_a`` and ``half_b`` are the reduced representatives of the two coset
    families (odd q); for even q only ``half_a`` is used.
    """

    parity: str
    half_a: FpVector
    half_b: Optional[FpVector] = None

    @property
    def degenerate(self) -> bool:
        return self.parity == "odd" and self.half_a == self.half_b

    @property
    def key(self) -> tuple:
        if self.parity == "even":
            return (self.half_a,)
        return tuple(sorted((self.half_a, self.half_b)))


class Analysis:
    """Everything the closed-form description needs for one (field, f) pair."""

    def __init__(self, ctx: GF, f: FuncSpec) -> None:
        if f.q != ctx.q:
            raise ShapeError(f"function is defined over q = {f.q}, field has q = {ctx.q}")
        self.ctx = ctx
        self.f = f
        self.p = ctx.p
        self.q = ctx.q
        self.l = f.l
        self.el = ctx.e * f.l
        self.derived: DerivedFuncs = derive(ctx, f)
        der = self.derived
        self.G = flatten_array(ctx, der.g)  # (q, el)
        self.H = flatten_array(ctx, der.h)
        self.F00 = flatten_array(ctx, np.asarray(der.f00))
        self.F0 = flatten_array(ctx, der.f0)  # (q, q, el)
        self.tilde = flatten_array(ctx, der.tilde_f0)

    @cached_property
    def alpha_basis(self) -> list[tuple[int, int, FpVector]]:
        """A basis of W0 drawn from the range of f~0, first-found in row-major (x, y) order."""
        W = SubspaceFp.zero(self.p, self.el)
        out = []
        for x in range(self.q):
            for y in range(self.q):
                vec = tuple(int(c) for c in self.tilde[x, y])
                grown = W.extend(vec)
                if grown.dim > W.dim:
                    out.append((x, y, vec))
                    W = grown
                    if W.is_full():
                        return out
        return out

    @cached_property
    def W0(self) -> SubspaceFp:
        W = SubspaceFp.zero(self.p, self.el)
        for _, _, vec in self.alpha_basis:
            W = W.extend(vec)
        return W

    @cached_property
    def f00_vec(self) -> FpVector:
        return tuple(int(c) for c in self.F00)

    @cached_property
    def W(self) -> SubspaceFp:
        return self.W0.extend(self.f00_vec) if self.p == 2 else self.W0

    @cached_property
    def structure(self) -> ComponentStructure:
        p, e, el, d = self.p, self.ctx.e, self.el, self.W0.dim
        f00_in = self.W0.contains(self.f00_vec)
        if p != 2:
            count = (p ** (el - d) + 1) // 2
            small = p ** (e + d)
            orders = (small,) + (2 * small,) * (count - 1)
            parity = "odd"
        else:
            parity = "even"
            if f00_in:
                count, order = 2 ** (el - d), 2 ** (e + d)
            else:
                count, order = 2 ** (el - d - 1), 2 ** (e + d + 1)
            orders = (order,) * count
        return ComponentStructure(parity, p, e, self.l, self.W0, self.W, f00_in, count, orders)

    # -- vertex helpers -------------------------------------------------------

    def check_vertex(self, v: Vertex) -> None:
        if len(v.rest) != self.l:
            raise ShapeError(f"vertex needs {self.l} trailing coordinates, got {len(v.rest)}")
        for c in (v.first, *v.rest):
            if not 0 <= c < self.q:
                raise IndexOutOfRange(f"coordinate {c} outside [0, {self.q})")

    def flat(self, rest: Sequence[int]) -> np.ndarray:
        return flatten_array(self.ctx, np.asarray(rest, dtype=np.int64))

    def descriptor(self, v: Vertex) -> ComponentDescriptor:
        self.check_vertex(v)
        vv = self.flat(v.rest)
        gu = self.G[v.first]
        if self.p == 2:
            return ComponentDescriptor("even", self.W.reduce(tuple((vv + gu) % 2)))
        a = self.W0.reduce(tuple((vv - gu) % self.p))
        b = self.W0.reduce(tuple((-vv + gu + self.F00) % self.p))
        return ComponentDescriptor("odd", a, b)

    def order_of(self, desc: ComponentDescriptor) -> int:
        if desc.parity == "even":
            return self.q * self.W.size
        return self.q * self.W0.size * (1 if desc.degenerate else 2)

    def partition_labels(self) -> np.ndarray:
        """Component label per vertex index (labels are arbitrary but consistent)."""
        first, rest = all_vertices(self.q, self.l)
        V = flatten_array(self.ctx, rest)
        Gu = self.G[first]
        weights = np.asarray([self.p**i for i in range(self.el)], dtype=np.int64)
        if self.p == 2:
            keys = self.W.reduce_array(V + Gu) @ weights
        else:
            a = self.W0.reduce_array(V - Gu) @ weights
            b = self.W0.reduce_array(-V + Gu + self.F00) @ weights
            keys = np.minimum(a, b) * self.p**self.el + np.maximum(a, b)
        _, labels = np.unique(keys, return_inverse=True)
        return labels.reshape(-1)


@lru_cache(maxsize=32)
def _analysis(ctx: GF, f: FuncSpec) -> Analysis:
    return Analysis(ctx, f)


def analysis(ctx: GF, f: FuncSpec) -> Analysis:
    return _analysis(ctx, f)


def analyze(ctx: GF, f: FuncSpec) -> ComponentStructure:
    return analysis(ctx, f).structure


def component_of(ctx: GF, f: FuncSpec, v: Vertex) -> ComponentDescriptor:
    return analysis(ctx, f).descriptor(v)


def same_component(ctx: GF, f: FuncSpec, u: Vertex, v: Vertex) -> bool:
    an = analysis(ctx, f)
    return an.descriptor(u).key == an.descriptor(v).key


def labels_to_partition(labels: np.ndarray) -> list[list[int]]:
    """Group vertex indices by label; classes sorted, ordered by first element."""
    order = np.argsort(labels, kind="stable")
    sorted_labels = labels[order]
    cuts = np.flatnonzero(np.diff(sorted_labels)) + 1
    classes = [c.tolist() for c in np.split(order, cuts)] if len(order) else []
    classes.sort(key=lambda c: c[0])
    return classes


def theorem_partition(ctx: GF, f: FuncSpec) -> list[list[int]]:
    """The vertex partition predicted by the closed form, in export order."""
    return labels_to_partition(analysis(ctx, f).partition_labels())


def materialize(
    ctx: GF, f: FuncSpec, desc: ComponentDescriptor, cap: int = MATERIALIZE_CAP
) -> set[Vertex]:
    an = analysis(ctx, f)
    size = an.order_of(desc)
    if size > cap:
        raise TooLarge(f"component has {size} vertices, cap is {cap}")
    p = an.p
    if desc.parity == "even":
        families = [(desc.half_a, an.W)]
    else:
        families = [(desc.half_a, an.W0)]
        if not desc.degenerate:
            families.append((desc.half_b, an.W0))
    out: set[Vertex] = set()
    for base, W in families:
        offsets = np.asarray(W.enumerate_coset(base, cap=COSET_CAP), dtype=np.int64)
        for a in range(an.q):
            rests = (offsets + an.H[a]) % p
            for row in rests:
                out.add(Vertex(a, unflatten(ctx, row.tolist())))
    return out


# -- isomorphisms ----------------------------------------------------------------


def _half_shift(an: Analysis) -> np.ndarray:
    if an.p == 2:
        raise EvenCharacteristic("phi needs 1/2, which does not exist in characteristic 2")
    inv2 = (an.p + 1) // 2
    return (inv2 * an.F00) % an.p


def phi_map(ctx: GF, f: FuncSpec, v: Vertex) -> Vertex:
    """The isomorphism D(q; f) -> D(q; f0): ``(x, y) -> (x, y - f(0,0)/2)``."""
    an = analysis(ctx, f)
    shift = _half_shift(an)
    an.check_vertex(v)
    rest = (an.flat(v.rest) - shift) % an.p
    return Vertex(v.first, unflatten(ctx, rest.tolist()))


def phi_inverse(ctx: GF, f: FuncSpec, v: Vertex) -> Vertex:
    an = analysis(ctx, f)
    shift = _half_shift(an)
    an.check_vertex(v)
    rest = (an.flat(v.rest) + shift) % an.p
    return Vertex(v.first, unflatten(ctx, rest.tolist()))


def psi_map(
    ctx: GF, f: FuncSpec, desc1: ComponentDescriptor, desc2: ComponentDescriptor, v: Vertex
) -> Vertex:
    """Isomorphism between two components of equal order, applied to ``v``.

    Each coset family of the first component is translated onto the matching
    family of the second; the two translations are negatives of each other,
    so sums ``x + y`` along arcs are preserved.
    """
    an = analysis(ctx, f)
    an.check_vertex(v)
    if an.order_of(desc1) != an.order_of(desc2):
        raise OrderMismatch(
            f"components have orders {an.order_of(desc1)} and {an.order_of(desc2)}"
        )
    p = an.p
    z = an.flat(v.rest)
    offset = tuple(int(c) for c in (z - an.H[v.first]) % p)
    shift = (np.asarray(desc2.half_a) - np.asarray(desc1.half_a)) % p
    if desc1.parity == "even":
        if an.W.reduce(offset) != desc1.half_a:
            raise VertexNotInComponent(f"{v} is not in the first component")
        if desc1.key == desc2.key:
            return v
        rest = (z + shift) % 2
    else:
        red = an.W0.reduce(offset)
        if red == desc1.half_a:
            sign = 1
        elif red == desc1.half_b:
            sign = -1
        else:
            raise VertexNotInComponent(f"{v} is not in the first component")
        if desc1.key == desc2.key:
            return v
        rest = (z + sign * shift) % p
    return Vertex(v.first, unflatten(ctx, rest.tolist()))


# -- constructive walks ------------------------------------------------------------


def _walk_first_coords(an: Analysis, u: Vertex, target: Vertex) -> list[int]:
    """First coordinates visited by the constructive walk in D0 from ``u``."""
    p = an.p
    v = an.flat(u.rest)
    t = an.flat(target.rest)
    base = (v - an.G[u.first]) % p
    rel = (t - an.H[target.first]) % p
    alphas = an.alpha_basis
    vecs = [vec for _, _, vec in alphas]
    # family A: rel = v - g(u) + s ; family B: rel = -v + g(u) + s, s in W0
    s_a = tuple(int(c) for c in (rel - base) % p)
    s_b = tuple(int(c) for c in (rel + base) % p)
    if an.W0.contains(s_a):
        s, prefix = s_a, [u.first, 0]
    elif an.W0.contains(s_b):
        s, prefix = s_b, [u.first, 0, 0]
    else:
        raise NotSameComponent(f"{target} is not reachable from {u}")
    neg_s = tuple((-c) % p for c in s)
    coefs = solve_combination(p, vecs, neg_s) if vecs else ()
    seq = prefix
    for (x_i, y_i, _), c in zip(alphas, coefs):
        seq.extend([x_i, y_i, 0, 0] * c)
    seq.append(target.first)
    return seq


def _trace(an: Analysis, start: Vertex, firsts: Sequence[int]) -> list[Vertex]:
    """Follow arcs of D0 from ``start`` through the given first coordinates."""
    p = an.p
    x = start.first
    z = an.flat(start.rest)
    out = [start]
    for y in firsts:
        z = (an.F0[x, y] - z) % p
        x = y
        out.append(Vertex(x, unflatten(an.ctx, z.tolist())))
    return out


def witness_path(ctx: GF, f: FuncSpec, frm: Vertex, to: Vertex) -> list[Vertex]:
    """An explicit directed walk ``frm -> ... -> to`` in D(q; f), odd q only.

    The walk is built in D0 = D(q; f - f(0,0)) and pulled back through phi.
    Returned as the list of visited vertices, both endpoints included;
    ``frm == to`` gives the zero-arc walk ``[frm]``.
    """
    an = analysis(ctx, f)
    if an.p == 2:
        raise EvenCharacteristic("the constructive walk is only available for odd q")
    an.check_vertex(frm)
    an.check_vertex(to)
    if not same_component(ctx, f, frm, to):
        raise NotSameComponent(f"{frm} and {to} lie in different strong components")
    if frm == to:
        return [frm]
    u0 = phi_map(ctx, f, frm)
    t0 = phi_map(ctx, f, to)
    firsts = _walk_first_coords(an, u0, t0)
    walk0 = _trace(an, u0, firsts[1:])
    if walk0[-1] != t0:
        raise AssertionError("constructive walk missed its target")
    return [phi_inverse(ctx, f, w) for w in walk0]


def walk_length_bound(ctx: GF, f: FuncSpec) -> int:
    an = analysis(ctx, f)
    return 3 + 6 * an.W0.dim * (an.p - 1)
