"""Monomial digraphs D(q; m, n) with f(x, y) = x^m y^n.

The structure is decided by integer arithmetic alone: with d = gcd(q-1, m, n)
and q_i = (q-1)/(p^{e_i}-1) for each divisor e_i of e, the range of f spans
the subfield F_{p^{e_s}}, where q_s is the largest q_i dividing d.
:func:`lemma_checks` confirms the two subgroup facts behind this by
enumeration inside an actual field.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NotPrime, RangeError
from .field import GF, divisors, is_prime
from .fplinalg import span_of
from .vertices import Vertex


@dataclass(frozen=True)
class MonomialStructure:
    p: int
    e: int
    m: int
    n: int
    d: int
    divisors: tuple[tuple[int, int], ...]
    q_s: int
    e_s: int
    count: int
    orders: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def strong(self) -> bool:
        return self.q_s == 1

    def to_report(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "divisors": [list(t) for t in self.divisors],
            "q_s": self.q_s,
            "e_s": self.e_s,
            "count": self.count,
            "orders": list(self.orders),
            "strong": self.strong,
        }


def smallest_subfield_degree(p: int, e: int, k: int) -> tuple[int, int]:
    """``(q_s, e_s)``: the largest q_i dividing gcd(q-1, k), and its degree."""
    q = p**e
    kbar = math.gcd(q - 1, k)
    best = None
    for e_i in divisors(e):
        q_i = (q - 1) // (p**e_i - 1)
        if kbar % q_i == 0 and (best is None or q_i > best[0]):
            best = (q_i, e_i)
    # e_i = e always gives q_i = 1
    return best


def analyze_monomial(p: int, e: int, m: int, n: int) -> MonomialStructure:
    if not is_prime(p):
        raise NotPrime(f"characteristic {p} is not prime")
    if e < 1:
        raise RangeError(f"extension degree must be >= 1, got {e}")
    q = p**e
    for name, k in (("m", m), ("n", n)):
        if not 1 <= k <= q - 1:
            raise RangeError(f"exponent {name} = {k} outside [1, {q - 1}]")
    d = math.gcd(q - 1, m, n)
    table = tuple((e_i, (q - 1) // (p**e_i - 1)) for e_i in divisors(e))
    q_s, e_s = smallest_subfield_degree(p, e, d)
    if p == 2:
        count = 2 ** (e - e_s)
        orders = (2 ** (e + e_s),) * count
    else:
        count = (p ** (e - e_s) + 1) // 2
        small = p ** (e + e_s)
        orders = (small,) + (2 * small,) * (count - 1)
    return MonomialStructure(p, e, m, n, d, table, q_s, e_s, count, orders)


def monomial_component_of(ctx: GF, m: int, n: int, v: Vertex) -> set[Vertex]:
    """``{(x, v + K)} | {(x, -v + K)}`` over all x, with K the subfield F_{p^{e_s}}."""
    q = ctx.q
    for name, k in (("m", m), ("n", n)):
        if not 1 <= k <= q - 1:
            raise RangeError(f"exponent {name} = {k} outside [1, {q - 1}]")
    if len(v.rest) != 1:
        raise RangeError("monomial digraphs have l = 1")
    ms = analyze_monomial(ctx.p, ctx.e, m, n)
    K = ctx.subfield_elements(ms.e_s)
    (y,) = v.rest
    seconds = {ctx.add(y, k) for k in K} | {ctx.add(ctx.neg(y), k) for k in K}
    return {Vertex(x, (s,)) for x in range(q) for s in seconds}


@dataclass(frozen=True)
class PowerSubgroup:
    k: int
    kbar: int
    elements: frozenset[int]


@lru_cache(maxsize=512)
def power_subgroup(ctx: GF, k: int) -> PowerSubgroup:
    """A_k = {x^k : x nonzero}, enumerated by powering every element."""
    if k < 1:
        raise RangeError(f"exponent must be >= 1, got {k}")
    elems = frozenset(ctx.pow(x, k) for x in range(1, ctx.q))
    kbar = math.gcd(ctx.q - 1, k)
    if len(elems) != (ctx.q - 1) // kbar:
        raise AssertionError(f"|A_{k}| = {len(elems)}, expected {(ctx.q - 1) // kbar}")
    return PowerSubgroup(k, kbar, elems)


def span_elements(ctx: GF, elems: Sequence[int]) -> frozenset[int]:
    """The F_p-span of a set of field elements, as element indices."""
    W = span_of(ctx.p, ctx.e, [ctx.coeffs(x) for x in elems])
    return frozenset(ctx.index(v) for v in W.elements())


def product_set(ctx: GF, a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
    if ctx.q <= 2048:
        mul = ctx.mul_table
        prods = mul[np.fromiter(a, dtype=np.int64)[:, None], np.fromiter(b, dtype=np.int64)[None, :]]
        return frozenset(np.unique(prods).tolist())
    return frozenset(ctx.mul(x, y) for x in a for y in b)


@dataclass
class LemmaReport:
    checks: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def add(self, name: str, passed: bool, **info) -> None:
        self.checks.append({"check": name, "pass": bool(passed), **info})

    def to_report(self) -> dict:
        return {"ok": self.ok, "checks": self.checks}


def check_span_is_subfield(ctx: GF, k: int, report: LemmaReport) -> None:
    A = power_subgroup(ctx, k)
    report.add("order", len(A.elements) == (ctx.q - 1) // A.kbar, k=k, size=len(A.elements), kbar=A.kbar)
    q_s, e_s = smallest_subfield_degree(ctx.p, ctx.e, k)
    span = span_elements(ctx, A.elements)
    sub = ctx.subfield_elements(e_s)
    report.add("span_is_subfield", span == sub, k=k, e_s=e_s, q_s=q_s, span_size=len(span), subfield_size=len(sub))


def lemma_checks(ctx: GF, m: int, n: int) -> LemmaReport:
    """Enumerative checks: span of A_m, A_n are the predicted subfields; A_m A_n = A_d."""
    report = LemmaReport()
    for k in (m, n):
        check_span_is_subfield(ctx, k, report)
    d = math.gcd(ctx.q - 1, m, n)
    prod = product_set(ctx, power_subgroup(ctx, m).elements, power_subgroup(ctx, n).elements)
    A_d = power_subgroup(ctx, d).elements
    report.add("product_is_A_d", prod == A_d, m=m, n=n, d=d, product_size=len(prod), A_d_size=len(A_d))
    return report
