"""Theorem-versus-oracle harness and seeded random defining functions."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .field import GF
from .fplinalg import unflatten_array
from .funcspec import FuncSpec
from .oracle import ARC_CAP, build_explicit, compare_partitions, scc
from .theorem import analyze, theorem_partition

DEFAULT_QS = (2, 3, 4, 5, 7, 8, 9)
DEFAULT_LS = (1, 2)


def field_for_q(q: int) -> GF:
    for p in range(2, q + 1):
        e = 0
        r = q
        while r % p == 0:
            r //= p
            e += 1
        if e and r == 1:
            return GF(p, e)
    raise ValueError(f"{q} is not a prime power")


def case_rng(seed: int, q: int, l: int, i: int) -> np.random.Generator:
    return np.random.default_rng([seed, q, l, i])


def random_table(ctx: GF, l: int, rng: np.random.Generator) -> FuncSpec:
    """Every table entry uniform over F_q."""
    return FuncSpec.from_table(ctx, rng.integers(0, ctx.q, size=(ctx.q, ctx.q, l)))


def structured_table(ctx: GF, l: int, rng: np.random.Generator) -> FuncSpec:
    """``f(x, y) = c + G(x) + G(y) + R(x, y)`` with R valued in a random subspace S.

    The symmetric part cancels out of the mixed residual, so its span lies
    inside S; this reaches the non-strong cases that uniform tables almost
    never produce.  ``c`` is uniform, so it may or may not land in S.
    """
    q, p = ctx.q, ctx.p
    el = ctx.e * l
    k = int(rng.integers(0, el + 1))
    S = rng.integers(0, p, size=(k, el))
    coef = rng.integers(0, p, size=(q, q, k))
    R = (coef @ S) % p if k else np.zeros((q, q, el), dtype=np.int64)
    G = rng.integers(0, p, size=(q, el))
    if rng.random() < 0.5 or not k:
        c = rng.integers(0, p, size=el)
    else:
        c = rng.integers(0, p, size=k) @ S % p
    flat = (c[None, None, :] + G[:, None, :] + G[None, :, :] + R) % p
    return FuncSpec.from_table(ctx, unflatten_array(ctx, flat))


@dataclass(frozen=True)
class CaseResult:
    key: tuple
    parity: str
    d: int
    el: int
    f00_in_W0: bool
    count: int
    orders: tuple[int, ...]
    oracle_count: int
    oracle_orders: tuple[int, ...]
    agree: bool
    detail: str

    @property
    def ok(self) -> bool:
        return self.agree and self.count == self.oracle_count and self.orders == self.oracle_orders

    def to_report(self) -> dict:
        out = asdict(self)
        out["key"] = list(self.key)
        out["orders"] = list(self.orders)
        out["oracle_orders"] = list(self.oracle_orders)
        out["ok"] = self.ok
        return out


def verify_case(ctx: GF, f: FuncSpec, key: tuple = (), arc_cap: int = ARC_CAP) -> CaseResult:
    st = analyze(ctx, f)
    predicted = theorem_partition(ctx, f)
    observed = scc(build_explicit(ctx, f, arc_cap))
    cmp = compare_partitions(predicted, observed)
    return CaseResult(
        key=tuple(key),
        parity=st.parity,
        d=st.d,
        el=st.el,
        f00_in_W0=st.f00_in_W0,
        count=st.count,
        orders=tuple(sorted(st.orders)),
        oracle_count=len(observed),
        oracle_orders=tuple(sorted(len(c) for c in observed)),
        agree=cmp.ok,
        detail=cmp.describe(),
    )


def _sweep_item(args: tuple) -> CaseResult:
    seed, q, l, i, structured, arc_cap = args
    ctx = field_for_q(q)
    rng = case_rng(seed, q, l, i)
    f = structured_table(ctx, l, rng) if structured else random_table(ctx, l, rng)
    return verify_case(ctx, f, key=(q, l, i, seed), arc_cap=arc_cap)


def sweep(
    n: int,
    seed: int,
    qs: Sequence[int] = DEFAULT_QS,
    ls: Sequence[int] = DEFAULT_LS,
    structured: bool = False,
    arc_cap: int = ARC_CAP,
    jobs: int = 1,
) -> list[CaseResult]:
    """``n`` seeded tables for every (q, l); results sorted by case key."""
    items = [(seed, q, l, i, structured, arc_cap) for q in qs for l in ls for i in range(n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_item, items))
    else:
        results = [_sweep_item(it) for it in items]
    return sorted(results, key=lambda r: r.key)
