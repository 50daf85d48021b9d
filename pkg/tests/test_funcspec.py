import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import XI
from fqdigraph.errors import RangeError, SchemaError, ShapeError
from fqdigraph.field import GF
from fqdigraph.funcspec import FuncSpec, derive, eval_f, eval_poly, interpolate, parse_funcspec


def test_parse_monomial():
    F4 = GF(2, 2)
    f = parse_funcspec(F4, {"monomial": {"m": 3, "n": 3}})
    assert (f.form, f.m, f.n, f.l) == ("monomial", 3, 3, 1)


def test_parse_golden_table(golden):
    ctx, f = golden
    assert f.form == "table"
    assert f.l == 1 and ctx.q == 25


def test_table_shape_errors(f25):
    rows = [[0]] * (25 * 25 - 1)
    with pytest.raises(ShapeError):
        parse_funcspec(f25, {"table": rows})
    with pytest.raises(ShapeError):
        parse_funcspec(f25, {"l": 2, "table": [[0]] * 625})
    with pytest.raises(RangeError):
        parse_funcspec(f25, {"table": [[25]] * 625})


@pytest.mark.parametrize(
    "doc,exc",
    [
        ({"monomial": {"m": 0, "n": 1}}, RangeError),
        ({"monomial": {"m": 1, "n": 5}}, RangeError),
        ({"monomial": {"m": "1", "n": 1}}, SchemaError),
        ({}, SchemaError),
        ({"table": [], "monomial": {"m": 1, "n": 1}}, SchemaError),
        ({"poly": [[[0] * 6]]}, RangeError),
        ({"poly": [[[7]]]}, RangeError),
        ([1, 2], SchemaError),
    ],
)
def test_parse_errors(doc, exc):
    with pytest.raises(exc):
        parse_funcspec(GF(5), doc)


def test_golden_values(golden):
    ctx, f = golden
    two_xi = ctx.add(XI, XI)
    assert eval_f(ctx, f, 1, 0) == (XI,)
    assert eval_f(ctx, f, 1, 1) == (two_xi,)
    assert eval_f(ctx, f, 0, 7) == (2,)
    assert eval_f(ctx, f, 9, 9) == (0,)


def test_monomial_values():
    F5 = GF(5)
    f = FuncSpec.monomial(F5, 2, 3)
    assert eval_f(F5, f, 2, 2) == (2,)  # 4 * 8 = 32 = 2
    assert all(eval_f(F5, f, 0, y) == (0,) for y in range(5))


def test_derive_monomial():
    F = GF(3, 2)
    d = derive(F, FuncSpec.monomial(F, 2, 4))
    assert not d.g.any() and not d.h.any()
    assert d.f00 == (0,)
    assert (d.tilde_f0 == FuncSpec.monomial(F, 2, 4).table).all()


def test_derive_golden(golden):
    ctx, f = golden
    d = derive(ctx, f)
    assert d.f00 == (0,)
    assert [int(d.g[t, 0]) for t in range(25)] == [0, XI] + [1] * 23
    assert [int(d.h[t, 0]) for t in range(25)] == [0, XI] + [2] * 23
    neg = ctx.neg
    # printed table: rows y in {0, 1, other}, columns x in {0, 1, other}
    expected = {
        (0, 0): 0, (1, 0): 0, (2, 0): neg(1),
        (0, 1): 0, (1, 1): 0, (2, 1): neg(2),
        (0, 2): 1, (1, 2): neg(1), (2, 2): neg(3),
    }
    for x in range(25):
        for y in range(25):
            assert d.tilde_f0[x, y, 0] == expected[(min(x, 2), min(y, 2))]
    assert set(d.tilde_f0.reshape(-1).tolist()) == {0, neg(1), neg(2), 1, neg(3)}


def test_derive_constant():
    F = GF(7)
    d = derive(F, FuncSpec.constant(F, [3, 5]))
    assert not d.g.any() and not d.h.any() and not d.tilde_f0.any()
    assert d.f00 == (3, 5)


def _reconstructs(ctx, f):
    d = derive(ctx, f)
    for x in range(ctx.q):
        for y in range(ctx.q):
            for k in range(f.l):
                total = ctx.add(ctx.add(d.f00[k], d.g[y, k]), ctx.add(d.h[x, k], d.tilde_f0[x, y, k]))
                assert total == f.table[x, y, k]
    for t in range(ctx.q):
        for k in range(f.l):
            assert d.tilde_f0[t, 0, k] == ctx.sub(d.g[t, k], d.h[t, k])
            assert d.tilde_f0[0, t, k] == ctx.neg(d.tilde_f0[t, 0, k])


@pytest.mark.parametrize("p,e,l", [(2, 1, 2), (3, 1, 1), (2, 2, 2), (5, 1, 2), (3, 2, 1), (5, 2, 1)])
def test_reconstruction_identity(p, e, l):
    F = GF(p, e)
    rng = np.random.default_rng(p * 10 + e + l)
    _reconstructs(F, FuncSpec.from_table(F, rng.integers(0, F.q, size=(F.q, F.q, l))))


def test_reconstruction_golden(golden):
    _reconstructs(*golden)


def test_interpolate_constant():
    F = GF(5)
    poly = interpolate(F, FuncSpec.constant(F, [3]))
    grid = np.asarray(poly.poly[0])
    assert grid[0, 0] == 3
    assert not grid.reshape(-1)[1:].any()


def test_interpolate_x3y3():
    F4 = GF(2, 2)
    f = FuncSpec.monomial(F4, 3, 3)
    poly = interpolate(F4, f)
    assert np.asarray(poly.poly).shape == (1, 4, 4)
    for x, y in itertools.product(range(4), repeat=2):
        assert eval_poly(F4, poly.poly, x, y) == f(x, y)
    assert (poly.table == f.table).all()


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)]), st.integers(1, 2), st.integers(0, 2**31))
def test_interpolate_roundtrip(field, l, seed):
    F = GF(*field)
    rng = np.random.default_rng(seed)
    f = FuncSpec.from_table(F, rng.integers(0, F.q, size=(F.q, F.q, l)))
    poly = interpolate(F, f)
    assert (poly.table == f.table).all()
    assert all(len(g) <= F.q and all(len(r) <= F.q for r in g) for g in poly.poly)
    # spot-check the dense table against Horner evaluation
    for x, y in [(0, 0), (F.q - 1, 1), (1, F.q - 1)]:
        assert eval_poly(F, poly.poly, x, y) == f(x, y)


def test_poly_document_roundtrip():
    F = GF(5)
    # f = 1 + 2xy^2, second coordinate x^4
    grids = [[[1], [0, 0, 2]], [[0], [0], [0], [0], [1]]]
    f = parse_funcspec(F, {"poly": grids, "l": 2})
    assert f(3, 2) == (F.add(1, F.mul(2, F.mul(3, 4))), 1)
    assert f.to_document(F)["poly"] == [[[1], [0, 0, 2]], [[0], [0], [0], [0], [1]]]
