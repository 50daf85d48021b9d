import gzip
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import XI
from fqdigraph.errors import GroundSetMismatch, NotStrong, ShapeError, TooLarge
from fqdigraph.field import GF
from fqdigraph.funcspec import FuncSpec
from fqdigraph.oracle import (
    DigraphExplicit,
    bfs_distances,
    build_explicit,
    compare_partitions,
    diameter,
    dot_string,
    out_neighbors,
    partition_to_json,
    scc,
    write_dot,
)
from fqdigraph.vertices import Vertex, vertex_index


def closure_classes(adj):
    """Mutual-reachability classes from a Warshall transitive closure."""
    n = len(adj)
    reach = [[i == j or j in adj[i] for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    classes = {}
    for i in range(n):
        key = frozenset(j for j in range(n) if reach[i][j] and reach[j][i])
        classes[key] = sorted(key)
    return sorted(classes.values(), key=lambda c: c[0])


digraphs = st.integers(1, 14).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), max_size=4), min_size=n, max_size=n)
)


@settings(max_examples=150, deadline=None)
@given(digraphs)
def test_scc_matches_closure(adj):
    g = DigraphExplicit.from_lists(adj)
    comps = scc(g)
    assert comps == closure_classes([set(a) for a in adj])
    # condensation is acyclic: a topological order of classes exists
    label = {v: i for i, c in enumerate(comps) for v in c}
    cond = {(label[u], label[v]) for u, v in g.arcs() if label[u] != label[v]}
    indeg = {i: 0 for i in range(len(comps))}
    for _, b in cond:
        indeg[b] += 1
    ready = [i for i, k in indeg.items() if k == 0]
    seen = 0
    while ready:
        i = ready.pop()
        seen += 1
        for a, b in cond:
            if a == i:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
    assert seen == len(comps)


def test_scc_small_cases():
    assert scc(DigraphExplicit.from_lists([[]])) == [[0]]
    assert scc(DigraphExplicit.from_lists([[1], [0]])) == [[0, 1]]
    F3 = GF(3)
    sizes = sorted(len(c) for c in scc(build_explicit(F3, FuncSpec.constant(F3, [0]))))
    assert sizes == [3, 6]


def test_scc_deep_path_no_recursion():
    n = 200_000
    adj = [[i + 1] for i in range(n - 1)] + [[0]]
    assert len(scc(DigraphExplicit.from_lists(adj))) == 1


def test_diameter_basics():
    for n in range(2, 7):
        complete = [[j for j in range(n) if j != i] for i in range(n)]
        assert diameter(DigraphExplicit.from_lists(complete)) == 1
        cycle = [[(i + 1) % n] for i in range(n)]
        assert diameter(DigraphExplicit.from_lists(cycle)) == n - 1
    with pytest.raises(NotStrong):
        diameter(DigraphExplicit.from_lists([[1], []]))


def test_bfs_distances():
    g = DigraphExplicit.from_lists([[1, 2], [3], [3], [], [0]])
    assert bfs_distances(g, 0).tolist() == [0, 1, 1, 2, -1]


def test_compare_partitions():
    assert compare_partitions([[0, 1], [2]], [[2], [1, 0]]).ok
    cmp = compare_partitions([[0, 1], [2]], [[0], [1], [2]])
    assert not cmp.ok and cmp.pair == (0, 1) and cmp.together_in == "first"
    assert cmp.describe() == "mismatch at pair (0, 1): together in first, apart in second"
    cmp = compare_partitions([[0], [1, 3], [2]], [[0], [1, 2, 3]])
    assert cmp.pair == (1, 2) and cmp.together_in == "second"
    with pytest.raises(GroundSetMismatch):
        compare_partitions([[0, 1]], [[0], [2]])


def test_partition_json_order():
    assert partition_to_json([[5, 3], [4, 0], [1]]) == [[0, 4], [1], [3, 5]]


def test_build_counts(golden):
    F3 = GF(3)
    g = build_explicit(F3, FuncSpec.monomial(F3, 1, 1))
    assert (g.n, g.arc_count) == (9, 27)
    g = build_explicit(*golden)
    assert (g.n, g.arc_count) == (625, 15625)
    assert (g.out_degrees() == 25).all() and (g.in_degrees() == 25).all()


def test_build_cap():
    F25 = GF(5, 2)
    # 25**5 arcs sit just under the default cap of 10**7; one more coordinate does not
    with pytest.raises(TooLarge):
        build_explicit(F25, FuncSpec.constant(F25, [0, 0, 0, 0]))
    with pytest.raises(TooLarge):
        build_explicit(F25, FuncSpec.constant(F25, [0, 0, 0]), arc_cap=25**5 - 1)
    F3 = GF(3)
    assert build_explicit(F3, FuncSpec.constant(F3, [0]), arc_cap=27).arc_count == 27


def test_out_neighbors(golden):
    ctx, f = golden
    heads = out_neighbors(ctx, f, Vertex(0, (0,)))
    assert len(heads) == 25
    assert heads[1] == Vertex(1, (XI,))
    F3 = GF(3)
    assert Vertex(0, (0,)) in out_neighbors(F3, FuncSpec.constant(F3, [0]), Vertex(0, (0,)))
    with pytest.raises(ShapeError):
        out_neighbors(ctx, f, Vertex(0, (0, 0)))


@pytest.mark.parametrize("p,e,l", [(2, 2, 1), (3, 1, 2), (5, 1, 1)])
def test_build_matches_out_neighbors(p, e, l):
    F = GF(p, e)
    f = FuncSpec.from_table(F, np.random.default_rng(p + l).integers(0, F.q, size=(F.q, F.q, l)))
    g = build_explicit(F, f)
    for first in range(F.q):
        for rest in itertools.product(range(F.q), repeat=l):
            v = Vertex(first, rest)
            heads = [vertex_index(F.q, h) for h in out_neighbors(F, f, v)]
            assert g.successors(vertex_index(F.q, v)).tolist() == heads


def test_dot_output(tmp_path):
    g = DigraphExplicit.from_lists([[1], [0, 1]])
    text = dot_string(g)
    assert text == "digraph D {\n  0 -> 1;\n  1 -> 0;\n  1 -> 1;\n}\n"
    write_dot(g, tmp_path / "g.dot")
    write_dot(g, tmp_path / "g.dot.gz")
    assert (tmp_path / "g.dot").read_text() == text
    with gzip.open(tmp_path / "g.dot.gz", "rt") as fh:
        assert fh.read() == text


# Diameters have no known closed form; these freeze what
# the brute-force oracle reports today.
DIAMETER_BASELINES = {
    (2, 1, 1, 1): 3,
    (3, 1, 1, 1): 3,
    (3, 1, 1, 2): 3,
    (5, 1, 1, 1): 3,
    (5, 1, 2, 3): 4,
    (7, 1, 1, 1): 3,
    (3, 2, 1, 1): 3,
}


@pytest.mark.parametrize("case", sorted(DIAMETER_BASELINES))
def test_monomial_diameter_baselines(case):
    p, e, m, n = case
    F = GF(p, e)
    assert diameter(build_explicit(F, FuncSpec.monomial(F, m, n))) == DIAMETER_BASELINES[case]
