import json
import random
from collections import Counter
from itertools import combinations, permutations, product
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from opencorr.errors import Disconnected, HalfEdgeNotFound, InvalidInput
from opencorr.graphcat import Graph, corolla, glue
from opencorr.ribbon import (CyclicOrder, RibbonGraph, SurfaceType, as_compose, as_operations,
                             boundary_walk, canonical_ribbon, cut_edge, ribbon_from_json,
                             ribbon_to_json, surface_type)

from oracles import count_cyclic_orders, surface_from_rotation

FIX = Path(__file__).parent / "fixtures"


def load(name):
    return ribbon_from_json(json.loads((FIX / f"{name}.json").read_text()))[0]


def one_vertex(order, pairs):
    g = corolla(len(order))
    for a, b in pairs:
        g = glue(g, a, b)
    return RibbonGraph(g, (CyclicOrder(order),))


def perfect_matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in perfect_matchings(rest):
            yield [(a, items[i])] + m


def test_operation_counts():
    for n in range(1, 7):
        ops = as_operations(n)
        assert len(ops) == len(set(ops)) == count_cyclic_orders(n)
    assert [len(as_operations(n)) for n in range(1, 7)] == [1, 1, 2, 6, 24, 120]
    with pytest.raises(InvalidInput):
        as_operations(0)


def test_cyclic_order_is_rotation_invariant():
    assert CyclicOrder((2, 0, 1)) == CyclicOrder((0, 1, 2)) != CyclicOrder((0, 2, 1))
    with pytest.raises(InvalidInput):
        CyclicOrder((1, 1))


def test_as_compose_examples():
    assert as_compose("a", "b", CyclicOrder("axy"), CyclicOrder("bz")) == CyclicOrder("zxy")
    assert as_compose(0, 3, CyclicOrder((0, 1, 2)), CyclicOrder((3, 4, 5))) == CyclicOrder((4, 5, 1, 2))
    with pytest.raises(HalfEdgeNotFound):
        as_compose(9, 3, CyclicOrder((0, 1)), CyclicOrder((3, 4)))
    with pytest.raises(InvalidInput):
        as_compose(0, 3, CyclicOrder((0, 1)), CyclicOrder((3, 1)))


def test_as_compose_associative_exhaustive():
    # three trivalent corollas, glued a0-b0 and b1-c0 in either order
    A = ["a0", "a1", "a2"]
    B = ["b0", "b1", "b2"]
    C = ["c0", "c1", "c2"]
    for pa, pb, pc in product(permutations(A), permutations(B), permutations(C)):
        oa, ob, oc = CyclicOrder(pa), CyclicOrder(pb), CyclicOrder(pc)
        left = as_compose("b1", "c0", as_compose("a0", "b0", oa, ob), oc)
        right = as_compose("a0", "b0", oa, as_compose("b1", "c0", ob, oc))
        assert left == right


def test_fixture_surfaces():
    assert surface_type(load("disk5")) == SurfaceType(0, (5,))
    assert surface_type(load("annulus")) == SurfaceType(0, (0, 0))
    assert surface_type(load("torus_one_hole")) == SurfaceType(1, (0,))
    assert surface_type(load("pants")) == SurfaceType(0, (0, 0, 0))


def test_boundary_walk_examples():
    assert boundary_walk(one_vertex((0, 1, 2), [])) == [[0, 1, 2]]
    tor = one_vertex((0, 1, 2, 3), [(0, 2), (1, 3)])
    assert len(boundary_walk(tor)) == 1
    assert surface_type(one_vertex((0, 1, 2), [(0, 1)])) == SurfaceType(0, (0, 1))
    assert surface_type(RibbonGraph(corolla(0), (CyclicOrder(),))) == SurfaceType(0, (0,))
    two = RibbonGraph(Graph(2, (0, 1), (0, 1)), (CyclicOrder((0,)), CyclicOrder((1,))))
    with pytest.raises(Disconnected):
        boundary_walk(two)


def test_one_vertex_genus_distribution():
    # gluings of a 2n-gon by genus: 2, 1 / 5, 10 / 14, 70, 21
    expected = {2: {0: 2, 1: 1}, 3: {0: 5, 1: 10}, 4: {0: 14, 1: 70, 2: 21}}
    for n, dist in expected.items():
        hs = list(range(2 * n))
        counts = Counter(surface_type(one_vertex(hs, m)).genus for m in perfect_matchings(hs))
        assert dict(counts) == dist


def all_ribbon_graphs(max_half_edges):
    """Connected ribbon graphs with up to two vertices, every cyclic order and pairing."""
    for nh in range(1, max_half_edges + 1):
        for nv in (1, 2):
            for split in range(1, nh) if nv == 2 else [nh]:
                sizes = [split, nh - split] if nv == 2 else [nh]
                source = tuple(v for v, s in enumerate(sizes) for _ in range(s))
                groups = [[h for h in range(nh) if source[h] == v] for v in range(nv)]
                for k in range(0, nh // 2 + 1):
                    for chosen in combinations(range(nh), 2 * k):
                        for m in perfect_matchings(list(chosen)):
                            inv = list(range(nh))
                            for a, b in m:
                                inv[a], inv[b] = b, a
                            g = Graph(nv, source, tuple(inv))
                            orders_sets = [[CyclicOrder((gr[0],) + p) for p in permutations(gr[1:])]
                                           for gr in groups]
                            for orders in product(*orders_sets):
                                rg = RibbonGraph(g, tuple(orders))
                                if rg.is_connected():
                                    yield rg


def oracle_type(rg):
    g = rg.graph
    rotation = {}
    for o in rg.orders:
        for i, h in enumerate(o):
            rotation[h] = o[(i + 1) % len(o)]
    pairing = {h: g.involution[h] for h in range(g.n_half_edges) if g.involution[h] != h}
    return surface_from_rotation(g.n_vertices, rotation, pairing, list(range(g.n_half_edges)))


def test_euler_characteristic_exhaustive():
    n = 0
    for rg in all_ribbon_graphs(6):
        st_ = surface_type(rg)
        genus, boundary = oracle_type(rg)
        assert (st_.genus, list(st_.boundary)) == (genus, boundary)
        assert sum(st_.boundary) == len(rg.graph.legs())
        n += 1
    assert n > 1000


def random_ribbon(rng, max_vertices=4, max_half_edges=8):
    while True:
        nv = rng.randint(1, max_vertices)
        nh = rng.randint(nv, max_half_edges)
        source = [rng.randrange(nv) for _ in range(nh)]
        if any(v not in source for v in range(nv)):
            continue
        hs = list(range(nh))
        rng.shuffle(hs)
        inv = list(range(nh))
        for k in range(rng.randint(0, nh // 2)):
            a, b = hs[2 * k], hs[2 * k + 1]
            inv[a], inv[b] = b, a
        orders = []
        for v in range(nv):
            mine = [h for h in range(nh) if source[h] == v]
            rng.shuffle(mine)
            orders.append(CyclicOrder(mine))
        rg = RibbonGraph(Graph(nv, tuple(source), tuple(inv)), tuple(orders))
        if rg.is_connected():
            return rg


def relabel(rg, rng):
    g = rg.graph
    hp = list(range(g.n_half_edges))
    vp = list(range(g.n_vertices))
    rng.shuffle(hp)
    rng.shuffle(vp)
    src = [0] * g.n_half_edges
    inv = [0] * g.n_half_edges
    for h in range(g.n_half_edges):
        src[hp[h]] = vp[g.source[h]]
        inv[hp[h]] = hp[g.involution[h]]
    orders = [None] * g.n_vertices
    for v, o in enumerate(rg.orders):
        orders[vp[v]] = CyclicOrder(hp[h] for h in o)
    return RibbonGraph(Graph(g.n_vertices, tuple(src), tuple(inv)), tuple(orders))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_random_surfaces_match_oracle(seed):
    rg = random_ribbon(random.Random(seed))
    st_ = surface_type(rg)
    assert (st_.genus, list(st_.boundary)) == oracle_type(rg)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_canonical_form_invariance(seed):
    rng = random.Random(seed)
    rg = random_ribbon(rng)
    c = canonical_ribbon(rg)
    assert canonical_ribbon(c) == c
    assert canonical_ribbon(relabel(rg, rng)) == c
    assert surface_type(c) == surface_type(rg)


def test_canonical_form_separates():
    tor, pants = load("torus_one_hole"), load("pants")
    assert canonical_ribbon(tor) != canonical_ribbon(pants)
    # one vertex, six half-edges, two loops and two legs: adjacent vs interleaved loops
    a = one_vertex((0, 1, 2, 3, 4, 5), [(0, 1), (2, 3)])
    b = one_vertex((0, 1, 2, 3, 4, 5), [(0, 2), (1, 3)])
    assert canonical_ribbon(a) != canonical_ribbon(b)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_cut_and_reglue(seed):
    rng = random.Random(seed)
    rg = random_ribbon(rng)
    edges = rg.graph.edges()
    if not edges:
        return
    a, b = rng.choice(edges)
    cut = cut_edge(rg, a)
    assert rg.graph.is_leg(a) is False and cut.graph.is_leg(a) and cut.graph.is_leg(b)
    assert cut.glue(a, b) == rg
    assert surface_type(cut.glue(a, b)) == surface_type(rg)


def test_cut_edge_rejects_legs():
    with pytest.raises(InvalidInput):
        cut_edge(one_vertex((0, 1), []), 0)


def test_json_round_trip_and_errors():
    rg, ids = ribbon_from_json(json.loads((FIX / "torus_one_hole.json").read_text()))
    again, ids2 = ribbon_from_json(ribbon_to_json(rg, ids))
    assert again == rg and ids2 == ids
    for name in ("bad_ribbon_missing_orders", "bad_ribbon_wrong_order"):
        with pytest.raises(InvalidInput):
            ribbon_from_json(json.loads((FIX / f"{name}.json").read_text()))
