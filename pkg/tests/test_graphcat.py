import random

import pytest
from hypothesis import given, settings, strategies as st

from opencorr.errors import InvalidInput, NotALeg, ObjectMismatch
from opencorr.graphcat import (Graph, GraphMorphism, Identification, components, compose, contract_all, corolla,
                               cut_all, disjoint_union, equivalent_morphisms, first_betti,
                               graph_from_json, graph_to_json, identity_morphism, is_forest, iso,
                               morphism_from_graph, glue)


def union(*gs):
    out = gs[0]
    for g in gs[1:]:
        out = disjoint_union(out, g)
    return out


def two_corollas_edge():
    return glue(union(corolla(3), corolla(3)), 0, 3)


def loop():
    return glue(corolla(2), 0, 1)


def theta():
    g = union(corolla(3), corolla(3))
    for a, b in ((0, 3), (1, 4), (2, 5)):
        g = glue(g, a, b)
    return g


def test_corolla():
    assert corolla(3).legs() == [0, 1, 2] and corolla(3).n_vertices == 1
    assert corolla(0).n_half_edges == 0 and corolla(0).n_vertices == 1
    assert len(corolla(5).legs()) == 5
    with pytest.raises(InvalidInput):
        corolla(-1)


def test_glue():
    g = two_corollas_edge()
    assert len(g.edges()) == 1 and first_betti(g) == 0
    assert first_betti(loop()) == 1
    with pytest.raises(NotALeg):
        glue(corolla(2), 1, 1)
    with pytest.raises(NotALeg):
        glue(loop(), 0, 1)
    with pytest.raises(NotALeg):
        glue(corolla(2), 0, 5)


def test_cut_and_contract():
    g = two_corollas_edge()
    c = contract_all(g)
    assert c.n_vertices == 1 and len(c.legs()) == 4
    assert iso(cut_all(g), union(corolla(3), corolla(3))) is not None
    assert contract_all(corolla(4)) == corolla(4)
    for h in (g, loop(), theta()):
        assert cut_all(cut_all(h)) == cut_all(h)
        assert contract_all(contract_all(h)) == contract_all(h)


def test_forests_and_betti():
    assert is_forest(corolla(3))
    assert not is_forest(loop())
    assert is_forest(two_corollas_edge())
    assert first_betti(theta()) == 2
    assert first_betti(disjoint_union(theta(), loop())) == 3


def test_invalid_graphs():
    with pytest.raises(InvalidInput):
        Graph(1, (0, 0), (1, 1))
    with pytest.raises(InvalidInput):
        Graph(1, (0, 2), (0, 1))


def test_iso_examples():
    i = iso(corolla(3), corolla(3))
    assert i == Identification((0, 1, 2), (0,))
    assert iso(corolla(3), corolla(4)) is None
    assert iso(loop(), glue(union(corolla(1), corolla(1)), 0, 1)) is None


def random_graph(rng, n_vertices, n_half_edges):
    src = [rng.randrange(n_vertices) for _ in range(n_half_edges)]
    hs = list(range(n_half_edges))
    rng.shuffle(hs)
    inv = list(range(n_half_edges))
    for k in range(rng.randrange(n_half_edges // 2 + 1)):
        a, b = hs[2 * k], hs[2 * k + 1]
        inv[a], inv[b] = b, a
    return Graph(n_vertices, tuple(src), tuple(inv))


def relabel(g, rng):
    hp = list(range(g.n_half_edges))
    vp = list(range(g.n_vertices))
    rng.shuffle(hp)
    rng.shuffle(vp)
    src = [0] * g.n_half_edges
    inv = [0] * g.n_half_edges
    for h in range(g.n_half_edges):
        src[hp[h]] = vp[g.source[h]]
        inv[hp[h]] = hp[g.involution[h]]
    return Graph(g.n_vertices, tuple(src), tuple(inv))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(0, 9))
def test_iso_finds_relabelings(seed, nv, nh):
    rng = random.Random(seed)
    g = random_graph(rng, nv, nh)
    h = relabel(g, rng)
    phi = iso(g, h)
    assert phi is not None and phi.commutes(g, h)
    assert iso(g, h) == phi     # deterministic
    assert phi.inverse().commutes(h, g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_betti_and_forest_invariants(seed):
    rng = random.Random(seed)
    a = random_graph(rng, rng.randint(1, 4), rng.randint(0, 8))
    b = random_graph(rng, rng.randint(1, 4), rng.randint(0, 8))
    assert first_betti(disjoint_union(a, b)) == first_betti(a) + first_betti(b)
    for g in (a, b):
        assert all(g.involution[g.involution[h]] == h for h in range(g.n_half_edges))
        # forest iff every component has one fewer edge than vertices
        comp = components(g)
        ok = True
        for c in set(comp):
            vs = [v for v in range(g.n_vertices) if comp[v] == c]
            es = [e for e in g.edges() if comp[g.source[e[0]]] == c]
            ok &= len(es) == len(vs) - 1
        assert is_forest(g) == ok


# ---------------------------------------------------------------- morphisms

def random_forest_gluing(rng, obj):
    """Glue random pairs of legs lying in different components (keeps a forest)."""
    g = obj
    for _ in range(rng.randint(0, 3)):
        legs = g.legs()
        comp = components(g)
        pairs = [(a, b) for a in legs for b in legs if a < b and comp[g.source[a]] != comp[g.source[b]]]
        if not pairs:
            break
        a, b = rng.choice(pairs)
        g = glue(g, a, b)
    return g


def random_object(rng, n):
    return union(*[corolla(rng.randint(1, 3)) for _ in range(n)])


def chain(seed):
    rng = random.Random(seed)
    s = random_object(rng, rng.randint(1, 8))
    f = morphism_from_graph(random_forest_gluing(rng, s))
    g = morphism_from_graph(random_forest_gluing(rng, f.target))
    h = morphism_from_graph(random_forest_gluing(rng, g.target))
    return f, g, h


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_compose_associative_on_forests(seed):
    f, g, h = chain(seed)
    left = compose(compose(f, g), h)
    right = compose(f, compose(g, h))
    assert is_forest(left.graph)
    assert left.n_internal_edges == f.n_internal_edges + g.n_internal_edges + h.n_internal_edges
    assert equivalent_morphisms(left, right)
    assert iso(left.graph, right.graph) is not None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_unit_laws(seed):
    f, _, _ = chain(seed)
    assert equivalent_morphisms(compose(identity_morphism(f.source), f), f)
    assert equivalent_morphisms(compose(f, identity_morphism(f.target)), f)


def test_two_gluings_compose_to_two_edge_graph():
    s = union(corolla(2), corolla(2), corolla(2))
    f = morphism_from_graph(glue(s, 1, 2))
    t = f.target
    g = morphism_from_graph(glue(t, 1, 2))
    comp = compose(f, g)
    direct = glue(glue(s, 1, 2), 3, 4)
    assert comp.graph == direct
    assert comp.n_internal_edges == 2
    assert iso(comp.target, contract_all(direct)) is not None


def test_edge_count_additivity_with_loops():
    s = union(corolla(2), corolla(2))
    f = morphism_from_graph(glue(s, 1, 2))            # one edge
    g = morphism_from_graph(glue(glue(union(f.target, corolla(2)), 0, 1), 2, 3))
    with pytest.raises(ObjectMismatch):
        compose(f, g)
    g = morphism_from_graph(glue(f.target, 0, 1))     # self-gluing: a loop
    m = compose(f, g)
    assert m.n_internal_edges == 2 and first_betti(m.graph) == 1


def test_compose_through_identification():
    s = union(corolla(1), corolla(2), corolla(2))
    f = morphism_from_graph(glue(s, 0, 1))
    rng = random.Random(3)
    t = relabel(f.target, rng)
    while t == f.target:
        t = relabel(f.target, rng)
    comp = components(t)
    a, b = next((a, b) for a in t.legs() for b in t.legs() if comp[t.source[a]] != comp[t.source[b]])
    m = compose(f, morphism_from_graph(glue(t, a, b)))
    assert m.n_internal_edges == 2 and is_forest(m.graph)
    assert m.target.n_vertices == 1 and len(m.target.legs()) == 1


def test_morphism_validation():
    g = two_corollas_edge()
    with pytest.raises(InvalidInput):
        GraphMorphism(g, contract_all(g), g, Identification.identity(g), Identification.identity(contract_all(g)))
    bad = Identification((1, 0, 2, 3, 4, 5), (1, 0))
    with pytest.raises(InvalidInput):
        GraphMorphism(cut_all(g), contract_all(g), g, bad, Identification.identity(contract_all(g)))


def test_json_round_trip():
    doc = {"vertices": 2, "half_edges": [{"id": "a", "vertex": 0}, {"id": "b", "vertex": 1},
                                         {"id": "c", "vertex": 1}], "pairs": [["a", "b"]]}
    g, ids = graph_from_json(doc)
    assert ids == ["a", "b", "c"] and g.legs() == [2]
    assert graph_to_json(g, ids) == doc
    for bad in ({"vertices": 1}, {"vertices": -1, "half_edges": []},
                {"vertices": 1, "half_edges": [{"id": [1], "vertex": 0}]},
                {"vertices": 1, "half_edges": [{"id": 0, "vertex": 0}], "pairs": [[0, 0]]}):
        with pytest.raises(InvalidInput):
            graph_from_json(bad)
