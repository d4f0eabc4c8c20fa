"""Half-edge graphs and the categories of graphs and forests.

A graph is a set of half-edges ``0..H-1``, a set of vertices ``0..V-1``, a
source map and an involution; the fixed points of the involution are the legs
and the 2-cycles are the internal edges.  Objects of the graph categories are
disjoint unions of corollas (graphs without internal edges).  A morphism
``S -> T`` is a graph together with an identification of ``S`` with the graph
cut open along all internal edges and an identification of ``T`` with the graph
with all internal edges contracted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InvalidInput, NotALeg, ObjectMismatch

__all__ = [
    "Graph", "Identification", "GraphMorphism", "corolla", "disjoint_union",
    "glue", "cut_all", "contract_all", "contract_all_with_maps", "components",
    "first_betti", "is_forest", "iso", "identity_morphism", "morphism_from_graph",
    "compose", "equivalent_morphisms", "graph_from_json", "graph_to_json",
]


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    source: tuple[int, ...]
    involution: tuple[int, ...]

    def __post_init__(self):
        h = len(self.source)
        if len(self.involution) != h:
            raise InvalidInput("source and involution have different lengths")
        for i, v in enumerate(self.source):
            if not 0 <= v < self.n_vertices:
                raise InvalidInput(f"half-edge {i} has source {v} out of range")
        for i, j in enumerate(self.involution):
            if not 0 <= j < h or self.involution[j] != i:
                raise InvalidInput("involution is not an involution")

    @property
    def n_half_edges(self) -> int:
        return len(self.source)

    def legs(self) -> list[int]:
        return [h for h, k in enumerate(self.involution) if h == k]

    def edges(self) -> list[tuple[int, int]]:
        return [(h, k) for h, k in enumerate(self.involution) if h < k]

    def is_leg(self, h: int) -> bool:
        return self.involution[h] == h

    def half_edges_at(self, v: int) -> list[int]:
        return [h for h, s in enumerate(self.source) if s == v]

    def degree(self, v: int) -> int:
        return sum(1 for s in self.source if s == v)

    def leg_count(self, v: int) -> int:
        return sum(1 for h, s in enumerate(self.source) if s == v and self.involution[h] == h)


def corolla(n: int) -> Graph:
    if n < 0:
        raise InvalidInput("corolla arity must be nonnegative")
    return Graph(1, (0,) * n, tuple(range(n)))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    ho, vo = a.n_half_edges, a.n_vertices
    return Graph(
        a.n_vertices + b.n_vertices,
        a.source + tuple(v + vo for v in b.source),
        a.involution + tuple(h + ho for h in b.involution),
    )


def glue(g: Graph, h1: int, h2: int) -> Graph:
    if h1 == h2:
        raise NotALeg("cannot glue a half-edge to itself")
    for h in (h1, h2):
        if not 0 <= h < g.n_half_edges:
            raise NotALeg(f"half-edge {h} does not exist")
        if not g.is_leg(h):
            raise NotALeg(f"half-edge {h} is already paired")
    inv = list(g.involution)
    inv[h1], inv[h2] = h2, h1
    return Graph(g.n_vertices, g.source, tuple(inv))


def cut_all(g: Graph) -> Graph:
    return Graph(g.n_vertices, g.source, tuple(range(g.n_half_edges)))


def components(g: Graph) -> list[int]:
    """Component index of each vertex; components numbered by least vertex."""
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h, k in g.edges():
        a, b = find(g.source[h]), find(g.source[k])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots, comp = {}, []
    for v in range(g.n_vertices):
        r = find(v)
        comp.append(roots.setdefault(r, len(roots)))
    return comp


def contract_all_with_maps(g: Graph) -> tuple[Graph, dict[int, int], list[int]]:
    """Contract every internal edge.

    Returns the resulting corolla union, the map from legs of ``g`` to its
    half-edges, and the map from vertices of ``g`` to its vertices.
    """
    comp = components(g)
    legs = g.legs()
    leg_map = {h: i for i, h in enumerate(legs)}
    n_comp = max(comp) + 1 if comp else 0
    out = Graph(n_comp, tuple(comp[g.source[h]] for h in legs), tuple(range(len(legs))))
    return out, leg_map, comp


def contract_all(g: Graph) -> Graph:
    return contract_all_with_maps(g)[0]


def first_betti(g: Graph) -> int:
    comp = components(g)
    n_comp = max(comp) + 1 if comp else 0
    return len(g.edges()) - g.n_vertices + n_comp


def is_forest(g: Graph) -> bool:
    return first_betti(g) == 0


# ---------------------------------------------------------------- identifications

@dataclass(frozen=True)
class Identification:
    """Bijections ``half_edges[h]`` and ``vertices[v]`` from one graph to another."""
    half_edges: tuple[int, ...]
    vertices: tuple[int, ...]

    def commutes(self, a: Graph, b: Graph) -> bool:
        if a.n_half_edges != b.n_half_edges or a.n_vertices != b.n_vertices:
            return False
        if len(self.half_edges) != a.n_half_edges or len(self.vertices) != a.n_vertices:
            return False
        if sorted(self.half_edges) != list(range(b.n_half_edges)):
            return False
        if sorted(self.vertices) != list(range(b.n_vertices)):
            return False
        for h in range(a.n_half_edges):
            if b.source[self.half_edges[h]] != self.vertices[a.source[h]]:
                return False
            if b.involution[self.half_edges[h]] != self.half_edges[a.involution[h]]:
                return False
        return True

    def inverse(self) -> "Identification":
        he = [0] * len(self.half_edges)
        for i, j in enumerate(self.half_edges):
            he[j] = i
        vs = [0] * len(self.vertices)
        for i, j in enumerate(self.vertices):
            vs[j] = i
        return Identification(tuple(he), tuple(vs))

    def then(self, other: "Identification") -> "Identification":
        return Identification(
            tuple(other.half_edges[h] for h in self.half_edges),
            tuple(other.vertices[v] for v in self.vertices),
        )

    @staticmethod
    def identity(g: Graph) -> "Identification":
        return Identification(tuple(range(g.n_half_edges)), tuple(range(g.n_vertices)))


def iso(g1: Graph, g2: Graph) -> Optional[Identification]:
    """First identification ``g1 -> g2`` in lexicographic backtracking order, or None."""
    if (g1.n_half_edges, g1.n_vertices, len(g1.legs())) != (g2.n_half_edges, g2.n_vertices, len(g2.legs())):
        return None
    sig1 = [(g1.degree(v), g1.leg_count(v)) for v in range(g1.n_vertices)]
    sig2 = [(g2.degree(v), g2.leg_count(v)) for v in range(g2.n_vertices)]
    if sorted(sig1) != sorted(sig2):
        return None

    order = sorted(range(g1.n_half_edges), key=lambda h: (g1.source[h], h))
    hmap: dict[int, int] = {}
    used: set[int] = set()
    vmap: dict[int, int] = {}
    vused: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        h = order[i]
        v = g1.source[h]
        for k in range(g2.n_half_edges):
            if k in used or g1.is_leg(h) != g2.is_leg(k):
                continue
            w = g2.source[k]
            new_vertex = v not in vmap
            if new_vertex:
                if w in vused or sig1[v] != sig2[w]:
                    continue
            elif vmap[v] != w:
                continue
            partner = g1.involution[h]
            if partner != h and partner in hmap and hmap[partner] != g2.involution[k]:
                continue
            if partner != h and partner not in hmap and g2.involution[k] in used:
                continue
            hmap[h] = k
            used.add(k)
            if new_vertex:
                vmap[v] = w
                vused.add(w)
            if extend(i + 1):
                return True
            del hmap[h]
            used.discard(k)
            if new_vertex:
                del vmap[v]
                vused.discard(w)
        return False

    if not extend(0):
        return None
    # vertices without half-edges: match in order
    free1 = [v for v in range(g1.n_vertices) if v not in vmap]
    free2 = [w for w in range(g2.n_vertices) if w not in vused]
    for v, w in zip(free1, free2):
        vmap[v] = w
    ident = Identification(
        tuple(hmap[h] for h in range(g1.n_half_edges)),
        tuple(vmap[v] for v in range(g1.n_vertices)),
    )
    assert ident.commutes(g1, g2)
    return ident


# ---------------------------------------------------------------- morphisms

@dataclass(frozen=True)
class GraphMorphism:
    """A morphism ``source -> target`` carried by ``graph``.

    ``cut_id`` identifies ``source`` with ``cut_all(graph)``; ``contract_id``
    identifies ``target`` with ``contract_all(graph)``.
    """
    source: Graph
    target: Graph
    graph: Graph
    cut_id: Identification
    contract_id: Identification = field(repr=False)

    def __post_init__(self):
        for obj in (self.source, self.target):
            if obj.edges():
                raise InvalidInput("morphism endpoints must be disjoint unions of corollas")
        if not self.cut_id.commutes(self.source, cut_all(self.graph)):
            raise InvalidInput("cut identification does not commute with the structure maps")
        if not self.contract_id.commutes(self.target, contract_all(self.graph)):
            raise InvalidInput("contract identification does not commute with the structure maps")

    @property
    def n_internal_edges(self) -> int:
        return len(self.graph.edges())


def morphism_from_graph(g: Graph) -> GraphMorphism:
    """The morphism ``cut_all(g) -> contract_all(g)`` with identity identifications."""
    s, t = cut_all(g), contract_all(g)
    return GraphMorphism(s, t, g, Identification.identity(s), Identification.identity(t))


def identity_morphism(obj: Graph) -> GraphMorphism:
    if obj.edges():
        raise InvalidInput("identities exist only on disjoint unions of corollas")
    return morphism_from_graph(obj)


def compose(f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """``g . f``: insert the components of f's graph into the vertices of g's graph."""
    bridge = iso(f.target, g.source) if f.target != g.source else Identification.identity(f.target)
    if bridge is None:
        raise ObjectMismatch("codomain of the first morphism is not the domain of the second")
    gf, gg = f.graph, g.graph
    _, f_leg_map, f_comp = contract_all_with_maps(gf)
    f_legs = gf.legs()
    _, g_leg_map, g_comp = contract_all_with_maps(gg)
    g_legs = gg.legs()
    t_to_gg = bridge.then(g.cut_id)          # T -> cut_all(gg), same ids as gg
    gg_to_t = t_to_gg.inverse()
    t_from_f = f.contract_id.inverse()        # contract_all(gf) -> T

    def t_to_f_leg(t_he: int) -> int:
        return f_legs[f.contract_id.half_edges[t_he]]

    def f_leg_to_t(leg: int) -> int:
        return t_from_f.half_edges[f_leg_map[leg]]

    inv = list(gf.involution)
    for leg in f_legs:
        k = t_to_gg.half_edges[f_leg_to_t(leg)]
        partner = gg.involution[k]
        if partner != k:
            inv[leg] = t_to_f_leg(gg_to_t.half_edges[partner])
    composite = Graph(gf.n_vertices, gf.source, tuple(inv))

    _, c_leg_map, c_comp = contract_all_with_maps(composite)
    u_he = []
    for u in range(g.target.n_half_edges):
        k = g_legs[g.contract_id.half_edges[u]]
        u_he.append(c_leg_map[t_to_f_leg(gg_to_t.half_edges[k])])
    u_v = []
    for u in range(g.target.n_vertices):
        c = g.contract_id.vertices[u]
        w = g_comp.index(c)
        t_vertex = gg_to_t.vertices[w]
        f_component = f.contract_id.vertices[t_vertex]
        u_v.append(c_comp[f_comp.index(f_component)])
    return GraphMorphism(f.source, g.target, composite, f.cut_id,
                         Identification(tuple(u_he), tuple(u_v)))


def equivalent_morphisms(m1: GraphMorphism, m2: GraphMorphism) -> bool:
    """Whether two morphisms with equal endpoints are the same equivalence class.

    The cut identifications pin down every half-edge and vertex, so the only
    candidate identification of the underlying graphs is forced.
    """
    if m1.source != m2.source or m1.target != m2.target:
        return False
    phi = m1.cut_id.inverse().then(m2.cut_id)
    if not phi.commutes(m1.graph, m2.graph):
        return False
    c1, l1, comp1 = contract_all_with_maps(m1.graph)
    _, l2, comp2 = contract_all_with_maps(m2.graph)
    for u in range(m1.target.n_half_edges):
        leg1 = m1.graph.legs()[m1.contract_id.half_edges[u]]
        leg2 = m2.graph.legs()[m2.contract_id.half_edges[u]]
        if phi.half_edges[leg1] != leg2:
            return False
    for u in range(m1.target.n_vertices):
        v1 = comp1.index(m1.contract_id.vertices[u])
        if comp2[phi.vertices[v1]] != m2.contract_id.vertices[u]:
            return False
    return True


# ---------------------------------------------------------------- JSON

def graph_from_json(doc) -> tuple[Graph, list]:
    """Parse ``{"vertices", "half_edges": [{"id","vertex"}], "pairs"}``.

    Half-edge ids may be any JSON scalars; they are renumbered densely in the
    order given, and the original ids are returned alongside the graph.
    """
    if not isinstance(doc, dict):
        raise InvalidInput("graph document must be an object")
    try:
        k = doc["vertices"]
        hes = doc["half_edges"]
        pairs = doc.get("pairs", [])
    except KeyError as e:
        raise InvalidInput(f"graph document lacks {e.args[0]!r}") from None
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidInput("'vertices' must be a nonnegative integer")
    if not isinstance(hes, list) or not isinstance(pairs, list):
        raise InvalidInput("'half_edges' and 'pairs' must be lists")
    ids, source = [], []
    for he in hes:
        if not isinstance(he, dict) or "id" not in he or "vertex" not in he:
            raise InvalidInput("each half-edge needs 'id' and 'vertex'")
        v = he["vertex"]
        if not isinstance(he["id"], (int, str)) or isinstance(he["id"], bool):
            raise InvalidInput(f"half-edge id {he['id']!r} must be an integer or string")
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < k:
            raise InvalidInput(f"half-edge {he['id']!r} has bad vertex {v!r}")
        if he["id"] in ids:
            raise InvalidInput(f"duplicate half-edge id {he['id']!r}")
        ids.append(he["id"])
        source.append(v)
    index = {h: i for i, h in enumerate(ids)}
    inv = list(range(len(ids)))
    for p in pairs:
        if not isinstance(p, list) or len(p) != 2:
            raise InvalidInput("each pair must be a two-element list")
        a, b = p
        if not all(isinstance(x, (int, str)) and not isinstance(x, bool) for x in p) \
                or a not in index or b not in index:
            raise InvalidInput(f"pair {p!r} names an unknown half-edge")
        i, j = index[a], index[b]
        if i == j or inv[i] != i or inv[j] != j:
            raise InvalidInput(f"pair {p!r} is not a valid edge")
        inv[i], inv[j] = j, i
    return Graph(k, tuple(source), tuple(inv)), ids


def graph_to_json(g: Graph, ids: Sequence | None = None) -> dict:
    ids = list(range(g.n_half_edges)) if ids is None else list(ids)
    return {
        "vertices": g.n_vertices,
        "half_edges": [{"id": ids[h], "vertex": v} for h, v in enumerate(g.source)],
        "pairs": [[ids[h], ids[k]] for h, k in g.edges()],
    }
