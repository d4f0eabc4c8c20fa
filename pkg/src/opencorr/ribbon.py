"""Cyclic orders, ribbon graphs and their surface types.

The operations of the cyclic associative operad on ``n`` labelled legs are the
cyclic orders of the legs.  Gluing corollas carrying cyclic orders gives a
ribbon graph, which is an operation of the modular envelope; its thickening is
an open surface whose boundary circles carry the legs as marked intervals.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Mapping, Sequence

from .errors import Disconnected, HalfEdgeNotFound, InvalidInput, NonIntegralGenus
from .graphcat import Graph, components, glue, graph_from_json, graph_to_json

__all__ = [
    "CyclicOrder", "RibbonGraph", "SurfaceType", "as_operations", "as_compose",
    "boundary_walk", "surface_type", "canonical_ribbon", "ribbon_from_json",
    "ribbon_to_json", "cut_edge",
]


def _min_rotation(seq: Sequence) -> tuple:
    if not seq:
        return ()
    seq = tuple(seq)
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


class CyclicOrder(tuple):
    """A cyclic sequence of distinct ids, stored as its least rotation."""

    def __new__(cls, items: Sequence = ()):
        items = tuple(items)
        if len(set(items)) != len(items):
            raise InvalidInput("cyclic order has repeated entries")
        return super().__new__(cls, _min_rotation(items))

    def successor(self, x):
        i = self.index(x)
        return self[(i + 1) % len(self)]

    def read_after(self, x) -> tuple:
        """The other entries, read cyclically starting just after ``x``."""
        i = self.index(x)
        return self[i + 1:] + self[:i]

    def relabel(self, mapping: Mapping) -> "CyclicOrder":
        return CyclicOrder(mapping[x] for x in self)


def as_operations(n: int) -> list[CyclicOrder]:
    """All cyclic orders on legs ``0..n-1``, in lexicographic order."""
    if n < 1:
        raise InvalidInput("the associative operad has operations in arity >= 1")
    return [CyclicOrder((0,) + p) for p in permutations(range(1, n))]


def as_compose(a, b, ord1: CyclicOrder, ord2: CyclicOrder) -> CyclicOrder:
    """Glue leg ``a`` of ``ord1`` to leg ``b`` of ``ord2``."""
    if a not in ord1:
        raise HalfEdgeNotFound(f"{a!r} not in {ord1!r}")
    if b not in ord2:
        raise HalfEdgeNotFound(f"{b!r} not in {ord2!r}")
    if set(ord1) & set(ord2):
        raise InvalidInput("orders to be spliced must be disjoint")
    return CyclicOrder(ord2.read_after(b) + ord1.read_after(a))


# ---------------------------------------------------------------- ribbon graphs

@dataclass(frozen=True)
class RibbonGraph:
    graph: Graph
    orders: tuple[CyclicOrder, ...]     # one per vertex

    def __post_init__(self):
        if len(self.orders) != self.graph.n_vertices:
            raise InvalidInput("need one cyclic order per vertex")
        for v, o in enumerate(self.orders):
            if sorted(o) != self.graph.half_edges_at(v):
                raise InvalidInput(f"cyclic order at vertex {v} does not list its half-edges exactly once")

    def sigma(self, h: int) -> int:
        return self.orders[self.graph.source[h]].successor(h)

    def is_connected(self) -> bool:
        comp = components(self.graph)
        return len(set(comp)) <= 1

    def glue(self, h1: int, h2: int) -> "RibbonGraph":
        return RibbonGraph(glue(self.graph, h1, h2), self.orders)


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    boundary: tuple[int, ...]           # marked intervals per circle, sorted

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundary": list(self.boundary)}


def boundary_walk(rg: RibbonGraph) -> list[list[int]]:
    """Orbits of ``h -> sigma(involution(h))``, each starting at its least element."""
    if not rg.is_connected():
        raise Disconnected("boundary walk needs a connected ribbon graph")
    inv = rg.graph.involution
    seen: set[int] = set()
    orbits = []
    for start in range(rg.graph.n_half_edges):
        if start in seen:
            continue
        orbit, h = [], start
        while h not in seen:
            seen.add(h)
            orbit.append(h)
            h = rg.sigma(inv[h])
        orbits.append(orbit)
    return orbits


def surface_type(rg: RibbonGraph) -> SurfaceType:
    g = rg.graph
    if g.n_vertices == 0:
        raise Disconnected("empty ribbon graph")
    orbits = boundary_walk(rg)
    if not orbits:
        # a lone vertex without half-edges thickens to a disk with no intervals
        orbits = [[]]
    boundary = tuple(sorted(sum(1 for h in o if g.is_leg(h)) for o in orbits))
    chi = g.n_vertices - len(g.edges())
    twice_genus = 2 - chi - len(boundary)
    if twice_genus < 0 or twice_genus % 2:
        raise NonIntegralGenus(f"chi={chi}, boundary circles={len(boundary)}")
    return SurfaceType(twice_genus // 2, boundary)


def cut_edge(rg: RibbonGraph, h: int) -> RibbonGraph:
    g = rg.graph
    k = g.involution[h]
    if k == h:
        raise InvalidInput(f"half-edge {h} is a leg")
    inv = list(g.involution)
    inv[h], inv[k] = h, k
    return RibbonGraph(Graph(g.n_vertices, g.source, tuple(inv)), rg.orders)


# ---------------------------------------------------------------- canonical form

def _traverse(rg: RibbonGraph, start: int):
    """Relabel the component of ``start`` breadth-first.

    Entering a vertex at half-edge ``h`` numbers its half-edges in cyclic order
    from ``h``; partners are entered in the order their half-edges were numbered.
    """
    g = rg.graph
    label: dict[int, int] = {}
    vorder: list[int] = []
    queue = [start]
    qi = 0
    while qi < len(queue):
        entry = queue[qi]
        qi += 1
        v = g.source[entry]
        if v in vorder:
            continue
        vorder.append(v)
        o = rg.orders[v]
        i = o.index(entry)
        for h in o[i:] + o[:i]:
            label[h] = len(label)
        for h in o[i:] + o[:i]:
            k = g.involution[h]
            if k != h and g.source[k] not in vorder:
                queue.append(k)
    inv_label = sorted(label, key=label.get)
    code = (
        tuple(len(rg.orders[v]) for v in vorder),
        tuple(label[g.involution[h]] for h in inv_label),
    )
    return code, label, vorder


def canonical_ribbon(rg: RibbonGraph) -> RibbonGraph:
    """Relabelling under which isomorphic ribbon graphs become equal.

    Each component is traversed from every leg (or every half-edge if it has no
    legs); the lexicographically least traversal code wins.  Components are
    then listed in order of their codes.
    """
    g = rg.graph
    comp = components(g)
    pieces = []
    for c in sorted(set(comp)):
        verts = [v for v in range(g.n_vertices) if comp[v] == c]
        hes = [h for h in range(g.n_half_edges) if comp[g.source[h]] == c]
        if not hes:
            pieces.append((((0,), ()), {}, verts))
            continue
        legs = [h for h in hes if g.is_leg(h)]
        starts = legs or hes
        best = min((_traverse(rg, s) for s in starts), key=lambda t: t[0])
        pieces.append(best)
    pieces.sort(key=lambda p: p[0])
    source, inv, orders = [], [], []
    h_off = 0
    for code, label, vorder in pieces:
        sizes, partners = code
        for vi, size in enumerate(sizes):
            vid = len(orders)
            orders.append(CyclicOrder(range(h_off + sum(sizes[:vi]), h_off + sum(sizes[:vi]) + size)))
            source.extend([vid] * size)
        inv.extend(h_off + p for p in partners)
        h_off += sum(sizes)
    return RibbonGraph(Graph(len(orders), tuple(source), tuple(inv)), tuple(orders))


# ---------------------------------------------------------------- JSON

def ribbon_from_json(doc) -> tuple[RibbonGraph, list]:
    g, ids = graph_from_json(doc)
    orders_doc = doc.get("orders")
    if not isinstance(orders_doc, dict):
        raise InvalidInput("ribbon graph document needs an 'orders' object")
    index = {h: i for i, h in enumerate(ids)}
    orders = []
    for v in range(g.n_vertices):
        seq = orders_doc.get(str(v), [] if not g.half_edges_at(v) else None)
        if not isinstance(seq, list):
            raise InvalidInput(f"missing cyclic order for vertex {v}")
        try:
            orders.append(CyclicOrder(index[h] for h in seq))
        except (KeyError, TypeError):
            raise InvalidInput(f"cyclic order at vertex {v} names an unknown half-edge") from None
    extra = set(orders_doc) - {str(v) for v in range(g.n_vertices)}
    if extra:
        raise InvalidInput(f"orders given for unknown vertices {sorted(extra)}")
    return RibbonGraph(g, tuple(orders)), ids


def ribbon_to_json(rg: RibbonGraph, ids: Sequence | None = None) -> dict:
    ids = list(range(rg.graph.n_half_edges)) if ids is None else list(ids)
    doc = graph_to_json(rg.graph, ids)
    doc["orders"] = {str(v): [ids[h] for h in o] for v, o in enumerate(rg.orders)}
    return doc
