"""Correlator vectors for open surfaces presented as a disk with sewings.

A disk with ``n`` marked intervals gets the vector dual to
``(x1, ..., xn) -> eps(x1 ... xn)``; sewing two intervals applies the sorting
map ``F (x) F -> C`` to the matching tensor factors, where ``C`` is the coend.

Slots are addressed by their 1-based position on the original disk.  After
sewing, the surviving ``F``-slots come first in their original order, followed
by one coend slot per sewing, in sewing order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .backends import Backend, HomSpace
from .errors import (InvalidInput, NotInSpan, SlotAlreadySewn, SlotOutOfRange)
from .exactla import Matrix, apply_to_axis, zeros_array
from .frobenius import FrobeniusData
from .graphcat import corolla
from .ribbon import CyclicOrder, RibbonGraph, SurfaceType, surface_type

__all__ = [
    "SurfacePresentation", "BlockVector", "SlotBijection", "disk_functional",
    "disk_correlator", "sew", "correlator", "check_cyclic_invariance",
    "check_sewing_consistency", "identify_with_product", "tensor_vectors",
    "rotate_presentation", "transport",
]


@dataclass(frozen=True)
class SurfacePresentation:
    n_free: int
    sewings: tuple = ()

    def __post_init__(self):
        if not isinstance(self.n_free, int) or isinstance(self.n_free, bool) or self.n_free < 0:
            raise InvalidInput("n_free must be a non-negative integer")
        pairs = tuple(tuple(p) for p in self.sewings)
        object.__setattr__(self, "sewings", pairs)
        n = self.n_total
        seen: set[int] = set()
        for p in pairs:
            if len(p) != 2 or any(not isinstance(i, int) or isinstance(i, bool) for i in p):
                raise InvalidInput(f"sewing {p!r} is not a pair of slot indices")
            for i in p:
                if not 1 <= i <= n:
                    raise SlotOutOfRange(f"slot {i} outside 1..{n}")
            if p[0] == p[1] or p[0] in seen or p[1] in seen:
                raise SlotAlreadySewn(f"sewing {p!r} reuses a slot")
            seen.update(p)

    @property
    def n_total(self) -> int:
        return self.n_free + 2 * len(self.sewings)

    def free_slots(self) -> list[int]:
        sewn = {i for p in self.sewings for i in p}
        return [i for i in range(1, self.n_total + 1) if i not in sewn]

    def ribbon(self) -> RibbonGraph:
        rg = RibbonGraph(corolla(self.n_total), (CyclicOrder(range(self.n_total)),))
        for i, j in self.sewings:
            rg = rg.glue(i - 1, j - 1)
        return rg

    def surface_type(self) -> SurfaceType:
        return surface_type(self.ribbon())

    @classmethod
    def from_json(cls, doc) -> "SurfacePresentation":
        if not isinstance(doc, dict) or "n_free" not in doc:
            raise InvalidInput("surface document needs 'n_free'")
        sew = doc.get("sewings", [])
        if not isinstance(sew, list) or any(not isinstance(p, list) for p in sew):
            raise InvalidInput("'sewings' must be a list of pairs")
        return cls(doc["n_free"], tuple(tuple(p) for p in sew))

    def to_json(self) -> dict:
        return {"n_free": self.n_free, "sewings": [list(p) for p in self.sewings]}


@dataclass(eq=False)
class BlockVector:
    """A vector in ``Hom(K, F^{(x) a} (x) C^{(x) m})`` kept as a dense tensor.

    ``slots`` lists ``("F", label)`` for interval slots and ``("C", k)`` for
    the coend slot created by the ``k``-th sewing.
    """
    data: FrobeniusData
    tensor: np.ndarray
    slots: tuple
    n_original: int
    sewn: frozenset = frozenset()
    _space: HomSpace | None = field(default=None, repr=False)

    @property
    def backend(self) -> Backend:
        return self.data.backend

    def free_labels(self) -> list[int]:
        return [lab for kind, lab in self.slots if kind == "F"]

    def target(self):
        b = self.backend
        out = b.unit()
        for kind, _ in self.slots:
            out = b.tensor(out, self.data.F if kind == "F" else b.coend())
        return out

    def space(self) -> HomSpace:
        if self._space is None:
            self._space = self.backend.hom(self.backend.dualizing(), self.target())
        return self._space

    @property
    def basis_dim(self) -> int:
        return self.space().dim

    def coords(self) -> list:
        c = self.space().coords(self.tensor.reshape(-1))
        if c is None:
            raise NotInSpan("correlator vector is not a morphism out of K")
        return c

    def __eq__(self, other):
        if not isinstance(other, BlockVector):
            return NotImplemented
        return self.slots == other.slots and self.tensor.shape == other.tensor.shape \
            and bool(np.all(self.tensor == other.tensor))

    __hash__ = None


# ---------------------------------------------------------------- disks

def disk_functional(data: FrobeniusData, n: int) -> np.ndarray:
    """Values ``eps(e_a1 ... e_an)`` on all basis tuples, as an ``n``-tensor."""
    if n < 0:
        raise InvalidInput("number of intervals must be non-negative")
    eps = data.counit()
    d = data.dim
    field = data.backend.field
    if n == 0:
        return np.array(np.dot(eps, data.eta.matrix.a[:, 0]), dtype=object)
    mu = data.mu.matrix.a.reshape(d, d, d)     # mu[k, a, b]: coefficient of e_k in e_a e_b
    terms = [(k, a, c, mu[k, a, c]) for k, a, c in np.ndindex(d, d, d) if mu[k, a, c] != 0]
    # prod[a1, ..., am, k]: coefficient of e_k in e_a1 ... e_am
    prod = zeros_array(field, (d, d))
    for a in range(d):
        prod[a, a] = field.one
    for _ in range(n - 1):
        nxt = zeros_array(field, prod.shape[:-1] + (d, d))
        written = set()
        for k, a, c, val in terms:
            src = prod[..., a] if val == 1 else prod[..., a] * val
            if (c, k) in written:
                nxt[..., c, k] = nxt[..., c, k] + src
            else:
                nxt[..., c, k] = src
                written.add((c, k))
        prod = nxt
    out = None
    for k in range(d):
        if eps[k] != 0:
            term = prod[..., k] if eps[k] == 1 else prod[..., k] * eps[k]
            out = term if out is None else out + term
    return zeros_array(field, prod.shape[:-1]) if out is None else out


def disk_correlator(b: Backend, data: FrobeniusData, n: int) -> BlockVector:
    omega = disk_functional(data, n)
    if n == 0:
        t = omega.reshape(())
    else:
        C = Matrix(b.field, data.copairing().copy())
        t = omega
        for axis in range(n):
            t = apply_to_axis(t, C, axis)
    return BlockVector(data, t, tuple(("F", i) for i in range(1, n + 1)), n)


def sew(b: Backend, data: FrobeniusData, v: BlockVector, i: int, j: int) -> BlockVector:
    for s in (i, j):
        if not isinstance(s, int) or not 1 <= s <= v.n_original:
            raise SlotOutOfRange(f"slot {s} outside 1..{v.n_original}")
        if s in v.sewn:
            raise SlotAlreadySewn(f"slot {s} is already sewn")
    if i == j:
        raise SlotAlreadySewn(f"cannot sew slot {i} to itself")
    ai, aj = v.slots.index(("F", i)), v.slots.index(("F", j))
    d = data.dim
    S = b.sorting_map(data).matrix
    # bring the two slots to the front, merge them, sort into the coend, move the result last
    t = np.moveaxis(v.tensor, [ai, aj], [0, 1])
    t = t.reshape((d * d,) + t.shape[2:])
    t = np.moveaxis(apply_to_axis(t, S, 0), 0, -1)
    n_sew = sum(1 for kind, _ in v.slots if kind == "C")
    slots = tuple(s for k, s in enumerate(v.slots) if k not in (ai, aj)) + (("C", n_sew + 1),)
    return BlockVector(data, t, slots, v.n_original, v.sewn | {i, j})


def correlator(b: Backend, data: FrobeniusData, s: SurfacePresentation) -> BlockVector:
    v = disk_correlator(b, data, s.n_total)
    for i, j in s.sewings:
        v = sew(b, data, v, i, j)
    return v


def check_cyclic_invariance(b: Backend, data: FrobeniusData, n: int) -> bool:
    if n < 1:
        raise InvalidInput("cyclic invariance needs n >= 1")
    omega = disk_functional(data, n)
    return bool(np.all(omega == np.moveaxis(omega, -1, 0)))


def identify_with_product(data: FrobeniusData, v: BlockVector) -> Matrix:
    """Contract the first ``n-1`` slots of a disk vector with the pairing.

    For the disk with ``n`` intervals the result is the matrix of the
    left-to-right ``(n-1)``-fold product ``F^{(x) n-1} -> F``.
    """
    B = Matrix(data.backend.field, data.pairing().copy())
    t = v.tensor
    n = t.ndim
    if n == 0:
        raise InvalidInput("the empty disk has no slots to contract")
    for axis in range(n - 1):
        t = apply_to_axis(t, B, axis)
    d = data.dim
    return Matrix(data.backend.field, np.moveaxis(t, -1, 0).reshape(d, d ** (n - 1)).copy())


# ---------------------------------------------------------------- comparisons

@dataclass(frozen=True)
class SlotBijection:
    """How to read the slots of a second correlator in the slot order of a first.

    ``free`` maps each free label of the first to one of the second.  ``sewn``
    has one entry per coend slot of the first: the 1-based index of the
    matching coend slot of the second and whether it is seen with reversed
    orientation (which applies the coend antipode).
    """
    free: dict
    sewn: tuple = ()


def _reindex(b: Backend, w: BlockVector, v: BlockVector, bij: SlotBijection) -> np.ndarray | None:
    order = []
    for kind, lab in v.slots:
        if kind == "F":
            target = ("F", bij.free.get(lab))
        else:
            target = ("C", bij.sewn[lab - 1][0])
        if target not in w.slots:
            return None
        order.append(w.slots.index(target))
    if sorted(order) != list(range(len(w.slots))):
        return None
    t = np.transpose(w.tensor, order) if order else w.tensor
    S = b.coend_antipode().matrix
    for axis, (kind, lab) in enumerate(v.slots):
        if kind == "C" and bij.sewn[lab - 1][1]:
            t = apply_to_axis(t, S, axis)
    return t


def check_sewing_consistency(b: Backend, data: FrobeniusData, s1: SurfacePresentation,
                             s2: SurfacePresentation, bijection: SlotBijection) -> bool:
    v, w = correlator(b, data, s1), correlator(b, data, s2)
    if len(v.slots) != len(w.slots) or len(bijection.sewn) != len(s1.sewings):
        return False
    t = _reindex(b, w, v, bijection)
    return t is not None and t.shape == v.tensor.shape and bool(np.all(t == v.tensor))


def rotate_presentation(s: SurfacePresentation, r: int) -> tuple[SurfacePresentation, SlotBijection]:
    """Relabel the disk by ``i -> i + r`` (cyclically) and give the matching bijection."""
    n = s.n_total

    def rot(i):
        return (i - 1 + r) % n + 1
    s2 = SurfacePresentation(s.n_free, tuple((rot(i), rot(j)) for i, j in s.sewings))
    bij = SlotBijection({i: rot(i) for i in s.free_slots()},
                        tuple((k, False) for k in range(1, len(s.sewings) + 1)))
    return s2, bij


def tensor_vectors(v: BlockVector, w: BlockVector) -> BlockVector:
    """Juxtapose two correlators; slots of ``w`` are shifted past those of ``v``."""
    if v.data is not w.data:
        raise InvalidInput("vectors must come from the same Frobenius data")
    t = np.multiply.outer(v.tensor, w.tensor)
    off, csh = v.n_original, sum(1 for k, _ in v.slots if k == "C")
    labels = list(v.slots) + [("F", lab + off) if k == "F" else ("C", lab + csh) for k, lab in w.slots]
    axes = list(range(t.ndim))
    f_axes = [a for a in axes if labels[a][0] == "F"]
    c_axes = [a for a in axes if labels[a][0] == "C"]
    c_axes.sort(key=lambda a: labels[a][1])
    order = f_axes + c_axes
    t = np.transpose(t, order) if order else t
    return BlockVector(v.data, t, tuple(labels[a] for a in order), v.n_original + w.n_original,
                       v.sewn | {x + off for x in w.sewn})


def transport(f: Matrix, v: BlockVector) -> np.ndarray:
    """Apply ``f`` to every ``F``-slot of ``v``."""
    t = v.tensor
    for axis, (kind, _) in enumerate(v.slots):
        if kind == "F":
            t = apply_to_axis(t, f, axis)
    return t

