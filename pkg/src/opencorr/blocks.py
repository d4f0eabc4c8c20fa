"""Handlebody block spaces ``Hom(I, C^{(x) g})`` and their star product.

A vector of the genus ``g`` block space is a morphism ``I -> C^g`` (``C`` the
coend), stored by its coordinates in the basis of the hom space.  The star
product juxtaposes two such morphisms with the monoidal product and reads the
result back in the genus ``g + g'`` basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .backends import Backend, FModBackend, HomSpace, Mor
from .errors import InvalidInput, NotInSpan, UnsupportedBackend, ZeroXi
from .exactla import Matrix, kernel, rank, solve

__all__ = [
    "BlockSpace", "block_space", "block_vector", "xi", "star", "product_table",
    "star_matrix", "star_injectivity", "dim_bound", "permute_block", "rotation_matrix",
    "proper_subrep_check", "ring_structure", "trace_form_radical_dim", "nilpotent_witness",
    "idempotent_witness", "element_block", "block_element",
]


@dataclass(eq=False)
class BlockSpace:
    backend: Backend
    genus: int
    hom: HomSpace

    @property
    def dim(self) -> int:
        return self.hom.dim

    def basis(self) -> list[Mor]:
        return self.hom.basis()

    def vector(self, coords: Sequence) -> Mor:
        if len(coords) != self.dim:
            raise InvalidInput(f"genus {self.genus} vectors have {self.dim} coordinates")
        return self.hom.element(coords)

    def coords(self, m) -> list:
        c = self.hom.coords(m)
        if c is None:
            raise NotInSpan(f"vector is not in the genus {self.genus} block space")
        return c


def block_space(b: Backend, g: int) -> BlockSpace:
    if not isinstance(g, int) or g < 0:
        raise InvalidInput("genus must be a non-negative integer")
    cache = b.__dict__.setdefault("_block_cache", {})
    if g not in cache:
        cache[g] = BlockSpace(b, g, b.hom(b.unit(), b.power(g)))
    return cache[g]


def block_vector(b: Backend, g: int, coords: Sequence) -> Mor:
    return block_space(b, g).vector([b.field(c) for c in coords])


def _star_mor(b: Backend, g: int, v: Mor, h: int, w: Mor) -> Mor:
    return b.merge_vectors(g, v, h, w)


def star(b: Backend, g: int, v: Sequence, h: int, w: Sequence) -> list:
    """Coordinates of ``v * w`` in the genus ``g + h`` block space."""
    m = _star_mor(b, g, block_vector(b, g, v), h, block_vector(b, h, w))
    return block_space(b, g + h).coords(m)


def xi(b: Backend, g: int) -> list:
    """Coordinates of the distinguished vector: ``id_I`` at genus 0, then star powers of the coend unit."""
    if g < 0:
        raise InvalidInput("genus must be a non-negative integer")
    cache = b.__dict__.setdefault("_xi_cache", {})
    if g not in cache:
        if g == 0:
            c = block_space(b, 0).coords(b.identity(b.unit()))
        elif g == 1:
            c = block_space(b, 1).coords(b.coend_unit())
        else:
            c = star(b, g - 1, xi(b, g - 1), 1, xi(b, 1))
        if all(x == 0 for x in c):
            raise ZeroXi(f"distinguished vector vanishes at genus {g}")
        cache[g] = c
    return cache[g]


def product_table(b: Backend, g: int, h: int) -> list[list[list]]:
    """``table[i][j]`` holds the coordinates of ``e_i * e_j``."""
    dg, dh = block_space(b, g).dim, block_space(b, h).dim
    one = b.field.one
    zero = b.field.zero

    def unit(n, i):
        return [one if k == i else zero for k in range(n)]
    return [[star(b, g, unit(dg, i), h, unit(dh, j)) for j in range(dh)] for i in range(dg)]


def star_matrix(b: Backend, g: int, h: int) -> Matrix:
    """The star product as a linear map on the tensor product of block spaces."""
    table = product_table(b, g, h)
    dg, dh, dgh = block_space(b, g).dim, block_space(b, h).dim, block_space(b, g + h).dim
    m = Matrix.zeros(b.field, dgh, dg * dh)
    for i in range(dg):
        for j in range(dh):
            m.a[:, i * dh + j] = table[i][j]
    return m


def star_injectivity(b: Backend, g: int, h: int) -> bool:
    m = star_matrix(b, g, h)
    return rank(m) == m.cols


def dim_bound(b: Backend, g: int) -> bool:
    return block_space(b, g).dim >= 2 ** g


# ---------------------------------------------------------------- symmetries

def permute_block(b: Backend, g: int, coords: Sequence, perm: Sequence[int]) -> list:
    """Move tensor factor ``k`` of ``C^g`` to position ``perm[k]``."""
    if sorted(perm) != list(range(g)):
        raise InvalidInput("not a permutation of the tensor factors")
    if isinstance(b, FModBackend):
        # after the reductions onto F, permuting commuting factors does nothing
        return [b.field(c) for c in coords]
    v = block_vector(b, g, coords)
    d = b.coend().dim
    t = v.matrix.a.reshape((d,) * g)
    if g:
        t = np.moveaxis(t, list(range(g)), list(perm))
    return block_space(b, g).coords(np.ascontiguousarray(t).reshape(-1))


def rotation_matrix(b: Backend, g: int) -> Matrix:
    """Cyclic factor shift ``v1 ... vg -> vg v1 ... v(g-1)`` on the block space."""
    if g < 1:
        raise InvalidInput("rotation needs genus >= 1")
    sp = block_space(b, g)
    perm = [(k + 1) % g for k in range(g)]
    m = Matrix.zeros(b.field, sp.dim, sp.dim)
    for i in range(sp.dim):
        e = [b.field.one if k == i else b.field.zero for k in range(sp.dim)]
        m.a[:, i] = permute_block(b, g, e, perm)
    return m


def proper_subrep_check(b: Backend, g: int) -> bool:
    """``span(xi)`` is a proper subspace fixed by the rotation."""
    x = Matrix.column(b.field, xi(b, g))
    return block_space(b, g).dim > 1 and rotation_matrix(b, g) @ x == x


# ---------------------------------------------------------------- genus-one ring

def ring_structure(b: Backend) -> np.ndarray:
    """Structure constants of the genus-1 block space as an algebra.

    The product is ``v . w = (xi_1 * -)^{-1}(v * w)``; ``c[i, j, k]`` is the
    coefficient of ``e_k`` in ``e_i . e_j``.
    """
    n = block_space(b, 1).dim
    left = star_matrix(b, 1, 1)
    x1 = xi(b, 1)
    embed = Matrix.zeros(b.field, block_space(b, 2).dim, n)
    for k in range(n):
        e = [b.field.one if t == k else b.field.zero for t in range(n)]
        embed.a[:, k] = star(b, 1, x1, 1, e)
    if rank(embed) < n:
        raise UnsupportedBackend("multiplication by xi_1 is not injective here")
    out = np.empty((n, n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            sol = solve(embed, left.a[:, i * n + j])
            if sol is None:
                raise NotInSpan("product leaves the image of xi_1 *")
            out[i, j, :] = sol
    return out


def _trace_form(c: np.ndarray, field) -> Matrix:
    n = c.shape[0]
    tr = [sum((c[k, j, j] for j in range(n)), field.zero) for k in range(n)]
    T = Matrix.zeros(field, n, n)
    for i in range(n):
        for j in range(n):
            T.a[i, j] = sum((c[i, j, k] * tr[k] for k in range(n)), field.zero)
    return T


def trace_form_radical_dim(c: np.ndarray, field) -> int:
    """Dimension of the radical of ``(v, w) -> tr(L_{v w})``."""
    return c.shape[0] - rank(_trace_form(c, field))


def nilpotent_witness(b: Backend) -> list | None:
    """A nonzero genus-1 vector ``v`` with ``v * v = 0``, looked for in the trace-form radical."""
    c = ring_structure(b)
    ker = kernel(_trace_form(c, b.field).sparse_rows(), c.shape[0], b.field)
    for i in range(ker.dim):
        v = list(ker.basis_vector(i))
        if all(x == 0 for x in star(b, 1, v, 1, v)):
            return v
    return None


def idempotent_witness(b: Backend) -> list | None:
    """Nonzero ``e != xi_1`` with ``e * e = xi_1 * e``, searched among basis vectors and their complements."""
    x1 = xi(b, 1)
    n = len(x1)
    cands = []
    for k in range(n):
        e = [b.field.one if t == k else b.field.zero for t in range(n)]
        cands.append(e)
        cands.append([a - c for a, c in zip(x1, e)])
    for e in cands:
        if all(x == 0 for x in e) or e == x1:
            continue
        if star(b, 1, e, 1, e) == star(b, 1, x1, 1, e):
            return e
    return None


def element_block(b: FModBackend, a: Sequence) -> list:
    """Genus-1 coordinates of multiplication by ``a`` in F-mod (blocks are ``Hom_F(F, F)``)."""
    if not isinstance(b, FModBackend):
        raise UnsupportedBackend("element_block is specific to F-mod")
    L = b.algebra.left_mult(np.array([b.field(x) for x in a], dtype=object))
    return block_space(b, 1).coords(Mor(b.unit(), b.power(1), L))


def block_element(b: FModBackend, g: int, coords: Sequence) -> list:
    """Image of the unit of ``F`` under the genus-``g`` block reduced onto ``F``."""
    if not isinstance(b, FModBackend):
        raise UnsupportedBackend("block_element is specific to F-mod")
    m = b.reduction(g) @ block_vector(b, g, coords)
    return list(np.dot(m.matrix.a, b.algebra.unit))
