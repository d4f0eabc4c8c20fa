"""Desk-scale linear categories with Grothendieck-Verdier duality.

Three backends are provided:

``vect``
    finite-dimensional vector spaces; unit, dualizing object and coend are all
    the ground field.
``rep``
    representations of a finite group ``G``; the coend is the function algebra
    ``k(G)`` with the conjugation action.
``fmod``
    modules over a commutative Frobenius algebra ``F`` with the product
    ``X . Y = (Y* (x)_F X*)*``; this category is not rigid, and its coend is
    ``F`` itself.

An object is a dimension plus the action of a fixed list of algebra elements
(group elements for ``rep``, basis vectors of ``F`` for ``fmod``).  Morphisms
are matrices commuting with the action of the backend's generators.  Tensor
products in ``vect`` and ``rep`` are Kronecker products and are kept as lists
of factors, so they are strictly associative and never densified.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product
from math import prod
from typing import Sequence

import numpy as np

from .errors import (BackendMismatch, InvalidInput, NotAGroup, NotARepresentation,
                     NotCommutative, NotEquivariant, NotFrobenius, ShapeMismatch,
                     UnsupportedBackend)
from .exactla import QQ, Kernel, Matrix, invert, kernel, kron, rank, rref

__all__ = [
    "Algebra", "Group", "Obj", "Mor", "HomSpace", "Backend", "VectBackend",
    "RepBackend", "FModBackend", "make_vect", "make_rep", "make_fmod",
    "cyclic_group", "symmetric_group", "dihedral_group", "quaternion_group",
    "klein_group", "truncated_polynomial", "split_algebra",
]


# ---------------------------------------------------------------- algebras

class Algebra:
    """Finite-dimensional unital algebra given by structure constants.

    ``mul[i][j][k]`` is the coefficient of ``e_k`` in ``e_i e_j``.
    """

    def __init__(self, field, mul, unit, check: bool = True):
        self.field = field
        n = len(unit)
        self.dim = n
        if len(mul) != n or any(len(r) != n or any(len(c) != n for c in r) for r in mul):
            raise ShapeMismatch("structure constants must have shape dim x dim x dim")
        self.mul = np.empty((n, n, n), dtype=object)
        for i, j, k in product(range(n), repeat=3):
            self.mul[i, j, k] = field(mul[i][j][k])
        self.unit = np.array([field(x) for x in unit], dtype=object)
        if check:
            self.validate()

    def product(self, x, y) -> np.ndarray:
        out = np.empty(self.dim, dtype=object)
        out.fill(self.field.zero)
        for i in range(self.dim):
            if x[i] == 0:
                continue
            for j in range(self.dim):
                if y[j] == 0:
                    continue
                out = out + (x[i] * y[j]) * self.mul[i, j]
        return out

    def basis(self, i) -> np.ndarray:
        v = np.empty(self.dim, dtype=object)
        v.fill(self.field.zero)
        v[i] = self.field.one
        return v

    def left_mult(self, x) -> Matrix:
        """Matrix of ``y -> x y``."""
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for j in range(self.dim):
            m.a[:, j] = self.product(x, self.basis(j))
        return m

    def mul_matrix(self) -> Matrix:
        """``F (x) F -> F`` with column ``i*dim + j`` holding ``e_i e_j``."""
        n = self.dim
        m = Matrix.zeros(self.field, n, n * n)
        for i, j in product(range(n), repeat=2):
            m.a[:, i * n + j] = self.mul[i, j]
        return m

    def validate(self):
        n = self.dim
        e = [self.basis(i) for i in range(n)]
        for i, j, k in product(range(n), repeat=3):
            lhs = self.product(self.product(e[i], e[j]), e[k])
            rhs = self.product(e[i], self.product(e[j], e[k]))
            if not np.all(lhs == rhs):
                raise InvalidInput(f"structure constants not associative at {(i, j, k)}")
        for i in range(n):
            if not (np.all(self.product(self.unit, e[i]) == e[i]) and np.all(self.product(e[i], self.unit) == e[i])):
                raise InvalidInput("unit vector is not a two-sided unit")

    def is_commutative(self) -> bool:
        return bool(np.all(self.mul == self.mul.transpose(1, 0, 2)))


def truncated_polynomial(field=QQ) -> Algebra:
    """``k[x]/(x^2)`` in the basis ``1, x``."""
    mul = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return Algebra(field, mul, [1, 0])


def split_algebra(n: int = 2, field=QQ) -> Algebra:
    """``k x ... x k`` with its primitive idempotents as basis."""
    mul = [[[1 if i == j == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return Algebra(field, mul, [1] * n)


# ---------------------------------------------------------------- groups

class Group:
    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[int]]):
        n = len(elements)
        if n == 0:
            raise NotAGroup("empty group")
        if len(set(elements)) != n:
            raise NotAGroup("repeated element names")
        if len(table) != n or any(not isinstance(r, (list, tuple)) or len(r) != n for r in table):
            raise NotAGroup("multiplication table must be |G| x |G|")
        for r in table:
            for x in r:
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                    raise NotAGroup(f"table entry {x!r} out of range")
        for r in table:
            if sorted(r) != list(range(n)):
                raise NotAGroup("table is not a Latin square")
        for j in range(n):
            if sorted(table[i][j] for i in range(n)) != list(range(n)):
                raise NotAGroup("table is not a Latin square")
        ids = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
        if not ids:
            raise NotAGroup("no identity element")
        self.identity = ids[0]
        for a, b, c in product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise NotAGroup(f"table is not associative at {(a, b, c)}")
        self.elements = list(elements)
        self.table = [list(r) for r in table]
        self.order = n
        self.inverse = [next(b for b in range(n) if self.table[a][b] == self.identity) for a in range(n)]
        self.generators = self._generators()
        self.words = self._words()

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, x: int) -> int:
        return self.table[self.table[g][x]][self.inverse[g]]

    def _span(self, gens) -> set[int]:
        seen = {self.identity}
        todo = [self.identity]
        while todo:
            x = todo.pop()
            for s in gens:
                y = self.table[x][s]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    def _generators(self) -> list[int]:
        gens: list[int] = []
        span = {self.identity}
        for x in range(self.order):
            if x not in span:
                gens.append(x)
                span = self._span(gens)
        return gens

    def _words(self) -> list[list[int]]:
        words: list = [None] * self.order
        words[self.identity] = []
        q = deque([self.identity])
        while q:
            x = q.popleft()
            for s in self.generators:
                y = self.table[x][s]
                if words[y] is None:
                    words[y] = words[x] + [s]
                    q.append(y)
        return words

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "table": [list(r) for r in self.table]}


def _table_from_perms(perms) -> tuple[list[str], list[list[int]]]:
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[b[i]] for i in range(len(a)))] for b in perms] for a in perms]
    return ["".join(map(str, p)) for p in perms], table


def cyclic_group(n: int) -> tuple[list[str], list[list[int]]]:
    return [f"r{i}" for i in range(n)], [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group(n: int) -> tuple[list[str], list[list[int]]]:
    return _table_from_perms(sorted(permutations(range(n))))


def klein_group() -> tuple[list[str], list[list[int]]]:
    els = [(0, 0), (0, 1), (1, 0), (1, 1)]
    return ["e", "a", "b", "ab"], [[els.index(((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)) for y in els] for x in els]


def dihedral_group(n: int) -> tuple[list[str], list[list[int]]]:
    """Symmetries of the n-gon as permutations of its vertices."""
    rots = [tuple((i + k) % n for i in range(n)) for k in range(n)]
    refl = [tuple((k - i) % n for i in range(n)) for k in range(n)]
    return _table_from_perms(rots + refl)


def quaternion_group() -> tuple[list[str], list[list[int]]]:
    # elements (sign, unit) with units 1, i, j, k
    units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    els = [(s, u) for s in (1, -1) for u in "1ijk"]
    names = [("" if s == 1 else "-") + u for s, u in els]
    table = []
    for s1, u1 in els:
        row = []
        for s2, u2 in els:
            s, u = units[(u1, u2)]
            row.append(els.index((s1 * s2 * s, u)))
        table.append(row)
    return names, table


# ---------------------------------------------------------------- objects

@dataclass(eq=False)
class Obj:
    """An object of a backend.

    Atomic objects store ``act``, one matrix per acting element; strict tensor
    products store their atomic ``factors`` instead.
    """
    backend: "Backend"
    dim: int
    act: tuple = ()
    factors: tuple = ()
    label: str = ""
    _rows: dict = field(default_factory=dict, repr=False)
    _cols: dict = field(default_factory=dict, repr=False)

    @property
    def is_atomic(self) -> bool:
        return not self.factors

    def flat(self) -> tuple:
        """Atomic factors, with copies of the unit dropped."""
        fs = self.factors if self.factors else (self,)
        return tuple(f for f in fs if not f.backend._is_unit(f))

    def row(self, s: int, i: int) -> dict:
        if self.is_atomic:
            rows = self._rows.get(s)
            if rows is None:
                rows = self._rows[s] = self.act[s].sparse_rows()
            return rows[i]
        return _kron_entry(self.factors, i, lambda f, k: f.row(s, k))

    def col(self, s: int, j: int) -> dict:
        if self.is_atomic:
            cols = self._cols.get(s)
            if cols is None:
                cols = self._cols[s] = self.act[s].sparse_cols()
            return cols[j]
        return _kron_entry(self.factors, j, lambda f, k: f.col(s, k))

    def action(self, s: int) -> Matrix:
        if self.is_atomic:
            return self.act[s]
        m = self.factors[0].action(s)
        for f in self.factors[1:]:
            m = kron(m, f.action(s))
        return m

    def __repr__(self):
        return f"Obj({self.backend.kind}, dim={self.dim}{', ' + self.label if self.label else ''})"


def _split_index(factors, i: int) -> list[int]:
    out = []
    for f in reversed(factors):
        i, r = divmod(i, f.dim)
        out.append(r)
    return out[::-1]


def _kron_entry(factors, i: int, getter) -> dict:
    parts = _split_index(factors, i)
    acc = {0: None}
    for f, k in zip(factors, parts):
        d = getter(f, k)
        nxt = {}
        for c, v in acc.items():
            for c2, v2 in d.items():
                nxt[c * f.dim + c2] = v2 if v is None else v * v2
        acc = nxt
    return acc


@dataclass(eq=False)
class Mor:
    dom: Obj
    cod: Obj
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.cod.dim, self.dom.dim):
            raise ShapeMismatch(f"matrix shape {self.matrix.shape} does not fit {self.dom} -> {self.cod}")

    def __matmul__(self, other: "Mor") -> "Mor":
        """Composition ``self . other``."""
        if not self.dom.backend.same(self.dom, other.cod):
            raise ShapeMismatch("composable morphisms need matching objects")
        return Mor(other.dom, self.cod, self.matrix @ other.matrix)

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        b = self.dom.backend
        return b.same(self.dom, other.dom) and b.same(self.cod, other.cod) and self.matrix == other.matrix

    __hash__ = None


class HomSpace:
    """The space of morphisms ``X -> Y``, as the kernel of the intertwiner equations.

    Coordinates of ``M`` live at row-major index ``i * X.dim + j``.
    """

    def __init__(self, X: Obj, Y: Obj, ker: Kernel):
        self.X, self.Y, self.kernel = X, Y, ker

    @property
    def dim(self) -> int:
        return self.kernel.dim

    def element(self, coords) -> Mor:
        v = self.kernel.combine([self.X.backend.field(c) for c in coords])
        return Mor(self.X, self.Y, Matrix(self.X.backend.field, v.reshape(self.Y.dim, self.X.dim)))

    def basis(self) -> list[Mor]:
        m = self.kernel.basis_matrix()
        f = self.X.backend.field
        return [Mor(self.X, self.Y, Matrix(f, m.a[:, i].reshape(self.Y.dim, self.X.dim).copy()))
                for i in range(self.dim)]

    def coords(self, m) -> list | None:
        if isinstance(m, Mor):
            m = m.matrix
        arr = m.a if isinstance(m, Matrix) else np.asarray(m, dtype=object)
        return self.kernel.coords(arr.reshape(-1))


# ---------------------------------------------------------------- backends

class Backend:
    kind = "abstract"
    strict = True     # tensor products are strictly associative Kronecker products
    rigid = True

    def __init__(self, field=QQ):
        self.field = field
        self.generators: list[int] = []
        self._unit: Obj | None = None
        self._hom_cache: dict = {}

    # -- objects
    def unit(self) -> Obj:
        raise NotImplementedError

    def dualizing(self) -> Obj:
        return self.unit()

    def coend(self) -> Obj:
        raise NotImplementedError

    def _is_unit(self, X: Obj) -> bool:
        return X is self._unit

    def _check(self, *objs):
        for X in objs:
            if X.backend is not self:
                raise BackendMismatch("object belongs to a different backend")

    def same(self, X: Obj, Y: Obj) -> bool:
        self._check(X, Y)
        if X is Y:
            return True
        if X.dim != Y.dim:
            return False
        fx, fy = X.flat(), Y.flat()
        if len(fx) == len(fy) and all(a.is_atomic and b.is_atomic for a, b in zip(fx, fy)):
            return all(a is b or (a.dim == b.dim and all(a.act[s] == b.act[s] for s in range(len(a.act))))
                       for a, b in zip(fx, fy))
        return all(X.action(s) == Y.action(s) for s in self.generators)

    def tensor(self, X: Obj, Y: Obj) -> Obj:
        self._check(X, Y)
        fs = X.flat() + Y.flat()
        if not fs:
            return self.unit()
        if len(fs) == 1:
            return fs[0]
        return Obj(self, prod(f.dim for f in fs), factors=fs)

    def tensor_power(self, X: Obj, n: int) -> Obj:
        out = self.unit()
        for _ in range(n):
            out = self.tensor(out, X)
        return out

    def tensor_mor(self, f: Mor, g: Mor) -> Mor:
        return Mor(self.tensor(f.dom, g.dom), self.tensor(f.cod, g.cod), kron(f.matrix, g.matrix))

    def dual(self, X: Obj) -> Obj:
        raise NotImplementedError

    def dual_mor(self, f: Mor) -> Mor:
        return Mor(self.dual(f.cod), self.dual(f.dom), f.matrix.T)

    # -- morphisms
    def identity(self, X: Obj) -> Mor:
        return Mor(X, X, Matrix.identity(self.field, X.dim))

    def _constraint_rows(self, X: Obj, Y: Obj):
        dx = X.dim
        for s in self.generators:
            for i in range(Y.dim):
                yrow = Y.row(s, i)
                for j in range(dx):
                    r = {}
                    for k, v in yrow.items():
                        r[k * dx + j] = v
                    for k, v in X.col(s, j).items():
                        c = i * dx + k
                        r[c] = r.get(c, self.field.zero) - v
                    yield r

    def hom(self, X: Obj, Y: Obj) -> HomSpace:
        self._check(X, Y)
        key = (id(X), id(Y))
        hit = self._hom_cache.get(key)
        if hit is not None and hit.X is X and hit.Y is Y:
            return hit
        hs = HomSpace(X, Y, kernel(self._constraint_rows(X, Y), X.dim * Y.dim, self.field))
        self._hom_cache[key] = hs
        return hs

    def hom_basis(self, X: Obj, Y: Obj) -> list[Mor]:
        return self.hom(X, Y).basis()

    def residual(self, m: Mor) -> list:
        """Nonzero entries of ``Y(s) M - M X(s)`` over all generators ``s``."""
        vec = m.matrix.a.reshape(-1)
        bad = []
        for r in self._constraint_rows(m.dom, m.cod):
            val = self.field.zero
            for c, x in r.items():
                val = val + x * vec[c]
            if val != 0:
                bad.append(val)
        return bad

    def is_morphism(self, m: Mor) -> bool:
        return m.matrix.shape == (m.cod.dim, m.dom.dim) and not self.residual(m)

    def mor(self, dom: Obj, cod: Obj, matrix: Matrix, check: bool = True) -> Mor:
        self._check(dom, cod)
        m = Mor(dom, cod, matrix)
        if check and not self.is_morphism(m):
            raise NotEquivariant(f"matrix is not a morphism {dom} -> {cod}")
        return m

    def braiding(self, X: Obj, Y: Obj) -> Mor:
        """The symmetric braiding ``X (x) Y -> Y (x) X`` (tensor flip)."""
        if not self.strict:
            raise UnsupportedBackend("braiding is only implemented for strict backends")
        dx, dy = X.dim, Y.dim
        perm = [j * dx + i for i in range(dx) for j in range(dy)]
        return Mor(self.tensor(X, Y), self.tensor(Y, X), Matrix.permutation(self.field, perm))

    # -- coend and handlebody structure
    def coend_unit(self) -> Mor:
        raise NotImplementedError

    def coend_antipode(self) -> Mor:
        return self.identity(self.coend())

    def coend_structure(self, X: Obj) -> Mor:
        raise NotImplementedError

    def power(self, g: int) -> Obj:
        return self.tensor_power(self.coend(), g)

    def merge(self, g: int, h: int) -> Mor:
        """Identification ``C^g (x) C^h -> C^(g+h)`` of coend powers."""
        src = self.tensor(self.power(g), self.power(h))
        return Mor(src, self.power(g + h), Matrix.identity(self.field, src.dim))

    def unit_split(self) -> Mor:
        """Inverse unitor ``I -> I (x) I``."""
        u = self.unit()
        return Mor(u, self.tensor(u, u), Matrix.identity(self.field, u.dim))

    def merge_vectors(self, g: int, v: Mor, h: int, w: Mor) -> Mor:
        """``merge(g, h) o (v (x) w) o unit_split`` for ``v: I -> C^g`` and ``w: I -> C^h``."""
        # strict case: both structure maps are identity matrices
        return Mor(self.unit(), self.power(g + h), self.tensor_mor(v, w).matrix)

    def factor_permutation(self, g: int, perm: Sequence[int]) -> Mor:
        """Move tensor factor ``k`` of ``C^g`` to position ``perm[k]``."""
        if sorted(perm) != list(range(g)):
            raise InvalidInput("not a permutation of the tensor factors")
        P = self.power(g)
        d = self.coend().dim
        n = P.dim
        idx = np.arange(n).reshape((d,) * g) if g else np.arange(n)
        moved = np.moveaxis(idx, list(range(g)), list(perm)) if g else idx
        # moved[b] is the source index landing at target multi-index b
        target_of = [0] * n
        for t, s in enumerate(moved.reshape(-1).tolist()):
            target_of[s] = t
        return Mor(P, P, Matrix.permutation(self.field, target_of))

    def rotation(self, g: int) -> Mor:
        """Cyclic shift ``v1 (x) ... (x) vg -> vg (x) v1 (x) ... (x) v(g-1)``."""
        return self.factor_permutation(g, [(k + 1) % g for k in range(g)])

    def sorting_map(self, data) -> Mor:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind, "field": self.field.name}


class VectBackend(Backend):
    kind = "vect"

    def __init__(self, field=QQ):
        super().__init__(field)
        self._unit = Obj(self, 1, label="k")

    def unit(self) -> Obj:
        return self._unit

    def coend(self) -> Obj:
        return self._unit

    def space(self, n: int) -> Obj:
        if n == 1:
            return self._unit
        return Obj(self, n, label=f"k^{n}")

    def dual(self, X: Obj) -> Obj:
        self._check(X)
        if X.is_atomic:
            return X
        return Obj(self, X.dim, factors=tuple(self.dual(f) for f in X.factors))

    def coend_unit(self) -> Mor:
        return self.identity(self._unit)

    def coend_structure(self, X: Obj) -> Mor:
        d = X.dim
        m = Matrix.zeros(self.field, 1, d * d)
        for i in range(d):
            m.a[0, i * d + i] = self.field.one
        return Mor(self.tensor(self.dual(X), X), self._unit, m)

    def sorting_map(self, data) -> Mor:
        data.psi    # raises if the pairing is not a valid self-duality
        return data.beta


def make_vect(field=QQ) -> VectBackend:
    return VectBackend(field)


class RepBackend(Backend):
    kind = "rep"

    def __init__(self, group: Group, field=QQ):
        super().__init__(field)
        if field.characteristic and group.order % field.characteristic == 0:
            raise InvalidInput(f"characteristic {field.characteristic} divides |G| = {group.order}")
        self.group = group
        self.generators = list(group.generators)
        one = Matrix.identity(field, 1)
        self._unit = Obj(self, 1, act=tuple(one for _ in range(group.order)), label="trivial")
        n = group.order
        conj = []
        for g in range(n):
            conj.append(Matrix.permutation(field, [group.conj(g, k) for k in range(n)]))
        self._coend = Obj(self, n, act=tuple(conj), label="k(G)_conj")

    def unit(self) -> Obj:
        return self._unit

    def coend(self) -> Obj:
        return self._coend

    def representation(self, matrices: Sequence[Matrix], label: str = "") -> Obj:
        """Object from one matrix per group element; the homomorphism property is checked."""
        G = self.group
        if len(matrices) != G.order:
            raise NotARepresentation("need one matrix per group element")
        d = matrices[0].rows
        for m in matrices:
            if m.shape != (d, d):
                raise NotARepresentation("representation matrices must be square of equal size")
        if not matrices[G.identity].is_identity():
            raise NotARepresentation("identity element does not act trivially")
        for a in range(G.order):
            for b in range(G.order):
                if matrices[a] @ matrices[b] != matrices[G.mul(a, b)]:
                    raise NotARepresentation(f"not multiplicative at ({G.elements[a]}, {G.elements[b]})")
        return Obj(self, d, act=tuple(matrices), label=label)

    def permutation_representation(self, perms: Sequence[Sequence[int]], label: str = "") -> Obj:
        return self.representation([Matrix.permutation(self.field, p) for p in perms], label)

    def regular_adjoint(self) -> Obj:
        G = self.group
        return self.permutation_representation(
            [[G.conj(g, x) for x in range(G.order)] for g in range(G.order)], "k[G]_adj")

    def regular(self) -> Obj:
        G = self.group
        return self.permutation_representation(
            [[G.mul(g, x) for x in range(G.order)] for g in range(G.order)], "k[G]")

    def element_action(self, X: Obj, h: int) -> Matrix:
        if X.is_atomic:
            return X.act[h]
        m = X.factors[0].act[h]
        for f in X.factors[1:]:
            m = kron(m, f.act[h])
        return m

    def dual(self, X: Obj) -> Obj:
        self._check(X)
        if X is self._unit:
            return X
        if not X.is_atomic:
            return Obj(self, X.dim, factors=tuple(self.dual(f) for f in X.factors))
        inv = self.group.inverse
        return Obj(self, X.dim, act=tuple(X.act[inv[h]].T for h in range(self.group.order)),
                   label=f"D({X.label})")

    def coend_unit(self) -> Mor:
        n = self.group.order
        return Mor(self._unit, self._coend, Matrix.from_rows(self.field, [[1]] * n))

    def coend_antipode(self) -> Mor:
        return Mor(self._coend, self._coend, Matrix.permutation(self.field, self.group.inverse))

    def coend_structure(self, X: Obj) -> Mor:
        """``DX (x) X -> k(G)``, ``phi (x) x -> (h -> phi(h.x))``."""
        d = X.dim
        m = Matrix.zeros(self.field, self.group.order, d * d)
        for h in range(self.group.order):
            rho = self.element_action(X, h)
            m.a[h, :] = rho.a.reshape(-1)
        return Mor(self.tensor(self.dual(X), X), self._coend, m)

    def coend_spanned(self) -> bool:
        """The structure map at the regular representation is onto ``k(G)``."""
        m = self.coend_structure(self.regular()).matrix
        return rank(m) == self.group.order

    def sorting_map(self, data) -> Mor:
        """``x (x) y -> (h -> psi(x)(h.y))``."""
        data.psi
        F = data.F
        d = F.dim
        B = data.beta.matrix.a.reshape(d, d)
        m = Matrix.zeros(self.field, self.group.order, d * d)
        for h in range(self.group.order):
            rho = self.element_action(F, h).a
            m.a[h, :] = np.dot(B, rho).reshape(-1)
        return Mor(self.tensor(F, F), self._coend, m)

    def describe(self) -> dict:
        return {"kind": self.kind, "field": self.field.name, "order": self.group.order}


def make_rep(elements: Sequence[str], table: Sequence[Sequence[int]], field=QQ) -> RepBackend:
    return RepBackend(Group(elements, table), field)


class FModBackend(Backend):
    """Modules over a commutative Frobenius algebra with ``X . Y = (Y* (x)_F X*)*``."""
    kind = "fmod"
    strict = False
    rigid = False

    def __init__(self, algebra: Algebra, pairing: Matrix):
        super().__init__(algebra.field)
        A = algebra
        n = A.dim
        if not A.is_commutative():
            raise NotCommutative("F must be commutative")
        if pairing.shape != (n, n):
            raise ShapeMismatch("pairing must be dim x dim")
        e = [A.basis(i) for i in range(n)]
        B = pairing.a
        for a, b, c in product(range(n), repeat=3):
            lhs = np.dot(A.product(e[a], e[b]), B[:, c])
            rhs = np.dot(B[a, :], A.product(e[b], e[c]))
            if lhs != rhs:
                raise NotFrobenius(f"pairing is not invariant at {(a, b, c)}")
        if rank(pairing) < n:
            raise NotFrobenius("pairing is degenerate")
        self.algebra = A
        self.pairing = pairing
        self.generators = list(range(n))
        self._regular = Obj(self, n, act=tuple(A.left_mult(e[i]) for i in range(n)), label="F")
        self._unit = self._regular
        self._odot_cache: dict = {}
        self._power_cache: dict = {0: self._regular, 1: self._regular}
        self._reduction_cache: dict = {}

    def unit(self) -> Obj:
        return self._regular

    def regular(self) -> Obj:
        return self._regular

    def dualizing(self) -> Obj:
        return self.dual(self._regular)

    def coend(self) -> Obj:
        return self._regular

    def _is_unit(self, X: Obj) -> bool:
        return False

    def module(self, matrices: Sequence[Matrix], label: str = "") -> Obj:
        """Module from the action of each basis vector of ``F``; checked."""
        A = self.algebra
        n = A.dim
        if len(matrices) != n:
            raise NotARepresentation("need one matrix per basis element of F")
        d = matrices[0].rows
        for i, j in product(range(n), repeat=2):
            lhs = matrices[i] @ matrices[j]
            rhs = Matrix.zeros(self.field, d, d)
            for k in range(n):
                if A.mul[i, j, k] != 0:
                    rhs = rhs + matrices[k].scale(A.mul[i, j, k])
            if lhs != rhs:
                raise NotARepresentation(f"action not multiplicative at {(i, j)}")
        unit_act = Matrix.zeros(self.field, d, d)
        for k in range(n):
            if A.unit[k] != 0:
                unit_act = unit_act + matrices[k].scale(A.unit[k])
        if not unit_act.is_identity():
            raise NotARepresentation("unit of F does not act as the identity")
        return Obj(self, d, act=tuple(matrices), label=label)

    def dual(self, X: Obj) -> Obj:
        self._check(X)
        return Obj(self, X.dim, act=tuple(m.T for m in X.act), label=f"{X.label}*")

    def tensor_over_f(self, X: Obj, Y: Obj):
        """Coequalizer ``X (x)_F Y`` with its projection and section.

        The relations ``a.x (x) y - x (x) a.y`` are put in RREF; the
        non-pivot coordinates of ``X (x) Y`` form the quotient basis.
        """
        n = X.dim * Y.dim
        rels = []
        for s in self.generators:
            m = kron(X.act[s], Matrix.identity(self.field, Y.dim)) - kron(Matrix.identity(self.field, X.dim), Y.act[s])
            rels.extend(m.sparse_cols())
        piv = rref(rels, self.field)
        keep = [c for c in range(n) if c not in piv]
        pos = {c: t for t, c in enumerate(keep)}
        P = Matrix.zeros(self.field, len(keep), n)
        S = Matrix.zeros(self.field, n, len(keep))
        for c, t in pos.items():
            P.a[t, c] = self.field.one
            S.a[c, t] = self.field.one
        for c, row in piv.items():
            for f, v in row.items():
                if f != c:
                    P.a[pos[f], c] = -v
        acts = []
        for s in self.generators:
            acts.append(P @ kron(X.act[s], Matrix.identity(self.field, Y.dim)) @ S)
        Q = Obj(self, len(keep), act=tuple(acts), label=f"({X.label}(x)F{Y.label})")
        return Q, P, S

    def _odot_data(self, X: Obj, Y: Obj):
        key = (id(X), id(Y))
        hit = self._odot_cache.get(key)
        if hit is not None and hit[0] is X and hit[1] is Y:
            return hit
        Q, P, S = self.tensor_over_f(self.dual(Y), self.dual(X))
        Z = self.dual(Q)
        Z.label = f"({X.label}.{Y.label})"
        hit = (X, Y, Z, P, S)
        self._odot_cache[key] = hit
        return hit

    def tensor(self, X: Obj, Y: Obj) -> Obj:
        self._check(X, Y)
        return self._odot_data(X, Y)[2]

    def tensor_mor(self, f: Mor, g: Mor) -> Mor:
        _, _, Z, P, S = self._odot_data(f.dom, g.dom)
        _, _, Z2, P2, S2 = self._odot_data(f.cod, g.cod)
        on_quotient = P @ kron(g.matrix.T, f.matrix.T) @ S2
        return Mor(Z, Z2, on_quotient.T)

    def tensor_power(self, X: Obj, n: int) -> Obj:
        if n == 0:
            return self.unit()
        out = X
        for _ in range(n - 1):
            out = self.tensor(out, X)
        return out

    def braiding(self, X: Obj, Y: Obj) -> Mor:
        raise UnsupportedBackend("braiding on F-mod is not implemented")

    # -- canonical isomorphisms onto F
    def psi(self) -> Mor:
        """``F -> F*``, ``a -> pairing(a, -)``."""
        return Mor(self._regular, self.dualizing(), self.pairing.T)

    def right_unitor(self, X: Obj) -> Mor:
        """``X . F* -> X``, dual to ``phi -> 1 (x) phi``."""
        U = self.dualizing()
        _, _, Z, P, S = self._odot_data(X, U)
        unit_col = Matrix.column(self.field, list(self.algebra.unit))
        M = P @ kron(unit_col, Matrix.identity(self.field, X.dim))
        return Mor(Z, X, M.T)

    def power(self, g: int) -> Obj:
        hit = self._power_cache.get(g)
        if hit is None:
            hit = self._power_cache[g] = self.tensor(self.power(g - 1), self._regular)
        return hit

    def reduction(self, g: int) -> Mor:
        """Canonical isomorphism ``C^g -> F`` built from unitors and ``psi``."""
        hit = self._reduction_cache.get(g)
        if hit is not None:
            return hit
        if g <= 1:
            r = self.identity(self._regular)
        else:
            prev = self.power(g - 1)
            step = self.right_unitor(prev) @ self.tensor_mor(self.identity(prev), self.psi())
            r = self.reduction(g - 1) @ step
        self._reduction_cache[g] = r
        return r

    def _invert(self, m: Mor) -> Mor:
        inv = invert(m.matrix)
        if inv is None:
            raise InvalidInput("canonical map unexpectedly singular")
        return Mor(m.cod, m.dom, inv)

    def merge(self, g: int, h: int) -> Mor:
        both = self.tensor_mor(self.reduction(g), self.reduction(h))
        return self._invert(self.reduction(g + h)) @ self.reduction(2) @ both

    def unit_split(self) -> Mor:
        return self._invert(self.reduction(2))

    def merge_vectors(self, g: int, v: Mor, h: int, w: Mor) -> Mor:
        return self.merge(g, h) @ self.tensor_mor(v, w) @ self.unit_split()

    def coend_unit(self) -> Mor:
        return self.identity(self._regular)

    def rotation(self, g: int) -> Mor:
        # transported onto F through the reductions, a cyclic shift of commuting factors is trivial
        return self.identity(self.power(g))

    def factor_permutation(self, g: int, perm: Sequence[int]) -> Mor:
        if sorted(perm) != list(range(g)):
            raise InvalidInput("not a permutation of the tensor factors")
        return self.identity(self.power(g))

    def coend_structure(self, X: Obj) -> Mor:
        raise UnsupportedBackend("use coend_bimodule_structure for F-mod")

    def coend_bimodule(self) -> tuple[list[Matrix], list[Matrix]]:
        """Left and right actions of ``F`` on ``F*``."""
        n = self.algebra.dim
        e = [self.algebra.basis(i) for i in range(n)]
        # (b.f)(a) = f(a b), (f.b)(a) = f(b a)
        left = [self.algebra.left_mult(e[b]).T for b in range(n)]
        right = []
        for b in range(n):
            R = Matrix.zeros(self.field, n, n)
            for a in range(n):
                R.a[:, a] = self.algebra.product(e[b], e[a])
            right.append(R.T)
        return left, right

    def coend_bimodule_structure(self, X: Obj) -> Matrix:
        """``X* (x) X -> F*``, ``phi (x) x -> (a -> phi(a.x))``."""
        d, n = X.dim, self.algebra.dim
        m = Matrix.zeros(self.field, n, d * d)
        for a in range(n):
            m.a[a, :] = X.act[a].a.reshape(-1)
        return m

    def sorting_map(self, data) -> Mor:
        raise UnsupportedBackend("Frobenius data in F-mod is not supported")

    def describe(self) -> dict:
        return {"kind": self.kind, "field": self.field.name, "dim_F": self.algebra.dim}


def make_fmod(algebra: Algebra, pairing: Matrix) -> FModBackend:
    return FModBackend(algebra, pairing)
