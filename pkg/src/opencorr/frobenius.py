"""Symmetric Frobenius algebras inside a backend.

The data is an object ``F`` with a multiplication ``mu: F (x) F -> F``, a unit
``eta: K -> F`` and a pairing ``beta: F (x) F -> I``.  In the strict backends
the dualizing object ``K`` is the unit ``I``, so all three are plain matrices:
``mu`` is ``d x d^2`` with column ``a*d + b`` holding ``e_a e_b``, ``eta`` is a
column and ``beta`` is a row with entry ``a*d + b`` equal to ``beta(e_a, e_b)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .backends import Algebra, Backend, Mor, Obj, RepBackend, VectBackend
from .errors import (Degenerate, InvalidFrobeniusData, NotEquivariant, NotSymmetric,
                     ShapeMismatch, UnsupportedBackend)
from .exactla import Matrix, invert, kron

__all__ = [
    "FrobeniusData", "FrobeniusReport", "self_duality", "check_symmetric_frobenius",
    "frobenius_data", "check_commutative", "check_frobenius_isomorphism",
    "twist_composite", "from_algebra", "truncated_polynomial_data",
    "matrix_algebra_data", "twisted_trace_data", "group_algebra_data",
    "function_algebra_data", "split_algebra_data",
]

AXIOMS = ("associativity", "unitality", "self_duality", "invariance", "equivariance")


def _require_strict(b: Backend):
    if not b.strict:
        raise UnsupportedBackend(f"Frobenius data is only supported in strict backends, not {b.kind}")


def pairing_matrix(beta: Mor, d: int) -> np.ndarray:
    return beta.matrix.a.reshape(d, d)


def self_duality(b: Backend, F: Obj, beta: Mor) -> tuple[Mor, Mor]:
    """``psi = beta(x, -)`` and the copairing ``delta``; both zigzags are checked."""
    _require_strict(b)
    d = F.dim
    if beta.matrix.shape != (1, d * d):
        raise ShapeMismatch("pairing must be a map F (x) F -> I")
    if not b.is_morphism(beta):
        raise NotEquivariant("pairing is not a morphism")
    B = Matrix(b.field, pairing_matrix(beta, d).copy())
    C = invert(B)
    if C is None:
        raise Degenerate("pairing matrix is singular")
    psi = Mor(F, b.dual(F), B.T)
    if psi.matrix.T != psi.matrix:
        bad = next((i, j) for i in range(d) for j in range(d) if B.a[i, j] != B.a[j, i])
        raise NotSymmetric(f"beta(e_{bad[0]}, e_{bad[1]}) != beta(e_{bad[1]}, e_{bad[0]})")
    delta = Mor(b.unit(), b.tensor(F, F), Matrix(b.field, C.a.reshape(d * d, 1).copy()))
    one = Matrix.identity(b.field, d)
    left = kron(one, beta.matrix) @ kron(delta.matrix, one)
    right = kron(beta.matrix, one) @ kron(one, delta.matrix)
    if not (left.is_identity() and right.is_identity()):
        raise Degenerate("zigzag identities fail")
    return psi, delta


@dataclass
class FrobeniusReport:
    results: dict
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def failed(self) -> list[str]:
        return [k for k in AXIOMS if not self.results[k]]

    def to_json(self) -> dict:
        out = {k: "pass" if self.results[k] else "fail" for k in AXIOMS}
        if self.witness:
            out["witness"] = {k: self.witness[k] for k in AXIOMS if k in self.witness}
        return out


def _first_bad_column(lhs: Matrix, rhs: Matrix):
    diff = (lhs - rhs).a
    for j in range(diff.shape[1]):
        if any(x != 0 for x in diff[:, j]):
            return j
    return None


def _split(j: int, d: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        j, r = divmod(j, d)
        out.append(r)
    return out[::-1]


def check_symmetric_frobenius(b: Backend, F: Obj, mu: Mor, eta: Mor, beta: Mor) -> FrobeniusReport:
    """Evaluate each Frobenius axiom independently; failures become report entries."""
    _require_strict(b)
    d = F.dim
    if mu.matrix.shape != (d, d * d):
        raise ShapeMismatch("multiplication must be a map F (x) F -> F")
    if eta.matrix.shape != (d, b.dualizing().dim):
        raise ShapeMismatch("unit must be a map K -> F")
    if beta.matrix.shape != (b.unit().dim, d * d):
        raise ShapeMismatch("pairing must be a map F (x) F -> I")
    one = Matrix.identity(b.field, d)
    M = mu.matrix
    res, wit = {}, {}

    bad = _first_bad_column(M @ kron(M, one), M @ kron(one, M))
    res["associativity"] = bad is None
    if bad is not None:
        wit["associativity"] = _split(bad, d, 3)

    bad_l = _first_bad_column(M @ kron(eta.matrix, one), one)
    bad_r = _first_bad_column(M @ kron(one, eta.matrix), one)
    res["unitality"] = bad_l is None and bad_r is None
    if not res["unitality"]:
        wit["unitality"] = [bad_l if bad_l is not None else bad_r]

    try:
        self_duality(b, F, beta)
        res["self_duality"] = True
    except (Degenerate, NotSymmetric, NotEquivariant) as e:
        res["self_duality"] = False
        wit["self_duality"] = e.code

    bad = _first_bad_column(beta.matrix @ kron(M, one), beta.matrix @ kron(one, M))
    res["invariance"] = bad is None
    if bad is not None:
        wit["invariance"] = _split(bad, d, 3)

    maps = {"multiplication": mu, "unit": eta, "pairing": beta}
    bad_maps = [k for k, m in maps.items() if not b.is_morphism(m)]
    res["equivariance"] = not bad_maps
    if bad_maps:
        wit["equivariance"] = bad_maps
    return FrobeniusReport(res, wit)


@dataclass(eq=False)
class FrobeniusData:
    backend: Backend
    F: Obj
    mu: Mor
    eta: Mor
    beta: Mor
    _dual: tuple | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.F.dim

    @property
    def psi(self) -> Mor:
        return self._self_duality()[0]

    @property
    def delta(self) -> Mor:
        return self._self_duality()[1]

    def _self_duality(self):
        if self._dual is None:
            self._dual = self_duality(self.backend, self.F, self.beta)
        return self._dual

    def pairing(self) -> np.ndarray:
        return pairing_matrix(self.beta, self.dim)

    def copairing(self) -> np.ndarray:
        return self.delta.matrix.a.reshape(self.dim, self.dim)

    def counit(self) -> np.ndarray:
        """``eps(x) = beta(x, eta)`` as a vector of values on the basis."""
        return np.dot(self.pairing(), self.eta.matrix.a[:, 0])

    def product(self, x, y) -> np.ndarray:
        d = self.dim
        return np.dot(self.mu.matrix.a, np.multiply.outer(x, y).reshape(d * d))

    def report(self) -> FrobeniusReport:
        return check_symmetric_frobenius(self.backend, self.F, self.mu, self.eta, self.beta)


def frobenius_data(b: Backend, F: Obj, mu: Matrix, eta: Matrix, beta: Matrix,
                   check: bool = True) -> FrobeniusData:
    """Wrap matrices as Frobenius data; with ``check`` every axiom must hold."""
    _require_strict(b)
    d = F.dim
    if mu.shape != (d, d * d) or eta.shape != (d, 1) or beta.shape != (1, d * d):
        raise ShapeMismatch(f"Frobenius data shapes do not fit an object of dimension {d}")
    FF = b.tensor(F, F)
    data = FrobeniusData(b, F, Mor(FF, F, mu), Mor(b.dualizing(), F, eta), Mor(FF, b.unit(), beta))
    if check:
        rep = data.report()
        if not rep.ok:
            raise InvalidFrobeniusData("failed axioms: " + ", ".join(rep.failed()))
    return data


def check_commutative(b: Backend, data: FrobeniusData) -> bool:
    sw = b.braiding(data.F, data.F)
    return data.mu.matrix @ sw.matrix == data.mu.matrix


def twist_composite(b: Backend, data: FrobeniusData) -> Mor:
    """``mu . c . (theta (x) id)``; the balancing ``theta`` is the identity in every backend."""
    theta = b.identity(data.F)
    return data.mu @ b.braiding(data.F, data.F) @ b.tensor_mor(theta, b.identity(data.F))


def check_frobenius_isomorphism(f: Mor, src: FrobeniusData, dst: FrobeniusData) -> bool:
    if f.matrix.shape != (dst.dim, src.dim) or invert(f.matrix) is None:
        return False
    ff = kron(f.matrix, f.matrix)
    return (f.matrix @ src.mu.matrix == dst.mu.matrix @ ff
            and f.matrix @ src.eta.matrix == dst.eta.matrix
            and dst.beta.matrix @ ff == src.beta.matrix)


# ---------------------------------------------------------------- standard examples

def from_algebra(b: Backend, F: Obj, alg: Algebra, pairing, check: bool = True) -> FrobeniusData:
    """Frobenius data from structure constants and a pairing matrix."""
    if alg.dim != F.dim:
        raise ShapeMismatch("algebra and object dimensions differ")
    B = pairing if isinstance(pairing, Matrix) else Matrix.from_rows(b.field, pairing)
    if B.shape != (alg.dim, alg.dim):
        raise ShapeMismatch("pairing must be dim x dim")
    beta = Matrix(b.field, B.a.reshape(1, -1).copy())
    eta = Matrix.column(b.field, list(alg.unit))
    return frobenius_data(b, F, alg.mul_matrix(), eta, beta, check)


def _vect_space(b: Backend, d: int) -> Obj:
    if not isinstance(b, VectBackend):
        raise UnsupportedBackend("this example lives in vect")
    return b.space(d)


def truncated_polynomial_data(b: VectBackend, unit=(1, 0), pairing=((0, 1), (1, 0)),
                              check: bool = True) -> FrobeniusData:
    """``k[x]/(x^2)`` with ``beta(1, x) = 1``."""
    mul = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    alg = Algebra(b.field, mul, list(unit), check=False)
    return from_algebra(b, _vect_space(b, 2), alg, [list(r) for r in pairing], check)


def _matrix_algebra(field, n: int) -> Algebra:
    N = n * n
    mul = [[[0] * N for _ in range(N)] for _ in range(N)]
    for i, j, l in product(range(n), repeat=3):
        mul[i * n + j][j * n + l][i * n + l] = 1
    return Algebra(field, mul, [1 if i == j else 0 for i in range(n) for j in range(n)], check=False)


def twisted_trace_data(b: VectBackend, weights, n: int = 2, check: bool = True) -> FrobeniusData:
    """``M_n(k)`` with ``beta(a, b) = tr(E a b)`` for ``E = diag(weights)``."""
    N = n * n
    B = [[0] * N for _ in range(N)]
    # tr(E E_ij E_kl) = w_i when j == k and l == i
    for i, j in product(range(n), repeat=2):
        B[i * n + j][j * n + i] = weights[i]
    return from_algebra(b, _vect_space(b, N), _matrix_algebra(b.field, n), B, check)


def matrix_algebra_data(b: VectBackend, n: int = 2, check: bool = True) -> FrobeniusData:
    """``M_n(k)`` with the trace pairing, basis ``E_ij`` at index ``i*n + j``."""
    return twisted_trace_data(b, [1] * n, n, check)


def split_algebra_data(b: VectBackend, n: int = 2, check: bool = True) -> FrobeniusData:
    mul = [[[1 if i == j == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    alg = Algebra(b.field, mul, [1] * n, check=False)
    B = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return from_algebra(b, _vect_space(b, n), alg, B, check)


def _group_algebra_constants(G):
    n = G.order
    mul = [[[1 if G.mul(a, c) == k else 0 for k in range(n)] for c in range(n)] for a in range(n)]
    unit = [1 if k == G.identity else 0 for k in range(n)]
    pairing = [[1 if G.mul(a, c) == G.identity else 0 for c in range(n)] for a in range(n)]
    return mul, unit, pairing


def group_algebra_data(b: Backend, group=None, check: bool = True) -> FrobeniusData:
    """``k[G]`` with ``beta(a, b)`` the coefficient of the identity in ``ab``.

    In ``rep`` the group acts by conjugation; in ``vect`` pass the group.
    """
    if isinstance(b, RepBackend):
        G, F = b.group, b.regular_adjoint()
    else:
        G, F = group, _vect_space(b, group.order)
    mul, unit, pairing = _group_algebra_constants(G)
    return from_algebra(b, F, Algebra(b.field, mul, unit, check=False), pairing, check)


def function_algebra_data(b: RepBackend, check: bool = True) -> FrobeniusData:
    """``k(G)`` with pointwise product, conjugation action and ``beta(d_g, d_h) = [g = h]``."""
    if not isinstance(b, RepBackend):
        raise UnsupportedBackend("function algebras need a group backend")
    n = b.group.order
    mul = [[[1 if a == c == k else 0 for k in range(n)] for c in range(n)] for a in range(n)]
    alg = Algebra(b.field, mul, [1] * n, check=False)
    pairing = [[1 if a == c else 0 for c in range(n)] for a in range(n)]
    return from_algebra(b, b.coend(), alg, pairing, check)
