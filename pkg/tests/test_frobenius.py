from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from opencorr.backends import (Group, Mor, cyclic_group, make_fmod, make_rep, make_vect,
                               symmetric_group, truncated_polynomial)
from opencorr.errors import (Degenerate, InvalidFrobeniusData, NotSymmetric, ShapeMismatch,
                             UnsupportedBackend)
from opencorr.exactla import QQ, Matrix, kron
from opencorr.frobenius import (check_commutative, check_frobenius_isomorphism,
                                frobenius_data, function_algebra_data,
                                group_algebra_data, matrix_algebra_data, self_duality,
                                split_algebra_data, truncated_polynomial_data, twist_composite,
                                twisted_trace_data)

from oracles import algebra_axioms


def constants(data):
    d = data.dim
    M = data.mu.matrix.a
    mul = [[[M[k, a * d + c] for k in range(d)] for c in range(d)] for a in range(d)]
    unit = list(data.eta.matrix.a[:, 0])
    return mul, unit, [list(r) for r in data.pairing()]


def all_examples():
    v = make_vect()
    s3 = make_rep(*symmetric_group(3))
    z2 = make_rep(*cyclic_group(2))
    return [
        truncated_polynomial_data(v),
        matrix_algebra_data(v, 2),
        matrix_algebra_data(v, 3),
        split_algebra_data(v, 3),
        group_algebra_data(v, Group(*symmetric_group(3))),
        group_algebra_data(s3),
        group_algebra_data(z2),
        function_algebra_data(s3),
        function_algebra_data(z2),
    ]


def test_examples_pass_every_axiom():
    for data in all_examples():
        rep = data.report()
        assert rep.ok, rep.failed()
        assert rep.to_json() == {k: "pass" for k in ("associativity", "unitality", "self_duality",
                                                        "invariance", "equivariance")}


def test_reports_agree_with_oracle():
    for data in all_examples():
        mul, unit, pairing = constants(data)
        ax = algebra_axioms(mul, unit, pairing)
        assert all(ax.values())


def test_corruptions_fail_exactly_one_axiom():
    v = make_vect()
    cases = {
        "self_duality": [truncated_polynomial_data(v, pairing=((1, 0), (0, 0)), check=False),
                         twisted_trace_data(v, [1, 2], check=False)],
        "unitality": [truncated_polynomial_data(v, unit=(1, 1), check=False)],
    }
    for axiom, datas in cases.items():
        for data in datas:
            assert data.report().failed() == [axiom]
    # the oracle agrees: the twisted trace is invariant but not symmetric
    ax = algebra_axioms(*constants(twisted_trace_data(v, [1, 2], check=False)))
    assert ax == {"associativity": True, "unitality": True, "invariance": True, "symmetric": False}


def test_failure_witnesses():
    v = make_vect()
    rep = truncated_polynomial_data(v, pairing=((1, 0), (0, 0)), check=False).report()
    assert rep.to_json()["witness"] == {"self_duality": "Degenerate"}
    rep = twisted_trace_data(v, [1, 2], check=False).report()
    assert rep.witness["self_duality"] == "NotSymmetric"


def test_broken_associativity_and_equivariance():
    v = make_vect()
    d = truncated_polynomial_data(v)
    mu = d.mu.matrix.a.copy()
    mu[1, 3] = QQ(1)      # x * x = x
    data = frobenius_data(v, d.F, Matrix(QQ, mu), d.eta.matrix, d.beta.matrix, check=False)
    failed = data.report().failed()
    mul, unit, pairing = constants(data)
    ax = algebra_axioms(mul, unit, pairing)
    assert ("associativity" in failed) == (not ax["associativity"])
    assert ("invariance" in failed) == (not ax["invariance"])

    # in an abelian group every element is central, so a wrong unit is still equivariant
    b = make_rep(*cyclic_group(2))
    g = group_algebra_data(b)
    data = frobenius_data(b, g.F, g.mu.matrix, Matrix.column(QQ, [0, 1]), g.beta.matrix, check=False)
    assert data.report().failed() == ["unitality"]
    s3 = make_rep(*symmetric_group(3))
    g = group_algebra_data(s3)
    bad_eta = Matrix.column(QQ, [0, 1, 0, 0, 0, 0])
    data = frobenius_data(s3, g.F, g.mu.matrix, bad_eta, g.beta.matrix, check=False)
    rep = data.report()
    assert not rep.results["equivariance"] and rep.witness["equivariance"] == ["unit"]


def test_frobenius_data_checks():
    v = make_vect()
    with pytest.raises(InvalidFrobeniusData):
        truncated_polynomial_data(v, unit=(1, 1))
    with pytest.raises(ShapeMismatch):
        frobenius_data(v, v.space(2), Matrix.identity(QQ, 2), Matrix.column(QQ, [1, 0]),
                       Matrix.zeros(QQ, 1, 4))
    b = make_fmod(truncated_polynomial(), Matrix.from_rows(QQ, [[0, 1], [1, 0]]))
    with pytest.raises(UnsupportedBackend):
        frobenius_data(b, b.regular(), Matrix.zeros(QQ, 2, 4), Matrix.column(QQ, [1, 0]),
                       Matrix.zeros(QQ, 1, 4))


def test_self_duality_zigzag():
    v = make_vect()
    for data in all_examples():
        b = data.backend
        psi, delta = data.psi, data.delta
        d = data.dim
        one = Matrix.identity(QQ, d)
        assert (kron(one, data.beta.matrix) @ kron(delta.matrix, one)).is_identity()
        assert (kron(data.beta.matrix, one) @ kron(one, delta.matrix)).is_identity()
        assert b.is_morphism(delta)
        assert np.all(np.dot(data.pairing(), data.copairing()) == np.eye(d, dtype=object))
    F = v.space(2)
    with pytest.raises(Degenerate):
        self_duality(v, F, pairing_row([1, 0, 0, 0]))
    with pytest.raises(NotSymmetric):
        self_duality(v, F, pairing_row([0, 1, 2, 0]))


def pairing_row(entries):
    v = make_vect()
    return Mor(v.tensor(v.space(2), v.space(2)), v.unit(), Matrix.from_rows(QQ, [entries]))


def test_commutativity():
    v = make_vect()
    assert check_commutative(v, truncated_polynomial_data(v))
    assert not check_commutative(v, matrix_algebra_data(v, 2))
    assert not check_commutative(v, group_algebra_data(v, Group(*symmetric_group(3))))
    assert check_commutative(v, group_algebra_data(v, Group(*cyclic_group(4))))
    b = make_rep(*symmetric_group(3))
    assert check_commutative(b, function_algebra_data(b))


def test_twist_composite_is_opposite_product():
    v = make_vect()
    data = matrix_algebra_data(v, 2)
    t = twist_composite(v, data)
    d = data.dim
    for a, c in product(range(d), repeat=2):
        ea = [QQ(int(i == a)) for i in range(d)]
        ec = [QQ(int(i == c)) for i in range(d)]
        col = t.matrix.a[:, a * d + c]
        assert np.all(col == data.product(np.array(ec, dtype=object), np.array(ea, dtype=object)))
    # with trivial balancing, commutativity makes the composite the product itself
    comm = truncated_polynomial_data(v)
    assert twist_composite(v, comm).matrix == comm.mu.matrix


def test_isomorphisms():
    v = make_vect()
    data = truncated_polynomial_data(v)
    assert check_frobenius_isomorphism(v.identity(data.F), data, data)
    for lam in (2, 3, Fraction(1, 2)):
        scale = Mor(data.F, data.F, Matrix.from_rows(QQ, [[1, 0], [0, lam]]))
        assert not check_frobenius_isomorphism(scale, data, data)
        # the same map is an isomorphism onto the copy with beta(1, x) = 1/lam
        other = truncated_polynomial_data(v, pairing=((0, 1 / Fraction(lam)), (1 / Fraction(lam), 0)))
        assert check_frobenius_isomorphism(scale, data, other)
    # x -> -x preserves the product but sends beta(1, x) = 1 to -1
    neg = Mor(data.F, data.F, Matrix.from_rows(QQ, [[1, 0], [0, -1]]))
    assert not check_frobenius_isomorphism(neg, data, data)
    flipped = truncated_polynomial_data(v, pairing=((0, -1), (-1, 0)))
    assert check_frobenius_isomorphism(neg, data, flipped)
    singular = Mor(data.F, data.F, Matrix.from_rows(QQ, [[1, 0], [0, 0]]))
    assert not check_frobenius_isomorphism(singular, data, data)


def test_group_algebra_automorphisms():
    # every group automorphism induces a Frobenius automorphism of k[G]
    v = make_vect()
    G = Group(*symmetric_group(3))
    data = group_algebra_data(v, G)
    for a in range(G.order):
        conj = Matrix.permutation(QQ, [G.conj(a, x) for x in range(G.order)])
        assert check_frobenius_isomorphism(Mor(data.F, data.F, conj), data, data)
    # a transposition of two non-identity elements is not multiplicative
    perm = list(range(G.order))
    others = [x for x in range(G.order) if x != G.identity]
    perm[others[0]], perm[others[1]] = perm[others[1]], perm[others[0]]
    swapped = Matrix.permutation(QQ, perm)
    auto = [Matrix.permutation(QQ, [G.conj(a, x) for x in range(G.order)]) for a in range(G.order)]
    if swapped not in auto:
        assert not check_frobenius_isomorphism(Mor(data.F, data.F, swapped), data, data)
