import json

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from flasque import intmat as im
from flasque.arith import divisors, euler_phi
from flasque.cyclo import IntPolynomial, cyclotomic, x_power_minus_one
from flasque.errors import BadPolynomial, GroupMismatch, InvalidParameters, NotEpsilonGroup
from flasque.groups import build_group, epsilon, parse_family, subgroup_from_elements, whole_group
from flasque.homalg import certificate_from_matrix, find_isomorphism, flabby_coflabby
from flasque.lattices import (PiLattice, combine, construct, corpus, cyclotomic_quotient, direct_sum, dual,
                              fixed_points, from_json, permutation, regular, restrict, sign,
                              star_twist, tensor, to_json, trivial)

SMALL = ["C2", "C6", "D3", "D4", "Q8", "D5", "C3xD3", "Q12"]
EPS = ["C2", "C6", "D3", "D4", "D5", "Q12", "C3xD5"]


def corpus_items(names, size=20):
    return st.sampled_from(names).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(0, size - 1)))


def _tau(G):
    return subgroup_from_elements(G, [G.gen("tau")])


def test_constructors(group):
    C2 = group("C2")
    assert regular(C2).rank == 2 and im.equal(regular(C2).gens[0], [[0, 1], [1, 0]])
    assert im.equal(sign(C2).gens[0], [[-1]])
    P = permutation(group("D3"), _tau(group("D3")))
    assert P.rank == 3
    for A in P.gens:
        assert sorted(np.abs(A).sum(axis=0).tolist()) == [1, 1, 1] and (A >= 0).all()
    assert construct("zero", C2).rank == 0
    with pytest.raises(InvalidParameters):
        construct("permutation", C2)
    with pytest.raises(NotEpsilonGroup):
        sign(group("M16"))


def test_star_twist(group):
    G = group("D3")
    R = regular(G)
    assert star_twist(star_twist(R)).same_matrices(R)
    # the diagonal sign matrix carries the twisted regular lattice onto the regular one
    D = np.diag([epsilon(G, g) for g in range(G.order)])
    cert = find_isomorphism(star_twist(R), R, budget=2)
    assert cert.verify()
    assert certificate_from_matrix(star_twist(R), R, D) is not None


def test_dual_of_permutation_is_itself(group):
    P = permutation(group("D3"), _tau(group("D3")))
    assert dual(P).same_matrices(P)


@given(corpus_items(SMALL))
def test_dual_is_an_involution(item):
    G = build_group(parse_family(item[0]))
    M = corpus(G)[item[1]]
    assert dual(dual(M)).same_matrices(M)


@given(corpus_items(EPS), corpus_items(EPS))
def test_direct_sum_and_star_twist_commute(a, b):
    G = build_group(parse_family(a[0]))
    M1, M2 = corpus(G)[a[1]], corpus(G)[b[1]]
    S = direct_sum(M1, M2)
    assert S.rank == M1.rank + M2.rank
    assert star_twist(S).same_matrices(direct_sum(star_twist(M1), star_twist(M2)))


def test_mixed_groups_rejected(group):
    with pytest.raises(GroupMismatch):
        direct_sum(trivial(group("C2")), trivial(group("C3")))


def test_tensor_rank_and_restrict(group):
    G = group("D3")
    T = tensor(regular(G), sign(G))
    assert T.rank == 6
    H = _tau(G)
    R = restrict(regular(G), H)
    assert R.rank == 6 and R.group.order == 2
    assert combine("dual", sign(G)).same_matrices(dual(sign(G)))


# -------------------------------------------------------------- quotients

def test_cyclotomic_quotients_of_c6(group):
    G = group("C6")
    Q1 = cyclotomic_quotient(regular(G), cyclotomic(1)).lattice
    assert Q1.rank == 1 and im.equal(Q1.gens[0], [[1]])
    Q6 = cyclotomic_quotient(regular(G), cyclotomic(6)).lattice
    assert Q6.rank == 2
    A = sympy.Matrix(im.to_rows(Q6.gens[0]))
    assert A.charpoly(sympy.Symbol("x")).as_expr() == sympy.Symbol("x") ** 2 - sympy.Symbol("x") + 1


def test_annihilating_polynomial_rejected(group):
    with pytest.raises(BadPolynomial):
        cyclotomic_quotient(regular(group("D3")), x_power_minus_one(3))
    with pytest.raises(BadPolynomial):
        cyclotomic_quotient(regular(group("D3")), IntPolynomial((2, 1)))


@pytest.mark.parametrize("name", ["C6", "D3", "D6", "Q12", "C3xD5", "D9", "Q20"])
def test_cyclotomic_quotient_rank(group, name):
    G = group(name)
    N = G.element_orders[G.sigma]
    R = regular(G)
    for d in divisors(N):
        if d == N == 1:
            continue
        q = cyclotomic_quotient(R, cyclotomic(d))
        assert q.lattice.rank == euler_phi(d) * G.order // N
        # rational rank count: rank of Phi_d(sigma) over Q is the complement
        P = sympy.Matrix(im.to_rows(_poly_matrix(R.rho(G.sigma), cyclotomic(d))))
        assert P.rank() == R.rank - q.lattice.rank
        q.lattice.validate()
        assert im.equal(im.mm(q.map, q.section), im.identity(q.lattice.rank))


def _poly_matrix(A, f):
    n = A.shape[0]
    out = np.zeros((n, n), dtype=object)
    P = np.eye(n, dtype=object)
    for c in f.coeffs:
        out = out + c * P
        P = P.dot(A.astype(object))
    return out


@pytest.mark.parametrize("name, n", [("D5", 5), ("D3", 3), ("Q12", 6), ("C3xD5", 15)])
def test_invertible_quotient_needs_no_saturation(group, name, n):
    G = group(name)
    for M in (regular(G), permutation(G, _tau(G))):
        assert flabby_coflabby(M).invertible is True
        K = _poly_matrix(M.rho(G.sigma), x_power_minus_one(n))
        cols = im.row_basis(K.T).T
        assert im.is_saturated(cols)


def test_fixed_points(group):
    C2 = group("C2")
    F = fixed_points(regular(C2), whole_group(C2))
    assert F.shape[1] == 1 and abs(F).tolist() == [[1], [1]]
    assert fixed_points(sign(C2), whole_group(C2)).shape[1] == 0
    D3 = group("D3")
    assert fixed_points(permutation(D3, _tau(D3)), whole_group(D3)).shape[1] == 1


@given(corpus_items(SMALL))
def test_json_round_trip(item):
    G = build_group(parse_family(item[0]))
    M = corpus(G)[item[1]]
    text = to_json(M)
    assert from_json(text, G).same_matrices(M)
    assert to_json(from_json(text)) == text


def test_json_rejects_wrong_group(group):
    text = to_json(trivial(group("C2")))
    with pytest.raises(GroupMismatch):
        from_json(text, group("C3"))
    bad = json.loads(text)
    bad["generators"] = {}
    with pytest.raises(InvalidParameters):
        from_json(json.dumps(bad))


def test_relations_enforced(group):
    G = group("C3")
    with pytest.raises(InvalidParameters):
        PiLattice(G, 1, ([[-1]],)).validate()
