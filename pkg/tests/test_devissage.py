import json

import numpy as np
import pytest
from hypothesis import example, given, settings, strategies as st

from flasque.arith import euler_phi
from flasque.cyclo import IntPolynomial, cyclotomic, devissage_schedule
from flasque.devissage import (GroupRingElement, cyclotomic_inversion_lattice, idempotent_split, lambda_ring, inversion_lattice_is_free,
                               psi_generator, psi_isomorphism, c2_decompose, sigma_ideal,
                               split_flabby_witnesses, building_block_sequence, tilde_phi,
                               two_sided_ideal, verify_tower)
from flasque.errors import BadDivisor, InvalidParameters, NotStable
from flasque.groups import build_group, epsilon, parse_family, subgroup_from_elements
from flasque.lattices import direct_sum, permutation, regular, sign, trivial


def _tau_perm(G):
    return permutation(G, subgroup_from_elements(G, [G.gen("tau")]))


# -------------------------------------------------------------- ideals

def test_tilde_phi_three(group):
    G = group("D3")
    s = G.sigma
    z = tilde_phi(G, 3)
    expected = GroupRingElement(G, {G.identity: 1, s: 1, G.power(s, 2): 1})
    assert z == expected and z.is_central()
    assert not tilde_phi(G, 1).is_central()
    with pytest.raises(BadDivisor):
        tilde_phi(G, 2)


@pytest.mark.parametrize("name", ["D9", "D15", "Q12", "Q20", "C3xD5", "D12"])
def test_tilde_phi_central_and_same_ideal(group, name):
    G = group(name)
    N = G.element_orders[G.sigma]
    for d in range(3, N + 1):
        if N % d == 0:
            z = tilde_phi(G, d)
            assert z.is_central()
            assert two_sided_ideal(G, [z]).same_as(sigma_ideal(G, cyclotomic(d)))


@pytest.mark.parametrize("name", ["D3", "D5", "D9", "C3xD5"])
def test_psi_one_and_sigma_minus_one_generate_the_same_ideal(group, name):
    G = group(name)
    s = G.sigma
    psi1 = GroupRingElement(G, {s: 1, G.inv(s): -1})
    assert two_sided_ideal(G, [psi1]).same_as(sigma_ideal(G, IntPolynomial((-1, 1))))


def test_non_ideal_rejected(group):
    G = group("D3")
    with pytest.raises(NotStable):
        two_sided_ideal(G, [GroupRingElement.of(G, G.gen("tau")) - GroupRingElement.of(G, G.identity)])


@given(st.sampled_from(["D5", "D9", "Q12", "C3xD5", "D6"]), st.integers(0, 40))
@example("D5", 3)                  # f = X^5 - 1, the zero ideal
@settings(max_examples=30)
def test_sigma_ideals_are_two_sided(name, k):
    G = build_group(parse_family(name))
    N = G.element_orders[G.sigma]
    ds = [d for d in range(1, N + 1) if N % d == 0]
    f = IntPolynomial((1,))
    for i, d in enumerate(ds):
        if k >> i & 1:
            f = f * cyclotomic(d)
    I = sigma_ideal(G, f)      # stability is checked on construction
    assert I.contains(GroupRingElement.sigma_poly(G, f))


# ---------------------------------------------------------------- rings

def test_lambda_rings(group):
    R = lambda_ring(group("D3"), 3)
    assert R.rank == 4
    assert np.array_equal(R.mul(R.u_tau, R.u_tau), R.one)
    R = lambda_ring(group("Q12"), 6)
    assert R.rank == 4
    assert np.array_equal(R.mul(R.u_tau, R.u_tau), -R.one)
    R = lambda_ring(group("C6"), 6)
    assert R.rank == 2
    x, y = R.zeta, R.mul(R.zeta, R.zeta)
    assert np.array_equal(R.mul(x, y), R.mul(y, x))
    # zeta_6^2 - zeta_6 + 1 = 0
    assert not (R.mul(R.zeta, R.zeta) - R.zeta + R.one).any()


@pytest.mark.parametrize("name", ["D5", "D9", "Q12", "Q20", "C3xD5", "D6"])
def test_lambda_ring_rank_and_action(group, name):
    G = group(name)
    N = G.element_orders[G.sigma]
    for d in range(1, N + 1):
        if N % d:
            continue
        R = lambda_ring(G, d)
        assert R.rank == euler_phi(d) * G.order // N
        assert R.check_associative(sample=2000) and R.check_action()


# ---------------------------------------------------------------- tower

def test_small_tower(group):
    G = group("D3")
    r = verify_tower(G, regular(G), 3)
    assert r.ok and len(r.steps) == 1
    assert devissage_schedule(3).G[1] == cyclotomic(3)


@pytest.mark.parametrize("name, n", [("D15", 15), ("Q12", 6), ("D21", 21), ("Q20", 10), ("D9", 9)])
def test_towers(group, name, n):
    r = verify_tower(group(name), regular(group(name)), n)
    assert r.ok
    data = json.loads(r.to_json())
    assert data["ok"] and data["torsion_free"] and data["top_identified"]
    assert all(s["exact"] for s in data["steps"])


def test_tower_on_invertible_lattice(group):
    G = group("D5")
    M = direct_sum(_tau_perm(G), trivial(G))
    assert verify_tower(G, M, 5).ok


def test_tower_rejects_non_invertible(group):
    G = group("D5")
    with pytest.raises(InvalidParameters):
        verify_tower(G, sign(G), 5)
    with pytest.raises(InvalidParameters):
        verify_tower(G, regular(G), 2)


def test_tower_report_is_deterministic(group):
    G = group("D15")
    assert verify_tower(G, regular(G), 15).to_json() == verify_tower(G, regular(G), 15).to_json()


# ------------------------------------------------------------------ psi

@pytest.mark.parametrize("name", ["D3", "D5", "D9", "Q12", "Q20", "C3xD5"])
def test_psi_generator_relation(group, name):
    G = group(name)
    n = G.element_orders[G.sigma]
    u = psi_generator(G, n)
    for lam in range(G.order):
        assert u.conjugate(lam) == u * epsilon(G, lam)


def test_psi_examples(group):
    D3 = group("D3")
    cert = psi_isomorphism(D3, _tau_perm(D3), 3)
    assert cert.verify() and cert.morphism.source.rank == 2
    assert psi_isomorphism(group("D7"), regular(group("D7")), 7).verify()
    Q = group("Q12")
    u = psi_generator(Q, 6)
    s = Q.sigma
    assert u == GroupRingElement(Q, {s: 1, Q.inv(s): -1})
    assert psi_isomorphism(Q, regular(Q), 6).verify()


# ------------------------------------------------------ idempotent split

def test_split_three(group):
    s = idempotent_split(group("D3"), 3)
    R = s.ring
    z2 = R.mul(R.zeta, R.zeta)
    assert np.array_equal(s.w, R.zeta)
    assert np.array_equal(s.e, -R.mul(z2, R.one + R.u_tau))
    assert np.array_equal(R.mul(s.e, s.e), s.e)


@pytest.mark.parametrize("pc, d", [(3, 3), (5, 5), (9, 3), (9, 9), (15, 5), (15, 15)])
def test_split_ranks(group, pc, d):
    s = idempotent_split(group(f"D{pc}"), d)
    assert s.to_S.verify() and s.to_Q.verify() and s.total.verify()
    assert s.ranks[0] + s.ranks[1] == s.ring.rank
    assert s.ranks[0] == s.ranks[1] == s.ring.rank // 2


def test_split_nine_has_rank_six_halves(group):
    assert idempotent_split(group("D9"), 9).ranks == (6, 6)


def test_split_flabby_classes_trivial(group):
    for name in ("D3", "D5"):
        w = split_flabby_witnesses(group(name))
        assert set(w) == {"Lambda", "Q"}
        assert all(x.verify() for x in w.values())


# ------------------------------------------------------- C_2 decomposition

def test_c2_decompose_examples(group):
    C2 = group("C2")
    assert c2_decompose(direct_sum(trivial(C2), sign(C2))) == (1, 1, 0)
    assert c2_decompose(regular(C2)) == (0, 0, 1)
    assert c2_decompose(cyclotomic_inversion_lattice(3)) == (0, 0, 1)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_c2_decompose_recovers_multiplicities(a, b, c):
    C2 = build_group(parse_family("C2"))
    parts = [trivial(C2)] * a + [sign(C2)] * b + [regular(C2)] * c
    if not parts:
        return
    assert c2_decompose(direct_sum(*parts)) == (a, b, c)


def test_inversion_lattice_free_values():
    assert inversion_lattice_is_free(3) and inversion_lattice_is_free(9) and inversion_lattice_is_free(15)
    assert c2_decompose(cyclotomic_inversion_lattice(9))[2] == 3
    assert c2_decompose(cyclotomic_inversion_lattice(15))[2] == 4


@pytest.mark.parametrize("m", range(3, 46, 2))
def test_inversion_lattice_free_range(m):
    assert inversion_lattice_is_free(m)


# ------------------------------------------------------ C_q^f x D_m blocks

@pytest.mark.parametrize("q, f, m", [(3, 1, 5), (3, 2, 5), (3, 1, 7)])
@pytest.mark.parametrize("kind", ["regular", "permutation"])
def test_building_blocks(q, f, m, kind):
    r = building_block_sequence(q, f, m, kind)
    assert r.ok
    assert r.triple.verify()
    assert all(r.h0_zero.values())
    assert r.c2_free[:2] == (0, 0)


def test_building_block_rejects_other_groups(group):
    with pytest.raises(InvalidParameters):
        building_block_sequence(3, 1, 5, regular(group("D5")))
