import pytest
from hypothesis import given, strategies as st

from flasque.arith import divisors
from flasque.errors import InvalidParameters, NotEpsilonGroup, UnsupportedFamily
from flasque.groups import (Cyclic, CyclicTimesDihedral, Dihedral, Generic, Quaternion,
                            SemiDihedral, build_group, check_axioms, check_presentation,
                            prime_order_condition, enumerate_subgroups, epsilon, family_specs,
                            is_epsilon_group, parse_family, prime_condition_family, sylow_profile,
                            list_membership)


def test_trivial_group():
    assert build_group(Cyclic(1)).order == 1


def test_quaternion_twelve(group):
    G = group("Q12")
    assert G.order == 12
    s, t = G.gen("sigma"), G.gen("tau")
    assert G.element_orders[s] == 6
    assert G.power(t, 2) == G.power(s, 3)


def test_semidihedral_relation():
    G = build_group(SemiDihedral(3))
    s, t = G.gen("sigma"), G.gen("tau")
    assert G.order == 16
    assert G.m(G.m(G.inv(t), s), t) == G.power(s, 3)


@pytest.mark.parametrize("text, order", [("C7", 7), ("D5", 10), ("Q20", 20), ("C9xD5", 90),
                                         ("SD32", 32), ("M16", 16)])
def test_parse_family(text, order):
    G = build_group(parse_family(text))
    assert G.order == order
    assert str(G.family) == text


@pytest.mark.parametrize("bad", ["Q4", "SD8", "X3", "D0", "Q10"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidParameters):
        parse_family(bad)


def test_order_cap_on_construction():
    with pytest.raises(InvalidParameters):
        build_group(Cyclic(257))


@pytest.mark.parametrize("spec", family_specs(32), ids=str)
def test_axioms_and_presentation(spec):
    G = build_group(spec)
    check_axioms(G)
    check_presentation(G)


def test_generic_round_trip():
    G = build_group(Dihedral(3))
    H = build_group(Generic(G.mul.tolist(), "D3 table"))
    assert H.order == 6
    check_axioms(H)


# ------------------------------------------------------------ subgroups

@given(st.integers(1, 60))
def test_cyclic_subgroup_count(n):
    assert len(enumerate_subgroups(build_group(Cyclic(n)))) == len(divisors(n))


@given(st.integers(1, 30))
def test_dihedral_subgroup_count(n):
    # tau(n) cyclic subgroups of <sigma> plus sum of divisors of n dihedral ones
    expected = len(divisors(n)) + sum(divisors(n))
    assert len(enumerate_subgroups(build_group(Dihedral(n)))) == expected


def test_small_subgroup_counts(group):
    assert len(enumerate_subgroups(group("C6"))) == 4
    assert len(enumerate_subgroups(group("D3"))) == 6
    assert len(enumerate_subgroups(group("Q8"))) == 6


def _closure(G, elems):
    out = {G.identity} | set(elems)
    while True:
        new = {G.m(a, b) for a in out for b in out} - out
        if not new:
            return frozenset(out)
        out |= new


@pytest.mark.parametrize("name", ["D4", "Q8", "C2xD3", "SD16", "M16", "Q12", "D6"])
def test_subgroups_match_brute_force(group, name):
    G = group(name)
    brute = {_closure(G, [a, b]) for a in range(G.order) for b in range(G.order)}
    while True:
        joined = {_closure(G, A | B) for A in brute for B in brute} | brute
        if joined == brute:
            break
        brute = joined
    ours = {frozenset(H.elements) for H in enumerate_subgroups(G)}
    assert ours == brute


@pytest.mark.parametrize("spec", family_specs(24), ids=str)
def test_subgroup_invariants(spec):
    G = build_group(spec)
    subs = enumerate_subgroups(G)
    for H in subs:
        el = set(H.elements)
        assert G.identity in el and G.order % len(el) == 0
        assert all(G.m(a, G.inv(b)) in el for a in el for b in el)
        normal = all(G.conj(g, h) in el for g in range(G.order) for h in el)
        assert H.normal == normal
    reps = {frozenset(H.elements) for H in subs.representatives}
    for H in subs:
        conj = {frozenset(G.conj(g, h) for h in H.elements) for g in range(G.order)}
        assert len(conj & reps) == 1


# ---------------------------------------------------------------- sylow

@pytest.mark.parametrize("name, flags", [("D15", (True, True)), ("Q8", (False, False)),
                                         ("C12", (True, True)), ("D4", (False, True))])
def test_sylow_profiles(group, name, flags):
    p = sylow_profile(group(name))
    assert (p.all_sylow_cyclic, p.two_sylow_cyclic_or_dihedral) == flags


# -------------------------------------------------------------- epsilon

def test_epsilon_values(group):
    G = group("D3")
    assert epsilon(G, G.gen("tau")) == -1
    assert epsilon(G, G.gen("sigma")) == 1
    with pytest.raises(NotEpsilonGroup):
        epsilon(group("M16"), group("M16").gen("tau"))


@pytest.mark.parametrize("spec", [s for s in family_specs(64) if s.kind not in ("SemiDihedral", "Modular")],
                         ids=str)
def test_epsilon_is_multiplicative(spec):
    G = build_group(spec)
    if not is_epsilon_group(G):
        return
    eps = [epsilon(G, g) for g in range(G.order)]
    for a in range(G.order):
        for b in range(0, G.order, max(1, G.order // 16)):
            assert eps[G.m(a, b)] == eps[a] * eps[b]


# -------------------------------------------------------- classification

def test_classification_examples():
    assert list_membership(CyclicTimesDihedral(9, 5)).in_list
    assert list_membership(Quaternion(3)).in_list
    assert not list_membership(Quaternion(5)).in_list
    assert not list_membership(Dihedral(4)).in_list
    with pytest.raises(UnsupportedFamily):
        list_membership(Generic(build_group(Cyclic(2)).mul.tolist()))


def test_prime_order_condition_examples():
    assert all(prime_order_condition(1, m, 1) for m in range(1, 40, 2))
    assert prime_order_condition(1, 3, 2)
    assert prime_order_condition(9, 7, 1) == list_membership(CyclicTimesDihedral(9, 7)).in_list


@given(st.integers(0, 63).map(lambda k: 2 * k + 1), st.integers(1, 25).map(lambda k: 2 * k - 1),
       st.integers(1, 6))
def test_prime_condition_equivalence(n, m, d):
    from math import gcd
    if gcd(n, m) != 1 or n * 2 ** d > 128:
        return
    spec = prime_condition_family(n, m, d)
    c = prime_order_condition(n, m, d)
    if spec is None:
        assert not c
    else:
        assert list_membership(spec).in_list == c
