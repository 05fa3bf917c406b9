import pytest
from hypothesis import given, settings, strategies as st

from flasque import intmat as im
from flasque.errors import ZeroClass
from flasque.groups import build_group, enumerate_subgroups, family_specs, parse_family, whole_group
from flasque.homalg import (Inconclusive, cocycle_h1, find_isomorphism, flabby_coflabby, is_coflabby,
                            is_flabby)
from flasque.lattices import (LatticeMorphism, corpus, direct_sum, dual, permutation, regular,
                              sign, trivial)
from flasque.resolutions import (ExactTriple, StablePermutationCertificate, certify_stably_permutation,
                                 coflabby_embedding, coflasque_resolution, ext1_realize,
                                 flabby_resolution, h1_measure)

SMALL = ["C2", "C3", "C4", "D3", "C6", "D4", "Q8", "D5"]


def corpus_lattice(names=SMALL, max_rank=12):
    return st.sampled_from(names).flatmap(
        lambda n: st.tuples(st.just(build_group(parse_family(n))), st.integers(0, 19))
    ).map(lambda t: corpus(t[0])[t[1]]).filter(lambda M: M.rank <= max_rank)


def _permutation_certified(M, budget=4):
    cert = certify_stably_permutation(M, budget=budget)
    return isinstance(cert, StablePermutationCertificate) and cert.verify()


def test_coflasque_cover_of_sign(group):
    C2 = group("C2")
    T = coflasque_resolution(sign(C2))
    assert T.verify()
    assert T.middle.rank == 2 and T.left.rank == 1
    assert im.equal(T.left.gens[0], [[1]])


def test_coflasque_cover_of_trivial(group):
    C2 = group("C2")
    T = coflasque_resolution(trivial(C2))
    assert T.verify()
    # some column of the cover maps onto the generator of Z
    assert any(abs(int(x)) == 1 for x in T.project.matrix[0])


@given(corpus_lattice())
@settings(max_examples=30)
def test_resolutions_are_exact(M):
    T = coflasque_resolution(M)
    assert T.verify() and is_coflabby(T.left)
    F = flabby_resolution(M)
    assert F.verify() and is_flabby(F.right)
    assert dual(F.middle).same_matrices(F.middle)


def test_flabby_resolution_examples(group):
    C2 = group("C2")
    E = flabby_resolution(sign(C2)).right
    assert find_isomorphism(E, trivial(C2)).verify()
    D3 = group("D3")
    T = flabby_resolution(trivial(D3))
    assert is_flabby(T.right)
    for P in (trivial(C2), regular(C2)):
        assert _permutation_certified(flabby_resolution(P).right)


def test_exact_triple_detects_broken_maps(group):
    C2 = group("C2")
    T = flabby_resolution(sign(C2))
    broken = ExactTriple(T.left, T.middle, T.right, LatticeMorphism(T.left, T.middle, 2 * T.inject.matrix),
                         T.project)
    assert not broken.verify()


# ------------------------------------------------------------ extensions

def test_zero_class_rejected(group):
    C2 = group("C2")
    with pytest.raises(ZeroClass):
        ext1_realize(sign(C2), whole_group(C2), [0])
    T = ext1_realize(sign(C2), whole_group(C2), [0], allow_split=True)
    assert T.verify() and T.middle.rank == 2


def test_nonsplit_extension_of_sign(group):
    C2 = group("C2")
    S = sign(C2)
    c = cocycle_h1(S, whole_group(C2))
    order, vec = c.classes[0]
    assert order == 2
    T = ext1_realize(S, whole_group(C2), vec, c.generators)
    assert T.verify()
    assert find_isomorphism(T.middle, regular(C2)).verify()


@given(corpus_lattice(max_rank=8))
@settings(max_examples=25)
def test_extensions_are_additive_and_kill_the_class(M):
    for H in enumerate_subgroups(M.group).representatives:
        c = cocycle_h1(M, H)
        for _, vec in c.classes[:1]:
            T = ext1_realize(M, H, vec, c.generators)
            assert T.middle.rank == M.rank + M.group.order // H.order
            assert T.verify()


def test_coflabby_embedding_examples(group):
    C2 = group("C2")
    R = regular(C2)
    T = coflabby_embedding(R)
    assert T.middle.same_matrices(R) and T.right.rank == 0
    T = coflabby_embedding(sign(C2))
    assert find_isomorphism(T.middle, R).verify()
    assert T.right.rank == 1


@pytest.mark.parametrize("spec", family_specs(12), ids=str)
def test_coflabby_embedding_on_corpus(spec):
    G = build_group(spec)
    for M in corpus(G):
        before = h1_measure(M)
        T = coflabby_embedding(M)
        assert T.verify() and is_coflabby(T.middle)
        assert h1_measure(T.middle) <= before


@pytest.mark.parametrize("name", ["C3", "C6", "D3", "D5"])
def test_coflabby_embeddings_are_invertible_over_cyclic_sylow(group, name):
    G = group(name)
    for M in corpus(G, 8):
        C = coflabby_embedding(M).middle
        assert flabby_coflabby(C).invertible is True


# --------------------------------------------------------- certificates

def test_permutation_lattice_certifies_without_complement(group):
    D3 = group("D3")
    for H in enumerate_subgroups(D3).representatives:
        cert = certify_stably_permutation(permutation(D3, H), budget=0)
        assert isinstance(cert, StablePermutationCertificate) and cert.complement == ()


def test_sign_resolution_certifies(group):
    assert _permutation_certified(flabby_resolution(sign(group("C2"))).right)


def test_generic_lattice_is_inconclusive(group):
    C2 = group("C2")
    assert isinstance(certify_stably_permutation(sign(C2), budget=2), Inconclusive)


def test_flabby_classes_add_on_direct_sums(group):
    # both sides are stably permutation over C_2, so their classes agree
    C2 = group("C2")
    S = sign(C2)
    E12 = flabby_resolution(direct_sum(S, S)).right
    E1 = flabby_resolution(S).right
    assert _permutation_certified(E12)
    assert _permutation_certified(direct_sum(E1, E1))


def test_coflabby_embedding_keeps_flabby_class(group):
    C2 = group("C2")
    M = sign(C2)
    C = coflabby_embedding(M).middle
    assert _permutation_certified(flabby_resolution(C).right)
    assert _permutation_certified(flabby_resolution(M).right)
