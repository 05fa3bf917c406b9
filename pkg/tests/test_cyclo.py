from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from flasque.arith import divisors, euler_phi, mobius, multiplicative_order, primitive_root
from flasque.cyclo import (CycloNumber, DirichletCharacter, IntPolynomial, Known, KnownUnderGRH,
                           TamelyRamifiedAt, Unknown, Unramified, basics, bernoulli_B1,
                           canonical_conductor, character_group, check_schedule, cyclotomic,
                           devissage_schedule, emit_table, h_minus, h_minus_determinant,
                           h_plus_status, ingest_table, cyclotomic_middle_checks, p3mod4_field_check,
                           prime_remains_prime, ramification_class, roots_of_unity_count,
                           unit_index, x_power_minus_one)

X = sympy.Symbol("x")


def as_sympy(P: IntPolynomial):
    return sympy.Poly(list(reversed(P.coeffs)), X)


# ---------------------------------------------------------------- arith

@given(st.integers(1, 2000))
def test_arith_matches_sympy(n):
    assert euler_phi(n) == sympy.totient(n)
    assert mobius(n) == sympy.mobius(n)
    assert list(divisors(n)) == sympy.divisors(n)


@given(st.integers(2, 500), st.integers(1, 500))
def test_multiplicative_order_matches_sympy(m, a):
    if gcd(a, m) == 1:
        assert multiplicative_order(a, m) == sympy.n_order(a, m)


@pytest.mark.parametrize("m", [3, 5, 9, 25, 27, 49, 18, 50])
def test_primitive_root_generates(m):
    g = primitive_root(m)
    assert multiplicative_order(g, m) == euler_phi(m)


@given(st.integers(1, 400))
def test_mobius_sums_to_indicator(n):
    assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)


# ---------------------------------------------------------- polynomials

def test_basics_of_six_and_twelve():
    b = basics(6)
    assert b.cyclotomics[6] == IntPolynomial((1, -1, 1))
    assert b.mu == 1
    assert basics(12).mu == 0
    prod = IntPolynomial((1,))
    for d in divisors(12):
        prod = prod * cyclotomic(d)
    assert prod == x_power_minus_one(12)


@given(st.integers(1, 120))
def test_cyclotomic_matches_sympy(n):
    assert as_sympy(cyclotomic(n)) == sympy.Poly(sympy.cyclotomic_poly(n, X), X)


@given(st.lists(st.integers(-5, 5), max_size=6), st.lists(st.integers(-5, 5), max_size=6))
def test_polynomial_ring_ops_match_sympy(a, b):
    A, B = IntPolynomial(tuple(a)), IntPolynomial(tuple(b))
    assert as_sympy(A * B) == as_sympy(A) * as_sympy(B)
    assert as_sympy(A + B) == as_sympy(A) + as_sympy(B)


@given(st.integers(1, 60), st.integers(1, 60))
def test_division_by_monic_cyclotomic(n, d):
    q, r = x_power_minus_one(n).divmod(cyclotomic(d))
    assert q * cyclotomic(d) + r == x_power_minus_one(n)
    assert r.is_zero() == (n % d == 0)


def test_cyclotomic_middle_checks():
    c = cyclotomic_middle_checks(3)
    assert (c.middle_coeff, c.phi_at_one) == (1, 3)
    assert cyclotomic_middle_checks(15).phi_at_one == 1
    assert cyclotomic_middle_checks(105).middle_coeff % 2 == 1


# ------------------------------------------------------------- schedule

def test_schedule_for_six():
    S = devissage_schedule(6)
    assert S.primes == (3, 2)
    assert S.d == (1, 3, 6, 2) and S.e == (6, 2, 1, 3)
    assert S.F[1] == S.F[2] == IntPolynomial((-1, 1, 0, -1, 1))
    assert S.G[1] == cyclotomic(6)
    assert S.F[1] == S.E[1] * S.G[1]


def test_schedule_for_a_prime():
    S = devissage_schedule(7)
    assert S.d == (1, 7) and S.e == (7, 1)
    assert S.F[1] == x_power_minus_one(7)
    assert S.G[1] == cyclotomic(7)


def test_schedule_pqr_pattern():
    S = devissage_schedule(105)
    assert S.e == (105, 35, 7, 21, 3, 1, 5, 15)


@given(st.integers(3, 300))
def test_schedule_invariants(n):
    S = devissage_schedule(n)
    check_schedule(S)
    assert sorted(S.d) == sorted(d for d in divisors(n) if mobius(d))
    for k, d in enumerate(S.d):
        assert mobius(d) == (-1) ** k
        assert S.e[k] * d == n
    for k in range(1, S.length):
        assert S.F[k] == S.E[k] * S.G[k]
        assert S.F[k].divides(x_power_minus_one(n))


# ----------------------------------------------------------- characters

def test_bernoulli_small_moduli():
    odd4 = [c for c in character_group(4) if c.is_odd]
    assert [bernoulli_B1(c).rational() for c in odd4] == [Fraction(-1, 2)]
    odd3 = [c for c in character_group(3) if c.is_odd]
    assert [bernoulli_B1(c).rational() for c in odd3] == [Fraction(-1, 3)]
    assert odd3[0].value(2).rational() == -1
    assert not any(c.is_odd for c in character_group(5) if c.is_trivial)


@pytest.mark.parametrize("m", [5, 7, 12, 15, 16, 20, 21])
def test_characters_are_multiplicative(m):
    chars = character_group(m)
    assert len(chars) == euler_phi(m)
    units = [a for a in range(1, m) if gcd(a, m) == 1]
    for chi in chars:
        for a in units:
            for b in units:
                assert chi.exponent(a * b % m) == (chi.exponent(a) + chi.exponent(b)) % chi.e
        assert all(chi.exponent(a) is None for a in range(m) if gcd(a, m) > 1)


def _complex_conjugate(z: CycloNumber) -> CycloNumber:
    num = IntPolynomial(())
    for i, c in enumerate(z.num.coeffs):
        num = num + IntPolynomial((c,)) * IntPolynomial.X((-i) % z.e)
    return CycloNumber(z.e, num, z.den)


@pytest.mark.parametrize("m", [7, 11, 15, 20, 24])
def test_bernoulli_conjugation_symmetry(m):
    for chi in character_group(m):
        B, Bbar = bernoulli_B1(chi), bernoulli_B1(chi.conj())
        assert Bbar == _complex_conjugate(B)
        if chi.is_odd:
            assert not bernoulli_B1(chi.primitive()).num.is_zero()


def _h_minus_with(m, gens):
    chars = [c for c in character_group(m, gens) if c.is_odd]
    e = chars[0].e
    prod = CycloNumber(e, IntPolynomial((1,)))
    for chi in chars:
        prim = chi.primitive()
        B = bernoulli_B1(DirichletCharacter(prim.modulus, e, prim.table))
        prod = prod * CycloNumber(e, -B.num, 2 * B.den)
    return prod.rational() * unit_index(m) * roots_of_unity_count(m)


@pytest.mark.parametrize("m, gens", [(15, (7, 11)), (21, (5, 13)), (23, (7,)), (35, (3, 6))])
def test_h_minus_independent_of_generators(m, gens):
    assert _h_minus_with(m, gens) == h_minus(m)


# --------------------------------------------------------- class numbers

def test_h_minus_small():
    assert h_minus(4) == 1
    assert all(h_minus(m) == 1 for m in range(3, 23) if m % 4 != 2)
    assert h_minus(23) == 3


@pytest.mark.parametrize("m", [m for m in range(3, 41) if m % 4 != 2])
def test_two_class_number_routes_agree(m):
    assert h_minus(m) == h_minus_determinant(m)


@pytest.mark.parametrize("p, h", [(29, 8), (31, 9), (37, 37), (41, 121), (43, 211), (47, 695)])
def test_h_minus_published_prime_values(p, h):
    assert h_minus(p) == h


def test_conductor_canonicalization():
    assert canonical_conductor(6) == 3
    assert h_minus(46) == h_minus(23)


def test_h_plus_table():
    assert h_plus_status(66) == Known(1)
    assert h_plus_status(128) == Known(1)
    assert h_plus_status(256) == Known(1)
    assert h_plus_status(161) == KnownUnderGRH(1)
    assert h_plus_status(512) == KnownUnderGRH(1)
    assert isinstance(h_plus_status(163), Unknown)


def test_table_round_trip():
    table = ingest_table(emit_table([3, 23, 163]))
    assert table[23] == (3, Known(1), "computed")
    assert isinstance(table[163][1], Unknown)


# ------------------------------------------------------------ predicates

def test_arithmetic_predicates():
    assert prime_remains_prime(5, 9)
    assert not prime_remains_prime(2, 7)
    assert ramification_class(15) == Unramified()
    assert ramification_class(27) == TamelyRamifiedAt(3)
    assert p3mod4_field_check(7) and not p3mod4_field_check(5)


def test_p3mod4_field_check_to_ten_thousand():
    for p in sympy.primerange(2, 10001):
        p3mod4_field_check(p)
