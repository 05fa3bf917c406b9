"""Concrete instances of the devissage machinery for epsilon-groups.

Every quotient Zpi / <f(sigma)> with f | X^N - 1 (N = ord sigma) is free over
Z on the images of sigma^j t_c, j < deg f, where t_c runs over the coset
representatives of <sigma>.  All actions below are read off the group
table, so the rings, ideals and maps are explicit integer matrices.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import intmat as im
from .arith import divisors, euler_phi
from .cyclo import IntPolynomial, cyclotomic, devissage_schedule, x_power_minus_one
from .errors import (BadDivisor, ExactnessFailure, GeneratorRelationFailure, IdempotentFailure,
                     InconsistentInvariants, InvalidParameters, IsoFailure, NonvanishingH0,
                     NotStable)
from .groups import (CyclicTimesDihedral, FiniteGroup, build_group, enumerate_subgroups, epsilon,
                     is_epsilon_group, subgroup_from_elements, whole_group)
from .homalg import (IsoCertificate, certificate_from_matrix, find_isomorphism, flabby_coflabby, h1,
                     is_flabby, tate_h0)
from .lattices import (LatticeMorphism, PiLattice, cyclotomic_quotient, direct_sum, dual,
                       left_cosets, permutation, poly_of, regular, restrict, saturated_quotient,
                       star_twist, sublattice)
from .resolutions import ExactTriple, StablePermutationCertificate, certify_stably_permutation

X = IntPolynomial.X


# ------------------------------------------------------------ group ring

class GroupRingElement:
    """Finitely supported sum of group elements with integer coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group: FiniteGroup, terms=None):
        self.group = group
        self.terms = {g: c for g, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, group, g, c=1):
        return cls(group, {g: c})

    @classmethod
    def sigma_poly(cls, group, f: IntPolynomial, shift: int = 0):
        """f(sigma) * sigma^shift."""
        s, out = group.sigma, {}
        for i, c in enumerate(f.coeffs):
            g = group.power(s, i + shift)
            out[g] = out.get(g, 0) + c
        return cls(group, out)

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.group, out)

    def __neg__(self):
        return GroupRingElement(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {g: c * other for g, c in self.terms.items()})
        t, out = self.group.table, {}
        for g, a in self.terms.items():
            row = t[g]
            for h, b in other.terms.items():
                k = row[h]
                out[k] = out.get(k, 0) + a * b
        return GroupRingElement(self.group, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def conjugate(self, lam: int):
        """lam x lam^-1"""
        G = self.group
        return GroupRingElement(G, {G.conj(lam, g): c for g, c in self.terms.items()})

    def is_central(self) -> bool:
        return all(self.conjugate(g) == self for g in self.group.gen_indices)

    def vector(self) -> np.ndarray:
        v = np.zeros(self.group.order, dtype=object)
        for g, c in self.terms.items():
            v[g] = c
        return im.as_int_array(v.reshape(-1, 1))[:, 0]

    def __repr__(self):
        return " + ".join(f"{c}*g{g}" for g, c in sorted(self.terms.items())) or "0"


def _sigma_data(G: FiniteGroup):
    if not is_epsilon_group(G):
        raise InvalidParameters(f"{G.family} is not an epsilon-group")
    return G.sigma_decomposition


def tilde_phi(G: FiniteGroup, d: int) -> GroupRingElement:
    """sigma^(-phi(d)/2) Phi_d(sigma); sigma - 1 and sigma + 1 for d = 1, 2."""
    N = _sigma_data(G)[0]
    if d < 1 or N % d:
        raise BadDivisor(f"{d} does not divide ord(sigma) = {N}")
    if d <= 2:
        return GroupRingElement.sigma_poly(G, cyclotomic(d))
    z = GroupRingElement.sigma_poly(G, cyclotomic(d), -(euler_phi(d) // 2))
    assert z.is_central(), f"tilde Phi_{d} is not central"
    return z


def regular_multiplication(G: FiniteGroup, g: int, side: str = "left") -> np.ndarray:
    """Matrix of e_h -> e_{gh} (left) or e_h -> e_{hg} (right) on Zpi."""
    P = np.zeros((G.order, G.order), dtype=np.int64)
    for h in range(G.order):
        P[G.table[g][h] if side == "left" else G.table[h][g], h] = 1
    return P


@dataclass(frozen=True, eq=False)
class TwoSidedIdealHandle:
    group: FiniteGroup
    generators: tuple          # GroupRingElements
    basis: np.ndarray          # columns, regular coordinates, HNF

    def contains(self, x: GroupRingElement) -> bool:
        return im.in_span(self.basis, x.vector().tolist())

    def same_as(self, other: "TwoSidedIdealHandle") -> bool:
        return im.equal(self.basis, other.basis)


def two_sided_ideal(G: FiniteGroup, generators) -> TwoSidedIdealHandle:
    """Ideal generated by the given elements, checked two-sided and
    saturated; raises NotStable otherwise."""
    cols = [(x * GroupRingElement.of(G, g)).vector() for x in generators for g in range(G.order)]
    B = im.row_basis(np.array(cols, dtype=object))
    B = im.as_int_array(im.row_hnf(B)[0]).T
    if B.size == 0:      # f(sigma) = 0 gives the zero ideal
        B = np.zeros((G.order, 0), dtype=np.int64)
    for g in G.gen_indices:
        for side in ("left", "right"):
            if im.solve_integer(B, regular_multiplication(G, g, side) @ B) is None:
                raise NotStable("ideal is not two-sided")
    if not im.is_saturated(B):
        raise NotStable("ideal is not saturated in Zpi")
    return TwoSidedIdealHandle(G, tuple(generators), B)


def sigma_ideal(G: FiniteGroup, f: IntPolynomial) -> TwoSidedIdealHandle:
    return two_sided_ideal(G, [GroupRingElement.sigma_poly(G, f)])


# ------------------------------------------------ quotients Zpi / <f(sigma)>

def _power_residues(f: IntPolynomial, N: int) -> list:
    """Coefficient lists of X^i mod f, i < N."""
    deg, out = f.degree(), []
    cur = IntPolynomial.const(1) % f
    x = X(1)
    for _ in range(N):
        out.append([cur.coeff(j) for j in range(deg)])
        cur = (cur * x) % f
    return out


@dataclass(frozen=True, eq=False)
class SigmaQuotient:
    """Zpi / <f(sigma)> with basis sigma^j t_c (index c * deg + j)."""
    group: FiniteGroup
    poly: IntPolynomial
    N: int
    reps: tuple
    decomp: tuple
    residues: list = field(repr=False)

    @property
    def deg(self) -> int:
        return self.poly.degree()

    @property
    def rank(self) -> int:
        return self.deg * len(self.reps)

    def element(self, g: int) -> np.ndarray:
        """Image of a group element."""
        i, c = self.decomp[g]
        v = np.zeros(self.rank, dtype=np.int64)
        v[c * self.deg:(c + 1) * self.deg] = self.residues[i]
        return v

    def basis_element(self, j: int, c: int) -> int:
        G = self.group
        return G.m(G.power(G.sigma, j), self.reps[c])

    def embed(self, P: IntPolynomial, c: int = 0) -> np.ndarray:
        """Image of P(sigma) t_c."""
        v = np.zeros(self.rank, dtype=object)
        for i, a in enumerate(P.coeffs):
            if a:
                v += a * self.element(self.basis_element(i % self.N, c)).astype(object)
        return im.as_int_array(v.reshape(-1, 1))[:, 0]

    def _mult_matrix(self, g: int, side: str) -> np.ndarray:
        G = self.group
        cols = []
        for c in range(len(self.reps)):
            for j in range(self.deg):
                b = self.basis_element(j, c)
                cols.append(self.element(G.m(g, b) if side == "left" else G.m(b, g)))
        return np.array(cols, dtype=np.int64).T.reshape(self.rank, self.rank)

    def left(self, g: int) -> np.ndarray:
        return self._mult_matrix(g, "left")

    def right(self, g: int) -> np.ndarray:
        return self._mult_matrix(g, "right")

    @cached_property
    def lattice(self) -> PiLattice:
        return PiLattice(self.group, self.rank, tuple(self.left(g) for g in self.group.gen_indices))

    def reduction_to(self, other: "SigmaQuotient") -> np.ndarray:
        """The surjection onto Zpi / <g(sigma)> for g | f."""
        if not other.poly.divides(self.poly):
            raise InvalidParameters("reduction needs a divisor")
        cols = []
        for c in range(len(self.reps)):
            for j in range(self.deg):
                cols.append(other.element(self.basis_element(j, c)))
        return np.array(cols, dtype=np.int64).T.reshape(other.rank, self.rank)


def sigma_quotient(G: FiniteGroup, f: IntPolynomial) -> SigmaQuotient:
    N, reps, decomp = _sigma_data(G)
    if not (f.is_monic() and f.divides(x_power_minus_one(N))):
        raise InvalidParameters(f"{f} must be a monic divisor of X^{N} - 1")
    return SigmaQuotient(G, f, N, reps, decomp, _power_residues(f, N))


def ideal_quotient(J: SigmaQuotient, E: IntPolynomial) -> tuple:
    """<E(sigma)> / <F(sigma)> inside Zpi / <F> with basis E sigma^j t_c,
    j < deg F - deg E.  Returns (lattice, inclusion matrix)."""
    if not E.divides(J.poly):
        raise InvalidParameters("E must divide F")
    k = J.deg - E.degree()
    cols = [J.embed(E * X(j), c) for c in range(len(J.reps)) for j in range(k)]
    K = np.array(cols, dtype=np.int64).T.reshape(J.rank, len(cols))
    L, K = sublattice(J.lattice, K, saturate=False)
    return L, K


def _restricted(K: np.ndarray, A: np.ndarray) -> np.ndarray:
    out = im.solve_integer(K, im.mm(A, K))
    if out is None:
        raise NotStable("sublattice not stable")
    return out


# ------------------------------------------------------------ quotient rings

@dataclass(frozen=True, eq=False)
class QuotientRing:
    """A quotient of Zpi that is free over Z, with its multiplication."""
    quotient: SigmaQuotient
    consts: np.ndarray = field(repr=False)    # consts[a, b] = basis_a * basis_b

    @property
    def group(self):
        return self.quotient.group

    @property
    def lattice(self) -> PiLattice:
        return self.quotient.lattice

    @property
    def rank(self) -> int:
        return self.quotient.rank

    def element(self, g: int) -> np.ndarray:
        return self.quotient.element(g)

    @property
    def one(self):
        return self.element(self.group.identity)

    @property
    def zeta(self):
        return self.element(self.group.sigma)

    @property
    def u_tau(self):
        return self.element(self.group.gen("tau"))

    @property
    def u_rho(self):
        return self.element(self.group.gen("rho"))

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        out = np.tensordot(np.multiply.outer(x, y), self.consts.astype(object), axes=([0, 1], [0, 1]))
        return im.as_int_array(out.reshape(-1, 1))[:, 0]

    def right_mult_matrix(self, y) -> np.ndarray:
        cols = [self.mul(np.eye(self.rank, dtype=np.int64)[a], y) for a in range(self.rank)]
        return np.array(cols, dtype=np.int64).T.reshape(self.rank, self.rank)

    def check_associative(self, sample: int | None = None, seed: int = 0) -> bool:
        r = self.rank
        triples = [(a, b, c) for a in range(r) for b in range(r) for c in range(r)]
        if sample is not None and len(triples) > sample:
            triples = random.Random(seed).sample(triples, sample)
        T = self.consts
        for a, b, c in triples:
            left = T[a, b] @ T[:, c]
            right = T[b, c] @ T[a]
            if not np.array_equal(left, right):
                return False
        e = self.one
        return all(np.array_equal(self.mul(e, v), v) and np.array_equal(self.mul(v, e), v)
                   for v in np.eye(r, dtype=np.int64))

    def check_action(self) -> bool:
        """The lattice action is left multiplication by generator images."""
        for g, A in zip(self.group.gen_indices, self.lattice.gens):
            if not np.array_equal(A, self.left_mult_matrix(g)):
                return False
        return True

    def left_mult_matrix(self, g: int) -> np.ndarray:
        x = self.element(g)
        cols = [self.mul(x, v) for v in np.eye(self.rank, dtype=np.int64)]
        return np.array(cols, dtype=np.int64).T.reshape(self.rank, self.rank)


def quotient_ring(G: FiniteGroup, f: IntPolynomial, check: bool = True) -> QuotientRing:
    Q = sigma_quotient(G, f)
    r, t = Q.rank, G.table
    basis = [Q.basis_element(j, c) for c in range(len(Q.reps)) for j in range(Q.deg)]
    consts = np.zeros((r, r, r), dtype=np.int64)
    for a, x in enumerate(basis):
        for b, y in enumerate(basis):
            consts[a, b] = Q.element(t[x][y])
    R = QuotientRing(Q, consts)
    if check:
        ok = R.check_associative(None if r <= 24 else 20000)
        assert ok and R.check_action(), "structure constants are inconsistent"
    return R


def lambda_ring(G: FiniteGroup, d: int, check: bool = True) -> QuotientRing:
    """Lambda_d = Zpi / <Phi_d(sigma)>."""
    N = _sigma_data(G)[0]
    if d < 1 or N % d:
        raise BadDivisor(f"{d} does not divide ord(sigma) = {N}")
    return quotient_ring(G, cyclotomic(d), check)


# --------------------------------------------------------------- the tower

@dataclass
class TowerStep:
    k: int
    d: int
    e: int
    exact: bool
    j_equal: bool | None = None
    iso: bool | None = None
    multiplier: tuple = ()

    def ok(self) -> bool:
        return self.exact and self.j_equal is not False and self.iso is not False


@dataclass
class TowerReport:
    family: str
    n: int
    steps: list
    torsion_free: bool
    top_identified: bool
    invertible: str

    @property
    def ok(self) -> bool:
        return self.torsion_free and self.top_identified and all(s.ok() for s in self.steps)

    def to_json(self) -> str:
        return json.dumps({
            "family": self.family, "n": self.n, "ok": self.ok,
            "torsion_free": self.torsion_free, "top_identified": self.top_identified,
            "invertible": self.invertible,
            "steps": [{"k": s.k, "d": s.d, "e": s.e, "exact": s.exact, "j_equal": s.j_equal,
                       "iso": s.iso, "multiplier": list(s.multiplier)} for s in self.steps],
        }, sort_keys=True, indent=1)


def _check_tower_input(G, M, n):
    N = _sigma_data(G)[0]
    if n < 3 or N % n:
        raise InvalidParameters(f"need n >= 3 dividing ord(sigma) = {N}, got {n}")
    if M.group is not G:
        raise InvalidParameters("lattice over a different group")
    if M.same_matrices(regular(G)):
        return "regular"
    inv = flabby_coflabby(M).invertible
    if inv is not True:
        raise InvalidParameters("M must be invertible (or the regular lattice)")
    return "certified"


def sigma_multiplier(G: FiniteGroup, small: int, big: int, n: int) -> tuple:
    """Divisors D >= 3 with D | big, D not | small; their tilde Phi product
    maps the layer indexed by small onto the one indexed by big."""
    Ds = tuple(D for D in divisors(big) if small % D)
    assert all(D >= 3 for D in Ds)
    return Ds


def _multiplier_poly(Ds: tuple, N: int) -> IntPolynomial:
    """Product of the tilde Phi_D as a polynomial in X modulo X^N - 1."""
    P, shift = IntPolynomial.const(1), 0
    for D in Ds:
        P = P * cyclotomic(D)
        shift += euler_phi(D) // 2
    return (P * X((-shift) % N)) % x_power_minus_one(N)


def layer(G: FiniteGroup, S, k: int) -> tuple:
    """(Zpi/J, I/J lattice, inclusion, Zpi/I) for layer k."""
    J = sigma_quotient(G, S.F[k])
    I = sigma_quotient(G, S.E[k])
    A, K = ideal_quotient(J, S.E[k])
    return J, A, K, I


def verify_tower(G: FiniteGroup, M: PiLattice, n: int, raise_on_failure: bool = True) -> TowerReport:
    inv = _check_tower_input(G, M, n)
    S = devissage_schedule(n)
    N = _sigma_data(G)[0]
    top = S.length - 1

    # M / (sigma^n - 1) M is torsion free
    T = poly_of(M, x_power_minus_one(n), G.sigma)
    torsion_free = all(x in (0, 1) for x in im.elementary_divisors(T))

    layers, steps = {}, []
    for k in range(1, top + 1):
        J, A, K, I = layers[k] = layer(G, S, k)
        t = ExactTriple(A, J.lattice, I.lattice, LatticeMorphism(A, J.lattice, K),
                        LatticeMorphism(J.lattice, I.lattice, J.reduction_to(I)))
        bad = t.failures()
        if bad and raise_on_failure:
            raise ExactnessFailure("; ".join(bad), k)
        steps.append(TowerStep(k, S.d[k], S.e[k], not bad))

    for k in range(1, (top + 1) // 2):
        a, b = 2 * k, 2 * k + 1
        step = steps[a - 1]
        step.j_equal = (S.F[a] == S.F[a - 1] and
                        sigma_ideal(G, S.F[a]).same_as(sigma_ideal(G, S.F[a - 1])))
        if not step.j_equal and raise_on_failure:
            raise ExactnessFailure("J^(2k) != J^(2k-1)", k)
        src, tgt = (a, b) if S.e[a] < S.e[b] else (b, a)
        Ds = sigma_multiplier(G, S.e[src], S.e[tgt], n)
        z = _multiplier_poly(Ds, N)
        step.multiplier = Ds
        if S.G[src] != S.G[tgt]:
            step.iso = False
        else:
            Ltgt = layers[tgt][1]
            g = S.G[tgt]
            cols = []
            for c in range(len(layers[src][0].reps)):
                for j in range(g.degree()):
                    Q = (z * S.E[src] * X(j)) % S.F[tgt]
                    P = Q // S.E[tgt]
                    col = np.zeros(Ltgt.rank, dtype=np.int64)
                    col[c * g.degree():c * g.degree() + g.degree()] = [P.coeff(i) for i in range(g.degree())]
                    cols.append(col)
            Y = np.array(cols, dtype=np.int64).T.reshape(Ltgt.rank, len(cols))
            step.iso = certificate_from_matrix(layers[src][1], Ltgt, Y) is not None
        if not step.iso and raise_on_failure:
            raise IsoFailure(f"layers {src} and {tgt} are not isomorphic via {Ds}", k)

    # I^(1)/J^(1) is a module over Zpi / Phi_n(sigma)
    A1 = layers[1][1]
    top_identified = S.G[1] == cyclotomic(n) and not poly_of(A1, cyclotomic(n), G.sigma).any()
    report = TowerReport(str(G.family), n, steps, torsion_free, top_identified, inv)
    if raise_on_failure and not report.ok:
        raise ExactnessFailure("torsion or final identification failed")
    return report


# ---------------------------------------------------------------------- psi

def psi_generator(G: FiniteGroup, n: int) -> GroupRingElement:
    S = devissage_schedule(n)
    e1 = S.e[1]
    s = G.sigma
    if n % 2:
        u = GroupRingElement.of(G, s) - GroupRingElement.of(G, G.inv(s))
        for d in divisors(e1):
            if d > 1:
                u = u * tilde_phi(G, d)
    else:
        u = GroupRingElement.of(G, G.power(s, e1 // 2)) - GroupRingElement.of(G, G.power(s, -(e1 // 2)))
    for lam in range(G.order):
        if u.conjugate(lam) != u * epsilon(G, lam):
            raise GeneratorRelationFailure(f"lambda u lambda^-1 != eps(lambda) u for element {lam}")
    return u


def tensor_over_group_ring(A: PiLattice, right: list, M: PiLattice):
    """(A tensor_Zpi M)_0 for a bimodule A with right actions right[i] of
    the generators: the saturated quotient of A tensor_Z M by
    a r(g) x - a x g x."""
    G = A.group
    m = M.rank
    Im, Ia = im.identity(m), im.identity(A.rank)
    gens = tuple(np.kron(L, Im) for L in A.gens)
    big = PiLattice(G, A.rank * m, gens)
    rels = [np.kron(R, Im) - np.kron(Ia, B) for R, B in zip(right, M.gens)]
    return big, saturated_quotient(big, np.hstack(rels))


def psi_isomorphism(G: FiniteGroup, M: PiLattice, n: int) -> IsoCertificate:
    _check_tower_input(G, M, n)
    S = devissage_schedule(n)
    u = psi_generator(G, n)
    J, A, K, _ = layer(G, S, 1)
    right = [_restricted(K, J.right(g)) for g in G.gen_indices]
    big, T = tensor_over_group_ring(A, right, M)

    # coordinates of u in the basis E_1 sigma^j of I/J
    U = IntPolynomial.const(0)
    for g, c in u.terms.items():
        i, cc = J.decomp[g]
        assert cc == J.decomp[G.identity][1]
        U = U + IntPolynomial.const(c) * X(i)
    P = (U % S.F[1]) // S.E[1]
    c0 = J.decomp[G.identity][1]
    ucol = np.zeros((A.rank, 1), dtype=np.int64)
    g1 = S.G[1].degree()
    ucol[c0 * g1:(c0 + 1) * g1, 0] = [P.coeff(i) for i in range(g1)]
    psi = np.kron(ucol, im.identity(M.rank))

    Ms = star_twist(M)
    to_T = im.mm(T.map, psi)
    if not LatticeMorphism(Ms, T.lattice, to_T).is_equivariant():
        raise IsoFailure("x -> u (x) x is not equivariant on M*", 1)
    src = cyclotomic_quotient(Ms, cyclotomic(n))
    Y = im.mm(to_T, src.section)
    if not im.equal(im.mm(Y, src.map), to_T):
        raise IsoFailure("psi does not vanish on Phi_n(sigma) M*", 1)
    cert = certificate_from_matrix(src.lattice, T.lattice, Y)
    if cert is None:
        raise IsoFailure("psi is not an isomorphism", 1)
    return cert


# ------------------------------------------------------- idempotent split

def cyclotomic_integers(G: FiniteGroup, d: int, scale: IntPolynomial | None = None) -> PiLattice:
    """S_d = Z[zeta_d] on the power basis, sigma acting by zeta and tau by
    inversion (other generators trivially).  With scale = s(X), the
    sublattice s(zeta) S_d on the basis s(zeta) zeta^i."""
    f = cyclotomic(d)
    k = f.degree()

    def vec(P):
        return [(P % f).coeff(j) for j in range(k)]

    def mat(images):
        return np.array([vec(P) for P in images], dtype=np.int64).T.reshape(k, k)

    mats = []
    for nm, _ in G.generators:
        if nm == "sigma":
            mats.append(mat([X(i + 1) for i in range(k)]))
        elif nm == "tau":
            mats.append(mat([X((-i) % d) for i in range(k)]))
        else:
            mats.append(im.identity(k))
    S = PiLattice(G, k, tuple(mats))
    if scale is None:
        return S
    return sublattice(S, mat([scale * X(i) for i in range(k)]), saturate=False)[0]


@dataclass
class IdempotentSplit:
    ring: QuotientRing
    e: np.ndarray
    w: np.ndarray
    to_S: IsoCertificate
    to_Q: IsoCertificate
    total: IsoCertificate
    ranks: tuple


def idempotent_split(G: FiniteGroup, d: int) -> IdempotentSplit:
    """Lambda_d = Lambda_d e + Lambda_d (1 - e) with the summands certified
    isomorphic to S_d and Q_d = (zeta - zeta^-1) S_d."""
    if G.family.kind != "Dihedral" or d < 3 or d % 2 == 0:
        raise InvalidParameters("need a dihedral group and odd d >= 3")
    R = lambda_ring(G, d)
    s, t = G.sigma, G.gen("tau")
    one = R.one
    w = sum((R.element(G.power(s, j)) for j in range(1, (d - 1) // 2 + 1)),
            np.zeros(R.rank, dtype=np.int64))
    ut, ut_inv = R.element(t), R.element(G.inv(t))
    tw = R.mul(R.mul(ut, w), ut_inv)
    if (one + w + tw).any():
        raise IdempotentFailure("1 + w + tau(w) != 0")
    e = -R.mul(tw, one + ut)
    if not np.array_equal(R.mul(e, e), e):
        raise IdempotentFailure("e^2 != e")
    f = one - e

    def summand(x):
        B = im.row_basis(R.right_mult_matrix(x).T)
        B = im.as_int_array(im.row_hnf(B)[0]).T
        return sublattice(R.lattice, B)

    Le, Be = summand(e)
    Lf, Bf = summand(f)
    if Le.rank + Lf.rank != R.rank:
        raise IdempotentFailure("summand ranks do not add up")

    k = euler_phi(d)
    zs = [R.element(G.power(s, i)) for i in range(k)]
    into_e = np.array([R.mul(z, one + ut) for z in zs], dtype=np.int64).T
    into_f = np.array([R.mul(R.mul(z, one - ut), w) for z in zs], dtype=np.int64).T
    Sd = cyclotomic_integers(G, d)
    Qd = cyclotomic_integers(G, d, X(1) - X(d - 1))

    def certify(src, B, cols, what):
        Y = im.solve_integer(B, cols)
        cert = None if Y is None else certificate_from_matrix(src, sublattice(R.lattice, B, False)[0], Y)
        if cert is None:
            raise IdempotentFailure(f"{what} summand is not certified")
        return cert

    cS = certify(Sd, Be, into_e, "S_d")
    cQ = certify(Qd, Bf, into_f, "Q_d")
    tot = certificate_from_matrix(direct_sum(Sd, Qd), R.lattice, np.hstack([into_e, into_f]))
    if tot is None:
        raise IdempotentFailure("S_d + Q_d -> Lambda_d is not an isomorphism")
    return IdempotentSplit(R, e, w, cS, cQ, tot, (Le.rank, Lf.rank))


@dataclass
class FlabbyClassWitness:
    """0 -> M -> P -> E -> 0 with P permutation and E stably permutation,
    so the flabby class of M is trivial."""
    triple: ExactTriple
    certificate: object          # StablePermutationCertificate

    def verify(self) -> bool:
        return self.triple.verify() and is_flabby(self.triple.right) and self.certificate.verify()


def dual_cover_resolution(M: PiLattice, P: PiLattice, q, budget: int = 4) -> FlabbyClassWitness:
    """Dualize a surjection q: P -> M^o from a permutation lattice.  The
    cokernel of M -> P^o is the dual of ker q, and is certified stably
    permutation when it is."""
    Md = dual(M)
    q = im.as_int_array(q, Md.rank, P.rank)
    if not LatticeMorphism(P, Md, q).is_equivariant():
        raise IsoFailure("cover is not equivariant")
    Pd = dual(P)
    Q = saturated_quotient(Pd, q.T)
    t = ExactTriple(M, Pd, Q.lattice, LatticeMorphism(M, Pd, q.T),
                    LatticeMorphism(Pd, Q.lattice, Q.map))
    bad = t.failures()
    if bad:
        raise ExactnessFailure("; ".join(bad))
    cert = certify_stably_permutation(Q.lattice, budget=budget)
    if not isinstance(cert, StablePermutationCertificate):
        raise IsoFailure(f"cokernel not certified stably permutation: {cert}")
    return FlabbyClassWitness(t, cert)


def split_flabby_witnesses(G: FiniteGroup, budget: int = 4) -> dict:
    """Trivial flabby classes of Lambda_d and Q_d for D_{p^c}, d = p^c,
    from the covers Zpi -> Lambda_d and Z[pi/<tau>] -> S_d, using
    Lambda_d = Lambda_d^o and S_d^o = Q_d (both certified)."""
    N = _sigma_data(G)[0]
    if G.family.kind != "Dihedral" or N % 2 == 0 or N < 3:
        raise InvalidParameters("need D_m with m odd >= 3")
    R = lambda_ring(G, N)
    Sd = cyclotomic_integers(G, N)
    Qd = cyclotomic_integers(G, N, X(1) - X(N - 1))
    out = {}
    for name, M, other, cover, P in (
            ("Lambda", R.lattice, R.lattice, sigma_quotient(G, x_power_minus_one(N)).reduction_to(R.quotient),
             regular(G)),
            ("Q", Qd, Sd, _coset_cover(G, N), permutation(G, subgroup_from_elements(G, [G.gen("tau")])))):
        iso = find_isomorphism(other, dual(M), budget=2)
        if not isinstance(iso, IsoCertificate):
            raise IsoFailure(f"no certified isomorphism onto the dual of {name}")
        if P.rank == G.order:
            cover = im.mm(cover, _regular_to_sigma_basis(G))
        out[name] = dual_cover_resolution(M, P, im.mm(iso.morphism.matrix, cover), budget)
    return out


def _regular_to_sigma_basis(G: FiniteGroup) -> np.ndarray:
    """Change of basis from e_g to the sigma^j t_c ordering of Zpi."""
    Z = sigma_quotient(G, x_power_minus_one(_sigma_data(G)[0]))
    return np.array([Z.element(g) for g in range(G.order)], dtype=np.int64).T


def _coset_cover(G: FiniteGroup, d: int) -> np.ndarray:
    """Z[pi/<tau>] -> S_d, sigma^i <tau> -> zeta^i."""
    f = cyclotomic(d)
    res = _power_residues(f, d)
    N, _, decomp = _sigma_data(G)
    cols = [res[decomp[c[0]][0] % d] for c in left_cosets(subgroup_from_elements(G, [G.gen("tau")]))]
    return np.array(cols, dtype=np.int64).T


# ---------------------------------------------------------- C_2 lattices

def c2_decompose(M: PiLattice) -> tuple:
    """(a, b, c) with M = Z^a + Z_-^b + (ZC_2)^c."""
    G = M.group
    if G.order != 2:
        raise InvalidParameters("group must be C_2")
    H = whole_group(G)
    a = tate_h0(M, H).count(2)
    b = h1(M, H).count(2)
    c2, rem = divmod(M.rank - a - b, 2)
    fixed = M.rank - im.rank(M.rho(G.gen_indices[0]) - im.identity(M.rank))
    if rem or c2 < 0 or fixed != a + c2:
        raise InconsistentInvariants(f"a={a} b={b} rank={M.rank} fixed={fixed}")
    return a, b, c2


def cyclotomic_inversion_lattice(m: int) -> PiLattice:
    from .groups import Cyclic
    C2 = build_group(Cyclic(2))
    f = cyclotomic(m)
    res = _power_residues(f, m)
    k = f.degree()
    A = np.array([res[(-i) % m] for i in range(k)], dtype=np.int64).T
    return PiLattice(C2, k, (A,))


def inversion_lattice_is_free(m: int) -> bool:
    if m < 3 or m % 2 == 0:
        raise InvalidParameters("m must be odd and >= 3")
    return c2_decompose(cyclotomic_inversion_lattice(m)) == (0, 0, euler_phi(m) // 2)


# -------------------------------------------------- C_{q^f} x D_m sequences

@dataclass
class BuildingBlockResult:
    triple: ExactTriple
    h0_zero: dict                 # subgroup generators -> bool
    c2_free: tuple                # C_2 decomposition of N restricted to <tau>
    lattice_prime: PiLattice      # the right-hand term, a lattice over pi / <rho^(q^(f-1))>

    @property
    def ok(self) -> bool:
        return self.triple.verify() and all(self.h0_zero.values()) and self.c2_free[:2] == (0, 0)


def building_block_sequence(q: int, f: int, m: int, M: PiLattice | str = "regular") -> BuildingBlockResult:
    G = build_group(CyclicTimesDihedral(q ** f, m)) if not isinstance(M, PiLattice) else M.group
    if G.family.kind != "CyclicTimesDihedral" or G.family.params != (q ** f, m):
        raise InvalidParameters("lattice must live over C_{q^f} x D_m")
    if isinstance(M, str):
        from .lattices import construct
        sub = subgroup_from_elements(G, [G.gen("tau")]) if M == "permutation" else None
        M = construct(M, G, sub)
    s, r = G.sigma, G.gen("rho")
    Ms = star_twist(M)
    phi_m = poly_of(Ms, cyclotomic(m), s)
    phi_q = poly_of(Ms, cyclotomic(q ** f), r)
    rq = poly_of(Ms, x_power_minus_one(q ** (f - 1)), r)
    A = saturated_quotient(Ms, np.hstack([phi_q, phi_m]))
    B = saturated_quotient(Ms, phi_m)
    C = saturated_quotient(Ms, np.hstack([rq, phi_m]))
    try:
        i = _induced(A, B, rq)
        p = _induced(B, C, im.identity(M.rank))
    except NotStable as exc:
        raise ExactnessFailure(str(exc)) from None
    t = ExactTriple(A.lattice, B.lattice, C.lattice, LatticeMorphism(A.lattice, B.lattice, i),
                    LatticeMorphism(B.lattice, C.lattice, p))
    bad = t.failures()
    if bad:
        raise ExactnessFailure("; ".join(bad))
    N = A.lattice
    h0 = {}
    for H in enumerate_subgroups(G).representatives:
        h0[H.generators] = tate_h0(N, H).is_zero
    if not all(h0.values()):
        raise NonvanishingH0("Tate H^0 of N is nonzero", [k for k, v in h0.items() if not v])
    T = subgroup_from_elements(G, [G.gen("tau")])
    c2 = c2_decompose(restrict(N, T))
    return BuildingBlockResult(t, h0, c2, C.lattice)


def _induced(src, tgt, X):
    from .lattices import induced_map
    return induced_map(src, tgt, X)
