"""Tate cohomology of lattices, the flabby/coflabby predicates, equivariant
Hom lattices and isomorphism certificates."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import intmat as im
from .errors import DualityMismatch, GroupMismatch
from .groups import Subgroup, enumerate_subgroups, sylow_profile
from .intmat import (AbelianInvariants, SmithDecomposition, cokernel, hnf,  # noqa: F401
                     kernel_basis, saturate, snf)
from .lattices import LatticeMorphism, PiLattice, dual, fixed_points

ZERO = AbelianInvariants(0, ())


def _check_group(M: PiLattice, H: Subgroup):
    if H.parent is not M.group:
        raise GroupMismatch("subgroup of a different group")


def norm_matrix(M: PiLattice, H: Subgroup) -> np.ndarray:
    mats = [M.rho(h) for h in H.elements]
    if all(A.dtype == np.int64 for A in mats) and \
            max(im._maxabs(A) for A in mats) * len(mats) < im._INT64_SAFE:
        return np.sum(mats, axis=0, dtype=np.int64).reshape(M.rank, M.rank)
    return im.as_int_array(np.sum([A.astype(object) for A in mats], axis=0))


def augmentation_image(M: PiLattice, H: Subgroup) -> np.ndarray:
    """Columns spanning sum_g (rho(g) - 1) M; generators of H suffice."""
    n = M.rank
    blocks = [im.as_int_array(M.rho(s)) - np.eye(n, dtype=np.int64) for s in H.generators]
    if not blocks:
        return np.zeros((n, 0), dtype=np.int64)
    return np.hstack(blocks)


def tate_h0(M: PiLattice, H: Subgroup) -> AbelianInvariants:
    """M^H / N_H M."""
    _check_group(M, H)
    F = fixed_points(M, H)
    k = F.shape[1]
    if k == 0:
        return ZERO
    X = im.solve_integer(F, norm_matrix(M, H))
    assert X is not None, "norms must be fixed"
    out = cokernel(X, ambient=k)
    assert out.free_rank == 0
    return out


def tate_hm1(M: PiLattice, H: Subgroup) -> AbelianInvariants:
    """ker(N_H) / sum_g (rho(g) - 1) M."""
    _check_group(M, H)
    if M.rank == 0:
        return ZERO
    K = kernel_basis(norm_matrix(M, H))
    k = K.shape[1]
    if k == 0:
        return ZERO
    X = im.solve_integer(K, augmentation_image(M, H))
    assert X is not None, "augmentation image must lie in the norm kernel"
    out = cokernel(X, ambient=k)
    assert out.free_rank == 0
    return out


def h1(M: PiLattice, H: Subgroup, cross_check: bool = True) -> AbelianInvariants:
    """H^1(H, M) computed as Tate H^-1 of the dual lattice.  For cyclic H
    it must also equal Tate H^-1 of M itself (periodicity)."""
    _check_group(M, H)
    out = tate_hm1(dual(M), H)
    if cross_check and H.cyclic:
        other = tate_hm1(M, H)
        if other != out:
            raise DualityMismatch(f"H^1 = {out} but H^-1 = {other} on cyclic {H}")
    return out


# ----------------------------------------------------------- cocycles

@dataclass(frozen=True)
class CocycleH1:
    """H^1(H, M) from crossed homomorphisms.  A cocycle is stored by its
    values on `generators`, concatenated; `classes` lists (order, cocycle)
    for the generators of the cyclic factors."""
    lattice: PiLattice
    subgroup: Subgroup
    generators: tuple
    invariants: AbelianInvariants
    classes: tuple


def _cocycle_system(M: PiLattice, gens: tuple):
    """Linear maps L_x with f(x) = L_x v for every x in <gens>, v the
    generator values, plus the consistency constraints."""
    G = M.group
    n, k = M.rank, len(gens)
    L = {G.identity: np.zeros((n, n * k), dtype=object)}
    order = [G.identity]
    cons = []
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for j, s in enumerate(gens):
            y = G.m(s, x)
            Ly = M.rho(s).astype(object).dot(L[x])
            Ly[:, j * n:(j + 1) * n] += np.eye(n, dtype=object)
            if y in L:
                d = Ly - L[y]
                if np.any(d != 0):
                    cons.append(d)
            else:
                L[y] = Ly
                order.append(y)
    C = np.vstack(cons) if cons else np.zeros((0, n * k), dtype=object)
    return L, C


def cocycle_h1(M: PiLattice, H: Subgroup) -> CocycleH1:
    _check_group(M, H)
    gens = tuple(H.generators)
    n, k = M.rank, len(gens)
    if n == 0 or k == 0:
        return CocycleH1(M, H, gens, ZERO, ())
    _, C = _cocycle_system(M, gens)
    Z = kernel_basis(C) if C.shape[0] else np.eye(n * k, dtype=np.int64)
    B = np.vstack([im.as_int_array(M.rho(s)) - np.eye(n, dtype=np.int64) for s in gens])
    z = Z.shape[1]
    if z == 0:
        return CocycleH1(M, H, gens, ZERO, ())
    X = im.solve_integer(Z, B)
    assert X is not None, "coboundaries are cocycles"
    S = snf(X)
    d = list(S.diagonal) + [0] * (z - len(S.diagonal))
    Uinv = im.integer_inverse(S.U)
    classes = []
    for i, di in enumerate(d):
        if di != 1:
            assert di > 1, "H^1 of a finite group is finite"
            classes.append((int(di), im.mm(Z, Uinv[:, i:i + 1])[:, 0]))
    inv = AbelianInvariants(0, tuple(c for c, _ in classes))
    return CocycleH1(M, H, gens, inv, tuple(classes))


def cocycle_values(M: PiLattice, gens: tuple, vec) -> dict:
    """Extend generator values to the whole subgroup, {element: vector}."""
    L, C = _cocycle_system(M, gens)
    v = np.array([int(x) for x in vec], dtype=object)
    if C.shape[0] and np.any(C.dot(v) != 0):
        raise ValueError("not a cocycle")
    return {x: Lx.dot(v) for x, Lx in L.items()}


def is_coboundary(M: PiLattice, gens: tuple, vec) -> bool:
    n = M.rank
    B = np.vstack([im.as_int_array(M.rho(s)) - np.eye(n, dtype=np.int64) for s in gens])
    basis = im.row_basis(B.T).T
    if basis.shape[1] == 0:
        return not any(int(x) for x in vec)
    return im.in_span(basis, [int(x) for x in vec])


# ---------------------------------------------------- predicates

@dataclass(frozen=True)
class Undecidable:
    reason: str = ""

    def __bool__(self):
        raise TypeError("Undecidable has no truth value")

    def __str__(self):
        return "Undecidable"


@dataclass(frozen=True)
class FlabbyReport:
    flabby: bool
    coflabby: bool
    invertible: object


def is_flabby(M: PiLattice) -> bool:
    return all(tate_hm1(M, H).is_zero for H in enumerate_subgroups(M.group).representatives)


def is_coflabby(M: PiLattice) -> bool:
    return all(h1(M, H).is_zero for H in enumerate_subgroups(M.group).representatives)


def flabby_coflabby(M: PiLattice) -> FlabbyReport:
    fl = is_flabby(M)
    cofl = is_coflabby(M)
    prof = sylow_profile(M.group)
    if not (fl and cofl):
        # invertible lattices are always flabby and coflabby
        inv = False
    elif prof.all_sylow_cyclic or prof.two_sylow_cyclic_or_dihedral:
        inv = True
    else:
        inv = Undecidable("Sylow hypotheses of both invertibility criteria fail")
    return FlabbyReport(fl, cofl, inv)


# ------------------------------------------------------- Hom and isos

def _same(A: PiLattice, B: PiLattice):
    if A.group is not B.group:
        raise GroupMismatch(f"{A.group.family} vs {B.group.family}")


def hom_lattice(A: PiLattice, B: PiLattice) -> list:
    """Z-basis of Hom_pi(A, B) as B.rank x A.rank matrices."""
    _same(A, B)
    a, b = A.rank, B.rank
    if a == 0 or b == 0:
        return []
    eqs = []
    for name, _ in A.group.generators:
        RA = im.as_int_array(A.gen_matrix(name))
        RB = im.as_int_array(B.gen_matrix(name))
        # row-major vec: vec(RB X - X RA) = (RB kron I - I kron RA^T) vec X
        eqs.append(np.kron(RB, np.eye(a, dtype=np.int64)) - np.kron(np.eye(b, dtype=np.int64), RA.T))
    K = kernel_basis(np.vstack(eqs))
    return [im.as_int_array(K[:, j].reshape(b, a)) for j in range(K.shape[1])]


def lll_reduce(vectors: list, delta: Fraction = Fraction(3, 4)) -> list:
    """Textbook LLL on integer vectors, exact arithmetic."""
    B = [[int(x) for x in v] for v in vectors]
    n = len(B)
    if n <= 1:
        return B

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        Bs, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in B[i]]
            for j in range(i):
                mu[i][j] = dot(B[i], Bs[j]) / dot(Bs[j], Bs[j])
                v = [x - mu[i][j] * y for x, y in zip(v, Bs[j])]
            Bs.append(v)
        return Bs, mu

    Bs, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                B[k] = [x - q * y for x, y in zip(B[k], B[j])]
                Bs, mu = gram_schmidt()
        if dot(Bs[k], Bs[k]) >= (delta - mu[k][k - 1] ** 2) * dot(Bs[k - 1], Bs[k - 1]):
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            Bs, mu = gram_schmidt()
            k = max(k - 1, 1)
    return B


@dataclass(frozen=True)
class IsoCertificate:
    morphism: LatticeMorphism
    inverse: LatticeMorphism

    def verify(self) -> bool:
        X, Y = self.morphism.matrix, self.inverse.matrix
        return (self.morphism.is_equivariant() and self.inverse.is_equivariant()
                and im.equal(im.mm(X, Y), im.identity(X.shape[0]))
                and im.equal(im.mm(Y, X), im.identity(X.shape[1])))


@dataclass(frozen=True)
class Inconclusive:
    reason: str = ""

    def __bool__(self):
        return False

    def __str__(self):
        return f"Inconclusive({self.reason})"


def certificate_from_matrix(A: PiLattice, B: PiLattice, X) -> IsoCertificate | None:
    X = im.as_int_array(X)
    if X.shape != (B.rank, A.rank) or abs(im.det(X)) != 1:
        return None
    Y = im.integer_inverse(X)
    if Y is None:
        return None
    cert = IsoCertificate(LatticeMorphism(A, B, X), LatticeMorphism(B, A, Y))
    return cert if cert.verify() else None


def find_isomorphism(A: PiLattice, B: PiLattice, budget: int = 2, seed: int = 0,
                     trials: int | None = None):
    """Semi-decision: search small combinations of a reduced Hom basis for
    a matrix of determinant +-1."""
    _same(A, B)
    if A.rank != B.rank:
        return Inconclusive("ranks differ")
    if A.rank == 0:
        Z = np.zeros((0, 0), dtype=np.int64)
        return IsoCertificate(LatticeMorphism(A, B, Z), LatticeMorphism(B, A, Z))
    if A.same_matrices(B):
        I = im.identity(A.rank)
        return IsoCertificate(LatticeMorphism(A, B, I), LatticeMorphism(B, A, I))
    basis = hom_lattice(A, B)
    if not basis:
        return Inconclusive("no equivariant maps")
    shape = basis[0].shape
    red = lll_reduce([b.reshape(-1).tolist() for b in basis])
    vecs = [np.array(v, dtype=object) for v in red]
    d = len(vecs)
    seen = set()

    def attempt(coeffs):
        key = tuple(coeffs)
        if key in seen or not any(coeffs):
            return None
        seen.add(key)
        X = sum((c * v for c, v in zip(coeffs, vecs) if c), np.zeros(len(vecs[0]), dtype=object))
        return certificate_from_matrix(A, B, X.reshape(shape))

    # single basis vectors, then pairs, then seeded random combinations
    for i in range(d):
        e = [0] * d
        e[i] = 1
        if (cert := attempt(e)) is not None:
            return cert
    for i in range(d):
        for j in range(i + 1, d):
            for ci, cj in product(range(-budget, budget + 1), repeat=2):
                if ci and cj:
                    e = [0] * d
                    e[i], e[j] = ci, cj
                    if (cert := attempt(e)) is not None:
                        return cert
    rng = random.Random(seed)
    for _ in range(trials if trials is not None else 200 * max(budget, 1)):
        e = [rng.randint(-budget, budget) for _ in range(d)]
        if (cert := attempt(e)) is not None:
            return cert
    return Inconclusive(f"no unimodular map within budget {budget}")
