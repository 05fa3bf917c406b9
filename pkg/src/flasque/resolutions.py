"""Short exact sequences of lattices: coflasque covers, flabby resolutions,
extensions realizing H^1 classes, coflabby embeddings and stable
permutation certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import intmat as im
from .errors import (CoflasqueCheckFailed, FlabbyCheckFailed, NonDecreasingMeasure,
                     ZeroClass)
from .groups import Subgroup, enumerate_subgroups
from .homalg import (Inconclusive, IsoCertificate, cocycle_h1, cocycle_values, find_isomorphism,
                     h1, is_coboundary, is_coflabby, is_flabby)
from .lattices import (LatticeMorphism, PiLattice, direct_sum, dual, fixed_points, left_cosets,
                       permutation, sublattice, to_json, zero)


@dataclass(frozen=True, eq=False)
class ExactTriple:
    """0 -> left --inject--> middle --project--> right -> 0."""
    left: PiLattice
    middle: PiLattice
    right: PiLattice
    inject: LatticeMorphism
    project: LatticeMorphism

    def failures(self) -> list:
        i, p = self.inject.matrix, self.project.matrix
        out = []
        if not (self.inject.is_equivariant() and self.project.is_equivariant()):
            out.append("maps are not equivariant")
        if im.rank(i) != self.left.rank or not im.is_saturated(i):
            out.append("inject is not a split injection of groups")
        if self.right.rank and (im.rank(p) != self.right.rank or
                                any(d != 1 for d in im.elementary_divisors(p))):
            out.append("project is not surjective")
        if im.mm(p, i).any():
            out.append("project . inject != 0")
        if self.middle.rank != self.left.rank + self.right.rank:
            out.append("ranks are not additive")
        K = im.kernel_basis(p) if self.right.rank else im.identity(self.middle.rank)
        if K.shape[1] != self.left.rank or (
                K.shape[1] and im.rank(i) == i.shape[1] and im.solve_integer(i, K) is None):
            out.append("ker(project) != image(inject)")
        return out

    def verify(self) -> bool:
        return not self.failures()

    def to_json(self) -> str:
        return json.dumps({
            "left": json.loads(to_json(self.left)),
            "middle": json.loads(to_json(self.middle)),
            "right": json.loads(to_json(self.right)),
            "inject": im.to_rows(self.inject.matrix),
            "project": im.to_rows(self.project.matrix),
        }, sort_keys=True)


def _triple(left, middle, right, i, p) -> ExactTriple:
    T = ExactTriple(left, middle, right, LatticeMorphism(left, middle, i),
                    LatticeMorphism(middle, right, p))
    bad = T.failures()
    assert not bad, "; ".join(bad)
    return T


def coflasque_resolution(M: PiLattice) -> ExactTriple:
    """0 -> Q -> P -> M -> 0 with P = sum over subgroup representatives H
    of Z[G/H] tensor M^H, gH (x) v -> g v."""
    G = M.group
    pieces, cols = [], []
    for H in enumerate_subgroups(G).representatives:
        F = fixed_points(M, H)
        if F.shape[1] == 0:
            continue
        cosets = left_cosets(H)
        P_H = permutation(G, H)
        for j in range(F.shape[1]):
            v = F[:, j]
            pieces.append(P_H)
            cols += [im.mm(M.rho(c[0]), v.reshape(-1, 1))[:, 0] for c in cosets]
    P = direct_sum(*pieces) if pieces else zero(G)
    proj = np.array(cols, dtype=object).T if cols else np.zeros((M.rank, 0), dtype=object)
    proj = im.as_int_array(proj, M.rank, P.rank)
    Q, K = sublattice(P, im.kernel_basis(proj) if M.rank else im.identity(P.rank))
    if not is_coflabby(Q):
        raise CoflasqueCheckFailed("kernel of the permutation cover is not coflabby")
    return _triple(Q, P, M, K, proj)


def flabby_resolution(M: PiLattice) -> ExactTriple:
    """0 -> M -> P -> E -> 0, the dual of the coflasque cover of dual(M)."""
    T = coflasque_resolution(dual(M))
    P0, E = dual(T.middle), dual(T.left)
    if not is_flabby(E):
        raise FlabbyCheckFailed("cokernel of the flabby resolution is not flabby")
    return _triple(M, P0, E, T.project.matrix.T.copy(), T.inject.matrix.T.copy())


def _coset_data(H: Subgroup):
    """Coset representatives (identity first for H itself) and, for each
    group element g and coset i, (j, h) with g t_i = t_j h."""
    G = H.parent
    cosets = left_cosets(H)
    reps = [G.identity if G.identity in c else c[0] for c in cosets]
    where = {x: i for i, c in enumerate(cosets) for x in c}
    act = {}
    for g in range(G.order):
        for i, t in enumerate(reps):
            y = G.m(g, t)
            j = where[y]
            act[g, i] = (j, G.m(G.inv(reps[j]), y))
    return reps, where, act


def ext1_realize(M: PiLattice, H: Subgroup, cocycle, generators: tuple | None = None,
                 allow_split: bool = False) -> ExactTriple:
    """Extension 0 -> M -> C -> Z[G/H] -> 0 whose class restricts to the
    given H^1(H, M) class.  C = M + Z[G/H] with g e_i = rho(t_j) f(h) + e_j
    for g t_i = t_j h."""
    gens = tuple(generators if generators is not None else H.generators)
    G = M.group
    vec = [int(x) for x in cocycle]
    if is_coboundary(M, gens, vec) and not allow_split:
        raise ZeroClass("cocycle is a coboundary; the extension splits")
    f = cocycle_values(M, gens, vec)
    reps, where, act = _coset_data(H)
    n, k = M.rank, len(reps)
    mats = []
    for g in G.gen_indices:
        A = np.zeros((n + k, n + k), dtype=object)
        A[:n, :n] = M.rho(g)
        for i in range(k):
            j, h = act[g, i]
            A[:n, n + i] = im.mm(M.rho(reps[j]), f[h].reshape(-1, 1))[:, 0]
            A[n + j, n + i] = 1
        mats.append(A)
    C = PiLattice(G, n + k, tuple(mats)).validate()
    R = permutation(G, H)
    inject = np.vstack([im.identity(n), np.zeros((k, n), dtype=np.int64)])
    project = np.hstack([np.zeros((k, n), dtype=np.int64), im.identity(k)])
    T = _triple(M, C, R, inject, project)
    pushed = im.mm(np.kron(im.identity(len(gens)), inject), np.array(vec, dtype=object).reshape(-1, 1))
    assert is_coboundary(C, gens, pushed[:, 0].tolist()), "class survives in the extension"
    return T


def h1_measure(M: PiLattice) -> int:
    return sum(h1(M, H).order for H in enumerate_subgroups(M.group).representatives)


def coflabby_embedding(M: PiLattice, max_steps: int = 64) -> ExactTriple:
    """0 -> M -> C -> P -> 0 with C coflabby and P permutation, by killing
    H^1 classes one extension at a time."""
    G = M.group
    n = M.rank
    C, blocks = M, []
    measure = h1_measure(C)
    floor = len(enumerate_subgroups(G).representatives)    # every H^1 trivial
    for _ in range(max_steps):
        if measure == floor:
            break
        H, data = None, None
        for K in enumerate_subgroups(G).representatives:
            d = cocycle_h1(C, K)
            if d.classes:
                H, data = K, d
                break
        assert H is not None, "measure and cocycle computation disagree"
        _, vec = data.classes[0]
        vec = _push_into_submodule(C, n, data.generators, vec)
        step = ext1_realize(C, H, vec, data.generators)
        C = step.middle
        blocks.append(step.right)
        new = h1_measure(C)
        if new >= measure:
            raise NonDecreasingMeasure(f"H^1 measure {measure} -> {new}")
        measure = new
    else:
        raise NonDecreasingMeasure(f"no coflabby lattice after {max_steps} steps")
    P = direct_sum(*blocks) if blocks else zero(G)
    inject = np.vstack([im.identity(n), np.zeros((C.rank - n, n), dtype=np.int64)])
    project = np.hstack([np.zeros((C.rank - n, n), dtype=np.int64), im.identity(C.rank - n)])
    if not P.same_matrices(_quotient_block(C, n)):
        raise AssertionError("quotient is not the expected permutation lattice")
    return _triple(M, C, P, inject, project)


def _quotient_block(C: PiLattice, n: int) -> PiLattice:
    return PiLattice(C.group, C.rank - n, tuple(A[n:, n:] for A in C.gens))


def _push_into_submodule(C: PiLattice, n: int, gens: tuple, vec) -> list:
    """Replace a cocycle of C (= M + P block triangular) by a cohomologous
    one with values in the first n coordinates, using H^1(H, P) = 0."""
    r = C.rank
    if r == n:
        return [int(x) for x in vec]
    Q = _quotient_block(C, n)
    k = len(gens)
    vec = np.array([int(x) for x in vec], dtype=object)
    proj = np.concatenate([vec[i * r + n:(i + 1) * r] for i in range(k)])
    B = np.vstack([im.as_int_array(Q.rho(s)) - np.eye(r - n, dtype=np.int64) for s in gens])
    p = _solve_any(B, proj)
    if p is None:
        raise AssertionError("H^1 of a permutation lattice is not zero")
    lift = np.concatenate([np.zeros(n, dtype=object), np.array(p, dtype=object)])
    out = vec.copy()
    for i, s in enumerate(gens):
        out[i * r:(i + 1) * r] -= (C.rho(s).astype(object) - np.eye(r, dtype=object)).dot(lift)
    assert not any(out[i * r + n:(i + 1) * r].any() for i in range(k))
    return [int(x) for x in out]


def _solve_any(B, y):
    """Some integer x with B x = y (B of any rank), or None."""
    B = im.as_int_array(B)
    H, U = im.row_hnf(B.T, transform=True)   # U B^T = H, so B U^T = H^T
    r = im.rank(H)
    basis = H[:r].T
    if r == 0:
        return [0] * B.shape[1] if not any(int(v) for v in y) else None
    c = im.solve_integer(basis, np.array([int(v) for v in y], dtype=object).reshape(-1, 1))
    if c is None:
        return None
    x = im.mm(U[:r].T, c)[:, 0]
    assert im.equal(im.mm(B, x.reshape(-1, 1)), np.array([int(v) for v in y], dtype=object).reshape(-1, 1))
    return [int(v) for v in x]


# ------------------------------------------------- stable permutation

@dataclass(frozen=True, eq=False)
class StablePermutationCertificate:
    complement: tuple      # subgroups H with P1 = sum Z[G/H]
    target: tuple          # subgroups with P2 = sum Z[G/H]
    iso: IsoCertificate

    def verify(self) -> bool:
        return self.iso.verify()


def _perm_sum(G, subs):
    return direct_sum(*[permutation(G, H) for H in subs]) if subs else zero(G)


def _fixed_profile(M: PiLattice, reps) -> tuple:
    return tuple(fixed_points(M, K).shape[1] for K in reps)


def certify_stably_permutation(M: PiLattice, budget: int = 4, seed: int = 0):
    """Search M + P1 ~= P2 over permutation lattices P1 of rank <= budget."""
    G = M.group
    reps = list(enumerate_subgroups(G).representatives)
    index = {id(H): G.order // H.order for H in reps}
    prof_M = _fixed_profile(M, reps)
    cache = {}

    def prof(H):
        if id(H) not in cache:
            cache[id(H)] = _fixed_profile(permutation(G, H), reps)
        return cache[id(H)]

    def multisets(total):
        """Multisets of representatives whose indices sum to total."""
        out = []

        def rec(start, left, acc):
            if left == 0:
                out.append(tuple(acc))
                return
            for i in range(start, len(reps)):
                if index[id(reps[i])] <= left:
                    rec(i, left - index[id(reps[i])], acc + [reps[i]])
        rec(0, total, [])
        return out

    for extra in range(0, budget + 1):
        for P1 in multisets(extra):
            lhs = direct_sum(M, _perm_sum(G, P1)) if P1 else M
            target_prof = tuple(a + sum(prof(H)[i] for H in P1) for i, a in enumerate(prof_M))
            for P2 in multisets(lhs.rank):
                if tuple(sum(prof(H)[i] for H in P2) for i in range(len(reps))) != target_prof:
                    continue
                res = find_isomorphism(lhs, _perm_sum(G, P2), budget=max(budget, 1), seed=seed)
                if isinstance(res, IsoCertificate):
                    return StablePermutationCertificate(tuple(P1), tuple(P2), res)
    return Inconclusive(f"no stable permutation certificate with complement rank <= {budget}")
