"""pi-lattices as integer matrix representations, the standard
constructors, functors (sum, tensor, dual, sign twist, restriction) and
saturated quotients such as (M / f(sigma) M)_0."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import intmat as im
from .arith import divisors
from .cyclo import IntPolynomial, cyclotomic
from .errors import BadPolynomial, GroupMismatch, InvalidParameters, NotEpsilonGroup, NotStable
from .groups import (FiniteGroup, Subgroup, build_group, epsilon, parse_family,
                     subgroup_as_group)


@dataclass(frozen=True, eq=False)
class PiLattice:
    """Integer representation: gens[i] is the matrix of group.generators[i],
    acting on column vectors."""
    group: FiniteGroup
    rank: int
    gens: tuple

    def __post_init__(self):
        if len(self.gens) != len(self.group.generators):
            raise ValueError("one matrix per group generator required")
        mats = []
        for A in self.gens:
            A = im.as_int_array(A, self.rank, self.rank)
            if A.shape != (self.rank, self.rank):
                raise ValueError(f"matrix shape {A.shape} != rank {self.rank}")
            A.setflags(write=False)
            mats.append(A)
        object.__setattr__(self, "gens", tuple(mats))

    def __repr__(self):
        return f"PiLattice({self.group.family}, rank={self.rank})"

    def gen_matrix(self, name: str) -> np.ndarray:
        for (nm, _), A in zip(self.group.generators, self.gens):
            if nm == name:
                return A
        raise KeyError(name)

    @cached_property
    def action(self) -> tuple:
        """Matrix of every group element, derived from the generators by
        breadth-first search and checked on every edge of the Cayley graph
        (which forces rho(gh) = rho(g) rho(h))."""
        G = self.group
        acts = [None] * G.order
        acts[G.identity] = im.identity(self.rank)
        frontier = [G.identity]
        gens = list(zip(G.gen_indices, self.gens))
        while frontier:
            nxt = []
            for x in frontier:
                for g, A in gens:
                    y = G.table[g][x]
                    if acts[y] is None:
                        acts[y] = im.mm(A, acts[x])
                        nxt.append(y)
            frontier = nxt
        if any(a is None for a in acts):
            raise InvalidParameters("generators do not reach every element")
        for x in range(G.order):
            for g, A in gens:
                if not im.equal(im.mm(A, acts[x]), acts[G.table[g][x]]):
                    raise InvalidParameters(
                        f"matrices violate a relation of {G.family}")
        for a in acts:
            a.setflags(write=False)
        return tuple(acts)

    def validate(self) -> "PiLattice":
        self.action
        return self

    def rho(self, g: int) -> np.ndarray:
        if "action" not in self.__dict__:
            for h, A in zip(self.group.gen_indices, self.gens):
                if h == g:
                    return A
        return self.action[g]

    def same_matrices(self, other: "PiLattice") -> bool:
        return (self.group is other.group and self.rank == other.rank
                and all(im.equal(a, b) for a, b in zip(self.gens, other.gens)))


@dataclass(frozen=True, eq=False)
class LatticeMorphism:
    source: PiLattice
    target: PiLattice
    matrix: np.ndarray

    def __post_init__(self):
        A = im.as_int_array(self.matrix, self.target.rank, self.source.rank)
        if A.shape != (self.target.rank, self.source.rank):
            raise ValueError(f"morphism shape {A.shape}")
        object.__setattr__(self, "matrix", A)

    def is_equivariant(self) -> bool:
        return all(im.equal(im.mm(self.matrix, a), im.mm(b, self.matrix))
                   for a, b in zip(self.source.gens, self.target.gens))


# ------------------------------------------------------------ constructors

def zero(G: FiniteGroup) -> PiLattice:
    return PiLattice(G, 0, tuple(np.zeros((0, 0), dtype=np.int64) for _ in G.generators))


def trivial(G: FiniteGroup) -> PiLattice:
    return PiLattice(G, 1, tuple(im.identity(1) for _ in G.generators))


def sign_character(G: FiniteGroup) -> tuple:
    """Signs of the generators: epsilon for non-cyclic epsilon-groups; for
    cyclic groups of even order the generator maps to -1."""
    if G.family.kind == "Cyclic":
        if G.order % 2:
            raise NotEpsilonGroup(f"{G.family} has no nontrivial sign character")
        return (-1,)
    return tuple(epsilon(G, g) for g in G.gen_indices)


def sign(G: FiniteGroup) -> PiLattice:
    return PiLattice(G, 1, tuple(np.array([[s]], dtype=np.int64) for s in sign_character(G)))


def _perm_matrix(images, n) -> np.ndarray:
    # column j goes to row images[j]
    P = np.zeros((n, n), dtype=np.int64)
    for j, i in enumerate(images):
        P[i, j] = 1
    return P


def regular(G: FiniteGroup) -> PiLattice:
    """Basis e_h (h in G), g e_h = e_{gh}."""
    mats = tuple(_perm_matrix([G.table[g][h] for h in range(G.order)], G.order)
                 for g in G.gen_indices)
    return PiLattice(G, G.order, mats)


def left_cosets(H: Subgroup) -> tuple:
    """Left cosets gH as sorted element tuples, ordered by minimal element."""
    G = H.parent
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        c = tuple(sorted(G.table[g][h] for h in H.elements))
        seen.update(c)
        out.append(c)
    return tuple(out)


def permutation(G: FiniteGroup, H: Subgroup) -> PiLattice:
    """Z[G/H] with G permuting the left cosets."""
    if H.parent is not G:
        raise GroupMismatch("subgroup of a different group")
    cosets = left_cosets(H)
    where = {}
    for i, c in enumerate(cosets):
        for x in c:
            where[x] = i
    mats = tuple(_perm_matrix([where[G.table[g][c[0]]] for c in cosets], len(cosets))
                 for g in G.gen_indices)
    return PiLattice(G, len(cosets), mats)


def construct(kind: str, G: FiniteGroup, subgroup: Subgroup | None = None) -> PiLattice:
    if kind == "trivial":
        return trivial(G)
    if kind == "sign":
        return sign(G)
    if kind == "regular":
        return regular(G)
    if kind == "zero":
        return zero(G)
    if kind == "permutation":
        if subgroup is None:
            raise InvalidParameters("permutation needs a subgroup")
        return permutation(G, subgroup)
    raise InvalidParameters(f"unknown lattice kind {kind!r}")


# ---------------------------------------------------------------- functors

def _same_group(*Ls):
    G = Ls[0].group
    if any(L.group is not G for L in Ls):
        raise GroupMismatch("lattices over different groups")
    return G


def _block_diag(mats) -> np.ndarray:
    n = sum(A.shape[0] for A in mats)
    out = np.zeros((n, n), dtype=object)
    k = 0
    for A in mats:
        r = A.shape[0]
        out[k:k + r, k:k + r] = A
        k += r
    return im.as_int_array(out, n, n)


def direct_sum(*Ls: PiLattice) -> PiLattice:
    G = _same_group(*Ls)
    mats = tuple(_block_diag([L.gens[i] for L in Ls]) for i in range(len(G.generators)))
    return PiLattice(G, sum(L.rank for L in Ls), mats)


def tensor(A: PiLattice, B: PiLattice) -> PiLattice:
    G = _same_group(A, B)
    mats = tuple(im.as_int_array(np.kron(a.astype(object), b.astype(object)), A.rank * B.rank,
                                 A.rank * B.rank) for a, b in zip(A.gens, B.gens))
    return PiLattice(G, A.rank * B.rank, mats)


def dual(M: PiLattice) -> PiLattice:
    """g acts by the transpose of rho(g^-1).  Memoized both ways, so
    dual(dual(M)) is M itself."""
    D = M.__dict__.get("_dual")
    if D is None:
        G = M.group
        mats = tuple(im.as_int_array(M.rho(G.inv(g)).T.copy(), M.rank, M.rank)
                     for g in G.gen_indices)
        D = PiLattice(G, M.rank, mats)
        object.__setattr__(M, "_dual", D)
        object.__setattr__(D, "_dual", M)
    return D


def star_twist(M: PiLattice) -> PiLattice:
    """lambda * x = eps(lambda) lambda x."""
    signs = sign_character(M.group)
    return PiLattice(M.group, M.rank, tuple(s * A for s, A in zip(signs, M.gens)))


def restrict(M: PiLattice, H: Subgroup) -> PiLattice:
    """M viewed over H (a Generic group built from the subgroup)."""
    if H.parent is not M.group:
        raise GroupMismatch("subgroup of a different group")
    K, emb = subgroup_as_group(H)
    return PiLattice(K, M.rank, tuple(M.rho(emb[g]) for g in K.gen_indices))


def combine(op: str, *args, subgroup: Subgroup | None = None) -> PiLattice:
    if op == "direct_sum":
        return direct_sum(*args)
    if op == "tensor":
        return tensor(*args)
    if op == "dual":
        return dual(*args)
    if op == "star_twist":
        return star_twist(*args)
    if op == "restrict":
        return restrict(args[0], subgroup)
    raise InvalidParameters(f"unknown operation {op!r}")


def element_sum(M: PiLattice, elements) -> np.ndarray:
    out = np.zeros((M.rank, M.rank), dtype=object)
    for g in elements:
        out = out + M.rho(g).astype(object)
    return im.as_int_array(out, M.rank, M.rank)


def poly_of(M: PiLattice, f: IntPolynomial, g: int) -> np.ndarray:
    """f(rho(g)) by Horner's rule."""
    A = M.rho(g)
    out = np.zeros((M.rank, M.rank), dtype=object)
    I = np.eye(M.rank, dtype=object)
    for c in reversed(f.coeffs):
        out = im.mm(out, A).astype(object) + c * I
    return im.as_int_array(out, M.rank, M.rank)


# --------------------------------------------------------------- quotients

@dataclass(frozen=True, eq=False)
class Quotient:
    """(M / K)_0 with K the saturation of a submodule: the lattice, the
    surjection (rows span the annihilator of K) and a rational-free right
    inverse used to transport maps."""
    lattice: PiLattice
    map: np.ndarray          # rank(quotient) x rank(M)
    section: np.ndarray      # rank(M) x rank(quotient), map @ section = I


def saturated_quotient(M: PiLattice, K) -> Quotient:
    """Quotient of M by the saturation of the column span of K; raises
    NotStable unless the saturation is pi-stable."""
    K = im.as_int_array(K, M.rank)
    ann = im.left_kernel(K) if K.shape[1] else im.identity(M.rank)   # rows c with c K = 0
    C = im.row_hnf(ann)[0] if ann.shape[0] else ann
    q = C.shape[0]
    if q == 0:
        return Quotient(zero(M.group), np.zeros((0, M.rank), dtype=np.int64),
                        np.zeros((M.rank, 0), dtype=np.int64))
    # C is surjective onto Z^q since its rows span a saturated lattice
    S = _right_inverse(C)
    mats = []
    for A in M.gens:
        CA = im.mm(C, A)
        B = im.mm(CA, S)
        if not im.equal(im.mm(B, C), CA):
            raise NotStable("submodule is not stable under the action")
        mats.append(B)
    return Quotient(PiLattice(M.group, q, tuple(mats)), C, S)


def _right_inverse(C) -> np.ndarray:
    """Integer S with C S = I for C with saturated row span."""
    C = im.as_int_array(C)
    q, n = C.shape
    H, V = im.hnf(C)            # H = C V, lower echelon; saturation forces H = [I | 0] after reduction
    Hq = H[:, :q]
    inv = im.integer_inverse(Hq)
    if inv is None:
        raise NotStable("quotient map is not surjective")
    S = im.mm(V[:, :q], inv)
    assert im.equal(im.mm(C, S), im.identity(q))
    return S


def induced_map(src: Quotient, tgt: Quotient, X) -> np.ndarray:
    """Matrix Y with Y src.map = tgt.map X, or NotStable if X does not
    descend to the quotients."""
    X = im.as_int_array(X, tgt.map.shape[1], src.map.shape[1])
    rhs = im.mm(tgt.map, X)
    Y = im.mm(rhs, src.section)
    if not im.equal(im.mm(Y, src.map), rhs):
        raise NotStable("map does not descend to the quotients")
    return Y


def check_cyclotomic_factor(f: IntPolynomial, N: int) -> list:
    """Factor f into Phi_d with d | N (multiplicities allowed)."""
    rest = f
    found = []
    if rest.is_zero():
        raise BadPolynomial("zero polynomial")
    for d in divisors(N):
        P = cyclotomic(d)
        while rest.degree() >= P.degree():
            q, r = rest.divmod(P)
            if not r.is_zero():
                break
            found.append(d)
            rest = q
    if rest.coeffs not in ((1,), (-1,)):
        raise BadPolynomial(f"{f} is not a product of Phi_d with d | {N}")
    return found


def cyclotomic_quotient(M: PiLattice, f: IntPolynomial, sigma: int | None = None) -> Quotient:
    """(M / f(sigma) M)_0 with the induced action."""
    G = M.group
    if sigma is None:
        sigma = G.sigma
    if sigma is None:
        raise NotEpsilonGroup(f"{G.family} has no distinguished sigma")
    N = G.element_orders[sigma]
    found = check_cyclotomic_factor(f, N)
    if set(divisors(N)) <= set(found):
        raise BadPolynomial(f"X^{N} - 1 divides f, so f(sigma) = 0: use M itself")
    return saturated_quotient(M, poly_of(M, f, sigma))


def fixed_points(M: PiLattice, H: Subgroup) -> np.ndarray:
    """Saturated basis (columns) of the H-fixed vectors."""
    if M.rank == 0:
        return np.zeros((0, 0), dtype=np.int64)
    gens = [g for g in H.generators if g != M.group.identity]
    if not gens:
        return im.identity(M.rank)
    I = im.identity(M.rank)
    stacked = np.vstack([(M.rho(g).astype(object) - I) for g in gens])
    return im.kernel_basis(stacked)


# ---------------------------------------------------------- serialization

def to_json(M: PiLattice) -> str:
    rec = {
        "group": str(M.group.family),
        "rank": M.rank,
        "generators": {nm: [[int(x) for x in row] for row in A.tolist()]
                       for (nm, _), A in zip(M.group.generators, M.gens)},
    }
    return json.dumps(rec, sort_keys=True)


def from_json(text: str, group: FiniteGroup | None = None) -> PiLattice:
    rec = json.loads(text)
    G = group or build_group(parse_family(rec["group"]))
    if str(G.family) != rec["group"]:
        raise GroupMismatch(f"file is over {rec['group']}, not {G.family}")
    r = int(rec["rank"])
    mats = []
    for nm, _ in G.generators:
        if nm not in rec["generators"]:
            raise InvalidParameters(f"missing generator {nm}")
        mats.append(im.as_int_array(rec["generators"][nm], r, r))
    return PiLattice(G, r, tuple(mats)).validate()


# ------------------------------------------------------- sublattices, corpus

def sublattice(M: PiLattice, K, saturate: bool = True) -> tuple:
    """(L, K) where L is the action on the pi-stable sublattice spanned by
    the columns of K, saturated first unless saturate=False (then K must
    be a basis and its columns are kept as the basis of L)."""
    K = im.as_int_array(K, M.rank)
    if saturate:
        K = im.saturate(K)
    k = K.shape[1]
    mats = []
    for A in M.gens:
        X = im.solve_integer(K, im.mm(A, K)) if k else np.zeros((0, 0), dtype=np.int64)
        if X is None:
            raise NotStable("sublattice is not stable under the action")
        mats.append(X)
    return PiLattice(M.group, k, tuple(mats)), K


def augmentation_kernel(P: PiLattice) -> PiLattice:
    """Kernel of the sum-of-coordinates map of a permutation lattice."""
    n = P.rank
    K = np.zeros((n, n - 1), dtype=np.int64)
    for i in range(n - 1):
        K[i, i], K[i + 1, i] = 1, -1
    return sublattice(P, K)[0]


def norm_quotient(P: PiLattice) -> PiLattice:
    """Permutation lattice modulo the sum of its basis vectors."""
    return saturated_quotient(P, np.ones((P.rank, 1), dtype=np.int64)).lattice


def corpus(G: FiniteGroup, size: int = 20, max_rank: int | None = None) -> list:
    """Deterministic list of `size` lattices mixing permutation, sign,
    augmentation, quotient, sum and tensor constructions."""
    from .groups import enumerate_subgroups, is_epsilon_group

    cap = max_rank if max_rank is not None else max(2 * G.order, 4)
    reps = enumerate_subgroups(G).representatives
    perms = [permutation(G, H) for H in reps if H.order < G.order]
    out, extra = [trivial(G), regular(G)], []
    if G.family.kind == "Cyclic" and G.order % 2 == 0 or (G.sigma is not None and is_epsilon_group(G)
                                                          and G.family.kind != "Cyclic"):
        S = sign(G)
        out.append(S)
        extra += [tensor(S, P) for P in perms[1:3]]
    out += [augmentation_kernel(P) for P in perms[1:] if P.rank > 1][:4]
    out += [norm_quotient(P) for P in perms[1:] if P.rank > 1][:3]
    out += perms[1:5]
    out += extra
    if G.order > 1:
        aug = augmentation_kernel(regular(G))
        out += [aug, dual(aug), direct_sum(aug, trivial(G))]
    if G.sigma is not None and G.element_orders[G.sigma] > 2:
        N = G.element_orders[G.sigma]
        out += [cyclotomic_quotient(regular(G), cyclotomic(d)).lattice for d in divisors(N) if d > 1][:3]
    i = 0
    while len(out) < size + 10 and len(perms) > 1:
        a, b = perms[i % len(perms)], perms[(i * 7 + 1) % len(perms)]
        out.append(direct_sum(augmentation_kernel(a) if a.rank > 1 else a, b))
        i += 1
        if i > 4 * size:
            break
    picked = [M for M in out if 0 < M.rank <= cap][:size]
    base = len(picked)
    while len(picked) < size:
        picked.append(direct_sum(picked[len(picked) % base], trivial(G)))
    return picked
