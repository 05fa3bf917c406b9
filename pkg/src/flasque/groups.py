"""Finite groups by multiplication table: the families used throughout,
subgroup enumeration, Sylow data, the sign character and the arithmetic
membership tests for the list of tori-admissible groups."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .arith import euler_phi, factorize, is_prime_power, multiplicative_order, prime_divisors
from .errors import InvalidParameters, NotEpsilonGroup, UnsupportedFamily

MAX_ORDER = 256


@dataclass(frozen=True)
class FamilySpec:
    """Family tag with parameters.  kind is one of Cyclic, Dihedral,
    Quaternion, CyclicTimesDihedral, SemiDihedral, Modular, Generic."""
    kind: str
    params: tuple = ()
    table: tuple | None = field(default=None, compare=False, repr=False)
    label: str = ""

    def __str__(self):
        k, p = self.kind, self.params
        if k == "Cyclic":
            return f"C{p[0]}"
        if k == "Dihedral":
            return f"D{p[0]}"
        if k == "Quaternion":
            return f"Q{4 * p[0]}"
        if k == "CyclicTimesDihedral":
            return f"C{p[0]}xD{p[1]}"
        if k == "SemiDihedral":
            return f"SD{2 * 2 ** p[0]}"
        if k == "Modular":
            return f"M{2 * 2 ** p[0]}"
        return self.label or f"Generic[{len(self.table or ())}]"


def Cyclic(n):
    return FamilySpec("Cyclic", (n,))


def Dihedral(n):
    return FamilySpec("Dihedral", (n,))


def Quaternion(n):
    return FamilySpec("Quaternion", (n,))


def CyclicTimesDihedral(n, m):
    return FamilySpec("CyclicTimesDihedral", (n, m))


def SemiDihedral(t):
    return FamilySpec("SemiDihedral", (t,))


def Modular(t):
    return FamilySpec("Modular", (t,))


def Generic(table, label=""):
    table = tuple(tuple(int(x) for x in row) for row in table)
    return FamilySpec("Generic", (), table, label)


_GRAMMAR = [
    (re.compile(r"C(\d+)xD(\d+)"), lambda a, b: CyclicTimesDihedral(a, b)),
    (re.compile(r"SD(\d+)"), lambda a: SemiDihedral(_two_exponent(a, "SD"))),
    (re.compile(r"M(\d+)"), lambda a: Modular(_two_exponent(a, "M"))),
    (re.compile(r"C(\d+)"), lambda a: Cyclic(a)),
    (re.compile(r"D(\d+)"), lambda a: Dihedral(a)),
    (re.compile(r"Q(\d+)"), lambda a: Quaternion(_quarter(a))),
]


def _two_exponent(order, tag):
    # SD<2n>, M<2n> with n = 2^t
    if order < 16 or order & (order - 1):
        raise InvalidParameters(f"{tag}{order}: order must be 2^(t+1) with t >= 3")
    return order.bit_length() - 2


def _quarter(order):
    if order % 4:
        raise InvalidParameters(f"Q{order}: order must be divisible by 4")
    return order // 4


def parse_family(text: str) -> FamilySpec:
    """Parse the CLI grammar C<n>, D<n>, Q<4n>, C<n>xD<m>, SD<2n>, M<2n>."""
    s = text.strip()
    for pat, make in _GRAMMAR:
        mt = pat.fullmatch(s)
        if mt:
            spec = make(*(int(g) for g in mt.groups()))
            validate_spec(spec, max_order=None)
            return spec
    raise InvalidParameters(f"unrecognized group {text!r}")


def validate_spec(spec: FamilySpec, max_order: int | None = MAX_ORDER):
    k, p = spec.kind, spec.params
    if k == "Generic":
        if not spec.table:
            raise InvalidParameters("Generic needs a multiplication table")
        return
    if k not in ("Cyclic", "Dihedral", "Quaternion", "CyclicTimesDihedral",
                 "SemiDihedral", "Modular"):
        raise InvalidParameters(f"unknown family {k}")
    if any(x < 1 for x in p):
        raise InvalidParameters(f"{k}{p}: parameters must be positive")
    if k == "Quaternion" and p[0] < 2:
        raise InvalidParameters("Quaternion requires n >= 2")
    if k in ("SemiDihedral", "Modular") and p[0] < 3:
        raise InvalidParameters(f"{k} requires t >= 3")
    if max_order is not None and family_order(spec) > max_order:
        raise InvalidParameters(f"{spec}: order exceeds {max_order}")


def family_order(spec: FamilySpec) -> int:
    k, p = spec.kind, spec.params
    if k == "Cyclic":
        return p[0]
    if k == "Dihedral":
        return 2 * p[0]
    if k == "Quaternion":
        return 4 * p[0]
    if k == "CyclicTimesDihedral":
        return 2 * p[0] * p[1]
    if k in ("SemiDihedral", "Modular"):
        return 2 * 2 ** p[0]
    return len(spec.table)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mul: np.ndarray
    identity: int
    inverses: tuple
    generators: tuple          # ((name, index), ...)
    family: FamilySpec

    def __repr__(self):
        return f"FiniteGroup({self.family}, order={self.order})"

    def gen(self, name: str) -> int:
        for nm, g in self.generators:
            if nm == name:
                return g
        raise KeyError(name)

    @property
    def gen_indices(self) -> list:
        return [g for _, g in self.generators]

    @cached_property
    def sigma(self):
        """The distinguished element sigma, or None."""
        for nm, g in self.generators:
            if nm == "sigma":
                return g
        return None

    @cached_property
    def table(self) -> list:
        return self.mul.tolist()

    def m(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        out, t = self.identity, self.table
        base = a
        while k:
            if k & 1:
                out = t[out][base]
            base = t[base][base]
            k >>= 1
        return out

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        t = self.table
        return t[t[g][x]][self.inverses[g]]

    @cached_property
    def element_orders(self) -> tuple:
        t, e = self.table, self.identity
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != e:
                x = t[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def closure(self, elems) -> int:
        """Bitmask of the subgroup generated by elems."""
        t = self.table
        gens = sorted(set(elems) - {self.identity})
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                row = t[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        mask = 0
        for x in seen:
            mask |= 1 << x
        return mask

    @cached_property
    def sigma_decomposition(self):
        """Write every element uniquely as sigma^i * t_c.

        Returns (N, reps, decomp) with reps the coset representatives t_c
        (minimal index in each coset <sigma> g) and decomp[g] = (i, c)."""
        s = self.sigma
        if s is None:
            raise NotEpsilonGroup(f"{self.family} has no distinguished sigma")
        N = self.element_orders[s]
        powers = [self.power(s, i) for i in range(N)]
        decomp = [None] * self.order
        reps = []
        for g in range(self.order):
            if decomp[g] is not None:
                continue
            c = len(reps)
            reps.append(g)
            for i, p in enumerate(powers):
                decomp[self.table[p][g]] = (i, c)
        return N, tuple(reps), tuple(decomp)


def _from_table(table, generators, spec) -> FiniteGroup:
    mul = np.asarray(table, dtype=np.int64)
    n = mul.shape[0]
    ident = next(e for e in range(n) if (mul[e] == np.arange(n)).all())
    inverses = tuple(int(np.nonzero(mul[a] == ident)[0][0]) for a in range(n))
    mul.setflags(write=False)
    return FiniteGroup(n, mul, ident, inverses, tuple(generators), spec)


def _metacyclic(N, r, s, spec):
    # elements sigma^a tau^b, index a + N*b; tau^-1 sigma tau = sigma^r, tau^2 = sigma^s
    n = 2 * N
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        a, b = x % N, x // N
        for y in range(n):
            c, d = y % N, y // N
            e = a + c * (r if b else 1)
            if b + d == 2:
                e += s
            table[x][y] = e % N + N * ((b + d) % 2)
    return _from_table(table, [("sigma", 1 % N), ("tau", N)], spec)


def _cyclic_times_dihedral(n, m, spec):
    # sigma^i tau^j rho^a, index i + m*j + 2m*a, rho central of order n
    size = 2 * m * n
    table = [[0] * size for _ in range(size)]
    for x in range(size):
        i, j, a = x % m, (x // m) % 2, x // (2 * m)
        for y in range(size):
            k, l, b = y % m, (y // m) % 2, y // (2 * m)
            ii = (i + (-k if j else k)) % m
            table[x][y] = ii + m * ((j + l) % 2) + 2 * m * ((a + b) % n)
    gens = [("sigma", 1 % m), ("tau", m), ("rho", (2 * m) % size)]
    return _from_table(table, gens, spec)


def build_group(spec: FamilySpec) -> FiniteGroup:
    validate_spec(spec)
    k, p = spec.kind, spec.params
    if k == "Cyclic":
        n = p[0]
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        G = _from_table(table, [("sigma", 1 % n)], spec)
    elif k == "Dihedral":
        G = _metacyclic(p[0], -1, 0, spec)
    elif k == "Quaternion":
        G = _metacyclic(2 * p[0], -1, p[0], spec)
    elif k == "SemiDihedral":
        n = 2 ** p[0]
        G = _metacyclic(n, n // 2 - 1, 0, spec)
    elif k == "Modular":
        n = 2 ** p[0]
        G = _metacyclic(n, n // 2 + 1, 0, spec)
    elif k == "CyclicTimesDihedral":
        G = _cyclic_times_dihedral(p[0], p[1], spec)
    else:
        table = spec.table
        n = len(table)
        G0 = _from_table(table, [], spec)
        gens = _small_generating_set(G0)
        G = FiniteGroup(G0.order, G0.mul, G0.identity, G0.inverses,
                        tuple((f"g{i}", g) for i, g in enumerate(gens)), spec)
        check_axioms(G)
        return G
    check_presentation(G)
    if G.order <= 64:
        check_axioms(G)
    return G


def _small_generating_set(G) -> list:
    gens, mask = [], G.closure([])
    full = (1 << G.order) - 1
    # greedy: add the element of largest order not yet covered
    order = sorted(range(G.order), key=lambda a: (-G.element_orders[a], a))
    while mask != full:
        g = next(a for a in order if not mask >> a & 1)
        gens.append(g)
        mask = G.closure(gens)
    return gens


def check_axioms(G: FiniteGroup):
    """Exhaustive associativity, identity, inverses and generation."""
    mul = G.mul
    n = G.order
    idx = np.arange(n)
    assert (mul[G.identity] == idx).all() and (mul[:, G.identity] == idx).all()
    for a in range(n):
        assert mul[a, G.inverses[a]] == G.identity == mul[G.inverses[a], a]
    step = max(1, (1 << 22) // (n * n))
    for a0 in range(0, n, step):
        a = idx[a0:a0 + step]
        lhs = mul[mul[a][:, :, None], idx[None, None, :]]      # (ab)c
        rhs = mul[a[:, None, None], mul[None, :, :]]            # a(bc)
        if not (lhs == rhs).all():
            raise AssertionError(f"{G.family}: multiplication not associative")
    if G.closure(G.gen_indices) != (1 << n) - 1:
        raise AssertionError(f"{G.family}: generators do not generate")


def check_presentation(G: FiniteGroup):
    k, p = G.family.kind, G.family.params
    e = G.identity
    s = G.sigma
    pw = G.power
    def conj_tau(x):  # tau^-1 x tau
        t = G.gen("tau")
        return G.m(G.m(G.inv(t), x), t)
    ok = True
    if k == "Cyclic":
        ok = pw(s, p[0]) == e and G.element_orders[s] == p[0]
    elif k == "Dihedral":
        t = G.gen("tau")
        ok = pw(s, p[0]) == e and pw(t, 2) == e and conj_tau(s) == G.inv(s)
    elif k == "Quaternion":
        t, n = G.gen("tau"), p[0]
        ok = (pw(s, 2 * n) == e and pw(t, 4) == e and pw(s, n) == pw(t, 2)
              and conj_tau(s) == G.inv(s))
    elif k in ("SemiDihedral", "Modular"):
        t, n = G.gen("tau"), 2 ** p[0]
        r = n // 2 - 1 if k == "SemiDihedral" else n // 2 + 1
        ok = pw(s, n) == e and pw(t, 2) == e and conj_tau(s) == pw(s, r)
    elif k == "CyclicTimesDihedral":
        t, rho = G.gen("tau"), G.gen("rho")
        ok = (pw(rho, p[0]) == e and pw(s, p[1]) == e and pw(t, 2) == e
              and conj_tau(s) == G.inv(s)
              and all(G.m(rho, x) == G.m(x, rho) for x in (s, t)))
    if not ok:
        raise AssertionError(f"{G.family}: presentation relations fail")
    if G.closure(G.gen_indices) != (1 << G.order) - 1:
        raise AssertionError(f"{G.family}: generators do not generate")


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    mask: int
    generators: tuple
    cyclic: bool
    normal: bool

    @cached_property
    def elements(self) -> tuple:
        m, out, i = self.mask, [], 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return tuple(out)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={list(self.generators)})"

    def __contains__(self, g):
        return bool(self.mask >> g & 1)


@dataclass(frozen=True)
class Subgroups:
    all: tuple
    representatives: tuple

    def __len__(self):
        return len(self.all)

    def __iter__(self):
        return iter(self.all)


def _conjugate_mask(G, mask, g):
    out, i, gi, t = 0, 0, G.inverses[g], G.table
    while mask:
        if mask & 1:
            out |= 1 << t[t[g][i]][gi]
        mask >>= 1
        i += 1
    return out


_SUBGROUP_CACHE: dict = {}


def enumerate_subgroups(G: FiniteGroup) -> Subgroups:
    """All subgroups (as joins of cyclic subgroups) and one representative
    per conjugacy class, both sorted by (order, mask)."""
    key = id(G)
    hit = _SUBGROUP_CACHE.get(key)
    if hit is not None and hit[0] is G:
        return hit[1]
    cyc = {}
    for g in range(G.order):
        cyc.setdefault(G.closure([g]), (g,))
    found = dict(cyc)
    frontier = list(cyc)
    while frontier:
        nxt = []
        for a in frontier:
            for c, cg in cyc.items():
                if c & ~a == 0:
                    continue
                j = G.closure(found[a] + cg)
                if j not in found:
                    found[j] = found[a] + cg
                    nxt.append(j)
        frontier = nxt
    cyclic_masks = set(cyc)
    classes = set()
    subs = []
    for mask in sorted(found, key=lambda m: (bin(m).count("1"), m)):
        conjs = {_conjugate_mask(G, mask, g) for g in G.gen_indices} | {mask}
        # full conjugacy class via generator closure
        stack = list(conjs)
        while stack:
            x = stack.pop()
            for g in G.gen_indices:
                y = _conjugate_mask(G, x, g)
                if y not in conjs:
                    conjs.add(y)
                    stack.append(y)
        gens = found[mask]
        if mask in cyclic_masks:
            gens = cyc[mask]
        H = Subgroup(G, mask, tuple(gens), mask in cyclic_masks, len(conjs) == 1)
        subs.append(H)
        classes.add(min(conjs))
    by_mask = {H.mask: H for H in subs}
    reps = tuple(sorted((by_mask[c] for c in classes), key=lambda H: (H.order, H.mask)))
    result = Subgroups(tuple(subs), reps)
    _SUBGROUP_CACHE[key] = (G, result)
    return result


def subgroup_from_elements(G: FiniteGroup, elems) -> Subgroup:
    elems = list(elems)
    mask = G.closure(elems)
    cyclic = any(G.closure([g]) == mask for g in _mask_elements(mask))
    normal = all(_conjugate_mask(G, mask, g) == mask for g in G.gen_indices)
    gens = tuple(sorted(set(elems) - {G.identity})) or (G.identity,)
    if cyclic:
        gens = (next(g for g in _mask_elements(mask) if G.closure([g]) == mask),)
    return Subgroup(G, mask, gens, cyclic, normal)


def trivial_subgroup(G):
    return subgroup_from_elements(G, [G.identity])


def whole_group(G):
    return subgroup_from_elements(G, G.gen_indices)


def _mask_elements(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def subgroup_as_group(H: Subgroup) -> tuple:
    """Return (FiniteGroup K, embedding list) with K a Generic group whose
    element k corresponds to parent element embedding[k].  The generators of
    K are the images of H.generators (in order), named g0, g1, ..."""
    G = H.parent
    elems = list(H.elements)
    pos = {g: i for i, g in enumerate(elems)}
    table = [[pos[G.table[a][b]] for b in elems] for a in elems]
    spec = Generic(table, label=f"{G.family}|{H.order}")
    K0 = _from_table(table, [], spec)
    gens = [pos[g] for g in H.generators if g != G.identity] or [pos[G.identity]]
    K = FiniteGroup(K0.order, K0.mul, K0.identity, K0.inverses,
                    tuple((f"g{i}", g) for i, g in enumerate(gens)), spec)
    return K, elems


# ------------------------------------------------------------------- Sylow

@dataclass(frozen=True)
class SylowProfile:
    all_sylow_cyclic: bool
    two_sylow_cyclic_or_dihedral: bool


def _is_dihedral_2group(G, H: Subgroup) -> bool:
    n = H.order
    if n < 4:
        return False
    els = H.elements
    ords = G.element_orders
    for r in els:
        if ords[r] != n // 2:
            continue
        rmask = G.closure([r])
        rinv = G.inv(r)
        for s in els:
            if rmask >> s & 1 or ords[s] != 2:
                continue
            if G.conj(s, r) == rinv:
                return True
    return False


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    pk = p ** dict(factorize(G.order))[p]
    for H in enumerate_subgroups(G).representatives:
        if H.order == pk:
            return H
    raise AssertionError("no Sylow subgroup found")


def sylow_profile(G: FiniteGroup) -> SylowProfile:
    if G.order == 1:
        return SylowProfile(True, True)
    all_cyc, two_ok, odd_cyc = True, True, True
    for p in prime_divisors(G.order):
        S = sylow_subgroup(G, p)
        cyc = S.cyclic
        all_cyc &= cyc
        if p == 2:
            two_ok = cyc or _is_dihedral_2group(G, S)
        else:
            odd_cyc &= cyc
    return SylowProfile(all_cyc, two_ok and odd_cyc)


# ------------------------------------------------------------------ epsilon

def epsilon(G: FiniteGroup, lam: int) -> int:
    """The sign with lam sigma lam^-1 = sigma^eps."""
    s = G.sigma
    kind = G.family.kind
    if s is None or kind in ("SemiDihedral", "Modular"):
        if s is not None:
            _conj_exponent(G, lam)  # raises with the offending exponent
        raise NotEpsilonGroup(f"{G.family} is not an epsilon-group")
    c = G.conj(lam, s)
    if kind in ("Dihedral", "Quaternion", "CyclicTimesDihedral"):
        j = (lam // G.element_orders[s]) % 2
        eps = -1 if j else 1
        if c != G.power(s, eps):
            raise NotEpsilonGroup(f"{G.family}: presentation sign check failed")
        return eps
    if c == s:
        return 1
    if c == G.inv(s):
        return -1
    _conj_exponent(G, lam)
    raise NotEpsilonGroup(f"{G.family}: conjugate of sigma is not sigma^(+-1)")


def _conj_exponent(G, lam):
    s = G.sigma
    c = G.conj(lam, s)
    N = G.element_orders[s]
    for i in range(N):
        if G.power(s, i) == c:
            if i % N not in (1 % N, (-1) % N):
                raise NotEpsilonGroup(
                    f"{G.family}: conjugation sends sigma to sigma^{i}, {i} != +-1 mod {N}")
            return i
    raise NotEpsilonGroup(f"{G.family}: <sigma> is not normal")


def is_epsilon_group(G: FiniteGroup) -> bool:
    try:
        for g in G.gen_indices:
            epsilon(G, g)
        return True
    except NotEpsilonGroup:
        return False


def epsilon_table(G: FiniteGroup) -> tuple:
    return tuple(epsilon(G, g) for g in range(G.order))


# ----------------------------------------------- membership in the list (1)

@dataclass(frozen=True)
class Classification:
    in_list: bool
    witness: str


def _order_condition(m, modulus):
    """Every prime p | m generates (Z/modulus)^x.  Returns (ok, witness)."""
    phi = euler_phi(modulus)
    for p in prime_divisors(m):
        o = multiplicative_order(p, modulus)
        if o != phi:
            return False, f"ord_{modulus}({p}) = {o} != phi({modulus}) = {phi}"
    ps = ", ".join(f"ord_{modulus}({p}) = {phi}" for p in prime_divisors(m))
    return True, ps or "no prime divisors"


def list_membership(spec: FamilySpec) -> Classification:
    """Decide whether the group lies in the list: C_n; D_m (m odd);
    C_{q^f} x D_m with every p | m generating (Z/q^f)^x; Q_4m with m odd and
    every p | m congruent to 3 mod 4."""
    validate_spec(spec, max_order=None)
    k, p = spec.kind, spec.params
    if k == "Generic":
        raise UnsupportedFamily("Generic groups are not classified")
    if k == "Cyclic":
        return Classification(True, f"cyclic of order {p[0]}")
    if k == "Dihedral":
        m = p[0]
        if m == 1:
            return Classification(True, "D_1 is cyclic of order 2")
        if m % 2 == 0:
            return Classification(False, f"D_{m}: m even")
        return Classification(True, f"D_{m} with m odd")
    if k == "Quaternion":
        m = p[0]
        if m % 2 == 0:
            return Classification(False, f"Q_{4 * m}: m even")
        for q in prime_divisors(m):
            if q % 4 != 3:
                return Classification(False, f"{q} = {q % 4} mod 4")
        return Classification(True, ", ".join(f"{q} = 3 mod 4" for q in prime_divisors(m)))
    if k == "CyclicTimesDihedral":
        n, m = p
        if m % 2 == 0:
            return Classification(False, f"m = {m} even")
        if m == 1:
            # C_n x C_2
            if n % 2 == 0:
                return Classification(False, f"C_{n} x C_2 is not cyclic")
            return Classification(True, f"C_{n} x C_2 is cyclic")
        if gcd(n, m) != 1:
            return Classification(False, f"gcd({n}, {m}) != 1")
        if n == 1:
            return Classification(True, f"D_{m} with m odd")
        if n % 2 == 0 or not is_prime_power(n):
            return Classification(False, f"{n} is not an odd prime power")
        ok, w = _order_condition(m, n)
        return Classification(ok, w)
    return Classification(False, f"{spec}: 2-Sylow of order >= 16 is neither cyclic nor of order <= 4")


def prime_order_condition(n: int, m: int, d: int) -> bool:
    """Every prime p | m has order phi(n 2^d) modulo n 2^d."""
    if gcd(n, m) != 1:
        raise InvalidParameters(f"gcd({n}, {m}) != 1")
    if n % 2 == 0 or m % 2 == 0 or d < 1:
        raise InvalidParameters("n, m odd and d >= 1 required")
    return _order_condition(m, n * 2 ** d)[0]


def prime_condition_family(n: int, m: int, d: int):
    """Family spec of C_n x <rho, tau : rho^m = tau^(2^d) = 1,
    tau^-1 rho tau = rho^-1> when that group is one of the supported
    families, else None."""
    if m == 1:
        return Cyclic(n * 2 ** d)
    if d == 1:
        return Dihedral(m) if n == 1 else CyclicTimesDihedral(n, m)
    if d == 2 and n == 1:
        return Quaternion(m)
    return None


def family_specs(max_order: int) -> list:
    """Every family member of order <= max_order: C_n, D_n, Q_4n (n >= 2),
    C_n x D_m (n, m >= 2), SD and M (t >= 3)."""
    out = [Cyclic(n) for n in range(1, max_order + 1)]
    out += [Dihedral(n) for n in range(1, max_order // 2 + 1)]
    out += [Quaternion(n) for n in range(2, max_order // 4 + 1)]
    out += [CyclicTimesDihedral(n, m) for n in range(2, max_order // 4 + 1)
            for m in range(2, max_order // (2 * n) + 1)]
    t = 3
    while 2 ** (t + 1) <= max_order:
        out += [SemiDihedral(t), Modular(t)]
        t += 1
    return out
