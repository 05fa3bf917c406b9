"""The twelve acceptance criteria as runnable checks with time limits."""
from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd
from typing import Callable

from .arith import divisors
from .classgroup import max_order_class_group
from .cyclo import (Known, Unknown, check_schedule, cyclotomic, devissage_schedule, h_minus,
                    h_minus_determinant, cyclotomic_middle_checks, valid_class_number_moduli,
                    x_power_minus_one)
from .devissage import (idempotent_split, inversion_lattice_is_free, psi_isomorphism, building_block_sequence,
                        verify_tower)
from .errors import DualityMismatch
from .groups import (Cyclic, Dihedral, Modular, Quaternion, SemiDihedral, build_group,
                     prime_order_condition, enumerate_subgroups, family_specs, parse_family,
                     prime_condition_family, subgroup_from_elements, list_membership)
from .homalg import is_coflabby, is_flabby
from .lattices import corpus, dual, permutation, regular, sign
from .resolutions import (StablePermutationCertificate, certify_stably_permutation,
                          coflabby_embedding, flabby_resolution)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit: float          # seconds
    check: Callable[[], str]


@dataclass(frozen=True)
class Outcome:
    criterion: Criterion
    passed: bool
    seconds: float
    detail: str

    def line(self) -> str:
        c = self.criterion
        verdict = "PASS" if self.passed else "FAIL"
        return (f"criterion {c.number:2d} {verdict} {self.seconds:7.1f}s / {c.limit:.0f}s  "
                f"{c.title}: {self.detail}")


class CheckFailed(AssertionError):
    pass


def _require(cond, message):
    if not cond:
        raise CheckFailed(message)


def _g(text):
    return build_group(parse_family(text))


def cyclotomic_identities() -> str:
    for n in range(1, 301):
        prod = cyclotomic(1)
        for d in divisors(n)[1:]:
            prod = prod * cyclotomic(d)
        _require(prod == x_power_minus_one(n), f"product over d | {n} of Phi_d != X^{n} - 1")
    odd = range(3, 201, 2)
    for m in odd:
        cyclotomic_middle_checks(m)
    return "n <= 300 products, odd m <= 200 middle coefficients and Phi_m(1)"


def devissage_schedules() -> str:
    for n in range(3, 301):
        S = devissage_schedule(n)
        check_schedule(S)
        _require(S.G[1] == cyclotomic(n), f"G_1 != Phi_{n}")
    for n in (105, 165, 195):
        S = devissage_schedule(n)
        p, q, r = S.primes
        _require(S.e == (p * q * r, q * r, r, p * r, p, 1, q, p * q), f"e-list of {n}: {S.e}")
    return "3 <= n <= 300, pqr pattern for 105, 165, 195"


TOWER_CASES = (("D15", 15), ("D21", 21), ("D105", 105), ("Q12", 6), ("Q20", 10))


def tower_verification() -> str:
    for name, n in TOWER_CASES:
        G = _g(name)
        report = verify_tower(G, regular(G), n)
        _require(report.ok, f"{name}, n = {n}: {report.to_json()}")
        pairs = [s for s in report.steps if s.iso is not None]
        _require(all(s.iso and s.j_equal for s in pairs), f"{name}: layer isomorphisms fail")
    return ", ".join(f"{a}/{b}" for a, b in TOWER_CASES)


PSI_CASES = (("D3", 3, "regular"), ("D3", 3, "tau"), ("D7", 7, "regular"), ("D7", 7, "tau"),
             ("D9", 9, "regular"), ("D9", 9, "tau"), ("Q12", 6, "regular"))


def psi_certificates() -> str:
    for name, n, kind in PSI_CASES:
        G = _g(name)
        M = regular(G) if kind == "regular" else permutation(G, subgroup_from_elements(G, [G.gen("tau")]))
        cert = psi_isomorphism(G, M, n)
        _require(cert.verify(), f"{name} {kind}: certificate does not verify")
    return f"{len(PSI_CASES)} certified isomorphisms"


SPLIT_CASES = ((3, 3), (5, 5), (7, 7), (9, 3), (9, 9), (27, 27))


def idempotent_splittings() -> str:
    for pc, d in SPLIT_CASES:
        r = idempotent_split(_g(f"D{pc}"), d)
        _require(r.to_S.verify() and r.to_Q.verify() and r.total.verify(), f"D{pc}, d={d}")
        _require(sum(r.ranks) == r.ring.rank, f"D{pc}, d={d}: ranks {r.ranks}")
    return ", ".join(f"({a},{b})" for a, b in SPLIT_CASES)


def free_inversion_lattices() -> str:
    bad = [m for m in range(3, 46, 2) if not inversion_lattice_is_free(m)]
    _require(not bad, f"failing m: {bad}")
    return "odd 3 <= m <= 45"


BLOCK_CASES = ((3, 1, 5), (3, 2, 5), (3, 1, 7))


def building_blocks() -> str:
    for q, f, m in BLOCK_CASES:
        for kind in ("regular", "permutation"):
            r = building_block_sequence(q, f, m, kind)
            _require(r.ok, f"({q},{f},{m}) {kind}")
    return f"{len(BLOCK_CASES)} parameter sets x 2 lattices"


def cohomology_suite(max_order: int = 48, corpus_size: int = 20) -> str:
    specs = family_specs(max_order)
    try:
        for spec in specs:
            G = build_group(spec)
            for H in enumerate_subgroups(G).representatives:
                P = permutation(G, H)
                _require(is_flabby(P) and is_coflabby(P), f"{spec}: Z[G/H] with |H| = {H.order}")
            for M in corpus(G, corpus_size):
                fl, cf = is_flabby(M), is_coflabby(M)
                D = dual(M)
                _require(is_flabby(D) == cf and is_coflabby(D) == fl, f"{spec}: dual swap fails")
    except DualityMismatch as exc:
        raise CheckFailed(f"duality cross-check fired: {exc}") from None
    S = sign(build_group(Cyclic(2)))
    _require(not is_flabby(S) and not is_coflabby(S), "sign(C_2) should be neither")
    return f"{len(specs)} groups of order <= {max_order}"


def resolutions_suite(max_order: int = 12) -> str:
    E = flabby_resolution(sign(build_group(Cyclic(2)))).right
    cert = certify_stably_permutation(E, budget=4)
    _require(isinstance(cert, StablePermutationCertificate) and cert.verify(),
             "no stable permutation certificate for E")
    count = 0
    for spec in family_specs(max_order):
        G = build_group(spec)
        for M in corpus(G):
            t = coflabby_embedding(M)
            _require(t.verify() and is_coflabby(t.right), f"{spec}: embedding fails")
            count += 1
    return f"sign(C_2) certified; {count} embeddings over groups of order <= {max_order}"


def class_numbers() -> str:
    small = valid_class_number_moduli(22)
    _require(all(h_minus(m) == 1 for m in small), "h- != 1 below 23")
    _require(h_minus(23) == 3, "h-(23) != 3")
    for m in valid_class_number_moduli(40):
        _require(h_minus(m) == h_minus_determinant(m), f"oracles disagree at {m}")
    return "h- = 1 for m <= 22, h-(23) = 3, two routes agree for m <= 40"


def class_group_reports() -> str:
    one = Known(1)
    specs = ([Dihedral(n) for n in range(1, 61)] + [Quaternion(2 ** t) for t in range(1, 6)]
             + [Modular(t) for t in (3, 4, 5)])
    for spec in specs:
        _require(max_order_class_group(spec).total == one, f"{spec} not Known(1)")
    _require(max_order_class_group(Cyclic(23)).total == Known(3), "C23 != Known(3)")
    _require(isinstance(max_order_class_group(SemiDihedral(4)).total, Unknown), "SD32 not Unknown")
    return f"{len(specs)} Known(1) reports, C23 Known(3), SD32 Unknown"


def prime_condition_grid(limit: int = 128, m_max: int = 50) -> str:
    count = 0
    for d in range(1, limit.bit_length()):
        for n in range(1, limit // 2 ** d + 1, 2):
            for m in range(1, m_max + 1, 2):
                if gcd(n, m) != 1:
                    continue
                c = prime_order_condition(n, m, d)
                spec = prime_condition_family(n, m, d)
                if spec is None:
                    _require(not c, f"(n, m, d) = ({n}, {m}, {d}) satisfies the prime condition outside the list")
                else:
                    _require(list_membership(spec).in_list == c, f"disagree at ({n}, {m}, {d})")
                count += 1
    return f"{count} parameter tuples"


CRITERIA = (
    Criterion(1, "cyclotomic identities", 10, cyclotomic_identities),
    Criterion(2, "devissage schedules", 10, devissage_schedules),
    Criterion(3, "tower verification", 300, tower_verification),
    Criterion(4, "psi isomorphisms", 120, psi_certificates),
    Criterion(5, "idempotent splitting", 60, idempotent_splittings),
    Criterion(6, "cyclotomic integers are free over C_2", 60, free_inversion_lattices),
    Criterion(7, "C_q^f x D_m building blocks", 300, building_blocks),
    Criterion(8, "cohomology suite", 300, cohomology_suite),
    Criterion(9, "resolutions", 120, resolutions_suite),
    Criterion(10, "class numbers", 60, class_numbers),
    Criterion(11, "class group reports", 30, class_group_reports),
    Criterion(12, "prime condition equivalence", 30, prime_condition_grid),
)


def run_criterion(c: Criterion) -> Outcome:
    t = time.perf_counter()
    try:
        detail, ok = c.check(), True
    except Exception as exc:      # a crash is a failed criterion, reported not raised
        detail, ok = f"{type(exc).__name__}: {exc}", False
    dt = time.perf_counter() - t
    if ok and dt > c.limit:
        ok, detail = False, f"over time limit: {detail}"
    return Outcome(c, ok, dt, detail)


def run_all(numbers=None, echo: Callable[[str], None] | None = None) -> list:
    out = []
    for c in CRITERIA:
        if numbers and c.number not in numbers:
            continue
        o = run_criterion(c)
        if echo:
            echo(o.line())
        out.append(o)
    return out
