"""Orders of the locally free class group C(Omega) of a maximal order in
Q pi for the supported families, assembled from cyclotomic class numbers,
and the rationality verdicts that follow from them.

Only orders are reported; the group structure is never claimed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .arith import divisors, is_prime_power
from .cyclo import (ConditionallyKnown, Known, KnownUnderGRH, Unknown, canonical_conductor, h_minus,
                    h_plus_status)
from .errors import BadDivisor, UnsupportedFamily
from .groups import FamilySpec, list_membership, validate_spec


# ------------------------------------------------------------------ fields

@dataclass(frozen=True)
class CyclotomicFull:
    d: int

    def __str__(self):
        return f"Z[zeta_{self.d}]"


@dataclass(frozen=True)
class CyclotomicReal:
    d: int

    def __str__(self):
        return f"Z[zeta_{self.d} + zeta_{self.d}^-1]"


@dataclass(frozen=True)
class CyclotomicMixed:
    d1: int
    d2: int

    def __str__(self):
        return f"Z[zeta_{self.d1}, zeta_{self.d2} + zeta_{self.d2}^-1]"


@dataclass(frozen=True)
class RayQuaternion:
    n: int
    d: int

    def __str__(self):
        return f"C_A(Z[zeta_{self.d} + zeta_{self.d}^-1]) for Q_{4 * self.n}"


@dataclass(frozen=True)
class SemiDihedralSpecial:
    n: int

    def __str__(self):
        return f"Z[zeta_{self.n} - zeta_{self.n}^-1]"


@dataclass(frozen=True)
class Summand:
    field: object
    multiplicity: int
    status: object


@dataclass(frozen=True)
class ClassGroupReport:
    family: FamilySpec
    summands: tuple
    total: object
    table_rows: tuple = ()        # (m, h_minus, h_plus status) consumed

    def to_json(self) -> str:
        return json.dumps({
            "family": str(self.family),
            "total": str(self.total),
            "structure": "order only",
            "summands": [{"field": str(s.field), "multiplicity": s.multiplicity,
                          "status": str(s.status)} for s in self.summands],
            "class_numbers": [{"m": m, "h_minus": hm, "h_plus": str(hp)}
                              for m, hm, hp in self.table_rows],
        }, sort_keys=True, indent=1)

    def to_text(self) -> str:
        lines = [f"C(Omega) for {self.family}: {self.total}"]
        for s in self.summands:
            mult = f" x{s.multiplicity}" if s.multiplicity > 1 else ""
            lines.append(f"  C({s.field}){mult}: {s.status}")
        return "\n".join(lines)


# ----------------------------------------------------- class number lookup

class _Lookup:
    """Class numbers from cyclo, optionally overridden by an ingested table
    {m: (h_minus, h_plus_status, source)}; records every row consumed."""

    def __init__(self, table: dict | None = None):
        self.table = table or {}
        self.rows = {}

    def _record(self, m):
        m = canonical_conductor(m)
        if m not in self.rows:
            if m in self.table:
                hm, hp, _ = self.table[m]
            else:
                hm, hp = h_minus(m), h_plus_status(m)
            self.rows[m] = (hm, hp)
        return self.rows[m]

    def real(self, d: int):
        if d <= 2:
            return Known(1)
        hp = self._record(d)[1]
        return _conditional(hp)

    def full(self, d: int):
        if d <= 2:
            return Known(1)
        hm, hp = self._record(d)
        hp = _conditional(hp)
        if isinstance(hp, Known):
            return Known(hm * hp.value)
        if isinstance(hp, ConditionallyKnown):
            return ConditionallyKnown(hm * hp.value, hp.condition)
        return Unknown(f"h+ of Q(zeta_{d}) unknown")

    def mixed(self, d1: int, d2: int):
        if d1 <= 2:
            return self.real(d2)
        if d2 <= 2:
            return self.full(d1)
        return Unknown(f"class number of Q(zeta_{d1}, zeta_{d2} + zeta_{d2}^-1) not tabulated")


def _conditional(hp):
    if isinstance(hp, KnownUnderGRH):
        return ConditionallyKnown(hp.value, "GRH")
    return hp


def quaternion_ray_summand(n: int, d: int, lookup: _Lookup | None = None):
    """Ray class group summand of Q_{4n} at d | 2n, d not dividing n.  For
    n a power of 2 the totally positive units cover every sign pattern,
    so the ray class group collapses to the real class group."""
    if n < 2 or d < 3 or (2 * n) % d or n % d == 0:
        raise BadDivisor(f"need d | 2n, d not dividing n, d >= 3 (n={n}, d={d})")
    lookup = lookup or _Lookup()
    if n & (n - 1) == 0:
        return lookup.real(d)
    return Unknown("unit signature data required")


# ------------------------------------------------------------ the reports

def _summands(spec: FamilySpec, L: _Lookup) -> list:
    k, p = spec.kind, spec.params
    out = []
    if k == "Cyclic":
        out = [(CyclotomicFull(d), 1, L.full(d)) for d in divisors(p[0])]
    elif k == "Dihedral":
        out = [(CyclotomicReal(d), 1, L.real(d)) for d in divisors(p[0])]
    elif k == "CyclicTimesDihedral":
        n, m = p
        if gcd(n, m) != 1:
            raise UnsupportedFamily(f"{spec}: C_n x D_m needs gcd(n, m) = 1")
        mult = 2 if m % 2 else 4
        out = [(CyclotomicFull(d), mult, L.full(d)) for d in divisors(n)]
        for d1 in divisors(n):
            for d2 in divisors(m):
                if d2 >= 3:
                    out.append((CyclotomicMixed(d1, d2), 1, L.mixed(d1, d2)))
    elif k == "Quaternion":
        n = p[0]
        out = [(CyclotomicReal(d), 1, L.real(d)) for d in divisors(n)]
        out += [(RayQuaternion(n, d), 1, quaternion_ray_summand(n, d, L))
                for d in divisors(2 * n) if n % d and d >= 3]
    elif k == "SemiDihedral":
        t = p[0]
        n = 2 ** t
        out = [(CyclotomicReal(2 ** s), 1, L.real(2 ** s)) for s in range(t)]
        special = Known(1) if n == 8 else Unknown(
            f"class number of Q(zeta_{n} - zeta_{n}^-1) unknown for n >= 16")
        out.append((SemiDihedralSpecial(n), 1, special))
    elif k == "Modular":
        t = p[0]
        n = 2 ** t
        out = [(CyclotomicFull(2 ** s), 2, L.full(2 ** s)) for s in range(t)]
        out.append((CyclotomicFull(n // 2), 1, L.full(n // 2)))
    else:
        raise UnsupportedFamily(f"no class group formula for {spec}")
    return out


def _total(summands):
    unknown = [s for s in summands if isinstance(s.status, Unknown)]
    if unknown:
        return Unknown("; ".join(sorted({f"C({s.field})" for s in unknown})))
    order = 1
    for s in summands:
        order *= s.status.value ** s.multiplicity
    if any(isinstance(s.status, ConditionallyKnown) for s in summands):
        return ConditionallyKnown(order, "GRH")
    return Known(order)


def max_order_class_group(spec: FamilySpec, table: dict | None = None) -> ClassGroupReport:
    validate_spec(spec, max_order=None)
    L = _Lookup(table)
    summands = tuple(Summand(f, mult, st) for f, mult, st in _summands(spec, L))
    rows = tuple((m, hm, hp) for m, (hm, hp) in sorted(L.rows.items()))
    return ClassGroupReport(spec, summands, _total(summands), rows)


@dataclass(frozen=True)
class RationalityVerdict:
    statement: str
    verdict: object          # True | False | "Unknown"
    justification: str

    def to_dict(self) -> dict:
        return {"statement": self.statement, "verdict": self.verdict,
                "justification": self.justification}


def _zero_verdict(statement: str, total, why: str) -> RationalityVerdict:
    if isinstance(total, Known) and total.value == 1:
        return RationalityVerdict(statement, True, f"C(Omega) = {total}; {why}")
    return RationalityVerdict(statement, "Unknown", f"C(Omega) = {total}; vanishing not established")


def rationality_reports(spec: FamilySpec, table: dict | None = None) -> list:
    report = max_order_class_group(spec, table)
    total = report.total
    k, p = spec.kind, spec.params
    out = []
    if k == "Dihedral" and p[0] >= 3 and p[0] % 2 and is_prime_power(p[0]):
        q = p[0]
        hp = _conditional(h_plus_status(q) if not table or q not in table else table[q][1])
        st = f"all D_{q}-tori are stably rational iff h+({q}) = 1"
        if isinstance(hp, Known):
            out.append(RationalityVerdict(st, hp.value == 1, f"h+({q}) = {hp}"))
        else:
            out.append(RationalityVerdict(st, "Unknown", f"h+({q}) = {hp}"))
    if k == "Dihedral" and p[0] >= 2 and p[0] & (p[0] - 1) == 0:
        out.append(_zero_verdict("a lattice is flabby and coflabby iff it is stably permutation",
                                 total, "for dihedral 2-groups T^g(pi) = C(Omega)"))
    if k in ("Quaternion", "SemiDihedral", "Modular") and (
            k != "Quaternion" or p[0] & (p[0] - 1) == 0):
        out.append(_zero_verdict("every invertible lattice is stably permutation", total,
                                 "C(Omega) surjects onto C(Zpi)/C^q(Zpi) = T^g(pi) for 2-groups"))
    if k != "Generic" and list_membership(spec).in_list:
        st = "T(pi) is trivial (every invertible lattice has zero flabby class)"
        why = "T(pi) = C(Zpi)/C^q(Zpi) = C(Omega) for the groups in the list"
        if isinstance(total, Known):
            out.append(RationalityVerdict(st, total.value == 1, f"C(Omega) = {total}; {why}"))
        else:
            out.append(RationalityVerdict(st, "Unknown", f"C(Omega) = {total}; {why}"))
    return out
