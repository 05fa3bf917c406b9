"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 a verified property failed,
3 the answer is inconclusive or unknown.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import acceptance
from .classgroup import max_order_class_group, rationality_reports
from .cyclo import Unknown, ingest_table
from .devissage import idempotent_split, psi_isomorphism, verify_tower
from .errors import PropertyViolation, UsageError
from .groups import (build_group, enumerate_subgroups, is_epsilon_group, parse_family,
                     subgroup_from_elements, sylow_profile, list_membership)
from .homalg import flabby_coflabby, h1, tate_h0, tate_hm1
from .lattices import construct, from_json, to_json
from .resolutions import StablePermutationCertificate, certify_stably_permutation, flabby_resolution

VERBS = ("group", "lattice", "cohomology", "resolve", "devissage", "tower", "classgroup",
         "classify", "selftest")
EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_UNKNOWN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flasque", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("family", nargs="?", help="C<n>, D<n>, Q<4n>, C<n>xD<m>, SD<2n>, M<2n>")
    p.add_argument("--n", type=int)
    p.add_argument("--budget", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--table", help="class-number TSV to use instead of computed values")
    p.add_argument("--lattice", help="lattice file in the JSON format of the lattice verb")
    p.add_argument("--kind", default="regular",
                   choices=("trivial", "sign", "regular", "zero", "permutation"))
    p.add_argument("--subgroup", default="",
                   help="comma separated generator names or element indices")
    p.add_argument("--criteria", default="", help="comma separated criterion numbers")
    return p


@dataclass
class Result:
    code: int
    data: dict
    lines: list = field(default_factory=list)


# ------------------------------------------------------------ input helpers

def _family(args):
    if not args.family:
        raise UsageError(f"{args.verb} needs a group family")
    return parse_family(args.family)


def _group(args):
    return build_group(_family(args))


def _subgroup(G, text):
    elems = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok.isdigit():
            g = int(tok)
            if g >= G.order:
                raise UsageError(f"element {g} out of range")
            elems.append(g)
        else:
            try:
                elems.append(G.gen(tok))
            except KeyError:
                raise UsageError(f"unknown generator {tok!r}") from None
    return subgroup_from_elements(G, elems)


def _lattice(args, G):
    if args.lattice:
        try:
            with open(args.lattice) as fh:
                M = from_json(fh.read(), G)
        except OSError as exc:
            raise UsageError(str(exc)) from None
        return M
    sub = _subgroup(G, args.subgroup) if args.kind == "permutation" else None
    return construct(args.kind, G, sub)


def _n(args):
    if args.n is None:
        raise UsageError(f"{args.verb} needs --n")
    return args.n


def _table(args):
    if not args.table:
        return None
    try:
        with open(args.table) as fh:
            return ingest_table(fh.read())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read table: {exc}") from None


# ------------------------------------------------------------------- verbs

def cmd_group(args) -> Result:
    spec = _family(args)
    G = build_group(spec)
    subs = enumerate_subgroups(G)
    prof = sylow_profile(G)
    cl = list_membership(spec)
    data = {
        "family": str(spec), "order": G.order,
        "generators": {nm: g for nm, g in G.generators},
        "subgroups": len(subs.all), "conjugacy_classes": len(subs.representatives),
        "epsilon_group": is_epsilon_group(G),
        "all_sylow_cyclic": prof.all_sylow_cyclic,
        "two_sylow_cyclic_or_dihedral": prof.two_sylow_cyclic_or_dihedral,
        "in_list": cl.in_list, "witness": cl.witness,
    }
    return Result(EXIT_OK, data, [f"{k}: {v}" for k, v in data.items()])


def cmd_lattice(args) -> Result:
    G = _group(args)
    M = _lattice(args, G).validate()
    data = json.loads(to_json(M))
    return Result(EXIT_OK, data, [to_json(M)])


def cmd_cohomology(args) -> Result:
    G = _group(args)
    M = _lattice(args, G)
    rows, lines = [], [f"{'|H|':>4}  {'gens':<12} {'H^0':<14} {'H^-1':<14} {'H^1':<14}"]
    for H in enumerate_subgroups(G).representatives:
        r = {"order": H.order, "generators": list(H.generators), "h0": str(tate_h0(M, H)),
             "hm1": str(tate_hm1(M, H)), "h1": str(h1(M, H))}
        rows.append(r)
        lines.append(f"{H.order:>4}  {str(list(H.generators)):<12} {r['h0']:<14} {r['hm1']:<14} {r['h1']:<14}")
    rep = flabby_coflabby(M)
    inv = rep.invertible if isinstance(rep.invertible, bool) else str(rep.invertible)
    data = {"rank": M.rank, "subgroups": rows, "flabby": rep.flabby, "coflabby": rep.coflabby,
            "invertible": inv}
    lines.append(f"flabby: {rep.flabby}  coflabby: {rep.coflabby}  invertible: {inv}")
    return Result(EXIT_OK if isinstance(inv, bool) else EXIT_UNKNOWN, data, lines)


def cmd_resolve(args) -> Result:
    G = _group(args)
    M = _lattice(args, G)
    t = flabby_resolution(M)
    cert = certify_stably_permutation(t.right, budget=args.budget, seed=args.seed)
    certified = isinstance(cert, StablePermutationCertificate)
    data = {"rank_M": M.rank, "rank_P": t.middle.rank, "rank_E": t.right.rank,
            "class_trivial": certified if certified else "Inconclusive"}
    if certified:
        data["complement"] = [list(H.generators) for H in cert.complement]
        data["target"] = [list(H.generators) for H in cert.target]
    lines = [f"0 -> M (rank {M.rank}) -> P (rank {t.middle.rank}) -> E (rank {t.right.rank}) -> 0",
             "E stably permutation: " + ("certified" if certified else str(cert))]
    return Result(EXIT_OK if certified else EXIT_UNKNOWN, data, lines)


def cmd_devissage(args) -> Result:
    G = _group(args)
    n = _n(args)
    M = _lattice(args, G)
    cert = psi_isomorphism(G, M, n)
    data = {"n": n, "psi_certified": cert.verify(), "rank": cert.morphism.source.rank}
    lines = [f"psi: M*/Phi_{n}(sigma)M* -> (I/J) (x) M certified (rank {data['rank']})"]
    if G.family.kind == "Dihedral" and n % 2 == 1:
        s = idempotent_split(G, n)
        data["split_ranks"] = list(s.ranks)
        data["split_certified"] = s.total.verify()
        lines.append(f"Lambda_{n} = S_{n} + Q_{n} certified, ranks {s.ranks}")
    return Result(EXIT_OK, data, lines)


def cmd_tower(args) -> Result:
    G = _group(args)
    M = _lattice(args, G)
    report = verify_tower(G, M, _n(args))
    return Result(EXIT_OK if report.ok else EXIT_VIOLATION, json.loads(report.to_json()),
                  [report.to_json()])


def _status_code(total) -> int:
    return EXIT_UNKNOWN if isinstance(total, Unknown) else EXIT_OK


def cmd_classgroup(args) -> Result:
    spec = _family(args)
    table = _table(args)
    rep = max_order_class_group(spec, table)
    verdicts = [v.to_dict() for v in rationality_reports(spec, table)]
    data = json.loads(rep.to_json())
    data["verdicts"] = verdicts
    lines = [rep.to_text()] + [f"{v['statement']}: {v['verdict']} ({v['justification']})"
                               for v in verdicts]
    return Result(_status_code(rep.total), data, lines)


def cmd_classify(args) -> Result:
    spec = _family(args)
    cl = list_membership(spec)
    res = cmd_classgroup(args)
    data = {"family": str(spec), "in_list": cl.in_list, "witness": cl.witness,
            "class_group": res.data}
    lines = [f"{spec}: in list = {cl.in_list} ({cl.witness})"] + res.lines
    return Result(EXIT_OK, data, lines)


def cmd_selftest(args) -> Result:
    try:
        wanted = {int(x) for x in args.criteria.split(",") if x.strip()}
    except ValueError:
        raise UsageError("--criteria takes comma separated integers") from None
    lines = []
    outcomes = acceptance.run_all(wanted or None, echo=lines.append if args.format == "json"
                                  else lambda s: print(s, flush=True))
    data = {"criteria": [{"number": o.criterion.number, "passed": o.passed,
                          "seconds": round(o.seconds, 1), "detail": o.detail} for o in outcomes]}
    ok = all(o.passed for o in outcomes)
    return Result(EXIT_OK if ok else EXIT_VIOLATION, data, [] if args.format == "human" else lines)


COMMANDS = {"group": cmd_group, "lattice": cmd_lattice, "cohomology": cmd_cohomology,
            "resolve": cmd_resolve, "devissage": cmd_devissage, "tower": cmd_tower,
            "classgroup": cmd_classgroup, "classify": cmd_classify, "selftest": cmd_selftest}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        res = COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except PropertyViolation as exc:
        print(f"property violation: {type(exc).__name__}: {exc}", file=err)
        return EXIT_VIOLATION
    if args.format == "json":
        print(json.dumps({"verb": args.verb, "exit": res.code, "result": res.data},
                         sort_keys=True, indent=1), file=out)
    else:
        for line in res.lines:
            print(line, file=out)
    return res.code


def main():
    sys.exit(run())
