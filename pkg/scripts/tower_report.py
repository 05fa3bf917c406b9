"""Verify the filtration tower for Z[G] over a list of (group, n) pairs and
print one JSON report per pair."""
import argparse
from dataclasses import dataclass

from flasque.devissage import verify_tower
from flasque.groups import build_group, parse_family
from flasque.lattices import regular


@dataclass
class Config:
    cases: tuple = (("D15", 15), ("D21", 21), ("Q12", 6), ("Q20", 10))


def main(cfg: Config) -> bool:
    ok = True
    for name, n in cfg.cases:
        G = build_group(parse_family(name))
        report = verify_tower(G, regular(G), n, raise_on_failure=False)
        print(report.to_json())
        ok &= report.ok
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cases", nargs="*", help="GROUP:n, e.g. D15:15")
    a = ap.parse_args()
    cfg = Config(tuple((c.split(":")[0], int(c.split(":")[1])) for c in a.cases)) if a.cases else Config()
    raise SystemExit(0 if main(cfg) else 2)
