"""Tabulate flabby/coflabby status of the standard lattices over every
supported group up to a given order."""
import argparse
from dataclasses import dataclass

from flasque.errors import NotEpsilonGroup
from flasque.groups import build_group, family_specs
from flasque.homalg import flabby_coflabby
from flasque.lattices import construct


@dataclass
class Config:
    max_order: int = 16
    kinds: tuple = ("trivial", "sign", "regular")


def main(cfg: Config):
    for spec in family_specs(cfg.max_order):
        G = build_group(spec)
        for kind in cfg.kinds:
            try:
                M = construct(kind, G)
            except NotEpsilonGroup as exc:
                print(f"{spec!s:<10} {kind:<8} n/a ({type(exc).__name__})")
                continue
            r = flabby_coflabby(M)
            print(f"{spec!s:<10} {kind:<8} flabby={r.flabby} coflabby={r.coflabby} invertible={r.invertible}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=Config.max_order)
    main(Config(ap.parse_args().max_order))
