"""Emit the TSV of relative and real class numbers for every valid conductor
up to a bound. The output can be fed back to `flasque classgroup --table`."""
import argparse
from dataclasses import dataclass

from flasque.cyclo import emit_table, valid_class_number_moduli


@dataclass
class Config:
    max_m: int = 60


def main(cfg: Config) -> str:
    return emit_table(valid_class_number_moduli(cfg.max_m))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=Config.max_m)
    print(main(Config(ap.parse_args().max_m)), end="")
