"""Run the acceptance criteria and write the pass/fail lines to a file."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from flasque.acceptance import run_all


@dataclass
class Config:
    criteria: tuple = ()
    output: Path = Path("acceptance.txt")


def main(cfg: Config) -> int:
    lines = []

    def echo(line):
        print(line, flush=True)
        lines.append(line)
    outcomes = run_all(set(cfg.criteria) or None, echo=echo)
    cfg.output.write_text("\n".join(lines) + "\n")
    return 0 if all(o.passed for o in outcomes) else 2


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("criteria", nargs="*", type=int)
    ap.add_argument("--output", type=Path, default=Config.output)
    a = ap.parse_args()
    raise SystemExit(main(Config(tuple(a.criteria), a.output)))
