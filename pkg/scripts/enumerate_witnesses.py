"""Search every small natural function for a composite value and tally the outcomes.

Each non-constant normal form with at most --max-ops operators over --consts gets
a witness search up to --n-max. Forms whose values overflow the budget first are
counted separately; none should end up as "all prime".
"""

import argparse
import collections
from dataclasses import dataclass

from supernatural.algebra import enumerate_exprs
from supernatural.arith import get_effort
from supernatural.classify import is_constant
from supernatural.conjecture import Exhausted, smallest_composite_witness
from supernatural.errors import BudgetExceeded
from supernatural.expr import EvalBudget, render


@dataclass(frozen=True)
class EnumConfig:
    max_ops: int = 2
    consts: str = "1,2,3"
    n_max: int = 12
    budget_bits: int = 1 << 16
    effort: str = "quick"
    seed: int = 0


def run(cfg: EnumConfig):
    consts = [int(c) for c in cfg.consts.split(",")]
    budget, effort = EvalBudget(cfg.budget_bits), get_effort(cfg.effort)
    tally = collections.Counter()
    for e in enumerate_exprs(cfg.max_ops, consts):
        if is_constant(e):
            tally["constant"] += 1
            continue
        try:
            result = smallest_composite_witness(e, cfg.n_max, budget, effort, cfg.seed)
        except BudgetExceeded:
            tally["budget"] += 1
            continue
        if isinstance(result, Exhausted):
            tally["all prime"] += 1
            print("no composite found:", render(e))
        else:
            tally[f"witness at n={result.index}"] += 1
    for key, count in sorted(tally.items()):
        print(f"{key}: {count}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(EnumConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    run(EnumConfig(**vars(ap.parse_args())))
