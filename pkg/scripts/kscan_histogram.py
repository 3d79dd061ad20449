"""Scan n -> 2^2^n + c over odd c and print how many c reach each primes_before count."""

import argparse
import collections
import time
from dataclasses import dataclass

from supernatural.arith import get_effort
from supernatural.conjecture import scan_family
from supernatural.expr import EvalBudget


@dataclass(frozen=True)
class ScanConfig:
    c_from: int = 1
    c_to: int = 2601
    n_check: int = 7
    effort: str = "quick"
    seed: int = 0
    jobs: int = 1


def run(cfg: ScanConfig):
    start = time.perf_counter()
    rows = scan_family(cfg.c_from, cfg.c_to, cfg.n_check, EvalBudget(),
                       get_effort(cfg.effort), cfg.seed, cfg.jobs)
    elapsed = time.perf_counter() - start
    counts = collections.Counter(r.primes_before for r in rows)
    print(f"{len(rows)} functions scanned in {elapsed:.1f}s")
    for k in sorted(counts):
        print(f"primes_before={k}: {counts[k]}")
    for r in rows:
        if r.primes_before >= cfg.n_check - 1:
            print(f"  {r.function}: composite first at n={r.smallest_composite_index}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(ScanConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    run(ScanConfig(**vars(ap.parse_args())))
