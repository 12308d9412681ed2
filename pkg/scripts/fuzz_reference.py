"""Inclusion fuzzing of a provider over the seeded corpus, with a per-zone
summary.  Slower than the acceptance test only because it prints more."""
from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from itlconform.generator import fuzz_check, fuzz_corpus
from itlconform.harness import get_provider
from itlconform.judge import PASS


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 7
    size: int = 50
    points: int = 1000
    provider: str = 'reference'


def run(cfg: FuzzConfig) -> int:
    provider = get_provider(cfg.provider)
    checks, bad = Counter(), Counter()
    t0 = time.perf_counter()
    for case in fuzz_corpus(cfg.seed, cfg.size):
        verdicts = fuzz_check(provider, case.op, *case.args, n=cfg.points, seed=cfg.seed)
        checks[case.zone] += len(verdicts)
        for v in verdicts:
            if v.status != PASS:
                bad[case.zone] += 1
                print(f'{case.op} {" ".join(map(str, case.args))}: {v.status} {v.reason}')
    provider.close()
    for zone in sorted(checks):
        print(f'{zone:10s} checks={checks[zone]:6d} bad={bad[zone]}')
    print(f'total bad={sum(bad.values())} in {time.perf_counter() - t0:.1f}s')
    return 1 if bad else 0


if __name__ == '__main__':
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument('--seed', type=int, default=FuzzConfig.seed)
    ap.add_argument('--size', type=int, default=FuzzConfig.size)
    ap.add_argument('--points', type=int, default=FuzzConfig.points)
    ap.add_argument('--provider', default=FuzzConfig.provider)
    a = ap.parse_args()
    raise SystemExit(run(FuzzConfig(a.seed, a.size, a.points, a.provider)))
