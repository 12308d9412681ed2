"""Regenerate the bundled suite shipped in ``itlconform/data``.

    python3 scripts/make_bundled.py [--seed 7] [--count 6]

The output is deterministic for a given seed and count; commit both files.
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from itlconform.generator import GenPlan, generate, self_validate
from itlconform.itl import serialize

DATA = Path(__file__).resolve().parents[1] / 'src' / 'itlconform' / 'data'


@dataclass(frozen=True)
class BundleConfig:
    seed: int = 7
    count: int = 6
    out_dir: Path = DATA
    name: str = 'bundled'
    check: bool = True


def build(cfg: BundleConfig) -> None:
    t0 = time.perf_counter()
    plan = GenPlan(count=cfg.count, seed=cfg.seed)
    result = generate(plan, name=cfg.name)
    itl = cfg.out_dir / f'{cfg.name}.itl'
    itl.write_text(serialize(result.suite), encoding='utf-8')
    itl.with_suffix('.provenance').write_text(result.provenance_text(plan), encoding='utf-8')
    print(f'{itl}: {len(result.suite)} assertions, {len(result.dropped)} dropped, '
          f'{len(result.inapplicable)} inapplicable pairs ({time.perf_counter() - t0:.1f}s)')
    if cfg.check:
        rep = self_validate(result.suite)
        print(rep.render().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument('--seed', type=int, default=BundleConfig.seed)
    ap.add_argument('--count', type=int, default=BundleConfig.count)
    ap.add_argument('--out-dir', type=Path, default=DATA)
    ap.add_argument('--no-check', action='store_true')
    a = ap.parse_args()
    build(BundleConfig(seed=a.seed, count=a.count, out_dir=a.out_dir, check=not a.no_check))


if __name__ == '__main__':
    main()
