"""Exhaustive OK-inequality vs Simpson agreement over partition tuples with one regular class."""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from typing import List

from spectral_dsp.ok_condition import equivalence_sweep


@dataclass
class SweepConfig:
    max_rank: int = 6
    points: List[int] = field(default_factory=lambda: [3, 4])
    show_mismatches: int = 10


def run(cfg: SweepConfig) -> dict:
    t0 = time.perf_counter()
    summary = equivalence_sweep(cfg.max_rank, cfg.points)
    out = summary.to_json()
    out["mismatches"] = out["mismatches"][: cfg.show_mismatches]
    out["seconds"] = round(time.perf_counter() - t0, 3)
    out["config"] = asdict(cfg)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-rank", type=int, default=SweepConfig.max_rank)
    ap.add_argument("--points", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--show-mismatches", type=int, default=10)
    a = ap.parse_args()
    print(json.dumps(run(SweepConfig(a.max_rank, a.points, a.show_mismatches)), indent=2))


if __name__ == "__main__":
    main()
