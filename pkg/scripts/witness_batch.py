"""Build spectral witnesses for every subpartition inside a target and tally Jordan types.

Each run puts the chosen subpartition on one eigenvalue at the first point and
full flags at the others, then records attempts, integrality and timing.
"""

import argparse
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Tuple

from spectral_dsp.core_combinatorics import Partition, conjugate, partitions_of
from spectral_dsp.dsp_engine import WitnessConfig, WitnessError, higgs_witness
from spectral_dsp.generators import InstanceConfig, instance_from_layouts
from spectral_dsp.parabolic_data import MarkedPoints


@dataclass
class BatchConfig:
    target: Tuple[int, ...] = (3, 2, 1)
    reps: int = 5
    extra_simple: int = 1  # extra simple eigenvalues at the first point while |sub| <= 4
    value_range: int = 9
    retries: int = 8
    seed: int = 0


def inside(p: Partition, top: Tuple[int, ...]) -> bool:
    return len(p) <= len(top) and all(p[k] <= top[k] for k in range(len(p)))


def run(cfg: BatchConfig) -> dict:
    one = Partition((1,))
    pts = MarkedPoints((0, 1, -1))
    subs = [p for s in range(1, sum(cfg.target) + 1) for p in partitions_of(s) if inside(p, cfg.target)]
    rows, tally = [], Counter()
    for idx, sub in enumerate(subs):
        extra = cfg.extra_simple if sub.size <= 4 else 0
        flag = (one,) * (sub.size + extra)
        layouts = [(sub,) + (one,) * extra, flag, flag]
        for rep in range(cfg.reps):
            rng = random.Random(cfg.seed * 7919 + 100 * idx + rep)
            data = instance_from_layouts(layouts, pts, rng, InstanceConfig(value_range=cfg.value_range))
            t0 = time.perf_counter()
            try:
                res = higgs_witness(data, pts, WitnessConfig(seed=cfg.seed + rep, retries=cfg.retries))
            except WitnessError as exc:
                tally["failed"] += 1
                rows.append({"sub": sub.to_json(), "error": str(exc)})
                continue
            tally["verified" if res.verified else "unverified"] += 1
            centre = next(rep_ for i, _, rep_ in res.jordan if i == 0 and rep_.subpartition == sub)
            rows.append({
                "sub": sub.to_json(),
                "jordan": centre.jordan.to_json(),
                "conjugate_match": centre.jordan == conjugate(sub),
                "e": centre.e,
                "attempts": res.attempts,
                "seconds": round(time.perf_counter() - t0, 3),
            })
    return {"config": asdict(cfg), "tally": dict(tally), "rows": rows}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--target", type=int, nargs="+", default=[3, 2, 1])
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--retries", type=int, default=8)
    a = ap.parse_args()
    cfg = BatchConfig(target=tuple(a.target), reps=a.reps, seed=a.seed, retries=a.retries)
    print(json.dumps(run(cfg), indent=2))


if __name__ == "__main__":
    main()
