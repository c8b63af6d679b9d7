"""Compare the computed solution dimension with the expected dimension on random genus-0 instances."""

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass

from spectral_dsp.generators import (
    InstanceConfig,
    instance_from_layouts,
    random_ok_tuple,
    random_points,
    set_partitions_of_parts,
)
from spectral_dsp.linear_system import solution_dimension
from spectral_dsp.surface_lattice import expected_dimension


@dataclass
class DimensionConfig:
    trials: int = 100
    max_rank: int = 5
    points: tuple = (3, 4)
    zero_fraction: float = 0.25
    seed: int = 0


def run(cfg: DimensionConfig) -> dict:
    rng = random.Random(cfg.seed)
    mismatches, by_dim = [], {}
    t0 = time.perf_counter()
    for _ in range(cfg.trials):
        r = rng.randint(1, cfg.max_rank)
        n = rng.choice(cfg.points)
        parts = random_ok_tuple(rng, r, n)
        pts = random_points(rng, n)
        layouts = [set_partitions_of_parts(p, rng) for p in parts]
        zero = rng.random() < cfg.zero_fraction
        data = instance_from_layouts(layouts, pts, rng, InstanceConfig(zero_xi=zero))
        got = solution_dimension(data, pts)
        want = expected_dimension(0, n, r, data.partitions())
        by_dim[want] = by_dim.get(want, 0) + 1
        if got != want:
            mismatches.append({"parts": [p.to_json() for p in parts], "computed": got, "expected": want})
    return {
        "config": asdict(cfg),
        "expected_dimension_histogram": {str(k): v for k, v in sorted(by_dim.items())},
        "mismatches": mismatches,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--max-rank", type=int, default=5)
    ap.add_argument("--points", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    cfg = DimensionConfig(trials=a.trials, max_rank=a.max_rank, points=tuple(a.points), seed=a.seed)
    print(json.dumps(run(cfg), indent=2))


if __name__ == "__main__":
    main()
