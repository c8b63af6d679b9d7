"""Seeded random instances for sweeps, experiments and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from .core_combinatorics import Partition, full_flag, partitions_of, union
from .ok_condition import ok_condition
from .parabolic_data import MarkedPoints, ParabolicData, PointData
from .scalar_poly_kernel import ExactScalar, ZERO

# a point's eigenvalue layout: one subpartition per distinct eigenvalue
Layout = Tuple[Partition, ...]


@dataclass
class InstanceConfig:
    """Knobs for :func:`random_instance`."""

    value_range: int = 6
    point_range: int = 5
    zero_xi: bool = False
    max_attempts: int = 200


def set_partitions_of_parts(p: Partition, rng: random.Random, groups: Optional[int] = None) -> Layout:
    """Randomly split the parts of ``p`` into eigenvalue groups."""
    parts = list(p)
    rng.shuffle(parts)
    k = groups or rng.randint(1, len(parts))
    buckets: List[List[int]] = [[] for _ in range(k)]
    for idx, m in enumerate(parts):
        buckets[idx if idx < k else rng.randrange(k)].append(m)
    return tuple(Partition.of(b) for b in buckets if b)


def _point_data(layout: Layout, values: Sequence[ExactScalar]) -> PointData:
    m, xi = [], []
    for sub, v in zip(layout, values):
        for part in sub:
            m.append(part)
            xi.append(v)
    return PointData(tuple(m), tuple(xi))


def random_points(rng: random.Random, n: int, spread: int = 5) -> MarkedPoints:
    vals = rng.sample(range(-spread, spread + 1), n)
    return MarkedPoints(tuple(ExactScalar(v) for v in vals))


def instance_from_layouts(layouts: Sequence[Layout], pts: MarkedPoints, rng: random.Random,
                          config: Optional[InstanceConfig] = None) -> ParabolicData:
    """Random distinct eigenvalues per point, the last one solved from the residue condition."""
    cfg = config or InstanceConfig()
    if cfg.zero_xi:
        return ParabolicData(tuple(_point_data(l, [ZERO] * len(l)) for l in layouts))
    R = cfg.value_range
    for _ in range(cfg.max_attempts):
        values = [[ExactScalar(rng.randint(-R, R)) for _ in l] for l in layouts]
        if any(len(set(v)) != len(v) for v in values):
            continue
        i_last = len(layouts) - 1
        weight = pts.residue_weight(i_last) * layouts[i_last][-1].size
        partial = ZERO
        for i, (lay, vals) in enumerate(zip(layouts, values)):
            w = pts.residue_weight(i)
            for j, (sub, v) in enumerate(zip(lay, vals)):
                if (i, j) != (i_last, len(lay) - 1):
                    partial = partial + w * v * sub.size
        values[i_last][-1] = -partial / weight
        if len(set(values[i_last])) != len(values[i_last]):
            continue
        return ParabolicData(tuple(_point_data(l, v) for l, v in zip(layouts, values)))
    raise RuntimeError("could not draw residue-compatible eigenvalues")


def ok_tuples(r: int, n: int) -> Iterator[Tuple[Partition, ...]]:
    """All ``n``-tuples of partitions of ``r`` passing the genus-0 OK condition."""
    parts = list(partitions_of(r))
    for tup in product(parts, repeat=n):
        if ok_condition(0, n, tup).passed:
            yield tup


def random_ok_tuple(rng: random.Random, r: int, n: int, max_tries: int = 500) -> Tuple[Partition, ...]:
    parts = list(partitions_of(r))
    for _ in range(max_tries):
        tup = tuple(rng.choice(parts) for _ in range(n))
        if ok_condition(0, n, tup).passed:
            return tup
    return tuple(full_flag(r) for _ in range(n))


def random_instance(rng: random.Random, r: int, n: int, config: Optional[InstanceConfig] = None,
                    partitions: Optional[Sequence[Partition]] = None,
                    ) -> Tuple[ParabolicData, MarkedPoints]:
    """OK-passing partitions, random eigenvalue coincidences, residue-compatible values."""
    cfg = config or InstanceConfig()
    parts = tuple(partitions) if partitions else random_ok_tuple(rng, r, n)
    pts = random_points(rng, n, cfg.point_range)
    layouts = [set_partitions_of_parts(p, rng) for p in parts]
    return instance_from_layouts(layouts, pts, rng, cfg), pts


def layout_union(layout: Layout) -> Partition:
    out = Partition()
    for p in layout:
        out = union(out, p)
    return out
