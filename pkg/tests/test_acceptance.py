"""Exit criteria 1-10. Each test appends one ``criterion N: PASS|FAIL ...`` line to the run summary."""

import random
import time
from itertools import product
from pathlib import Path

import pytest

import conftest
from conftest import worked_example_matrices
from spectral_dsp.cli import EXIT_NEGATIVE, EXIT_OK, RunConfig, cmd_verdict, cmd_witness
from spectral_dsp.core_combinatorics import (
    Partition,
    conjugate,
    level_domain,
    level_function,
    partitions_of,
    triangular_sum,
)
from spectral_dsp.dsp_engine import WitnessConfig, WitnessError, higgs_witness
from spectral_dsp.exact_linalg import determinant
from spectral_dsp.generators import (
    InstanceConfig,
    instance_from_layouts,
    random_ok_tuple,
    random_points,
    set_partitions_of_parts,
)
from spectral_dsp.linear_system import (
    build_constraints,
    compatibility_functional,
    pivot_free,
    solution_dimension,
    solve_block,
    vandermonde_block,
)
from spectral_dsp.ok_condition import equivalence_sweep, ok_condition
from spectral_dsp.parabolic_data import MarkedPoints, ParabolicData, residue_condition
from spectral_dsp.scalar_poly_kernel import BiPoly, ExactScalar, UniPoly, poly_substitute, scalar
from spectral_dsp.spectral_curve import assemble, local_conditions
from spectral_dsp.surface_lattice import expected_dimension

SAMPLES = Path(__file__).resolve().parent.parent / "sample_inputs"
S = ExactScalar
ONE = Partition((1,))


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


# ------------------------------------------------------------ 1


def test_criterion_1_worked_example_matrices():
    t0 = time.perf_counter()
    mismatches = 0
    for x1, x2 in ((1, 2), (-3, 5), (S(1, 2), S(0, 1))):
        data = ParabolicData.build([[(3, x1), (2, x2), (1, x1)]])
        sys = build_constraints(data, MarkedPoints((0,)))
        for a, (A, B) in worked_example_matrices(scalar(x1), scalar(x2)).items():
            blk = sys.blocks[(a, 0)]
            mismatches += blk.A != [[scalar(c) for c in row] for row in A]
            mismatches += blk.B != [scalar(b) for b in B]
        shapes = [(len(sys.blocks[(a, 0)].A), len(sys.blocks[(a, 0)].A[0])) for a in range(3)]
        mismatches += shapes != [(6, 6), (3, 6), (1, 6)]
    elapsed = time.perf_counter() - t0
    record(1, mismatches == 0 and elapsed < 1.0,
           f"A_0, A_1, A_2, B_0..B_2 exact for 3 (xi1, xi2) pairs, {mismatches} mismatches, {elapsed:.3f}s")


# ------------------------------------------------------------ 2


def test_criterion_2_level_sum_identity():
    t0 = time.perf_counter()
    count = bad = 0
    for size in range(0, 13):
        for p in partitions_of(size):
            count += 1
            lhs = sum(level_function(p, mu) for mu in range(1, size + 1))
            bad += lhs != triangular_sum(p)
    elapsed = time.perf_counter() - t0
    record(2, bad == 0 and elapsed < 10, f"{count} partitions with |P| <= 12, {bad} failures, {elapsed:.2f}s")


# ------------------------------------------------------------ 3


def _stacked(nodes, heights, r):
    c = sum(heights)
    rows = []
    for x, h in zip(nodes, heights):
        rows.extend(vandermonde_block(S(x), h, r))
    return [row[r - c:] for row in rows]


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def test_criterion_3_generalized_vandermonde():
    t0 = time.perf_counter()
    rng = random.Random(3)
    bad = 0
    distinct_cases = 0
    for _ in range(1000):
        r = rng.randint(1, 8)
        c = rng.randint(1, r)
        k = rng.randint(1, c)
        heights = rng.choice(list(_compositions(c, k)))
        if rng.random() < 0.5:
            nodes = rng.sample(range(-6, 7), k)
        else:
            nodes = [rng.randint(-2, 2) for _ in range(k)]
        distinct = len(set(nodes)) == k
        distinct_cases += distinct
        bad += (not determinant(_stacked(nodes, heights, r)).is_zero()) != distinct
    # every height pattern with a repeated node, r <= 8
    counter = 0
    for r in range(2, 9):
        for c in range(2, r + 1):
            for k in range(2, c + 1):
                for heights in _compositions(c, k):
                    nodes = [0, 0] + list(range(1, k - 1))
                    counter += 1
                    bad += not determinant(_stacked(nodes, heights, r)).is_zero()
    elapsed = time.perf_counter() - t0
    record(3, bad == 0 and elapsed < 30,
           f"1000 random trials ({distinct_cases} distinct) + {counter} repeated-node patterns, "
           f"{bad} failures, {elapsed:.1f}s")


# ------------------------------------------------------------ 4


def test_criterion_4_pivot_counts():
    t0 = time.perf_counter()
    rng = random.Random(4)
    tuples = bad = 0
    for r in range(1, 7):
        parts = list(partitions_of(r))
        for n in (1, 2, 3):
            pts = MarkedPoints(tuple(range(n)))
            for tup in product(parts, repeat=n):
                layouts = [set_partitions_of_parts(p, rng) for p in tup]
                data = ParabolicData(tuple(
                    ParabolicData.build([[(m, v) for v, sub in enumerate(lay) for m in sub]]).blocks[0]
                    for lay in layouts
                ))
                decomp = pivot_free(build_constraints(data, pts))
                tuples += 1
                for i, p in enumerate(data.partitions()):
                    bad += any(decomp.t[(mu, i)] != level_function(p, mu) for mu in range(1, r + 1))
    elapsed = time.perf_counter() - t0
    record(4, bad == 0 and elapsed < 60, f"{tuples} partition tuples (r <= 6, n <= 3), {bad} failures, {elapsed:.1f}s")


# ------------------------------------------------------------ 5


def test_criterion_5_constant_dimension():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    bad = 0
    modes = {"zero": 0, "single-eigenvalue": 0, "mixed": 0}
    for k in range(100):
        r = rng.randint(1, 5)
        n = rng.choice([3, 4])
        mode = ("zero", "single-eigenvalue", "mixed")[k % 3]
        parts = random_ok_tuple(rng, r, n)
        pts = random_points(rng, n)
        if mode == "single-eigenvalue":
            layouts = [(p,) for p in parts]
        else:
            layouts = [set_partitions_of_parts(p, rng) for p in parts]
        data = instance_from_layouts(layouts, pts, rng, InstanceConfig(zero_xi=mode == "zero"))
        assert ok_condition(0, n, data.partitions()).passed
        modes[mode] += 1
        bad += solution_dimension(data, pts) != expected_dimension(0, n, r, data.partitions())
    elapsed = time.perf_counter() - t0
    record(5, bad == 0 and elapsed < 300,
           f"100 OK instances {modes}, {bad} dimension mismatches, {elapsed:.1f}s")


# ------------------------------------------------------------ 6 and 7


def _subpartitions_of_321():
    top = (3, 2, 1)
    return [p for s in range(1, 7) for p in partitions_of(s)
            if len(p) <= 3 and all(p[k] <= top[k] for k in range(len(p)))]


@pytest.fixture(scope="module")
def witness_batch():
    """Five seeded attempts per subpartition of (3, 2, 1) at the first point."""
    out, failures = [], []
    pts = MarkedPoints((0, 1, -1))
    for idx, sub in enumerate(_subpartitions_of_321()):
        extra = 1 if sub.size <= 4 else 0
        r = sub.size + extra
        flag = (ONE,) * r
        layouts = [(sub,) + (ONE,) * extra, flag, flag]
        for rep in range(5):
            rng = random.Random(100 * idx + rep)
            data = instance_from_layouts(layouts, pts, rng, InstanceConfig(value_range=9))
            try:
                out.append((sub, higgs_witness(data, pts, WitnessConfig(seed=rep))))
            except WitnessError as exc:
                failures.append((sub, str(exc)))
    return out, failures


def _random_monic(rng, r, x0, y0, forced_p):
    secs = [UniPoly([rng.randint(-2, 2) for _ in range(rng.randint(0, 2 * mu + 1))]) for mu in range(1, r + 1)]
    q = assemble(secs)
    if forced_p is None:
        return q
    # shift to the origin, delete monomials in the level domain, shift back
    X, Y = BiPoly.x(), BiPoly.y()
    local = poly_substitute(q, X + x0, Y + y0)
    dom = level_domain(forced_p)
    local = BiPoly({m: c for m, c in local.terms.items() if (m[1], m[0]) not in dom.points})
    return poly_substitute(local, X - x0, Y - y0)


def test_criterion_6_local_conditions_agree(witness_batch):
    t0 = time.perf_counter()
    rng = random.Random(6)
    disagreements = held = 0
    for k in range(500):
        r = rng.randint(1, 5)
        p = rng.choice(list(partitions_of(rng.randint(1, r))))
        x0, y0 = rng.randint(-2, 2), rng.randint(-2, 2)
        q = _random_monic(rng, r, x0, y0, p if k % 2 else None)
        v = local_conditions(q, x0, y0, p)
        disagreements += not v.agree
        held += v.derivatives
    centers = 0
    for _, res in witness_batch[0]:
        for c in res.witness.ledger:
            centers += 1
            disagreements += not c.verdict.agree
    elapsed = time.perf_counter() - t0
    record(6, disagreements == 0 and elapsed < 300,
           f"500 random monic curves ({held} satisfying) + {centers} witness centers, "
           f"{disagreements} disagreements, {elapsed:.1f}s")


def test_criterion_7_jordan_types(witness_batch):
    t0 = time.perf_counter()
    witnesses, failures = witness_batch
    integral = [res for _, res in witnesses if res.verified]
    bad = 0
    seen = set()
    for sub, res in witnesses:
        for _, _, rep in res.jordan:
            m = list(rep.subpartition) + [0]
            e = [m[j] - m[j + 1] for j in range(len(m) - 1)]
            bad += rep.jordan != conjugate(rep.subpartition) or rep.e != e
            seen.add(tuple(rep.subpartition))
    wanted = {tuple(p) for p in _subpartitions_of_321()}
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and len(integral) >= 50 and wanted <= seen
    record(7, ok, f"{len(integral)} integral witnesses, {len(seen)} subpartitions up to (3,2,1), "
                  f"{bad} Jordan/e mismatches, {len(failures)} rigid reducible draws skipped")


# ------------------------------------------------------------ 8


def test_criterion_8_equivalence_sweep():
    t0 = time.perf_counter()
    summary = equivalence_sweep(6, (3, 4))
    elapsed = time.perf_counter() - t0
    record(8, not summary.mismatches and elapsed < 300,
           f"{summary.tuples} tuples (r <= 6, n in {{3,4}}), {summary.ok_true} OK-true, "
           f"{len(summary.mismatches)} mismatches, {elapsed:.1f}s")


# ------------------------------------------------------------ 9


def test_criterion_9_compatibility_is_residue():
    t0 = time.perf_counter()
    rng = random.Random(9)
    bad = vanishing = 0
    for k in range(200):
        n = rng.randint(3, 5)
        r = rng.randint(1, 4)
        pts = random_points(rng, n)
        parts = [rng.choice(list(partitions_of(r))) for _ in range(n)]
        layouts = [set_partitions_of_parts(p, rng) for p in parts]
        if k % 2:
            data = instance_from_layouts(layouts, pts, rng)
        else:
            data = ParabolicData.build([
                [(m, rng.randint(-5, 5) + 10 * j) for j, sub in enumerate(lay) for m in sub] for lay in layouts
            ])
        sys = build_constraints(data, pts)
        values = [solve_block(sys, 0, i)[1] for i in range(n)]
        comp = compatibility_functional(pts, values).is_zero()
        vanishing += comp
        bad += comp != residue_condition(data, pts)
    elapsed = time.perf_counter() - t0
    record(9, bad == 0 and 0 < vanishing < 200 and elapsed < 10,
           f"200 inputs ({vanishing} vanishing), {bad} disagreements, {elapsed:.2f}s")


# ------------------------------------------------------------ 10


def test_criterion_10_end_to_end():
    t0 = time.perf_counter()
    code_s, env_s = cmd_verdict(RunConfig(subcommand="verdict", source=str(SAMPLES / "hypergeometric.json")))
    code_w, env_w = cmd_witness(RunConfig(subcommand="witness", source=str(SAMPLES / "hypergeometric_witness.json")))
    code_f, env_f = cmd_verdict(RunConfig(subcommand="verdict", source=str(SAMPLES / "scalar_classes.json")))
    types = env_w["result"]["point_jordan_types"]
    elapsed = time.perf_counter() - t0
    ok = (
        code_s == EXIT_OK and env_s["result"]["verdict"] == "solvable"
        and code_w == EXIT_OK and env_w["result"]["verified"]
        and all(t == [1, 1] for t in types.values()) and len(types) == 3
        and code_f == EXIT_NEGATIVE and env_f["result"]["verdict"] == "criterion-failed"
        and env_f["result"]["failed_checks"] == ["inequality(mu=2)"]
        and elapsed < 10
    )
    record(10, ok, f"solvable / verified witness with (1,1) at 3 points / criterion-failed at mu=2, "
                   f"{elapsed:.2f}s")
