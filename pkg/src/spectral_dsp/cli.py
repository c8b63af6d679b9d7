"""Command-line front end.

Exit codes: 0 success, 2 criterion or assertion failed, 1 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .dsp_engine import (
    CRITERION_FAILED,
    WitnessConfig,
    WitnessError,
    dsp_verdict,
    higgs_witness,
    parse_class_spec,
)
from .linear_system import ConstraintError, solution_dimension
from .ok_condition import equivalence_sweep, ok_condition
from .parabolic_data import parse_parabolic_json, residue_condition
from .surface_lattice import expected_dimension, strongly_parabolic_dimension

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    source: Optional[str] = None
    inline: Optional[str] = None
    seed: int = 0
    retries: int = 8
    fmt: str = "json"
    genus: Optional[int] = None
    equivalence: bool = False
    max_rank: int = 6
    points: Tuple[int, ...] = (3, 4)


def _load(cfg: RunConfig) -> Tuple[dict, str]:
    try:
        if cfg.inline is not None:
            text = cfg.inline
        elif cfg.source in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(cfg.source, encoding="utf-8") as fh:
                text = fh.read()
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from None
    canon = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return obj, hashlib.sha256(canon.encode()).hexdigest()


def _envelope(command: str, digest: Optional[str], cfg: RunConfig, body: Dict) -> Dict:
    return {
        "command": command,
        "version": __version__,
        "input_sha256": digest,
        "seed": cfg.seed,
        "result": body,
    }


# ------------------------------------------------------------ table rendering


def _table(rows: Sequence[Sequence[object]], header: Sequence[str]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _render_criterion(rep: Dict) -> str:
    rows = [(r["mu"], r["lhs"], r["rhs"], "pass" if r["pass"] else "FAIL") for r in rep["rows"]]
    return _table(rows, ("mu", "sum gamma", "bound", "status")) if rows else "(no per-mu rows)"


def render_table(env: Dict) -> str:
    res = env["result"]
    head = f"{env['command']}  version {env['version']}  input {env['input_sha256']}  seed {env['seed']}"
    out = [head]
    cmd = env["command"]
    if cmd == "verdict":
        out.append(f"verdict: {res['verdict']}")
        chk = res["checks"]
        out.append(f"det product: {chk['det']['product']} ({'pass' if chk['det']['pass'] else 'FAIL'})")
        out.append(f"multiplicatively generic: {'pass' if chk['multiplicative_generic']['pass'] else 'FAIL'}")
        out.append(f"parabolic type: {res['parabolic_type']}")
        out.append(_render_criterion(chk["inequality"]))
        if res["failed_checks"]:
            out.append("failed: " + ", ".join(res["failed_checks"]))
    elif cmd == "witness":
        if "error" in res:
            out.append(f"error: {res['error']}")
        else:
            out.append(f"verified: {res['verified']}  seed used: {res['seed_used']}  attempts: {res['attempts']}")
            w = res["witness"]
            for mu, s in enumerate(w["sections"], start=1):
                out.append(f"s_{mu} = {s}")
            out.append(f"integrality: {w['integrality']['verdict']} ({w['integrality']['mode']})")
            rows = [
                (c["point"], c["xi"], c["subpartition"], c["multiplicity_chain"], c["chain_targets"],
                 c["exact_multiplicity"])
                for c in w["centers"]
            ]
            out.append(_table(rows, ("point", "xi", "P", "chain", "targets", "exact")))
            rows = [(j["point"], j["xi"], j["subpartition"], j["jordan_type"], j["e"], j["ok"]) for j in res["jordan"]]
            out.append(_table(rows, ("point", "xi", "P", "jordan", "e_j", "ok")))
    elif cmd == "dimensions":
        out.append(_render_criterion(res["ok_condition"]))
        out.append(f"expected dimension: {res['expected_dimension']}")
        out.append(f"strongly parabolic formula: {res['strongly_parabolic_dimension']}")
        out.append(f"computed dimension: {res['computed_dimension']}")
        if "equivalence_sweep" in res:
            sw = res["equivalence_sweep"]
            out.append(f"equivalence sweep: {sw['agreements']}/{sw['tuples']} agree, {len(sw['mismatches'])} mismatches")
    elif cmd == "sweep":
        out.append(f"tuples: {res['tuples']}  agreements: {res['agreements']}  mismatches: {len(res['mismatches'])}")
    return "\n".join(out)


# ------------------------------------------------------------ commands


def cmd_verdict(cfg: RunConfig) -> Tuple[int, Dict]:
    obj, digest = _load(cfg)
    try:
        classes, g = parse_class_spec(obj)
        if cfg.genus is not None:
            g = cfg.genus
        v = dsp_verdict(classes, g)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    code = EXIT_NEGATIVE if v.verdict == CRITERION_FAILED else EXIT_OK
    return code, _envelope("verdict", digest, cfg, v.to_json())


def cmd_witness(cfg: RunConfig) -> Tuple[int, Dict]:
    obj, digest = _load(cfg)
    try:
        data, pts = parse_parabolic_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(str(exc)) from None
    try:
        res = higgs_witness(data, pts, WitnessConfig(seed=cfg.seed, retries=cfg.retries))
    except WitnessError as exc:
        return EXIT_NEGATIVE, _envelope("witness", digest, cfg, {"error": str(exc), "detail": exc.detail})
    except ConstraintError as exc:
        body = {"error": str(exc), "block": list(exc.block) if exc.block else None, "mu": exc.mu}
        return EXIT_NEGATIVE, _envelope("witness", digest, cfg, body)
    except AssertionError as exc:
        return EXIT_NEGATIVE, _envelope("witness", digest, cfg, {"error": f"assertion failed: {exc}"})
    body = res.to_json()
    return (EXIT_OK if res.verified else EXIT_NEGATIVE), _envelope("witness", digest, cfg, body)


def cmd_dimensions(cfg: RunConfig) -> Tuple[int, Dict]:
    obj, digest = _load(cfg)
    try:
        data, pts = parse_parabolic_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(str(exc)) from None
    g = cfg.genus if cfg.genus is not None else int(obj.get("genus", 0))
    parts = data.partitions()
    n, r = data.n, data.rank
    rep = ok_condition(g, n, parts)
    body: Dict = {
        "genus": g,
        "n": n,
        "rank": r,
        "ok_condition": rep.to_json(),
        "residue_condition": residue_condition(data, pts),
        "expected_dimension": expected_dimension(g, n, r, parts),
        "strongly_parabolic_dimension": strongly_parabolic_dimension(g, n, r, parts),
        "computed_dimension": None,
    }
    if g == 0 and body["residue_condition"] and n >= 3:
        dim = solution_dimension(data, pts)
        body["computed_dimension"] = "empty" if dim is None else dim
    if cfg.equivalence:
        body["equivalence_sweep"] = equivalence_sweep(cfg.max_rank, cfg.points).to_json()
    agree = body["computed_dimension"] in (None, body["expected_dimension"]) or not rep.passed
    return (EXIT_OK if agree else EXIT_NEGATIVE), _envelope("dimensions", digest, cfg, body)


def cmd_sweep(cfg: RunConfig) -> Tuple[int, Dict]:
    summary = equivalence_sweep(cfg.max_rank, cfg.points)
    body = summary.to_json()
    spec = {"max_rank": cfg.max_rank, "points": list(cfg.points)}
    digest = hashlib.sha256(json.dumps(spec, sort_keys=True).encode()).hexdigest()
    return (EXIT_OK if not summary.mismatches else EXIT_NEGATIVE), _envelope("sweep", digest, cfg, body)


COMMANDS: Dict[str, Callable[[RunConfig], Tuple[int, Dict]]] = {
    "verdict": cmd_verdict,
    "witness": cmd_witness,
    "dimensions": cmd_dimensions,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spectral-dsp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="free-value randomisation seed (default 0)")
    common.add_argument("--retries", type=int, default=8, help="witness re-seeding budget")
    common.add_argument("--format", choices=("json", "table"), default="json", dest="fmt")
    common.add_argument("--genus", type=int, default=None, help="override the genus in the input")
    for name, helptext in (
        ("verdict", "Deligne-Simpson verdict for a class spec"),
        ("witness", "construct and verify a genus-0 spectral witness"),
        ("dimensions", "OK rows and expected vs computed dimensions"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("input", nargs="?", default=None, help="JSON file, or - for stdin")
        sp.add_argument("--json", dest="inline", default=None, help="inline JSON instead of a file")
        if name == "dimensions":
            sp.add_argument("--equivalence", action="store_true", help="append the OK/Simpson sweep summary")
            sp.add_argument("--max-rank", type=int, default=6)
            sp.add_argument("--points", type=int, nargs="+", default=[3, 4])
    sp = sub.add_parser("sweep", parents=[common], help="exhaustive OK/Simpson agreement sweep")
    sp.add_argument("--max-rank", type=int, default=6)
    sp.add_argument("--points", type=int, nargs="+", default=[3, 4])
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    cfg = RunConfig(
        subcommand=args.subcommand,
        source=getattr(args, "input", None),
        inline=getattr(args, "inline", None),
        seed=args.seed,
        retries=args.retries,
        fmt=args.fmt,
        genus=args.genus,
        equivalence=getattr(args, "equivalence", False),
        max_rank=getattr(args, "max_rank", 6),
        points=tuple(getattr(args, "points", (3, 4))),
    )
    if cfg.seed < 0 or cfg.retries < 0:
        print("error: --seed and --retries must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        code, env = COMMANDS[cfg.subcommand](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.fmt == "json":
        sys.stdout.write(json.dumps(env, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render_table(env) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
