"""Command-line front end: ``coxembed enumerate | verify | export``.

Exit codes: 0 PASS, 1 FAIL (nonzero residual), 2 invalid input,
3 degeneracy (no general-position sample found).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Sequence

from . import __version__
from .algebra import BACKEND, DegenerateSpecialization, ExpressionError, parse_rational
from .coxring import (
    DEFAULT_PARAMS,
    DegeneracyExhausted,
    GeneralPositionError,
    PointConfig,
    random_config,
    require_general_position,
)
from .homspace import export_equations
from .lattice import enumerate_minus_one_curves, enumerate_roots, enumerate_rulings
from .rescaling import (
    RescalingAssignment,
    SolverError,
    certify_embedding,
    certify_symbolic,
    membership_conditions,
    random_free_values,
    random_samples,
    rescaling_symbol,
    rescaling_symbols,
    solve_system,
)

EXIT_PASS, EXIT_FAIL, EXIT_INVALID, EXIT_DEGENERATE = 0, 1, 2, 3
THREADS_ENV = "COXEMBED_THREADS"


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    r: int
    mode: str
    params: tuple[tuple[str, Fraction], ...] | None
    seed: int | None
    scope: str
    samples: int
    out: str | None
    force_symbolic: bool = False

    def validate(self) -> "RunConfig":
        if self.r not in (6, 7):
            raise InputError("--r must be 6 or 7")
        if self.mode not in ("symbolic", "specialized"):
            raise InputError("--mode must be 'symbolic' or 'specialized'")
        if self.scope not in ("M", "all"):
            raise InputError("--scope must be 'M' or 'all'")
        if self.samples < 1:
            raise InputError("--samples must be positive")
        if self.mode == "symbolic":
            if self.params:
                raise InputError("--params only applies to specialized mode")
            if self.r == 7 and not self.force_symbolic:
                raise InputError("symbolic mode for r=7 is very expensive; pass --force-symbolic to run it anyway")
        elif self.params is None and self.seed is None:
            raise InputError("specialized mode needs --params or --seed")
        if self.params is not None:
            expected = set(DEFAULT_PARAMS[self.r])
            given = {k for k, _ in self.params}
            if given != expected:
                raise InputError(f"--params for r={self.r} must bind exactly {', '.join(DEFAULT_PARAMS[self.r])}")
        return self

    def echo(self) -> dict:
        return {
            "r": self.r,
            "mode": self.mode,
            "params": None if self.params is None else {k: str(v) for k, v in self.params},
            "seed": self.seed,
            "scope": self.scope,
            "samples": self.samples,
            "force_symbolic": self.force_symbolic,
        }


def parse_params(text: str | None) -> tuple[tuple[str, Fraction], ...] | None:
    if text is None:
        return None
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InputError(f"expected name=value, got {item!r}")
        name, value = (s.strip() for s in item.split("=", 1))
        if name in out:
            raise InputError(f"parameter {name} given twice")
        try:
            out[name] = parse_rational(value)
        except (ExpressionError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad value for {name}: {exc}") from None
    return tuple(sorted(out.items()))


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def _write_json(data, out: str | None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out is None:
        return
    if out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- enumerate ------------------------------------------------------------------


def _enumerate_rows(r: int, what: str) -> tuple[list[str], list[list[str]]]:
    if what == "curves":
        rows = [[str(c), c.symbol(), str(c.divisor_class(r)), " ".join(map(str, c.divisor_class(r).vector))] for c in enumerate_minus_one_curves(r)]
        return ["curve", "coordinate", "class", "vector"], rows
    if what == "roots":
        return ["root"], [[" ".join(map(str, v.vector))] for v in enumerate_roots(r)]
    if what == "rulings":
        rulings = list(enumerate_rulings(r, 1))
        if r == 7:
            rulings += list(enumerate_rulings(r, 2))
        rows = [
            [R.name, str(R.k), str(len(R.pairs)), " ".join(f"{a}*{b}" for a, b in R.pairs)]
            for R in rulings
        ]
        return ["ruling", "k", "pairs", "products"], rows
    raise InputError(f"unknown listing {what!r}")


def cmd_enumerate(args) -> int:
    header, rows = _enumerate_rows(args.r, args.what)
    print("\t".join(header))
    for row in rows:
        print("\t".join(row))
    if args.out:
        _write_json({"r": args.r, "what": args.what, "columns": header, "rows": rows}, args.out)
    return EXIT_PASS


# -- verify ---------------------------------------------------------------------


def _build_config(rc: RunConfig, rng: random.Random) -> PointConfig:
    extra = rescaling_symbols(rc.r)
    if rc.mode == "symbolic":
        config = PointConfig.symbolic(rc.r, extra)
    elif rc.params is not None:
        config = PointConfig.specialized(rc.r, dict(rc.params), extra)
    else:
        return random_config(rc.r, rng, extra)
    require_general_position(config)
    return config


def _solve(config: PointConfig) -> RescalingAssignment:
    t0 = time.perf_counter()
    conds = membership_conditions(config)
    t1 = time.perf_counter()
    assignment = solve_system(config.r, conds)
    assignment.timings["conditions"] = t1 - t0
    return assignment


def _certify_parallel(assignment, config, samples, scope, free_values, threads: int):
    if threads <= 1 or len(samples) <= 1:
        return certify_embedding(assignment, config, samples, scope, free_values)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda q: certify_embedding(assignment, config, [q], scope, free_values), samples))
    cert = parts[0]
    for part in parts[1:]:
        cert.samples += part.samples
        cert.failures += part.failures
        for tag, st in part.equation_status.items():
            if st != "zero":
                cert.equation_status[tag] = st
        cert.counts["samples"] += part.counts["samples"]
        cert.counts["evaluations"] += part.counts["evaluations"]
        cert.timings["certify"] += part.timings["certify"]
    cert.counts["zero_equations"] = sum(1 for s in cert.equation_status.values() if s == "zero")
    return cert


def run_verify(rc: RunConfig) -> tuple[int, dict]:
    """Full pipeline; returns the exit code and the certificate document."""
    rng = random.Random(rc.seed)
    t0 = time.perf_counter()
    config = _build_config(rc, rng)
    assignment = _solve(config)
    if rc.mode == "symbolic":
        cert = certify_symbolic(assignment, config, rc.scope)
    else:
        free_values = random_free_values(assignment, config, rng)
        samples = random_samples(config, rng, rc.samples)
        cert = _certify_parallel(assignment, config, samples, rc.scope, free_values, _threads())
    cert.seed = rc.seed
    cert.counts.update(
        free_parameters=len(assignment.free),
        bound_factors=len(assignment.stages),
        leftover_conditions=len(assignment.leftovers),
    )
    doc = cert.to_json(include_timings=False)
    doc["inputs"] = rc.echo()
    doc["free_symbols"] = assignment.free_symbols()
    doc["stages"] = {rescaling_symbol(c): s for c, s in assignment.stages.items()}
    doc["leftovers"] = [name for name, _ in assignment.leftovers]
    timings = {k: round(v, 6) for k, v in cert.timings.items()}
    timings["total"] = round(time.perf_counter() - t0, 6)
    doc["run"] = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "timings": timings,
        "backend": BACKEND,
        "version": __version__,
    }
    return (EXIT_PASS if cert.passed else EXIT_FAIL), doc


def cmd_verify(args) -> int:
    rc = RunConfig(
        r=args.r,
        mode=args.mode,
        params=parse_params(args.params),
        seed=args.seed,
        scope=args.scope,
        samples=args.samples,
        out=args.out,
        force_symbolic=args.force_symbolic,
    ).validate()
    code, doc = run_verify(rc)
    _write_json(doc, rc.out)
    counts = doc["counts"]
    print(
        f"{doc['status']}: r={rc.r} mode={rc.mode} scope={rc.scope} "
        f"{counts['zero_equations']}/{counts['equations']} equations zero over {counts['samples']} sample(s); "
        f"{counts['bound_factors']} bound, {counts['free_parameters']} free, {counts['leftover_conditions']} leftover conditions",
        file=sys.stderr if rc.out == "-" else sys.stdout,
    )
    for failure in doc["failures"][:5]:
        print(f"  nonzero: {failure['equation']} at {failure['sample']}", file=sys.stderr)
    return code


# -- export ---------------------------------------------------------------------


def _export_config(args) -> PointConfig:
    rc = RunConfig(
        r=args.r,
        mode=args.mode,
        params=parse_params(args.params),
        seed=args.seed,
        scope="all",
        samples=1,
        out=args.out,
        force_symbolic=args.force_symbolic,
    ).validate()
    return _build_config(rc, random.Random(rc.seed))


def export_data(args) -> object:
    target = args.target
    if target in ("h6-equations", "h7-equations"):
        return export_equations(6 if target == "h6-equations" else 7)
    config = _export_config(args)
    if target == "g-conditions":
        out = []
        for cp in membership_conditions(config):
            for k, (g, anchor) in enumerate(zip(cp.conditions(), cp.anchors), start=1):
                out.append(
                    {
                        "name": f"g_{cp.name},{k}",
                        "ruling": cp.ruling.name,
                        "index": k,
                        "anchor": [str(c) for c in cp.ruling.pairs[anchor]],
                        "expression": str(g),
                    }
                )
        return {"config": config.to_json(), "conditions": out}
    if target == "solutions":
        assignment = _solve(config)
        return {
            "config": config.to_json(),
            "normalization": {rescaling_symbol(c): "1" for c in assignment.free if c.kind == "E"},
            "free": assignment.free_symbols(),
            "solutions": [
                {"symbol": rescaling_symbol(c), "curve": str(c), "stage": assignment.stages[c], "value": str(assignment.base[c])}
                for c in assignment.bound
            ],
            "leftovers": [{"condition": name, "value": str(v)} for name, v in assignment.leftovers],
        }
    raise InputError(f"unknown export target {target!r}")


def cmd_export(args) -> int:
    data = export_data(args)
    if args.out is None:
        args.out = "-"
    _write_json(data, args.out)
    return EXIT_PASS


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxembed", description="Exact verification of Cox ring embeddings of del Pezzo surfaces of degree 3 and 2.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list (-1)-curves, roots or rulings")
    p.add_argument("--r", type=int, required=True, choices=range(1, 9), metavar="R")
    p.add_argument("--what", choices=("curves", "roots", "rulings"), default="curves")
    p.add_argument("--out", help="also write the listing as JSON")
    p.set_defaults(func=cmd_enumerate)

    def common(q):
        q.add_argument("--r", type=int, required=True)
        q.add_argument("--mode", choices=("symbolic", "specialized"), default="specialized")
        q.add_argument("--params", help="parameter bindings, e.g. a=2,b=-3,c=1/2,d=5")
        q.add_argument("--seed", type=int, help="seed for the random configuration and samples")
        q.add_argument("--force-symbolic", action="store_true", help="allow symbolic mode for r=7")
        q.add_argument("--out", help="output JSON path ('-' for stdout)")

    p = sub.add_parser("verify", help="solve for good rescalings and certify the embedding")
    common(p)
    p.add_argument("--samples", type=int, default=10, help="torsor sample points (specialized mode)")
    p.add_argument("--scope", choices=("M", "all"), default="all", help="membership-set equations only, or every cone equation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write equations, conditions or solutions as JSON")
    p.add_argument("target", choices=("h6-equations", "h7-equations", "g-conditions", "solutions"))
    common(p)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "enumerate" and args.what == "rulings" and args.r not in (6, 7):
        print("error: rulings are listed for r = 6 and 7", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except (InputError, GeneralPositionError, ExpressionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DegeneracyExhausted, DegenerateSpecialization) as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except SolverError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
