"""``dqi-lab <gen|solve|sweep|verify>``.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 no decoder for the requested radius, 4 a size guard was exceeded.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import classical, problems, verify
from .dqi import dual_distance, primal_distance, run_dqi, semicircle, tridiagonal_matrix
from .dqi.weights import principal_vector
from .errors import DecoderUnavailable, DqiLabError, TooLarge
from .gf import PrimeField

EXIT_OK, EXIT_VERIFY, EXIT_INVALID, EXIT_DECODER, EXIT_SIZE = 0, 1, 2, 3, 4
SWEEP_HEADER = "x,dqi,prange,semicircle,seed"
DEFAULT_GRID = "0.05,0.1,0.15,0.2,0.25,0.3"
GEN_FLAGS = ("p", "m", "n", "r", "kind")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    instance: str | None
    p: int | None
    m: int | None
    n: int | None
    r: int | None
    kind: str | None
    seed: int
    method: str
    trials: int
    samples: int
    ell: int | None
    out: str | None
    fmt: str


def _config(args) -> RunConfig:
    given = [f for f in GEN_FLAGS if getattr(args, f, None) is not None]
    instance = getattr(args, "instance", None)
    if instance is not None and given:
        raise UsageError(f"--instance cannot be combined with --{', --'.join(given)}")
    return RunConfig(
        command=args.command,
        instance=instance,
        p=getattr(args, "p", None),
        m=getattr(args, "m", None),
        n=getattr(args, "n", None),
        r=getattr(args, "r", None),
        kind=getattr(args, "kind", None),
        seed=args.seed,
        method=getattr(args, "method", "exhaustive"),
        trials=getattr(args, "trials", 2000),
        samples=getattr(args, "samples", 0),
        ell=getattr(args, "ell", None),
        out=getattr(args, "out", None),
        fmt=getattr(args, "format", "json"),
    )


def generate(cfg: RunConfig) -> problems.MaxLinsatInstance:
    """Build an instance from generation flags."""
    kind = cfg.kind or "generic"
    if cfg.p is None:
        raise UsageError("--p is required to generate an instance")
    F = PrimeField(cfg.p)
    if kind == "xorsat":
        if cfg.p != 2 or cfg.r not in (None, 1):
            raise UsageError("xorsat instances need --p 2 and r = 1")
        if cfg.m is None or cfg.n is None:
            raise UsageError("xorsat needs --m and --n")
        return problems.random_instance(F, cfg.m, cfg.n, 1, cfg.seed, kind="xorsat")
    r = cfg.r if cfg.r is not None else max(1, cfg.p // 2)
    if kind == "opi":
        if cfg.n is None:
            raise UsageError("opi needs --n")
        points = range(1, (cfg.m if cfg.m is not None else cfg.p - 1) + 1)
        return problems.random_opi(F, cfg.n, r, cfg.seed, points=points)
    if kind == "mopi":
        # --n counts variables and --m is the total degree here
        if cfg.n is None or cfg.m is None:
            raise UsageError("mopi needs --n (variables) and --m (degree)")
        return _random_mopi(F, cfg.n, cfg.m, r, cfg.seed)
    if kind == "generic":
        if cfg.m is None or cfg.n is None:
            raise UsageError("generic instances need --m and --n")
        return problems.random_instance(F, cfg.m, cfg.n, r, cfg.seed, kind="generic")
    raise UsageError(f"unknown kind {kind!r}")


def _random_mopi(F, nvars, degree, r, seed):
    rng = np.random.default_rng(seed)
    pts = problems.mopi_points(nvars, F.p)
    table = dict(zip(pts, problems.random_targets(F, len(pts), r, rng)))
    return problems.build_mopi(F, nvars, degree, table, seed)


def load(cfg: RunConfig) -> problems.MaxLinsatInstance:
    if cfg.instance is not None:
        try:
            with open(cfg.instance, encoding="utf-8") as fh:
                return problems.MaxLinsatInstance.from_json(fh.read())
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot load {cfg.instance}: {exc}") from exc
    return generate(cfg)


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return None
    return v


def digest(inst: problems.MaxLinsatInstance) -> dict:
    try:
        dperp = _jsonable(dual_distance(inst))
    except (TooLarge, DecoderUnavailable):
        dperp = None
    try:
        d = primal_distance(inst)
    except TooLarge:
        d = None
    try:
        r = inst.r
    except DqiLabError:
        r = inst.mean_r
    return {"p": inst.p, "m": inst.m, "n": inst.n, "r": r, "kind": inst.kind, "d": d, "d_perp": dperp}


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_gen(cfg: RunConfig) -> int:
    inst = generate(cfg)
    _write(inst.to_json(), cfg.out)
    stream = sys.stdout if cfg.out else sys.stderr
    stream.write(json.dumps(digest(inst)) + "\n")
    return EXIT_OK


def cmd_solve(cfg: RunConfig) -> int:
    inst = load(cfg)
    if cfg.method == "exhaustive":
        report = classical.exhaustive_optimum(inst).to_dict()
    elif cfg.method == "prange":
        report = classical.prange_solve(inst, cfg.trials, cfg.seed).to_dict()
    elif cfg.method == "random":
        report = classical.random_baseline(inst, max(cfg.samples, 1), cfg.seed).to_dict()
    elif cfg.method == "dqi":
        report = {"method": "dqi", **run_dqi(inst, cfg.ell, samples=cfg.samples, seed=cfg.seed).to_dict()}
    else:
        raise UsageError(f"unknown method {cfg.method!r}")
    _write(json.dumps(report, indent=2, sort_keys=True) + "\n", cfg.out)
    return EXIT_OK


def parse_grid(spec: str) -> list[float]:
    """Comma list ``a,b,c`` or range ``start:stop:step`` (stop inclusive)."""
    spec = spec.strip()
    if not spec:
        return []
    if ":" in spec:
        start, stop, step = (float(v) for v in spec.split(":"))
        if step <= 0:
            raise UsageError("grid step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(max(count, 0))]
    return [float(v) for v in spec.split(",") if v.strip()]


def sweep_rows(p: int, r: int, grid, axis: str, trials: int, seed: int) -> list[tuple]:
    """Rows ``(x, dqi, prange, semicircle, seed)`` over OPI instances at prime p.

    ``axis = n`` puts x = n/p; DQI runs at the largest usable ell and the
    closed form is read at ell/m = x/2, the decodable fraction for OPI.
    ``axis = ell`` puts x = ell/m with n = min(2 ell + 2, m), the smallest degree
    whose dual distance admits the closed-form matrix at that ell.
    """
    F = PrimeField(p)
    m = p - 1
    rows = []
    for i, x in enumerate(grid):
        if not 0 <= x <= 1:
            raise UsageError(f"grid point {x} outside [0, 1]")
        s = seed + i
        if axis == "n":
            n = max(1, round(x * p))
            if n > m:
                raise TooLarge(f"n = {n} exceeds m = {m}")
            inst = problems.random_opi(F, n, r, s)
            dqi = run_dqi(inst).expected_rate
            closed = semicircle(x / 2, r / p)
        else:
            ell = round(x * m)
            n = min(2 * ell + 2, m)
            inst = problems.random_opi(F, n, r, s)
            _, value = principal_vector(tridiagonal_matrix(m, p, r, ell))
            dqi = value / m
            closed = semicircle(x, r / p)
        prange = classical.prange_solve(inst, trials, s).mean_satisfied / m
        rows.append((x, dqi, prange, closed, s))
    return rows


def format_sweep(rows, fmt: str = "csv") -> str:
    if fmt == "json":
        keys = SWEEP_HEADER.split(",")
        return json.dumps([dict(zip(keys, row)) for row in rows], indent=2) + "\n"
    buf = io.StringIO()
    buf.write(SWEEP_HEADER + "\n")
    for x, dqi, prange, closed, s in rows:
        buf.write(f"{x:.15f},{dqi:.15f},{prange:.15f},{closed:.15f},{s}\n")
    return buf.getvalue()


def cmd_sweep(cfg: RunConfig, grid: str, axis: str) -> int:
    p = cfg.p if cfg.p is not None else 101
    r = cfg.r if cfg.r is not None else p // 2
    if not 1 <= r <= p - 1:
        raise UsageError(f"need 1 <= r <= p-1, got r={r}")
    rows = sweep_rows(p, r, parse_grid(grid), axis, cfg.trials, cfg.seed)
    _write(format_sweep(rows, cfg.fmt), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suites, cases: int) -> int:
    names = None
    results = []
    if suites:
        names = [s for s in suites if s != "instance"]
        unknown = [s for s in names if s not in verify.SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s) {unknown}; choose from {', '.join(verify.SUITES)}, instance")
    if cfg.instance is not None:
        results.append(verify.suite_instance(load(cfg), cfg.ell))
        if not suites:
            names = []
    elif suites and "instance" in suites:
        raise UsageError("--suite instance needs --instance")
    results = verify.run_suites(names, cfg.seed, cases) + results
    text = "".join(json.dumps(r.to_dict()) + "\n" for r in results)
    _write(text, cfg.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dqi-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, instance=True):
        sp.add_argument("--p", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--r", type=int)
        sp.add_argument("--kind", choices=problems.KINDS)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out")
        if instance:
            sp.add_argument("--instance")

    common(sub.add_parser("gen", help="generate an instance file"), instance=False)

    sp = sub.add_parser("solve", help="run a solver on an instance")
    common(sp)
    sp.add_argument("--method", default="exhaustive", choices=("exhaustive", "prange", "random", "dqi"))
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--ell", type=int)

    sp = sub.add_parser("sweep", help="semicircle sweep as CSV")
    common(sp, instance=False)
    sp.add_argument("--grid", default=DEFAULT_GRID)
    sp.add_argument("--axis", choices=("n", "ell"), default="n")
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("verify", help="run the self-check suites")
    common(sp)
    sp.add_argument("--suite", action="append", help="suite name; repeatable")
    sp.add_argument("--ell", type=int)
    sp.add_argument("--cases", type=int, default=1000, help="randomized cases per property suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        if args.command == "gen":
            return cmd_gen(cfg)
        if args.command == "solve":
            return cmd_solve(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.grid, args.axis)
        return cmd_verify(cfg, args.suite, args.cases)
    except DecoderUnavailable as exc:
        print(f"dqi-lab: {exc}", file=sys.stderr)
        return EXIT_DECODER
    except TooLarge as exc:
        print(f"dqi-lab: size guard: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, DqiLabError, ValueError) as exc:
        print(f"dqi-lab: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
