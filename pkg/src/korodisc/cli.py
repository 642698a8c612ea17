"""Command-line entry point.

Machine-readable JSON goes to stdout, human-readable notes to stderr.
Exit codes: 0 success, 1 verification failure, 2 bad arguments, 3 I/O error,
4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bounds import BoundSpec, Case, theorem_bound, universal_constant
from .box import Box
from .charsum import char_sum, char_sum_oracle
from .discrepancy import EXACT_CAP, GRID_CAP, star_disc_exact, star_disc_grid
from .errors import CapacityError
from .experiments import CampaignConfig, run_campaign
from .fourier import cont_coeff, disc_coeff
from .modmath import PrimeContext
from .pointset import PointSet, draw_construction, make_rng
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_ARGS, EXIT_IO, EXIT_CAPACITY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.replace(" ", "").split(",") if v]


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.replace(" ", "").split(",") if v]


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _ctx(args) -> PrimeContext:
    return PrimeContext(args.n_prime, args.dim, args.num_lattices)


def _add_ctx(p, dim_default=2, require_n=True):
    p.add_argument("--n-prime", type=int, required=require_n)
    p.add_argument("--dim", type=int, default=dim_default)
    p.add_argument("--num-lattices", type=int, default=None, help="M (default N-1)")


def _add_construction(p):
    p.add_argument("--generators", choices=["random", "fixed"], default="fixed")
    p.add_argument("--shift", choices=["continuous", "discrete"], default="discrete")
    p.add_argument("--seed", type=int, default=0)


def _construct(args):
    ctx = _ctx(args)
    cons = draw_construction(ctx, args.generators, args.shift, make_rng(args.seed))
    return ctx, cons


def cmd_generate(args) -> int:
    ctx, cons = _construct(args)
    pts = cons.build()
    meta = {
        "n_prime": ctx.n_prime, "dim": ctx.dim, "num_lattices": ctx.num_lattices,
        "n_tot": ctx.n_tot, "generators": list(cons.generators),
        "generator_mode": args.generators, "shift_mode": args.shift, "seed": args.seed,
        "out": args.out,
    }
    if args.out is None:
        sys.stdout.write(pts.to_csv())
        _note(json.dumps(meta))
        return EXIT_OK
    try:
        Path(args.out).write_text(pts.to_csv())
    except OSError as exc:
        _note(f"cannot write {args.out}: {exc}")
        return EXIT_IO
    _emit(meta)
    _note(f"wrote {len(pts)} points to {args.out}")
    return EXIT_OK


def cmd_coeff(args) -> int:
    k = _ints(args.k)
    out = {"k": k}
    if args.b_num is not None:
        if args.n_prime is None:
            raise UsageError("--b-num needs --n-prime")
        box = Box.grid(_ints(args.b_num), args.n_prime)
        if any(not 0 <= v < args.n_prime for v in k):
            raise UsageError("discrete frequencies must lie in [0, N)")
        c = disc_coeff(k, box)
        out["discrete"] = [c.real, c.imag]
    else:
        if args.b is None:
            raise UsageError("give --b or --b-num")
        box = Box(tuple(_floats(args.b)))
    c = cont_coeff(k, box)
    out["b"] = list(box.corner)
    out["continuous"] = [c.real, c.imag]
    _emit(out)
    return EXIT_OK


def cmd_charsum(args) -> int:
    ctx = _ctx(args)
    k = _ints(args.k)
    res = char_sum(args.z, k, ctx)
    orc = char_sum_oracle(args.z, k, ctx)
    _emit({"z": args.z, "k": k, "value": res.value, "residue": res.dot_product_residue,
           "oracle": [orc.real, orc.imag]})
    return EXIT_OK


def cmd_disc(args) -> int:
    if args.input is not None:
        try:
            with open(args.input) as fh:
                pts = PointSet.from_csv(fh)
        except OSError as exc:
            _note(f"cannot read {args.input}: {exc}")
            return EXIT_IO
        n_prime = args.n_prime or pts.n_prime
        if n_prime is None:
            raise UsageError("real-valued input needs --n-prime for the grid sweep")
    else:
        if args.n_prime is None:
            raise UsageError("give --in or construction flags")
        ctx, cons = _construct(args)
        pts, n_prime = cons.build(), ctx.n_prime
    report = star_disc_grid(pts, n_prime, cap=args.cap)
    out = report.to_dict()
    if args.exact:
        out["exact"] = star_disc_exact(pts, cap=args.exact_cap)
    out["num_points"] = len(pts)
    _emit(out)
    return EXIT_OK


def cmd_bound(args) -> int:
    spec = BoundSpec(Case.parse(args.case), args.failure_prob, _ctx(args))
    out = {"case": spec.case.value, **theorem_bound(spec).to_dict()}
    out["constants"] = {"continuous": universal_constant(Case.RANDOM_CONTINUOUS),
                        "discrete": universal_constant(Case.RANDOM_DISCRETE)}
    _emit(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = _ctx(args)
    rows = run_suite(args.suite, ctx, num_samples=args.samples, seed=args.seed)
    for r in rows:
        _note(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<48} value={r.value:.6g} limit={r.limit:.6g} {r.detail}")
    ok = all(r.passed for r in rows)
    _emit({"suite": args.suite, "n_prime": ctx.n_prime, "dim": ctx.dim, "passed": ok,
           "checks": [r.__dict__ for r in rows]})
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_campaign(args) -> int:
    if args.config is not None:
        try:
            data = json.loads(Path(args.config).read_text())
        except OSError as exc:
            _note(f"cannot read {args.config}: {exc}")
            return EXIT_IO
        if args.out is not None:
            data["output_path"] = args.out
        config = CampaignConfig.from_dict(data)
    else:
        if args.n_prime is None:
            raise UsageError("give --config or --n-prime")
        spec = BoundSpec(Case.parse(args.case), args.failure_prob, _ctx(args))
        config = CampaignConfig(spec, args.num_trials, args.seed, args.record_boxes, args.out)
    try:
        summary, _ = run_campaign(config, workers=args.threads)
    except OSError as exc:
        _note(f"cannot write campaign output: {exc}")
        return EXIT_IO
    _emit(summary.to_dict())
    _note(f"{summary.num_violations}/{summary.num_trials} trials exceeded the bound {summary.bound_value:.6g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="korodisc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a shifted Korobov union as CSV")
    _add_ctx(p)
    _add_construction(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("coeff", help="evaluate box-indicator Fourier coefficients")
    p.add_argument("--k", required=True, help="comma-separated frequency")
    p.add_argument("--b", default=None, help="comma-separated box corner in [0,1]")
    p.add_argument("--b-num", default=None, help="comma-separated grid numerators")
    p.add_argument("--n-prime", type=int, default=None)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("charsum", help="character sum S_N(z, k) and its oracle")
    _add_ctx(p)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--k", required=True)
    p.set_defaults(func=cmd_charsum)

    p = sub.add_parser("disc", help="grid star discrepancy report")
    p.add_argument("--in", dest="input", default=None, help="point-set CSV")
    _add_ctx(p, require_n=False)
    _add_construction(p)
    p.add_argument("--exact", action="store_true", help="also compute exact D*")
    p.add_argument("--cap", type=int, default=GRID_CAP)
    p.add_argument("--exact-cap", type=int, default=EXACT_CAP)
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("bound", help="closed-form discrepancy bound")
    p.add_argument("--case", default="fixed-discrete",
                   help="random-continuous|fixed-continuous|random-discrete|fixed-discrete or 1-4")
    _add_ctx(p)
    p.add_argument("--failure-prob", type=float, default=0.5)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run a lemma verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    _add_ctx(p)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("campaign", help="seeded Monte Carlo campaign against the bound")
    p.add_argument("--config", default=None, help="campaign JSON config")
    p.add_argument("--case", default="fixed-discrete")
    _add_ctx(p, require_n=False)
    p.add_argument("--failure-prob", type=float, default=0.5)
    p.add_argument("--num-trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--record-boxes", action="store_true")
    p.add_argument("--out", default=None, help="output directory for trials.csv and summary.json")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_campaign)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        _note(f"capacity error: {exc}")
        return EXIT_CAPACITY
    except (UsageError, ValueError, KeyError) as exc:
        _note(f"error: {exc}")
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
