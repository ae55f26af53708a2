"""Command-line entry point wiring the toolkit together.

Subcommands: `bookkeeping {report|e1|stable-range}`, `genpos certify`,
`resolve {build|ss|betti-table}`, `disc check`, `approx fit`.  Every report
is JSON, embeds the configuration, the seed and the toolkit version, and
validates against the shipped schema.  Exit codes: 0 success, 1 a
certification-style check failed, 2 invalid input.

The default seed is the documented constant 1729, overridable with --seed
or the PQMAPS_SEED environment variable.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from importlib import resources

import jsonschema

from . import __version__
from . import bookkeeping as bk
from . import genpos
from . import resolution as res
from .approximator import SampledMap, approximate_with_boundary, fit_ladder, fit_pq_map
from .discriminant import has_common_zero
from .polynomials import poly_from_dict, tuple_from_dict
from .spectral import spectral_sequence

DEFAULT_SEED = 1729
SEED_ENV = "PQMAPS_SEED"


class InputError(ValueError):
    pass


def _schema():
    return json.loads(resources.files("pqmaps").joinpath("report_schema.json").read_text())


def emit_report(subcommand: str, seed: int, config: dict, result, out: str | None) -> None:
    report = {
        "toolkit": "pqmaps",
        "version": __version__,
        "subcommand": subcommand,
        "seed": seed,
        "config": config,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "result": result,
    }
    jsonschema.validate(report, _schema())
    text = json.dumps(report, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _complex_vector(raw):
    out = []
    for entry in raw:
        if isinstance(entry, (list, tuple)):
            if len(entry) != 2:
                raise InputError(f"complex entries are [re, im] pairs, got {entry}")
            out.append(complex(entry[0], entry[1]))
        else:
            out.append(complex(entry))
    return out


# ---------------------------------------------------------------------------
# handlers


def _cmd_bookkeeping(args) -> int:
    if args.action == "report":
        params = bk.ProblemParams(args.m, args.n, args.p, args.q)
        rep = bk.dimension_report(params)
        codim, simply = bk.discriminant_codim(args.m, args.n)
        result = {
            **rep.as_dict(),
            "degree": params.d,
            "stable_range": bk.stable_range(args.m, args.n, params.d),
            "discriminant_codim": codim,
            "simply_connected": simply,
            "segal_case": bk.segal_case_flag(args.m, args.q),
            "validity_rmax": bk.validity_rmax(args.m, args.p, args.q),
        }
        emit_report("bookkeeping report", args.seed, _config(args), result, args.out)
        return 0
    if args.action == "stable-range":
        result = {"stable_range": bk.stable_range(args.m, args.n, args.d)}
        emit_report("bookkeeping stable-range", args.seed, _config(args), result, args.out)
        return 0
    if args.action == "e1":
        params = bk.ProblemParams(args.m, args.n, args.p, args.q)
        page = bk.build_e1_page(params, args.rmax, args.smax)
        if args.betti:
            table = bk.BettiTable.from_csv(open(args.betti).read())
        else:
            table = bk.load_shipped_table()
        ev = bk.evaluate_page(page, table)
        result = {
            "stable_rmax": page.stable_rmax,
            "entries": [
                {"r": -rs[0], "s": rs[1], "kind": g.kind, "degree": g.degree}
                for rs, g in sorted(page.entries.items())
            ],
            "numeric": [{"r": -rs[0], "s": rs[1], "rank": rank}
                        for rs, rank in sorted(ev.numeric.items())],
            "degree_histogram": {str(k): v for k, v in sorted(ev.histogram.items())},
            "uncovered": [{"r": -rs[0], "s": rs[1]} for rs in ev.uncovered],
            "skipped_unstable": ev.skipped_unstable,
        }
        emit_report("bookkeeping e1", args.seed, _config(args), result, args.out)
        return 0
    raise InputError(f"unknown bookkeeping action {args.action!r}")


def _cmd_genpos(args) -> int:
    n = args.n if args.n is not None else args.m
    report = genpos.certify_lemma_batch(args.lemma, args.m, n, args.p, args.q,
                                        args.r, args.trials, args.seed)
    emit_report("genpos certify", args.seed, _config(args), report, args.out)
    return 0 if report["failures"] == 0 else 1


def _cmd_resolve(args) -> int:
    if args.action == "build":
        data = _load_json(args.map)
        try:
            smap = res.SimplicialSurjection.from_dict(data, non_finite_ok=(args.depth == 1))
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad map file: {exc}") from exc
        resolution = res.build_resolution(smap, mode=args.mode, depth=args.depth,
                                          seed=args.seed)
        fc = resolution.filtered_complex()
        equivalent = res.check_resolution_equivalence(resolution, "f2")
        result = {
            "map": smap.to_dict(),
            "mode": resolution.mode,
            "depth": resolution.depth,
            "cells": len(fc.labels.get(0, [])) and sum(fc.dim(n) for n in fc.degrees)
            or sum(fc.dim(n) for n in fc.degrees),
            "dims": {str(n): fc.dim(n) for n in fc.degrees},
            "max_level": fc.max_level,
            "betti_f2": resolution.betti("f2"),
            "target_betti_f2": smap.target.chain_complex().betti("f2"),
            "homology_equivalent_f2": equivalent,
        }
        emit_report("resolve build", args.seed, _config(args), result, args.out)
        return 0 if equivalent else 1
    if args.action == "ss":
        data = _load_json(args.infile)
        if "result" in data:  # accept a `resolve build` report as input
            data = data["result"]
        if "map" not in data:
            raise InputError("input must contain a serialized map")
        smap = res.SimplicialSurjection.from_dict(data["map"])
        resolution = res.build_resolution(smap, mode=data.get("mode", "nondegenerate"),
                                          depth=data.get("depth"), seed=args.seed)
        pages = spectral_sequence(resolution.filtered_complex(), args.field)
        result = {
            "field": pages.field_name,
            "pages": {str(r): [{"level": p, "degree": n, "rank": rank}
                               for (p, n), rank in sorted(page.items())]
                      for r, page in pages.pages.items()},
            "e_infinity": [{"level": p, "degree": n, "rank": rank}
                           for (p, n), rank in sorted(pages.e_infinity.items())],
            "total_betti": pages.total_betti,
            "converged": pages.converged,
        }
        emit_report("resolve ss", args.seed, _config(args), result, args.out)
        return 0 if pages.converged else 1
    if args.action == "betti-table":
        table = res.make_betti_table(args.rmax, args.field)
        text = table.to_csv()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            print(text, end="")
        return 0
    raise InputError(f"unknown resolve action {args.action!r}")


def _cmd_disc(args) -> int:
    data = _load_json(args.tuple)
    try:
        t = tuple_from_dict(data)
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad tuple file: {exc}") from exc
    cert = has_common_zero(t, mode=args.mode, tol=args.tol)
    emit_report("disc check", args.seed, _config(args), cert.as_dict(), args.out)
    return 0


def _cmd_approx(args) -> int:
    data = _load_json(args.samples)
    try:
        xs = [_complex_vector(row["x"]) for row in data]
        ys = [_complex_vector(row["y"]) for row in data]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad samples file: {exc}") from exc
    samples = SampledMap(xs, ys)
    if args.ladder is not None:
        reports = fit_ladder(samples, args.p - args.q, args.ladder)
        result = [rep.as_dict() for rep in reports]
    elif args.boundary:
        bdata = _load_json(args.boundary)
        boundary = [poly_from_dict(b) for b in bdata]
        rep = approximate_with_boundary(samples, boundary, args.p, args.q, args.eps)
        result = rep.as_dict()
    else:
        rep = fit_pq_map(samples, args.p, args.q)
        result = rep.as_dict()
    emit_report("approx fit", args.seed, _config(args), result, args.out)
    return 0


def _config(args) -> dict:
    skip = {"func", "seed", "out"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqmaps",
        description="Toolkit for spaces of rational and (p,q)-maps between "
                    "complex projective spaces.")
    env_seed = os.environ.get(SEED_ENV)
    default_seed = int(env_seed) if env_seed else DEFAULT_SEED

    def common(sp):
        sp.add_argument("--seed", type=int, default=default_seed)
        sp.add_argument("--out", type=str, default=None)
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="parallelism bound; results do not depend on it")

    sub = parser.add_subparsers(dest="command", required=True)

    p_bk = sub.add_parser("bookkeeping", help="dimension and page formulas")
    bk_sub = p_bk.add_subparsers(dest="action", required=True)
    sp = bk_sub.add_parser("report")
    for flag in ("--m", "--n", "--p", "--q"):
        sp.add_argument(flag, type=int, required=True)
    common(sp)
    sp.set_defaults(func=_cmd_bookkeeping)
    sp = bk_sub.add_parser("stable-range")
    for flag in ("--m", "--n", "--d"):
        sp.add_argument(flag, type=int, required=True)
    common(sp)
    sp.set_defaults(func=_cmd_bookkeeping)
    sp = bk_sub.add_parser("e1")
    for flag in ("--m", "--n", "--p", "--q", "--rmax", "--smax"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--betti", type=str, default=None, help="Betti table CSV")
    common(sp)
    sp.set_defaults(func=_cmd_bookkeeping)

    p_gp = sub.add_parser("genpos", help="general-position certification")
    gp_sub = p_gp.add_subparsers(dest="action", required=True)
    sp = gp_sub.add_parser("certify")
    sp.add_argument("--lemma", choices=["vdm", "hyperplanes", "fiber", "simplices"],
                    required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--trials", type=int, default=1000)
    common(sp)
    sp.set_defaults(func=_cmd_genpos)

    p_rs = sub.add_parser("resolve", help="simplicial resolutions")
    rs_sub = p_rs.add_subparsers(dest="action", required=True)
    sp = rs_sub.add_parser("build")
    sp.add_argument("--map", type=str, required=True)
    sp.add_argument("--mode", choices=["nondegenerate", "embedded"],
                    default="nondegenerate")
    sp.add_argument("--depth", type=int, default=None)
    common(sp)
    sp.set_defaults(func=_cmd_resolve)
    sp = rs_sub.add_parser("ss")
    sp.add_argument("--in", dest="infile", type=str, required=True)
    sp.add_argument("--field", choices=["q", "f2"], default="q")
    common(sp)
    sp.set_defaults(func=_cmd_resolve)
    sp = rs_sub.add_parser("betti-table")
    sp.add_argument("--rmax", type=int, default=4)
    sp.add_argument("--field", choices=["q", "f2"], default="q")
    common(sp)
    sp.set_defaults(func=_cmd_resolve)

    p_dc = sub.add_parser("disc", help="discriminant membership")
    dc_sub = p_dc.add_subparsers(dest="action", required=True)
    sp = dc_sub.add_parser("check")
    sp.add_argument("--tuple", type=str, required=True)
    sp.add_argument("--mode", choices=["auto", "exact", "numeric"], default="auto")
    sp.add_argument("--tol", type=float, default=1e-8)
    common(sp)
    sp.set_defaults(func=_cmd_disc)

    p_ap = sub.add_parser("approx", help="projective least-squares fitting")
    ap_sub = p_ap.add_subparsers(dest="action", required=True)
    sp = ap_sub.add_parser("fit")
    sp.add_argument("--samples", type=str, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--boundary", type=str, default=None)
    sp.add_argument("--ladder", type=int, default=None)
    sp.add_argument("--eps", type=float, default=0.1)
    common(sp)
    sp.set_defaults(func=_cmd_approx)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"pqmaps: invalid input: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"pqmaps: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
