"""Command-line pipelines over the library, one JSON document per call.

Every subcommand reads JSON from file arguments (or "-" for stdin) and
writes a single JSON document to stdout. Output is byte-deterministic for
fixed inputs and flags; randomized steps take --seed. Exit codes: 0 for
success or a true verdict, 1 for a false verdict, 2 for input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import scalars
from .convolution import bifree_convolve, free_convolve_marginal, semigroup_scale
from .cumulants import (CumulantTable, MomentTable, chi_cumulant_values,
                        cumulants_to_moments, moments_to_cumulants)
from .errors import BifreeError
from .fock import FockModel, moment_table_from_model, vacuum_moment
from .levy_hincin import (LevyHincinData, check_cond_bounded, check_cpsd,
                          extract_levy_measures, gns_reconstruct,
                          lh_to_cumulants, validate_lh)
from .limits import (bifree_gaussian, bifree_poisson, compound_bifree_poisson,
                     poisson_family, row_sum_moments, triangular_limit_estimate)
from .measures import DiscretePlanarMeasure, moment_table
from .partitions import ChiMap, enumerate_bnc, enumerate_nc
from .series import r_transform_series, verify_voiculescu_identity


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as handle:
        return json.load(handle)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _residual_float(value) -> float:
    return float(value)


def cmd_partitions(args) -> int:
    if not args.chi and args.n is None:
        raise ValueError("provide --n or --chi")
    if args.chi:
        chi = ChiMap.from_string(args.chi)
        pairs = enumerate_bnc(chi)
        _emit({
            "chi": args.chi.upper(),
            "count": len(pairs),
            "partitions": [{"blocks": img.to_jsonable(), "source": src.to_jsonable()}
                           for img, src in pairs],
        })
    else:
        parts = enumerate_nc(args.n)
        _emit({"n": args.n, "count": len(parts),
               "partitions": [p.to_jsonable() for p in parts]})
    return 0


def cmd_cumulants(args) -> int:
    table = MomentTable.from_jsonable(_load(args.table))
    _emit(moments_to_cumulants(table).to_jsonable())
    return 0


def cmd_moments(args) -> int:
    table = CumulantTable.from_jsonable(_load(args.table))
    _emit(cumulants_to_moments(table).to_jsonable())
    return 0


def cmd_convolve(args) -> int:
    k1 = CumulantTable.from_jsonable(_load(args.left))
    k2 = CumulantTable.from_jsonable(_load(args.right))
    _emit(bifree_convolve(k1, k2).to_jsonable())
    return 0


def cmd_semigroup(args) -> int:
    table = CumulantTable.from_jsonable(_load(args.table))
    t = scalars.coerce(args.t, table.kind)
    _emit(semigroup_scale(table, t, assume_divisible=args.assume_divisible).to_jsonable())
    return 0


def cmd_make(args) -> int:
    kind = args.kind
    conv = lambda text: scalars.coerce(text, kind)
    if args.distribution == "gaussian":
        table = bifree_gaussian(conv(args.s1), conv(args.s2), conv(args.c),
                                args.degree, kind)
    elif args.distribution == "poisson":
        table = bifree_poisson(conv(args.rate), conv(args.alpha), conv(args.beta),
                               args.degree, kind)
    else:
        jump = DiscretePlanarMeasure.from_jsonable(_load(args.nu), kind)
        table = compound_bifree_poisson(conv(args.rate), jump, args.degree)
    _emit(table.to_jsonable())
    return 0


def cmd_lh_cumulants(args) -> int:
    data = LevyHincinData.from_jsonable(_load(args.data))
    _emit(lh_to_cumulants(data, args.degree).to_jsonable())
    return 0


def cmd_lh_validate(args) -> int:
    data = LevyHincinData.from_jsonable(_load(args.data))
    report = validate_lh(data, args.tolerance)
    _emit(report.to_jsonable())
    return 0 if report.ok else 1


def cmd_check_id(args) -> int:
    table = CumulantTable.from_jsonable(_load(args.table))
    d = args.gram_degree if args.gram_degree else (table.degree - 2) // 2
    cpsd = check_cpsd(table, d)
    bounded = check_cond_bounded(table, d)
    _emit({"cpsd": cpsd.to_jsonable(), "bounded": bounded.to_jsonable(),
           "degree_window": d, "ok": cpsd.ok and bounded.ok})
    return 0 if cpsd.ok and bounded.ok else 1


def cmd_gns(args) -> int:
    table = CumulantTable.from_jsonable(_load(args.table))
    d = args.gram_degree if args.gram_degree else (table.degree - 2) // 2
    _emit(gns_reconstruct(table, d).to_jsonable())
    return 0


def cmd_extract(args) -> int:
    model = FockModel.from_jsonable(_load(args.model))
    _emit(extract_levy_measures(model, seed=args.seed).to_jsonable())
    return 0


def cmd_fock_moments(args) -> int:
    model = FockModel.from_jsonable(_load(args.model))
    if args.m is not None and args.n is not None:
        value = vacuum_moment(model, args.m, args.n)
        _emit({"m": args.m, "n": args.n,
               "value": scalars.to_jsonable(value, model.kind)})
    else:
        _emit(moment_table_from_model(model, args.degree).to_jsonable())
    return 0


def _verify_payload(args):
    if args.suite == "voiculescu":
        if args.model:
            table = moment_table_from_model(FockModel.from_jsonable(_load(args.model)),
                                            args.degree)
        else:
            mu = DiscretePlanarMeasure.from_jsonable(_load(args.measure), args.kind)
            table = moment_table(mu, args.degree)
        residual = verify_voiculescu_identity(table)
        return {"suite": "voiculescu", "max_residual": _residual_float(residual)}
    if args.suite == "chi":
        mu = DiscretePlanarMeasure.from_jsonable(_load(args.measure), args.kind)
        table = moment_table(mu, args.degree)
        worst = 0.0
        for total in range(1, args.degree + 1):
            for m in range(total + 1):
                values = chi_cumulant_values(table, m, total - m)
                spread = max(_residual_float(abs(v - values[0])) for v in values)
                worst = max(worst, spread)
        return {"suite": "chi", "max_residual": worst}
    if args.suite == "roundtrip":
        mu = DiscretePlanarMeasure.from_jsonable(_load(args.measure), args.kind)
        table = moment_table(mu, args.degree)
        back = cumulants_to_moments(moments_to_cumulants(table))
        worst = max(_residual_float(abs(back.get(m, n) - table.get(m, n)))
                    for (m, n) in table.entries)
        return {"suite": "roundtrip", "max_residual": worst}
    if args.suite == "limits":
        kind = args.kind
        family = poisson_family(scalars.coerce(args.rate, kind),
                                scalars.coerce(args.alpha, kind),
                                scalars.coerce(args.beta, kind), kind)
        target = bifree_poisson(scalars.coerce(args.rate, kind),
                                scalars.coerce(args.alpha, kind),
                                scalars.coerce(args.beta, kind), args.degree, kind)
        worst = 0.0
        for total in range(1, args.degree + 1):
            for m in range(total + 1):
                estimates = triangular_limit_estimate(family, m, total - m, [10, 100])
                for est in estimates:
                    worst = max(worst, _residual_float(abs(est - target.get(m, total - m))))
        limit_moments = cumulants_to_moments(target)
        ratios = []
        errors = []
        for n_rows in (10, 100, 1000):
            approx = row_sum_moments(family, n_rows, args.degree)
            errors.append(max(_residual_float(abs(approx.get(m, n) - limit_moments.get(m, n)))
                              for (m, n) in limit_moments.entries))
        for early, late in zip(errors, errors[1:]):
            ratios.append(early / late if late else float("inf"))
        return {"suite": "limits", "max_residual": worst,
                "convergence_ratios": ratios}
    # semigroup
    table = CumulantTable.from_jsonable(_load(args.table))
    s = scalars.coerce(args.s, table.kind)
    t = scalars.coerce(args.t, table.kind)
    combined = bifree_convolve(semigroup_scale(table, s, assume_divisible=True),
                               semigroup_scale(table, t, assume_divisible=True))
    direct = semigroup_scale(table, s + t, assume_divisible=True)
    worst = max(_residual_float(abs(combined.get(m, n) - direct.get(m, n)))
                for (m, n) in direct.entries)
    moments = cumulants_to_moments(table)
    first_marginal = [moments.get(m, 0) for m in range(table.degree + 1)]
    convolved = free_convolve_marginal(first_marginal, first_marginal,
                                       table.degree, table.kind)
    doubled = cumulants_to_moments(semigroup_scale(table, 2, assume_divisible=True))
    worst_marginal = max(_residual_float(abs(convolved[m] - doubled.get(m, 0)))
                         for m in range(table.degree + 1))
    return {"suite": "semigroup", "max_residual": max(worst, worst_marginal)}


def cmd_verify(args) -> int:
    payload = _verify_payload(args)
    _emit(payload)
    return 0 if payload["max_residual"] <= args.tolerance else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifree",
        description="bi-free probability pipelines with deterministic JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kind_default=scalars.RATIONAL):
        p.add_argument("--kind", choices=list(scalars.KINDS), default=kind_default)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--tolerance", type=float, default=1e-9)

    p = sub.add_parser("partitions", help="enumerate non-crossing or bi-non-crossing partitions")
    p.add_argument("--n", type=int)
    p.add_argument("--chi", help="left/right word such as LRRL; overrides --n")
    common(p)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("cumulants", help="moment table -> cumulant table")
    p.add_argument("table")
    common(p)
    p.set_defaults(func=cmd_cumulants)

    p = sub.add_parser("moments", help="cumulant table -> moment table")
    p.add_argument("table")
    common(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("convolve", help="additive bi-free convolution of two cumulant tables")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("semigroup", help="scale a cumulant table by t")
    p.add_argument("table")
    p.add_argument("--t", required=True)
    p.add_argument("--assume-divisible", action="store_true")
    common(p)
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("make", help="construct a named cumulant table")
    p.add_argument("distribution", choices=["gaussian", "poisson", "compound"])
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--s1", default="1")
    p.add_argument("--s2", default="1")
    p.add_argument("--c", default="0")
    p.add_argument("--lambda", dest="rate", default="1")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--nu", help="jump distribution JSON (compound)")
    common(p)
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("lh-cumulants", help="Levy-Hincin triple -> cumulant table")
    p.add_argument("data")
    p.add_argument("--degree", type=int, default=8)
    common(p)
    p.set_defaults(func=cmd_lh_cumulants)

    p = sub.add_parser("lh-validate", help="check the Levy-Hincin measure relations")
    p.add_argument("data")
    common(p)
    p.set_defaults(func=cmd_lh_validate)

    p = sub.add_parser("check-id", help="conditional positivity and boundedness gates")
    p.add_argument("table")
    p.add_argument("--gram-degree", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_check_id)

    p = sub.add_parser("gns", help="reconstruct an operator model from cumulants")
    p.add_argument("table")
    p.add_argument("--gram-degree", type=int, default=0)
    common(p, kind_default=scalars.FLOAT)
    p.set_defaults(func=cmd_gns)

    p = sub.add_parser("extract", help="Levy measures of an operator model")
    p.add_argument("model")
    common(p, kind_default=scalars.FLOAT)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("fock-moments", help="vacuum moments of an operator model")
    p.add_argument("model")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    common(p)
    p.set_defaults(func=cmd_fock_moments)

    p = sub.add_parser("verify", help="run a named invariant suite")
    p.add_argument("suite", choices=["voiculescu", "chi", "roundtrip", "limits", "semigroup"])
    p.add_argument("--model")
    p.add_argument("--measure")
    p.add_argument("--table")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--lambda", dest="rate", default="1")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--s", default="1")
    p.add_argument("--t", default="2")
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (BifreeError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
