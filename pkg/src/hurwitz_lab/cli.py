"""Command-line front end.

    hurwitz-lab hurwitz --euler 2 --profiles "[3] [3]"
    hurwitz-lab oracle --surface rp2 --degree 3
    hurwitz-lab series --kind bkp --degree 4
    hurwitz-lab mc experiment.json
    hurwitz-lab conventions

Exit codes: 0 pass, 1 a check failed, 2 usage or validation error.
Reports are JSON (or CSV); wall-clock time and the worker count are kept in a
separate ``timing`` field, so repeated runs with the same seed produce identical
payloads whatever the thread count.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from decimal import Decimal, localcontext
from fractions import Fraction
from math import factorial
from pathlib import Path

from .ginibre_mc import (
    GinibreChainConfig,
    estimate_moment_bkp,
    estimate_moment_pair,
    estimate_moment_product,
    exact_reference,
    lemma_check_one,
    lemma_check_two,
    resolve_conventions,
    theorem_branch,
)
from .hurwitz import (
    ORACLE_MAX_DEGREE,
    CoveringSpec,
    hurwitz_frobenius,
    oracle_count_nonorientable,
    oracle_count_orientable,
)
from .partitions import PartitionError, as_partition, format_partition, parse_profiles
from .symfun import DEFAULT_DEGREE_BOUND, tau_2kp_series, tau_bkp_series

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SURFACES = {"sphere": 2, "torus": 0, "rp2": 1, "klein": 0}


class UsageError(Exception):
    pass


def rational_text(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def decimal_text(value, digits: int = 12) -> str:
    if isinstance(value, Fraction):
        with localcontext() as ctx:
            ctx.prec = digits
            return str(Decimal(value.numerator) / Decimal(value.denominator))
    return format(float(value), f".{digits}g")


def exact_entry(value: Fraction, provenance: str) -> dict:
    return {"exact": rational_text(value), "decimal": decimal_text(value), "provenance": provenance}


def _config_hash(payload) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _profiles(args) -> list:
    if not args.profiles:
        return []
    try:
        return parse_profiles(args.profiles)
    except PartitionError as exc:
        raise UsageError(str(exc)) from exc


def _degree(args, profiles) -> int:
    if args.degree is not None:
        return args.degree
    if profiles:
        return sum(profiles[0])
    raise UsageError("either --degree or --profiles is required")


def cmd_hurwitz(args) -> tuple[dict, dict]:
    profiles = _profiles(args)
    degree = _degree(args, profiles)
    try:
        spec = CoveringSpec(args.euler, degree, tuple(profiles))
        value = hurwitz_frobenius(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    results = {
        "euler": args.euler,
        "degree": degree,
        "profiles": [format_partition(p) for p in profiles],
        "cover_euler": spec.cover_euler,
        "hurwitz": exact_entry(value, "formula"),
    }
    return results, {}


def cmd_oracle(args) -> tuple[dict, dict]:
    profiles = _profiles(args)
    degree = _degree(args, profiles)
    if degree > ORACLE_MAX_DEGREE:
        raise UsageError(f"oracle degree must be at most {ORACLE_MAX_DEGREE}")
    euler = SURFACES[args.surface]
    try:
        if args.surface in ("sphere", "torus"):
            count = oracle_count_orientable((2 - euler) // 2, profiles, degree)
        else:
            count = oracle_count_nonorientable(2 - euler, profiles, degree)
        formula = hurwitz_frobenius(CoveringSpec(euler, degree, tuple(profiles)))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    value = Fraction(count, factorial(degree))
    results = {
        "surface": args.surface,
        "euler": euler,
        "degree": degree,
        "profiles": [format_partition(p) for p in profiles],
        "count": count,
        "oracle": exact_entry(value, "oracle"),
        "formula": exact_entry(formula, "formula"),
    }
    return results, {"oracle_equals_formula": value == formula}


def cmd_series(args) -> tuple[dict, dict]:
    if not 0 <= args.degree <= DEFAULT_DEGREE_BOUND:
        raise UsageError(f"degree bound must be in 0..{DEFAULT_DEGREE_BOUND}")
    series = tau_2kp_series(args.degree) if args.kind == "2kp" else tau_bkp_series(args.degree)
    return {"kind": args.kind, "degree_bound": args.degree, "coefficients": series.to_json_dict()}, {}


def _load_mc_config(args) -> dict:
    try:
        raw = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config must be a JSON object")
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.samples is not None:
        raw["samples"] = args.samples
    return raw


def _partition_field(raw, key, required=True):
    if key not in raw or raw[key] is None:
        if required:
            raise UsageError(f"config field {key!r} is required")
        return None
    try:
        return as_partition(raw[key])
    except (PartitionError, TypeError) as exc:
        raise UsageError(f"bad partition in {key!r}: {exc}") from exc


def cmd_mc(args) -> tuple[dict, dict]:
    raw = _load_mc_config(args)
    estimand = raw.get("estimand", "product")
    lam = _partition_field(raw, "lambda")
    mu = _partition_field(raw, "mu", required=estimand in ("pair", "lemma2"))
    seed, samples = int(raw.get("seed", 0)), int(raw.get("samples", 100_000))
    try:
        if estimand in ("lemma1", "lemma2"):
            size = int(raw["N"])
            a, b = raw.get("A", "identity"), raw.get("B", "identity")
            if estimand == "lemma1":
                est, reference = lemma_check_one(a, b, lam, samples, seed, size=size, workers=args.workers)
            else:
                est, reference = lemma_check_two(a, b, lam, mu, samples, seed, size=size, workers=args.workers)
            branch = estimand
        else:
            insertions = raw.get("insertions", "identity")
            if insertions == "identity":
                insertions = None
            config = GinibreChainConfig(
                n=int(raw["n"]), N=int(raw["N"]), t=int(raw.get("t", 0)),
                insertions=tuple(insertions) if insertions is not None else None,
                seed=seed, samples=samples,
            )
            branch = theorem_branch(estimand, config.t, lam, mu)
            reference = exact_reference(estimand, config, lam, mu)
            if estimand == "product":
                est = estimate_moment_product(config, lam, args.workers)
            elif estimand == "pair":
                est = estimate_moment_pair(config, lam, mu, args.workers)
            else:
                est = estimate_moment_bkp(config, lam, args.workers)
    except KeyError as exc:
        raise UsageError(f"config field {exc} is required") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    z = est.z_score(reference)
    ref_text = rational_text(reference) if isinstance(reference, Fraction) else decimal_text(reference.real)
    results = {
        "config": raw,
        "estimand": estimand,
        "branch": branch,
        "mean_re": est.mean.real,
        "mean_im": est.mean.imag,
        "std_error": est.std_error,
        "samples": est.samples,
        "exact_reference": ref_text,
        "z_score": z,
        "provenance": "monte-carlo",
    }
    return results, {"z_within_tolerance": abs(z) <= args.tolerance_z}


def cmd_conventions(args) -> tuple[dict, dict]:
    outcomes = resolve_conventions(samples=args.samples or 200_000, seed=args.seed or 2024,
                                   threshold=args.tolerance_z, workers=args.workers)
    results = {
        branch: {
            "assignment": o.assignment,
            "printed": rational_text(o.printed_value),
            "swapped": rational_text(o.swapped_value),
            "mean_re": o.estimate.mean.real,
            "z_printed": o.z_printed,
            "z_swapped": o.z_swapped,
            "provenance": "monte-carlo",
        }
        for branch, o in outcomes.items()
    }
    return results, {f"{b}_definitive": o.assignment != "ambiguous" for b, o in outcomes.items()}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hurwitz-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", choices=("json", "csv"), default="json")

    p = sub.add_parser("hurwitz", help="Hurwitz number by the character formula")
    p.add_argument("--euler", type=int, required=True)
    p.add_argument("--degree", type=int)
    p.add_argument("--profiles", default="", help='e.g. "[3] [2,1]"')
    common(p)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("oracle", help="count relator solutions in S_d")
    p.add_argument("--surface", choices=sorted(SURFACES), required=True)
    p.add_argument("--degree", type=int)
    p.add_argument("--profiles", default="")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("series", help="dump 2KP or BKP generating series coefficients")
    p.add_argument("--kind", choices=("2kp", "bkp"), required=True)
    p.add_argument("--degree", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_series)

    for name, func, helptext in (("mc", cmd_mc, "Monte Carlo check from a JSON config"),
                                 ("conventions", cmd_conventions, "resolve C'/C'' conventions by Monte Carlo")):
        p = sub.add_parser(name, help=helptext)
        if name == "mc":
            p.add_argument("config")
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--tolerance-z", type=float, default=4.0)
        p.add_argument("--workers", type=int, help="defaults to HURWITZ_LAB_THREADS or the CPU count")
        common(p)
        p.set_defaults(func=func)
    return parser


# Execution resources that must not change the payload.
_RUNTIME_ONLY = ("func", "output", "workers")


def _echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _RUNTIME_ONLY}


def _flatten(prefix: str, obj, rows: list) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, list):
        rows.append((prefix, " ".join(str(v) for v in obj)))
    else:
        rows.append((prefix, obj))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    rows: list = []
    _flatten("", report, rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    writer.writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        results, checks = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    verdicts = {name: "PASS" if ok else "FAIL" for name, ok in checks.items()}
    echo = _echo(args)
    report = {
        "command": echo,
        "config_hash": _config_hash({"command": echo, "config": results.get("config")}),
        "results": results,
        "verdicts": verdicts,
        "timing": {"wall_clock_s": round(time.perf_counter() - started, 6), "workers": getattr(args, "workers", None)},
    }
    print(render(report, args.output))
    return EXIT_FAIL if any(v == "FAIL" for v in verdicts.values()) else EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
