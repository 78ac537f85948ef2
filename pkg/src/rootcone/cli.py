"""Command line: ``rootcone <command> TYPE [options]``.

Types are written ``A2``, ``E8``, ``H4``, ``I2(7)`` (or ``I2 --m 7``).
Exit status is 0 when every asserted check passes, 1 on a failed check
(with a JSON witness on stdout) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import List, Optional, Tuple

from . import __version__
from .arrangement import (
    LatticeBudgetError,
    chamber_counts,
    exponents_from_lattice,
    intersection_lattice,
    poincare_polynomial,
    reflection_arrangement,
    truncated_poincare,
    verify_factorization,
)
from .coxeter import (
    DiagramError,
    NotCrystallographicError,
    build_diagram,
    degrees,
    group_order,
    parse_diagram,
)
from .identity import ALL_CRYSTALLOGRAPHIC, curious_identity, search_h_extensions
from .roots import GroupTooLargeError, generate_group, root_system_from_diagram
from .volume import (
    TheoremViolation,
    cone_volume_exact,
    count_expected,
    fraction_str,
    monte_carlo_cone_volume,
    skipped_count_report,
    verify_count_theorem,
)

THREADS_ENV = "ROOTCONE_THREADS"
DEFAULT_SEED = 0
# count verification is skipped for these regardless of the group cap
FORMULA_ONLY = ("E",)


class UsageError(Exception):
    pass


def parse_type(text: str, m: Optional[int] = None) -> Tuple[str, int, Optional[int]]:
    t = text.strip().upper()
    mt = re.fullmatch(r"I2\((\d+)\)", t)
    if mt:
        return "I2", 2, int(mt.group(1))
    if t == "I2":
        if m is None:
            raise UsageError("I2 needs a dihedral label: I2(7) or I2 --m 7")
        return "I2", 2, m
    mt = re.fullmatch(r"([A-H])(\d+)", t)
    if not mt:
        raise UsageError(f"cannot parse type {text!r}")
    fam, rank = mt.group(1), int(mt.group(2))
    try:
        build_diagram(fam, rank)
    except DiagramError as e:
        raise UsageError(str(e)) from None
    return fam, rank, None


def _type_name(fam, rank, m):
    return f"I2({m})" if fam == "I2" else f"{fam}{rank}"


def _selector(args):
    if getattr(args, "diagram", None):
        d = parse_diagram(args.diagram)
        return None, d, args.diagram
    if not args.type:
        raise UsageError("give a type such as A2 or --diagram")
    fam, rank, m = parse_type(args.type, getattr(args, "m", None))
    return (fam, rank, m), build_diagram(fam, rank, m), _type_name(fam, rank, m)


def _emit(args, payload: dict, lines: List[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


def cmd_degrees(args) -> int:
    _, d, name = _selector(args)
    degs = degrees(d)
    payload = {
        "type": name,
        "degrees": list(degs),
        "order": group_order(degs),
        "positive_roots": sum(x - 1 for x in degs),
    }
    _emit(args, payload, [
        f"type            {name}",
        f"degrees         {' '.join(map(str, degs))}",
        f"|W|             {payload['order']}",
        f"positive roots  {payload['positive_roots']}",
    ])
    return 0


def cmd_volume(args) -> int:
    sel, d, name = _selector(args)
    degs = degrees(d)
    exact = cone_volume_exact(degs)
    payload = {"type": name, "degrees": list(degs), "exact": fraction_str(exact)}
    lines = [f"type      {name}", f"degrees   {' '.join(map(str, degs))}", f"exact     {fraction_str(exact)}"]
    ok = True
    if args.mc:
        rs = root_system_from_diagram(d, name)
        rep = monte_carlo_cone_volume(rs, args.mc, args.seed, threads=args.threads)
        payload = rep.to_json()
        ok = rep.deviation <= args.sigmas
        payload["status"] = "PASS" if ok else "FAIL"
        lines += [
            f"estimate  {rep.estimate:.6f} +/- {rep.stderr:.6f}  ({rep.samples} samples, seed {rep.seed}, {rep.discards} discarded)",
            f"deviation {rep.deviation:.2f} standard errors  {payload['status']}",
        ]
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_count(args) -> int:
    sel, d, name = _selector(args)
    degs = degrees(d)
    trials, seed = args.trials, args.seed
    if sel is not None and sel[0] in FORMULA_ONLY:
        rep = skipped_count_report(name, degs, trials, seed, f"|W| = {group_order(degs)}: formula only")
    else:
        rs = root_system_from_diagram(d, name)
        try:
            W = generate_group(rs, cap=args.cap)
        except GroupTooLargeError as e:
            rep = skipped_count_report(name, degs, trials, seed, str(e))
        else:
            try:
                rep = verify_count_theorem(rs, W, trials, seed, check_bounded=args.bounded, threads=args.threads)
            except TheoremViolation as e:
                print(json.dumps({"status": "FAIL", "type": name, "witness": e.witness}, sort_keys=True))
                return 1
    counts = sorted({s["count"] for s in rep.samples})
    _emit(args, rep.to_json(), [
        f"type      {name}",
        f"expected  prod(d_i - 1) = {rep.expected}",
        f"|W|       {rep.group_order}",
        f"samples   {len(rep.samples)}  counts seen {counts}",
        f"status    {rep.status}" + (f"  ({rep.note})" if rep.note else ""),
    ])
    return 0


def cmd_poincare(args) -> int:
    _, d, name = _selector(args)
    degs = degrees(d)
    rs = root_system_from_diagram(d, name)
    try:
        L = intersection_lattice(reflection_arrangement(rs))
    except LatticeBudgetError as e:
        raise UsageError(f"{name}: {e}") from None
    n = rs.ambient_dim
    p = poincare_polynomial(L)
    trunc = truncated_poincare(L, n)
    diff = p - trunc
    total, bounded = chamber_counts(p, n)
    s_total, s_bounded = chamber_counts(trunc, n - 1)
    exps = exponents_from_lattice(L)
    ok_fact = verify_factorization(p, degs)
    top = p.coefficient(n)
    ok_trunc = diff.coeffs == (0,) * n + (count_expected(degs),)
    ok = ok_fact and ok_trunc and s_bounded == top
    payload = {
        "type": name,
        "degrees": list(degs),
        "lattice_size": len(L),
        "poincare": list(p.coeffs),
        "factorization_ok": ok_fact,
        "exponents": None if exps is None else list(exps),
        "top_coefficient": top,
        "truncated": list(trunc.coeffs),
        "regions": total,
        "bounded_regions": bounded,
        "slice_regions": s_total,
        "slice_bounded_regions": s_bounded,
        "status": "PASS" if ok else "FAIL",
    }
    _emit(args, payload, [
        f"type               {name}",
        f"pi(A, t)           {p}",
        f"factorization      {'OK' if ok_fact else 'MISMATCH'} against degrees {' '.join(map(str, degs))}",
        f"exponents          {exps}",
        f"t^{n} coefficient    {top}",
        f"truncated          {trunc}",
        f"central chambers   {total} (bounded {bounded})",
        f"slice chambers     {s_total} (bounded {s_bounded})",
        f"status             {payload['status']}",
    ])
    return 0 if ok else 1


def cmd_identity(args) -> int:
    if args.all_crystallographic:
        targets = ALL_CRYSTALLOGRAPHIC
    else:
        if not args.type:
            raise UsageError("give a type or --all-crystallographic")
        fam, rank, _ = parse_type(args.type, getattr(args, "m", None))
        targets = [(fam, rank)]
    reports = []
    for fam, rank in targets:
        try:
            reports.append(curious_identity(fam, rank))
        except NotCrystallographicError as e:
            raise UsageError(f"{e}") from None
    ok = all(r.total == 1 for r in reports)
    payload = {"reports": [r.to_json() for r in reports], "status": "PASS" if ok else "FAIL"}
    lines = []
    for r in reports:
        terms = ", ".join(str(t) for t in r.terms)
        lines.append(f"{r.name:4s} terms {terms}; total {r.total}")
    lines.append(f"status {payload['status']}")
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_search(args) -> int:
    modes = [not args.allow_finite_total]
    if args.both:
        modes = [True, False]
    payload = {"base": args.base.upper(), "modes": []}
    lines = []
    ok = True
    for require in modes:
        cands = search_h_extensions(args.base, require_nonfinite_total=require)
        fails = [c for c in cands if c.sum == 1]
        mode_ok = bool(cands) and not fails
        ok = ok and mode_ok
        payload["modes"].append({
            "require_nonfinite_total": require,
            "candidates": [c.to_json() for c in cands],
            "status": "PASS" if mode_ok else "FAIL",
        })
        lines.append(f"{args.base.upper()} extensions (require non-finite total: {require}): {len(cands)} admissible")
        for c in cands:
            mark = "  [one label-3 edge at a path end]" if c.label3_path_extension else ""
            lines.append(f"  labels {c.labels}  sum {c.sum}{mark}")
        lines.append(f"  no sum equals 1: {'PASS' if mode_ok else 'FAIL'}")
    payload["status"] = "PASS" if ok else "FAIL"
    _emit(args, payload, lines)
    return 0 if ok else 1


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootcone", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help=f"worker threads (default ${THREADS_ENV} or 1)")
    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("type", nargs="?", help="A2, B3, H4, I2(7), ...")
    typed.add_argument("--m", type=int, help="dihedral label for I2")
    typed.add_argument("--diagram", help="diagram text 'n; i j m; ...' instead of a type")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degrees", parents=[common, typed], help="degree table, |W|, positive roots")
    p.set_defaults(func=cmd_degrees)

    p = sub.add_parser("volume", parents=[common, typed], help="exact cone volume, optional Monte Carlo")
    p.add_argument("--mc", type=int, default=0, metavar="N", help="Monte Carlo samples")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--sigmas", type=float, default=5.0, help="pass band in standard errors")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("count", parents=[common, typed], help="verify the generic-point cone count")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cap", type=int, default=60_000, help="largest group to enumerate")
    p.add_argument("--bounded", action="store_true", help="also run the bounded-chamber count")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("poincare", parents=[common, typed], help="lattice, Poincare polynomial, truncation")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("identity", parents=[common, typed], help="affine identity sum")
    p.add_argument("--all-crystallographic", action="store_true")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("search-ext", parents=[common], help="one-vertex extensions of H3/H4")
    p.add_argument("base", choices=["H3", "H4", "h3", "h4"])
    p.add_argument("--allow-finite-total", action="store_true",
                   help="keep extensions whose full diagram is itself finite")
    p.add_argument("--both", action="store_true", help="run both admissibility modes")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DiagramError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
