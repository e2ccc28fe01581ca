"""Command-line driver: construct, check, reconstruct, quotient.

Exit codes: 0 pass, 1 a checked condition failed, 2 bad input or
parameters, 3 size guard.
"""

import argparse
import os
import sys
import time

from .field import field_of_order
from .fischer import KINDS, FischerError, build_fischer_space
from .forms import FormError, standard_form
from .geomio import (GeometryParseError, dumps_geometry, dumps_report, format_class_map,
                     make_report, write_text, read_pls)
from .incidence import validate_pls
from .lemmas import run_property_suite
from .polar import (PolarError, PolarSpace, build_polar, check_hyperbolic_regeneration,
                    check_one_or_all, check_perp_separation, gq_order, hyperbolic_geometry,
                    polar_radical, rank_search)
from .report import DEFAULT_WITNESS_CAP, FAIL, NA, CheckReport, HypothesisReport
from .theorems import (check_fischer_hypotheses, check_main_hypotheses, check_planar_hypotheses,
                       check_weak_hypotheses, quotient, reconstruct_polar)

MAX_POINTS = 5000
SUITES = ("main", "setting31", "planethm", "fischer", "polar-axioms", "lemmas")
FAMILIES = ("symplectic", "hermitian", "orthogonal-parabolic", "orthogonal-hyperbolic",
            "orthogonal-elliptic")

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, msg, code=EXIT_INPUT):
        super().__init__(msg)
        self.code = code


def isotropic_point_count(family, d, q):
    """Closed-form point counts, so the size guard fires before building."""
    if family == "symplectic":
        return (q ** d - 1) // (q - 1)
    if family == "hermitian":
        r = round(q ** 0.5)
        return (r ** d - (-1) ** d) * (r ** (d - 1) - (-1) ** (d - 1)) // (q - 1)
    m = d // 2
    if family == "orthogonal-parabolic":
        return (q ** (2 * m) - 1) // (q - 1)
    if family == "orthogonal-hyperbolic":
        return (q ** m - 1) * (q ** (m - 1) + 1) // (q - 1)
    if family == "orthogonal-elliptic":
        return (q ** m + 1) * (q ** (m - 1) - 1) // (q - 1)
    raise CliError(f"unknown family {family!r}")


def _guard(n, what):
    if n > MAX_POINTS:
        raise CliError(f"{what} has {n} points, above the limit of {MAX_POINTS}", EXIT_GUARD)


def _emit(text, out):
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def _fischer_points(kind, d, family):
    total = lambda q: (q ** d - 1) // (q - 1)
    if kind == "symplectic_f2":
        return total(2)
    if kind == "unitary_f4":
        return isotropic_point_count("hermitian", d, 4)
    q = 2 if kind == "orthogonal_f2" else 3
    family = family or ("orthogonal-parabolic" if d % 2 else "orthogonal-elliptic")
    return total(q) - isotropic_point_count(family, d, q)


def cmd_construct(args):
    if args.d is None or args.d < 1:
        raise CliError("-d must be a positive dimension")
    if args.fischer:
        if args.family and not args.family.startswith("orthogonal"):
            raise CliError("--family with --fischer selects the quadric type (orthogonal-*)")
        _guard(_fischer_points(args.fischer, args.d, args.family), "Fischer space")
        try:
            got = build_fischer_space(args.fischer, args.d, args.family, args.component)
        except (FischerError, FormError) as e:
            raise CliError(str(e)) from None
        if isinstance(got, list):
            outs = []
            for i, P in enumerate(got):
                path = None
                if args.out:
                    stem, ext = os.path.splitext(args.out)
                    path = f"{stem}.comp{i}{ext or '.pls'}"
                outs.append((P, path))
        else:
            outs = [(got, args.out)]
        for i, (P, path) in enumerate(outs):
            bad = validate_pls(P)
            if not bad.passed:
                raise CliError(f"constructed space is not a partial linear space: {bad}", EXIT_FAIL)
            _emit(dumps_geometry(P), path)
            tag = f" component {i}" if len(outs) > 1 else ""
            print(f"fischer {args.fischer} d={args.d}{tag}: {P.n} points, {len(P.lines)} lines"
                  + (f" -> {path}" if path else ""), file=sys.stderr)
        return EXIT_PASS
    if not args.family or args.q is None:
        raise CliError("construct needs --family and -q (or --fischer KIND)")
    try:
        K = field_of_order(args.q)
        F = standard_form(args.family, args.d, K)
    except (FormError, ValueError) as e:
        raise CliError(str(e)) from None
    _guard(isotropic_point_count(args.family, args.d, args.q), "polar space")
    S = build_polar(F)
    if args.hyperbolic:
        try:
            obj = hyperbolic_geometry(S)
        except PolarError as e:
            raise CliError(str(e)) from None
        what = "hyperbolic geometry"
    else:
        obj, what = S, "polar space"
    _emit(dumps_geometry(obj), args.out)
    print(f"{what} {args.family} d={args.d} q={args.q}: {obj.n} points, {len(obj.lines)} lines"
          + (f" -> {args.out}" if args.out else ""), file=sys.stderr)
    return EXIT_PASS


def load_geometry(path):
    try:
        P = read_pls(path)
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}") from None
    except GeometryParseError as e:
        raise CliError(f"{path}: {e}") from None
    _guard(P.n, path)
    if not P.lines:
        raise CliError(f"{path}: geometry has no lines")
    v = validate_pls(P)
    if not v.passed:
        raise CliError(f"{path}: not a partial linear space: {v.witnesses[0]}")
    return P


def polar_from_lines(P):
    """Read a geometry file as a polar space: perp is equal-or-collinear."""
    perp = tuple(P.adj[x] | (1 << x) for x in range(P.n))
    return PolarSpace(P.n, P.lines, perp)


def polar_axioms(P, cap):
    S = polar_from_lines(P)
    rep = HypothesisReport("polar-axioms")
    rep.add(check_one_or_all(S, cap))
    nd = CheckReport("nondegenerate", cap=cap)
    for x in polar_radical(S):
        nd.fail(x)
    rep.add(nd)
    rank = rank_search(S.n, S.perp, S.lines)
    rk = CheckReport("rank_at_least_2", cap=cap, stats={"rank": rank})
    if rank < 2:
        rk.fail(rank)
    rep.add(rk)
    if nd.passed:
        rep.add(check_perp_separation(S, cap))
        rep.add(check_hyperbolic_regeneration(S, cap))
        if rank == 2:
            try:
                rk.stats["gq_order"] = list(gq_order(S))
            except PolarError:
                pass
    else:
        for name in ("perp_separation", "hyperbolic_line_regeneration"):
            rep.add(CheckReport(name, NA, stats={"reason": "polar space is degenerate"}))
    return rep


def fischer_suite(P, q, cap):
    sizes = P.line_sizes
    if q is None:
        q = sizes[0] - 1 if len(sizes) == 1 else None
    if q is None or sizes != [q + 1]:
        rep = HypothesisReport("fischer")
        r = rep.add(CheckReport("fischer.line_size", cap=cap, stats={"sizes": sizes}))
        r.fail(("line_sizes", sizes))
        return rep
    return check_fischer_hypotheses(P, q, cap)


def run_suite(P, suite, cap, order=None, strict_sections=False, seed=0):
    if suite == "main":
        return check_main_hypotheses(P, cap, strict_sections=strict_sections)
    if suite == "setting31":
        return check_weak_hypotheses(P, cap)
    if suite == "planethm":
        return check_planar_hypotheses(P, cap)
    if suite == "fischer":
        return fischer_suite(P, order, cap)
    if suite == "polar-axioms":
        return polar_axioms(P, cap)
    if suite == "lemmas":
        return run_property_suite(P, cap, seed=seed)
    raise CliError(f"unknown suite {suite!r}")


def instance_of(path, P):
    return {"input": os.path.basename(path), "points": P.n, "lines": len(P.lines)}


def _summary(rep):
    print(f"[{rep.title}] {'pass' if rep.passed else 'fail'}", file=sys.stderr)
    for c in rep.conditions:
        print(f"  {c}", file=sys.stderr)


def cmd_check(args):
    t0 = time.perf_counter()
    P = load_geometry(args.input)
    rep = run_suite(P, args.suite, args.witness_cap, args.order, args.strict_sections, args.seed)
    doc = make_report("check", instance_of(args.input, P), args.suite,
                      "pass" if rep.passed else "fail", [c.to_dict() for c in rep.conditions],
                      wall_time=time.perf_counter() - t0)
    _emit(dumps_report(doc), args.out)
    _summary(rep)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_reconstruct(args):
    t0 = time.perf_counter()
    P = load_geometry(args.input)
    cap = args.witness_cap
    hyp = check_main_hypotheses(P, cap, strict_sections=args.strict_sections)
    R = reconstruct_polar(P, override=True, hypotheses=hyp, cap=cap)
    usable = hyp.passed or args.override_hypotheses
    ok = R.passed and usable
    extra = {
        "guaranteed": hyp.passed,
        "note": None if hyp.passed else "conclusions not guaranteed: main hypotheses fail",
        "hypotheses": hyp.to_dict(),
        "rank": R.rank,
        "gq_order": list(R.gq) if R.gq else None,
        "singular_lines": len(R.singular_lines),
        "written": bool(usable and args.out),
    }
    doc = make_report("reconstruct", instance_of(args.input, P), "reconstruct",
                      "pass" if ok else "fail", [c.to_dict() for c in R.conclusion_checks],
                      extra=extra, wall_time=time.perf_counter() - t0)
    if usable:
        _emit(dumps_geometry(R.polar), args.out)
    if args.report:
        write_text(args.report, dumps_report(doc))
    print(f"reconstruct: rank {R.rank}, {len(R.singular_lines)} singular lines"
          + (f", GQ order {R.gq}" if R.gq else "")
          + ("" if hyp.passed else f"; hypotheses fail: {', '.join(hyp.failed_ids)}"),
          file=sys.stderr)
    for c in R.conclusion_checks:
        if c.verdict == FAIL:
            print(f"  {c}", file=sys.stderr)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_quotient(args):
    P = load_geometry(args.input)
    res = quotient(P)
    _emit(dumps_geometry(res.quotient), args.out)
    cmap_path = args.class_map or (args.out + ".class_map" if args.out else None)
    if cmap_path:
        write_text(cmap_path, format_class_map(res.class_map))
    print(f"quotient: {P.n} points -> {len(res.classes)} classes, {len(res.quotient.lines)} lines"
          + (" (trivial)" if res.trivial else ""), file=sys.stderr)
    return EXIT_PASS


def build_parser():
    p = argparse.ArgumentParser(prog="polarlines",
                                description="Polar spaces, hyperbolic-line geometries and their checkers.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write a polar space, its hyperbolic geometry or a Fischer space")
    c.add_argument("--family", choices=FAMILIES)
    c.add_argument("-d", type=int, help="vector space dimension")
    c.add_argument("-q", type=int, help="field order")
    kind = c.add_mutually_exclusive_group()
    kind.add_argument("--polar", action="store_true", help="the polar space (default)")
    kind.add_argument("--hyperbolic", action="store_true", help="the hyperbolic-line geometry")
    kind.add_argument("--fischer", choices=KINDS, metavar="KIND",
                      help=f"a Fischer space, one of {', '.join(KINDS)}")
    c.add_argument("--component", type=int, help="component index for orthogonal_f3")
    c.add_argument("--out", help="output path (default stdout)")
    c.set_defaults(func=cmd_construct)

    def common(sp):
        sp.add_argument("input")
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--witness-cap", type=int, default=DEFAULT_WITNESS_CAP)
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled scans")

    k = sub.add_parser("check", help="run a hypothesis suite and write a JSON report")
    common(k)
    k.add_argument("--suite", choices=SUITES, required=True)
    k.add_argument("--order", type=int, help="q for the fischer suite (default: line size - 1)")
    k.add_argument("--strict-sections", action="store_true",
                   help="fail main.d when x^perp contains a whole plane")
    k.set_defaults(func=cmd_check)

    r = sub.add_parser("reconstruct", help="rebuild the polar space from singular lines")
    common(r)
    r.add_argument("--report", help="JSON report path")
    r.add_argument("--override-hypotheses", action="store_true",
                   help="write the reconstruction even when the main hypotheses fail")
    r.add_argument("--strict-sections", action="store_true")
    r.set_defaults(func=cmd_reconstruct)

    q = sub.add_parser("quotient", help="collapse points with equal perp")
    common(q)
    q.add_argument("--class-map", help="class map path (default <out>.class_map)")
    q.set_defaults(func=cmd_quotient)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_PASS
    if getattr(args, "witness_cap", 1) < 1:
        # a failed check must be able to show at least one witness
        print("error: --witness-cap must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
