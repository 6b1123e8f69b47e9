"""Command-line entry point.

Subcommands: ``axioms``, ``complete``, ``reflect``, ``locale
build|points|roundtrip``, ``real eval --eps``, ``demo heine-borel --eps``.
Reports are printed as JSON; exit code 0 when every check passes, 1 when
any fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import cauchy, coverspace, locales, realexpr, spacefile, xreal
from .finkernel import Subset


def _report(check: str, ok: bool, witness=None, started: float | None = None) -> dict:
    out = {"check": check, "verdict": "pass" if ok else "fail"}
    if not ok:
        out["witness"] = witness if witness is not None else {}
    if started is not None:
        out["ms"] = round((time.perf_counter() - started) * 1000, 3)
    return out


def _emit(doc: dict) -> int:
    print(json.dumps(doc, indent=2))
    reports = doc.get("reports", [])
    return 0 if all(r["verdict"] == "pass" for r in reports) else 1


def _load_space(path: str):
    with open(path, encoding="utf-8") as fh:
        return spacefile.parse_spacefile(fh.read())


def cmd_axioms(args) -> int:
    sf = _load_space(args.file)
    reports = []
    t0 = time.perf_counter()
    ok, witness = spacefile.covers_valid(sf)
    reports.append(_report("covers_valid", ok, witness, t0))
    if not ok:
        return _emit({"reports": reports})
    s = spacefile.to_space(sf)

    t0 = time.perf_counter()
    cr = coverspace.satisfies_cr(s)
    reports.append(_report("regularity_cr", cr, _cr_witness(s), t0))

    t0 = time.perf_counter()
    sr = coverspace.is_strongly_regular(s)
    reports.append(_report("strong_regularity", sr, _cr_witness(s), t0))

    t0 = time.perf_counter()
    sep = cauchy.is_separated(s)
    reports.append(_report("separated", sep, _separation_witness(s), t0))

    t0 = time.perf_counter()
    comp = cauchy.is_complete(s, max_carrier=args.max_carrier)
    reports.append(
        _report("complete", comp, _completeness_witness(s, args.max_carrier), t0)
    )

    t0 = time.perf_counter()
    reports.append(_report("proper", coverspace.is_proper(s), {}, t0))
    return _emit({"carrier": s.size, "reports": reports})


def _cr_witness(s):
    for w in s.generator.sorted_members():
        if not any(coverspace.rather_below(s, w, u) for u in s.generator.members):
            return {"generator_member": list(w.members())}
    return None


def _separation_witness(s):
    for x in s.carrier.elements():
        for y in s.carrier.elements():
            if x < y and cauchy.point_equiv(s, x, y):
                return {"points": [x, y]}
    return None


def _completeness_witness(s, max_carrier=None):
    if not cauchy.is_separated(s):
        return {"reason": "not separated", **(_separation_witness(s) or {})}
    from .finkernel import all_subsets

    for a in all_subsets(s.carrier, max_carrier=max_carrier):
        f = cauchy.PrincipalFilter(s.carrier, a)
        if cauchy.is_cauchy_filter(s, f) and not any(
            cauchy.filters_equivalent(s, f, cauchy.point_filter(s, x))
            for x in s.carrier.elements()
        ):
            return {"filter_base": list(a.members())}
    return None


def cmd_complete(args) -> int:
    sf = _load_space(args.file)
    s = spacefile.to_space(sf)
    reports = []
    reflected = False
    if not coverspace.satisfies_cr(s):
        s = coverspace.regular_reflection(s, max_carrier=args.max_carrier)
        reflected = True
    t0 = time.perf_counter()
    comp = cauchy.completion(s, max_carrier=args.max_carrier)
    reports.append(_report("completion_built", True, None, t0))

    t0 = time.perf_counter()
    again = cauchy.completion(comp.structure, max_carrier=args.max_carrier)
    idem = cauchy.spaces_isomorphic(again.structure, comp.structure)
    reports.append(_report("completion_idempotent", idem, {}, t0))

    out_doc = {
        "reflected": reflected,
        "space": json.loads(spacefile.emit_spacefile(spacefile.of_space(comp.structure))),
        "points": [list(b.members()) for b in comp.points],
        "unit": list(comp.unit),
        "reports": reports,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(spacefile.emit_spacefile(spacefile.of_space(comp.structure)))
    return _emit(out_doc)


def cmd_reflect(args) -> int:
    sf = _load_space(args.file)
    s = spacefile.to_space(sf)
    t0 = time.perf_counter()
    r = coverspace.regular_reflection(s, max_carrier=args.max_carrier)
    reports = [_report("reflection_regular", coverspace.satisfies_cr(r), {}, t0)]
    doc = {
        "space": json.loads(spacefile.emit_spacefile(spacefile.of_space(r))),
        "reports": reports,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(spacefile.emit_spacefile(spacefile.of_space(r)))
    return _emit(doc)


def cmd_locale(args) -> int:
    sf = _load_space(args.file)
    s = spacefile.to_space(sf)
    if args.action == "build":
        t0 = time.perf_counter()
        m = locales.locale_of_space(s, max_carrier=args.max_carrier)
        reports = [
            _report("locale_built", True, None, t0),
            _report("locale_regular", m.is_regular()),
            _report("locale_proper", locales.locale_is_proper(m)),
        ]
        return _emit({"elements": len(m), "reports": reports})
    if args.action == "points":
        m = locales.locale_of_space(s, max_carrier=args.max_carrier)
        pts = locales.locale_points(m)
        doc = {
            "count": len(pts),
            "points": [
                [list(u.members()) for u in _maximal(p.prime)] for p in pts
            ],
            "reports": [_report("points_enumerated", True)],
        }
        return _emit(doc)
    report = locales.verify_equivalence(s)
    reports = [
        _report(name, ok, {"detail": detail} if detail else {})
        for name, ok, detail in report.checks
    ]
    doc = {
        "isomorphism": report.passed,
        "eta": list(report.eta) if report.eta else None,
        "point_count": report.point_count,
        "reports": reports,
    }
    return _emit(doc)


def _maximal(element: locales.FrameElement):
    masks = element.ideal
    return [
        Subset(element.carrier, m)
        for m in sorted(masks)
        if not any(other != m and m & ~other == 0 for other in masks)
    ]


def _parse_eps(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise realexpr.ExprError(f"bad precision {text!r}") from e
    if eps <= 0:
        raise realexpr.ExprError("precision must be positive")
    return eps


def cmd_real(args) -> int:
    eps = _parse_eps(args.eps)
    iv = realexpr.eval_expression(args.expression, eps)
    print(realexpr.format_interval(iv, eps, args.eps))
    if args.bounds:
        print(f"[{iv.lo}, {iv.hi}]")
    return 0


def cmd_demo_heine_borel(args) -> int:
    eps = _parse_eps(args.eps)
    domain = xreal.RInterval(Fraction(0), Fraction(1))
    net = xreal.epsilon_net(domain, eps)
    balls = [xreal.RInterval(q - eps, q + eps) for q in net]
    t0 = time.perf_counter()
    chosen = xreal.finite_subcover(domain, balls)
    bound = (eps.denominator + eps.numerator - 1) // eps.numerator + 1  # ceil(1/eps)+1
    reports = [
        _report("subcover_covers", True, None, t0),
        _report("subcover_size_bound", len(chosen) <= bound, {"size": len(chosen)}),
    ]
    gapped = [
        xreal.RInterval(Fraction(-1), Fraction(1, 2)),
        xreal.RInterval(Fraction(3, 5), Fraction(2)),
    ]
    try:
        xreal.finite_subcover(domain, gapped)
        reports.append(_report("gap_certificate", False, {"reason": "no gap found"}))
        witness = None
    except xreal.UncoveredPointError as e:
        witness = str(e.point)
        reports.append(_report("gap_certificate", True))
    doc = {
        "eps": args.eps,
        "selected": [[str(iv.lo), str(iv.hi)] for iv in chosen],
        "size_bound": bound,
        "gap_witness": witness,
        "reports": reports,
    }
    return _emit(doc)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="coverlab",
        description="Finite cover-space checks and exact real evaluation.",
    )
    p.add_argument(
        "--max-carrier",
        type=int,
        default=None,
        help="override enumeration size guards (may be very slow)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ax = sub.add_parser("axioms", help="run axiom checks on a space file")
    ax.add_argument("file")
    ax.set_defaults(fn=cmd_axioms)

    co = sub.add_parser("complete", help="compute the completion of a space file")
    co.add_argument("file")
    co.add_argument("--out", help="write the completed space file here")
    co.set_defaults(fn=cmd_complete)

    re_ = sub.add_parser("reflect", help="compute the regular reflection")
    re_.add_argument("file")
    re_.add_argument("--out")
    re_.set_defaults(fn=cmd_reflect)

    lo = sub.add_parser("locale", help="frame construction and round trips")
    lo.add_argument("action", choices=["build", "points", "roundtrip"])
    lo.add_argument("file")
    lo.set_defaults(fn=cmd_locale)

    rl = sub.add_parser("real", help="evaluate an exact real expression")
    rl.add_argument("action", choices=["eval"])
    rl.add_argument("expression")
    rl.add_argument("--eps", required=True, help="target width, e.g. 1/1000000")
    rl.add_argument("--bounds", action="store_true", help="also print exact endpoints")
    rl.set_defaults(fn=cmd_real)

    de = sub.add_parser("demo", help="built-in demonstrations")
    de.add_argument("action", choices=["heine-borel"])
    de.add_argument("--eps", required=True)
    de.set_defaults(fn=cmd_demo_heine_borel)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse reports usage errors itself
        return int(e.code or 0)
    if args.max_carrier is not None:
        print(
            f"warning: overriding size guards with --max-carrier {args.max_carrier}",
            file=sys.stderr,
        )
    try:
        return args.fn(args)
    except (spacefile.SpaceFileError, realexpr.ExprError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as e:
        # computation-level failures (size guards, apartness, preconditions)
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
