"""Command-line driver: generate, analyze, envelope, check.

Exit codes are part of the contract: 0 success, 2 malformed input,
3 well-formed input that fails a construction's hypotheses, 4 a
mathematical verification that the theory says cannot fail actually
failed (which means an implementation bug, so CI should treat 4 as a
defect, not as bad data).  All reports are JSON with "schema": 1 and
sorted keys, written atomically when --out is given.
"""

import argparse
import json
import os
import sys
import tempfile

from .counting import (
    build_slope_detector,
    dichotomy_check,
    gcd_degree_bound,
    gcd_profile,
    renitent_lower_bound_check,
)
from .envelope import (
    envelope_general,
    envelope_regular,
    envelope_weighted,
    deficiency_bound_check,
    scan_weight_classes,
    verify_envelope,
)
from .errors import (
    DegenerateCurve,
    HypothesisNotMet,
    HypothesisRejected,
    InputError,
    RenitentError,
)
from .generators import gen_norm_conic, gen_planted, gen_random
from .gf import parse_field_spec
from .plane import all_directions, format_line, format_point, slope_of
from .uniformity import classify_direction, dump_points, parse_points, uniform_directions

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_VERIFY = 4


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".renitent-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, payload):
    payload = dict(payload)
    payload["schema"] = 1
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        _atomic_write(args.out, text)
        if args.json:
            sys.stdout.write(text)
    else:
        sys.stdout.write(text)


def _load_multiset(args):
    field = parse_field_spec(args.field)
    if not args.infile:
        raise InputError("--in is required")
    return field, parse_points(field, _read_text(args.infile))


def _parse_point_list(text):
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise InputError(f"expected 'a,b' pairs separated by ';', got {chunk!r}")
        try:
            points.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise InputError(f"bad coordinate in {chunk!r}") from exc
    if not points:
        raise InputError("empty point list")
    return points


def _parse_int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad integer list {text!r}") from exc


# -- gen ------------------------------------------------------------------


def cmd_gen(args):
    field = parse_field_spec(args.field)
    if args.kind == "planted":
        if not args.points:
            raise InputError("planted instances need --points 'a,b;c,d;...'")
        points = _parse_point_list(args.points)
        weights = _parse_int_list(args.weights) if args.weights else [1] * len(points)
        inst = gen_planted(field, points, weights, args.c)
        T, truth = inst.multiset, inst.to_json()
    elif args.kind == "norm_conic":
        inst = gen_norm_conic(field)
        T, truth = inst.multiset, inst.to_json()
    else:
        T = gen_random(field, args.seed, args.density)
        truth = {"kind": "random", "seed": args.seed, "density": args.density,
                 "size": T.size, "support": T.support_size}
    truth["field"] = args.field
    truth["schema"] = 1
    point_text = dump_points(T)
    truth_text = json.dumps(truth, indent=2, sort_keys=True) + "\n"
    if args.out:
        _atomic_write(args.out, point_text)
        _atomic_write(args.out + ".json", truth_text)
        if args.json:
            sys.stdout.write(truth_text)
    else:
        sys.stdout.write(point_text)
        if args.json:
            sys.stdout.write(truth_text)
    return EXIT_OK


# -- analyze ----------------------------------------------------------------


def cmd_analyze(args):
    field, T = _load_multiset(args)
    rows = []
    uniform = 0
    renitent_total = 0
    for d in all_directions(field):
        report = classify_direction(T, d, args.lam)
        if report is None:
            rows.append({"direction": format_point(d), "uniform": False})
        else:
            rows.append(report.to_json())
            uniform += 1
            renitent_total += report.lambda_d
    _emit(args, {
        "command": "analyze",
        "field": args.field,
        "lambda": args.lam,
        "size": T.size,
        "support": T.support_size,
        "uniform_count": uniform,
        "renitent_total": renitent_total,
        "directions": rows,
    })
    return EXIT_OK


# -- envelope ---------------------------------------------------------------


def _candidate_reports(field, T, lam):
    out = []
    for d in all_directions(field):
        report = classify_direction(T, d, lam)
        if report is not None and report.lambda_d > 0:
            out.append(report)
    if not out:
        raise HypothesisNotMet("no uniform direction carries a renitent line")
    return out


def _pick_regular(field, candidates):
    """Largest group of slope directions sharing (lambda_d, count offset).

    The construction needs those two numbers constant across the chosen
    directions; directions outside the winning group are excluded and
    reported rather than silently breaking the hypotheses.
    """
    excluded = []
    groups = {}
    for r in candidates:
        if slope_of(r.direction) is None:
            excluded.append((r, "vertical direction"))
            continue
        ts = {entry.t for entry in r.renitent}
        if len(ts) != 1:
            excluded.append((r, "renitent counts differ within the class"))
            continue
        offset = (ts.pop() - r.m_d) % field.p
        groups.setdefault((r.lambda_d, offset), []).append(r)
    if not groups:
        raise HypothesisNotMet("no slope direction has one repeated renitent count")
    key = sorted(groups, key=lambda k: (-len(groups[k]), k))[0]
    for other, members in sorted(groups.items()):
        if other != key:
            for r in members:
                excluded.append((r, "count profile differs from the selected class"))
    return groups[key], excluded, key[1]


def cmd_envelope(args):
    field, T = _load_multiset(args)
    candidates = _candidate_reports(field, T, args.lam)
    mults = None
    extra = {}
    if args.theorem == "regular":
        used, excluded, offset = _pick_regular(field, candidates)
        extra["c"] = offset
        curve = envelope_regular(T, used)
    elif args.theorem == "weighted":
        used, excluded = candidates, []
        if len(used) < field.q + 1:
            kept = []
            for r in used:
                if slope_of(r.direction) is None:
                    excluded.append((r, "vertical direction needs all q+1 covered"))
                else:
                    kept.append(r)
            used = kept
        if not used:
            raise HypothesisNotMet("no usable direction")
        if args.c == "scan":
            cap = min(field.q - 2, field.p - 1)
            outcomes, best = scan_weight_classes(used, field.p, cap)
            extra["scan"] = {str(c): total for c, total in outcomes.items()}
            if best is None:
                raise HypothesisNotMet("no count offset gives a constant class")
            c = best
        else:
            try:
                c = int(args.c)
            except ValueError as exc:
                raise InputError(f"--c must be an integer or 'scan', got {args.c!r}") from exc
        extra["c"] = c
        curve, mults = envelope_weighted(T, used, c)
        extra["weights"] = [{"line": format_line(line), "weight": w}
                            for line, w in sorted(mults.items(),
                                                  key=lambda kv: format_line(kv[0]))]
    else:
        used = [r for r in candidates if slope_of(r.direction) is not None]
        excluded = [(r, "vertical direction")
                    for r in candidates if slope_of(r.direction) is None]
        if not used:
            raise HypothesisNotMet("no usable slope direction")
        curve = envelope_general(T, used, args.lam)
        extra["lead_coeffs"] = list(curve.lead.coeffs)
    verification = verify_envelope(curve, used, mults)
    _emit(args, {
        "command": "envelope",
        "theorem": args.theorem,
        "field": args.field,
        "lambda": args.lam,
        "curve": curve.to_json(),
        "verification": verification.to_json(),
        "directions_used": [format_point(r.direction) for r in used],
        "directions_excluded": [{"direction": format_point(r.direction),
                                 "reason": reason} for r, reason in excluded],
        **extra,
    })
    return EXIT_OK if verification.ok else EXIT_VERIFY


# -- check ------------------------------------------------------------------


def cmd_check(args):
    field, T = _load_multiset(args)
    if args.bound == "deficiency":
        reports = uniform_directions(T, args.lam)
        rep = deficiency_bound_check(reports, args.lam)
        payload = {
            "theorem": "deficiency-bound",
            "hypotheses": {"lambda": args.lam, "uniform_directions": len(reports)},
            "lhs": rep.total_deficit,
            "rhs": rep.bound,
            "pass": rep.ok,
            "witnesses": rep.to_json()["per_direction"],
        }
        ok = rep.ok
    elif args.bound == "count":
        reports = [r for r in uniform_directions(T, args.lam)
                   if slope_of(r.direction) is not None]
        rep = renitent_lower_bound_check(T, reports)
        payload = {
            "theorem": "renitent-count-lower-bound",
            "hypotheses": {"lambda": rep.lam, "directions": rep.n_directions},
            "lhs": rep.count,
            "rhs": rep.bound,
            "pass": rep.ok,
            "witnesses": {"gcd_count": rep.gcd_count,
                          "counts_agree": rep.counts_agree},
        }
        ok = rep.ok
    elif args.bound == "gcd":
        reports = [r for r in uniform_directions(T, args.lam)
                   if slope_of(r.direction) is not None]
        if not reports:
            raise HypothesisNotMet("no uniform slope direction")
        det = build_slope_detector(T, reports)
        profile = gcd_profile(det.f, det.g)
        checks = [gcd_degree_bound(profile, y) for y in field.elements()]
        worst = min(checks, key=lambda c: c.slack)
        ok = all(c.ok for c in checks)
        payload = {
            "theorem": "gcd-degree-bound",
            "hypotheses": {"lambda": args.lam, "directions": len(reports),
                           "deg_f": profile.deg_f, "deg_g": profile.deg_g},
            "lhs": worst.lhs,
            "rhs": worst.rhs,
            "pass": ok,
            "witnesses": [c.to_json() for c in checks],
        }
    else:
        rep = dichotomy_check(T, args.lam)
        payload = {
            "theorem": "index-dichotomy",
            "hypotheses": {"lambda": rep.lam, "uniform_directions": rep.n_uniform,
                           "renitent_lines": rep.n_lines},
            "lhs": len(rep.offenders),
            "rhs": 0,
            "pass": rep.ok,
            "witnesses": rep.to_json(),
        }
        ok = rep.ok
    _emit(args, payload)
    return EXIT_OK if ok else EXIT_VERIFY


# -- wiring -----------------------------------------------------------------


def _add_common(sub, need_lambda=True):
    sub.add_argument("--field", required=True,
                     help="field spec: p, p^e, or p^e:m=c0,c1,... (constant first)")
    sub.add_argument("--in", dest="infile", required=True,
                     help="point-set file ('a b m' lines, '-' for stdin)")
    sub.add_argument("--out", help="write the JSON report here (atomically)")
    sub.add_argument("--json", action="store_true",
                     help="also print JSON to stdout when --out is given")
    if need_lambda:
        sub.add_argument("--lambda", dest="lam", type=int, required=True,
                         help="uniformity bound (0 < lambda <= (q-1)/2)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="renitent",
        description="Uniform directions, renitent lines, and their envelopes "
                    "over small finite planes.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance with ground truth")
    gen.add_argument("--field", required=True)
    gen.add_argument("--kind", required=True,
                     choices=["planted", "norm_conic", "random"])
    gen.add_argument("--points", help="planted points as 'a,b;c,d;...'")
    gen.add_argument("--weights", help="planted weights as 'w1,w2,...' (default all 1)")
    gen.add_argument("--c", type=int, default=1,
                     help="multiplicity multiplier for planted instances")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--out", help="write the point file here; ground truth "
                                   "goes to OUT.json")
    gen.add_argument("--json", action="store_true",
                     help="also print the ground-truth JSON to stdout")
    gen.set_defaults(func=cmd_gen)

    analyze = sub.add_parser("analyze", help="classify all q+1 directions")
    _add_common(analyze)
    analyze.set_defaults(func=cmd_analyze)

    envelope = sub.add_parser("envelope", help="construct and verify an envelope")
    _add_common(envelope)
    envelope.add_argument("--theorem", required=True,
                          choices=["regular", "weighted", "general"])
    envelope.add_argument("--c", default="1",
                          help="count offset for the weighted construction: "
                               "an integer or 'scan'")
    envelope.set_defaults(func=cmd_envelope)

    check = sub.add_parser("check", help="verify a counting bound")
    _add_common(check)
    check.add_argument("--bound", required=True,
                       choices=["deficiency", "count", "gcd", "dichotomy"])
    check.set_defaults(func=cmd_check)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HypothesisRejected, DegenerateCurve) as exc:
        print(f"hypothesis rejected: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RenitentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
