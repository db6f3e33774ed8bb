"""Command-line front end: ``regiongraph {count,enumerate,verify,label,classify,conjecture}``.

Exit codes: 0 success, 2 verification failure, 3 budget or size guard,
4 bad input (including a preset that does not fit the command).
"""

import argparse
import csv
import io
import json
import os
import sys
import time

from .arrangement import ArrangementSpec, classify, cycle_check_bound, parse_preset, preset
from .catalan import catalan_decode, catalan_encode, conjecture_data, labeled_catalan_paths
from .diagrams import al_diagram, beta_parking_function, format_node, parking_tree, prufer_encode
from .errors import BudgetExceeded, InputError, InternalVerificationError, NotApplicable, NotMAcyclic, SizeLimitError
from .gains import pak_stanley_label
from .regions import RegionConfig, count_regions, enumerate_regions, region_from_digraph
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_GUARD, EXIT_INPUT = 0, 2, 3, 4


def load_arrangement(text, n):
    """A preset string, or a path to an arrangement JSON file."""
    if text is None:
        raise InputError("--arrangement is required")
    if text.endswith(".json") or os.path.isfile(text):
        try:
            with open(text) as fh:
                spec = ArrangementSpec.from_json(json.load(fh))
        except OSError as exc:
            raise InputError(f"cannot read {text}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{text} is not valid JSON: {exc}") from exc
        if n is not None and n != spec.n:
            raise InputError(f"--n {n} disagrees with n={spec.n} in {text}")
        return spec
    return parse_preset(text, n)


def parse_k(text, spec):
    try:
        ks = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"--region must be comma-separated integers, got {text!r}") from exc
    return RegionConfig(spec, ks)


def _dump(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _csv(rows, header, out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    out.write(buf.getvalue())


def _kstr(k):
    return ",".join(map(str, k))


def cmd_count(args, out):
    spec = load_arrangement(args.arrangement, args.n)
    bound = cycle_check_bound(spec) if args.shortcut else None
    start = time.perf_counter()
    result = count_regions(spec, bound=bound, budget=args.budget, workers=args.workers, profiles=args.profiles)
    summary = {"arrangement": spec.label(), "n": spec.n, **result.to_json()}
    if args.timing:
        summary["elapsed"] = round(time.perf_counter() - start, 6)
    if args.format == "csv":
        _csv([[summary["arrangement"], spec.n, result.total, result.bounded]], ["arrangement", "n", "total", "bounded"], out)
    else:
        _dump(summary, out)
    return EXIT_OK


def cmd_enumerate(args, out):
    spec = load_arrangement(args.arrangement, args.n)
    bound = cycle_check_bound(spec) if args.shortcut else None
    regions = enumerate_regions(spec, bound=bound, budget=args.budget, workers=args.workers)
    if args.format == "dot":
        for region in regions:
            out.write(f"// k = {_kstr(region.k)}\n")
            out.write(region.digraph.to_dot())
    elif args.format == "json":
        _dump({"arrangement": spec.label(), "n": spec.n, "regions": [r.to_json() for r in regions]}, out)
    elif args.format == "csv":
        _csv([[_kstr(r.k), str(r.is_bounded()).lower()] for r in regions], ["k", "bounded"], out)
    else:
        for region in regions:
            _dump(region.to_json(), out)
    return EXIT_OK


def cmd_verify(args, out):
    spec = None
    if args.arrangement is not None:
        spec = load_arrangement(args.arrangement, args.n)
    report = run_suite(args.suite, spec=spec, a=args.a, n=args.n)
    report["status"] = "PASS" if report["ok"] else "FAIL"
    _dump(report, out)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def _label_regions(args, spec):
    if args.region is not None:
        return [parse_k(args.region, spec)]
    return enumerate_regions(spec, budget=args.budget)


def cmd_label(args, out):
    kind = args.kind
    if kind == "pak-stanley":
        if args.arrangement is not None:
            spec = load_arrangement(args.arrangement, args.n)
        elif args.a is not None and args.n is not None:
            spec = preset("eshi", (args.a,), args.n)
        else:
            raise InputError("pak-stanley labels need --a and --n (or --arrangement)")
        if args.region is not None:
            label = pak_stanley_label(parse_k(args.region, spec))
            rows = [[r["vertex"], r["f"], r["separations"], r["inversions"]] for r in label.rows()]
            _csv(rows, ["vertex", "f", "separations", "inversions"], out)
            return EXIT_OK
        rows = []
        for region in _label_regions(args, spec):
            label = pak_stanley_label(region)
            rows.append([_kstr(region.k), " ".join(map(str, label.f)), " ".join(map(str, label.separations)), " ".join(map(str, label.inversions))])
        _csv(rows, ["k", "f", "separations", "inversions"], out)
        return EXIT_OK
    if kind == "al-word":
        spec = load_arrangement(args.arrangement, args.n)
        rows = []
        for region in _label_regions(args, spec):
            diagram = al_diagram(region)
            rows.append([_kstr(region.k), diagram.word_string(), " ".join(map(str, beta_parking_function(diagram)))])
        if args.region is not None and args.format != "csv":
            out.write(rows[0][1] + "\n")
        else:
            _csv(rows, ["k", "word", "beta_parking_function"], out)
        return EXIT_OK
    if kind == "prufer":
        spec = load_arrangement(args.arrangement, args.n)
        if spec.name != "beta-shi":
            raise NotApplicable("prufer codes are produced for beta-shi arrangements")
        rows = []
        for region in _label_regions(args, spec):
            diagram = al_diagram(region)
            code = prufer_encode(parking_tree(diagram))
            rows.append([_kstr(region.k), " ".join(map(str, beta_parking_function(diagram))), " ".join(format_node(c) for c in code)])
        _csv(rows, ["k", "beta_parking_function", "code"], out)
        return EXIT_OK
    if kind == "catalan-path":
        if args.arrangement is not None:
            spec = load_arrangement(args.arrangement, args.n)
            if spec.name != "catalan":
                raise NotApplicable("catalan paths label catalan:a arrangements")
            a = spec.params[0]
        elif args.a is not None and args.n is not None:
            a = args.a
            spec = preset("catalan", (a,), args.n)
        else:
            raise InputError("catalan-path labels need --a and --n (or --arrangement catalan:a)")
        rows = []
        if args.region is not None:
            path = catalan_decode(parse_k(args.region, spec))
            rows.append(["".join(map(str, path.pi)) if spec.n < 10 else " ".join(map(str, path.pi)), path.steps, args.region])
        else:
            for path in labeled_catalan_paths(a, spec.n):
                region = region_from_digraph(spec, catalan_encode(path))
                rows.append([" ".join(map(str, path.pi)), path.steps, _kstr(region.k)])
        _csv(rows, ["pi", "steps", "k"], out)
        return EXIT_OK
    raise InputError(f"unknown label kind {kind!r}")


def cmd_classify(args, out):
    spec = load_arrangement(args.arrangement, args.n)
    report = classify(spec).to_json()
    report["cycle_check_bound"] = cycle_check_bound(spec)
    report["arrangement"] = spec.label()
    report["n"] = spec.n
    _dump(report, out)
    return EXIT_OK


def cmd_conjecture(args, out):
    try:
        a_list = [int(v) for v in args.a_list.split(",")]
    except ValueError as exc:
        raise InputError("--a must be a comma-separated list of integers") from exc
    if args.n is None:
        raise InputError("--n is required")
    _dump(conjecture_data(a_list, args.n, budget=args.budget), out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="regiongraph", description="Regions of braid-arrangement deformations as weighted digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, arrangement=True):
        if arrangement:
            p.add_argument("--arrangement", help="preset (e.g. shi, catalan:2, truncated:-1,4) or arrangement JSON file")
        p.add_argument("--n", type=int, help="number of coordinates")
        p.add_argument("--budget", type=int, default=None, help="candidate-node cap (default: ARR_BUDGET or 10^8)")

    p = sub.add_parser("count", help="count total and bounded regions")
    common(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--shortcut", action="store_true", help="use the cycle-length shortcut when it applies")
    p.add_argument("--profiles", action="store_true", help="break the count down by strong-component sizes")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds (output is then not reproducible)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="stream the regions")
    common(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--shortcut", action="store_true")
    p.add_argument("--format", choices=["jsonl", "json", "csv", "dot"], default="jsonl")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a self-check suite")
    common(p)
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--a", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("label", help="label regions")
    p.add_argument("kind", choices=["pak-stanley", "al-word", "prufer", "catalan-path"])
    common(p)
    p.add_argument("--a", type=int)
    p.add_argument("--region", help="comma-separated interval indices of one region")
    p.add_argument("--format", choices=["csv", "text"], default="text")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("classify", help="structural flags of an arrangement")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("conjecture", help="a-Catalan region counts grouped by gain-tree shape")
    common(p, arrangement=False)
    p.add_argument("--a", dest="a_list", required=True, help="comma-separated values of a")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if getattr(args, "budget", None) is not None and args.budget < 1:
            raise InputError("--budget must be positive")
        return args.func(args, out)
    except InternalVerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (BudgetExceeded, SizeLimitError) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, NotApplicable, NotMAcyclic) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
