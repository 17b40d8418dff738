"""Command-line front end.

    rimcalc alex     --braid "2: 1 1 1"
    rimcalc compare  --braid "2: 1 1 1" --braid "3: 1 -2 1 -2" --pair e1_fiber
    rimcalc surger   --pd "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)" --pair k3_fiber
    rimcalc obstruct --dt "4 6 2"
    rimcalc table    [knots.csv] [--jobs 4]

Output is JSON with sorted keys (pretty by default, one canonical line with
``--json``).  Exit codes: 0 success, 2 bad input, 3 engine failure or
disagreement, 4 failed hypothesis (not an SW-pair, not symplectic).
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .alexander import alexander_all, alexander_torus_closed_form, check_agreement
from .errors import EngineDisagreement, HypothesisFailure, InputError, RimcalcError
from .jsonio import canonical_json, pretty_json
from .knot import iter_table_knots, load_knot_table, parse_presentation, torus_knot
from .swtheory import (
    basic_class_collections,
    distinguish,
    load_preset,
    rim_surgery_sw,
    symplectic_isotopy_obstruction,
)

EXIT_OK, EXIT_INPUT, EXIT_ENGINE, EXIT_HYPOTHESIS = 0, 2, 3, 4
DEFAULT_PAIR = "e1_fiber"


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, HypothesisFailure):
        return EXIT_HYPOTHESIS
    if isinstance(exc, InputError):
        return EXIT_INPUT
    return EXIT_ENGINE


class _KnotAction(argparse.Action):
    """Collect knot options in command-line order as (format, text) pairs."""

    def __call__(self, parser, namespace, values, option_string=None):
        knots = list(getattr(namespace, "knots", None) or [])
        knots.append((self.const, values))
        namespace.knots = knots


def _add_knot_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("knot input (repeatable, order preserved)")
    g.add_argument("--braid", action=_KnotAction, const="braid", metavar="TEXT", help='e.g. "2: 1 1 1"')
    g.add_argument("--pd", action=_KnotAction, const="pd", metavar="TEXT", help='e.g. "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"')
    g.add_argument("--dt", action=_KnotAction, const="dt", metavar="TEXT", help='e.g. "4 6 2"')
    g.add_argument("--torus", action=_KnotAction, const="torus", metavar="P,Q", help="torus knot T(p,q)")
    g.add_argument("--file", action=_KnotAction, const="file", metavar="PATH",
                   help="file with one '<format> <code>' knot per line")


def _read_knot_file(path: str) -> list[tuple[str, str]]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    out = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fmt, _, code = line.partition(" ")
        out.append((fmt, code.strip()))
    return out


def _resolve_knots(args) -> list[dict]:
    """Turn the collected options into knots: dicts with presentation and extras."""
    specs = []
    for fmt, text in getattr(args, "knots", None) or []:
        if fmt == "file":
            specs.extend(_read_knot_file(text))
        else:
            specs.append((fmt, text))
    knots = []
    for fmt, text in specs:
        if fmt == "torus":
            try:
                p, q = (int(x) for x in text.split(","))
            except ValueError:
                raise InputError(f"--torus expects P,Q, got {text!r}") from None
            knots.append({"presentation": torus_knot(p, q), "torus": (p, q), "input": ("torus", text)})
        else:
            knots.append({"presentation": parse_presentation(text, fmt), "input": (fmt, text)})
    return knots


def _engine_results(knot: dict) -> dict:
    results = alexander_all(knot["presentation"])
    if "torus" in knot:
        results["closed_form:torus"] = alexander_torus_closed_form(*knot["torus"])
    return results


def _emit(obj, args) -> None:
    print(canonical_json(obj) if args.json else pretty_json(obj))


# -- commands -------------------------------------------------------------------

def cmd_alex(args) -> int:
    knots = _resolve_knots(args)
    if not knots:
        raise InputError("alex needs a knot (--braid/--pd/--dt/--torus/--file)")
    results = {}
    for idx, knot in enumerate(knots):
        for name, p in _engine_results(knot).items():
            results[name if len(knots) == 1 else f"{name}@{idx}"] = p
    report = {
        "presentations": [{"format": k["input"][0], "code": k["input"][1]} for k in knots],
        "engines": {name: p.to_json() for name, p in results.items()},
    }
    try:
        delta = check_agreement(results)
    except EngineDisagreement:
        report["engines_agree"] = False
        _emit(report, args)
        return EXIT_ENGINE
    report["engines_agree"] = True
    report["alexander"] = delta.to_json()
    report["alexander_text"] = str(delta)
    _emit(report, args)
    return EXIT_OK


def _single_delta(knot: dict):
    return check_agreement(_engine_results(knot))


def cmd_compare(args) -> int:
    knots = _resolve_knots(args)
    if len(knots) != 2:
        raise InputError(f"compare needs exactly two knots, got {len(knots)}")
    pair = load_preset(args.pair)
    pair.require_sw_pair()
    d1, d2 = (_single_delta(k) for k in knots)
    report = distinguish(pair, d1, d2).to_json()
    report["knots"] = [{"format": k["input"][0], "code": k["input"][1]} for k in knots]
    _emit(report, args)
    return EXIT_OK


def cmd_surger(args) -> int:
    knots = _resolve_knots(args)
    if len(knots) != 1:
        raise InputError(f"surger needs exactly one knot, got {len(knots)}")
    pair = load_preset(args.pair)
    pair.require_sw_pair()
    delta = _single_delta(knots[0])
    surgered = rim_surgery_sw(pair, delta)
    if args.sw_only:
        _emit(surgered.to_json(), args)
        return EXIT_OK
    collections = basic_class_collections(pair.base_sw, surgered, pair.rim_class)
    _emit(
        {
            "pair": pair.name,
            "knot": {"format": knots[0]["input"][0], "code": knots[0]["input"][1]},
            "alexander": delta.to_json(),
            "base_sw": pair.base_sw.to_json(),
            "surgered_sw": surgered.to_json(),
            "collections": [c.to_json() for c in collections],
        },
        args,
    )
    return EXIT_OK


def cmd_obstruct(args) -> int:
    knots = _resolve_knots(args)
    if len(knots) != 1:
        raise InputError(f"obstruct needs exactly one knot, got {len(knots)}")
    pair = load_preset(args.pair)
    delta = _single_delta(knots[0])
    report = symplectic_isotopy_obstruction(pair, delta).to_json()
    report["knot"] = {"format": knots[0]["input"][0], "code": knots[0]["input"][1]}
    _emit(report, args)
    return EXIT_OK


def _table_row(job) -> tuple[dict, int]:
    name, rows, pair = job
    line = {"name": name}
    try:
        presentations = [r.presentation() for r in rows]
        results = alexander_all(*presentations)
        line["engines"] = {k: v.to_json() for k, v in results.items()}
        try:
            delta = check_agreement(results)
        except EngineDisagreement:
            line["engines_agree"] = False
            raise
        line["engines_agree"] = True
        line["alexander"] = delta.to_json()
        report = symplectic_isotopy_obstruction(pair, delta)
        line["obstruction"] = report.verdict.value
        line["witness_sizes"] = list(report.witness_sizes)
        return line, EXIT_OK
    except RimcalcError as exc:
        line["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return line, exit_code_for(exc)


def cmd_table(args) -> int:
    entries = load_knot_table(args.csv)
    pair = load_preset(args.pair)
    jobs = [(name, rows, pair) for name, rows in iter_table_knots(entries)]
    status = EXIT_OK
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = pool.map(_table_row, jobs, chunksize=8)
            status = _stream(outcomes)
    else:
        status = _stream(map(_table_row, jobs))
    return status


def _stream(outcomes) -> int:
    status = EXIT_OK
    for line, code in outcomes:
        print(canonical_json(line), flush=True)
        if code != EXIT_OK and status == EXIT_OK:
            status = code
    return status


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rimcalc", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair=True):
        p.add_argument("--json", action="store_true", help="emit one canonical JSON line")
        if pair:
            p.add_argument("--pair", default=DEFAULT_PAIR, metavar="PRESET",
                           help=f"pair preset name or JSON path (default {DEFAULT_PAIR})")

    p = sub.add_parser("alex", help="Alexander polynomial with engine cross-check")
    _add_knot_options(p)
    common(p, pair=False)
    p.set_defaults(func=cmd_alex)

    p = sub.add_parser("compare", help="can the Alexander polynomial tell two rim surgeries apart?")
    _add_knot_options(p)
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("surger", help="apply rim surgery to a pair's SW invariant")
    _add_knot_options(p)
    common(p)
    p.add_argument("--sw-only", action="store_true", help="print only the surgered SW invariant")
    p.set_defaults(func=cmd_surger)

    p = sub.add_parser("obstruct", help="symplectic isotopy obstruction for a rim-surgered surface")
    _add_knot_options(p)
    common(p)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("table", help="stream invariants for every knot in a name,format,code CSV")
    p.add_argument("csv", nargs="?", default=None, help="knot table (bundled table if omitted)")
    p.add_argument("--pair", default=DEFAULT_PAIR, metavar="PRESET")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is preserved)")
    p.set_defaults(func=cmd_table, json=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RimcalcError as exc:
        print(f"rimcalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except Exception as exc:  # any other failure is an engine bug, reported as such
        print(f"rimcalc: internal error: {exc!r}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
