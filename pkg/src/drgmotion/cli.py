"""Command-line front end: analyze, family, verify, oracle.

Output is one JSON object per line unless ``--pretty`` is given.  Nothing is
printed to stdout until a command has fully succeeded, so a failing run never
leaves half a report behind.

Exit codes: 0 ok, 1 input error, 2 theorem or consistency violation,
3 size limit.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog, verify
from .errors import DRGError, SizeLimitExceeded, TheoremViolation
from .imprimitive import detect, imprimitive_report
from .motion import analyze
from .oracle import (
    DEFAULT_MAX_N,
    adjacency_spectrum,
    automorphisms,
    build_named,
    check_distance_regular,
    folded_graph,
    halved_graph,
)
from .params import (
    IntersectionArray,
    cocktail_party_array,
    cocktail_party_spectrum,
    feasibility_report,
    hamming_array,
    hamming_spectrum,
    johnson_array,
    johnson_spectrum,
    parse_array,
)
from .spectrum import Spectrum, eigen_spectrum
from .tradeoff import DEFAULT_DELTA

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_SIZE = 0, 1, 2, 3
CACHE_ENV = "DRGMOTION_CACHE_DIR"
SPECTRUM_TOL = 1e-6


class InputError(Exception):
    """Bad command-line input that is not a library error."""


# -- helpers ---------------------------------------------------------------

def _parse_delta(text: str) -> Fraction:
    try:
        delta = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    if not 0 < delta < 1:
        raise argparse.ArgumentTypeError(f"delta must lie in (0, 1), got {delta}")
    return delta


def cached_spectrum(arr: IntersectionArray) -> Spectrum:
    """eigen_spectrum, memoized on disk when the cache variable is set."""
    root = os.environ.get(CACHE_ENV)
    if not root:
        return eigen_spectrum(arr)
    key = hashlib.sha256(str(arr).encode()).hexdigest()[:32]
    path = Path(root) / f"spectrum-{key}.json"
    if path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("array") == str(arr):
                return Spectrum(tuple(data["eigenvalues"]), tuple(data["multiplicities"]))
        except (OSError, ValueError, KeyError):
            pass  # unreadable cache entry: recompute
    spec = eigen_spectrum(arr)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"array": str(arr), "eigenvalues": list(spec.eigenvalues),
                                    "multiplicities": list(spec.multiplicities)}))
    except OSError:
        pass
    return spec


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


def _resolve_array(target: str | None, file: str | None) -> tuple[str, IntersectionArray]:
    if file:
        try:
            text = Path(file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {file}: {exc}") from None
        return Path(file).name, parse_array(text)
    if target is None:
        raise InputError("give a catalog id, an array as JSON, or --file")
    if target.lstrip().startswith("{"):
        return "inline", parse_array(target)
    try:
        return target, catalog.get(target).array
    except KeyError as exc:
        raise InputError(exc.args[0]) from None


def _resolve_graph(target: str):
    if Path(target).is_file():
        return build_named("edge_list", target)
    if target in catalog.CATALOG:
        g = catalog.get(target).build()
        if g is None:
            raise InputError(f"catalog entry {target!r} has no concrete graph")
        return g
    name, *params = target.split(":")
    try:
        return build_named(name, *params)
    except ValueError as exc:
        if "unknown" in str(exc) or not params:
            raise InputError(f"no file, catalog id or named graph matches {target!r}") from None
        raise


def _spectrum_dict(spec: Spectrum) -> list[list]:
    return [[v, m] for v, m in zip(spec.eigenvalues, spec.multiplicities)]


# -- subcommands -----------------------------------------------------------

def cmd_analyze(args) -> list[dict]:
    name, arr = _resolve_array(args.target, args.file)
    problems = feasibility_report(arr)
    if problems:
        # name the first failed check; all of them are input errors
        first = problems[0]
        raise InputError(f"{first.name}: {first.detail}")
    spec = cached_spectrum(arr)
    profile = detect(arr)
    if args.primitive == "auto":
        primitive = profile.primitive_by_smith
    else:
        primitive = args.primitive == "yes"
    report = analyze(arr, primitive=primitive, delta=args.delta, spectrum=spec)
    out = {"command": "analyze", "input": name, "report": report.to_json(),
           "profile": profile.to_json(), "spectrum": spec.to_json()}
    if args.imprimitive:
        out["imprimitive"] = imprimitive_report(arr)
    return [out]


_FAMILIES = {
    "johnson": (johnson_array, johnson_spectrum, 2),
    "hamming": (hamming_array, hamming_spectrum, 2),
    "cocktail": (cocktail_party_array, cocktail_party_spectrum, 1),
}


def cmd_family(args) -> list[dict]:
    build, closed, count = _FAMILIES[args.kind]
    if len(args.params) != count:
        raise InputError(f"{args.kind} takes {count} integer parameter(s)")
    arr = build(*args.params)
    spec = cached_spectrum(arr)
    # closed forms may list coinciding eigenvalues separately (e.g. small m)
    want: dict[int, int] = {}
    for v, m in closed(*args.params):
        if m > 0:
            want[v] = want.get(v, 0) + m
    got = spec.as_dict()
    match = len(want) == len(got) and all(
        any(abs(v - g) <= SPECTRUM_TOL and m == got[g] for g in got) for v, m in want.items()
    )
    report = analyze(arr, primitive=detect(arr).primitive_by_smith, delta=args.delta, spectrum=spec)
    return [{"command": "family", "kind": args.kind, "params": list(args.params), "array": arr.to_json(),
             "closed_form_spectrum": [[v, m] for v, m in sorted(want.items(), reverse=True)],
             "spectrum": _spectrum_dict(spec), "closed_form_matches": match, "report": report.to_json()}]


def cmd_verify(args) -> list[dict]:
    records = verify.run(args.suite, delta=args.delta, max_n=args.max_n)
    passed, failed = verify.summarize(records)
    records.append({"suite": args.suite, "summary": True, "passed": passed, "failed": failed})
    return records


def cmd_oracle(args) -> list[dict]:
    g = _resolve_graph(args.target)
    out = {"command": "oracle", "graph": g.name, "n": g.n}
    wants = [f for f in ("motion", "spectrum", "check_array", "fold", "halve") if getattr(args, f)]
    if not wants:
        wants = ["check_array"]
    if "check_array" in wants:
        res = check_distance_regular(g)
        if res.is_distance_regular:
            out["distance_regular"] = True
            out["array"] = res.array.to_json()
        else:
            v, w, i = res.witness
            out["distance_regular"] = False
            out["witness"] = {"v": g.labels[v] if g.labels else v, "w": g.labels[w] if g.labels else w,
                              "distance": i}
            out["message"] = "not distance-regular"
            out["detail"] = res.detail
    if "spectrum" in wants:
        out["spectrum"] = _spectrum_dict(adjacency_spectrum(g))
    if "motion" in wants:
        data = automorphisms(g, max_n=args.max_n)
        out["automorphisms"] = data.to_json()
        out["motion"] = data.motion
    for flag, op in (("fold", folded_graph), ("halve", halved_graph)):
        if flag in wants:
            q = op(g)
            res = check_distance_regular(q)
            out[flag] = {"n": q.n, "distance_regular": res.is_distance_regular,
                         "array": res.array.to_json() if res.array else None}
    return [out]


# -- text rendering --------------------------------------------------------

def _render_pretty(rows: list[dict]) -> str:
    lines = []
    for row in rows:
        cmd = row.get("command")
        if cmd == "analyze":
            rep = row["report"]
            arr = rep["array"]
            lines.append(f"array      {{{','.join(map(str, arr['b']))};{','.join(map(str, arr['c']))}}}  n = {rep['n']}")
            lines.append("spectrum   " + "  ".join(
                f"{e['value']:.6g}^{e['multiplicity']}" for e in row["spectrum"]["eigenvalues"]))
            lines.append(f"D(i)       {rep['dvals']}  D_min = {rep['dmin']}")
            lines.append("bounds")
            for b in rep["bounds"]:
                if "value" in b:
                    lines.append(f"  {b['name']:<28} {b['value']:.6g}")
                else:
                    lines.append(f"  {b['name']:<28} holds={b['holds']}")
            bad = [e["name"] for e in rep["structural"] if e.get("status") == "violated"]
            lines.append("structural " + ("ok" if not bad else "VIOLATED: " + ", ".join(bad)))
            if rep["classifier"]:
                c = rep["classifier"]
                lines.append(f"classifier path {c.get('path')}  verdict {json.dumps(_jsonable(c.get('verdict')))}")
            elif rep["classifier_note"]:
                lines.append(f"classifier skipped: {rep['classifier_note']}")
            if "imprimitive" in row:
                lines.append("imprimitive")
                lines.append(json.dumps(_jsonable(row["imprimitive"]), indent=2))
        elif cmd == "family":
            lines.append(f"{row['kind']} {row['params']}  array {row['array']}")
            lines.append(f"spectrum {row['spectrum']}  closed form matches: {row['closed_form_matches']}")
        elif row.get("summary"):
            lines.append(f"{row['suite']}: {row['passed']} passed, {row['failed']} failed")
        elif "check" in row:
            if not row["holds"]:
                lines.append(f"FAIL {row['suite']} {row['array_id']} {row['check']} lhs={row['lhs']} rhs={row['rhs']}")
        else:
            lines.append(json.dumps(_jsonable(row), indent=2))
    return "\n".join(lines)


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON lines output (the default)")
    common.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")
    common.add_argument("--delta", type=_parse_delta, default=DEFAULT_DELTA, help="rational in (0,1), default 1/9")
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="vertex cap for automorphism search")

    p = argparse.ArgumentParser(prog="drgmotion", parents=[common],
                                description="Motion lower bounds for distance-regular graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full report for one array")
    a.add_argument("target", nargs="?", help="catalog id or array JSON")
    a.add_argument("--file", help="read the array JSON from a file")
    a.add_argument("--imprimitive", action="store_true", help="add the bipartite/antipodal analysis")
    a.add_argument("--primitive", choices=["auto", "yes", "no"], default="auto",
                   help="attest primitivity (auto: neither bipartite nor antipodal)")
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("family", parents=[common], help="array and closed-form spectrum of a classical family")
    f.add_argument("kind", choices=sorted(_FAMILIES))
    f.add_argument("params", nargs="+", type=int)
    f.set_defaults(func=cmd_family)

    v = sub.add_parser("verify", parents=[common], help="run property suites")
    v.add_argument("suite", choices=[*verify.SUITES, "all"])
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[common], help="brute-force checks on a concrete graph")
    o.add_argument("target", help="edge-list file, catalog id, or name:param:... (e.g. johnson:5:2)")
    o.add_argument("--motion", action="store_true")
    o.add_argument("--spectrum", action="store_true")
    o.add_argument("--check-array", action="store_true")
    o.add_argument("--fold", action="store_true")
    o.add_argument("--halve", action="store_true")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        rows = args.func(args)
    except TheoremViolation as exc:
        print(f"error: TheoremViolation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except SizeLimitExceeded as exc:
        print(f"error: SizeLimitExceeded: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DRGError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.pretty:
        text = _render_pretty(rows)
    else:
        text = "\n".join(json.dumps(_jsonable(r), sort_keys=True) for r in rows)
    if text:
        print(text)
    if args.command == "verify" and rows[-1]["failed"]:
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
