"""Command-line entry point: ``neumaier <command> ...``.

Every command emits a JSON run report (command echo, input digests, outputs,
wall-clock, version) or, with ``--format graph6``, bare graph6 lines. Exit
status: 0 ok, 1 mismatch or failed certificate, 2 usage or invalid input,
3 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .certify import certify_neumaier, verify_certificate, NeumaierCertificate
from .codes import find_code_partitions
from .construction import f_pi_construct, recipe_from_json, recipe_to_json, strictness_verdict
from .errors import CertificationError, InternalConsistencyError, NeumaierError, ValidationError
from .generators import REGISTRY, generate
from .graph import Graph, classify_regularity
from .iso import classify
from .reproduce import RUNS, ALIASES, reproduce
from .spectral import char_poly, poly_to_str, spectrum_json, spectrum_report
from .switching import prop33_switch

log = logging.getLogger("neumaier")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class Report:
    def __init__(self, argv: list[str]):
        self.argv = argv
        self.inputs: list[dict] = []
        self.outputs: dict = {}
        self.graph6: list[str] = []
        self.ok = True
        self.t0 = time.perf_counter()

    def add_input(self, label: str, text: str) -> None:
        self.inputs.append({"label": label, "sha256": digest(text)})

    def to_json(self) -> dict:
        return {
            "tool": "neumaier",
            "version": __version__,
            "command": self.argv,
            "inputs": self.inputs,
            "ok": self.ok,
            "outputs": self.outputs,
            "wall_clock_s": round(time.perf_counter() - self.t0, 3),
        }


def _read_graph(arg: str, report: Report) -> Graph:
    """A graph6 string, or a path to a file whose first non-blank line is graph6."""
    path = Path(arg)
    text = arg
    if path.exists():
        lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
        if not lines:
            raise UsageError(f"{arg}: empty file")
        text = lines[0]
    try:
        g = Graph.from_graph6(text)
    except ValueError as exc:
        raise UsageError(f"cannot decode graph6 input: {exc}") from exc
    report.add_input(arg if path.exists() else "graph6", text)
    return g


def _read_json(arg: str, report: Report) -> dict:
    try:
        text = Path(arg).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {arg}: {exc}") from exc
    report.add_input(arg, text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{arg}: invalid JSON ({exc})") from exc


def _expand_recipe(data: dict) -> dict:
    """Replace ``{"generator": name, "params": {...}}`` inputs by graph6 plus partition."""
    if not isinstance(data, dict) or not isinstance(data.get("inputs"), list):
        raise ValidationError("recipe must be an object with an 'inputs' list")
    inputs = []
    for item in data["inputs"]:
        if isinstance(item, dict) and "generator" in item:
            gen = generate(item["generator"], **item.get("params", {}))
            if gen.partition is None:
                raise ValidationError(f"generator {item['generator']!r} supplies no code partition")
            inputs.append({"graph6": gen.graph.to_graph6(), "partition": gen.partition.to_json()})
        else:
            inputs.append(item)
    return dict(data, inputs=inputs)


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args, report: Report) -> None:
    if args.list:
        report.outputs = {"generators": sorted(REGISTRY)}
        return
    if not args.name:
        raise UsageError("generate needs a generator name or --list")
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.connection:
        params["connection"] = [int(x) for x in args.connection.split(",")]
    if args.log2_powers:
        params["log2_powers"] = True
    if args.subgroup is not None:
        params["subgroup"] = args.subgroup
    try:
        gen = generate(args.name, **params)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    reg = classify_regularity(gen.graph)
    g6 = gen.graph.to_graph6()
    report.graph6.append(g6)
    report.outputs = {
        "name": gen.name,
        "graph6": g6,
        "regularity": {"kind": reg.kind, "v": reg.v, "k": reg.k, "lambda": reg.lam, "mu": reg.mu},
        "partition": None if gen.partition is None else gen.partition.to_json(),
        "meta": gen.meta,
    }


def cmd_construct(args, report: Report) -> None:
    ctx = recipe_from_json(_expand_recipe(_read_json(args.recipe, report)))
    out = f_pi_construct(ctx, check=not args.no_assert)
    cert = certify_neumaier(out.graph, spread=out.spread)
    verdict = strictness_verdict(ctx, out.graph)
    g6 = out.graph.to_graph6()
    report.graph6.append(g6)
    report.outputs = {
        "recipe": recipe_to_json(ctx),
        "graph6": g6,
        "spread": [list(c) for c in out.spread],
        "certificate": cert.to_json(),
        "strictness": {"kind": verdict.kind, "method": verdict.method,
                       "witnesses": None if verdict.witnesses is None else [list(w) for w in verdict.witnesses]},
    }


def cmd_switch(args, report: Report) -> None:
    ctx = recipe_from_json(_expand_recipe(_read_json(args.recipe, report)))
    subset = [int(x) for x in args.subset.split(",")]
    res = prop33_switch(ctx, subset, args.i, args.j)
    before = f_pi_construct(ctx).graph
    same = char_poly(before) == char_poly(res.graph)
    report.ok = same
    g6 = res.graph.to_graph6()
    report.graph6.append(g6)
    report.outputs = {
        "graph6_before": before.to_graph6(),
        "graph6": g6,
        "pi_after": res.pi.to_json(),
        "c1": list(res.partition.c1),
        "c2": list(res.partition.c2),
        "equals_construction": True,
        "cospectral": same,
    }


def cmd_certify(args, report: Report) -> None:
    g = _read_graph(args.graph, report)
    clique = None if not args.clique else [int(x) for x in args.clique.split(",")]
    try:
        cert = certify_neumaier(g, clique=clique)
    except CertificationError as exc:
        report.ok = False
        report.outputs = {"graph6": g.to_graph6(), "certified": False, "condition": exc.condition,
                          "detail": exc.detail}
        return
    verify_certificate(g, NeumaierCertificate.from_json(cert.to_json()))
    report.graph6.append(g.to_graph6())
    report.outputs = {"graph6": g.to_graph6(), "certified": True, "certificate": cert.to_json()}


def cmd_codes(args, report: Report) -> None:
    g = _read_graph(args.graph, report)
    limit = args.limit or 1
    parts = find_code_partitions(g, args.a, limit=limit)
    report.graph6.append(g.to_graph6())
    report.outputs = {"graph6": g.to_graph6(), "partitions": [p.to_json() for p in parts]}
    report.ok = bool(parts)


def cmd_spectrum(args, report: Report) -> None:
    g = _read_graph(args.graph, report)
    cp = char_poly(g)
    report.graph6.append(g.to_graph6())
    report.outputs = {"graph6": g.to_graph6(), "char_poly": poly_to_str(cp.ascending()),
                      "spectrum": spectrum_json(spectrum_report(g))}


def cmd_classify(args, report: Report) -> None:
    try:
        lines = [ln.strip() for ln in Path(args.file).read_text().splitlines() if ln.strip()]
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from exc
    report.add_input(args.file, "\n".join(lines))
    graphs = [Graph.from_graph6(ln) for ln in lines]
    classes = classify(graphs)
    report.graph6.extend(c.canonical_graph6 for c in classes)
    report.outputs = {"graphs": len(graphs), "classes": [c.to_json() for c in classes]}


def _collect_graph6(obj) -> list[str]:
    """Every value stored under a ``graph6`` key, depth first."""
    found = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if key == "graph6" and isinstance(val, str):
                found.append(val)
            else:
                found.extend(_collect_graph6(val))
    elif isinstance(obj, list):
        for item in obj:
            found.extend(_collect_graph6(item))
    return found


def cmd_reproduce(args, report: Report) -> None:
    names = args.runs or ["icosahedra", "dodecahedra", "circulant65", "triangular", "honeycomb", "tables"]
    results = []
    for name in names:
        try:
            res = reproduce(name, rows=args.row, limit=args.limit)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
        for c in res.checks:
            log.info("%s %s", res.name, c)
        results.append(res)
    report.ok = all(r.ok for r in results)
    runs = [r.to_json() for r in results]
    report.graph6.extend(_collect_graph6(runs))
    report.outputs = {"runs": runs,
                      "failures": [f"{r.name}: {c}" for r in results for c in r.failures()]}


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR", help="also write report.json and graphs.g6 into DIR")
    common.add_argument("--format", choices=["json", "graph6"], default="json", help="stdout format")
    common.add_argument("--limit", type=int, help="cap on search results")
    common.add_argument("--no-assert", action="store_true",
                        help="batch mode: report mismatches without a failing exit status")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="neumaier", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="build a named input graph")
    g.add_argument("name", nargs="?", help="generator name")
    g.add_argument("--list", action="store_true", help="list the generators")
    g.add_argument("--n", type=int, help="circulant order")
    g.add_argument("--connection", help="comma-separated circulant connection set")
    g.add_argument("--log2-powers", action="store_true", help="use the powers of 2 mod n as connection set")
    g.add_argument("--subgroup", type=int, help="generator of the code subgroup of Z_n")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("construct", parents=[common], help="glue graphs along codes from a recipe file")
    c.add_argument("recipe", help="recipe JSON: {inputs: [{graph6, partition} | {generator, params}], pi}")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("switch", parents=[common], help="switch a construction on (I, i, j)")
    s.add_argument("recipe")
    s.add_argument("--subset", default="1", help="comma-separated copies I, containing 1")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.set_defaults(func=cmd_switch)

    ce = sub.add_parser("certify", parents=[common], help="certify Neumaier parameters of a graph")
    ce.add_argument("graph", help="graph6 string or file")
    ce.add_argument("--clique", help="comma-separated regular clique to use")
    ce.set_defaults(func=cmd_certify)

    co = sub.add_parser("codes", parents=[common], help="find partitions into perfect 1-codes")
    co.add_argument("graph", help="graph6 string or file")
    co.add_argument("--a", type=int, required=True, help="code size")
    co.set_defaults(func=cmd_codes)

    sp = sub.add_parser("spectrum", parents=[common], help="exact characteristic polynomial and spectrum")
    sp.add_argument("graph", help="graph6 string or file")
    sp.set_defaults(func=cmd_spectrum)

    cl = sub.add_parser("classify", parents=[common], help="isomorphism classes of graph6 lines in a file")
    cl.add_argument("file")
    cl.set_defaults(func=cmd_classify)

    r = sub.add_parser("reproduce", parents=[common], help="rerun a known family and compare with expected values")
    r.add_argument("runs", nargs="*", metavar="run",
                   help=f"one of {', '.join(RUNS)} (aliases {', '.join(ALIASES)}); default all")
    r.add_argument("--row", action="append", help="table row such as n=3 or family=2,n=4 (repeatable)")
    r.set_defaults(func=cmd_reproduce)
    return p


def _emit(args, report: Report) -> None:
    data = report.to_json()
    text = json.dumps(data, indent=2)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text + "\n")
        if report.graph6:
            (out / "graphs.g6").write_text("\n".join(report.graph6) + "\n")
    if args.format == "graph6":
        for g6 in report.graph6:
            print(g6)
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    report = Report(["neumaier"] + argv)
    try:
        args.func(args, report)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValidationError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except NeumaierError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, report)
    if not report.ok and not args.no_assert:
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
