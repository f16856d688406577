"""Command line front end.

Exit codes: 0 success, 1 rule contradiction, 2 bad input, 3 ill-posed context.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__, corpus
from .diagram import parse_gauss, serialize_gauss
from .engine import (
    DualGraph,
    EmbeddingContext,
    alternating_orientation,
    classify,
    homotopy_classes,
    stiefel_pi,
    twi_verdict,
)
from .errors import (
    ConsistencyError,
    ContextInvalid,
    EvenDimension,
    InternalInconsistency,
    NonCompact,
    OddCycleError,
    ParseError,
    SelfLoop,
)
from .invariants import component_classes, linking_matrix, seifert_circles, si_link_verdict
from .manifolds import (
    euler_characteristic,
    parallelizable_reason,
    parse_manifold,
    semicharacteristic,
    z2_betti,
)
from .verdicts import PROPERTIES, Tri, Verdict

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_CONTEXT = 0, 1, 2, 3


class InputError(Exception):
    """Wraps parse and consistency failures with the name of the offending source."""

    def __init__(self, source, error):
        self.source = source
        self.error = error
        where = ""
        if isinstance(error, ParseError):
            where = f":{error.line}:{error.column}"
            message = error.message
        else:
            message = str(error)
        super().__init__(f"{source}{where}: {type(error).__name__}: {message}")


@dataclass
class Report:
    input: dict
    invariants: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    citations: list = field(default_factory=list)
    version: str = __version__

    @classmethod
    def build(cls, input, invariants, verdict: Verdict | None = None):
        if verdict is None:
            return cls(input, invariants)
        return cls(input, invariants, verdict.to_dict(), verdict.citations())

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "invariants": self.invariants,
            "verdicts": self.verdicts,
            "citations": self.citations,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(**{key: data[key] for key in ("input", "invariants", "verdicts", "citations", "version")})


# --------------------------------------------------------------------------
# link


def _read_diagram(spec: str):
    if spec.startswith("corpus:"):
        name = spec.split(":", 1)[1]
        try:
            text = corpus.corpus_text(name)
        except KeyError as exc:
            raise InputError(spec, ValueError(exc.args[0])) from None
        return text, {"source": "corpus", "name": name}
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return fh.read(), {"source": "file", "path": spec}
    return spec, {"source": "inline"}


def _parse_diagram(spec: str):
    text, origin = _read_diagram(spec)
    label = origin.get("path") or origin.get("name") or "<inline>"
    try:
        return parse_gauss(text), origin
    except (ParseError, ConsistencyError) as exc:
        raise InputError(label, exc) from None


def link_invariants(d) -> dict:
    lm = linking_matrix(d)
    return {
        "components": len(d.components),
        "crossings": d.crossing_count,
        "linking_matrix": lm.tolist(),
        "whitney_numbers": list(lm.whitney_numbers()),
        "seifert_circle_count": seifert_circles(d).circle_count,
        "component_classes": [
            {
                "component": c.index,
                "curvatura_integra_mod2": c.curvatura_integra_mod2,
                "relative_class": c.relative_class,
                "seifert_normal_class": c.seifert_normal_class,
            }
            for c in component_classes(d)
        ],
    }


def link_report(spec: str) -> Report:
    d, origin = _parse_diagram(spec)
    return Report.build({**origin, "code": serialize_gauss(d)}, link_invariants(d), si_link_verdict(d))


# --------------------------------------------------------------------------
# classify


def manifold_invariants(m) -> dict:
    par, reason = parallelizable_reason(m)
    out = {
        "dimension": m.dim,
        "compact": m.compact,
        "connected": m.connected,
        "parallelizable": par.value,
        "parallelizable_reason": reason,
    }
    if m.compact:
        out["z2_betti"] = z2_betti(m)
        out["euler_characteristic"] = euler_characteristic(m)
        if m.dim % 2 == 1:
            out["semicharacteristic"] = semicharacteristic(m)
    return out


def _parse_expr(text: str):
    try:
        return parse_manifold(text)
    except ParseError as exc:
        raise InputError("<expression>", exc) from None


def classify_report(expr: str, n: int, open_flag: bool, nb: str, diagram_path: str | None) -> Report:
    m = _parse_expr(expr)
    diagram = None
    if diagram_path is not None:
        diagram, _ = _parse_diagram(diagram_path)
    ctx = EmbeddingContext(
        m,
        n,
        open_manifold=Tri.TRUE if open_flag else None,
        normal_bundle_trivial=Tri.parse(nb),
        diagram=diagram,
    )
    invariants = manifold_invariants(m)
    if diagram is not None:
        invariants["link"] = link_invariants(diagram)
    echo = {
        "manifold": str(m),
        "k": m.dim,
        "n": n,
        "open": ctx.open_manifold.value,
        "nb_trivial": ctx.normal_bundle_trivial.value,
    }
    if diagram is not None:
        echo["diagram"] = serialize_gauss(diagram)
    return Report.build(echo, invariants, classify(ctx))


def manifold_report(expr: str, want_semichar: bool) -> Report:
    m = _parse_expr(expr)
    if want_semichar:
        if not m.compact:
            raise NonCompact(f"{m} is not compact; the semicharacteristic is undefined")
        if m.dim % 2 == 0:
            raise EvenDimension(f"{m} has even dimension; the semicharacteristic is undefined")
    twi = twi_verdict(m)
    return Report.build({"manifold": str(m)}, manifold_invariants(m), Verdict({"TWI": twi}))


# --------------------------------------------------------------------------
# tables and tilings


def table_report(args) -> Report:
    if args.kind == "stiefel":
        group = stiefel_pi(args.k, args.n)
        return Report({"table": "stiefel", "k": args.k, "n": args.n}, {"group": str(group)})
    group = homotopy_classes(args.r, args.k, args.n, args.frame)
    return Report(
        {"table": "homotopy", "k": args.k, "n": args.n, "frame": args.frame, "r": args.r},
        {"group": str(group)},
    )


def orient_report(path: str) -> Report:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        g = DualGraph.parse(text)
    except (ParseError, SelfLoop, ValueError) as exc:
        raise InputError(path, exc) from None
    echo = {"path": path, "vertices": g.vertex_count, "edges": [list(e) for e in g.edges]}
    try:
        signs = alternating_orientation(g)
    except OddCycleError as exc:
        return Report(echo, {"alternating": False, "odd_cycle": list(exc.cycle)})
    return Report(echo, {"alternating": True, "signs": list(signs)})


# --------------------------------------------------------------------------
# human-readable rendering


def _render_verdicts(report: Report) -> list[str]:
    lines = []
    for name in PROPERTIES:
        if name not in report.verdicts:
            continue
        pv = report.verdicts[name]
        lines.append(f"{name:<14}{pv['value']}")
        for hit in pv["chain"]:
            inputs = ", ".join(f"{k}={v}" for k, v in hit["inputs"].items())
            lines.append(f"    [{hit['rule_id']}] {hit['theorem']}: {hit['quote']}")
            if inputs:
                lines.append(f"        inputs: {inputs}")
        if not pv["chain"] and pv["unfired"]:
            lines.append(f"    no rule fired ({', '.join(pv['unfired'])})")
    return lines


_LINK_KEYS = {
    "link", "components", "crossings", "linking_matrix", "whitney_numbers",
    "seifert_circle_count", "component_classes",
}


def render(report: Report) -> str:
    lines = []
    for key, value in report.input.items():
        lines.append(f"{key}: {value}")
    inv = report.invariants
    if "linking_matrix" in inv or "link" in inv:
        link = inv.get("link", inv)
        lines.append(
            f"components: {link['components']}  crossings: {link['crossings']}  "
            f"Seifert circles: {link['seifert_circle_count']}"
        )
        lines.append("linking matrix (Whitney numbers on the diagonal):")
        for row in link["linking_matrix"]:
            lines.append("  " + " ".join(f"{v:>3}" for v in row))
        lines.append("component  curvatura mod 2  relative class  Seifert normal class")
        for c in link["component_classes"]:
            lines.append(
                f"{c['component']:>9}  {c['curvatura_integra_mod2']:>15}  "
                f"{c['relative_class']:>14}  {c['seifert_normal_class']:>20}"
            )
    for key, value in inv.items():
        if key not in _LINK_KEYS:
            lines.append(f"{key}: {value}")
    lines.extend(_render_verdicts(report))
    return "\n".join(lines)


def _emit(reports, as_json: bool):
    if as_json:
        if len(reports) == 1:
            print(reports[0].to_json())
        else:
            print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        print("\n\n".join(render(r) for r in reports))


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="integrability",
        description="Link invariants and integrability verdicts for submanifolds of E^n.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("link", help="invariants and SI verdict of a link diagram")
    p.add_argument("inputs", nargs="+", help="Gauss code, file path, or corpus:NAME")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1, help="process inputs in parallel")

    p = sub.add_parser("classify", help="verdicts for a manifold embedded in E^n")
    p.add_argument("expr", help='manifold expression, e.g. "S3", "T3 # T3", "L(4,1)"')
    p.add_argument("-n", "--dim-ambient", dest="n", type=int, required=True)
    p.add_argument("--open", action="store_true", help="the manifold has no compact component")
    p.add_argument("--nb-trivial", choices=("yes", "no", "unknown"), default="unknown")
    p.add_argument("--diagram", help="Gauss code file (or corpus:NAME) for curves in 3-space")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("manifold", help="Betti numbers, chi*, parallelizability and TWI")
    p.add_argument("expr")
    p.add_argument("--semichar", action="store_true", help="fail unless chi* is defined")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("table", help="Stiefel manifold homotopy lookups")
    p.add_argument("kind", choices=("stiefel", "homotopy"))
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--frame", choices=("tangent", "normal"), default="tangent")
    p.add_argument("-r", type=int, default=1, help="number of compact components")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("orient", help="alternating orientation of a tiling's dual graph")
    p.add_argument("path", help="edge list: vertex count, then one 'j k' pair per line")
    p.add_argument("--json", action="store_true")

    sub.add_parser("corpus", help="list the bundled diagrams")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "link":
            if args.jobs > 1 and len(args.inputs) > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    reports = list(pool.map(link_report, args.inputs))
            else:
                reports = [link_report(spec) for spec in args.inputs]
        elif args.command == "classify":
            reports = [classify_report(args.expr, args.n, args.open, args.nb_trivial, args.diagram)]
        elif args.command == "manifold":
            reports = [manifold_report(args.expr, args.semichar)]
        elif args.command == "table":
            reports = [table_report(args)]
        elif args.command == "orient":
            reports = [orient_report(args.path)]
        else:
            for name in corpus.NAMES:
                print(f"{name}\t{corpus.corpus_text(name).strip()}")
            return EXIT_OK
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ContextInvalid, EvenDimension, NonCompact) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONTEXT
    except InternalInconsistency as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(reports, getattr(args, "json", False))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
