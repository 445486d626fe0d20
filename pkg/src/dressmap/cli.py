"""Command-line front end: ``dressmap analyze | catalog | marks``.

Exit codes: 0 success; 1 a catalog agreement flag is false; 2 invalid input;
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

import jsonschema

from .catalog import SpecError, build_extension, catalog_names, catalog_spec
from .dress import DEFAULT_DEPTH, DressReport, analyze
from .extensions import ExtensionError
from .fields import InvariantViolation, ResourceError
from .groups import FiniteGroup, subgroup_lattice, table_of_marks
from .qforms import invariant_vector

SCHEMA_VERSION = 1

_nullable_bool = {"type": ["boolean", "null"]}
_int_list = {"type": "array", "items": {"type": "integer"}}

REPORT_SCHEMA: dict = {
    "type": "object",
    "required": ["schema", "spec", "name", "group", "dress_table", "kernel_basis", "verdicts",
                 "agreement", "witnesses", "cyclic", "timing"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "spec": {"type": "object"},
        "name": {"type": "string"},
        "group": {
            "type": "object",
            "required": ["order", "classes"],
            "properties": {"order": {"type": "integer"}, "classes": {"type": "integer"}},
        },
        "dress_table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["class", "subgroup_order", "class_size", "form", "invariant"],
                "properties": {
                    "class": {"type": "integer"},
                    "subgroup_order": {"type": "integer"},
                    "class_size": {"type": "integer"},
                    "form": _int_list,
                    "invariant": {"type": "object", "additionalProperties": {"type": "integer"}},
                },
            },
        },
        "kernel_basis": {"type": "array", "items": _int_list},
        "verdicts": {
            "type": "object",
            "required": ["injective", "injectivity_predicate", "surjectivity_criterion",
                         "surjective_exact", "surjective_note"],
            "properties": {
                "injective": {"type": "boolean"},
                "injectivity_predicate": _nullable_bool,
                "surjectivity_criterion": {"type": "boolean"},
                "surjective_exact": _nullable_bool,
                "surjective_note": {"type": "string"},
            },
        },
        "agreement": {"type": "object", "additionalProperties": _nullable_bool},
        "witnesses": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "coefficients", "in_kernel"],
                "properties": {"kind": {"type": "string"}, "coefficients": _int_list,
                               "in_kernel": {"type": "boolean"}, "detail": {"type": "string"}},
            },
        },
        "cyclic": {"type": ["object", "null"]},
        "timing": {"type": "object"},
    },
}

CATALOG_SCHEMA: dict = {
    "type": "object",
    "required": ["schema", "entries", "all_agree", "timing"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "entries": {"type": "array", "items": REPORT_SCHEMA},
        "all_agree": {"type": "boolean"},
        "timing": {"type": "object"},
    },
}


def _coord_name(key: tuple) -> str:
    return ":".join(str(k) for k in key)


def report_document(report: DressReport, spec: dict, seconds: float = 0.0) -> dict:
    t = report.table
    lat = t.ring.lattice
    table = []
    for c, (h, e) in enumerate(zip(t.representatives, t.entries)):
        coords = invariant_vector(e).coordinates()
        table.append({
            "class": c,
            "subgroup_order": h.order,
            "class_size": lat.class_size(c),
            "form": list(e.pos),
            "invariant": {_coord_name(k): v for k, (v, _) in sorted(coords.items(), key=repr)},
        })
    cyc = None
    if report.cyclic is not None:
        cc = report.cyclic
        cyc = {"subgroup_order": cc.subgroup.order, "alpha": cc.alpha, "a": cc.a, "b": cc.b}
    return {
        "schema": SCHEMA_VERSION,
        "spec": spec,
        "name": report.ext.name,
        "group": {"order": report.ext.group.order, "classes": len(lat)},
        "dress_table": table,
        "kernel_basis": [list(b.coeffs) for b in report.kernel.basis],
        "verdicts": {
            "injective": report.injective,
            "injectivity_predicate": report.injectivity_predicate,
            "surjectivity_criterion": report.surjectivity_criterion,
            "surjective_exact": report.surjective_exact,
            "surjective_note": report.surjective_note,
        },
        "agreement": dict(report.agreement),
        "witnesses": [{"kind": w.kind, "coefficients": list(w.element.coeffs), "in_kernel": w.in_kernel,
                       "detail": w.detail} for w in report.witnesses],
        "cyclic": cyc,
        "timing": {"seconds": round(seconds, 6)},
    }


def load_document(text: str, schema: dict = REPORT_SCHEMA) -> dict:
    doc = json.loads(text)
    jsonschema.validate(doc, schema)
    return doc


def strip_timing(doc: Any) -> Any:
    if isinstance(doc, dict):
        return {k: strip_timing(v) for k, v in doc.items() if k != "timing"}
    if isinstance(doc, list):
        return [strip_timing(v) for v in doc]
    return doc


def analyze_spec(spec: dict, depth: int = DEFAULT_DEPTH, seed: int = 0) -> dict:
    start = time.perf_counter()
    ext = build_extension(spec)
    report = analyze(ext, depth=depth, seed=seed)
    return report_document(report, spec, time.perf_counter() - start)


def _catalog_entry(args: tuple[str, int, int]) -> dict:
    name, depth, seed = args
    return analyze_spec(catalog_spec(name), depth, seed)


def run_catalog(parallel: bool = False, depth: int = DEFAULT_DEPTH, seed: int = 0) -> dict:
    start = time.perf_counter()
    jobs = [(name, depth, seed) for name in catalog_names()]
    if parallel:
        with ProcessPoolExecutor() as pool:
            entries = list(pool.map(_catalog_entry, jobs))
    else:
        entries = [_catalog_entry(j) for j in jobs]
    all_agree = all(v is not False for e in entries for v in e["agreement"].values())
    return {"schema": SCHEMA_VERSION, "entries": entries, "all_agree": all_agree,
            "timing": {"seconds": round(time.perf_counter() - start, 6)}}


def parse_group(tokens: Sequence[str]) -> FiniteGroup:
    """Group from words such as ``cyclic 4``, ``klein`` or ``cyclic 2 x symmetric 3``."""
    factors: list[list[str]] = [[]]
    for tok in tokens:
        if tok in ("x", "*"):
            factors.append([])
        else:
            factors[-1].append(tok)
    groups = []
    for words in factors:
        if not words:
            raise ValueError("empty group factor")
        name, *rest = words
        if name in ("klein", "quaternion"):
            if rest:
                raise ValueError(f"{name} takes no argument")
            groups.append(FiniteGroup.klein() if name == "klein" else FiniteGroup.quaternion())
            continue
        if name not in ("cyclic", "symmetric", "dihedral") or len(rest) != 1:
            raise ValueError(f"unknown group {' '.join(words)!r}")
        try:
            n = int(rest[0])
        except ValueError:
            raise ValueError(f"bad group parameter {rest[0]!r}") from None
        if n < 1:
            raise ValueError(f"group parameter must be positive, got {n}")
        groups.append(getattr(FiniteGroup, name)(n))
    g = groups[0]
    for h in groups[1:]:
        g = FiniteGroup.direct_product(g, h)
    return g


def _print_report(doc: dict, out=None):
    out = out or sys.stdout
    v = doc["verdicts"]
    print(f"{doc['name']}: |G| = {doc['group']['order']}, {doc['group']['classes']} classes of subgroups", file=out)
    for row in doc["dress_table"]:
        form = ", ".join(map(str, row["form"]))
        print(f"  h(G/H{row['class']}) |H|={row['subgroup_order']}: <{form}>", file=out)
    print(f"  kernel basis: {doc['kernel_basis'] or 'trivial'}", file=out)
    print(f"  injective: {v['injective']} (criterion: {v['injectivity_predicate']})", file=out)
    exact = v["surjective_exact"] if v["surjective_exact"] is not None else f"n/a ({v['surjective_note']})"
    print(f"  surjective: {exact} (criterion: {v['surjectivity_criterion']})", file=out)
    for w in doc["witnesses"]:
        label = f"{w['kind']} {w['detail']}".strip()
        print(f"  witness {label}: {w['coefficients']} in kernel: {w['in_kernel']}", file=out)
    bad = [k for k, ok in doc["agreement"].items() if ok is False]
    print(f"  agreement: {'all true' if not bad else 'FAILED ' + ', '.join(bad)}", file=out)


def cmd_analyze(args) -> int:
    try:
        with open(args.spec) as fh:
            spec = json.load(fh)
        doc = analyze_spec(spec, args.depth, args.seed)
    except (OSError, json.JSONDecodeError, SpecError, ExtensionError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        _print_report(doc)
    return 0


def cmd_catalog(args) -> int:
    try:
        doc = run_catalog(args.parallel, args.depth, args.seed)
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for entry in doc["entries"]:
            _print_report(entry)
        print(f"catalog: {len(doc['entries'])} extensions, all agreement flags true: {doc['all_agree']}")
    return 0 if doc["all_agree"] else 1


def cmd_marks(args) -> int:
    try:
        g = parse_group(args.group)
    except (ValueError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lat = subgroup_lattice(g)
    marks = table_of_marks(lat)
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, "group": g.name, "order": g.order,
                          "classes": [[list(lat.subgroups[i].elements) for i in c] for c in lat.classes],
                          "marks": [list(r) for r in marks.marks]}, indent=2))
        return 0
    print(f"{g.name}: order {g.order}, {len(lat.subgroups)} subgroups in {len(lat)} classes")
    for c, h in enumerate(lat.representatives):
        print(f"  H{c}: order {h.order}, {lat.class_size(c)} conjugate(s), {list(h.elements)}")
    for c, row in enumerate(marks.marks):
        print(f"  G/H{c}: " + " ".join(f"{m:3d}" for m in row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="product depth for image membership")
    parser = argparse.ArgumentParser(prog="dressmap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="analyze one extension spec (JSON file)")
    p.add_argument("spec")
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("catalog", parents=[common], help="run the built-in catalog")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_catalog)
    p = sub.add_parser("marks", parents=[common], help="subgroup lattice and table of marks")
    p.add_argument("group", nargs="+")
    p.set_defaults(func=cmd_marks)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
