"""Command-line front end with stable machine-readable reports.

Every command prints one JSON report: a fixed envelope (command, input
digest, verdicts, version) whose body is fully determined by the inputs, so
repeated runs are byte-identical. Exit codes: 0 for any clean verdict
(falsity is not failure), 2 for input errors, 3 for internal consistency
failures.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .errors import ConsistencyError, InvalidInput
from . import constructions
from .criteria import (
    SWEEP_GOALS,
    classify_stratification,
    cocharacter_sweep,
    gm_convexity,
    orbit_closure_convexity_all,
    order_key,
    stratification_check,
    stratifying_witness,
    well_rounded,
    well_rounded_3d,
)
from .factorization import FactorStatus, affine_factorize, unimodular_normalize
from .flow import bb_decomposition, filtering_order, orbit_graph, require_admissible
from .flowgraph import (
    cells_per_dimension,
    flowgraph_from_json,
    from_orbit_graph,
    is_filterable,
    missing_dimensions,
    numeric_strat_condition,
)
from .polytope import Polytope, build

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _canonical(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _digest(data) -> str:
    return hashlib.sha256(_canonical(data).encode("utf-8")).hexdigest()


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def parse_polytope_json(data) -> Polytope:
    """Parse {"dim": d, "vertices": [[...], ...]}; coordinates may be decimal
    strings when they exceed 64 bits."""
    if not isinstance(data, dict) or "dim" not in data or "vertices" not in data:
        raise InvalidInput('polytope JSON needs keys "dim" and "vertices"')
    try:
        verts = [tuple(int(x) for x in row) for row in data["vertices"]]
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad vertex coordinates: {exc}") from exc
    P = build(verts)
    if P.dim != data["dim"]:
        raise InvalidInput(f'"dim" is {data["dim"]} but vertices live in dimension {P.dim}')
    return P


def _load_polytope(path: str) -> Polytope:
    return parse_polytope_json(_read_json(path))


def _parse_cocharacter(text: str, dim: int) -> tuple:
    try:
        v = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InvalidInput(f"cannot parse cocharacter {text!r}: {exc}") from exc
    if len(v) != dim:
        raise InvalidInput(f"cocharacter {text!r} has {len(v)} coordinates, polytope has {dim}")
    return v


def _face_json(face) -> list:
    return list(face.vertex_indices)


def _emit(report: dict, output) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(command: str, inputs, verdicts: dict) -> dict:
    return {
        "command": command,
        "inputDigest": _digest(inputs),
        "verdicts": verdicts,
        "version": __version__,
    }


def _cmd_construct(args):
    if args.list:
        names = sorted(constructions.FIXTURES) + [
            "simplex --d N",
            "cube --d N",
            "permutahedron --n N",
            "dilate --of FILE --k K",
            "product --of FILE --with FILE",
            "blowup --of FILE --vertex I",
            "pop --of FILE",
        ]
        _emit(_report("construct", {"list": True}, {"available": names}), args.output)
        return EXIT_OK
    name = args.name
    if name is None:
        raise InvalidInput("construct needs --name (or --list)")
    extras = {}
    lowered = name.lower()
    if lowered in {k.lower() for k in constructions.FIXTURES}:
        P = constructions.fixture(name)
    elif lowered == "simplex":
        P = constructions.simplex(_require(args.d, "--d"))
    elif lowered == "cube":
        P = constructions.cube(_require(args.d, "--d"))
    elif lowered == "permutahedron":
        P, _, _ = constructions.permutahedron(_require(args.n, "--n"))
    elif lowered == "dilate":
        P = constructions.dilate(_load_polytope(_require(args.of, "--of")),
                                 _require(args.k, "--k"))
    elif lowered == "product":
        P = constructions.product(
            _load_polytope(_require(args.of, "--of")),
            _load_polytope(_require(args.with_, "--with")),
        )
    elif lowered == "blowup":
        P, factor = constructions.blowup_at_vertex(
            _load_polytope(_require(args.of, "--of")),
            _require(args.vertex, "--vertex"),
        )
        extras["dilationApplied"] = factor
    elif lowered == "pop":
        P = constructions.pop(_load_polytope(_require(args.of, "--of")))
    else:
        raise InvalidInput(f"unknown construction {name!r}; try construct --list")
    body = P.to_json_dict()
    body.update(extras)
    _emit(_report("construct", {"name": name, "args": _construct_args(args)}, body),
          args.output)
    return EXIT_OK


def _construct_args(args) -> dict:
    return {
        k: v
        for k, v in (("d", args.d), ("n", args.n), ("k", args.k),
                     ("of", args.of), ("with", args.with_), ("vertex", args.vertex))
        if v is not None
    }


def _require(value, flag):
    if value is None:
        raise InvalidInput(f"missing required flag {flag}")
    return value


def _cmd_facets(args):
    P = _load_polytope(args.polytope)
    body = {
        "dim": P.dim,
        "facets": [
            {
                "normal": list(a),
                "offset": b,
                "vertexIndices": sorted(
                    i for i, p in enumerate(P.vertices)
                    if sum(x * y for x, y in zip(p, a)) == b
                ),
            }
            for a, b in P.facets
        ],
        "fVector": _f_vector(P),
    }
    _emit(_report("facets", P.to_json_dict(), body), args.output)
    return EXIT_OK


def _f_vector(P) -> list:
    counts = [0] * (P.dim + 1)
    for f in P.faces:
        counts[f.dim] += 1
    return counts


def _cmd_bb(args):
    P = _load_polytope(args.polytope)
    v = _parse_cocharacter(args.v, P.dim)
    require_admissible(P, v)
    dec = bb_decomposition(P, v)
    cells = {}
    for p in range(len(P.vertices)):
        entry = {}
        if args.sign in (None, "+"):
            entry["posFace"] = _face_json(dec.pos_face[p])
            entry["posDim"] = dec.pos_dim[p]
        if args.sign in (None, "-"):
            entry["negFace"] = _face_json(dec.neg_face[p])
            entry["negDim"] = dec.neg_dim[p]
        cells[str(p)] = entry
    body = {
        "v": list(v),
        "orderKey": list(order_key(P, v)),
        "cells": cells,
        "filteringOrder": filtering_order(P, v),
    }
    inputs = {"polytope": P.to_json_dict(), "v": list(v), "sign": args.sign}
    _emit(_report("bb", inputs, body), args.output)
    return EXIT_OK


def _cmd_graph(args):
    P = _load_polytope(args.polytope)
    v = _parse_cocharacter(args.v, P.dim)
    og = orbit_graph(P, v)
    G = from_orbit_graph(og)
    body = G.to_json_dict()
    body["orderKey"] = list(order_key(P, v))
    body["witnesses"] = [
        {"edge": [str(e.src), str(e.dst)], "face": _face_json(e.witness)}
        for e in og.edges
    ]
    inputs = {"polytope": P.to_json_dict(), "v": list(v)}
    _emit(_report("graph", inputs, body), args.output)
    return EXIT_OK


def _cmd_check(args):
    P = _load_polytope(args.polytope)
    v = _parse_cocharacter(args.v, P.dim)
    require_admissible(P, v)
    what = args.what
    if what == "stratify":
        verdict = stratification_check(P, v)
        body = {
            "stratifies": verdict.is_stratification,
            "violations": [dict(rec) for rec in verdict.violations],
        }
    elif what == "convex":
        if args.face:
            E = P.face_of(int(i) for i in args.face.split(","))
            res = gm_convexity(P, E, v)
            body = {"face": _face_json(E), "convex": res.is_convex}
            if res.witness:
                F, up, down = res.witness
                body["witness"] = {"face": _face_json(F), "up": up, "down": down}
        else:
            ok, witness = orbit_closure_convexity_all(P, v)
            body = {"allOrbitClosuresConvex": ok}
            if witness:
                E, (F, up, down) = witness
                body["witness"] = {
                    "closure": _face_json(E),
                    "face": _face_json(F),
                    "up": up,
                    "down": down,
                }
    elif what == "wellrounded":
        ok, violations = well_rounded(P, v)
        body = {
            "wellRounded": ok,
            "violations": {
                str(p): {"face": _face_json(F), "up": up, "down": down}
                for p, (F, up, down) in sorted(violations.items())
            },
        }
    elif what == "wellrounded3d":
        ok, failing = well_rounded_3d(P, v)
        body = {
            "wellRounded": ok,
            "violatingFacets": [_face_json(F) for F in failing],
        }
    else:
        raise InvalidInput(f"unknown check {what!r}")
    body["v"] = list(v)
    body["orderKey"] = list(order_key(P, v))
    inputs = {"polytope": P.to_json_dict(), "v": list(v), "what": what,
              "face": args.face}
    _emit(_report("check", inputs, body), args.output)
    return EXIT_OK


def _cmd_classify(args):
    P = _load_polytope(args.polytope)
    cls = classify_stratification(P)
    body = {
        "twoFaceCensus": {shape.value: n for shape, n in sorted(
            cls.two_face_census.items(), key=lambda kv: kv[0].value)},
        "existentiallyStratified": cls.existentially_stratified,
        "universallyStratified": cls.universally_stratified,
        "isZonotopeLike": cls.is_zonotope_like,
    }
    _emit(_report("classify", P.to_json_dict(), body), args.output)
    return EXIT_OK


def _cmd_sweep(args):
    P = _load_polytope(args.polytope)
    report = cocharacter_sweep(P, args.bound, args.goal)
    body = {
        "bound": report.bound,
        "goal": report.goal,
        "admissibleCount": report.admissible_count,
        "classCount": report.class_count,
        "satisfyingClassCount": len(report.satisfying_classes),
        "classes": [
            {"representative": list(v), "satisfies": hit}
            for v, hit in report.classes
        ],
    }
    inputs = {"polytope": P.to_json_dict(), "bound": args.bound, "goal": args.goal}
    _emit(_report("sweep", inputs, body), args.output)
    return EXIT_OK


def _cmd_factorize(args):
    P = _load_polytope(args.polytope)
    result = affine_factorize(P)
    if result.status is FactorStatus.AFFINE_PRODUCT_ONLY:
        try:
            result = unimodular_normalize(P, result)
        except InvalidInput:
            pass  # not smooth: the affine result stands
    body = {
        "status": result.status.value,
        "factorDims": list(result.factor_dims),
    }
    if result.factors:
        body["factorFaces"] = [_face_json(f) for f in result.factors]
    if result.frame:
        matrix, translation = result.frame
        body["transform"] = {
            "matrix": [list(row) for row in matrix],
            "translation": list(translation),
        }
        body["transformedFactors"] = [
            [list(p) for p in simplex] for simplex in result.transformed_factors
        ]
    _emit(_report("factorize", P.to_json_dict(), body), args.output)
    return EXIT_OK


def _cmd_graph_check(args):
    G = flowgraph_from_json(_read_json(args.graph))
    filterable, witness = is_filterable(G)
    numeric_ok, bad_edges = numeric_strat_condition(G)
    body = {
        "filterable": filterable,
        "numericStratCondition": numeric_ok,
        "violatingEdges": [list(e) for e in bad_edges],
        "cellsPerDimension": {
            str(d): n
            for d, n in cells_per_dimension(G, require_complete=False).items()
        },
        "missingDimensions": missing_dimensions(G),
    }
    if filterable:
        body["topologicalOrder"] = witness
    else:
        body["cycle"] = witness
    _emit(_report("graph-check", G.to_json_dict(), body), args.output)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bbpoly",
        description="Flow decompositions of smooth lattice polytopes: cells, "
        "orbit graphs, stratification and convexity criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit a fixture or generated polytope")
    c.add_argument("--name")
    c.add_argument("--list", action="store_true")
    c.add_argument("--d", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--of")
    c.add_argument("--with", dest="with_")
    c.add_argument("--vertex", type=int)
    c.set_defaults(func=_cmd_construct)

    f = sub.add_parser("facets", help="facet hyperplanes and the f-vector")
    f.add_argument("--polytope", required=True)
    f.set_defaults(func=_cmd_facets)

    b = sub.add_parser("bb", help="per-vertex cell faces and dimensions")
    b.add_argument("--polytope", required=True)
    b.add_argument("--v", required=True)
    b.add_argument("--sign", choices=["+", "-"])
    b.set_defaults(func=_cmd_bb)

    g = sub.add_parser("graph", help="orbit graph as JSON node/edge lists")
    g.add_argument("--polytope", required=True)
    g.add_argument("--v", required=True)
    g.set_defaults(func=_cmd_graph)

    k = sub.add_parser("check", help="stratification / convexity verdicts")
    k.add_argument("--polytope", required=True)
    k.add_argument("--v", required=True)
    k.add_argument(
        "--what",
        required=True,
        choices=["stratify", "convex", "wellrounded", "wellrounded3d"],
    )
    k.add_argument("--face", help="vertex indices i,j,... for --what convex")
    k.set_defaults(func=_cmd_check)

    l = sub.add_parser("classify", help="2-face census and stratification class")
    l.add_argument("--polytope", required=True)
    l.set_defaults(func=_cmd_classify)

    s = sub.add_parser("sweep", help="evaluate a goal over cocharacter classes")
    s.add_argument("--polytope", required=True)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--goal", required=True, choices=list(SWEEP_GOALS))
    s.set_defaults(func=_cmd_sweep)

    z = sub.add_parser("factorize", help="product-of-simplices recognition")
    z.add_argument("--polytope", required=True)
    z.set_defaults(func=_cmd_factorize)

    gc = sub.add_parser("graph-check", help="analyze an abstract flow graph")
    gc.add_argument("--graph", required=True)
    gc.set_defaults(func=_cmd_graph_check)

    for p in (c, f, b, g, k, l, s, z, gc):
        p.add_argument("--output", help="write the report here instead of stdout")

    return parser


def run(argv) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run(sys.argv[1:]))
