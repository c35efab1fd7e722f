"""Stratification, convexity and well-roundedness verdicts, plus sweeps.

The stratification decision runs four independent routes and insists they
agree; a disagreement is an implementation bug and aborts loudly rather
than producing a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product

from .errors import ConsistencyError, InvalidInput
from .flow import (
    bb_decomposition,
    bb_face,
    face_extrema,
    orbit_graph,
    pairing_values,
    require_admissible,
)
from .polytope import Face, Polytope, TwoFaceShape, classify_two_face, is_smooth


@dataclass(frozen=True)
class StratVerdict:
    is_stratification: bool
    violations: tuple  # of dicts, each independently re-checkable

    def by_kind(self, kind: str):
        return [v for v in self.violations if v["kind"] == kind]


def _two_face_orientation_violation(P, F, values):
    """None if the 2-face is stratified by the induced order, else a reason.

    A triangle always is; a quadrilateral is iff its extrema are opposite;
    a polygon with five or more vertices never is.
    """
    if len(F.vertex_indices) == 3:
        return None
    up, down = face_extrema(P, F, None, values)
    if len(F.vertex_indices) >= 5:
        return "polygon-with-at-least-5-vertices"
    if P.is_face_set((up, down)):
        return "quadrilateral-with-adjacent-extrema"
    return None


def stratification_check(P: Polytope, v) -> StratVerdict:
    """Decide stratification via four cross-checked routes.

    (a) cell-face containment over vertex pairs, (b) strict cell dimension
    increase along directed edges, (c) the dimension-sum inequality on orbit
    graph edges, (d) the per-2-face orientation test. All four must agree.
    """
    v = require_admissible(P, v)
    if not is_smooth(P):
        raise InvalidInput("stratification_check requires a smooth polytope")
    values = pairing_values(P, v)
    dec = bb_decomposition(P, v)
    nverts = len(P.vertices)

    violations = []

    # (a) p in P_q^+ must imply P_p^+ contained in P_q^+.
    a_ok = True
    pos_sets = {p: set(dec.pos_face[p].vertex_indices) for p in range(nverts)}
    for q in range(nverts):
        for p in pos_sets[q]:
            if p != q and not pos_sets[p] <= pos_sets[q]:
                a_ok = False
                violations.append({"kind": "FaceContainment", "p": p, "q": q})

    # (b) posDim strictly increases along every directed edge.
    b_ok = True
    for a, b in P.edges:
        p, q = (a, b) if values[a] < values[b] else (b, a)
        if dec.pos_dim[p] >= dec.pos_dim[q]:
            b_ok = False
            violations.append(
                {
                    "kind": "DimMonotone",
                    "edge": [p, q],
                    "posDims": [dec.pos_dim[p], dec.pos_dim[q]],
                }
            )

    # (c) negDim(p) + posDim(q) > dim on every orbit-graph edge.
    c_ok = True
    for e in orbit_graph(P, v).edges:
        total = dec.neg_dim[e.src] + dec.pos_dim[e.dst]
        if total <= P.dim:
            c_ok = False
            violations.append(
                {
                    "kind": "DimSum",
                    "edge": [e.src, e.dst],
                    "negDimP": dec.neg_dim[e.src],
                    "posDimQ": dec.pos_dim[e.dst],
                }
            )

    # (d) every 2-face must be stratified by the induced vertex order.
    d_ok = True
    for F in P.faces:
        if F.dim != 2:
            continue
        reason = _two_face_orientation_violation(P, F, values)
        if reason is not None:
            d_ok = False
            violations.append(
                {
                    "kind": "TwoFaceOrientation",
                    "face": list(F.vertex_indices),
                    "orientation": reason,
                }
            )

    if len({a_ok, b_ok, c_ok, d_ok}) != 1:
        raise ConsistencyError(
            f"stratification routes disagree: containment={a_ok} "
            f"edge-monotone={b_ok} dim-sum={c_ok} two-face={d_ok} for v={v}"
        )
    violations.sort(key=lambda r: (r["kind"], str(r)))
    return StratVerdict(is_stratification=a_ok, violations=tuple(violations))


@dataclass(frozen=True)
class PolytopeClass:
    two_face_census: dict  # TwoFaceShape -> count
    existentially_stratified: bool
    universally_stratified: bool
    is_zonotope_like: bool


def classify_stratification(P: Polytope) -> PolytopeClass:
    """Census of 2-face shapes and the flags it determines."""
    if not is_smooth(P):
        raise InvalidInput("classify_stratification requires a smooth polytope")
    census = {shape: 0 for shape in TwoFaceShape}
    for F in P.faces:
        if F.dim == 2:
            census[classify_two_face(P, F)] += 1
    good_quads = {
        TwoFaceShape.TRIANGLE,
        TwoFaceShape.PARALLELOGRAM,
        TwoFaceShape.OTHER_QUADRILATERAL,
    }
    present = {shape for shape, n in census.items() if n}
    return PolytopeClass(
        two_face_census={shape: n for shape, n in census.items() if n},
        existentially_stratified=present <= good_quads,
        universally_stratified=present
        <= {TwoFaceShape.TRIANGLE, TwoFaceShape.PARALLELOGRAM},
        is_zonotope_like=present
        <= {TwoFaceShape.PARALLELOGRAM, TwoFaceShape.CENTRALLY_SYMMETRIC_POLYGON},
    )


@dataclass(frozen=True)
class ConvexityVerdict:
    is_convex: bool
    witness: tuple = None  # (face, up, down) of the first violating face


def gm_convexity(P: Polytope, E: Face, v, values=None) -> ConvexityVerdict:
    """A face E is convex for the flow iff every face whose extrema lie in E
    is contained in E. Witness is the lowest-dimensional, then
    lexicographically first, violating face."""
    if values is None:
        v = require_admissible(P, v)
        values = pairing_values(P, v)
    inside = set(E.vertex_indices)
    for F in P.faces:  # canonical (dim, indices) order
        if F.dim < 1:
            continue  # a vertex face can never violate
        up, down = face_extrema(P, F, None, values)
        if up in inside and down in inside and not set(F.vertex_indices) <= inside:
            return ConvexityVerdict(is_convex=False, witness=(F, up, down))
    return ConvexityVerdict(is_convex=True)


def well_rounded(P: Polytope, v):
    """Convexity of every positive cell face; returns (ok, per-vertex witnesses)."""
    v = require_admissible(P, v)
    values = pairing_values(P, v)
    violations = {}
    for p in range(len(P.vertices)):
        verdict = gm_convexity(P, bb_face(P, p, v, "+"), v, values)
        if not verdict.is_convex:
            violations[p] = verdict.witness
    return not violations, violations


def well_rounded_3d(P: Polytope, v):
    """Facet-by-facet well-roundedness test, valid only in dimension 3.

    A facet passes when its maximizer is the global one, or its extrema are
    not adjacent, or the edge joining them lies on a second facet containing
    the global maximizer. Cross-checked against the direct definition.
    """
    if P.dim != 3:
        raise InvalidInput("well_rounded_3d applies only to 3-polytopes")
    if not is_smooth(P):
        raise InvalidInput("well_rounded_3d requires a smooth polytope")
    v = require_admissible(P, v)
    values = pairing_values(P, v)
    top = max(range(len(P.vertices)), key=lambda i: values[i])
    failing = []
    for F in P.faces:
        if F.dim != P.dim - 1:
            continue
        up, down = face_extrema(P, F, None, values)
        if up == top:
            continue
        if not P.is_face_set((up, down)):
            continue
        face_key = set(F.vertex_indices)
        second = [
            G
            for G in P.faces
            if G.dim == P.dim - 1
            and set(G.vertex_indices) != face_key
            and up in G
            and down in G
        ]
        if any(top in G for G in second):
            continue
        failing.append(F)
    ok = not failing
    if ok != well_rounded(P, v)[0]:
        raise ConsistencyError(
            f"3d facet test and direct well-roundedness disagree for v={tuple(v)}"
        )
    return ok, failing


def orbit_closure_convexity_all(P: Polytope, v):
    """Convexity of every face's flow closure, not only the cell faces."""
    v = require_admissible(P, v)
    values = pairing_values(P, v)
    for E in P.faces:
        verdict = gm_convexity(P, E, v, values)
        if not verdict.is_convex:
            return False, (E, verdict.witness)
    return True, None


def order_key(P: Polytope, v) -> tuple:
    """Rank tuple of the vertex pairing values, ties included.

    Two admissible cocharacters with equal keys induce identical
    decompositions, so the key indexes behavior classes exhaustively.
    """
    values = pairing_values(P, v)
    ranks = {val: r for r, val in enumerate(sorted(set(values)))}
    return tuple(ranks[x] for x in values)


SWEEP_GOALS = ("wellrounded", "notwellrounded", "stratifies")


def _goal_predicate(P, v, goal):
    if goal == "wellrounded":
        return well_rounded(P, v)[0]
    if goal == "notwellrounded":
        return not well_rounded(P, v)[0]
    if goal == "stratifies":
        return stratification_check(P, v).is_stratification
    raise InvalidInput(f"unknown sweep goal {goal!r}; known: {', '.join(SWEEP_GOALS)}")


@dataclass(frozen=True)
class SweepReport:
    bound: int
    goal: str
    admissible_count: int
    class_count: int
    satisfying_classes: tuple  # representatives
    classes: tuple = field(repr=False)  # (representative, satisfies) pairs


def enumerate_cocharacters(dim: int, bound: int):
    """All nonzero integer vectors with coordinates in [-bound, bound],
    in lexicographic order."""
    for v in iter_product(range(-bound, bound + 1), repeat=dim):
        if any(v):
            yield v


def cocharacter_sweep(P: Polytope, bound: int, goal: str) -> SweepReport:
    """Evaluate a goal on one representative per realized behavior class.

    Exhaustive over the behaviors realized within the bound; behaviors
    requiring larger coordinates may be missed, so reports always carry the
    bound and the class count.
    """
    if bound < 1:
        raise InvalidInput("sweep bound must be >= 1")
    if goal not in SWEEP_GOALS:
        raise InvalidInput(f"unknown sweep goal {goal!r}; known: {', '.join(SWEEP_GOALS)}")
    from .flow import is_admissible

    admissible = 0
    reps = {}
    for v in enumerate_cocharacters(P.dim, bound):
        ok, _ = is_admissible(P, v)
        if not ok:
            continue
        admissible += 1
        key = order_key(P, v)
        if key not in reps:
            reps[key] = v
    classes = []
    satisfying = []
    for key, v in reps.items():
        hit = _goal_predicate(P, v, goal)
        classes.append((v, hit))
        if hit:
            satisfying.append(v)
    return SweepReport(
        bound=bound,
        goal=goal,
        admissible_count=admissible,
        class_count=len(classes),
        satisfying_classes=tuple(satisfying),
        classes=tuple(classes),
    )


@dataclass(frozen=True)
class WitnessReport:
    witness: tuple = None
    certified_absent: bool = False
    bound: int = 0


def stratifying_witness(P: Polytope, bound: int) -> WitnessReport:
    """First admissible cocharacter (in sweep enumeration order) that
    stratifies, if any within the bound.

    Absence is a certificate of non-existence only when the 2-face census
    already rules stratification out; otherwise larger cocharacters might
    still work.
    """
    if bound < 1:
        raise InvalidInput("witness search bound must be >= 1")
    from .flow import is_admissible

    seen = set()
    for v in enumerate_cocharacters(P.dim, bound):
        ok, _ = is_admissible(P, v)
        if not ok:
            continue
        key = order_key(P, v)
        if key in seen:
            continue
        seen.add(key)
        if stratification_check(P, v).is_stratification:
            return WitnessReport(witness=v, certified_absent=False, bound=bound)
    certified = not classify_stratification(P).existentially_stratified
    return WitnessReport(witness=None, certified_absent=certified, bound=bound)
