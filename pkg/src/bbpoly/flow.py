"""Flow data of an admissible cocharacter on a polytope.

For an admissible v (not perpendicular to any edge), every face has a unique
pairing maximizer and minimizer. The positive cell face of a vertex is
computed constructively as the span of its incoming edges and is verified
post hoc to have the vertex as maximizer; the definitional characterization
(unique maximal face with that maximizer) is cross-checked by the test
suite, so the two routes of the theory stay in agreement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, InadmissibleCocharacter, InvalidInput
from .lattice import pairing, vec_sub
from .polytope import Face, Polytope


def is_admissible(P: Polytope, v):
    """True iff no edge pairs to zero with v; else (False, offending edge)."""
    if len(v) != P.dim:
        raise InvalidInput(f"cocharacter has dimension {len(v)}, polytope {P.dim}")
    for a, b in P.edges:
        if pairing(vec_sub(P.vertices[b], P.vertices[a]), v) == 0:
            return False, (a, b)
    return True, None


def require_admissible(P: Polytope, v) -> tuple:
    ok, edge = is_admissible(P, v)
    if not ok:
        raise InadmissibleCocharacter(edge, v)
    return tuple(v)


def pairing_values(P: Polytope, v) -> tuple:
    return tuple(pairing(p, v) for p in P.vertices)


def face_extrema(P: Polytope, F: Face, v, values=None):
    """(maximizer, minimizer) of <.,v> among the vertices of F.

    Uniqueness of each is guaranteed by admissibility; a tie means v was not
    admissible for this polytope.
    """
    if values is None:
        require_admissible(P, v)
        values = pairing_values(P, v)
    up = down = F.vertex_indices[0]
    for i in F.vertex_indices[1:]:
        if values[i] > values[up]:
            up = i
        elif values[i] < values[down]:
            down = i
    ups = [i for i in F.vertex_indices if values[i] == values[up]]
    downs = [i for i in F.vertex_indices if values[i] == values[down]]
    if len(ups) != 1 or len(downs) != 1:
        raise InvalidInput("non-unique face extremum: cocharacter not admissible")
    return up, down


def bb_face(P: Polytope, p: int, v, sign: str = "+") -> Face:
    """Cell face of a vertex: span of p and its incoming edges (sign '+'),
    or of its outgoing edges (sign '-')."""
    v = require_admissible(P, v)
    if sign not in ("+", "-"):
        raise InvalidInput(f"sign must be '+' or '-', got {sign!r}")
    values = pairing_values(P, v)
    if sign == "+":
        below = [q for q in P.neighbors[p] if values[q] < values[p]]
    else:
        below = [q for q in P.neighbors[p] if values[q] > values[p]]
    face = P.smallest_face_containing([p] + below)
    up, down = face_extrema(P, face, v, values)
    anchor = up if sign == "+" else down
    if anchor != p:
        raise ConsistencyError(
            f"cell face of vertex {p} has extremum {anchor}; polytope is not simple at {p}"
        )
    return face


def bb_dims(P: Polytope, v) -> dict:
    """Per-vertex (posDim, negDim) by incoming/outgoing edge counts.

    Cross-checked against the dimension of the constructed cell faces; a
    mismatch means the polytope is not simple and the edge-count formula
    does not apply.
    """
    v = require_admissible(P, v)
    values = pairing_values(P, v)
    dims = {}
    for p in range(len(P.vertices)):
        pos = sum(1 for q in P.neighbors[p] if values[q] < values[p])
        neg = len(P.neighbors[p]) - pos
        if bb_face(P, p, v, "+").dim != pos or bb_face(P, p, v, "-").dim != neg:
            raise ConsistencyError(
                f"edge count and cell-face dimension disagree at vertex {p}"
            )
        dims[p] = (pos, neg)
    return dims


@dataclass(frozen=True)
class BBDecomposition:
    """Positive and negative cell faces and dimensions for a fixed v."""

    v: tuple
    pos_face: dict  # vertex -> Face
    neg_face: dict
    pos_dim: dict
    neg_dim: dict


def bb_decomposition(P: Polytope, v) -> BBDecomposition:
    v = require_admissible(P, v)
    dims = bb_dims(P, v)
    pos = {p: bb_face(P, p, v, "+") for p in range(len(P.vertices))}
    neg = {p: bb_face(P, p, v, "-") for p in range(len(P.vertices))}
    return BBDecomposition(
        v=v,
        pos_face=pos,
        neg_face=neg,
        pos_dim={p: d[0] for p, d in dims.items()},
        neg_dim={p: d[1] for p, d in dims.items()},
    )


@dataclass(frozen=True)
class FlowEdge:
    src: int
    dst: int
    witness: Face


@dataclass(frozen=True)
class OrbitGraph:
    """Directed graph on the vertices: one edge per (minimizer, maximizer)
    pair of a positive-dimensional face, with a smallest witness face."""

    dim: int
    node_dims: dict   # vertex -> (posDim, negDim)
    edges: tuple      # FlowEdge, sorted by (src, dst)

    def edge_pairs(self):
        return [(e.src, e.dst) for e in self.edges]


def orbit_graph(P: Polytope, v) -> OrbitGraph:
    """Flow graph of the polytope under v; acyclic since every edge strictly
    increases the pairing."""
    v = require_admissible(P, v)
    values = pairing_values(P, v)
    best = {}
    for F in P.faces:
        if F.dim < 1:
            continue
        up, down = face_extrema(P, F, v, values)
        key = (down, up)
        cur = best.get(key)
        if cur is None or (F.dim, F.vertex_indices) < (cur.dim, cur.vertex_indices):
            best[key] = F
    edges = tuple(
        FlowEdge(src=s, dst=t, witness=best[(s, t)]) for s, t in sorted(best)
    )
    return OrbitGraph(dim=P.dim, node_dims=bb_dims(P, v), edges=edges)


def filtering_order(P: Polytope, v) -> list:
    """Vertices by ascending pairing value, ties by index; verified to be a
    linear extension of orbit-graph reachability."""
    v = require_admissible(P, v)
    values = pairing_values(P, v)
    order = sorted(range(len(P.vertices)), key=lambda i: (values[i], i))
    position = {p: k for k, p in enumerate(order)}
    for e in orbit_graph(P, v).edges:
        if position[e.src] >= position[e.dst]:
            raise ConsistencyError(
                f"filtering order violates reachability on edge {e.src}->{e.dst}"
            )
    return order
