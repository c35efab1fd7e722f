"""Generators and pinned fixtures for the polytopes used across the suite.

Fixtures are literal vertex lists, never regenerated at runtime, so paper
examples stay bit-exact. Generators (products, truncations, permutahedra)
are deterministic in vertex order.
"""

from __future__ import annotations

from itertools import permutations

from .errors import ConsistencyError, InvalidInput
from .lattice import affine_sublattice_parametrization, primitive, vec_add, vec_scale, vec_sub
from .polytope import Polytope, build, is_smooth

# Triangular prism of the worked non-convex example; vertices G,H,I,J,K,L.
PRISM714 = (
    (1, 0, 0),
    (0, 0, 0),
    (0, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
    (0, 0, 2),
)

# Same prism with the top vertex raised to (0,0,5).
PRISM_TALL = (
    (1, 0, 0),
    (0, 0, 0),
    (0, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
    (0, 0, 5),
)

# Blowup of the 3-simplex (dilated by 3) at two of its vertices.
TWICE_BLOWN_P3 = (
    (0, 0, 0),
    (2, 0, 0),
    (0, 0, 2),
    (2, 1, 0),
    (2, 0, 1),
    (0, 3, 0),
    (1, 0, 2),
    (0, 1, 2),
)

# Simultaneous truncation of all four vertices of the 3-simplex dilated by 3.
POP_SIMPLEX3 = (
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (2, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (0, 2, 0),
    (1, 2, 0),
    (0, 2, 1),
    (0, 0, 2),
    (1, 0, 2),
    (0, 1, 2),
)

# Smooth pentagon: the square of side 2 truncated at the origin corner.
PENTAGON2D = (
    (1, 0),
    (2, 0),
    (2, 2),
    (0, 2),
    (0, 1),
)

FIXTURES = {
    "Prism714": PRISM714,
    "PrismTall": PRISM_TALL,
    "TwiceBlownP3": TWICE_BLOWN_P3,
    "PopSimplex3": POP_SIMPLEX3,
    "Pentagon2D": PENTAGON2D,
}


def fixture(name: str) -> Polytope:
    for key, verts in FIXTURES.items():
        if key.lower() == name.lower():
            return build(verts)
    raise InvalidInput(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")


def simplex(d: int) -> Polytope:
    """Convex hull of the origin and the standard basis vectors."""
    if d < 1:
        raise InvalidInput("simplex dimension must be >= 1")
    verts = [tuple(0 for _ in range(d))]
    for i in range(d):
        verts.append(tuple(1 if j == i else 0 for j in range(d)))
    return build(verts)


def cube(d: int) -> Polytope:
    """Unit cube, as the product of d unit segments."""
    P = simplex(1)
    for _ in range(d - 1):
        P = product(P, simplex(1))
    return P


def product(P: Polytope, Q: Polytope) -> Polytope:
    """Cartesian product; vertex (i, j) of the factors gets index i*|Q|+j."""
    verts = [p + q for p in P.vertices for q in Q.vertices]
    return build(verts)


def product_vertex_index(P: Polytope, Q: Polytope, i: int, j: int) -> int:
    return i * len(Q.vertices) + j


def dilate(P: Polytope, k: int) -> Polytope:
    """Scale every vertex by a positive integer; combinatorics unchanged."""
    if k < 1:
        raise InvalidInput("dilation factor must be >= 1")
    return build([vec_scale(v, k) for v in P.vertices])


def _truncation_points(P: Polytope, p: int):
    """Lattice points at lattice distance 1 from vertex p along its edges."""
    base = P.vertices[p]
    return [vec_add(base, primitive(vec_sub(P.vertices[q], base))) for q in P.neighbors[p]]


def blowup_at_vertex(P: Polytope, p: int):
    """Truncate a smooth polytope at one vertex, auto-dilating if needed.

    The cutting hyperplane passes through the nearest lattice point to p on
    each incident edge. When an incident edge has lattice length 1 the
    truncation would be degenerate, so the polytope is first dilated by the
    minimal factor making every incident edge length >= 2. Returns
    (polytope, dilation_factor).
    """
    if p < 0 or p >= len(P.vertices):
        raise InvalidInput(f"vertex index {p} out of range")
    if not is_smooth(P):
        raise InvalidInput("blowup requires a smooth polytope")
    factor = 1
    for q in P.neighbors[p]:
        if P.edge_lattice_length(p, q) < 2:
            factor = 2
            break
    Q = dilate(P, factor) if factor > 1 else P
    verts = [v for i, v in enumerate(Q.vertices) if i != p]
    verts.extend(_truncation_points(Q, p))
    R = build(verts)
    if len(R.vertices) != len(P.vertices) - 1 + P.dim or not is_smooth(R):
        raise ConsistencyError("truncation did not produce a smooth vertex blowup")
    return R, factor


def pop(P: Polytope) -> Polytope:
    """Truncate every vertex of a smooth polytope simultaneously.

    One global dilation factor is used: the maximum of the per-vertex
    factors, plus 1 if any two truncation hyperplanes would touch (an edge of
    dilated lattice length exactly 2 would make opposite cut points collide).
    """
    if not is_smooth(P):
        raise InvalidInput("pop requires a smooth polytope")
    factor = 1
    for a, b in P.edges:
        if P.edge_lattice_length(a, b) < 2:
            factor = 2
            break
    if any(factor * P.edge_lattice_length(a, b) == 2 for a, b in P.edges):
        factor += 1
    Q = dilate(P, factor) if factor > 1 else P
    verts = []
    for p in range(len(Q.vertices)):
        verts.extend(_truncation_points(Q, p))
    R = build(verts)
    if len(R.vertices) != P.dim * len(P.vertices) or not is_smooth(R):
        raise ConsistencyError("pop did not produce a smooth full truncation")
    return R


def permutation_vertex(sigma) -> tuple:
    """Ambient coordinates of the permutahedron vertex of a permutation.

    ``sigma`` is one-line notation on 0..n; the vertex is sigma acting on
    (0, 1, ..., n), i.e. coordinate k equals sigma^{-1}(k).
    """
    n = len(sigma)
    out = [0] * n
    for pos, val in enumerate(sigma):
        out[val] = pos
    return tuple(out)


def permutahedron(n: int):
    """Permutahedron on 0..n, re-embedded full-dimensionally.

    Returns (polytope, frame, order): vertex i of the polytope is the
    permutation ``order[i]`` (one-line tuples in lexicographic order), and
    ``frame`` maps ambient (n+1)-space points into the polytope's lattice.
    """
    if n < 1:
        raise InvalidInput("permutahedron needs n >= 1")
    order = tuple(permutations(range(n + 1)))
    raw = [permutation_vertex(sigma) for sigma in order]
    frame = affine_sublattice_parametrization(raw)
    P = build([frame.to_frame(p) for p in raw])
    return P, frame, order
