"""Face lattice of a full-dimensional lattice polytope from its vertex list.

Facets are enumerated by brute force over affinely independent vertex
subsets with exact integer hyperplane tests; the face lattice is then the
closure of the facet vertex sets under intersection. This is O(V^(dim+1))
but exact, dependency-free and fast enough at desk scale (dim <= 6,
V <= ~200).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .errors import InvalidInput
from .lattice import (
    AffineFrame,
    affine_rank,
    affine_sublattice_parametrization,
    as_vector,
    det,
    pairing,
    primitive,
    vec_sub,
)


@dataclass(frozen=True, order=True)
class Face:
    """A face, identified by the sorted tuple of vertex indices lying on it."""

    dim: int
    vertex_indices: tuple

    def __contains__(self, index: int) -> bool:
        return index in self.vertex_indices

    def __len__(self) -> int:
        return len(self.vertex_indices)


class TwoFaceShape(enum.Enum):
    TRIANGLE = "Triangle"
    PARALLELOGRAM = "Parallelogram"
    OTHER_QUADRILATERAL = "OtherQuadrilateral"
    CENTRALLY_SYMMETRIC_POLYGON = "CentrallySymmetricPolygon"
    OTHER = "Other"


class Polytope:
    """Immutable lattice polytope with a fully enumerated face lattice.

    Vertex identity is the positional index into ``vertices``; faces always
    reference indices, never coordinates.
    """

    def __init__(self, vertices, facets, faces):
        self.vertices = vertices            # tuple of coordinate tuples
        self.dim = len(vertices[0])
        self.facets = facets                # tuple of (primitive outer normal, offset)
        self.faces = faces                  # tuple of Face, sorted by (dim, indices)
        self._face_by_key = {frozenset(f.vertex_indices): f for f in faces}
        self._facet_keys = [
            frozenset(i for i, p in enumerate(vertices) if pairing(p, a) == b)
            for a, b in facets
        ]
        self.edges = tuple(f.vertex_indices for f in faces if f.dim == 1)
        nbrs = {i: set() for i in range(len(vertices))}
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        self.neighbors = {i: tuple(sorted(s)) for i, s in nbrs.items()}

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    @property
    def whole(self) -> Face:
        return self.faces[-1]

    def face_of(self, indices) -> Face:
        key = frozenset(indices)
        try:
            return self._face_by_key[key]
        except KeyError:
            raise InvalidInput(f"{sorted(key)} is not the vertex set of a face") from None

    def is_face_set(self, indices) -> bool:
        return frozenset(indices) in self._face_by_key

    def smallest_face_containing(self, indices) -> Face:
        """Intersection of all facets containing the given vertex set."""
        want = set(indices)
        current = None
        for key in self._facet_keys:
            if want <= key:
                current = key if current is None else current & key
        if current is None:
            return self.whole
        return self._face_by_key[frozenset(current)]

    def sub_faces(self, face: Face):
        """All faces contained in ``face`` (including itself)."""
        key = set(face.vertex_indices)
        return [f for f in self.faces if set(f.vertex_indices) <= key]

    def faces_of_dim(self, d: int):
        return [f for f in self.faces if f.dim == d]

    def edge_lattice_length(self, a: int, b: int) -> int:
        from .lattice import content

        return content(vec_sub(self.vertices[b], self.vertices[a]))

    def to_json_dict(self) -> dict:
        def enc(x):
            return x if -(2**63) <= x < 2**63 else str(x)

        return {
            "dim": self.dim,
            "vertices": [[enc(x) for x in v] for v in self.vertices],
        }


def _facet_normal(points):
    """Primitive normal of the hyperplane spanned by dim affinely
    independent points, or None if they do not span one."""
    d = len(points[0])
    diffs = [vec_sub(p, points[0]) for p in points[1:]]
    # Generalized cross product: signed maximal minors of the difference matrix.
    normal = []
    cols = list(range(d))
    for j in range(d):
        minor = [[row[c] for c in cols if c != j] for row in diffs]
        normal.append((-1) ** j * det(minor))
    if not any(normal):
        return None
    return primitive(normal)


def _enumerate_facets(vertices, d):
    facets = []
    seen = set()
    n = len(vertices)
    for subset in combinations(range(n), d):
        pts = [vertices[i] for i in subset]
        normal = _facet_normal(pts)
        if normal is None:
            continue
        offset = pairing(vertices[subset[0]], normal)
        if (normal, offset) in seen or (tuple(-x for x in normal), -offset) in seen:
            continue
        seen.add((normal, offset))
        above = below = False
        for v in vertices:
            s = pairing(v, normal)
            if s > offset:
                above = True
            elif s < offset:
                below = True
            if above and below:
                break
        if above and below:
            continue
        if above:  # flip so the normal points outward
            normal = tuple(-x for x in normal)
            offset = -offset
            seen.add((normal, offset))
        facets.append((normal, offset))
    facets.sort()
    return facets


def build(vertices) -> Polytope:
    """Build a polytope from its (exact, integer) vertex list.

    Exact duplicates are dropped; a listed point that is not a vertex of the
    hull is a hard error rather than being silently removed, since silent
    repair hides fixture bugs. Input order of the remaining points is
    preserved and defines vertex indices.
    """
    raw = [as_vector(p) for p in vertices]
    if not raw:
        raise InvalidInput("empty vertex list")
    d = len(raw[0])
    if d < 1:
        raise InvalidInput("ambient dimension must be positive")
    for p in raw:
        if len(p) != d:
            raise InvalidInput("vertices of mixed dimension")
    deduped = []
    seen = set()
    for p in raw:
        if p not in seen:
            seen.add(p)
            deduped.append(p)
    verts = tuple(deduped)
    if len(verts) < d + 1:
        raise InvalidInput(f"need at least {d + 1} points to span dimension {d}")
    if affine_rank(verts) != d:
        raise InvalidInput("vertices do not span a full-dimensional polytope")

    facets = _enumerate_facets(verts, d)

    facet_keys = [
        frozenset(i for i, p in enumerate(verts) if pairing(p, a) == b)
        for a, b in facets
    ]
    for i, p in enumerate(verts):
        containing = [k for k in facet_keys if i in k]
        meet = set(range(len(verts)))
        for k in containing:
            meet &= k
        if not containing or meet != {i}:
            raise InvalidInput(f"listed point {p} is not a vertex of the hull")

    # Proper faces are exactly the nonempty intersections of facet vertex sets.
    proper = set(facet_keys)
    frontier = set(facet_keys)
    while frontier:
        fresh = set()
        for key in frontier:
            for fk in facet_keys:
                meet = key & fk
                if meet and meet not in proper:
                    fresh.add(meet)
        proper |= fresh
        frontier = fresh

    faces = [Face(dim=d, vertex_indices=tuple(range(len(verts))))]
    for key in proper:
        idx = tuple(sorted(key))
        faces.append(Face(dim=affine_rank([verts[i] for i in idx]), vertex_indices=idx))
    faces.sort()
    return Polytope(vertices=verts, facets=tuple(facets), faces=tuple(faces))


def is_simple(P: Polytope) -> bool:
    """True iff every vertex lies on exactly dim edges."""
    return all(len(P.neighbors[i]) == P.dim for i in range(len(P.vertices)))


def is_smooth(P: Polytope) -> bool:
    """Simple, and the primitive edge directions at each vertex have det +-1."""
    if not is_simple(P):
        return False
    for i in range(len(P.vertices)):
        dirs = [
            primitive(vec_sub(P.vertices[j], P.vertices[i])) for j in P.neighbors[i]
        ]
        if det(dirs) not in (1, -1):
            return False
    return True


def polygon_cycle(P: Polytope, F: Face) -> list:
    """Vertices of a 2-face in cyclic order, starting at the smallest index
    and heading toward its smaller neighbor."""
    if F.dim != 2:
        raise InvalidInput("polygon_cycle needs a 2-dimensional face")
    inside = set(F.vertex_indices)
    adj = {i: [] for i in F.vertex_indices}
    for a, b in P.edges:
        if a in inside and b in inside:
            adj[a].append(b)
            adj[b].append(a)
    start = min(F.vertex_indices)
    if any(len(v) != 2 for v in adj.values()):
        raise InvalidInput("2-face edge graph is not a cycle")
    cycle = [start, min(adj[start])]
    while len(cycle) < len(F.vertex_indices):
        a, b = cycle[-2], cycle[-1]
        cycle.append(adj[b][0] if adj[b][1] == a else adj[b][1])
    return cycle


def classify_two_face(P: Polytope, F: Face) -> TwoFaceShape:
    """Shape census entry for a single 2-face."""
    if F.dim != 2:
        raise InvalidInput("classify_two_face needs a 2-dimensional face")
    k = len(F.vertex_indices)
    if k == 3:
        return TwoFaceShape.TRIANGLE
    cycle = polygon_cycle(P, F)
    pts = [P.vertices[i] for i in cycle]
    if k == 4:
        a, b, c, d = pts
        if vec_sub(b, a) == vec_sub(c, d) and vec_sub(d, a) == vec_sub(c, b):
            return TwoFaceShape.PARALLELOGRAM
        return TwoFaceShape.OTHER_QUADRILATERAL
    if k % 2 == 0:
        # Central symmetry: vertex set invariant under x -> c - x for the
        # vertex centroid c; checked as x + y = 2*sum/k without fractions.
        total = [2 * sum(p[j] for p in pts) for j in range(P.dim)]
        if all(t % k == 0 for t in total):
            target = tuple(t // k for t in total)
            pset = set(pts)
            if all(vec_sub(target, p) in pset for p in pts):
                return TwoFaceShape.CENTRALLY_SYMMETRIC_POLYGON
    return TwoFaceShape.OTHER


class Restriction(NamedTuple):
    """A face re-embedded as a full-dimensional polytope in its own frame.

    ``vertex_map[i]`` is the parent index of the restriction's vertex ``i``;
    ``frame`` converts between parent coordinates and the face frame.
    """

    polytope: Polytope
    vertex_map: tuple
    frame: AffineFrame


def restrict_to_face(P: Polytope, Q: Face) -> Restriction:
    """Re-embed a face of dim >= 1 into the affine lattice its vertices generate."""
    if Q.dim < 1:
        raise InvalidInput("cannot restrict to a vertex")
    parent_indices = tuple(sorted(Q.vertex_indices))
    pts = [P.vertices[i] for i in parent_indices]
    frame = affine_sublattice_parametrization(pts)
    sub = build([frame.to_frame(p) for p in pts])
    return Restriction(polytope=sub, vertex_map=parent_indices, frame=frame)


def induce_cocharacter(restriction: Restriction, v) -> tuple:
    """Cocharacter on a face frame inducing the same vertex pairing order.

    For a point o + sum x_i b_i the ambient pairing is <o,v> + sum x_i <b_i,v>,
    so pairing with (⟨b_i, v⟩)_i in the frame differs from the ambient pairing
    by a constant and induces the identical order.
    """
    return tuple(pairing(b, v) for b in restriction.frame.basis)
