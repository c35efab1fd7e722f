"""Recognizing products of simplices: edge classes, affine factorization,
unimodular normalization.

At a vertex of a simple polytope whose 2-faces are triangles or
parallelograms, "spans a triangle" is an equivalence relation on the
incident edges; the classes span the simplex factors. The factorization is
verified by transporting 1-skeleta rather than by computing Minkowski sums,
which localizes any failure sharply.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ConsistencyError, InvalidInput
from .lattice import mat_vec, matrix_inverse_unimodular, primitive, vec_sub
from .polytope import (
    Face,
    Polytope,
    TwoFaceShape,
    classify_two_face,
    is_simple,
    is_smooth,
)


@dataclass(frozen=True)
class EdgeClasses:
    """Partition of the edges at a vertex; edges named by their far endpoint."""

    vertex: int
    classes: tuple  # tuple of sorted tuples of neighbor indices


class FactorStatus(enum.Enum):
    UNIMODULAR_PRODUCT = "UnimodularProduct"
    AFFINE_PRODUCT_ONLY = "AffineProductOnly"
    COMBINATORIAL_ONLY = "CombinatorialOnly"
    NOT_PRODUCT = "NotProduct"


@dataclass(frozen=True)
class SimplexFactorization:
    status: FactorStatus
    factor_dims: tuple          # sorted multiset of factor dimensions
    factors: tuple = ()         # factor faces of P (affine/unimodular routes)
    frame: tuple = None         # (matrix rows, translation) once normalized
    transformed_factors: tuple = ()  # factor simplices in block coordinates


def _spanned_two_face(P: Polytope, p: int, q1: int, q2: int) -> Face:
    F = P.smallest_face_containing((p, q1, q2))
    if F.dim != 2:
        raise ConsistencyError(
            f"edges {p}-{q1} and {p}-{q2} span a face of dimension {F.dim}, not 2"
        )
    return F


def _classes_at(P: Polytope, p: int, neighbors, allowed_shapes) -> tuple:
    """Partition the given incident edges by the triangle relation, checking
    the 2-face shapes and the transitivity the theory promises."""
    for i, q1 in enumerate(neighbors):
        for q2 in neighbors[i + 1 :]:
            shape = classify_two_face(P, _spanned_two_face(P, p, q1, q2))
            if shape not in allowed_shapes:
                raise InvalidInput(
                    f"2-face at vertex {p} spanned by edges to {q1}, {q2} is "
                    f"{shape.value}; the edge relation may fail to be transitive"
                )

    def related(q1, q2):
        return len(_spanned_two_face(P, p, q1, q2).vertex_indices) == 3

    remaining = list(neighbors)
    classes = []
    while remaining:
        seed = remaining.pop(0)
        group = [seed]
        changed = True
        while changed:
            changed = False
            for q in list(remaining):
                if any(related(q, m) for m in group):
                    group.append(q)
                    remaining.remove(q)
                    changed = True
        classes.append(tuple(sorted(group)))
    for group in classes:
        for i, q1 in enumerate(group):
            for q2 in group[i + 1 :]:
                if not related(q1, q2):
                    raise ConsistencyError(
                        f"triangle relation at vertex {p} is not transitive "
                        f"on {q1}, {q2}"
                    )
    return tuple(sorted(classes, key=lambda g: g[0]))


def edge_classes(P: Polytope, p: int) -> EdgeClasses:
    """Equivalence classes of the edges at p under the triangle relation.

    Requires every 2-face at p to be a triangle or parallelogram; anything
    else is refused because the relation need not be transitive there.
    """
    if not is_simple(P):
        raise InvalidInput("edge_classes requires a simple polytope")
    if p < 0 or p >= len(P.vertices):
        raise InvalidInput(f"vertex index {p} out of range")
    classes = _classes_at(
        P,
        p,
        list(P.neighbors[p]),
        {TwoFaceShape.TRIANGLE, TwoFaceShape.PARALLELOGRAM},
    )
    return EdgeClasses(vertex=p, classes=classes)


def _verify_product_split(P, c_set, j_face, origin, coord_index, edge_set):
    """1-skeleton check that the face on c_set times j_face tiles the face
    they span, per the two transport containments."""
    o = P.vertices[origin]
    j_verts = list(j_face.vertex_indices)
    c_verts = sorted(c_set)
    span = set(
        P.smallest_face_containing(tuple(c_set | set(j_verts))).vertex_indices
    )
    image = set()
    phi = {}
    for w in c_verts:
        for u in j_verts:
            pt = tuple(
                a + b - c for a, b, c in zip(P.vertices[w], P.vertices[u], o)
            )
            idx = coord_index.get(pt)
            if idx is None or idx not in span:
                raise ConsistencyError(
                    f"translate of vertex {u} by vertex {w} is not a vertex "
                    "although the 2-face census promised a product"
                )
            phi[(w, u)] = idx
            image.add(idx)
    if len(image) != len(c_verts) * len(j_verts) or image != span:
        raise ConsistencyError("product vertex transport is not bijective")
    # Transport the simplex skeleton across C, then the C-skeleton across J.
    for w in c_verts:
        for i, u1 in enumerate(j_verts):
            for u2 in j_verts[i + 1 :]:
                if frozenset((phi[(w, u1)], phi[(w, u2)])) not in edge_set:
                    raise ConsistencyError(
                        "transported simplex edge is missing from the 1-skeleton"
                    )
    c_edges = [
        (a, b) for a, b in P.edges if a in c_set and b in c_set
    ]
    for u in j_verts:
        for a, b in c_edges:
            if frozenset((phi[(a, u)], phi[(b, u)])) not in edge_set:
                raise ConsistencyError(
                    "transported complement edge is missing from the 1-skeleton"
                )


def affine_factorize(P: Polytope) -> SimplexFactorization:
    """Peel simplex factors off at vertex 0, verifying skeleta as in the
    affine product theorem; falls back to the combinatorial or negative
    verdict when the 2-face census says so."""
    if not is_simple(P):
        raise InvalidInput("affine_factorize requires a simple polytope")
    census = {classify_two_face(P, F) for F in P.faces if F.dim == 2}
    affine_shapes = {TwoFaceShape.TRIANGLE, TwoFaceShape.PARALLELOGRAM}
    comb_shapes = affine_shapes | {TwoFaceShape.OTHER_QUADRILATERAL}
    origin = 0

    if not census <= comb_shapes:
        return SimplexFactorization(status=FactorStatus.NOT_PRODUCT, factor_dims=())

    if not census <= affine_shapes:
        classes = _classes_at(P, origin, list(P.neighbors[origin]), comb_shapes)
        dims = tuple(sorted(len(g) for g in classes))
        return SimplexFactorization(
            status=FactorStatus.COMBINATORIAL_ONLY, factor_dims=dims
        )

    coord_index = {p: i for i, p in enumerate(P.vertices)}
    edge_set = {frozenset(e) for e in P.edges}
    factors = []
    current = set(range(len(P.vertices)))
    while True:
        nbrs = [q for q in P.neighbors[origin] if q in current]
        classes = _classes_at(P, origin, nbrs, affine_shapes)
        current_face = P.smallest_face_containing(tuple(current))
        if len(classes) == 1:
            if len(current) != len(nbrs) + 1:
                raise ConsistencyError(
                    "single edge class but the spanned face is not a simplex"
                )
            factors.append(current_face)
            break
        j_face = P.smallest_face_containing((origin,) + classes[0])
        if len(j_face.vertex_indices) != len(classes[0]) + 1:
            raise ConsistencyError("edge class does not span a simplex face")
        rest = [q for g in classes[1:] for q in g]
        c_face = P.smallest_face_containing((origin,) + tuple(rest))
        c_set = set(c_face.vertex_indices)
        _verify_product_split(P, c_set, j_face, origin, coord_index, edge_set)
        factors.append(j_face)
        current = c_set

    return SimplexFactorization(
        status=FactorStatus.AFFINE_PRODUCT_ONLY,
        factor_dims=tuple(sorted(f.dim for f in factors)),
        factors=tuple(factors),
    )


def unimodular_normalize(P: Polytope, f: SimplexFactorization) -> SimplexFactorization:
    """Send the origin vertex to 0 and its primitive edge directions to the
    standard basis, then verify the vertex set is the coordinate product of
    the factor simplices."""
    if f.status not in (
        FactorStatus.AFFINE_PRODUCT_ONLY,
        FactorStatus.UNIMODULAR_PRODUCT,
    ):
        raise InvalidInput(f"cannot normalize a factorization with status {f.status.value}")
    if not is_smooth(P):
        raise InvalidInput("unimodular_normalize requires a smooth polytope")
    origin = 0
    o = P.vertices[origin]
    blocks = []
    columns = []
    start = 0
    for face in f.factors:
        nbrs = sorted(q for q in face.vertex_indices if q in set(P.neighbors[origin]))
        for q in nbrs:
            columns.append(primitive(vec_sub(P.vertices[q], o)))
        blocks.append((start, start + len(nbrs)))
        start += len(nbrs)
    if start != P.dim:
        raise ConsistencyError("factor edge directions do not span the ambient space")
    # columns[i] should map to e_i: apply the inverse of the column matrix.
    col_matrix = tuple(
        tuple(columns[j][i] for j in range(P.dim)) for i in range(P.dim)
    )
    transform = matrix_inverse_unimodular(col_matrix)
    transformed = [mat_vec(transform, vec_sub(p, o)) for p in P.vertices]

    factor_simplices = []
    for face, (lo, hi) in zip(f.factors, blocks):
        block_verts = []
        for q in face.vertex_indices:
            y = transformed[q]
            if any(y[j] for j in range(P.dim) if not lo <= j < hi):
                raise ConsistencyError(
                    "factor does not lie in its own coordinate block after the "
                    "unimodular transform"
                )
            block_verts.append(tuple(y[lo:hi]))
        factor_simplices.append(tuple(sorted(block_verts)))

    expected = {tuple(0 for _ in range(P.dim))}
    for (lo, hi), simplex_verts in zip(blocks, factor_simplices):
        fresh = set()
        for base in expected:
            for bv in simplex_verts:
                val = list(base)
                val[lo:hi] = bv
                fresh.add(tuple(val))
        expected = fresh
    if expected != set(transformed):
        raise ConsistencyError(
            "transformed vertex set is not the product of the factor simplices"
        )
    return SimplexFactorization(
        status=FactorStatus.UNIMODULAR_PRODUCT,
        factor_dims=f.factor_dims,
        factors=f.factors,
        frame=(transform, o),
        transformed_factors=tuple(factor_simplices),
    )
