"""Exact integer linear algebra: pairings, determinants, lattice frames.

Everything here works on plain Python integers, which are arbitrary
precision, so no computation ever rounds. Vectors are tuples of ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidInput

IntVector = tuple  # tuple[int, ...]; kept loose on purpose


def as_vector(v) -> tuple:
    """Coerce a sequence of integers to the canonical tuple form."""
    out = tuple(v)
    for x in out:
        if not isinstance(x, int) or isinstance(x, bool):
            raise InvalidInput(f"non-integer coordinate {x!r}")
    return out


def pairing(chi, v) -> int:
    """Standard inner product of a character with a cocharacter, exactly."""
    if len(chi) != len(v):
        raise InvalidInput(f"dimension mismatch: {len(chi)} vs {len(v)}")
    return sum(a * b for a, b in zip(chi, v))


def vec_sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(a, k: int) -> tuple:
    return tuple(k * x for x in a)


def vec_neg(a) -> tuple:
    return tuple(-x for x in a)


def content(d) -> int:
    """gcd of the entries, 0 for the zero vector."""
    g = 0
    for x in d:
        g = gcd(g, abs(x))
    return g


def primitive(d) -> tuple:
    """Divide a nonzero vector by the gcd of its entries, keeping orientation."""
    g = content(d)
    if g == 0:
        raise InvalidInput("zero vector has no primitive direction")
    return tuple(x // g for x in d)


def det(rows) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination.

    Bareiss' algorithm: all intermediate entries stay integral, so the result
    is exact for arbitrarily large inputs.
    """
    m = [list(r) for r in rows]
    n = len(m)
    for r in m:
        if len(r) != n:
            raise InvalidInput("determinant requires a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def row_hnf(rows) -> list:
    """Hermite-style echelon basis of the lattice generated by the rows.

    Returns a list of independent rows with strictly increasing pivot
    columns, positive pivots, and entries above each pivot reduced modulo
    it. The rows generate exactly the same sublattice as the input.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis: list = []
    r = 0
    for col in range(ncols):
        pool = [row for row in work if row[col] != 0]
        if not pool:
            continue
        # Euclidean elimination in this column.
        while True:
            pool.sort(key=lambda row: abs(row[col]))
            pivot = pool[0]
            done = True
            for row in pool[1:]:
                q = row[col] // pivot[col]
                for j in range(ncols):
                    row[j] -= q * pivot[j]
                if row[col] != 0:
                    done = False
            pool = [pivot] + [row for row in pool[1:] if row[col] != 0]
            if done and len(pool) == 1:
                break
        if pivot[col] < 0:
            pivot[:] = [-x for x in pivot]
        work = [row for row in work if row is not pivot and any(row)]
        basis.append(pivot)
        r += 1
    # Reduce entries above each pivot.
    for i in range(len(basis)):
        col = next(j for j in range(ncols) if basis[i][j] != 0)
        for k in range(i):
            q = basis[k][col] // basis[i][col]
            if q:
                for j in range(ncols):
                    basis[k][j] -= q * basis[i][j]
    return [tuple(row) for row in basis]


def mat_vec(rows, v) -> tuple:
    return tuple(pairing(row, v) for row in rows)


def matrix_inverse_unimodular(rows) -> tuple:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(rows)
    d = det(rows)
    if d not in (1, -1):
        raise InvalidInput(f"matrix has determinant {d}, not unimodular")
    inv = []
    for i in range(n):
        inv_row = []
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            inv_row.append((-1) ** (i + j) * det(minor) * d)
        inv.append(tuple(inv_row))
    return tuple(inv)


def affine_rank(points) -> int:
    """Dimension of the affine span of a set of integer points."""
    pts = list(points)
    if not pts:
        return -1
    diffs = [vec_sub(p, pts[0]) for p in pts[1:]]
    return len(row_hnf(diffs))


@dataclass(frozen=True)
class AffineFrame:
    """Affine lattice frame: point <-> integer coordinates over a basis.

    ``to_frame`` maps an ambient point into coordinates with respect to
    (origin, basis); the map is bijective onto the affine lattice
    origin + Z<basis>.
    """

    origin: tuple
    basis: tuple  # tuple of basis row vectors

    @property
    def rank(self) -> int:
        return len(self.basis)

    def to_frame(self, point) -> tuple:
        w = list(vec_sub(point, self.origin))
        coords = []
        for row in self.basis:
            col = next(j for j in range(len(row)) if row[j] != 0)
            pivot = row[col]
            if w[col] % pivot != 0:
                raise InvalidInput(f"point {tuple(point)} is not in the frame lattice")
            x = w[col] // pivot
            coords.append(x)
            for j in range(len(w)):
                w[j] -= x * row[j]
        if any(w):
            raise InvalidInput(f"point {tuple(point)} is not in the frame lattice")
        return tuple(coords)

    def from_frame(self, coords) -> tuple:
        if len(coords) != len(self.basis):
            raise InvalidInput("coordinate length does not match frame rank")
        out = list(self.origin)
        for x, row in zip(coords, self.basis):
            for j in range(len(out)):
                out[j] += x * row[j]
        return tuple(out)


def affine_sublattice_parametrization(points) -> AffineFrame:
    """Frame for the affine lattice generated by the given points.

    The origin is the first point; the basis is the Hermite echelon basis of
    the lattice spanned by the differences to it. Every input point gets
    integer coordinates, and the frame map is bijective onto the affine
    lattice the inputs generate.
    """
    pts = [as_vector(p) for p in points]
    if not pts:
        raise InvalidInput("cannot parametrize an empty point set")
    origin = pts[0]
    basis = row_hnf([vec_sub(p, origin) for p in pts[1:]])
    frame = AffineFrame(origin=origin, basis=tuple(basis))
    for p in pts:  # round-trip guard, cheap at our sizes
        frame.to_frame(p)
    return frame
