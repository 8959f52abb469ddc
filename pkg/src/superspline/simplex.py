"""Reference n-simplex: face lattice, interior domain points and
off-face direction vectors.

Vertex 0 sits at the origin and vertex i (1 <= i <= n) at the i-th unit
point, so barycentric coordinates are (1 - sum(x), x_1, ..., x_n).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

__all__ = [
    "Face",
    "BaryPoint",
    "faces",
    "all_proper_faces",
    "domain_point",
    "normal_directions",
    "bary_direction",
]


@dataclass(frozen=True, order=True)
class Face:
    """A sub-simplex of the reference n-simplex, given by its vertex labels."""

    ambient_dim: int
    vertices: tuple

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("a face needs at least one vertex")
        if any(b <= a for a, b in zip(verts, verts[1:])):
            raise ValueError(f"face vertices must be strictly increasing: {verts}")
        if verts[0] < 0 or verts[-1] > self.ambient_dim:
            raise ValueError(f"face vertices {verts} out of range for n={self.ambient_dim}")

    @property
    def dim(self):
        return len(self.vertices) - 1

    @property
    def off_vertices(self):
        return tuple(v for v in range(self.ambient_dim + 1) if v not in self.vertices)

    def is_full(self):
        return self.dim == self.ambient_dim

    def subfaces(self, d):
        """All d-dimensional faces of this face."""
        return [Face(self.ambient_dim, c) for c in combinations(self.vertices, d + 1)]

    def __str__(self):
        return "{" + ",".join(map(str, self.vertices)) + "}"


@dataclass(frozen=True)
class BaryPoint:
    """Exact barycentric point on the reference simplex."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if sum(coords) != 1:
            raise ValueError(f"barycentric coordinates must sum to 1: {coords}")
        if any(c < 0 for c in coords):
            raise ValueError(f"barycentric coordinates must be nonnegative: {coords}")

    @property
    def support(self):
        return tuple(i for i, c in enumerate(self.coords) if c != 0)

    def cartesian(self):
        """Reference coordinates (x_1, ..., x_n)."""
        return self.coords[1:]

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def faces(n, d):
    """All faces of dimension ``d`` of the reference ``n``-simplex, in
    lexicographic order of their vertex sets."""
    if n < 0 or d < 0:
        raise ValueError("dimensions must be nonnegative")
    if d > n:
        raise ValueError(f"face dimension {d} exceeds ambient dimension {n}")
    return [Face(n, c) for c in combinations(range(n + 1), d + 1)]


def all_proper_faces(n):
    """Proper faces ordered by dimension, then lexicographically."""
    return [f for d in range(n) for f in faces(n, d)]


def domain_point(alpha_on_face, face, effective_degree):
    """Barycentric point with weight ``alpha_i / effective_degree`` on each
    face vertex. Every entry must be positive so the point is interior."""
    alpha_on_face = tuple(alpha_on_face)
    if len(alpha_on_face) != len(face.vertices):
        raise ValueError("alpha_on_face must have one entry per face vertex")
    if effective_degree <= 0:
        raise ValueError("effective_degree must be positive")
    if sum(alpha_on_face) != effective_degree:
        raise ValueError(
            f"entries {alpha_on_face} do not sum to effective degree {effective_degree}"
        )
    if any(a <= 0 for a in alpha_on_face):
        raise ValueError(f"point {alpha_on_face} is not interior to face {face}")
    coords = [Fraction(0)] * (face.ambient_dim + 1)
    for v, a in zip(face.vertices, alpha_on_face):
        coords[v] = Fraction(a, effective_degree)
    return BaryPoint(tuple(coords))


def _vertex_coords(n, v):
    return tuple(1 if i == v else 0 for i in range(1, n + 1))


def normal_directions(face, n=None):
    """Vectors from the lowest-labelled face vertex to each off-face vertex,
    in reference coordinates, ordered by off-face vertex label."""
    if n is None:
        n = face.ambient_dim
    if n != face.ambient_dim:
        raise ValueError("face does not live in dimension n")
    if face.is_full():
        raise ValueError("the full simplex has no off-face directions")
    anchor = _vertex_coords(n, face.vertices[0])
    out = []
    for w in face.off_vertices:
        target = _vertex_coords(n, w)
        out.append(tuple(t - a for t, a in zip(target, anchor)))
    return out


def bary_direction(vector):
    """Barycentric form (entries summing to 0) of a reference-coordinate
    direction vector."""
    vector = tuple(Fraction(c) for c in vector)
    return (-sum(vector),) + vector
