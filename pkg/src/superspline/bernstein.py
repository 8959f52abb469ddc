"""Bernstein indices, distance to faces, smoothness profiles and the
partition of all degree-k indices among the faces of the simplex.

An index is a plain tuple of n+1 nonnegative ints; its degree is its sum.
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .combinatorics import poly_dim
from .simplex import Face, all_proper_faces, faces

__all__ = [
    "SmoothnessProfile",
    "Ownership",
    "PartitionReport",
    "UnsupportedDimension",
    "enumerate_indices",
    "index_array",
    "face_distance",
    "family_profile",
    "classify",
    "classify_array",
    "partition",
    "layer_counts",
]

MAX_FAMILY_DIM = 5


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class SmoothnessProfile:
    """Continuity order ``orders[d]`` across shared d-faces, for degree ``degree``."""

    ambient_dim: int
    orders: tuple
    degree: int

    def __post_init__(self):
        orders = tuple(int(r) for r in self.orders)
        object.__setattr__(self, "orders", orders)
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        if len(orders) != self.ambient_dim:
            raise ValueError(
                f"profile needs {self.ambient_dim} orders (one per face dimension "
                f"0..{self.ambient_dim - 1}), got {len(orders)}"
            )
        if any(r < 0 for r in orders):
            raise ValueError("continuity orders must be nonnegative")
        if any(b >= a for a, b in zip(orders, orders[1:])):
            raise ValueError(f"orders must be strictly decreasing: {orders}")
        if self.degree < 2 * orders[0] + 1:
            raise ValueError(
                f"degree {self.degree} < 2*r_0 + 1 = {2 * orders[0] + 1}"
            )

    @property
    def n(self):
        return self.ambient_dim

    @property
    def k(self):
        return self.degree

    def smoothness(self):
        """The global smoothness m, i.e. the order across facets."""
        return self.orders[-1]

    def is_family(self):
        n, m = self.ambient_dim, self.orders[-1]
        if m < 1 or n > MAX_FAMILY_DIM:
            return False
        return self == family_profile(n, m)

    def label(self):
        return f"n={self.ambient_dim} k={self.degree} r={list(self.orders)}"


@dataclass(frozen=True)
class Ownership:
    owner: Face
    order: int


@dataclass
class PartitionReport:
    profile: SmoothnessProfile
    per_face_order_counts: dict  # (Face, order) -> int
    per_dim_totals: list
    grand_total: int

    def face_counts(self, face):
        """Order -> count for one face."""
        return {
            t: c for (f, t), c in sorted(self.per_face_order_counts.items()) if f == face
        }

    def per_face_totals(self, d):
        return [
            sum(self.face_counts(f).values()) for f in faces(self.profile.n, d)
        ]

    def uniform_face_counts(self, d):
        """Order -> per-face count if every d-face has the same table, else None."""
        tables = [self.face_counts(f) for f in faces(self.profile.n, d)]
        first = tables[0]
        return first if all(t == first for t in tables) else None


def enumerate_indices(n, k):
    """All Bernstein indices of degree k on the n-simplex, lexicographic."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return [tuple(int(v) for v in row) for row in index_array(n, k)]


@lru_cache(maxsize=None)
def _small_compositions(parts, total):
    if parts == 1:
        return np.array([[total]], dtype=np.int16)
    return _stack(parts, total, _small_compositions)


def _stack(parts, total, sub):
    blocks = []
    for first in range(total + 1):
        rest = sub(parts - 1, total - first)
        head = np.full((len(rest), 1), first, dtype=np.int16)
        blocks.append(np.hstack([head, rest]))
    return np.vstack(blocks)


def _compositions(parts, total):
    # only blocks of <= 4 parts are cached; wider ones are rebuilt on demand
    if parts <= 4:
        return _small_compositions(parts, total)
    return _stack(parts, total, _compositions)


def index_array(n, k):
    """Degree-k indices as an int16 array of shape (C(n+k, n), n+1)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if n + 1 > 12 or k > 10_000:
        raise ValueError("index array too large")
    return _compositions(n + 1, k).copy()


def face_distance(alpha, face):
    """Sum of the entries of ``alpha`` off the face's vertices."""
    if len(alpha) != face.ambient_dim + 1:
        raise ValueError("index and face have different dimensions")
    on = set(face.vertices)
    return sum(a for i, a in enumerate(alpha) if i not in on)


def family_profile(n, m):
    """Profile of the C^m element on n-simplices: r_d = 2^(n-1-d) m,
    degree 2^n m + 1."""
    if not 1 <= n <= MAX_FAMILY_DIM:
        raise UnsupportedDimension(f"family profiles exist for n in 1..5, got {n}")
    if m < 1:
        raise ValueError("smoothness m must be at least 1")
    orders = tuple(2 ** (n - 1 - d) * m for d in range(n))
    return SmoothnessProfile(n, orders, 2**n * m + 1)


def classify(alpha, profile):
    """Owner of ``alpha``: the lowest-dimensional face within distance r_d,
    lexicographically first among equals; otherwise the whole simplex
    with the minimum facet distance as order."""
    alpha = tuple(alpha)
    n = profile.n
    if len(alpha) != n + 1:
        raise ValueError("index has the wrong length")
    if sum(alpha) != profile.degree:
        raise ValueError(f"index {alpha} does not have degree {profile.degree}")
    for face in all_proper_faces(n):
        dist = face_distance(alpha, face)
        if dist <= profile.orders[face.dim]:
            return Ownership(face, dist)
    return Ownership(Face(n, tuple(range(n + 1))), min(alpha))


def _face_table(n):
    table = all_proper_faces(n) + [Face(n, tuple(range(n + 1)))]
    return table


def classify_array(A, profile):
    """Vectorised classify over the rows of ``A``.

    Returns (owner_ids, orders) with owner ids indexing
    ``all_proper_faces(n) + [full simplex]``.
    """
    n, k = profile.n, profile.degree
    table = _face_table(n)
    owner = np.full(len(A), len(table) - 1, dtype=np.int32)
    order = A.min(axis=1).astype(np.int32)
    free = np.ones(len(A), dtype=bool)
    for fid, face in enumerate(table[:-1]):
        dist = k - A[:, list(face.vertices)].sum(axis=1, dtype=np.int32)
        hit = free & (dist <= profile.orders[face.dim])
        owner[hit] = fid
        order[hit] = dist[hit]
        free &= ~hit
    return owner, order


def _chunks(n, k):
    # split the index set by its leading entry to bound memory
    for first in range(k + 1):
        rest = _compositions(n, k - first)
        head = np.full((len(rest), 1), first, dtype=np.int16)
        yield np.hstack([head, rest])


def partition(profile, permutation=None):
    """Classify every degree-k index and tally counts per (face, order).

    ``permutation`` relabels vertices before classification (entry i of
    each index moves to position permutation[i]); totals per face
    dimension must not depend on it.
    """
    n, k = profile.n, profile.degree
    table = _face_table(n)
    stride = k + 1
    tally = np.zeros(len(table) * stride, dtype=np.int64)
    if permutation is not None:
        permutation = list(permutation)
        if sorted(permutation) != list(range(n + 1)):
            raise ValueError("not a permutation of the vertex labels")
        inverse = np.argsort(permutation)
    for A in _chunks(n, k):
        if permutation is not None:
            A = A[:, inverse]
        owner, order = classify_array(A, profile)
        tally += np.bincount(owner * stride + order, minlength=len(tally))
    counts = {}
    per_dim = [0] * (n + 1)
    for code in np.nonzero(tally)[0]:
        face = table[code // stride]
        c = int(tally[code])
        counts[(face, int(code % stride))] = c
        per_dim[face.dim] += c
    grand = sum(per_dim)
    if grand != poly_dim(n, k):
        raise AssertionError(f"partition lost indices: {grand} != {poly_dim(n, k)}")
    return PartitionReport(profile, counts, per_dim, grand)


def layer_counts(profile, face, order=None, layer_vertex=None):
    """Counts of indices owned by ``face`` at ``order`` (any order if None),
    grouped by the entry at ``layer_vertex`` (default: the face's lowest vertex)."""
    if layer_vertex is None:
        layer_vertex = face.vertices[0]
    if layer_vertex not in face.vertices:
        raise ValueError("layer vertex must lie on the face")
    fid = _face_table(profile.n).index(face)
    layers = Counter()
    for A in _chunks(profile.n, profile.degree):
        owner, ords = classify_array(A, profile)
        sel = owner == fid
        if order is not None:
            sel &= ords == order
        values, counts = np.unique(A[sel, layer_vertex], return_counts=True)
        for v, c in zip(values, counts):
            layers[int(v)] += int(c)
    return dict(sorted(layers.items()))
