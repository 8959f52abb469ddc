"""Per-face degree-of-freedom counts and the nodal functionals of an element.

Counts are built face by face, the way they are derived by hand: for a
d-face and normal-derivative order t, the number of functionals is
(number of order-t derivative directions) x (number of nodes left on the
face once lower-dimensional faces have taken their share). For the
C^1-P_33 element in 5D the hand-derived closed forms are used; other
family members fall back to enumerating nodes on the face.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bernstein import (
    SmoothnessProfile,
    classify,
    enumerate_indices,
    family_profile,
    index_array,
    partition,
)
from .combinatorics import binomial, chopped_count, hockey_stick_a, poly_dim
from .simplex import Face, bary_direction, domain_point, faces, normal_directions

__all__ = [
    "UnsupportedProfile",
    "VerificationError",
    "FaceCount",
    "DofFunctional",
    "ElementSpec",
    "direction_count",
    "count_vertex_dofs",
    "count_edge_dofs",
    "count_triangle_dofs",
    "count_tet_dofs",
    "count_4face_dofs",
    "count_interior_dofs",
    "count_table",
    "build_element",
]


class UnsupportedProfile(ValueError):
    pass


class VerificationError(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass
class FaceCount:
    face_dim: int
    num_faces: int
    per_order: dict  # order -> functionals per face
    layers: dict = field(default_factory=dict)

    @property
    def per_face(self):
        return sum(self.per_order.values())

    @property
    def total(self):
        return self.num_faces * self.per_face

    def order_total(self, t):
        return self.num_faces * self.per_order.get(t, 0)


def _require_family(profile, min_dim=1, exact_dim=None):
    if not profile.is_family():
        raise UnsupportedProfile(
            f"constructive counts are only defined for family profiles, got {profile.label()}"
        )
    n = profile.n
    if n < min_dim or (exact_dim is not None and n != exact_dim):
        need = f"n = {exact_dim}" if exact_dim is not None else f"n >= {min_dim}"
        raise UnsupportedProfile(f"this count needs {need}, got n = {n}")


def _is_c1_p33(profile):
    return profile == family_profile(5, 1)


def direction_count(n, d, t):
    """Number of order-t derivative multi-orders in the n - d off-face directions."""
    return binomial(t + n - d - 1, n - d - 1)


def _box_compositions(parts, total, lo, hi):
    """Compositions of ``total`` into ``parts`` entries in [lo, hi], by
    inclusion-exclusion over the entries that exceed ``hi`` (chopped corners)."""
    free = total - parts * lo
    width = hi - lo + 1
    if free < 0 or width <= 0:
        return 0
    out = 0
    for j in range(parts + 1):
        rest = free - j * width
        if rest < 0:
            break
        out += (-1) ** j * binomial(parts, j) * binomial(rest + parts - 1, parts - 1)
    return out


def _local_nodes(profile, d, t):
    """On-face parts of the indices a d-face keeps at order t: compositions
    of k - t over the face vertices that no proper subface claims."""
    k, r = profile.degree, profile.orders
    if k - t < 0:
        return np.zeros((0, d + 1), dtype=np.int16)
    B = index_array(d, k - t) if d >= 1 else np.array([[k - t]], dtype=np.int16)
    keep = np.ones(len(B), dtype=bool)
    for e in range(d):
        for G in combinations(range(d + 1), e + 1):
            off = [i for i in range(d + 1) if i not in G]
            dist = t + B[:, off].sum(axis=1, dtype=np.int32)
            keep &= dist > r[e]
    return B[keep]


def _enumerated_orders(profile, d):
    n = profile.n
    top = profile.orders[d]
    per_order = {}
    for t in range(top + 1):
        c = len(_local_nodes(profile, d, t))
        if c:
            per_order[t] = direction_count(n, d, t) * c
    return per_order


def count_vertex_dofs(profile):
    """All derivatives up to order r_0 at each vertex."""
    _require_family(profile)
    n, r0 = profile.n, profile.orders[0]
    per_order = {t: direction_count(n, 0, t) for t in range(r0 + 1)}
    fc = FaceCount(0, n + 1, per_order)
    if fc.per_face != hockey_stick_a(n - 1, r0):
        raise VerificationError("vertex count disagrees with the hockey-stick sum")
    return fc


def count_edge_dofs(profile):
    """Order-t normal derivatives at t interior points per edge, t = 1..r_1.

    On an edge the restriction has 2 r_0 + 2 = k + 1 coefficients and the
    endpoint data fixes r_0 - t + 1 of them at each end, leaving t.
    """
    _require_family(profile, min_dim=2)
    n, k, r = profile.n, profile.degree, profile.orders
    per_order = {}
    for t in range(r[1] + 1):
        points = max(0, (k - t + 1) - 2 * (r[0] - t + 1))
        if points:
            per_order[t] = direction_count(n, 1, t) * points
    return FaceCount(1, binomial(n + 1, 2), per_order)


def count_triangle_dofs(profile):
    """Order-t normal derivatives on each face triangle, t = 0..r_2.

    The nodes are compositions of k - t into three parts, each at least
    r_1 + 1 - t (clear of the edges) and at most r_0 (clear of the
    vertices): a triangle of degree k - 3(r_1 + 1 - t) with its corners chopped.
    """
    _require_family(profile, min_dim=3)
    n, k, r = profile.n, profile.degree, profile.orders
    per_order = {}
    for t in range(r[2] + 1):
        lo = r[1] + 1 - t
        free = k - t - 3 * lo
        chop = free - (r[0] - lo + 1)
        if chop >= 0 and 2 * (r[0] - lo + 1) > free:
            nodes = chopped_count(2, free, chop)
        elif chop < 0:
            nodes = chopped_count(2, free)
        else:
            nodes = _box_compositions(3, k - t, lo, r[0])
        if nodes:
            per_order[t] = direction_count(n, 2, t) * nodes
    return FaceCount(2, binomial(n + 1, 3), per_order)


def count_tet_dofs(profile):
    """Order-t normal derivatives on each face tetrahedron, t = 0..r_3."""
    _require_family(profile, min_dim=4)
    n = profile.n
    if _is_c1_p33(profile):
        tri_layer = chopped_count(2, 16, 3)  # first level triangle on each facet
        per_order = {
            0: 1 * chopped_count(3, 13, 1),
            1: 2 * chopped_count(3, 16, 3),
            2: 3 * (4 * tri_layer + chopped_count(3, 15, 2)),
        }
    else:
        per_order = _enumerated_orders(profile, 3)
    return FaceCount(3, binomial(n + 1, 4), per_order)


def _c1_p33_facet_layers():
    """Order-1 nodes of a 4-face, split by the entry on its first vertex.

    Layers 1-3 and the combined tail (layers 7-15) come from closed
    forms; layers 4-6 from enumerating the face-local nodes.
    """
    R = lambda m, c=None: chopped_count(2, m) if c is None else chopped_count(2, m, c)
    tail_tri = lambda hi, lo: binomial(hi + 3, 3) - binomial(lo + 3, 3)
    layer1 = (R(16, 3) + R(18, 4) + R(20, 5) + R(19, 4) + R(18, 3) + R(17, 2)
              + tail_tri(16, 7) - (16 - 7) * 3 * 3)
    layer2 = (R(18, 4) + sum(R(15 + i, i) for i in range(1, 6))
              + tail_tri(15, 6) - (15 - 6) * 3)
    layer3 = (sum(R(15 + i, i) for i in range(2, 6)) + sum(R(15 + i, i) for i in range(2))
              + sum(binomial(i + 2, 2) for i in range(6, 15)))
    tail = binomial(20, 4) - binomial(11, 4) - (16 - 7) * 4 * binomial(4, 3)
    counted = _facet_layers_by_enumeration(family_profile(5, 1))
    layers = {1: layer1, 2: layer2, 3: layer3}
    for j in (4, 5, 6):
        layers[j] = counted[j]
    layers["7-15"] = tail
    return layers


def _facet_layers_by_enumeration(profile):
    # layer j holds the nodes whose first on-face entry equals j + 1
    nodes = _local_nodes(profile, 4, 1)
    values, counts = np.unique(nodes[:, 0], return_counts=True)
    return {int(v) - 1: int(c) for v, c in zip(values, counts)}


def count_4face_dofs(profile):
    """Order-t normal derivatives on each 4-face of a 5-simplex, t = 0..r_4."""
    _require_family(profile, exact_dim=5)
    if _is_c1_p33(profile):
        layers = _c1_p33_facet_layers()
        per_order = {0: chopped_count(4, 18, 4), 1: sum(layers.values())}
        return FaceCount(4, 6, per_order, layers)
    return FaceCount(4, 6, _enumerated_orders(profile, 4))


def count_interior_dofs(profile, report=None):
    """Nodes interior to the simplex, computed twice: constructively and as
    the residual of the partition. Raises VerificationError on disagreement."""
    _require_family(profile)
    n, k = profile.n, profile.degree
    if _is_c1_p33(profile):
        constructive = (11520 + binomial(25, 5) - 6 * binomial(10, 5)
                        - binomial(10, 4) - (14 - 6) * 5)
    else:
        constructive = len(_local_nodes(profile, n, 0))
    report = partition(profile) if report is None else report
    residual = poly_dim(n, k) - sum(report.per_dim_totals[:n])
    if constructive != residual:
        raise VerificationError(
            f"interior count {constructive} disagrees with partition residual {residual}"
        )
    return constructive


def count_table(profile, report=None):
    """FaceCount per face dimension 0..n (the last one is the interior)."""
    n = profile.n
    report = partition(profile) if report is None else report
    counters = [count_vertex_dofs, count_edge_dofs, count_triangle_dofs,
                count_tet_dofs, count_4face_dofs]
    table = [counters[d](profile) for d in range(n)]
    interior = count_interior_dofs(profile, report)
    table.append(FaceCount(n, 1, {0: interior}))
    return table


@dataclass(frozen=True)
class DofFunctional:
    """Derivative of multi-order ``direction_multiorder`` along the owner's
    normal directions, evaluated at ``point``."""

    owner: Face
    order: int
    direction_multiorder: tuple
    point: object  # BaryPoint
    source_index: tuple

    def directions(self):
        """Reference-coordinate direction vectors, repeated per multi-order."""
        if not self.direction_multiorder:
            return []
        normals = normal_directions(self.owner)
        out = []
        for vec, times in zip(normals, self.direction_multiorder):
            out.extend([vec] * times)
        return out

    def bary_directions(self):
        return [bary_direction(v) for v in self.directions()]

    def key(self):
        return (self.owner.dim, self.owner.vertices, self.order, self.source_index)

    def describe(self):
        return {
            "owner": list(self.owner.vertices),
            "order": self.order,
            "direction_multiorder": list(self.direction_multiorder),
            "point": [str(c) for c in self.point.coords],
            "source_index": list(self.source_index),
        }


@dataclass
class ElementSpec:
    profile: SmoothnessProfile
    functionals: list
    counts: object  # PartitionReport


def _functional_for(alpha, ownership):
    face = ownership.owner
    on = [alpha[v] for v in face.vertices]
    off = tuple(alpha[v] for v in face.off_vertices)
    order = sum(off)
    point = domain_point(on, face, sum(on))
    return DofFunctional(face, order, off, point, tuple(alpha))


def build_element(n=None, m=None, profile=None):
    """One functional per Bernstein index, located on the face that owns it.

    The off-face part of the index is the derivative multi-order; the
    on-face part, scaled by its sum, is the evaluation point.
    """
    if profile is None:
        profile = family_profile(n, m)
    n = profile.n
    functionals = [
        _functional_for(alpha, classify(alpha, profile))
        for alpha in enumerate_indices(n, profile.degree)
    ]
    functionals.sort(key=DofFunctional.key)
    if len(functionals) != poly_dim(n, profile.degree):
        raise VerificationError("functional count does not match dim P_k")
    return ElementSpec(profile, functionals, partition(profile))
