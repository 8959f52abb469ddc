"""Verification campaigns: count tables, unisolvence at desk scale, and
cross-element continuity on a pair of simplices sharing a facet."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .bernstein import enumerate_indices, family_profile, layer_counts, partition
from .combinatorics import poly_dim
from .dofs import build_element, count_table
from .polynomial import (
    Polynomial,
    SizeError,
    directional_derivative,
    evaluate,
    exact_rank,
    functional_row,
    solve_exact,
    unisolvence_cap,
    vandermonde,
)
from .simplex import Face, bary_direction

__all__ = [
    "C1_P33_CONSTANTS",
    "CountComparison",
    "UnisolvenceResult",
    "TwoElementMesh",
    "Lcg64",
    "verify_counts",
    "verify_unisolvence",
    "two_element_mesh",
    "continuity_jump",
    "verify_continuity",
]

# Hand-derived counts for the C^1-P_33 element on 5-simplices.
C1_P33_CONSTANTS = {
    "vertex/per_face": 20349,
    "edge/per_face": 3168,
    "edge/order8/per_face": 1320,
    "triangle/order0/per_face": 28,
    "triangle/order1/per_face": 135,
    "triangle/order2/per_face": 378,
    "triangle/order3/per_face": 820,
    "triangle/order4/per_face": 1530,
    "tet/order0/per_face": 544,
    "tet/order1/per_face": 1778,
    "tet/order2/per_face": 3804,
    "4face/order0/per_face": 6965,
    "4face/order1/per_face": 12990,
    "interior/total": 62888,
    "dim0/total": 122094,
    "dim1/total": 47520,
    "dim2/total": 57820,
    "dim3/total": 91890,
    "dim4/total": 119730,
    "dim5/total": 62888,
    "grand_total": 501942,
    "4face/order1/layer1": 1682,
    "4face/order1/layer2": 1640,
    "4face/order1/layer3": 1547,
    "4face/order1/layer4": 1400,
    "4face/order1/layer5": 1250,
    "4face/order1/layer6": 1100,
    "4face/order1/layers7-15": 4371,
    "interior/first_layer": 11520,
    "interior/second_layer": 9996,
}

_FACE_NAMES = ["vertex", "edge", "triangle", "tet", "4face"]


@dataclass
class CountComparison:
    n: int
    m: int
    expected: dict
    actual: dict
    mismatches: list = field(default_factory=list)  # (label, expected, actual)

    @property
    def passed(self):
        return not self.mismatches

    def check(self, label, expected, actual):
        self.expected[label] = expected
        self.actual[label] = actual
        if expected != actual:
            self.mismatches.append((label, expected, actual))


def _face_name(d, n):
    return "interior" if d == n else _FACE_NAMES[d]


def verify_counts(n, m):
    """Cross-check the partition, the face-by-face counts and (for n=5,
    m=1) the hand-derived constants. Mismatches are returned, not raised."""
    profile = family_profile(n, m)
    report = partition(profile)
    table = count_table(profile, report)
    cmp = CountComparison(n, m, {}, {})

    for d, fc in enumerate(table):
        name = _face_name(d, n)
        cmp.check(f"dim{d}/total/partition_vs_constructive",
                  fc.total, report.per_dim_totals[d])
        if d < n:
            cmp.check(f"{name}/per_order/partition_vs_constructive",
                      dict(fc.per_order), report.uniform_face_counts(d))
    cmp.check("grand_total/vs_dim_P_k", poly_dim(n, profile.degree), report.grand_total)

    if (n, m) == (5, 1):
        actual = _c1_p33_actuals(profile, report, table)
        for label, value in C1_P33_CONSTANTS.items():
            cmp.check(label, value, actual[label])
        _check_constructive_layers(cmp, table)
    return cmp


def _c1_p33_actuals(profile, report, table):
    actual = {}
    per_face = {d: report.uniform_face_counts(d) or {} for d in range(5)}
    actual["vertex/per_face"] = sum(per_face[0].values())
    actual["edge/per_face"] = sum(per_face[1].values())
    actual["edge/order8/per_face"] = per_face[1].get(8)
    for d in (2, 3, 4):
        for t, c in per_face[d].items():
            actual[f"{_FACE_NAMES[d]}/order{t}/per_face"] = c
    actual["interior/total"] = report.per_dim_totals[5]
    for d in range(6):
        actual[f"dim{d}/total"] = report.per_dim_totals[d]
    actual["grand_total"] = report.grand_total

    facet = Face(5, (0, 1, 2, 3, 4))
    layers = layer_counts(profile, facet, 1)  # keyed by first on-face entry
    for j in range(1, 7):
        actual[f"4face/order1/layer{j}"] = layers.get(j + 1, 0)
    actual["4face/order1/layers7-15"] = sum(layers.get(j + 1, 0) for j in range(7, 16))
    # interior sub-counts keyed by the leading entry, whose minimum is 2
    inner = layer_counts(profile, Face(5, tuple(range(6))))
    actual["interior/first_layer"] = inner.get(2, 0)
    actual["interior/second_layer"] = inner.get(3, 0)
    return actual


def _check_constructive_layers(cmp, table):
    constructive = table[4].layers
    for j in range(1, 7):
        label = f"4face/order1/layer{j}"
        cmp.check(label + "/constructive", cmp.actual[label], constructive[j])
    label = "4face/order1/layers7-15"
    cmp.check(label + "/constructive", cmp.actual[label], constructive["7-15"])


@dataclass
class UnisolvenceResult:
    n: int
    m: int
    size: int
    rank: int

    @property
    def passed(self):
        return self.rank == self.size


def verify_unisolvence(n, m, cap=None):
    """Exact rank of the element's Vandermonde matrix against dim P_k."""
    cap = unisolvence_cap() if cap is None else cap
    profile = family_profile(n, m)
    size = poly_dim(n, profile.degree)
    if size > cap:
        raise SizeError(
            f"dim P_{profile.degree} in {n}D is {size}, above the dense exact cap {cap}"
            + ("; the 5D element is out of desk scale, use verify_counts instead"
               if n >= 5 else "")
        )
    element = build_element(n, m)
    rank = exact_rank(vandermonde(element, cap=cap, as_fractions=False))
    return UnisolvenceResult(n, m, size, rank)


class Lcg64:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64;
    each draw returns the top 32 bits of the new state.
    """

    MUL = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed):
        self.state = seed & self.MASK

    def next(self):
        self.state = (self.MUL * self.state + self.INC) & self.MASK
        return self.state >> 32

    def randint(self, lo, hi):
        """Integer in [lo, hi] (modulo bias is accepted for reproducibility)."""
        return lo + self.next() % (hi - lo + 1)

    def rational(self):
        """Numerator in [-100, 100] over a denominator in [1, 10]."""
        num = self.randint(-100, 100)
        return Fraction(num, self.randint(1, 10))

    def face_point(self, face, max_den=100):
        """Random interior barycentric point of ``face`` with denominator <= max_den."""
        size = len(face.vertices)
        weights = [self.randint(1, max_den // size) for _ in range(size)]
        total = sum(weights)
        coords = [Fraction(0)] * (face.ambient_dim + 1)
        for v, w in zip(face.vertices, weights):
            coords[v] = Fraction(w, total)
        return tuple(coords)


class _Affine:
    """Affine image of the reference simplex with the given vertices."""

    def __init__(self, vertices):
        self.vertices = [tuple(Fraction(c) for c in v) for v in vertices]
        self.n = len(self.vertices) - 1
        origin = self.vertices[0]
        # columns are the edge vectors from vertex 0
        self.edges = [[v[i] - origin[i] for v in self.vertices[1:]] for i in range(self.n)]

    def to_reference(self, vector):
        return solve_exact(self.edges, list(vector))

    def bary_point(self, x):
        origin = self.vertices[0]
        ref = self.to_reference([a - b for a, b in zip(x, origin)])
        return (1 - sum(ref),) + tuple(ref)

    def bary_dir(self, vector):
        return bary_direction(self.to_reference(vector))

    def physical_point(self, bary):
        return tuple(
            sum(l * v[i] for l, v in zip(bary, self.vertices)) for i in range(self.n)
        )

    def physical_dir(self, ref_vector):
        return tuple(
            sum(e * c for e, c in zip(self.edges[i], ref_vector)) for i in range(self.n)
        )


@dataclass(frozen=True)
class _Mapped:
    """A nodal functional expressed in one element's barycentric frame."""

    point: tuple
    directions: tuple
    global_id: int

    def bary_directions(self):
        return list(self.directions)


@dataclass
class TwoElementMesh:
    """Reference simplex A = [0, e_1, ..., e_n] and its mirror image B across
    the facet {1, ..., n}; B's vertex 0 sits at (2/n, ..., 2/n).

    Functionals owned by faces inside the shared facet are taken from A and
    appear once in the global numbering; B re-expresses them in its own frame.
    """

    profile: object
    element: object  # ElementSpec (shared local layout)
    maps: tuple  # (_Affine A, _Affine B)
    local: tuple  # (list of _Mapped for A, list of _Mapped for B)
    global_functionals: list  # (element label, DofFunctional)

    @property
    def num_global(self):
        return len(self.global_functionals)

    @property
    def shared_faces(self):
        n = self.profile.n
        facet = Face(n, tuple(range(1, n + 1)))
        return [g for d in range(n) for g in facet.subfaces(d)]


def _in_shared_facet(face):
    return 0 not in face.vertices


def two_element_mesh(n, m):
    profile = family_profile(n, m)
    element = build_element(n, m)
    ref_a = [tuple(1 if i == v else 0 for i in range(1, n + 1)) for v in range(n + 1)]
    ref_b = [tuple(Fraction(2, n) for _ in range(n))] + ref_a[1:]
    maps = (_Affine(ref_a), _Affine(ref_b))
    map_a, map_b = maps

    global_functionals = []
    local_a, local_b = [], []
    for f in element.functionals:
        gid = len(global_functionals)
        global_functionals.append(("A", f))
        phys_point = map_a.physical_point(f.point.coords)
        phys_dirs = [map_a.physical_dir(v) for v in f.directions()]
        local_a.append(_Mapped(f.point.coords, tuple(f.bary_directions()), gid))
        if _in_shared_facet(f.owner):
            local_b.append(_Mapped(map_b.bary_point(phys_point),
                                   tuple(map_b.bary_dir(d) for d in phys_dirs), gid))
    for f in element.functionals:
        if not _in_shared_facet(f.owner):
            gid = len(global_functionals)
            global_functionals.append(("B", f))
            local_b.append(_Mapped(f.point.coords, tuple(f.bary_directions()), gid))

    size = poly_dim(n, profile.degree)
    if len(local_a) != size or len(local_b) != size:
        raise AssertionError("each element must carry dim P_k functionals")
    return TwoElementMesh(profile, element, maps, (local_a, local_b), global_functionals)


def _solve_local(local, values, profile):
    n, k = profile.n, profile.degree
    basis = enumerate_indices(n, k)
    position = {a: j for j, a in enumerate(basis)}
    rows, rhs = [], []
    for f in local:
        weights, denom = functional_row(f.directions, f.point, n, k)
        row = [0] * len(basis)
        for a, v in weights.items():
            row[position[a]] = v
        rows.append(row)
        rhs.append(values[f.global_id] * denom)
    try:
        coeffs = solve_exact(rows, rhs)
    except ValueError as exc:
        raise ValueError(f"local element is not unisolvent: {exc}") from None
    return Polynomial(n, k, dict(zip(basis, coeffs)))


def _multiorders(n, top):
    for t in range(top + 1):
        for combo in combinations(range(n + t - 1), t) if t else [()]:
            # stars and bars: positions of t stars among n - 1 bars
            counts, prev = [0] * n, -1
            axis = 0
            for pos in combo:
                axis += pos - prev - 1
                counts[axis] += 1
                prev = pos
            yield tuple(counts)


def _derivatives(poly, frame, top):
    """Cartesian partial derivatives of ``poly`` up to order ``top``, keyed
    by multi-order over the n physical axes."""
    n = poly.ambient_dim
    axes = [frame.bary_dir(tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]
    table = {(0,) * n: poly}
    for beta in _multiorders(n, top):
        if beta in table:
            continue
        j = next(i for i, b in enumerate(beta) if b)
        lower = beta[:j] + (beta[j] - 1,) + beta[j + 1:]
        table[beta] = directional_derivative(table[lower], axes[j])
    return table


def continuity_jump(mesh, values, samples, rng):
    """Largest |p_A - p_B| over all partial derivatives up to order r_d,
    sampled on every shared d-face (vertices are checked exactly)."""
    profile = mesh.profile
    map_a, map_b = mesh.maps
    p_a = _solve_local(mesh.local[0], values, profile)
    p_b = _solve_local(mesh.local[1], values, profile)
    top = max(profile.orders)
    d_a = _derivatives(p_a, map_a, top)
    d_b = _derivatives(p_b, map_b, top)

    worst = Fraction(0)
    for face in mesh.shared_faces:
        r = profile.orders[face.dim]
        if face.dim == 0:
            points = [tuple(Fraction(int(i == face.vertices[0])) for i in range(profile.n + 1))]
        else:
            points = [rng.face_point(face) for _ in range(samples)]
        betas = [b for b in d_a if sum(b) <= r]
        for bary in points:
            x = map_a.physical_point(bary)
            bary_b = map_b.bary_point(x)
            for beta in betas:
                jump = abs(evaluate(d_a[beta], bary) - evaluate(d_b[beta], bary_b))
                worst = max(worst, jump)
    return worst


def verify_continuity(n, m, seed=0, samples=50):
    """Random global DOF values on the two-element mesh; returns the maximum
    derivative jump across shared faces, which must be exactly 0."""
    if n not in (1, 2, 3):
        raise ValueError("continuity campaign supports n in 1..3")
    if samples < 1:
        raise ValueError("samples must be positive")
    mesh = two_element_mesh(n, m)
    rng = Lcg64(seed)
    values = [rng.rational() for _ in range(mesh.num_global)]
    return continuity_jump(mesh, values, samples, rng)
