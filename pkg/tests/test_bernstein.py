import random
from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from superspline.bernstein import (
    SmoothnessProfile,
    UnsupportedDimension,
    classify,
    classify_array,
    enumerate_indices,
    face_distance,
    family_profile,
    index_array,
    layer_counts,
    partition,
)
from superspline.combinatorics import binomial, poly_dim
from superspline.simplex import Face, all_proper_faces, faces


def brute_indices(n, k):
    return [a for a in product(range(k + 1), repeat=n + 1) if sum(a) == k]


def test_enumerate_small_matches_brute_force():
    for n in (1, 2, 3):
        for k in range(7):
            assert enumerate_indices(n, k) == sorted(brute_indices(n, k))


def test_enumerate_counts():
    assert len(enumerate_indices(2, 5)) == 21
    assert enumerate_indices(4, 0) == [(0, 0, 0, 0, 0)]
    assert len(index_array(5, 33)) == 501942


def test_index_array_lexicographic_no_duplicates():
    A = index_array(5, 33)
    rows = [tuple(r) for r in A[::997]]
    assert rows == sorted(rows)
    assert len({tuple(r) for r in A}) == len(A)
    assert (A.sum(axis=1) == 33).all()


@pytest.mark.parametrize(
    "alpha,verts,expected",
    [
        ((0, 0, 0, 0, 0, 33), (5,), 0),
        ((1, 0, 0, 0, 16, 16), (4, 5), 1),
        ((0, 0, 5, 5, 5, 18), (5,), 15),
    ],
)
def test_face_distance(alpha, verts, expected):
    assert face_distance(alpha, Face(5, verts)) == expected


@given(st.lists(st.integers(0, 9), min_size=5, max_size=5), st.data())
def test_distance_monotone_under_inclusion(alpha, data):
    big = data.draw(st.sets(st.integers(0, 4), min_size=1))
    small = data.draw(st.sets(st.sampled_from(sorted(big)), min_size=1))
    F = Face(4, tuple(sorted(small)))
    G = Face(4, tuple(sorted(big)))
    assert face_distance(alpha, G) <= face_distance(alpha, F)


@pytest.mark.parametrize(
    "n,m,orders,k",
    [(5, 1, (16, 8, 4, 2, 1), 33), (2, 1, (2, 1), 5), (3, 1, (4, 2, 1), 9),
     (1, 1, (1,), 3), (4, 2, (16, 8, 4, 2), 33)],
)
def test_family_profile(n, m, orders, k):
    p = family_profile(n, m)
    assert p.orders == orders and p.degree == k
    assert p.is_family()


def test_family_profile_dimension_limits():
    with pytest.raises(UnsupportedDimension):
        family_profile(6, 1)
    with pytest.raises(UnsupportedDimension):
        family_profile(0, 1)


def test_profile_validation():
    with pytest.raises(ValueError):
        SmoothnessProfile(2, (1, 1), 5)
    with pytest.raises(ValueError):
        SmoothnessProfile(2, (2, 1), 4)
    with pytest.raises(ValueError):
        SmoothnessProfile(3, (2, 1), 9)
    assert not SmoothnessProfile(2, (2, 1), 6).is_family()


@pytest.mark.parametrize(
    "alpha,owner,order",
    [
        ((0, 0, 0, 0, 0, 33), (5,), 0),
        ((1, 0, 0, 0, 16, 16), (4, 5), 1),
        ((0, 0, 0, 1, 16, 16), (4, 5), 1),
        ((2, 0, 3, 4, 7, 17), (5,), 16),
        ((0, 0, 5, 5, 5, 18), (5,), 15),
        ((0, 0, 0, 1, 15, 17), (5,), 16),
        ((1, 0, 0, 7, 12, 13), (4, 5), 8),
        ((1, 0, 0, 8, 12, 12), (3, 4, 5), 1),
        ((2, 0, 0, 7, 7, 17), (5,), 16),
    ],
)
def test_classify_reference_indices(alpha, owner, order):
    own = classify(alpha, family_profile(5, 1))
    assert own.owner.vertices == owner
    assert own.order == order


def test_classify_interior_records_min_facet_distance():
    own = classify((2, 2, 2, 3, 7, 17), family_profile(5, 1))
    assert own.owner.vertices == (5,)  # still within vertex distance 16
    own = classify((5, 5, 5, 6, 6, 6), family_profile(5, 1))
    assert own.owner.dim == 5 and own.order == 5


def test_classify_rejects_wrong_degree():
    with pytest.raises(ValueError):
        classify((1, 1, 1), family_profile(2, 1))


def disk_oracle(profile):
    """Ownership by set algebra: a d-face keeps its distance-r_d disk
    minus every lower-dimensional disk, ties going to the earliest face."""
    n, k = profile.n, profile.degree
    remaining = set(brute_indices(n, k))
    per_dim = []
    for d in range(n):
        taken = 0
        for f in faces(n, d):
            disk = {a for a in remaining if face_distance(a, f) <= profile.orders[d]}
            remaining -= disk
            taken += len(disk)
        per_dim.append(taken)
    per_dim.append(len(remaining))
    return per_dim


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
def test_partition_matches_disk_oracle(n, m):
    profile = family_profile(n, m)
    assert partition(profile).per_dim_totals == disk_oracle(profile)


def test_argyris_partition():
    rep = partition(family_profile(2, 1))
    assert rep.per_dim_totals == [18, 3, 0]
    assert rep.grand_total == 21


def test_c1_p33_partition():
    rep = partition(family_profile(5, 1))
    assert rep.per_dim_totals == [122094, 47520, 57820, 91890, 119730, 62888]
    assert rep.grand_total == 501942 == poly_dim(5, 33)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("m", [1, 2])
def test_partition_totality(n, m):
    profile = family_profile(n, m)
    rep = partition(profile)
    assert rep.grand_total == sum(rep.per_face_order_counts.values()) == poly_dim(n, profile.degree)


def test_classify_array_agrees_with_scalar():
    for profile in (family_profile(3, 1), family_profile(2, 2),
                    SmoothnessProfile(3, (5, 3, 1), 12)):
        A = index_array(profile.n, profile.degree)
        owner, order = classify_array(A, profile)
        table = all_proper_faces(profile.n) + [Face(profile.n, tuple(range(profile.n + 1)))]
        for row, o, t in zip(A, owner, order):
            own = classify(tuple(int(x) for x in row), profile)
            assert table[o] == own.owner and t == own.order


def test_owner_is_minimal_and_within_range():
    profile = SmoothnessProfile(3, (5, 3, 1), 12)
    for alpha in enumerate_indices(3, 12):
        own = classify(alpha, profile)
        d = own.owner.dim
        if d < 3:
            assert face_distance(alpha, own.owner) == own.order <= profile.orders[d]
        for lower in range(d):
            for f in faces(3, lower):
                assert face_distance(alpha, f) > profile.orders[lower]


def test_equal_dimension_faces_own_equal_counts():
    rep = partition(family_profile(5, 1))
    assert rep.per_face_totals(0) == [20349] * 6
    for d in range(5):
        assert len(set(rep.per_face_totals(d))) == 1


def test_edge_order_identity():
    rep = partition(family_profile(5, 1))
    edge = rep.face_counts(Face(5, (0, 1)))
    assert edge == {t: t * binomial(t + 3, 3) for t in range(1, 9)}
    assert sum(edge.values()) == 3168


@pytest.mark.parametrize("profile", [family_profile(3, 1), family_profile(4, 1),
                                     SmoothnessProfile(3, (5, 3, 1), 12),
                                     SmoothnessProfile(4, (6, 4, 2, 1), 13)])
def test_permutation_invariance(profile):
    base = partition(profile).per_dim_totals
    rng = random.Random(7)
    for _ in range(5):
        perm = list(range(profile.n + 1))
        rng.shuffle(perm)
        assert partition(profile, permutation=perm).per_dim_totals == base


def test_ties_occur_for_non_family_profile():
    # outside the family equal-dimension faces can compete; counts then vary by face
    rep = partition(SmoothnessProfile(3, (5, 3, 1), 12))
    assert rep.uniform_face_counts(1) is None
    assert rep.grand_total == poly_dim(3, 12)


def test_layer_counts_4face():
    facet = Face(5, (0, 1, 2, 3, 4))
    layers = layer_counts(family_profile(5, 1), facet, 1)
    assert [layers[j] for j in range(2, 8)] == [1682, 1640, 1547, 1400, 1250, 1100]
    assert sum(layers[j] for j in range(8, 17)) == 4371
    assert sum(layers.values()) == 12990


def test_layer_counts_use_any_face_vertex():
    facet = Face(5, (1, 2, 3, 4, 5))
    profile = family_profile(5, 1)
    first = layer_counts(profile, facet, 1)
    assert layer_counts(profile, facet, 1, layer_vertex=4) == first
    with pytest.raises(ValueError):
        layer_counts(profile, facet, 1, layer_vertex=0)


def test_interior_layers():
    whole = Face(5, tuple(range(6)))
    layers = layer_counts(family_profile(5, 1), whole)
    assert layers[2] == 11520 and layers[3] == 9996
    assert sum(layers.values()) == 62888
