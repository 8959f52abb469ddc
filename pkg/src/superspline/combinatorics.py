"""Exact integer counting: binomials, polynomial-space dimensions,
hockey-stick sums and chopped-corner counts.

All results are Python ints (arbitrary precision).
"""

from math import comb

__all__ = [
    "NONE",
    "binomial",
    "poly_dim",
    "hockey_stick_a",
    "hockey_stick_b",
    "chopped_count",
]

# sentinel for chopped_count: no corners removed
NONE = "none"


def _check_nonneg(**kwargs):
    for name, value in kwargs.items():
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"{name} must be an int, got {value!r}")
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value}")


def binomial(m, n):
    """C(m, n) = m! / ((m - n)! n!). Raises ValueError if n > m."""
    _check_nonneg(m=m, n=n)
    if n > m:
        raise ValueError(f"binomial({m}, {n}): n must not exceed m")
    return comb(m, n)


def poly_dim(n, k):
    """Dimension of the space of degree-``k`` polynomials in ``n`` variables."""
    _check_nonneg(n=n, k=k)
    if n < 1:
        raise ValueError("space dimension must be at least 1")
    return binomial(k + n, n)


def hockey_stick_a(n, k):
    """Sum_{i=0}^{k} C(n+i, i), summed term by term.

    Equals C(n+k+1, k); the closed form is checked, not used.
    """
    _check_nonneg(n=n, k=k)
    total = sum(binomial(n + i, i) for i in range(k + 1))
    assert total == binomial(n + k + 1, k)
    return total


def hockey_stick_b(n, k):
    """Sum_{i=0}^{k} C(n+i, n), summed term by term; equals C(n+k+1, n+1)."""
    _check_nonneg(n=n, k=k)
    total = sum(binomial(n + i, n) for i in range(k + 1))
    assert total == binomial(n + k + 1, n + 1)
    return total


def chopped_count(face_dim, degree, corner_degree=NONE):
    """dim P_degree on a ``face_dim``-simplex minus its ``face_dim + 1``
    corner blocks of dim P_corner_degree.

    ``corner_degree=NONE`` removes nothing. A negative result means the
    corners overlap and raises ValueError.
    """
    _check_nonneg(face_dim=face_dim, degree=degree)
    if face_dim < 1:
        raise ValueError("face_dim must be at least 1")
    full = poly_dim(face_dim, degree)
    if corner_degree == NONE:
        return full
    _check_nonneg(corner_degree=corner_degree)
    result = full - (face_dim + 1) * poly_dim(face_dim, corner_degree)
    if result < 0:
        raise ValueError(
            f"over-chopped: R^({face_dim})_({degree},-{corner_degree}) = {result} < 0"
        )
    return result
