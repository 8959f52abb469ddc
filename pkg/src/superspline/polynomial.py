"""Exact-rational polynomials in Bernstein-Bezier form on the reference
simplex, nodal functionals acting on them, and fraction-free linear algebra.
"""

import os
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm

from .bernstein import enumerate_indices

__all__ = [
    "DEFAULT_CAP",
    "SizeError",
    "Polynomial",
    "bernstein_basis",
    "multinomial",
    "evaluate",
    "directional_derivative",
    "derivative_value",
    "apply_functional",
    "functional_row",
    "vandermonde",
    "exact_rank",
    "solve_exact",
    "unisolvence_cap",
]

DEFAULT_CAP = 10_000


class SizeError(ValueError):
    """Problem too large for dense exact linear algebra."""


def unisolvence_cap():
    """Largest dense exact system we agree to build (env SSFEM_CAP)."""
    raw = os.environ.get("SSFEM_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"SSFEM_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("SSFEM_CAP must be positive")
    return cap


@lru_cache(maxsize=None)
def _factorial(n):
    return factorial(n)


def multinomial(k, alpha):
    """k! / prod(alpha_i!)."""
    out = _factorial(k)
    for a in alpha:
        out //= _factorial(a)
    return out


class Polynomial:
    """Degree-``degree`` polynomial on the ``ambient_dim``-simplex, stored
    as a sparse map Bernstein index -> coefficient (absent means zero)."""

    __slots__ = ("ambient_dim", "degree", "coeffs")

    def __init__(self, ambient_dim, degree, coeffs=None):
        self.ambient_dim = ambient_dim
        self.degree = degree
        clean = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != ambient_dim + 1 or sum(alpha) != degree or min(alpha) < 0:
                raise ValueError(f"index {alpha} is not a degree-{degree} index in {ambient_dim}D")
            c = Fraction(c)
            if c:
                clean[alpha] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, n, value, degree=0):
        """The constant ``value`` written in degree-``degree`` form."""
        return cls(n, degree, {a: value for a in enumerate_indices(n, degree)})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.ambient_dim == other.ambient_dim
        return (self.ambient_dim, self.degree, self.coeffs) == (
            other.ambient_dim, other.degree, other.coeffs)

    def _binary(self, other, sign):
        if (self.ambient_dim, self.degree) != (other.ambient_dim, other.degree):
            raise ValueError("polynomials must share dimension and degree form")
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0) + sign * c
        return Polynomial(self.ambient_dim, self.degree, out)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def scale(self, s):
        s = Fraction(s)
        return Polynomial(self.ambient_dim, self.degree,
                          {a: s * c for a, c in self.coeffs.items()})

    def __repr__(self):
        return f"Polynomial(n={self.ambient_dim}, k={self.degree}, terms={len(self.coeffs)})"


def bernstein_basis(n, k, alpha):
    """B_alpha = multinomial(k; alpha) * prod(lambda_i ** alpha_i)."""
    return Polynomial(n, k, {tuple(alpha): 1})


def _coords(x):
    coords = getattr(x, "coords", x)
    return tuple(Fraction(c) for c in coords)


def _common(values):
    """Integers a and denominator D with values == a / D."""
    den = lcm(*(v.denominator for v in values))
    return [v.numerator * (den // v.denominator) for v in values], den


def _power_table(ints, k):
    return [[a**e for e in range(k + 1)] for a in ints]


def evaluate(p, x):
    """Exact value of ``p`` at the barycentric point ``x``."""
    lam = _coords(x)
    if len(lam) != p.ambient_dim + 1:
        raise ValueError("point and polynomial have different dimensions")
    if sum(lam) != 1:
        raise ValueError("barycentric coordinates must sum to 1")
    if p.is_zero():
        return Fraction(0)
    ints, den = _common(lam)
    powers = _power_table(ints, p.degree)
    cints, cden = _common(list(p.coeffs.values()))
    total = 0
    for (alpha, _), ci in zip(p.coeffs.items(), cints):
        term = ci * multinomial(p.degree, alpha)
        for i, a in enumerate(alpha):
            term *= powers[i][a]
        total += term
    return Fraction(total, cden * den**p.degree)


def _check_direction(direction, n):
    u = tuple(Fraction(c) for c in direction)
    if len(u) != n + 1:
        raise ValueError(f"direction needs {n + 1} barycentric entries, got {len(u)}")
    if sum(u) != 0:
        raise ValueError(f"barycentric direction entries must sum to 0: {u}")
    return u


def directional_derivative(p, direction):
    """D_u p for a barycentric direction u (entries summing to zero).

    The result has degree k - 1; the derivative of a constant is the zero
    polynomial in degree-0 form.
    """
    n, k = p.ambient_dim, p.degree
    u = _check_direction(direction, n)
    if k == 0:
        return Polynomial(n, 0)
    out = {}
    for alpha, c in p.coeffs.items():
        for i, ui in enumerate(u):
            if ui and alpha[i] > 0:
                gamma = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
                out[gamma] = out.get(gamma, 0) + k * ui * c
    return Polynomial(n, k - 1, out)


def derivative_value(p, directions, x):
    """(D_{u_1} ... D_{u_t} p)(x), computed by repeated differentiation."""
    for u in directions:
        p = directional_derivative(p, u)
    return evaluate(p, x)


def apply_functional(f, p):
    """Apply a nodal functional (anything with ``bary_directions()`` and
    ``point``) to ``p``."""
    directions = f.bary_directions()
    if len(directions) > p.degree and not p.is_zero():
        raise ValueError("functional order exceeds polynomial degree")
    return derivative_value(p, directions, f.point)


def functional_row(directions, x, n, k):
    """Weights w with functional(p) == sum_alpha w[alpha] * c_alpha.

    Built by pushing point evaluation back through each derivative
    (the transpose of ``directional_derivative``), so it never forms
    derivative polynomials. Returns (dict of int numerators, denominator).
    """
    lam = _coords(x)
    t = len(directions)
    if t > k:
        return {}, 1
    ints, den = _common(lam)
    powers = _power_table(ints, k - t)
    d = k - t
    row = {}
    for gamma in enumerate_indices(n, d):
        val = multinomial(d, gamma)
        for i, g in enumerate(gamma):
            val *= powers[i][g]
        if val:
            row[gamma] = val
    denom = den**d
    for u in directions:
        u = _check_direction(u, n)
        uints, uden = _common(u)
        denom *= uden
        new = {}
        for gamma, v in row.items():
            for i, ui in enumerate(uints):
                if ui:
                    alpha = gamma[:i] + (gamma[i] + 1,) + gamma[i + 1:]
                    new[alpha] = new.get(alpha, 0) + (d + 1) * ui * v
        d += 1
        row = {a: v for a, v in new.items() if v}
    return row, denom


def vandermonde(element, cap=None, as_fractions=True):
    """Square matrix M[i][j] = functional_i(B_j) over the Bernstein basis
    in lexicographic index order.

    With ``as_fractions=False`` each row is returned as integers scaled by
    a positive row factor, which leaves rank unchanged.
    """
    cap = unisolvence_cap() if cap is None else cap
    n, k = element.profile.n, element.profile.degree
    size = len(element.functionals)
    if size > cap:
        raise SizeError(
            f"{size} functionals exceed the dense exact cap {cap}"
            + ("; 5D elements are out of desk scale" if n >= 5 else "")
        )
    basis = enumerate_indices(n, k)
    position = {a: j for j, a in enumerate(basis)}
    rows = []
    for f in element.functionals:
        weights, denom = functional_row(f.bary_directions(), f.point, n, k)
        dense = [0] * len(basis)
        for a, v in weights.items():
            dense[position[a]] = v
        if as_fractions:
            dense = [Fraction(v, denom) for v in dense]
        rows.append(dense)
    return rows


def _integer_rows(M):
    out = []
    for row in M:
        row = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in row)) if row else 1
        out.append([v.numerator * (scale // v.denominator) for v in row])
    return out


def _bareiss(rows, ncols):
    """In-place fraction-free row echelon form; returns pivot columns."""
    m = len(rows)
    r = 0
    prev = 1
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = row[:c] + [
                    (row[j] * piv - f * prow[j]) // prev for j in range(c, ncols)
                ]
            elif piv != prev:
                rows[i] = row[:c] + [row[j] * piv // prev for j in range(c, ncols)]
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def exact_rank(M):
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    if not M:
        return 0
    ncols = len(M[0])
    if any(len(row) != ncols for row in M):
        raise ValueError("ragged matrix")
    rows = _integer_rows(M)
    return len(_bareiss(rows, ncols))


def solve_exact(M, b):
    """Solve the square system M x = b exactly; raises ValueError if singular."""
    size = len(M)
    if any(len(row) != size for row in M) or len(b) != size:
        raise ValueError("solve_exact needs a square system")
    aug = _integer_rows([list(row) + [rhs] for row, rhs in zip(M, b)])
    pivots = _bareiss(aug, size + 1)
    if len(pivots) < size or pivots[-1] >= size:
        raise ValueError("singular system")
    x = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        row = aug[i]
        acc = Fraction(row[size])
        for j in range(i + 1, size):
            if row[j]:
                acc -= row[j] * x[j]
        x[i] = acc / row[i]
    return x
