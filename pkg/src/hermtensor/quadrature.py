"""Gauss-Hermite quadrature and Hermite-series expansion of distributions.

Integrals are taken against the weight exp(-x**2) on each axis, tensorized
over three dimensions.  Orthogonality tables, expansion coefficients and
truncation errors are all reduced to weighted sums of basis values on the
node grid; the basis rows come from the shared tensor recursion evaluated on
every node at once.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.constants import Boltzmann

from .hermite import PHYSICIST, PROBABILIST, HermiteConvention, evaluate_basis
from .symtensor import SymTensor, multiplicity_vector, n_components

__all__ = [
    "AdmissibilityResult",
    "ExpansionCoefficients",
    "NonFiniteIntegrandError",
    "QuadratureRule",
    "WeightSpec",
    "expand",
    "gauss_hermite_rule",
    "integrate3",
    "l2_admissible",
    "ortho_matrix",
    "reconstruct",
    "truncation_error",
]

MAX_ORDER = 64


class NonFiniteIntegrandError(ArithmeticError):
    """An integrand evaluated to inf or nan at a quadrature node."""

    def __init__(self, node):
        self.node = tuple(float(c) for c in np.atleast_1d(node))
        super().__init__(f"integrand is not finite at node {self.node}")


@dataclass(frozen=True)
class QuadratureRule:
    """1-D Gauss-Hermite nodes and weights, tensorized on demand."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    dims: int = 3

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)


def gauss_hermite_rule(order: int, dims: int = 3) -> QuadratureRule:
    """Rule of the given order for the weight exp(-x**2).

    Nodes are the roots of the order-``order`` 1-D physicist Hermite
    polynomial; with n nodes, polynomials through degree 2n-1 integrate
    exactly.
    """
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be within 1..{MAX_ORDER}, got {order}")
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    return QuadratureRule(order, nodes, weights, dims)


def grid_points(rule: QuadratureRule) -> np.ndarray:
    """All 3-D node triples, shape (order**3, 3), in sorted node order."""
    x = rule.nodes
    a, b, c = np.meshgrid(x, x, x, indexing="ij")
    return np.column_stack([a.ravel(), b.ravel(), c.ravel()])


def grid_weights(rule: QuadratureRule) -> np.ndarray:
    w = rule.weights
    return (w[:, None, None] * w[None, :, None] * w[None, None, :]).ravel()


def _field_values(f, points: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        values = np.asarray(f(points), dtype=np.float64)
        if values.shape != (len(points),):
            raise ValueError("vectorized integrand must return one value per point")
    else:
        values = np.fromiter((f(p) for p in points), dtype=np.float64, count=len(points))
    return values


def _require_finite(values: np.ndarray, points: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        raise NonFiniteIntegrandError(points[int(np.argmax(bad))])


def integrate3(f, rule: QuadratureRule, *, vectorized: bool = False) -> float:
    """Approximate the integral of f(z) exp(-z.z) d^3z.

    ``f`` receives points with the Gaussian factor already divided out.  By
    default ``f`` is called once per node triple; pass ``vectorized=True``
    for a callable that maps an (K, 3) array to K values.
    """
    points = grid_points(rule)
    values = _field_values(f, points, vectorized)
    _require_finite(values, points)
    return float(np.dot(grid_weights(rule), values))


def _basis_rows(max_rank: int, points: np.ndarray, convention: HermiteConvention):
    cols = (points[:, 0], points[:, 1], points[:, 2])
    tensors = evaluate_basis(max_rank, cols, dim=3, convention=convention)
    return [np.atleast_2d(t.data) for t in tensors]


def ortho_matrix(m_rank: int, n_rank: int, rule: QuadratureRule, convention=PHYSICIST) -> np.ndarray:
    """Quadrature table of basis inner products under the normalized weight.

    Physicist: pi**(-3/2) Integral exp(-z.z) H_m,i H_n,j; probabilist: the
    weight (2 pi)**(-3/2) exp(-z.z/2) against He_m,i He_n,j, mapped onto the
    same nodes by the substitution z = sqrt(2) x.  Shape is (#components(m),
    #components(n)).
    """
    top = max(m_rank, n_rank)
    if top > 4:
        raise ValueError("orthogonality tables are supported for ranks <= 4")
    if rule.order < 2 * top + 2:
        raise ValueError(f"rule order {rule.order} insufficient; need >= {2 * top + 2}")
    points = grid_points(rule)
    if convention is PROBABILIST:
        points = math.sqrt(2.0) * points
    rows = _basis_rows(top, points, convention)
    w = grid_weights(rule)
    return math.pi ** (-1.5) * np.einsum("k,ik,jk->ij", w, rows[m_rank], rows[n_rank])


class AdmissibilityResult(NamedTuple):
    admissible: bool
    value: float


def l2_admissible(f, rule: QuadratureRule, *, vectorized: bool = False) -> AdmissibilityResult:
    """Order-doubling stability probe of Integral exp(-z.z) |g|^2 d^3z.

    ``g`` is the integrand with the Gaussian factor divided out, g(z) =
    f(z) exp(+z.z).  The value is admissible when doubling the rule order
    moves it by less than 5 percent relative; the refined value is returned
    either way.  The probe requires order <= 32 so the doubled rule exists.
    """

    def probe(r):
        points = grid_points(r)
        g = _field_values(f, points, vectorized) * np.exp(np.sum(points**2, axis=1))
        with np.errstate(over="ignore"):
            return float(np.dot(grid_weights(r), g * g))

    coarse = probe(rule)
    fine = probe(gauss_hermite_rule(2 * rule.order))
    if not (np.isfinite(coarse) and np.isfinite(fine)):
        return AdmissibilityResult(False, fine)
    scale = max(abs(coarse), abs(fine))
    return AdmissibilityResult(abs(fine - coarse) <= 0.05 * scale, fine)


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Hermite-series data: f(z) = f0 exp(-z.z) sum_n inner(a_n, H_n(z))."""

    max_rank: int
    coeffs: tuple[SymTensor, ...]
    f0: float = 1.0
    admissible: bool = True

    def __post_init__(self):
        if len(self.coeffs) != self.max_rank + 1:
            raise ValueError("need one coefficient tensor per rank 0..max_rank")
        for n, c in enumerate(self.coeffs):
            if c.rank != n or c.dim != 3:
                raise ValueError(f"coefficient {n} has wrong rank or dim")

    def __getitem__(self, rank: int) -> SymTensor:
        return self.coeffs[rank]


def expand(f, max_rank: int, rule: QuadratureRule, f0: float = 1.0, *, vectorized: bool = False) -> ExpansionCoefficients:
    """Project a distribution onto the physicist tensor Hermite basis.

    Component extraction uses the orthogonality constant 2**m m!:

        a_m[i] = 1 / (2**m m! f0) * Integral pi**(-3/2) f(z) H_m,i(z) d^3z.

    The integrals run over the node grid with the Gaussian factor divided
    out of f.  If the order-doubling stability probe flags f as outside the
    weighted L2 space, a warning is issued and the coefficients are still
    returned with ``admissible=False``.
    """
    if f0 == 0.0:
        raise ValueError("f0 must be nonzero")
    check = l2_admissible(f, rule, vectorized=vectorized)
    if not check.admissible:
        warnings.warn("distribution failed the weighted-L2 stability probe; coefficients are unreliable", stacklevel=2)
    points = grid_points(rule)
    values = _field_values(f, points, vectorized)
    _require_finite(values, points)
    with np.errstate(over="ignore"):
        g = values * np.exp(np.sum(points**2, axis=1))
    weighted = grid_weights(rule) * g
    rows = _basis_rows(max_rank, points, PHYSICIST)
    coeffs = []
    for m in range(max_rank + 1):
        integrals = math.pi ** (-1.5) * rows[m] @ weighted
        coeffs.append(SymTensor(3, m, integrals / (2.0**m * math.factorial(m) * f0)))
    return ExpansionCoefficients(max_rank, tuple(coeffs), f0, check.admissible)


def _series(coeffs: ExpansionCoefficients, points: np.ndarray, top: int, rows=None) -> np.ndarray:
    if rows is None:
        rows = _basis_rows(top, points, PHYSICIST)
    total = np.zeros(len(points))
    for n in range(top + 1):
        mult = multiplicity_vector(n, 3)
        total += (mult * np.atleast_1d(coeffs[n].data)) @ rows[n]
    return total


def reconstruct(coeffs: ExpansionCoefficients, z):
    """Evaluate f0 exp(-z.z) sum_n inner(a_n, H_n(z)) at one point or a batch."""
    pts = np.asarray(z, dtype=np.float64)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != 3:
        raise ValueError("points must be 3-vectors")
    out = coeffs.f0 * np.exp(-np.sum(pts**2, axis=1)) * _series(coeffs, pts, coeffs.max_rank)
    return float(out[0]) if single else out


def truncation_error(f, max_rank: int, rule: QuadratureRule, f0: float = 1.0, *, vectorized: bool = False) -> np.ndarray:
    """Weighted L2 error of the rank-N truncated series for N = 0..max_rank.

    e_N**2 = Integral pi**(-3/2) exp(+z.z) |f - f_N|^2 d^3z, the norm in
    which the expansion is an orthogonal projection, so the sequence cannot
    increase as ranks are added.
    """
    coeffs = expand(f, max_rank, rule, f0, vectorized=vectorized)
    points = grid_points(rule)
    w = grid_weights(rule)
    g = _field_values(f, points, vectorized) * np.exp(np.sum(points**2, axis=1))
    rows = _basis_rows(max_rank, points, PHYSICIST)
    errors = np.empty(max_rank + 1)
    for top in range(max_rank + 1):
        residual = g - f0 * _series(coeffs, points, top, rows)
        errors[top] = math.sqrt(max(0.0, math.pi ** (-1.5) * float(np.dot(w, residual * residual))))
    return errors


@dataclass(frozen=True)
class WeightSpec:
    """Maxwellian reference weight in physical units (SI).

    Defines the dimensionless velocity z = v sqrt(mass / (2 kB T)) and the
    weight n (mass / (2 pi kB T))**(3/2) exp(-mass (v - v_av)^2 / (2 kB T)),
    which becomes n pi**(-3/2) exp(-(z - z_av)^2) per unit z volume.
    """

    density: float
    mass: float
    temperature: float
    v_av: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.density <= 0 or self.mass <= 0 or self.temperature <= 0:
            raise ValueError("density, mass and temperature must be positive")
        object.__setattr__(self, "v_av", tuple(float(c) for c in self.v_av))

    @property
    def thermal_speed(self) -> float:
        return math.sqrt(2.0 * Boltzmann * self.temperature / self.mass)

    def z_of_v(self, v) -> np.ndarray:
        return np.asarray(v, dtype=np.float64) / self.thermal_speed

    def v_of_z(self, z) -> np.ndarray:
        return np.asarray(z, dtype=np.float64) * self.thermal_speed

    @property
    def z_av(self) -> np.ndarray:
        return self.z_of_v(self.v_av)

    def weight_z(self, z):
        """Weight per unit dimensionless velocity volume."""
        pts = np.atleast_2d(np.asarray(z, dtype=np.float64))
        out = self.density * math.pi ** (-1.5) * np.exp(-np.sum((pts - self.z_av) ** 2, axis=1))
        return float(out[0]) if np.asarray(z).ndim == 1 else out
