"""Tensor Hermite polynomials in the physicist and probabilist conventions.

The physicist family starts from H0 = 1, H1 = 2z and obeys the three-term
tensor recursion

    H_{n+1} = sym_product(H_n, H_1) - 2n sym_product(H_{n-1}, I),

the normalized symmetrization of H_n H_1 - 2n H_{n-1} I.  The probabilist
family (Grad's He) uses seeds He0 = 1, He1 = z and the factor n in place of
2n; the two are linked by He_n(z) = 2**(-n/2) H_n(z / sqrt(2)).

A single recursion implementation drives every use: scalar points, batched
grids (one numpy row per component) and exact coefficient tables, whose
components are PolyScalar polynomials with rational coefficients.
"""
from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .symtensor import SUPPORTED_DIMS, SymTensor, identity, max_component_diff, scalar, sym_product

__all__ = [
    "BasisEvaluation",
    "HermiteConvention",
    "PolyScalar",
    "convert",
    "evaluate_basis",
    "grad_check",
    "hermite_1d",
    "hermite_phys",
    "hermite_prob",
    "hermite_symbolic",
    "product_oracle",
]


class HermiteConvention(enum.Enum):
    PHYSICIST = "physicist"
    PROBABILIST = "probabilist"


PHYSICIST = HermiteConvention.PHYSICIST
PROBABILIST = HermiteConvention.PROBABILIST


class PolyScalar:
    """Polynomial in d scalar variables with exact Fraction coefficients.

    Arithmetic is closed over PolyScalar and rational numbers; floats are
    rejected so exactness cannot be lost silently.
    """

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs):
        self.dim = dim
        self.coeffs = {tuple(e): Fraction(c) for e, c in dict(coeffs).items() if c != 0}

    @classmethod
    def constant(cls, dim: int, value) -> "PolyScalar":
        return cls(dim, {(0,) * dim: Fraction(value)})

    @classmethod
    def variable(cls, dim: int, axis: int) -> "PolyScalar":
        exponents = [0] * dim
        exponents[axis] = 1
        return cls(dim, {tuple(exponents): Fraction(1)})

    def coefficient(self, exponents) -> Fraction:
        return self.coeffs.get(tuple(exponents), Fraction(0))

    def terms(self):
        """(exponents, coefficient) pairs, highest total degree first."""
        return sorted(self.coeffs.items(), key=lambda kv: (-sum(kv[0]), kv[0]))

    def _coerce(self, other):
        if isinstance(other, PolyScalar):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            return other
        if isinstance(other, numbers.Rational):
            return PolyScalar.constant(self.dim, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return PolyScalar(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyScalar(self.dim, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return PolyScalar(self.dim, out)

    __rmul__ = __mul__

    def __truediv__(self, divisor):
        if not isinstance(divisor, numbers.Rational):
            return NotImplemented
        return self * (Fraction(1) / divisor)

    def __eq__(self, other):
        if isinstance(other, numbers.Rational):
            other = PolyScalar.constant(self.dim, other)
        if not isinstance(other, PolyScalar):
            return NotImplemented
        return self.dim == other.dim and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exponents, coeff in self.terms():
            factors = []
            if coeff != 1 or not any(exponents):
                factors.append(str(coeff))
            for axis, e in enumerate(exponents):
                if e == 1:
                    factors.append(f"z{axis}")
                elif e > 1:
                    factors.append(f"z{axis}**{e}")
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class BasisEvaluation:
    """Tensor Hermite values H_0..H_max_rank at one point."""

    convention: HermiteConvention
    max_rank: int
    point: tuple[float, ...]
    values: tuple[SymTensor, ...]

    def __getitem__(self, rank: int) -> SymTensor:
        return self.values[rank]


def _seed_one(components, dim):
    first = components[0]
    if isinstance(first, PolyScalar):
        return PolyScalar.constant(dim, 1)
    if isinstance(first, np.ndarray):
        return np.ones_like(first, dtype=np.float64)
    return 1.0


def _delta_tensor(components, dim):
    if isinstance(components[0], PolyScalar):
        one = PolyScalar.constant(dim, 1)
        zero = PolyScalar.constant(dim, 0)
        return SymTensor.from_function(dim, 2, lambda t: one if t[0] == t[1] else zero)
    return identity(dim)


def evaluate_basis(max_rank, components, dim=3, convention=PHYSICIST):
    """Hermite tensors of rank 0..max_rank via the three-term recursion.

    ``components`` holds the d coordinates; each may be a float, an equal
    length numpy array (batched evaluation) or a PolyScalar.  Returns a list
    of SymTensor, one per rank.
    """
    comps = list(components)
    if len(comps) != dim:
        raise ValueError(f"expected {dim} coordinates, got {len(comps)}")
    if dim not in SUPPORTED_DIMS:
        raise ValueError(f"dimension must be one of {SUPPORTED_DIMS}")
    if max_rank < 0:
        raise ValueError("max_rank must be non-negative")
    seed_factor = 2 if convention is PHYSICIST else 1
    values = [scalar(_seed_one(comps, dim), dim)]
    if max_rank == 0:
        return values
    values.append(SymTensor(dim, 1, [seed_factor * c for c in comps]))
    delta = _delta_tensor(comps, dim)
    for n in range(1, max_rank):
        step = sym_product(values[n], values[1]) - (seed_factor * n) * sym_product(values[n - 1], delta)
        values.append(step)
    return values


def hermite_phys(max_rank: int, z) -> BasisEvaluation:
    """Physicist tensor Hermite polynomials H_0..H_max_rank at a 3-vector z."""
    point = tuple(float(c) for c in z)
    vals = evaluate_basis(max_rank, point, dim=len(point), convention=PHYSICIST)
    return BasisEvaluation(PHYSICIST, max_rank, point, tuple(vals))


def hermite_prob(max_rank: int, z) -> BasisEvaluation:
    """Probabilist (Grad) tensor Hermite polynomials He_0..He_max_rank at z."""
    point = tuple(float(c) for c in z)
    vals = evaluate_basis(max_rank, point, dim=len(point), convention=PROBABILIST)
    return BasisEvaluation(PROBABILIST, max_rank, point, tuple(vals))


def hermite_symbolic(max_rank: int, dim: int = 3, convention=PHYSICIST):
    """Coefficient tables: each component is an exact PolyScalar in z."""
    variables = [PolyScalar.variable(dim, axis) for axis in range(dim)]
    return evaluate_basis(max_rank, variables, dim=dim, convention=convention)


def convert(basis: BasisEvaluation, target: HermiteConvention) -> BasisEvaluation:
    """Re-express an evaluation in the other convention.

    The identity H_n(z) = 2**(n/2) He_n(sqrt(2) z) turns physicist values at
    z into probabilist values at sqrt(2) z and back; the returned evaluation
    carries the correspondingly rescaled point.
    """
    if target is basis.convention:
        return basis
    if basis.convention is PHYSICIST:
        point = tuple(math.sqrt(2.0) * c for c in basis.point)
        values = tuple(2.0 ** (-0.5 * n) * t for n, t in enumerate(basis.values))
    else:
        point = tuple(c / math.sqrt(2.0) for c in basis.point)
        values = tuple(2.0 ** (0.5 * n) * t for n, t in enumerate(basis.values))
    return BasisEvaluation(target, basis.max_rank, point, values)


def hermite_1d(n: int, x):
    """Classical 1-D physicist Hermite polynomial h_n by its recurrence."""
    if n < 0:
        raise ValueError("order must be non-negative")
    h_prev = np.ones_like(np.asarray(x, dtype=np.float64))
    if n == 0:
        return h_prev if h_prev.shape else float(h_prev)
    h = 2.0 * np.asarray(x, dtype=np.float64)
    for k in range(1, n):
        h, h_prev = 2.0 * np.asarray(x) * h - 2.0 * k * h_prev, h
    return h if np.ndim(h) else float(h)


def product_oracle(rank: int, z) -> SymTensor:
    """Independent route to H_rank: per-axis products of 1-D polynomials.

    The component at a multiset containing axis a with count m_a equals the
    product over axes of h_{m_a}(z_a).
    """
    zs = tuple(float(c) for c in z)
    dim = len(zs)

    def component(t):
        out = 1.0
        for axis in range(dim):
            count = sum(1 for a in t if a == axis)
            if count:
                out *= hermite_1d(count, zs[axis])
        return out

    return SymTensor.from_function(dim, rank, component)


def grad_check(rank: int, z, h: float = 1e-5) -> float:
    """Residual of the gradient identity grad_i H_n = 2 delta_i H_{n-1}.

    Central finite differences of each component against the symmetrized
    right-hand side 2n sym_product(e_i, H_{n-1}); returns the largest
    absolute deviation over axes and components.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    zs = np.asarray(z, dtype=np.float64)
    dim = len(zs)
    lower = evaluate_basis(rank - 1, zs, dim=dim)[rank - 1]
    worst = 0.0
    for axis in range(dim):
        offset = np.zeros(dim)
        offset[axis] = h
        plus = evaluate_basis(rank, zs + offset, dim=dim)[rank]
        minus = evaluate_basis(rank, zs - offset, dim=dim)[rank]
        fd = (plus - minus) / (2.0 * h)
        e_axis = SymTensor(dim, 1, [1.0 if a == axis else 0.0 for a in range(dim)])
        rhs = (2 * rank) * sym_product(e_axis, lower)
        worst = max(worst, max_component_diff(fd, rhs))
    return worst
