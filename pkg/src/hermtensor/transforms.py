"""Scaling and translation of the tensor Hermite basis.

Scaling z' = alpha (z - z0) keeps Hermite expansions convergent only while
alpha**2 < 2; in temperature language alpha**2 = T / T_S, so a species at
T_S can absorb an expansion at T exactly when 2 T_S > T.  Translation is
exact at any shift through a binomial sum over lower ranks, but the
translated basis is no longer orthogonal under the original weight.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .hermite import PHYSICIST, evaluate_basis, hermite_phys
from .quadrature import QuadratureRule, gauss_hermite_rule, grid_points, grid_weights
from .symtensor import SymTensor, max_component_diff, outer_power, sym_product

__all__ = [
    "ProbeResult",
    "ScalingMap",
    "TranslationMap",
    "TranslationTerm",
    "alpha_from_temperatures",
    "assemble_translation",
    "convergence_probe",
    "orthogonality_after_translation",
    "scaling_admissible",
    "temperature_window",
    "translate_basis",
    "translated_hermite",
    "translation_roundtrip",
]

TO_CENTERED = "r->0"
TO_AVERAGE = "0->r"
_DIRECTIONS = (TO_CENTERED, TO_AVERAGE)

MAX_TRANSLATE_RANK = 6


@dataclass(frozen=True)
class ScalingMap:
    """The affine map z' = alpha (z - z0), with an opaque amplitude ratio."""

    alpha: float
    z0: tuple[float, float, float] = (0.0, 0.0, 0.0)
    amplitude_ratio: float = 1.0

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError("alpha must be positive and finite")
        object.__setattr__(self, "z0", tuple(float(c) for c in self.z0))

    def apply(self, z) -> np.ndarray:
        return self.alpha * (np.asarray(z, dtype=np.float64) - np.asarray(self.z0))


@dataclass(frozen=True)
class TranslationMap:
    """Two frame centers: basis arguments z - z00 versus z - za."""

    z00: tuple[float, float, float]
    za: tuple[float, float, float]

    def __post_init__(self):
        z00 = tuple(float(c) for c in self.z00)
        za = tuple(float(c) for c in self.za)
        if not all(math.isfinite(c) for c in z00 + za):
            raise ValueError("frame centers must be finite")
        object.__setattr__(self, "z00", z00)
        object.__setattr__(self, "za", za)

    @property
    def shift(self) -> np.ndarray:
        """Offset za - z00 between the two centers."""
        return np.asarray(self.za) - np.asarray(self.z00)


def scaling_admissible(alpha: float) -> bool:
    """Strict convergence criterion alpha**2 < 2 for the scaled expansion."""
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError("alpha must be positive and finite")
    return alpha * alpha < 2.0


def alpha_from_temperatures(T: float, T_s: float) -> float:
    """Scaling factor sqrt(T / T_s) between a distribution at T and a basis at T_s."""
    if T <= 0 or T_s <= 0:
        raise ValueError("temperatures must be positive")
    return math.sqrt(T / T_s)


def temperature_window(T_i: float, T_n: float):
    """Open interval of basis temperatures serving both T_i and T_n.

    A basis at T must satisfy 2T > T_i and T < 2 T_n simultaneously, giving
    (T_i / 2, 2 T_n).  Returns None when the interval is empty, which for
    T_i >= T_n happens exactly when T_i >= 4 T_n.
    """
    if not (T_i >= T_n and T_n > 0):
        raise ValueError("need T_i >= T_n > 0")
    lo, hi = T_i / 2.0, 2.0 * T_n
    return (lo, hi) if lo < hi else None


class ProbeResult(NamedTuple):
    classification: str
    coarse: float
    fine: float


def convergence_probe(smap: ScalingMap, rule: QuadratureRule) -> ProbeResult:
    """Order-doubling classification of Integral exp(|z'|^2 - 2 |z|^2) d^3z.

    The integrand is exp((alpha**2 - 2) |z - c|^2 + ...), convergent exactly
    when alpha**2 < 2.  The quadrature value is compared at the rule's order
    and at double the order: growth beyond 10x (or a non-finite sum) is
    classified divergent, anything else finite, with agreement within 5
    percent as the confirmed-stable regime.  Near the alpha**2 = 2 boundary
    a two-point probe is indecisive by construction.
    """

    def value(r):
        points = grid_points(r)
        scaled = smap.apply(points)
        with np.errstate(over="ignore"):
            g = np.exp(np.sum(scaled**2, axis=1) - np.sum(points**2, axis=1))
            return float(np.dot(grid_weights(r), g))

    coarse = value(rule)
    fine = value(gauss_hermite_rule(2 * rule.order))
    divergent = not (math.isfinite(coarse) and math.isfinite(fine)) or fine > 10.0 * coarse
    return ProbeResult("divergent" if divergent else "finite", coarse, fine)


class TranslationTerm(NamedTuple):
    binom: int
    partner_rank: int
    shift_power: SymTensor


def translate_basis(rank: int, tmap: TranslationMap, direction: str) -> list[TranslationTerm]:
    """Binomial re-expansion of one frame's Hermite tensor in the other frame.

    Direction "r->0" writes H_n(z - z00) as sum_p C(n,p) sym_product(
    H_p(z - za), [2 (za - z00)]^(n-p)); direction "0->r" swaps the roles,
    negating the shift.  The terms alone are returned; combine them with
    ``assemble_translation`` against evaluated partner tensors.
    """
    if not 0 <= rank <= MAX_TRANSLATE_RANK:
        raise ValueError(f"rank must be within 0..{MAX_TRANSLATE_RANK}")
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {_DIRECTIONS}")
    delta = tmap.shift if direction == TO_CENTERED else -tmap.shift
    shift_vector = 2.0 * delta
    return [
        TranslationTerm(math.comb(rank, p), p, outer_power(shift_vector, rank - p))
        for p in range(rank + 1)
    ]


def assemble_translation(terms, partner_values) -> SymTensor:
    """Sum C(n,p) sym_product(partner[p], shift^(n-p)) over the term list."""
    total = None
    for term in terms:
        piece = term.binom * sym_product(partner_values[term.partner_rank], term.shift_power)
        total = piece if total is None else total + piece
    return total


def translated_hermite(rank: int, tmap: TranslationMap, direction: str, z) -> SymTensor:
    """Evaluate one frame's H_rank at z going through the other frame's basis."""
    center = tmap.za if direction == TO_CENTERED else tmap.z00
    partner = hermite_phys(rank, np.asarray(z, dtype=np.float64) - np.asarray(center))
    return assemble_translation(translate_basis(rank, tmap, direction), partner.values)


def translation_roundtrip(rank: int, tmap: TranslationMap, z) -> float:
    """Residual of translating rank 0..rank forward and back at one point."""
    if not 0 <= rank <= 5:
        raise ValueError("roundtrip supports ranks 0..5")
    point = np.asarray(z, dtype=np.float64)
    original = hermite_phys(rank, point - np.asarray(tmap.za)).values
    forward = [
        assemble_translation(translate_basis(k, tmap, TO_CENTERED), original) for k in range(rank + 1)
    ]
    back = [
        assemble_translation(translate_basis(k, tmap, TO_AVERAGE), forward) for k in range(rank + 1)
    ]
    return max(max_component_diff(back[k], original[k]) for k in range(rank + 1))


def orthogonality_after_translation(n_rank: int, m_rank: int, tmap: TranslationMap, rule: QuadratureRule) -> np.ndarray:
    """Inner products of the translated basis under the untranslated weight.

    Entries are pi**(-3/2) Integral exp(-z.z) H_n,i(z - s) H_m,j(z - s) d^3z
    with s = za - z00.  At s = 0 this is the orthogonality table; any other
    shift breaks both the cross-rank zeros and the diagonal normalization.
    """
    top = max(n_rank, m_rank)
    if rule.order < 2 * top + 2:
        raise ValueError(f"rule order {rule.order} insufficient; need >= {2 * top + 2}")
    points = grid_points(rule) - tmap.shift
    cols = (points[:, 0], points[:, 1], points[:, 2])
    tensors = evaluate_basis(top, cols, dim=3, convention=PHYSICIST)
    rows_n = np.atleast_2d(tensors[n_rank].data)
    rows_m = np.atleast_2d(tensors[m_rank].data)
    w = grid_weights(rule)
    return math.pi ** (-1.5) * np.einsum("k,ik,jk->ij", w, rows_n, rows_m)
