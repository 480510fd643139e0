"""Monomial valuations and hybrid seminorms on complex Laurent data.

The base field carries the norm max(|.|_oo, |.|_0): Archimedean modulus
capped below by the trivial norm.  Its multiplicative seminorms are exactly
|.|_oo^rho for rho in [0, 1], with rho = 0 read as the trivial norm; a point
eta of the torus therefore spans a whole segment of seminorms
f -> |f(eta)|^rho.  At rho = 0 the natural limits are monomial valuations
v(f) = min <m, alpha> with positive weights alpha, and the polycircle
experiment quantifies how |f|^rho on the torus of radii e^{-alpha_i/rho}
approaches e^{-v(f)} as rho shrinks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .poly import LaurentPolynomial

#: Smallest polycircle radius before the coordinates underflow.
RADIUS_FLOOR = 1e-300


@dataclass(frozen=True)
class MonomialValuation:
    """Weight vector alpha > 0 assigning value <m, alpha> to the monomial z^m."""

    weights: tuple[float, ...]

    def __post_init__(self):
        weights = tuple(float(a) for a in self.weights)
        if not weights:
            raise ValueError("at least one weight is required")
        if any(a <= 0 for a in weights):
            raise ValueError("all valuation weights must be positive")
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class SectionPoint:
    """Seminorm f -> |f(eta)|^rho attached to a torus point eta, 0 <= rho <= 1."""

    eta: tuple[complex, ...]
    rho: float

    def __post_init__(self):
        eta = tuple(complex(v) for v in self.eta)
        if any(v == 0 for v in eta):
            raise ValueError("section points live on the torus: all eta_i nonzero")
        rho = float(self.rho)
        if not 0.0 <= rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "rho", rho)


@dataclass(frozen=True)
class MonomialPoint:
    """Point of the trivially-valued fiber given by a monomial valuation."""

    valuation: MonomialValuation


HybridPoint = SectionPoint | MonomialPoint


def _check_power_series_support(f: LaurentPolynomial) -> None:
    for m in f.support():
        if any(e < 0 for e in m):
            raise ValueError(
                "monomial valuations require nonnegative exponents "
                f"(offending monomial {m})")


def monomial_value(v: MonomialValuation, f: LaurentPolynomial) -> float:
    """min over the support of <m, alpha>; +infinity for the zero polynomial."""
    if f.dim != v.dim:
        raise ValueError("dimension mismatch between valuation and polynomial")
    _check_power_series_support(f)
    if f.is_zero():
        return math.inf
    return min(sum(mi * ai for mi, ai in zip(m, v.weights)) for m in f.support())


def hybrid_base_norm(a: complex) -> float:
    """max(|a|, 1) for nonzero a, and 0 at 0."""
    a = complex(a)
    if a == 0:
        return 0.0
    return max(abs(a), 1.0)


def hybrid_seminorm(p: SectionPoint, f: LaurentPolynomial) -> float:
    """|f(eta)|^rho, with the exact trivial-norm branch at rho = 0."""
    if not isinstance(p, SectionPoint):
        raise TypeError("hybrid_seminorm expects a SectionPoint")
    value = abs(f.evaluate(p.eta)) if not f.is_zero() else 0.0
    if p.rho == 0.0:
        return 1.0 if value > 0.0 else 0.0
    return value ** p.rho


def lambda_of(p: HybridPoint) -> float:
    """Exponent coordinate of a hybrid point: rho for sections, 0 for valuations."""
    if isinstance(p, SectionPoint):
        return p.rho
    if isinstance(p, MonomialPoint):
        return 0.0
    raise TypeError(f"not a hybrid point: {type(p)!r}")


# ---------------------------------------------------------------------------
# polycircle experiment
# ---------------------------------------------------------------------------

def _phase_grid(dim: int, phase_samples: int, seed: int) -> np.ndarray:
    if phase_samples < 1:
        raise ValueError("phase_samples must be >= 1")
    if dim <= 2:
        axes = [2.0 * math.pi * np.arange(phase_samples) / phase_samples] * dim
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([ax.ravel() for ax in mesh])
    from scipy.stats import qmc

    sampler = qmc.LatinHypercube(d=dim, seed=seed)
    return 2.0 * math.pi * sampler.random(phase_samples)


def polycircle_sup(f: LaurentPolynomial, weights, rho: float,
                   phase_samples: int = 64, seed: int = 0) -> float:
    """Max of |f|^rho over the torus with radii |z_i| = e^{-alpha_i/rho}.

    Phases are swept on a full tensor grid for n <= 2 and a seeded Latin
    hypercube otherwise; the evaluation runs in log-modulus form so the
    minuscule radii never underflow.
    """
    v = weights if isinstance(weights, MonomialValuation) else MonomialValuation(tuple(weights))
    if f.is_zero():
        raise ValueError("zero polynomial has no polycircle supremum")
    if f.dim != v.dim:
        raise ValueError("dimension mismatch between weights and polynomial")
    _check_power_series_support(f)
    rho = float(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    log_radius = [-a / rho for a in v.weights]
    if any(lr < math.log(RADIUS_FLOOR) for lr in log_radius):
        raise ValueError(
            "polycircle radius underflows double precision; "
            "increase rho or rescale the weights")

    support = list(f.terms.items())
    log_mods = np.array([
        math.log(abs(c)) + sum(mi * lr for mi, lr in zip(m, log_radius))
        for m, c in support
    ])
    args = np.array([cmath.phase(c) for _, c in support])
    exponents = np.array([m for m, _ in support], dtype=float)

    theta = _phase_grid(f.dim, phase_samples, seed)          # (P, n)
    shift = log_mods.max()
    amplitudes = np.exp(log_mods - shift)                     # (T,)
    phases = theta @ exponents.T + args[None, :]              # (P, T)
    values = (amplitudes[None, :] * np.exp(1j * phases)).sum(axis=1)
    mags = np.abs(values)
    best = mags.max()
    if best == 0.0:
        return 0.0
    return math.exp(rho * (shift + math.log(best)))


class PolycircleRow(NamedTuple):
    rho: float
    sup: float
    target: float
    abs_error: float


def polycircle_limit_report(f: LaurentPolynomial, weights, rho_list: Sequence[float],
                            phase_samples: int = 64, seed: int = 0) -> list[PolycircleRow]:
    """Table of polycircle suprema against the valuation limit e^{-v(f)}.

    rho_list must be strictly decreasing and positive; in the dominant-term
    regime the error column should shrink along the list.
    """
    v = weights if isinstance(weights, MonomialValuation) else MonomialValuation(tuple(weights))
    rhos = [float(r) for r in rho_list]
    if not rhos:
        raise ValueError("rho list must be nonempty")
    if any(r <= 0 for r in rhos) or any(a <= b for a, b in zip(rhos, rhos[1:])):
        raise ValueError("rho list must be strictly decreasing and positive")
    target = math.exp(-monomial_value(v, f))
    rows = []
    for r in rhos:
        sup = polycircle_sup(f, v, r, phase_samples=phase_samples, seed=seed)
        rows.append(PolycircleRow(r, sup, target, abs(sup - target)))
    return rows


def report_errors_decrease(rows: Sequence[PolycircleRow], slack: float = 0.1,
                           regime: float = 0.1, floor: float = 1e-12) -> bool:
    """Whether the error column is non-increasing (within slack) in the regime.

    Consecutive rows are compared once the later rho is <= regime; the tiny
    absolute floor keeps exactly-converged rows from tripping the ratio.
    """
    for prev, cur in zip(rows, rows[1:]):
        if cur.rho <= regime and cur.abs_error > (1.0 + slack) * prev.abs_error + floor:
            return False
    return True
