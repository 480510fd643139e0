"""Amoeba sampling and membership certificates for Laurent hypersurfaces.

The amoeba of V(f) in the complex torus is its image under
Log(z) = (-log|z_1|, ..., -log|z_n|).  Points are sampled by fixing the
first n-1 log-moduli and phases at random, which reduces membership to a
univariate root count in the last variable.  Roots come from companion
matrix eigenvalues with one step of Newton polishing.

The lopsidedness certificate is the dominant-term inequality: if one term
of sum |a_m| e^{-<m,w>} strictly exceeds the sum of all others, no phase
choice can make f vanish on the torus with radii e^{-w}, so w is certified
outside the amoeba.
"""

from __future__ import annotations

import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .poly import LaurentPolynomial

#: Roots with modulus outside this range are dropped so every log stays
#: finite.  Trust in a root comes from the relative residual check, not a
#: modulus cut: a slice with a near-vanishing extreme coefficient really
#: does have a root of extreme modulus, and the scaling experiments need
#: moduli up to e^(window/rho).
MODULUS_RANGE = (1e-300, 1e300)

#: Relative residual bound for emitted points: |f(z)| <= RESIDUAL_TOL * scale.
RESIDUAL_TOL = 1e-8

THREADS_ENV_VAR = "AMOEBATROP_THREADS"


@dataclass(frozen=True)
class CloudMeta:
    source: str
    scaling: float = 1.0
    samples_requested: int = 0
    seed: int = 0
    skipped: int = 0

    def __post_init__(self):
        if self.scaling <= 0:
            raise ValueError("scaling factor must be positive")


class PointCloud:
    """Finite set of points in R^n with sampling provenance."""

    def __init__(self, dim: int, points, meta: CloudMeta, witnesses=None):
        pts = np.asarray(points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, dim)
        if pts.ndim != 2 or pts.shape[1] != dim:
            raise ValueError(f"points must form an (N, {dim}) array")
        self.dim = dim
        self.points = pts
        self.meta = meta
        # Torus points witnessing each row; dropped by scaling.
        self.witnesses = witnesses

    def __len__(self) -> int:
        return self.points.shape[0]

    def scaled(self, rho: float) -> "PointCloud":
        """Multiply every point by rho > 0 and track the factor in the metadata."""
        rho = float(rho)
        if rho <= 0:
            raise ValueError("scaling factor must be positive")
        return PointCloud(self.dim, self.points * rho,
                          replace(self.meta, scaling=self.meta.scaling * rho))

    # -- CSV persistence -----------------------------------------------------
    # Header:  # dim=n scaling=r seed=s source=<id>
    # then one point per line, shortest round-trip decimals.

    def save_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# dim={self.dim} scaling={self.meta.scaling!r} "
                     f"seed={self.meta.seed} source={self.meta.source}\n")
            for row in self.points:
                fh.write(",".join(repr(float(x)) for x in row))
                fh.write("\n")

    @classmethod
    def load_csv(cls, path) -> "PointCloud":
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().strip()
            match = re.match(r"#\s*dim=(\d+)\s+scaling=(\S+)\s+seed=(\S+)\s+source=(.*)$", header)
            if not match:
                raise ValueError(f"{path}: malformed point-cloud header: {header!r}")
            dim = int(match.group(1))
            scaling = float(match.group(2))
            seed = int(match.group(3))
            source = match.group(4)
            rows = [tuple(float(tok) for tok in line.strip().split(","))
                    for line in fh if line.strip()]
        meta = CloudMeta(source=source, scaling=scaling,
                         samples_requested=len(rows), seed=seed)
        return cls(dim, np.array(rows, dtype=float).reshape(len(rows), dim), meta)


def scale_cloud(cloud: PointCloud, rho: float) -> PointCloud:
    return cloud.scaled(rho)


# ---------------------------------------------------------------------------
# slice structure: f as a univariate Laurent polynomial in the last variable
# ---------------------------------------------------------------------------

class _SliceStructure:
    """Coefficient layout of f viewed as a polynomial in one coordinate.

    After clearing the lowest power of the solved coordinate the slice
    polynomial has ascending coefficients c_0 .. c_K with c_k(z_head) a sum
    of a_m z_head^{m_head} over support points whose solved exponent is
    k_min + k; z_head runs over the remaining coordinates in ascending
    axis order.
    """

    def __init__(self, f: LaurentPolynomial, axis: int):
        if f.is_zero():
            raise ValueError("cannot slice the zero polynomial")
        self.dim = f.dim
        self.axis = axis
        exps = sorted({m[axis] for m in f.support()})
        if len(exps) < 2:
            raise ValueError(
                f"polynomial must depend on coordinate {axis} with at least "
                "two distinct exponents")
        self.k_min = exps[0]
        self.k_max = exps[-1]
        self.degree = self.k_max - self.k_min
        # groups[k] = list of (head exponent, coefficient)
        self.groups: list[list[tuple[tuple[int, ...], complex]]] = [
            [] for _ in range(self.degree + 1)
        ]
        for m, c in f.terms.items():
            head = m[:axis] + m[axis + 1:]
            self.groups[m[axis] - self.k_min].append((head, c))
        self.f = f

    def coefficients(self, z_head: np.ndarray) -> np.ndarray:
        """Ascending coefficient matrix, one row per sample of z_head (N, n-1)."""
        n_samples = z_head.shape[0]
        coeffs = np.zeros((n_samples, self.degree + 1), dtype=complex)
        for k, group in enumerate(self.groups):
            for head, c in group:
                term = np.full(n_samples, c, dtype=complex)
                for axis, expo in enumerate(head):
                    if expo:
                        term = term * z_head[:, axis] ** expo
                coeffs[:, k] += term
        return coeffs


#: Relative size below which a leading coefficient counts as a degree drop.
#: Deliberately tiny: a small-but-real leading coefficient means a genuinely
#: huge root, and the companion computation stays well conditioned across a
#: wide dynamic range.  Roots pushed beyond ~1e100 fall outside any window
#: of interest anyway.
_LEAD_TRUST = 1e-100


def _roots_of_rows(coeffs: np.ndarray) -> np.ndarray:
    """Roots of each row (ascending coefficients) via companion eigenvalues.

    Rows whose leading coefficient is negligible relative to the row fall
    back to np.roots with trimmed degree.  Returns an (N, K) complex array
    padded with NaN.
    """
    n_rows, width = coeffs.shape
    degree = width - 1
    out = np.full((n_rows, degree), np.nan + 0j, dtype=complex)
    if degree == 0:
        return out
    scale = np.max(np.abs(coeffs), axis=1)
    lead = coeffs[:, -1]
    ok = np.abs(lead) > _LEAD_TRUST * np.where(scale > 0, scale, 1.0)

    idx = np.nonzero(ok)[0]
    if idx.size:
        monic = coeffs[idx] / lead[idx, None]
        if degree == 1:
            out[idx, 0] = -monic[:, 0]
        else:
            comp = np.zeros((idx.size, degree, degree), dtype=complex)
            comp[:, 0, :] = -monic[:, -2::-1]
            rows = np.arange(1, degree)
            comp[:, rows, rows - 1] = 1.0
            out[idx] = np.linalg.eigvals(comp)

    for i in np.nonzero(~ok)[0]:
        if scale[i] == 0:
            continue
        descending = coeffs[i, ::-1]
        nz = np.nonzero(np.abs(descending) > _LEAD_TRUST * scale[i])[0]
        if nz.size < 2:
            continue
        trimmed = descending[nz[0]:]
        roots = np.roots(trimmed)
        out[i, :roots.size] = roots
    return out


def _newton_polish(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    # One Newton step per root on the ascending-coefficient rows.
    width = coeffs.shape[1]
    val = np.zeros_like(roots)
    der = np.zeros_like(roots)
    with np.errstate(all="ignore"):
        for k in range(width - 1, -1, -1):
            der = der * roots + val
            val = val * roots + coeffs[:, k, None]
        step = val / der
    polished = roots - step
    keep = np.isfinite(polished)
    return np.where(keep, polished, roots)


def _evaluate_many(f: LaurentPolynomial, zs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values of f and sum of term moduli at each row of zs (N, n)."""
    n = zs.shape[0]
    total = np.zeros(n, dtype=complex)
    scale = np.zeros(n, dtype=float)
    for m, c in f.terms.items():
        term = np.full(n, c, dtype=complex)
        for axis, expo in enumerate(m):
            if expo:
                term = term * zs[:, axis] ** expo
        total += term
        scale += np.abs(term)
    return total, scale


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def _normalize_window(window, head_dim: int) -> list[tuple[float, float]]:
    pairs = [(float(lo), float(hi)) for lo, hi in window]
    if len(pairs) != head_dim:
        raise ValueError(f"window must provide {head_dim} coordinate intervals")
    for lo, hi in pairs:
        if not lo < hi:
            raise ValueError("window bounds must satisfy lo < hi")
    return pairs


def _solvable_axes(f: LaurentPolynomial) -> list[int]:
    return [axis for axis in range(f.dim)
            if len({m[axis] for m in f.support()}) >= 2]


def _sample_chunk(structures: list[_SliceStructure], window, seed: int,
                  start: int, stop: int):
    n = stop - start
    dim = structures[0].dim
    head_dim = dim - 1
    w_head = np.empty((n, head_dim))
    theta = np.empty((n, head_dim))
    for offset in range(n):
        rng = np.random.default_rng([seed, start + offset])
        for col, (lo, hi) in enumerate(window):
            w_head[offset, col] = rng.uniform(lo, hi)
        theta[offset] = rng.uniform(0.0, 2.0 * math.pi, head_dim)
    z_head = np.exp(-w_head + 1j * theta)

    # The solved coordinate cycles through the solvable axes so every
    # tentacle of the amoeba gets covered, not just the ones transverse to
    # one fixed axis.
    n_axes = len(structures)
    per_sample: list[tuple] = [None] * n
    skipped = 0
    for which, structure in enumerate(structures):
        rows = np.arange(start, stop)
        local = np.nonzero(rows % n_axes == which)[0]
        if local.size == 0:
            continue
        coeffs = structure.coefficients(z_head[local])
        roots = _roots_of_rows(coeffs)
        roots = _newton_polish(coeffs, roots)
        moduli = np.abs(roots)
        trusted = (np.isfinite(moduli)
                   & (moduli >= MODULUS_RANGE[0]) & (moduli <= MODULUS_RANGE[1]))
        axis = structure.axis
        for pos, i in enumerate(local):
            cols = np.nonzero(trusted[pos])[0]
            if cols.size == 0:
                continue
            zs = np.empty((cols.size, dim), dtype=complex)
            zs[:, :axis] = z_head[i, :axis]
            zs[:, axis + 1:] = z_head[i, axis:]
            zs[:, axis] = roots[pos, cols]
            values, scales = _evaluate_many(structure.f, zs)
            good = np.abs(values) <= RESIDUAL_TOL * np.where(scales > 0, scales, 1.0)
            if not np.all(good):
                # Non-convergence on this sample: skip it entirely.
                skipped += 1
                continue
            w_solved = -np.log(np.abs(zs[:, axis]))
            order = np.lexsort((np.angle(zs[:, axis]), w_solved))
            per_sample[i] = (axis, w_head[i], zs[order], w_solved[order])

    points = []
    witnesses = []
    for entry in per_sample:
        if entry is None:
            continue
        axis, head, zs, w_solved = entry
        for j in range(zs.shape[0]):
            w_full = np.empty(dim)
            w_full[:axis] = head[:axis]
            w_full[axis + 1:] = head[axis:]
            w_full[axis] = w_solved[j]
            points.append(tuple(w_full))
            witnesses.append(zs[j])
    return points, witnesses, skipped


def sample_amoeba(f: LaurentPolynomial, count: int, window, seed: int,
                  threads: int | None = None,
                  keep_witnesses: bool = False) -> PointCloud:
    """Sample the amoeba of V(f) over a window of fixed log-moduli.

    Each sample draws n-1 log-moduli uniformly in the window and phases
    uniformly, sets z_i = e^{-w_i + i theta_i} on those coordinates, and
    emits Log(z) = (-log|z_1|, ..., -log|z_n|) for every trusted root of
    the remaining univariate slice.  The solved coordinate cycles through
    all axes on which f has at least two distinct exponents; the window
    intervals apply to the fixed coordinates in ascending axis order.

    Per-sample random substreams make the output independent of the thread
    partition, so equal (f, count, window, seed) give bit-identical clouds.
    """
    if count < 1:
        raise ValueError("sample count must be >= 1")
    if len({m[-1] for m in f.support()}) < 2:
        raise ValueError(
            "polynomial must depend on the last variable with at least "
            "two distinct exponents")
    structures = [_SliceStructure(f, axis) for axis in _solvable_axes(f)]
    pairs = _normalize_window(window, f.dim - 1)

    if threads is None:
        threads = int(os.environ.get(THREADS_ENV_VAR, "1"))
    threads = max(1, threads)

    if threads == 1:
        chunks = [_sample_chunk(structures, pairs, seed, 0, count)]
    else:
        size = (count + threads - 1) // threads
        bounds = [(s, min(s + size, count)) for s in range(0, count, size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(
                lambda se: _sample_chunk(structures, pairs, seed, se[0], se[1]),
                bounds))

    points = [p for chunk in chunks for p in chunk[0]]
    witnesses = [w for chunk in chunks for w in chunk[1]]
    skipped = sum(chunk[2] for chunk in chunks)

    meta = CloudMeta(source=f"amoeba:{_poly_tag(f)}", scaling=1.0,
                     samples_requested=count, seed=seed, skipped=skipped)
    cloud = PointCloud(f.dim, np.array(points, dtype=float).reshape(len(points), f.dim),
                       meta,
                       witnesses=np.array(witnesses) if keep_witnesses else None)
    return cloud


def _poly_tag(f: LaurentPolynomial) -> str:
    return f"n{f.dim}t{len(f.support())}"


# ---------------------------------------------------------------------------
# membership oracles
# ---------------------------------------------------------------------------

def membership_slice(f: LaurentPolynomial, w: Sequence[float],
                     phase_grid: int = 256, tol: float = 1e-3) -> bool:
    """Approximate planar membership test along the phase circle.

    True iff for some phase theta on a uniform grid a root z_2 of
    f(e^{-w_1 + i theta}, .) satisfies |-log|z_2| - w_2| <= tol.  A true
    answer exhibits a genuine amoeba point within tol of w (up to the
    phase-grid modulus of continuity); false answers can be refined by
    enlarging the grid.
    """
    if f.dim != 2:
        raise ValueError("membership_slice is a planar test (dimension 2)")
    if phase_grid < 8:
        raise ValueError("phase_grid must be at least 8")
    structure = _SliceStructure(f, axis=1)
    w1, w2 = float(w[0]), float(w[1])
    # Endpoint-inclusive grid: with 256 values the spacing is 2*pi/255, so
    # thirds of the circle land exactly on grid points.
    theta = np.linspace(0.0, 2.0 * math.pi, phase_grid)
    z1 = np.exp(-w1 + 1j * theta)[:, None]
    coeffs = structure.coefficients(z1)
    roots = _roots_of_rows(coeffs)
    roots = _newton_polish(coeffs, roots)
    moduli = np.abs(roots)
    trusted = np.isfinite(moduli) & (moduli >= MODULUS_RANGE[0]) & (moduli <= MODULUS_RANGE[1])
    if not np.any(trusted):
        return False
    gap = np.abs(-np.log(moduli[trusted]) - w2)
    return bool(np.min(gap) <= tol)


def lopsided_certificate(f: LaurentPolynomial, w: Sequence[float]) -> bool:
    """Certified exterior test: one term dominates the sum of all others.

    True implies w is not in the amoeba of V(f); false is inconclusive.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no amoeba certificate")
    ws = [float(x) for x in w]
    if len(ws) != f.dim:
        raise ValueError(f"point has dimension {len(ws)}, expected {f.dim}")
    sizes = [abs(c) * math.exp(-sum(mi * wi for mi, wi in zip(m, ws)))
             for m, c in f.terms.items()]
    top = max(sizes)
    return top > sum(sizes) - top
