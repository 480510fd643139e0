"""Windowed metric comparisons between point clouds and tropical complexes.

Tropical hypersurfaces are unbounded, so every comparison here is clipped
to a finite window; the scaled-amoeba experiments then report a windowed
Hausdorff distance per scaling factor, discrete semicontinuity checks for
sampled families, and a log-log rate fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from .amoeba import PointCloud
from .tropical import CornerLocusComplex, point_segment_distances

#: Arclength discretization of a complex uses window-diagonal / GRID_STEPS.
GRID_STEPS = 512


@dataclass(frozen=True)
class Window:
    """Axis-aligned box [lo_i, hi_i] per coordinate."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(x) for x in self.lo)
        hi = tuple(float(x) for x in self.hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("window bounds must have equal positive length")
        if any(a >= b for a, b in zip(lo, hi)):
            raise ValueError("window bounds must satisfy lo < hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def square(cls, lo: float, hi: float, dim: int = 2) -> "Window":
        return cls((lo,) * dim, (hi,) * dim)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def box(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.lo, self.hi))

    def diagonal(self) -> float:
        return math.sqrt(sum((b - a) ** 2 for a, b in zip(self.lo, self.hi)))

    def contains(self, point) -> bool:
        return all(a <= float(x) <= b for x, a, b in zip(point, self.lo, self.hi))

    def mask(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        lo = np.array(self.lo)
        hi = np.array(self.hi)
        return np.all((pts >= lo) & (pts <= hi), axis=1)

    def scaled(self, factor: float) -> "Window":
        if factor <= 0:
            raise ValueError("window scaling must be positive")
        return Window(tuple(a * factor for a in self.lo),
                      tuple(b * factor for b in self.hi))


def _points_of(obj) -> np.ndarray:
    pts = obj.points if isinstance(obj, PointCloud) else np.asarray(obj, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected an (N, d) array of points")
    return pts


def directed_hausdorff(a, b) -> float:
    """max over a of the distance to the nearest point of b (brute force)."""
    pa, pb = _points_of(a), _points_of(b)
    if pa.shape[0] == 0 or pb.shape[0] == 0:
        raise ValueError("directed Hausdorff distance needs nonempty clouds")
    if pa.shape[1] != pb.shape[1]:
        raise ValueError("dimension mismatch between clouds")
    return float(cdist(pa, pb).min(axis=1).max())


def hausdorff(a, b) -> float:
    """Symmetric Hausdorff distance between finite clouds (brute force)."""
    pa, pb = _points_of(a), _points_of(b)
    if pa.shape[0] == 0 or pb.shape[0] == 0:
        raise ValueError("Hausdorff distance needs nonempty clouds")
    if pa.shape[1] != pb.shape[1]:
        raise ValueError("dimension mismatch between clouds")
    dm = cdist(pa, pb)
    return float(max(dm.min(axis=1).max(), dm.min(axis=0).max()))


def directed_cloud_to_complex(cloud, comp: CornerLocusComplex, window: Window) -> float:
    """max over cloud points inside the window of the distance to the windowed complex."""
    pts = _points_of(cloud)
    inside = pts[window.mask(pts)]
    if inside.shape[0] == 0:
        raise ValueError("no cloud points inside the window")
    segs = comp.clipped_segments(window.box())
    if not segs:
        raise ValueError("complex does not intersect the window")
    return float(point_segment_distances(inside, segs).max())


def directed_complex_to_cloud(cloud, comp: CornerLocusComplex, window: Window,
                              grid: int = GRID_STEPS) -> float:
    """max over a discretization of the windowed complex of the distance to the cloud."""
    pts = _points_of(cloud)
    if pts.shape[0] == 0:
        raise ValueError("cloud is empty")
    step = window.diagonal() / grid
    samples = comp.sample_points(window.box(), step)
    if samples.shape[0] == 0:
        raise ValueError("complex does not intersect the window")
    tree = cKDTree(pts)
    dists, _ = tree.query(samples)
    return float(np.max(dists))


def hausdorff_to_complex(cloud, comp: CornerLocusComplex, window: Window,
                         grid: int = GRID_STEPS) -> float:
    """Windowed Hausdorff distance between a planar cloud and a corner locus."""
    forward = directed_cloud_to_complex(cloud, comp, window)
    backward = directed_complex_to_cloud(cloud, comp, window, grid)
    return max(forward, backward)


# ---------------------------------------------------------------------------
# discrete Kuratowski semicontinuity checks
# ---------------------------------------------------------------------------

class FamilySample:
    """Sampled one-parameter family of clouds with strictly monotone parameters."""

    def __init__(self, entries: Sequence[tuple[float, PointCloud]]):
        entries = [(float(b), cloud) for b, cloud in entries]
        if not entries:
            raise ValueError("family needs at least one fiber")
        params = [b for b, _ in entries]
        diffs = [y - x for x, y in zip(params, params[1:])]
        if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            raise ValueError("family parameters must be strictly monotone")
        self.entries = entries

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx: int) -> tuple[float, PointCloud]:
        return self.entries[idx]

    @property
    def params(self) -> tuple[float, ...]:
        return tuple(b for b, _ in self.entries)


def _neighbors(family: FamilySample, b0_index: int, delta: float):
    b0 = family[b0_index][0]
    for i, (b, cloud) in enumerate(family.entries):
        if i != b0_index and abs(b - b0) < delta:
            yield b, cloud


def kuratowski_usc_check(family: FamilySample, b0_index: int,
                         eps: float, delta: float) -> bool:
    """Discrete upper-semicontinuity surrogate at the fiber b0.

    Candidate test points are the sampled points themselves: the check
    fails exactly when some nearby fiber (|b - b0| < delta) contains a
    point farther than eps from the b0 fiber, i.e. a point y at distance
    > eps from S_b0 whose eps/2-ball meets a nearby fiber.
    """
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    s0 = family[b0_index][1]
    for _, cloud in _neighbors(family, b0_index, delta):
        if len(cloud) == 0:
            continue
        if directed_hausdorff(cloud, s0) > eps:
            return False
    return True


def kuratowski_lsc_check(family: FamilySample, b0_index: int,
                         eps: float, delta: float) -> bool:
    """Discrete lower-semicontinuity surrogate at the fiber b0.

    Every point of the b0 fiber must be eps-close to each nearby fiber:
    the directed Hausdorff condition d(S_b0 -> S_b) <= eps.
    """
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    s0 = family[b0_index][1]
    for _, cloud in _neighbors(family, b0_index, delta):
        if len(cloud) == 0:
            return False
        if directed_hausdorff(s0, cloud) > eps:
            return False
    return True


def rate_fit(rho_list: Sequence[float], d_list: Sequence[float]) -> tuple[float, float]:
    """Least-squares slope and intercept of log d against log rho."""
    rhos = np.asarray(list(rho_list), dtype=float)
    ds = np.asarray(list(d_list), dtype=float)
    if rhos.shape != ds.shape or rhos.size < 3:
        raise ValueError("rate fit needs at least three matching samples")
    if np.any(rhos <= 0) or np.any(ds <= 0):
        raise ValueError("rate fit requires positive entries")
    slope, intercept = np.polyfit(np.log(rhos), np.log(ds), 1)
    return float(slope), float(intercept)
