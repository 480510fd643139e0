"""Lattice polytopes and moment maps for projective toric targets.

A polarized projective target is modelled by its lattice polytope: the
finite set A of lattice points spanning the space affinely.  The moment
map mu(z) averages the points of A with weights |z^m|, realizing the
compactified picture of a torus; its tropical analogue nu(w) uses weights
e^{-<m, w>} and satisfies nu(w) = mu(e^{-w}) on positive real arguments.
All weights are normalized in log-space so large arguments never overflow.
"""

from __future__ import annotations

import json
from dataclasses import replace
from typing import Mapping, Sequence

import numpy as np

from .amoeba import PointCloud


class LatticePolytope:
    """Finite set of lattice points A together with the vertices of conv(A)."""

    def __init__(self, lattice_points: Sequence[Sequence[int]]):
        pts = sorted({tuple(int(x) for x in p) for p in lattice_points})
        if not pts:
            raise ValueError("a polytope needs at least one lattice point")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("lattice points must share one dimension")
        arr = np.array(pts, dtype=float)
        if len(pts) < dim + 1 or np.linalg.matrix_rank(arr - arr[0]) < dim:
            raise ValueError("lattice points must span the space affinely")
        self.dim = dim
        self.lattice_points = pts
        self._array = arr
        if dim == 1:
            self.vertices = [pts[0], pts[-1]]
            self._equations = None
        else:
            from scipy.spatial import ConvexHull

            hull = ConvexHull(arr)
            self.vertices = sorted(pts[i] for i in hull.vertices)
            self._equations = hull.equations

    @classmethod
    def dilated_simplex(cls, degree: int, dim: int = 2) -> "LatticePolytope":
        """degree * (unit simplex) with all lattice points, the degree-d plane-curve polytope."""
        if degree < 1:
            raise ValueError("degree must be >= 1")
        if dim == 2:
            pts = [(i, j) for i in range(degree + 1) for j in range(degree + 1 - i)]
        elif dim == 1:
            pts = [(i,) for i in range(degree + 1)]
        else:
            raise ValueError("dilated simplices are provided for dimensions 1 and 2")
        return cls(pts)

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if self._equations is None:
            return self.vertices[0][0] - tol <= x[0] <= self.vertices[1][0] + tol
        return bool(np.all(self._equations[:, :-1] @ x + self._equations[:, -1] <= tol))

    def to_document(self) -> dict:
        return {"dim": self.dim, "lattice_points": [list(p) for p in self.lattice_points]}

    @classmethod
    def from_document(cls, doc: Mapping) -> "LatticePolytope":
        return cls(doc["lattice_points"])

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_document(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "LatticePolytope":
        with open(path, encoding="utf-8") as fh:
            return cls.from_document(json.load(fh))

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, points={len(self.lattice_points)})"


def _weighted_barycenter(P: LatticePolytope, log_weights: np.ndarray) -> np.ndarray:
    shifted = np.exp(log_weights - log_weights.max())
    weights = shifted / shifted.sum()
    return weights @ P._array


def moment_map(P: LatticePolytope, z: Sequence[complex]) -> np.ndarray:
    """mu(z) = sum |z^m| m / sum |z^m| over the lattice points of P.

    Depends only on the coordinate moduli; computed with max-shifted
    log-weights, so arbitrarily large or small moduli are safe.
    """
    zs = [complex(v) for v in z]
    if len(zs) != P.dim:
        raise ValueError(f"point has dimension {len(zs)}, expected {P.dim}")
    if any(v == 0 for v in zs):
        raise ValueError("moment map requires all coordinates nonzero")
    log_mod = np.array([np.log(abs(v)) for v in zs])
    return _weighted_barycenter(P, P._array @ log_mod)


def trop_moment(P: LatticePolytope, w: Sequence[float]) -> np.ndarray:
    """nu(w) = sum e^{-<m,w>} m / sum e^{-<m,w>}, the tropical moment map."""
    ws = np.asarray([float(x) for x in w], dtype=float)
    if ws.shape != (P.dim,):
        raise ValueError(f"point has dimension {ws.shape}, expected {(P.dim,)}")
    return _weighted_barycenter(P, -(P._array @ ws))


def trop_moment_many(P: LatticePolytope, ws: np.ndarray) -> np.ndarray:
    """Row-wise tropical moment map."""
    ws = np.asarray(ws, dtype=float)
    log_weights = -(ws @ P._array.T)                      # (N, A)
    shifted = np.exp(log_weights - log_weights.max(axis=1, keepdims=True))
    weights = shifted / shifted.sum(axis=1, keepdims=True)
    return weights @ P._array


def compactify_cloud(cloud: PointCloud, P: LatticePolytope) -> PointCloud:
    """Map a cloud in log coordinates into the polytope, point by point.

    Scaling is a log-coordinate operation, so scale the cloud first and
    compactify the result.
    """
    if cloud.dim != P.dim:
        raise ValueError("cloud and polytope dimensions differ")
    if len(cloud) == 0:
        mapped = np.empty((0, P.dim))
    else:
        mapped = trop_moment_many(P, cloud.points)
    meta = replace(cloud.meta, source=f"{cloud.meta.source}:compactified")
    return PointCloud(P.dim, mapped, meta)
