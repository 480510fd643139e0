"""Tropical polynomials and planar corner-locus complexes.

A tropical polynomial is a finite set of affine forms c_m + <m, w> indexed
by integer exponent vectors m; it evaluates to their minimum.  Its
hypersurface (corner locus) is the set of points where the minimum is
attained at least twice.  In the plane the corner locus is a 1-dimensional
polyhedral complex dual to the regular subdivision of the Newton polygon
induced by the lift m -> (m, c_m); this module builds that complex
explicitly and supports membership queries and windowed distances.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

ExponentVector = tuple[int, ...]

#: Default absolute tolerance for "minimum attained twice".  Inputs of
#: interest have small integer or half-integer data, so exact ties survive
#: float noise at this scale.
EPSILON_TIE = 1e-9

# Tie tolerance for hull/interval predicates on non-integer coefficient data.
_PREDICATE_TOL = 1e-12


class TropicalPolynomial:
    """min-plus polynomial  w  ->  min_m (c_m + <m, w>)."""

    __slots__ = ("_dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[ExponentVector, float]):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        clean: dict[ExponentVector, float] = {}
        for expo, coeff in terms.items():
            key = tuple(int(e) for e in expo)
            if len(key) != dim:
                raise ValueError(f"exponent {expo!r} has wrong dimension (expected {dim})")
            if key in clean:
                raise ValueError(f"duplicate exponent vector {key!r}")
            clean[key] = float(coeff)
        if not clean:
            raise ValueError("tropical polynomial needs a nonempty support")
        self._dim = dim
        self._terms = {k: clean[k] for k in sorted(clean)}

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def terms(self) -> dict[ExponentVector, float]:
        return dict(self._terms)

    def support(self) -> tuple[ExponentVector, ...]:
        return tuple(self._terms)

    def has_integer_coefficients(self) -> bool:
        return all(float(c).is_integer() for c in self._terms.values())

    def evaluate(self, w: Sequence[float]) -> float:
        """Value of the piecewise-affine minimum at w."""
        ws = tuple(float(x) for x in w)
        if len(ws) != self._dim:
            raise ValueError(f"point has dimension {len(ws)}, expected {self._dim}")
        return min(c + _dot(m, ws) for m, c in self._terms.items())

    def argmin_support(self, w: Sequence[float], tol: float = EPSILON_TIE) -> tuple[ExponentVector, ...]:
        """All exponent vectors whose affine form is within tol of the minimum."""
        if tol < 0:
            raise ValueError("tolerance must be >= 0")
        ws = tuple(float(x) for x in w)
        if len(ws) != self._dim:
            raise ValueError(f"point has dimension {len(ws)}, expected {self._dim}")
        values = {m: c + _dot(m, ws) for m, c in self._terms.items()}
        best = min(values.values())
        return tuple(m for m in sorted(values) if values[m] <= best + tol)

    def is_member(self, w: Sequence[float], tol: float = EPSILON_TIE) -> bool:
        """Whether w lies on the tropical hypersurface (minimum attained twice)."""
        return len(self.argmin_support(w, tol)) >= 2

    def scaled(self, rho: float) -> "TropicalPolynomial":
        """Same support with every coefficient multiplied by rho."""
        return TropicalPolynomial(self._dim, {m: rho * c for m, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalPolynomial):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._dim, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{m}: {c}" for m, c in self._terms.items())
        return f"TropicalPolynomial(dim={self._dim}, {{{body}}})"


def _dot(m: Iterable[float], w: Sequence[float]) -> float:
    return sum(mi * wi for mi, wi in zip(m, w))


@dataclass(frozen=True)
class Segment:
    """Bounded 1-cell: indices into the vertex list plus the witness pair."""

    start: int
    end: int
    pair: tuple[ExponentVector, ExponentVector]


@dataclass(frozen=True)
class Ray:
    """Unbounded 1-cell: base vertex index and a primitive integer direction."""

    base: int
    direction: tuple[int, int]
    pair: tuple[ExponentVector, ExponentVector]


class CornerLocusComplex:
    """Vertices, segments and rays of a planar tropical hypersurface."""

    def __init__(self, vertices: Sequence[tuple[float, float]],
                 segments: Sequence[Segment], rays: Sequence[Ray]):
        self.vertices = [(float(x), float(y)) for x, y in vertices]
        self.segments = list(segments)
        self.rays = list(rays)

    def is_empty(self) -> bool:
        return not (self.segments or self.rays)

    def clipped_segments(self, window) -> list[tuple[tuple[float, float], tuple[float, float]]]:
        """All 1-cells clipped to a window box ((lo1,hi1),(lo2,hi2))."""
        box = _as_box(window)
        out = []
        for seg in self.segments:
            a = self.vertices[seg.start]
            b = self.vertices[seg.end]
            d = (b[0] - a[0], b[1] - a[1])
            rng = _clip_parametric(a, d, box, 0.0, 1.0)
            if rng is not None:
                out.append((_at(a, d, rng[0]), _at(a, d, rng[1])))
        for ray in self.rays:
            a = self.vertices[ray.base]
            d = (float(ray.direction[0]), float(ray.direction[1]))
            rng = _clip_parametric(a, d, box, 0.0, math.inf)
            if rng is not None and math.isfinite(rng[1]):
                out.append((_at(a, d, rng[0]), _at(a, d, rng[1])))
        return out

    def sample_points(self, window, step: float) -> np.ndarray:
        """Discretize the clipped complex with roughly the given arclength step."""
        if step <= 0:
            raise ValueError("step must be positive")
        chunks = []
        for (a, b) in self.clipped_segments(window):
            length = math.hypot(b[0] - a[0], b[1] - a[1])
            n = max(2, int(math.ceil(length / step)) + 1)
            ts = np.linspace(0.0, 1.0, n)
            chunks.append(np.column_stack([a[0] + ts * (b[0] - a[0]),
                                           a[1] + ts * (b[1] - a[1])]))
        if not chunks:
            return np.empty((0, 2))
        return np.vstack(chunks)

    def distance(self, w: Sequence[float], window) -> float:
        """Euclidean distance from w to the union of cells clipped to the window."""
        segs = self.clipped_segments(window)
        if not segs:
            if self.is_empty():
                raise ValueError("corner locus complex has no cells")
            raise ValueError("complex does not intersect the window")
        p = (float(w[0]), float(w[1]))
        return min(_point_segment_distance(p, a, b) for a, b in segs)

    def to_document(self) -> dict:
        return {
            "vertices": [[x, y] for x, y in self.vertices],
            "segments": [
                {"start": s.start, "end": s.end, "pair": [list(s.pair[0]), list(s.pair[1])]}
                for s in self.segments
            ],
            "rays": [
                {"base": r.base, "direction": list(r.direction),
                 "pair": [list(r.pair[0]), list(r.pair[1])]}
                for r in self.rays
            ],
        }

    @classmethod
    def from_document(cls, doc: Mapping) -> "CornerLocusComplex":
        vertices = [tuple(v) for v in doc["vertices"]]
        segments = [Segment(s["start"], s["end"],
                            (tuple(s["pair"][0]), tuple(s["pair"][1])))
                    for s in doc["segments"]]
        rays = [Ray(r["base"], tuple(r["direction"]),
                    (tuple(r["pair"][0]), tuple(r["pair"][1])))
                for r in doc["rays"]]
        return cls(vertices, segments, rays)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_document(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "CornerLocusComplex":
        with open(path, encoding="utf-8") as fh:
            return cls.from_document(json.load(fh))


def distance_to_complex(comp: CornerLocusComplex, w: Sequence[float], window) -> float:
    """Distance from a point inside the window to the windowed complex."""
    return comp.distance(w, window)


# ---------------------------------------------------------------------------
# corner locus construction
# ---------------------------------------------------------------------------

def corner_locus_2d(tp: TropicalPolynomial) -> CornerLocusComplex:
    """Build the planar corner locus dual to the regular subdivision.

    For every pair of support points the tie line of their affine forms is
    intersected with the half-planes where the tied value stays minimal.
    Nonempty, nondegenerate intersections are exactly the 1-cells dual to
    the edges of the subdivision of the Newton polygon induced by the lift
    m -> (m, c_m).  Collinear support produces full lines, stored by
    convention as one vertex with two opposite rays.

    Arithmetic is exact (Fraction) whenever every coefficient is an
    integer; otherwise floating point with a small predicate tolerance.
    """
    if tp.dim != 2:
        raise ValueError("corner locus construction is limited to the plane")
    support = [(m, c) for m, c in tp.terms.items()]
    if len(support) < 2:
        raise ValueError("tropical hypersurface is empty")

    exact = tp.has_integer_coefficients()
    if exact:
        support_n = [(m, Fraction(int(c))) for m, c in support]
    else:
        support_n = support

    builder = _ComplexBuilder(exact)
    npts = len(support_n)
    for i in range(npts):
        mp, cp = support_n[i]
        for j in range(i + 1, npts):
            mq, cq = support_n[j]
            cell = _pair_cell(support_n, i, j, exact)
            if cell is not None:
                builder.add(cell, (mp, mq))
    return builder.finish()


def _pair_cell(support, i, j, exact):
    """Minimality interval of the tie line of support points i and j.

    Returns (p0, d, lo, hi) with p0 a point on the line, d the primitive
    integer direction, and lo/hi the parameter interval (None = unbounded),
    or None when the cell is empty or a single point.
    """
    mp, cp = support[i]
    mq, cq = support[j]
    dm = (mq[0] - mp[0], mq[1] - mp[1])
    g = math.gcd(abs(dm[0]), abs(dm[1]))
    d = (-dm[1] // g, dm[0] // g)

    # Point on the tie line <dm, w> = cp - cq closest to the origin.
    b = cp - cq
    denom = dm[0] * dm[0] + dm[1] * dm[1]
    if exact:
        p0 = (Fraction(b * dm[0], denom), Fraction(b * dm[1], denom))
    else:
        p0 = (b * dm[0] / denom, b * dm[1] / denom)

    lo = None  # -infinity
    hi = None  # +infinity
    coef_scale = max(1.0, max(abs(m[0]) + abs(m[1]) for m, _ in support) * (abs(d[0]) + abs(d[1])))
    for k, (mr, cr) in enumerate(support):
        if k == i or k == j:
            continue
        # Keep cp + <mp,w> <= cr + <mr,w> along w = p0 + s*d:
        #   base + coef*s >= 0
        coef = (mr[0] - mp[0]) * d[0] + (mr[1] - mp[1]) * d[1]
        base = (cr - cp) + (mr[0] - mp[0]) * p0[0] + (mr[1] - mp[1]) * p0[1]
        if exact:
            zero_coef = coef == 0
        else:
            zero_coef = abs(coef) <= _PREDICATE_TOL * coef_scale
        if zero_coef:
            if exact:
                if base < 0:
                    return None
            elif base < -_PREDICATE_TOL * coef_scale:
                return None
            continue
        bound = -base / coef if exact else -base / coef
        if coef > 0:
            if lo is None or bound > lo:
                lo = bound
        else:
            if hi is None or bound < hi:
                hi = bound
    if lo is not None and hi is not None:
        width = hi - lo
        if exact:
            if width <= 0:
                return None
        elif width <= _PREDICATE_TOL * max(1.0, abs(float(lo)), abs(float(hi))):
            return None
    return (p0, d, lo, hi)


class _ComplexBuilder:
    """Accumulates pair cells, deduplicating geometry and indexing vertices."""

    def __init__(self, exact: bool):
        self.exact = exact
        self.vertex_index: dict = {}
        self.vertices: list[tuple[float, float]] = []
        self.segments: list[Segment] = []
        self.rays: list[Ray] = []
        self._seen_segments: set = set()
        self._seen_rays: set = set()
        self._seen_lines: set = set()

    def _coord_key(self, point):
        if self.exact:
            return (point[0], point[1])
        return (round(float(point[0]), 9), round(float(point[1]), 9))

    def _vertex(self, point) -> int:
        key = self._coord_key(point)
        idx = self.vertex_index.get(key)
        if idx is None:
            idx = len(self.vertices)
            self.vertex_index[key] = idx
            self.vertices.append((float(point[0]), float(point[1])))
        return idx

    def add(self, cell, pair) -> None:
        p0, d, lo, hi = cell
        if lo is None and hi is None:
            # Full line: normal form (primitive normal, offset) for dedup.
            normal = (-d[1], d[0])
            if normal[0] < 0 or (normal[0] == 0 and normal[1] < 0):
                normal = (-normal[0], -normal[1])
            offset = normal[0] * p0[0] + normal[1] * p0[1]
            key = (normal, offset if self.exact else round(float(offset), 9))
            if key in self._seen_lines:
                return
            self._seen_lines.add(key)
            base = self._vertex(p0)
            self.rays.append(Ray(base, d, pair))
            self.rays.append(Ray(base, (-d[0], -d[1]), pair))
        elif lo is not None and hi is not None:
            a = _point_on(p0, d, lo)
            b = _point_on(p0, d, hi)
            ka, kb = self._coord_key(a), self._coord_key(b)
            key = frozenset((ka, kb))
            if key in self._seen_segments or ka == kb:
                return
            self._seen_segments.add(key)
            self.segments.append(Segment(self._vertex(a), self._vertex(b), pair))
        else:
            if lo is not None:
                base_pt = _point_on(p0, d, lo)
                direction = d
            else:
                base_pt = _point_on(p0, d, hi)
                direction = (-d[0], -d[1])
            key = (self._coord_key(base_pt), direction)
            if key in self._seen_rays:
                return
            self._seen_rays.add(key)
            self.rays.append(Ray(self._vertex(base_pt), direction, pair))

    def finish(self) -> CornerLocusComplex:
        return CornerLocusComplex(self.vertices, self.segments, self.rays)


def _point_on(p0, d, s):
    return (p0[0] + s * d[0], p0[1] + s * d[1])


# ---------------------------------------------------------------------------
# window clipping and distances
# ---------------------------------------------------------------------------

def _as_box(window) -> tuple[tuple[float, float], tuple[float, float]]:
    (lo1, hi1), (lo2, hi2) = window
    lo1, hi1, lo2, hi2 = float(lo1), float(hi1), float(lo2), float(hi2)
    if not (lo1 < hi1 and lo2 < hi2):
        raise ValueError("window bounds must satisfy lo < hi")
    return ((lo1, hi1), (lo2, hi2))


def _clip_parametric(p, d, box, t0: float, t1: float):
    # Liang-Barsky clip of {p + t*d : t0 <= t <= t1} against the box.
    for axis in (0, 1):
        lo, hi = box[axis]
        if d[axis] == 0.0:
            if not (lo <= p[axis] <= hi):
                return None
            continue
        ta = (lo - p[axis]) / d[axis]
        tb = (hi - p[axis]) / d[axis]
        if ta > tb:
            ta, tb = tb, ta
        t0 = max(t0, ta)
        t1 = min(t1, tb)
        if t0 > t1:
            return None
    return (t0, t1)


def _at(p, d, t: float) -> tuple[float, float]:
    return (p[0] + t * d[0], p[1] + t * d[1])


def _point_segment_distance(p, a, b) -> float:
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom == 0.0:
        return math.hypot(p[0] - ax, p[1] - ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / denom
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (ax + t * dx), p[1] - (ay + t * dy))


def point_segment_distances(points: np.ndarray, segs) -> np.ndarray:
    """Min distance from each point (rows) to a family of segments, vectorized."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be an (N, 2) array")
    if not segs:
        raise ValueError("no segments supplied")
    a = np.array([s[0] for s in segs], dtype=float)        # (S, 2)
    b = np.array([s[1] for s in segs], dtype=float)
    d = b - a                                              # (S, 2)
    denom = np.einsum("ij,ij->i", d, d)                    # (S,)
    safe = np.where(denom == 0.0, 1.0, denom)
    rel = pts[:, None, :] - a[None, :, :]                  # (N, S, 2)
    t = np.einsum("nsj,sj->ns", rel, d) / safe
    t = np.clip(t, 0.0, 1.0)
    t = np.where(denom[None, :] == 0.0, 0.0, t)
    proj = a[None, :, :] + t[:, :, None] * d[None, :, :]
    diff = pts[:, None, :] - proj
    dist = np.sqrt(np.einsum("nsj,nsj->ns", diff, diff))
    return dist.min(axis=1)
