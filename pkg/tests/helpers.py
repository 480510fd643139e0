"""Shared oracles for the test suite.

Everything here is deliberately independent of the library internals it
checks: brute-force scans, naive double loops, and hand-rolled expansions.
"""

import numpy as np

from amoebatrop import corner_locus_2d, distance_to_complex


def random_tropical_terms(rng, max_points=8, coord_range=(-3, 3), c_range=(-2, 2)):
    """Random support in a small integer box with small integer coefficients."""
    n_points = rng.integers(2, max_points + 1)
    terms = {}
    while len(terms) < n_points:
        m = (int(rng.integers(coord_range[0], coord_range[1] + 1)),
             int(rng.integers(coord_range[0], coord_range[1] + 1)))
        terms[m] = float(rng.integers(c_range[0], c_range[1] + 1))
    return terms


def membership_grid_agreement(tp, window=(-6.0, 6.0), grid=101, tol=1e-9):
    """Fraction of grid points where the membership oracle and the
    distance-to-complex test agree, plus the disagreeing points.

    The distance test counts a point as on the hypersurface when its
    distance to the complex is below (window diagonal) * 1e-6.
    """
    comp = corner_locus_2d(tp)
    lo, hi = window
    box = ((lo, hi), (lo, hi))
    xs = np.linspace(lo, hi, grid)
    pts = np.array([(x, y) for x in xs for y in xs])
    diag = np.sqrt(2.0) * (hi - lo)
    threshold = diag * 1e-6
    agree = 0
    disagreements = []
    for p in pts:
        member = tp.is_member(p, tol)
        near = distance_to_complex(comp, p, box) <= threshold
        if member == near:
            agree += 1
        else:
            disagreements.append((tuple(p), member, near))
    return agree / len(pts), disagreements


def expand_family_product(terms_a, terms_b):
    """Naive convolution of two family term dictionaries {m: {k: coeff}}."""
    out = {}
    for m1, inner1 in terms_a.items():
        for m2, inner2 in terms_b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            bucket = out.setdefault(m, {})
            for k1, c1 in inner1.items():
                for k2, c2 in inner2.items():
                    bucket[k1 + k2] = bucket.get(k1 + k2, 0j) + c1 * c2
    return {m: {k: c for k, c in inner.items() if c != 0}
            for m, inner in out.items()
            if any(c != 0 for c in inner.values())}


def brute_force_hausdorff(a, b):
    """Plain double-loop Hausdorff distance between two point arrays."""
    import math

    def directed(xs, ys):
        worst = 0.0
        for x in xs:
            best = math.inf
            for y in ys:
                best = min(best, math.sqrt(sum((xi - yi) ** 2 for xi, yi in zip(x, y))))
            worst = max(worst, best)
        return worst

    return max(directed(a, b), directed(b, a))
