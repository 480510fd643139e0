"""Amoebas and tropical curves of Laurent hypersurfaces.

Exact Laurent-polynomial arithmetic, tropical corner loci dual to regular
Newton-polygon subdivisions, amoeba sampling with certified exterior
tests, hybrid seminorm/polycircle numerics, windowed Hausdorff
convergence experiments, and moment-map compactification.
"""

from .amoeba import (CloudMeta, PointCloud, lopsided_certificate,
                     membership_slice, sample_amoeba, scale_cloud)
from .converge import (FamilySample, Window, directed_hausdorff, hausdorff,
                       hausdorff_to_complex, kuratowski_lsc_check,
                       kuratowski_usc_check, rate_fit)
from .hybrid import (HybridPoint, MonomialPoint, MonomialValuation,
                     PolycircleRow, SectionPoint, hybrid_base_norm,
                     hybrid_seminorm, lambda_of, monomial_value,
                     polycircle_limit_report, polycircle_sup)
from .poly import (LaurentFamily, LaurentPolynomial, load_polynomial,
                   polynomial_from_document, polynomial_to_document,
                   save_polynomial)
from .toric import LatticePolytope, compactify_cloud, moment_map, trop_moment
from .tropical import (CornerLocusComplex, Ray, Segment, TropicalPolynomial,
                       corner_locus_2d, distance_to_complex)

__version__ = "0.1.0"

__all__ = [
    "CloudMeta", "CornerLocusComplex", "FamilySample", "HybridPoint",
    "LatticePolytope", "LaurentFamily", "LaurentPolynomial", "MonomialPoint",
    "MonomialValuation", "PointCloud", "PolycircleRow", "Ray", "SectionPoint",
    "Segment", "TropicalPolynomial", "Window", "compactify_cloud",
    "corner_locus_2d", "directed_hausdorff", "distance_to_complex",
    "hausdorff", "hausdorff_to_complex", "hybrid_base_norm",
    "hybrid_seminorm", "kuratowski_lsc_check", "kuratowski_usc_check",
    "lambda_of", "load_polynomial", "lopsided_certificate",
    "membership_slice", "moment_map", "monomial_value",
    "polycircle_limit_report", "polycircle_sup", "polynomial_from_document",
    "polynomial_to_document", "rate_fit", "sample_amoeba", "save_polynomial",
    "scale_cloud", "trop_moment", "__version__",
]
