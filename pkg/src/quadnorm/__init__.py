"""Exact norms of quadratic algebras along free finite-rank ring extensions."""
from .algebra import (
    AlgebraRing,
    FreeRankNAlgebra,
    base_change,
    char_poly_coeffs,
    make_algebra,
    monogenic_algebra,
    mul_matrix,
    norm_sn,
    polarized,
    product_algebra,
    split_algebra,
    tower_compose,
    trace,
    trivial_algebra,
)
from .descent import (
    Cover,
    LineDescentDatum,
    QuadDescentDatum,
    datum_from_global,
    det_bundle,
    disc_form,
    globalize,
    glue_norm,
    line_norm,
    make_cover,
    make_datum,
)
from .errors import QuadNormError
from .linalg import Matrix, det
from .norm import Extension, norm_hom, norm_quad, norm_tower_check
from .quadratic import (
    BasedQuadratic,
    QuadHom,
    compose,
    discriminant,
    find_isomorphism,
    make_hom,
    make_quad,
    star,
)
from .rings import Element, Integers, Localized, Modular, Polynomial, Product, localize

__version__ = "0.1.0"

__all__ = [
    "AlgebraRing",
    "BasedQuadratic",
    "Cover",
    "Element",
    "Extension",
    "FreeRankNAlgebra",
    "Integers",
    "LineDescentDatum",
    "Localized",
    "Matrix",
    "Modular",
    "Polynomial",
    "Product",
    "QuadDescentDatum",
    "QuadHom",
    "QuadNormError",
    "base_change",
    "char_poly_coeffs",
    "compose",
    "datum_from_global",
    "det",
    "det_bundle",
    "disc_form",
    "discriminant",
    "find_isomorphism",
    "globalize",
    "glue_norm",
    "line_norm",
    "localize",
    "make_algebra",
    "make_cover",
    "make_datum",
    "make_hom",
    "make_quad",
    "monogenic_algebra",
    "mul_matrix",
    "norm_hom",
    "norm_quad",
    "norm_sn",
    "norm_tower_check",
    "polarized",
    "product_algebra",
    "split_algebra",
    "star",
    "tower_compose",
    "trace",
    "trivial_algebra",
]
