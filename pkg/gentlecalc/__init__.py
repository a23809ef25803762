"""
Gentle Calculus - strings, bands, surfaces and homological algebra of gentle algebras.

Resolutions, dimensions, Ext spaces and Yoneda extensions are read off the
combinatorics of strings and of curves on the algebra's marked surface; a
linear-algebra oracle over F_p cross-checks every answer.

Example:
    from gentlecalc import (
        parse_algebra,
        parse_walk,
        minimal_projective_resolution,
        finitistic_dimension,
    )

    algebra = parse_algebra(open("worked_example.txt").read())
    alpha = parse_walk(algebra, "a5 a7^- a6")

    cx = minimal_projective_resolution(algebra, alpha)
    print(cx.multiset(-1))           # ['10', '5', '5']
    print(finitistic_dimension(algebra).value)   # 5
"""

__version__ = "0.1.0"
__author__ = "Gentle Calculus Contributors"
__license__ = "MIT"

from gentlecalc.algebra_core import (
    Arrow,
    GentleAlgebra,
    Path,
    Thread,
    Violation,
    forbidden_threads,
    isomorphic,
    parse_algebra,
    permitted_threads,
    serialize_algebra,
    threads,
    validate_gentle,
)
from gentlecalc.strings_bands import (
    BandDatum,
    Letter,
    Walk,
    canonical_band,
    canonical_string,
    enumerate_bands,
    enumerate_strings,
    is_band,
    is_string,
    parse_walk,
)
from gentlecalc.surface_model import (
    Curve,
    MarkedPoint,
    PolygonComplex,
    algebra_of_coordinate,
    boundary_cycles,
    boundary_rotation,
    build_coordinate_complex,
    string_to_curve,
    surface_of_algebra,
    twist,
)
from gentlecalc.resolutions import (
    HomotopyString,
    ProjectiveComplex,
    cohomology_completion,
    finitistic_dimension,
    global_dimension,
    longest_relation_chain,
    homology_completion,
    injective_dimension,
    minimal_injective_resolution,
    minimal_projective_resolution,
    projective_dimension,
)
from gentlecalc.ext_yoneda import (
    ExtSpace,
    IntersectionDatum,
    ext_dimension,
    ext_space,
    hom_dimension,
    projective_arc_algebra,
    yoneda_extension,
    yoneda_product,
)
from gentlecalc.hearts import (
    GradedDissection,
    GradedGentle,
    dual_coordinate,
    heart_algebra,
    induced_gradings,
    parse_dissection,
    standard_dissection,
    validate_simple_minded_dissection,
)
from gentlecalc.linalg_oracle import (
    Representation,
    finitistic_dimension_linalg,
    representation_of,
    resolution_linalg,
    verify_finitistic,
)
from gentlecalc.config import Settings
from gentlecalc.logger import Level, Logger
from gentlecalc.logging_bridge import configure_stdlib_logging, reset_stdlib_logging
from gentlecalc.exceptions import (
    GentleCalcError,
    ParseError,
    NotGentleError,
    InvalidWalkError,
    SurfaceError,
    CurveError,
    UnsupportedProductError,
    OracleMismatchError,
)

__all__ = [
    # Algebras
    "Arrow",
    "GentleAlgebra",
    "Path",
    "Thread",
    "Violation",
    "forbidden_threads",
    "isomorphic",
    "parse_algebra",
    "permitted_threads",
    "serialize_algebra",
    "threads",
    "validate_gentle",
    # Strings and bands
    "BandDatum",
    "Letter",
    "Walk",
    "canonical_band",
    "canonical_string",
    "enumerate_bands",
    "enumerate_strings",
    "is_band",
    "is_string",
    "parse_walk",
    # Surfaces
    "Curve",
    "MarkedPoint",
    "PolygonComplex",
    "algebra_of_coordinate",
    "boundary_cycles",
    "boundary_rotation",
    "build_coordinate_complex",
    "string_to_curve",
    "surface_of_algebra",
    "twist",
    # Resolutions and dimensions
    "HomotopyString",
    "ProjectiveComplex",
    "cohomology_completion",
    "finitistic_dimension",
    "global_dimension",
    "longest_relation_chain",
    "homology_completion",
    "injective_dimension",
    "minimal_injective_resolution",
    "minimal_projective_resolution",
    "projective_dimension",
    # Ext and Yoneda
    "ExtSpace",
    "IntersectionDatum",
    "ext_dimension",
    "ext_space",
    "hom_dimension",
    "projective_arc_algebra",
    "yoneda_extension",
    "yoneda_product",
    # Hearts
    "GradedDissection",
    "GradedGentle",
    "dual_coordinate",
    "heart_algebra",
    "induced_gradings",
    "parse_dissection",
    "standard_dissection",
    "validate_simple_minded_dissection",
    # Oracle
    "Representation",
    "finitistic_dimension_linalg",
    "representation_of",
    "resolution_linalg",
    "verify_finitistic",
    # Configuration and logging
    "Settings",
    "Level",
    "Logger",
    "configure_stdlib_logging",
    "reset_stdlib_logging",
    # Exceptions
    "GentleCalcError",
    "ParseError",
    "NotGentleError",
    "InvalidWalkError",
    "SurfaceError",
    "CurveError",
    "UnsupportedProductError",
    "OracleMismatchError",
    # Version
    "__version__",
]
