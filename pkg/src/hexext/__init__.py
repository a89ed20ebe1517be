"""hexext: exact homological algebra over Z and Z/m.

Decides when a 3x3 grid of short exact sequences admits a middle object,
constructs the middle object and compatible isomorphisms between solutions,
and applies the machinery to abstract hexagon diagrams.
"""

from .rings import RingSpec, ZZ, Zmod
from .linalg import ExactMatrix, SNFDecomposition, snf, solve_linear, kernel_columns
from .modules import (
    ModuleElement,
    ModuleMorphism,
    PresentedModule,
    ShortExactSequence,
    check_well_defined,
    direct_sum,
    exactness_report,
    hom,
    is_exact,
    kernel_image_cokernel,
    make_ses,
    pullback,
    pushout,
    snake_connecting,
    split_ses,
)
from .ext import (
    ExtClass,
    ExtModule,
    FreeResolution,
    YonedaTwoExtension,
    baer_sum_explicit,
    class_of_ses,
    connecting_hom,
    ext_module,
    free_resolution,
    ses_of_class,
    transport_class,
    transport_contravariant,
    transport_covariant,
    yoneda_product,
)
from .diagram import (
    Diagram3x3,
    DiagramExtension,
    ObstructionReport,
    build_Y,
    check_uniqueness,
    compatible_isomorphism,
    enumerate_extensions,
    extend_diagram,
    extend_homomorphism,
    is_injective_module,
    obstruction,
    validate_diagram1,
    validate_extension,
)
from .hexagon import (
    HexagonFrame,
    SolvedHexagon,
    fold_frame,
    hexagon_compatible_iso,
    solve_hexagon,
    validate_frame,
    verify_hexagon,
)
from .oracle import (
    EnumerationBudget,
    brute_equivalent,
    brute_ext1,
    brute_extension_exists,
    brute_injective,
    enumerate_morphisms,
)
from .document import DocumentModel, ParseError, SemanticError, parse, serialize

__all__ = [
    "RingSpec", "ZZ", "Zmod",
    "ExactMatrix", "SNFDecomposition", "snf", "solve_linear", "kernel_columns",
    "PresentedModule", "ModuleElement", "ModuleMorphism", "ShortExactSequence",
    "check_well_defined", "hom", "kernel_image_cokernel", "direct_sum",
    "pullback", "pushout", "exactness_report", "is_exact", "make_ses",
    "split_ses", "snake_connecting",
    "FreeResolution", "ExtModule", "ExtClass", "YonedaTwoExtension",
    "free_resolution", "ext_module", "class_of_ses", "ses_of_class",
    "transport_class", "transport_contravariant", "transport_covariant",
    "baer_sum_explicit", "yoneda_product", "connecting_hom",
    "Diagram3x3", "DiagramExtension", "ObstructionReport",
    "validate_diagram1", "obstruction", "build_Y", "extend_diagram",
    "enumerate_extensions", "validate_extension", "check_uniqueness",
    "extend_homomorphism", "compatible_isomorphism", "is_injective_module",
    "HexagonFrame", "SolvedHexagon", "fold_frame", "solve_hexagon",
    "verify_hexagon", "hexagon_compatible_iso", "validate_frame",
    "EnumerationBudget", "enumerate_morphisms", "brute_ext1",
    "brute_equivalent", "brute_injective", "brute_extension_exists",
    "DocumentModel", "parse", "serialize", "ParseError", "SemanticError",
]

__version__ = "0.1.0"
