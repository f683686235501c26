"""Primitivity and primitive degrees of nonnegative tensors.

The library decides whether a nonnegative tensor (given by its zero pattern)
is primitive, computes its primitive degree and per-column degrees from
reachability traces, cross-checks those traces against explicit dense-tensor
oracles, and constructs witness families realizing every degree from 1 up to
the extremal value (n-1)^2 + 1.
"""

from .bitsets import MAX_DIM, IndexSet, SupportFamily
from .dense import (
    DENSE_CELL_CAP,
    DenseTensor,
    apply_to_basis,
    densify,
    general_product,
    majorization_of,
    majorization_recursion,
    power_map,
    power_patterns,
    support_of,
    to_pattern,
)
from .digraphs import (
    Digraph,
    PatternMatrix,
    exact_length_frontier,
    frobenius_representable,
    matrix_gamma,
    reverse,
    walk_decomposition,
    wielandt_matrix,
)
from .errors import CapExceededError, ParseError, VerificationError
from .families import (
    DegreeWitness,
    ExponentSetResult,
    FamilySpec,
    brute_force_matrix_exponent_set,
    degree_witness,
    exponent_set,
    monomial_lift,
    small_exponent_matrix,
    wielandt_frontier_tensor,
    wielandt_tensor,
)
from .formats import (
    TensorDocument,
    load_document,
    parse_document,
    render_document,
    save_document,
)
from .patterns import (
    ColumnTrace,
    Cycled,
    Exhausted,
    PatternTensor,
    PrimitivityReport,
    Reached,
    Violation,
    analyze,
    check_necessary_conditions,
    column_states,
    column_trace,
    default_bound,
    gamma_j,
    make_pattern,
    majorization_pattern,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIM",
    "DENSE_CELL_CAP",
    "IndexSet",
    "SupportFamily",
    "PatternTensor",
    "PatternMatrix",
    "Digraph",
    "DenseTensor",
    "TensorDocument",
    "ColumnTrace",
    "Reached",
    "Cycled",
    "Exhausted",
    "PrimitivityReport",
    "Violation",
    "FamilySpec",
    "DegreeWitness",
    "ExponentSetResult",
    "CapExceededError",
    "ParseError",
    "VerificationError",
    "make_pattern",
    "step",
    "column_states",
    "column_trace",
    "gamma_j",
    "analyze",
    "check_necessary_conditions",
    "majorization_pattern",
    "default_bound",
    "general_product",
    "power_patterns",
    "apply_to_basis",
    "majorization_of",
    "majorization_recursion",
    "power_map",
    "support_of",
    "densify",
    "to_pattern",
    "reverse",
    "exact_length_frontier",
    "matrix_gamma",
    "wielandt_matrix",
    "frobenius_representable",
    "walk_decomposition",
    "monomial_lift",
    "wielandt_tensor",
    "wielandt_frontier_tensor",
    "small_exponent_matrix",
    "degree_witness",
    "exponent_set",
    "brute_force_matrix_exponent_set",
    "parse_document",
    "load_document",
    "render_document",
    "save_document",
    "__version__",
]
