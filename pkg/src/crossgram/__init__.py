"""Cross-Gram diagnostics for sequence pairs in finite-dimensional truncation.

The package realizes structured vector sequences at a chosen truncation
level, forms their synthesis/analysis/frame/Gram/cross-Gram operators,
classifies sequences (Bessel, frame, Riesz, complete, norm-bounded), checks
dual pairs, sweeps truncations for convergence behavior, and runs a seeded
randomized battery of theorem-level identities with negative controls.
"""

__version__ = "0.1.0"

from .linalg import (
    DEFAULT_TOL,
    SingularMatrixError,
    adjoint,
    frobenius_norm,
    hermitian_defect,
    hermitian_eigenvalues,
    invert,
    matmul,
    min_singular,
    numeric_rank,
    operator_norm,
    singular_values,
)
from .sequences import (
    ExampleEntry,
    GenerationError,
    PatternProgram,
    PatternTerm,
    RealizedSequence,
    SequenceSpec,
    TailSlot,
    WeightRule,
    alternate_dual,
    example_entry,
    example_ids,
    monomial_terms,
    paper_example,
    random_frame,
    random_riesz_pair,
    realize,
)
from .operators import (
    FrameBounds,
    NotAFrameError,
    analysis,
    canonical_dual,
    cross_gram,
    frame_bounds,
    frame_operator,
    gram,
    hs_norm,
    synthesis,
)
from .diagnostics import (
    CheckOutcome,
    ConvergenceTable,
    CrossGramReport,
    DualityReport,
    PropertyReport,
    SequenceClassification,
    SweepRow,
    analyze_cross_gram,
    check_duality,
    classify_sequence,
    theorem_battery,
    truncation_sweep,
)
from .serialize import SpecFileError, load_sequence_file, spec_from_json, spec_to_json

__all__ = [
    "DEFAULT_TOL",
    "SingularMatrixError",
    "adjoint",
    "frobenius_norm",
    "hermitian_defect",
    "hermitian_eigenvalues",
    "invert",
    "matmul",
    "min_singular",
    "numeric_rank",
    "operator_norm",
    "singular_values",
    "ExampleEntry",
    "GenerationError",
    "PatternProgram",
    "PatternTerm",
    "RealizedSequence",
    "SequenceSpec",
    "TailSlot",
    "WeightRule",
    "alternate_dual",
    "example_entry",
    "example_ids",
    "monomial_terms",
    "paper_example",
    "random_frame",
    "random_riesz_pair",
    "realize",
    "FrameBounds",
    "NotAFrameError",
    "analysis",
    "canonical_dual",
    "cross_gram",
    "frame_bounds",
    "frame_operator",
    "gram",
    "hs_norm",
    "synthesis",
    "CheckOutcome",
    "ConvergenceTable",
    "CrossGramReport",
    "DualityReport",
    "PropertyReport",
    "SequenceClassification",
    "SweepRow",
    "analyze_cross_gram",
    "check_duality",
    "classify_sequence",
    "theorem_battery",
    "truncation_sweep",
    "SpecFileError",
    "load_sequence_file",
    "spec_from_json",
    "spec_to_json",
    "__version__",
]
