"""monoterm: termination decision procedures for monotone linear integer loops.

Decides, for given initial values, whether a single-path, diagonal, or
two-branch multipath loop with linear monotone updates terminates, and
backs every non-termination verdict with a machine-checkable witness.
A bounded concrete interpreter serves as the independent oracle.
"""

from .analyzer import decide
from .classifier import classify, closed_form
from .diagonal import (
    decide_diagonal,
    decide_diagonal_program,
    normalize_direction,
    ra_ra_rule,
    rg_rg_rule,
    search_decide,
)
from .interpreter import (
    Agreement,
    BoundExhausted,
    CycleDetected,
    OracleResult,
    TerminatedIn,
    TraceState,
    agreement_check,
    run,
)
from .model import (
    AnalysisError,
    ClassKind,
    CycleWitness,
    DiagonalFreeGuard,
    DiagonalGuard,
    DiagonalLoop,
    Direction,
    DivergenceWitness,
    FormulaWitness,
    LoopProgram,
    MonotoneClass,
    MultiPathLoop,
    NonMonotoneUpdateError,
    NonTerminating,
    RelOp,
    SinglePathLoop,
    Terminating,
    Unsupported,
    Update,
    Verdict,
    apply_update,
    eval_guard,
)
from .multipath import (
    CaseKey,
    accelerated_walk,
    case_row,
    decide_multipath,
    fixed_point_search,
    nt_formula,
)
from .parser import (
    LoopSyntaxError,
    MissingInitError,
    ParseError,
    ShapeError,
    parse,
    print_program,
)
from .psi import psi_a, psi_iter, psi_prime_a
from .single import decide_single

__all__ = [
    "decide",
    "classify",
    "closed_form",
    "parse",
    "print_program",
    "run",
    "agreement_check",
    "decide_single",
    "decide_diagonal",
    "decide_diagonal_program",
    "decide_multipath",
    "nt_formula",
    "fixed_point_search",
    "accelerated_walk",
    "case_row",
    "normalize_direction",
    "ra_ra_rule",
    "rg_rg_rule",
    "search_decide",
    "psi_a",
    "psi_prime_a",
    "psi_iter",
    "apply_update",
    "eval_guard",
    "LoopProgram",
    "SinglePathLoop",
    "DiagonalLoop",
    "MultiPathLoop",
    "DiagonalFreeGuard",
    "DiagonalGuard",
    "Update",
    "RelOp",
    "Direction",
    "ClassKind",
    "MonotoneClass",
    "CaseKey",
    "Terminating",
    "NonTerminating",
    "Unsupported",
    "Verdict",
    "FormulaWitness",
    "CycleWitness",
    "DivergenceWitness",
    "TraceState",
    "TerminatedIn",
    "CycleDetected",
    "BoundExhausted",
    "OracleResult",
    "Agreement",
    "AnalysisError",
    "NonMonotoneUpdateError",
    "ParseError",
    "LoopSyntaxError",
    "ShapeError",
    "MissingInitError",
]
