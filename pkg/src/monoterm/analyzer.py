"""Top-level decision entry point: classify the loop shape and dispatch."""

from __future__ import annotations

from .classifier import classify
from .diagonal import SEARCH_BUDGET, decide_diagonal_program
from .model import (
    DiagonalLoop,
    LoopProgram,
    MultiPathLoop,
    NonMonotoneUpdateError,
    SinglePathLoop,
    Unsupported,
    Verdict,
)
from .multipath import WALK_BUDGET, decide_multipath
from .single import decide_single


def decide(program: LoopProgram, search_budget: int = SEARCH_BUDGET) -> Verdict:
    """Decide termination of the program for its initial values."""
    init = program.initial_env()
    shape = program.shape
    try:
        if isinstance(shape, SinglePathLoop):
            x0 = init[shape.guard.var]
            cls = classify(shape.update, x0)
            return decide_single(shape.guard, cls, x0)
        if isinstance(shape, DiagonalLoop):
            return decide_diagonal_program(shape, init, search_budget)
        assert isinstance(shape, MultiPathLoop)
        return decide_multipath(shape, init, min(search_budget, WALK_BUDGET))
    except NonMonotoneUpdateError as err:
        return Unsupported(str(err))
