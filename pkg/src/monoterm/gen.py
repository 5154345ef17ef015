"""Deterministic random loop-corpus generation.

Everything is driven by a single random.Random(seed), so a seed fully
determines the emitted files byte for byte.  Targeted constructors
exist for every multipath table row and every diagonal class pair;
they draw candidates and verify the classification, falling back to
arithmetic updates (whose direction is choosable outright) so that
every target is always reachable.
"""

from __future__ import annotations

import random

from .classifier import classify
from .model import (
    ClassKind,
    DiagonalFreeGuard,
    DiagonalGuard,
    DiagonalLoop,
    Direction,
    LoopProgram,
    MultiPathLoop,
    NonMonotoneUpdateError,
    RelOp,
    SinglePathLoop,
    Update,
)
from .multipath import _CASE_ROWS, CaseKey, case_row
from .parser import print_program

SHAPES = ("single", "diagonal", "multipath")
_BELOW_OPS = (RelOp.GT, RelOp.GE)
_ABOVE_OPS = (RelOp.LT, RelOp.LE)
_RATIOS = (2, 3)

_ROW_KEYS: dict[int, CaseKey] = {row: key for key, row in _CASE_ROWS.items()}


def _int(rng: random.Random, bound: int) -> int:
    return rng.randint(-bound, bound)


def _nonzero(rng: random.Random, bound: int) -> int:
    while True:
        v = _int(rng, bound)
        if v != 0:
            return v


def _step_bound(bound: int) -> int:
    # huge per-step increments only stretch branch-switch cycles; cap them
    return min(bound, 100_000)


def _classifiable_update(rng: random.Random, bound: int) -> Update:
    """Any update the classifier accepts (coefficient >= 0)."""
    kind = rng.choice(("const", "identity", "ra", "rg", "i"))
    if kind == "const":
        return Update(0, _int(rng, bound))
    if kind == "identity":
        return Update(1, 0)
    if kind == "ra":
        return Update(1, _nonzero(rng, max(1, _step_bound(bound) // 2)))
    if kind == "rg":
        return Update(rng.choice(_RATIOS), 0)
    return Update(rng.choice(_RATIOS), _nonzero(rng, _step_bound(bound)))


def _directed_update(rng: random.Random, direction: str, x0: int, bound: int) -> Update:
    """An update classifying as U/D/C from x0.  Always succeeds."""
    if direction == "C":
        return Update(0, _int(rng, bound))
    want = Direction.UP if direction == "U" else Direction.DOWN
    for _ in range(64):
        upd = _classifiable_update(rng, bound)
        if upd.coeff == 0:
            continue
        try:
            cls = classify(upd, x0)
        except NonMonotoneUpdateError:
            continue
        if cls.direction is want:
            return upd
    step = rng.randint(1, max(1, _step_bound(bound) // 2))
    return Update(1, step if direction == "U" else -step)


def random_single(rng: random.Random, bound: int) -> LoopProgram:
    guard = DiagonalFreeGuard("x", rng.choice(_BELOW_OPS + _ABOVE_OPS), _int(rng, bound))
    return LoopProgram(
        SinglePathLoop(guard, _classifiable_update(rng, bound)), {"x": _int(rng, bound)}
    )


def random_diagonal(rng: random.Random, bound: int) -> LoopProgram:
    guard = DiagonalGuard("x", "y", rng.choice(_BELOW_OPS + _ABOVE_OPS), _int(rng, bound))
    shape = DiagonalLoop(guard, _classifiable_update(rng, bound), _classifiable_update(rng, bound))
    return LoopProgram(shape, {"x": _int(rng, bound), "y": _int(rng, bound)})


def random_multipath(rng: random.Random, bound: int) -> LoopProgram:
    guard = DiagonalFreeGuard("x", rng.choice(_BELOW_OPS + _ABOVE_OPS), _int(rng, bound))
    cond = DiagonalFreeGuard("x", rng.choice(_BELOW_OPS + _ABOVE_OPS), _int(rng, bound))
    shape = MultiPathLoop(
        guard, cond, _classifiable_update(rng, bound), _classifiable_update(rng, bound)
    )
    return LoopProgram(shape, {"x": _int(rng, bound)})


def random_program(rng: random.Random, shape: str, bound: int) -> LoopProgram:
    if shape == "single":
        return random_single(rng, bound)
    if shape == "diagonal":
        return random_diagonal(rng, bound)
    return random_multipath(rng, bound)


def multipath_for_row(rng: random.Random, row: int, bound: int) -> LoopProgram:
    """A multipath program whose case key lands exactly on the given row."""
    key = _ROW_KEYS[row]
    for _ in range(256):
        phi_op = rng.choice(_BELOW_OPS if key.phi_below else _ABOVE_OPS)
        cond_op = rng.choice(_BELOW_OPS if key.cond_below else _ABOVE_OPS)
        guard = DiagonalFreeGuard("x", phi_op, _int(rng, bound))
        cond = DiagonalFreeGuard("x", cond_op, _int(rng, bound))
        x0 = _int(rng, bound)
        then_upd = _directed_update(rng, key.dir1, x0, bound)
        else_upd = _directed_update(rng, key.dir2, x0, bound)
        program = LoopProgram(MultiPathLoop(guard, cond, then_upd, else_upd), {"x": x0})
        try:
            cls1 = classify(then_upd, x0)
            cls2 = classify(else_upd, x0)
        except NonMonotoneUpdateError:
            continue
        if case_row(phi_op, cond_op, cls1.direction, cls2.direction) == row:
            return program
    raise AssertionError(f"could not construct an instance for row {row}")


def diagonal_for_pair(
    rng: random.Random, kind_x: ClassKind, kind_y: ClassKind, bound: int
) -> LoopProgram:
    """A diagonal program whose updates classify exactly as the given kinds."""

    def candidate(kind: ClassKind) -> Update:
        if kind is ClassKind.CONSTANT:
            return rng.choice((Update(0, _int(rng, bound)), Update(1, 0)))
        if kind is ClassKind.ARITHMETIC:
            return Update(1, _nonzero(rng, max(1, _step_bound(bound) // 2)))
        if kind is ClassKind.GEOMETRIC:
            return Update(rng.choice(_RATIOS), 0)
        return Update(rng.choice(_RATIOS), _nonzero(rng, _step_bound(bound)))

    for _ in range(256):
        x0, y0 = _int(rng, bound), _int(rng, bound)
        upd_x, upd_y = candidate(kind_x), candidate(kind_y)
        try:
            if classify(upd_x, x0).kind is not kind_x or classify(upd_y, y0).kind is not kind_y:
                continue
        except NonMonotoneUpdateError:
            continue
        guard = DiagonalGuard("x", "y", rng.choice(_BELOW_OPS + _ABOVE_OPS), _int(rng, bound))
        return LoopProgram(DiagonalLoop(guard, upd_x, upd_y), {"x": x0, "y": y0})
    raise AssertionError(f"could not construct a ({kind_x}, {kind_y}) diagonal instance")


def generate_corpus(
    seed: int,
    count: int,
    shape: str = "mix",
    bound: int = 20,
    cover_rows: bool = False,
) -> list[tuple[str, str]]:
    """(filename, text) pairs; deterministic in all arguments."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    files = []
    for i in range(count):
        if cover_rows and shape in ("multipath", "mix") and i < 36:
            kind = "multipath"
            program = multipath_for_row(rng, i + 1, bound)
        else:
            kind = rng.choice(SHAPES) if shape == "mix" else shape
            program = random_program(rng, kind, bound)
        files.append((f"{i:04d}_{kind}.loop", print_program(program)))
    return files
