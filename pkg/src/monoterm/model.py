"""Core domain types: guards, updates, loop shapes, verdicts and witnesses.

All arithmetic is exact (Python ints); geometric and affine update
sequences outgrow any fixed-width integer within a few dozen steps, so
nothing here may truncate or wrap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union


class AnalysisError(Exception):
    """Analysis-level failure (bad precondition, unbound variable, ...)."""


class UnboundVariableError(AnalysisError):
    def __init__(self, var: str):
        super().__init__(f"variable '{var}' has no value in the environment")
        self.var = var


class NonMonotoneUpdateError(AnalysisError):
    """The update's value sequence is neither strictly monotone nor constant."""


class RelOp(Enum):
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="

    def holds(self, lhs: int, rhs: int) -> bool:
        if self is RelOp.LT:
            return lhs < rhs
        if self is RelOp.LE:
            return lhs <= rhs
        if self is RelOp.GT:
            return lhs > rhs
        return lhs >= rhs

    def negated(self) -> "RelOp":
        """Logical complement over the integers: not(x < c) == x >= c."""
        return _NEGATION[self]

    def mirrored(self) -> "RelOp":
        """The comparison seen after negating both sides: x < c == -x > -c."""
        return _MIRROR[self]

    @property
    def bounded_below(self) -> bool:
        """True for > and >=: the left operand is bounded from below."""
        return self in (RelOp.GT, RelOp.GE)

    @property
    def bounded_above(self) -> bool:
        return self in (RelOp.LT, RelOp.LE)


_NEGATION = {RelOp.LT: RelOp.GE, RelOp.LE: RelOp.GT, RelOp.GT: RelOp.LE, RelOp.GE: RelOp.LT}
_MIRROR = {RelOp.LT: RelOp.GT, RelOp.LE: RelOp.GE, RelOp.GT: RelOp.LT, RelOp.GE: RelOp.LE}


@dataclass(frozen=True)
class DiagonalFreeGuard:
    """Comparison of a single variable with a constant: var op bound."""

    var: str
    op: RelOp
    bound: int

    def negated(self) -> "DiagonalFreeGuard":
        return DiagonalFreeGuard(self.var, self.op.negated(), self.bound)

    def __str__(self) -> str:
        return f"{self.var} {self.op.value} {self.bound}"


@dataclass(frozen=True)
class DiagonalGuard:
    """Comparison of a variable difference with a constant: lhs - rhs op bound."""

    lhs: str
    rhs: str
    op: RelOp
    bound: int

    def negated(self) -> "DiagonalGuard":
        return DiagonalGuard(self.lhs, self.rhs, self.op.negated(), self.bound)

    def __str__(self) -> str:
        return f"{self.lhs} - {self.rhs} {self.op.value} {self.bound}"


GuardAtom = Union[DiagonalFreeGuard, DiagonalGuard]

Env = dict[str, int]


def eval_guard(atom: GuardAtom, env: Env) -> bool:
    """Evaluate a guard atom under exact integer arithmetic."""
    if isinstance(atom, DiagonalFreeGuard):
        if atom.var not in env:
            raise UnboundVariableError(atom.var)
        return atom.op.holds(env[atom.var], atom.bound)
    for v in (atom.lhs, atom.rhs):
        if v not in env:
            raise UnboundVariableError(v)
    return atom.op.holds(env[atom.lhs] - env[atom.rhs], atom.bound)


@dataclass(frozen=True)
class Update:
    """Canonical affine update x := coeff * x + offset.

    Every surface form maps to exactly one (coeff, offset) pair:
    x := b  -> (0, b);  x := u*x -> (u, 0);  x := x + v -> (1, v);
    x := u*x + v -> (u, v).
    """

    coeff: int
    offset: int

    def apply(self, x: int) -> int:
        return self.coeff * x + self.offset

    def first_difference(self, x: int) -> int:
        """apply(x) - x; its sign is invariant along the orbit for coeff >= 0."""
        return (self.coeff - 1) * x + self.offset


def apply_update(upd: Update, x: int) -> int:
    """Return coeff * x + offset exactly."""
    return upd.apply(x)


class Direction(Enum):
    UP = "up"
    DOWN = "down"
    FLAT = "flat"


def direction_at(upd: Update, x: int) -> Direction:
    """Direction of the orbit of ``upd`` started at ``x``.

    For coeff >= 0 the first difference d_n satisfies d_{n+1} = coeff * d_n,
    so its sign never changes: the orbit is strictly monotone or constant.
    """
    d = upd.first_difference(x)
    if d > 0:
        return Direction.UP
    if d < 0:
        return Direction.DOWN
    return Direction.FLAT


class ClassKind(Enum):
    CONSTANT = "constant"
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    AFFINE = "affine"


@dataclass(frozen=True)
class MonotoneClass:
    """Monotonicity class of an update relative to a start value.

    ARITHMETIC: x := x + step (step != 0); GEOMETRIC: x := ratio * x
    (ratio > 1, start != 0); AFFINE: x := ratio * x + step (ratio > 1,
    step != 0, off the fixed point); CONSTANT: the orbit is the single
    value ``pinned``.
    """

    kind: ClassKind
    direction: Direction
    ratio: int | None = None
    step: int | None = None
    pinned: int | None = None

    @property
    def is_exponential(self) -> bool:
        return self.kind in (ClassKind.GEOMETRIC, ClassKind.AFFINE)

    @staticmethod
    def constant(value: int) -> "MonotoneClass":
        return MonotoneClass(ClassKind.CONSTANT, Direction.FLAT, pinned=value)

    @staticmethod
    def arithmetic(step: int) -> "MonotoneClass":
        direction = Direction.UP if step > 0 else Direction.DOWN
        return MonotoneClass(ClassKind.ARITHMETIC, direction, step=step)

    @staticmethod
    def geometric(ratio: int, direction: Direction) -> "MonotoneClass":
        return MonotoneClass(ClassKind.GEOMETRIC, direction, ratio=ratio)

    @staticmethod
    def affine(ratio: int, step: int, direction: Direction) -> "MonotoneClass":
        return MonotoneClass(ClassKind.AFFINE, direction, ratio=ratio, step=step)


@dataclass(frozen=True)
class SinglePathLoop:
    """while (x op c) { x := f(x); }"""

    guard: DiagonalFreeGuard
    update: Update


@dataclass(frozen=True)
class DiagonalLoop:
    """while (x - y op c) { x := f1(x); y := f2(y); }"""

    guard: DiagonalGuard
    lhs_update: Update
    rhs_update: Update


@dataclass(frozen=True)
class MultiPathLoop:
    """while (x op c) { if (x op' c1) { x := f1(x); } else { x := f2(x); } }"""

    guard: DiagonalFreeGuard
    branch_cond: DiagonalFreeGuard
    then_update: Update
    else_update: Update


LoopShape = Union[SinglePathLoop, DiagonalLoop, MultiPathLoop]


@dataclass(frozen=True)
class LoopProgram:
    shape: LoopShape
    init: Env

    def variables(self) -> tuple[str, ...]:
        """Variables the loop reads/writes, in guard order."""
        s = self.shape
        if isinstance(s, DiagonalLoop):
            return (s.guard.lhs, s.guard.rhs)
        return (s.guard.var,)

    def initial_env(self) -> Env:
        missing = [v for v in self.variables() if v not in self.init]
        if missing:
            raise UnboundVariableError(missing[0])
        return dict(self.init)


# --- Verdicts and witnesses -------------------------------------------------


@dataclass(frozen=True)
class FormulaWitness:
    """A satisfied (or refuted) rule formula: the conjunct truth values
    of the deciding disjunct, plus the integer values it mentioned."""

    conjuncts: tuple[tuple[str, bool], ...]
    disjunct: int = 0
    bindings: tuple[tuple[str, int], ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": "formula",
            "disjunct": self.disjunct,
            "conjuncts": [[name, value] for name, value in self.conjuncts],
            "bindings": {name: value for name, value in self.bindings},
        }


@dataclass(frozen=True)
class CycleWitness:
    """A recurring state: replaying the loop from values[0] returns there.

    A sparse witness lists only the branch-switch values of the cycle
    (used when the full cycle is impractically long); the replay claim
    is unchanged.
    """

    values: tuple  # ints for one-variable loops, (x, y) pairs for diagonal
    procedure: str | None = None
    sparse: bool = False

    @property
    def period(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        cyc = [list(v) if isinstance(v, tuple) else v for v in self.values]
        out = {"kind": "cycle", "cycle": cyc}
        if self.sparse:
            out["sparse"] = True
        else:
            out["period"] = self.period
        if self.procedure:
            out["procedure"] = self.procedure
        return out


@dataclass(frozen=True)
class DivergenceWitness:
    """A certified divergence point: at `iteration` the named stopping
    condition holds and keeps holding forever."""

    iteration: int
    condition: str
    procedure: str | None = None

    def to_json(self) -> dict:
        out = {"kind": "divergence", "iteration": self.iteration, "condition": self.condition}
        if self.procedure:
            out["procedure"] = self.procedure
        return out


Witness = Union[FormulaWitness, CycleWitness, DivergenceWitness]


@dataclass(frozen=True)
class Terminating:
    iterations: int | None = None

    def to_json(self) -> dict:
        out: dict = {"verdict": "terminating", "rule": None, "witness": None}
        if self.iterations is not None:
            out["iterations"] = self.iterations
        return out


@dataclass(frozen=True)
class NonTerminating:
    rule: str
    witness: Witness

    def to_json(self) -> dict:
        return {
            "verdict": "nonterminating",
            "rule": self.rule,
            "witness": self.witness.to_json(),
        }


@dataclass(frozen=True)
class Unsupported:
    reason: str

    def to_json(self) -> dict:
        return {"verdict": "unsupported", "rule": None, "witness": None, "reason": self.reason}


Verdict = Union[Terminating, NonTerminating, Unsupported]
