"""Decision procedure for two-branch multipath loops over one variable:

    while (x op c) { if (x op' c1) { x := f1(x); } else { x := f2(x); } }

Dispatch is a 36-way case split on the bound direction of the guard,
the bound direction of the branch condition, and the direction class of
each branch update (up, down, or constant).  Most cases decide by a
closed non-termination formula; the genuinely interleaving cases walk
the trajectory from branch switch to branch switch, jumping over each
monotone run with a first-falsifier computation and detecting repeated
switch values.

The closed formulas assume a branch behaves the same wherever it fires.
That holds for arithmetic updates, but a geometric/affine branch
re-entered at the constant branch's value b may move the other way than
it does at x0 (x := 2*x increases positive values and decreases
negative ones).  Such instances, and branches that are only
orbit-constant (x := x, or a fixed point of x := u*x + v) rather than a
direct assignment, are routed to the walk, which evaluates directions
at every value it actually visits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classifier import classify
from .model import (
    AnalysisError,
    CycleWitness,
    Direction,
    DivergenceWitness,
    Env,
    FormulaWitness,
    MonotoneClass,
    MultiPathLoop,
    NonTerminating,
    RelOp,
    Terminating,
    Unsupported,
    Verdict,
    direction_at,
)
from .psi import Escape, Trapped, escape_region

WALK_BUDGET = 10**6
_CYCLE_EXPANSION_CAP = 50_000


@dataclass(frozen=True)
class CaseKey:
    """Dispatch key: bound sides of guard and branch condition plus the
    direction summary (U/D/C) of each branch update."""

    phi_below: bool
    cond_below: bool
    dir1: str
    dir2: str


_DIR_CODE = {Direction.UP: "U", Direction.DOWN: "D", Direction.FLAT: "C"}

# (phi bounded below, cond bounded below, dir1, dir2) -> table row
_CASE_ROWS: dict[CaseKey, int] = {
    CaseKey(True, False, "U", "C"): 1,
    CaseKey(False, True, "D", "C"): 2,
    CaseKey(True, True, "C", "U"): 3,
    CaseKey(False, False, "C", "D"): 4,
    CaseKey(True, False, "D", "C"): 5,
    CaseKey(False, True, "U", "C"): 6,
    CaseKey(True, True, "C", "D"): 7,
    CaseKey(False, False, "C", "U"): 8,
    CaseKey(True, False, "C", "U"): 9,
    CaseKey(False, True, "C", "D"): 10,
    CaseKey(False, False, "D", "C"): 11,
    CaseKey(True, True, "U", "C"): 12,
    CaseKey(False, False, "U", "C"): 13,
    CaseKey(False, True, "C", "U"): 14,
    CaseKey(True, True, "D", "C"): 15,
    CaseKey(True, False, "C", "D"): 16,
    CaseKey(True, True, "U", "D"): 17,
    CaseKey(False, False, "D", "U"): 18,
    CaseKey(False, True, "U", "D"): 19,
    CaseKey(True, False, "D", "U"): 20,
    CaseKey(False, False, "U", "D"): 21,
    CaseKey(False, True, "D", "U"): 22,
    CaseKey(True, False, "U", "D"): 23,
    CaseKey(True, True, "D", "U"): 24,
    CaseKey(True, True, "C", "C"): 25,
    CaseKey(True, False, "C", "C"): 26,
    CaseKey(False, True, "C", "C"): 27,
    CaseKey(False, False, "C", "C"): 28,
    CaseKey(True, True, "U", "U"): 29,
    CaseKey(True, False, "U", "U"): 30,
    CaseKey(False, True, "U", "U"): 31,
    CaseKey(False, False, "U", "U"): 32,
    CaseKey(True, True, "D", "D"): 33,
    CaseKey(True, False, "D", "D"): 34,
    CaseKey(False, True, "D", "D"): 35,
    CaseKey(False, False, "D", "D"): 36,
}

# Rows where the if-branch is the constant one (else-branch is monotone).
_CONST_THEN_ROWS = frozenset({3, 4, 7, 8, 9, 10, 14, 16})


def case_row(phi_op: RelOp, cond_op: RelOp, dir1: Direction, dir2: Direction) -> int:
    """Case-table row for the syntactic case; total over all 36 combinations."""
    key = CaseKey(phi_op.bounded_below, cond_op.bounded_below, _DIR_CODE[dir1], _DIR_CODE[dir2])
    return _CASE_ROWS[key]


# --- Non-termination formulas -----------------------------------------------
#
# Conjunct tokens, evaluated left to right with short-circuiting so that
# every first-falsifier probe psi(d) runs only after d's membership in the
# monotone branch's region has been established.

_ROW_FORMULAS: dict[int, tuple[tuple[str, ...], ...]] = {
    1: (("x0~phi", "b~phi"),),
    5: (("x0~phi", "x0!~B", "b~phi", "b~!B"),),
    7: (("x0~phi", "x0~B", "b~phi", "b~B"),),
    9: (("x0~phi", "x0!~B"), ("x0~phi", "x0~B", "b~phi")),
    11: (("x0~phi", "x0~B"), ("x0~phi", "x0!~B", "b~phi")),
    13: (
        ("x0~phi", "x0!~B", "b~phi", "b~!B"),
        ("x0~phi", "x0~B", "psi(x0)~phi", "b~phi", "b~!B"),
        ("x0~phi", "x0~B", "psi(x0)~phi", "b~phi", "b~B", "psi(b)~phi"),
        ("x0~phi", "x0!~B", "b~phi", "b~B", "psi(b)~phi"),
    ),
    14: (
        ("x0~phi", "x0~B", "b~phi", "b~B"),
        ("x0~phi", "x0!~B", "psi(x0)~phi", "b~phi", "b~B"),
        ("x0~phi", "x0!~B", "psi(x0)~phi", "b~phi", "b~!B", "psi(b)~phi"),
        ("x0~phi", "x0~B", "b~phi", "b~!B", "psi(b)~phi"),
    ),
    15: (
        ("x0~phi", "x0!~B", "b~phi", "b~!B"),
        ("x0~phi", "x0~B", "psi(x0)~phi", "b~phi", "b~!B"),
        ("x0~phi", "x0~B", "psi(x0)~phi", "b~phi", "b~B", "psi(b)~phi"),
        ("x0~phi", "x0!~B", "b~phi", "b~B", "psi(b)~phi"),
    ),
    16: (
        ("x0~phi", "x0~B", "b~phi", "b~B"),
        ("x0~phi", "x0!~B", "psi(x0)~phi", "b~phi", "b~B"),
        ("x0~phi", "x0!~B", "psi(x0)~phi", "b~phi", "b~!B", "psi(b)~phi"),
        ("x0~phi", "x0~B", "b~phi", "b~!B", "psi(b)~phi"),
    ),
    17: (("x0~phi", "x0~B"),),
    19: (("x0~phi", "x0!~B"),),
    25: (
        ("x0~phi", "x0~B", "b1~phi", "b1~B"),
        ("x0~phi", "x0!~B", "b2~phi", "b2~!B"),
        ("x0~phi", "b1~phi", "b2~phi"),
    ),
}
# Rows sharing a formula with their printed group representative.
for _src, _dsts in ((1, (2, 3, 4)), (5, (6,)), (7, (8,)), (9, (10,)), (11, (12,)),
                    (17, (18,)), (19, (20,)), (25, (26, 27, 28))):
    for _d in _dsts:
        _ROW_FORMULAS[_d] = _ROW_FORMULAS[_src]


class _FormulaContext:
    def __init__(self, loop: MultiPathLoop, x0: int, row: int):
        self.loop = loop
        self.x0 = x0
        self.row = row
        self.phi = loop.guard
        self.cond = loop.branch_cond
        self.bindings: dict[str, int] = {"x0": x0, "c": self.phi.bound, "c1": self.cond.bound}
        if row in _CONST_THEN_ROWS:
            self.const_upd, self.mono_upd = loop.then_update, loop.else_update
            self.mono_region_op = self.cond.op.negated()
        else:
            self.const_upd, self.mono_upd = loop.else_update, loop.then_update
            self.mono_region_op = self.cond.op
        if 25 <= row <= 28:
            if loop.then_update.coeff != 0 or loop.else_update.coeff != 0:
                raise AnalysisError("constant-pair formulas need direct assignments")
            self.bindings["b1"] = loop.then_update.offset
            self.bindings["b2"] = loop.else_update.offset
        elif row not in (17, 18, 19, 20):
            if self.const_upd.coeff != 0:
                raise AnalysisError("this row's formula needs a direct constant assignment")
            self.bindings["b"] = self.const_upd.offset
        self._psi_cache: dict[int, int] = {}

    def psi(self, d: int) -> int:
        if d not in self._psi_cache:
            escape = escape_region(d, self.cond.bound, self.mono_region_op, self.mono_upd)
            assert isinstance(escape, Escape), "formula rows require an escaping branch"
            self._psi_cache[d] = escape.value
        return self._psi_cache[d]

    def eval_token(self, token: str) -> tuple[str, bool]:
        phi, cond, b = self.phi, self.cond, self.bindings
        psi_label = "psi" if self.mono_region_op.bounded_above else "psi'"
        if token == "x0~phi":
            return f"x0 {phi.op.value} c", phi.op.holds(self.x0, phi.bound)
        if token == "x0~B":
            return f"x0 {cond.op.value} c1", cond.op.holds(self.x0, cond.bound)
        if token == "x0!~B":
            return f"x0 {cond.op.negated().value} c1", not cond.op.holds(self.x0, cond.bound)
        if token == "b~phi":
            return f"b {phi.op.value} c", phi.op.holds(b["b"], phi.bound)
        if token == "b~B":
            return f"b {cond.op.value} c1", cond.op.holds(b["b"], cond.bound)
        if token == "b~!B":
            return f"b {cond.op.negated().value} c1", not cond.op.holds(b["b"], cond.bound)
        if token == "psi(x0)~phi":
            value = self.psi(self.x0)
            b[f"{psi_label}(x0)"] = value
            return f"{psi_label}(x0) {phi.op.value} c", phi.op.holds(value, phi.bound)
        if token == "psi(b)~phi":
            value = self.psi(b["b"])
            b[f"{psi_label}(b)"] = value
            return f"{psi_label}(b) {phi.op.value} c", phi.op.holds(value, phi.bound)
        if token in ("b1~phi", "b2~phi"):
            name = token[:2]
            return f"{name} {phi.op.value} c", phi.op.holds(b[name], phi.bound)
        if token == "b1~B":
            return f"b1 {cond.op.value} c1", cond.op.holds(b["b1"], cond.bound)
        if token == "b2~!B":
            return f"b2 {cond.op.negated().value} c1", not cond.op.holds(b["b2"], cond.bound)
        raise ValueError(f"unknown conjunct token {token!r}")


def nt_formula(
    row: int, loop: MultiPathLoop, x0: int, cls1: MonotoneClass, cls2: MonotoneClass
) -> tuple[bool, FormulaWitness]:
    """Evaluate the row's non-termination formula exactly.

    Returns (satisfied, witness); the witness lists the evaluated conjuncts
    of the deciding disjunct and the integer values they referenced.
    """
    if row not in _ROW_FORMULAS:
        raise ValueError(f"row {row} is not decided by a closed formula")
    ctx = _FormulaContext(loop, x0, row)
    failures: list[tuple[str, bool]] = []
    for index, disjunct in enumerate(_ROW_FORMULAS[row]):
        conjuncts: list[tuple[str, bool]] = []
        satisfied = True
        for token in disjunct:
            name, value = ctx.eval_token(token)
            conjuncts.append((name, value))
            if not value:
                satisfied = False
                break
        if satisfied:
            return True, FormulaWitness(
                tuple(conjuncts), index, tuple(sorted(ctx.bindings.items()))
            )
        failures.append((f"disjunct {index}: {conjuncts[-1][0]}", False))
    return False, FormulaWitness(tuple(failures), -1, tuple(sorted(ctx.bindings.items())))


# --- Accelerated trajectory walk ---------------------------------------------


def _cycle_witness(loop: MultiPathLoop, entry: int, procedure: str | None) -> CycleWitness:
    """Cycle witness anchored at the recurring value `entry`.

    Prefers the full concrete value cycle; when that exceeds the expansion
    cap (long arithmetic runs between branch switches), falls back to the
    branch-switch values only, which still replay back to `entry`.
    """
    cond, values = loop.branch_cond, [entry]
    x = entry
    for _ in range(_CYCLE_EXPANSION_CAP):
        upd = loop.then_update if cond.op.holds(x, cond.bound) else loop.else_update
        x = upd.apply(x)
        if x == entry:
            return CycleWitness(tuple(values), procedure)
        values.append(x)
    switch_values = [entry]
    val = entry
    for _ in range(WALK_BUDGET):
        val = _next_switch_value(loop, val)
        if val == entry:
            return CycleWitness(tuple(switch_values), procedure, sparse=True)
        switch_values.append(val)
    raise AssertionError("switch-value cycle did not close")


def _next_switch_value(loop: MultiPathLoop, val: int) -> int:
    cond = loop.branch_cond
    in_then = cond.op.holds(val, cond.bound)
    upd = loop.then_update if in_then else loop.else_update
    if upd.coeff == 0:
        return upd.offset
    region_op = cond.op if in_then else cond.op.negated()
    escape = escape_region(val, cond.bound, region_op, upd)
    assert isinstance(escape, Escape)
    return escape.value


def accelerated_walk(
    loop: MultiPathLoop,
    x0: int,
    rule: str,
    procedure: str | None = None,
    max_jumps: int = WALK_BUDGET,
    trace: list[int] | None = None,
) -> Verdict:
    """Walk branch-switch values, deciding by guard exit, value recurrence,
    or a trapped orbit.

    Each jump covers one maximal run of a single branch: a monotone run is
    collapsed to its first value outside the branch's region (with exact
    step count), a direct assignment is one step.  A run that cannot leave
    its region either freezes the guard truth forever (non-terminating) or
    marches monotonically through the guard bound (terminating).
    """
    phi, cond = loop.guard, loop.branch_cond
    assert phi.op.holds(x0, phi.bound)
    visited: set[int] = set()
    val, steps = x0, 0
    for _ in range(max_jumps):
        if trace is not None:
            trace.append(val)
        in_then = cond.op.holds(val, cond.bound)
        upd = loop.then_update if in_then else loop.else_update
        if upd.coeff == 0:
            nxt = upd.offset
            steps += 1
            if not phi.op.holds(nxt, phi.bound):
                return Terminating(steps)
            if nxt == val or nxt in visited:
                return NonTerminating(rule, _cycle_witness(loop, nxt, procedure))
            visited.add(val)
            val = nxt
            continue
        region_op = cond.op if in_then else cond.op.negated()
        escape = escape_region(val, cond.bound, region_op, upd)
        if isinstance(escape, Trapped):
            branch = "then" if in_then else "else"
            if escape.direction is Direction.FLAT:
                return NonTerminating(rule, CycleWitness((val,), procedure))
            guard_safe = (phi.op.bounded_above and escape.direction is Direction.DOWN) or (
                phi.op.bounded_below and escape.direction is Direction.UP
            )
            if guard_safe:
                return NonTerminating(
                    rule,
                    DivergenceWitness(
                        steps,
                        f"trapped in {branch}-branch moving {escape.direction.value}; "
                        "the guard can never fail",
                        procedure,
                    ),
                )
            phi_escape = escape_region(val, phi.bound, phi.op, upd)
            assert isinstance(phi_escape, Escape)
            return Terminating(steps + phi_escape.steps)
        if not phi.op.holds(escape.value, phi.bound):
            phi_escape = escape_region(val, phi.bound, phi.op, upd)
            assert isinstance(phi_escape, Escape)
            return Terminating(steps + phi_escape.steps)
        steps += escape.steps
        if escape.value in visited:
            return NonTerminating(rule, _cycle_witness(loop, escape.value, procedure))
        visited.add(val)
        val = escape.value
    return Unsupported(f"trajectory walk exceeded {max_jumps} jumps")


def fixed_point_search(
    loop: MultiPathLoop, x0: int, row: int, max_jumps: int = WALK_BUDGET
) -> Verdict:
    """Fixed-point search for the alternating-branch cases (rows 21-24)."""
    assert 21 <= row <= 24
    procedure = "alg3" if row in (21, 22) else "alg4"
    return accelerated_walk(loop, x0, f"T3-row{row}", procedure, max_jumps)


# --- Dispatch -----------------------------------------------------------------


def _needs_walk(row: int, loop: MultiPathLoop, cls1: MonotoneClass, cls2: MonotoneClass) -> bool:
    """True when a closed formula's branch-behaviour assumptions fail."""
    if 25 <= row <= 28:
        return loop.then_update.coeff != 0 or loop.else_update.coeff != 0
    if not 1 <= row <= 16:
        return False
    if row in _CONST_THEN_ROWS:
        const_upd, mono_upd, mono_cls = loop.then_update, loop.else_update, cls2
    else:
        const_upd, mono_upd, mono_cls = loop.else_update, loop.then_update, cls1
    if const_upd.coeff != 0:
        return True
    if mono_cls.is_exponential:
        return direction_at(mono_upd, const_upd.offset) is not mono_cls.direction
    return False


def decide_multipath(
    loop: MultiPathLoop, init: Env, walk_budget: int = WALK_BUDGET
) -> Verdict:
    """Classify both branches at x0 and dispatch on the 36-row case table."""
    x0 = init[loop.guard.var]
    phi = loop.guard
    if not phi.op.holds(x0, phi.bound):
        return Terminating(0)
    cls1 = classify(loop.then_update, x0)
    cls2 = classify(loop.else_update, x0)
    row = case_row(phi.op, loop.branch_cond.op, cls1.direction, cls2.direction)
    rule = f"T3-row{row}"
    if row >= 29:
        # both branches move the same way; the branch condition is irrelevant
        direction = cls1.direction
        guard_safe = (phi.op.bounded_below and direction is Direction.UP) or (
            phi.op.bounded_above and direction is Direction.DOWN
        )
        if guard_safe:
            return NonTerminating(
                rule,
                FormulaWitness(
                    conjuncts=(
                        (f"x0 {phi.op.value} c", True),
                        (f"both branches move {direction.value}, preserving the guard", True),
                    ),
                    bindings=(("x0", x0), ("c", phi.bound)),
                ),
            )
        verdict = accelerated_walk(loop, x0, rule, None, walk_budget)
        assert not isinstance(verdict, NonTerminating)
        return verdict
    if 21 <= row <= 24:
        return fixed_point_search(loop, x0, row, walk_budget)
    if 17 <= row <= 20:
        satisfied, witness = nt_formula(row, loop, x0, cls1, cls2)
        if satisfied:
            return NonTerminating(rule, witness)
        in_then = loop.branch_cond.op.holds(x0, loop.branch_cond.bound)
        active = loop.then_update if in_then else loop.else_update
        escape = escape_region(x0, phi.bound, phi.op, active)
        assert isinstance(escape, Escape)
        return Terminating(escape.steps)
    if _needs_walk(row, loop, cls1, cls2):
        return accelerated_walk(loop, x0, rule, None, walk_budget)
    satisfied, witness = nt_formula(row, loop, x0, cls1, cls2)
    if satisfied:
        return NonTerminating(rule, witness)
    if 25 <= row <= 28:
        return Terminating(_pinned_pair_exit(loop, x0))
    verdict = accelerated_walk(loop, x0, rule, None, walk_budget)
    assert not isinstance(verdict, NonTerminating), f"formula and walk disagree on row {row}"
    return verdict


def _pinned_pair_exit(loop: MultiPathLoop, x0: int) -> int:
    """Exit step when both branches are direct assignments (at most 2 moves)."""
    cond, phi = loop.branch_cond, loop.guard
    x = x0
    for n in range(1, 4):
        upd = loop.then_update if cond.op.holds(x, cond.bound) else loop.else_update
        x = upd.apply(x)
        if not phi.op.holds(x, phi.bound):
            return n
    raise AssertionError("constant-pair loop declared terminating but runs on")
