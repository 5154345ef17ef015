import pytest

from monoterm import (
    BoundExhausted,
    CycleDetected,
    TerminatedIn,
    Terminating,
    Unsupported,
    agreement_check,
    decide,
    run,
)
from monoterm.interpreter import step_values

from conftest import diagonal, multipath, single


def test_example2_cycle(example2):
    result = run(example2, 100)
    assert result == CycleDetected(result.entry, 5)
    assert result.entry.values == (3,)
    assert result.entry.step == 0


def test_countdown_terminates():
    assert run(single(">", 0, (1, -1), 3), 100) == TerminatedIn(3)


def test_divergent_loop_exhausts_budget():
    result = run(single(">", 0, (1, 1), 1), 100)
    assert isinstance(result, BoundExhausted)
    assert result.steps == 100
    assert not result.monotone_escape


def test_divergence_window_stops_early():
    result = run(single(">", 0, (1, 1), 1), 10**6, divergence_window=10)
    assert isinstance(result, BoundExhausted)
    assert result.monotone_escape
    assert result.steps == 10


def test_window_only_fires_in_guard_safe_direction():
    # decreasing toward a lower bound is progress toward exit, never escape
    result = run(single(">", 0, (1, -1), 50), 10**6, divergence_window=10)
    assert result == TerminatedIn(50)


def test_diagonal_gap_metric_window():
    # both climb, gap frozen, states never recur
    result = run(diagonal(">", 0, (1, 2), (1, 2), 5, 1), 10**6, divergence_window=25)
    assert isinstance(result, BoundExhausted)
    assert result.monotone_escape


def test_determinism(example2):
    assert run(example2, 1000) == run(example2, 1000)


def test_cycle_certificate_replays(example2):
    result = run(example2, 100)
    values = result.entry.values
    for _ in range(result.period):
        values = step_values(example2, values)
    assert values == result.entry.values


def test_max_steps_validation(example2):
    with pytest.raises(ValueError):
        run(example2, 0)


def test_agreement_pass_cases(example1):
    verdict = decide(example1)
    assert agreement_check(example1, verdict).ok
    program = single(">=", 5, (1, -1), 7)
    assert agreement_check(program, decide(program)).ok


def test_agreement_rejects_injected_wrong_verdict(example2):
    check = agreement_check(example2, Terminating(None))
    assert not check.ok
    assert check.details


def test_agreement_rejects_wrong_iteration_count():
    program = single(">", 0, (1, -1), 3)
    check = agreement_check(program, Terminating(2))
    assert not check.ok
    assert "mismatch" in check.details


def test_agreement_notes_unconfirmed_divergence():
    program = single(">", 0, (1, 1), 1)
    verdict = decide(program)
    check = agreement_check(program, verdict, max_steps=50, divergence_window=None)
    assert check.ok and check.note == "unconfirmed divergence"
    check = agreement_check(program, verdict, max_steps=10**6)
    assert check.ok and check.note == "divergence-consistent"


def test_agreement_requires_decided_verdict(example2):
    with pytest.raises(ValueError):
        agreement_check(example2, Unsupported("nope"))


def test_multipath_branch_selection():
    program = multipath(">=", 0, ">=", 10, (1, 1), (1, 2), 9)
    assert step_values(program, (9,)) == (11,)  # else branch: 9 < 10
    assert step_values(program, (10,)) == (11,)  # then branch


def test_step_soundness_against_guard_and_update_primitives():
    import random

    from monoterm import apply_update, eval_guard
    from monoterm.gen import random_program

    rng = random.Random(8)
    for _ in range(200):
        program = random_program(rng, rng.choice(("single", "diagonal", "multipath")), 10)
        shape = program.shape
        values = tuple(program.init[v] for v in program.variables())
        for _ in range(5):
            stepped = step_values(program, values)
            if hasattr(shape, "branch_cond"):
                env = {"x": values[0]}
                upd = (
                    shape.then_update
                    if eval_guard(shape.branch_cond, env)
                    else shape.else_update
                )
                assert stepped == (apply_update(upd, values[0]),)
            elif hasattr(shape, "lhs_update"):
                assert stepped == (
                    apply_update(shape.lhs_update, values[0]),
                    apply_update(shape.rhs_update, values[1]),
                )
            else:
                assert stepped == (apply_update(shape.update, values[0]),)
            values = stepped
