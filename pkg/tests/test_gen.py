import random

from monoterm import ClassKind, Unsupported, classify, decide, parse
from monoterm.gen import (
    diagonal_for_pair,
    generate_corpus,
    multipath_for_row,
    random_program,
)
from monoterm.model import DiagonalLoop, MultiPathLoop, SinglePathLoop
from monoterm.multipath import case_row


def test_corpus_is_deterministic():
    assert generate_corpus(7, 10) == generate_corpus(7, 10)
    assert generate_corpus(7, 10) != generate_corpus(8, 10)


def test_corpus_parses():
    for name, text in generate_corpus(3, 60):
        program = parse(text)
        assert program.initial_env()
        assert name.endswith(".loop")


def test_cover_rows_hits_every_table_row():
    rows = set()
    for _, text in generate_corpus(11, 36, shape="multipath", cover_rows=True):
        program = parse(text)
        shape = program.shape
        x0 = program.init["x"]
        cls1 = classify(shape.then_update, x0)
        cls2 = classify(shape.else_update, x0)
        rows.add(case_row(shape.guard.op, shape.branch_cond.op, cls1.direction, cls2.direction))
    assert rows == set(range(1, 37))


def test_mix_covers_all_shapes_and_classes():
    rng = random.Random(5)
    shapes, kinds = set(), set()
    for _ in range(300):
        program = random_program(rng, rng.choice(("single", "diagonal", "multipath")), 20)
        shapes.add(type(program.shape))
        for var, upd in {
            SinglePathLoop: lambda s: [("x", s.update)],
            DiagonalLoop: lambda s: [(s.guard.lhs, s.lhs_update), (s.guard.rhs, s.rhs_update)],
            MultiPathLoop: lambda s: [("x", s.then_update), ("x", s.else_update)],
        }[type(program.shape)](program.shape):
            try:
                kinds.add(classify(upd, program.init[var]).kind)
            except Exception:
                pass
    assert shapes == {SinglePathLoop, DiagonalLoop, MultiPathLoop}
    assert kinds == set(ClassKind)


def test_targeted_constructors():
    rng = random.Random(1)
    for row in (1, 13, 17, 21, 25, 29, 36):
        program = multipath_for_row(rng, row, 20)
        shape = program.shape
        x0 = program.init["x"]
        cls1 = classify(shape.then_update, x0)
        cls2 = classify(shape.else_update, x0)
        assert case_row(shape.guard.op, shape.branch_cond.op, cls1.direction, cls2.direction) == row
    for kx in ClassKind:
        for ky in ClassKind:
            program = diagonal_for_pair(rng, kx, ky, 20)
            shape = program.shape
            assert classify(shape.lhs_update, program.init["x"]).kind is kx
            assert classify(shape.rhs_update, program.init["y"]).kind is ky


def test_generated_corpus_decides_cleanly():
    for _, text in generate_corpus(23, 80, bound=15):
        verdict = decide(parse(text))
        assert not isinstance(verdict, Unsupported)
