import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import CORPUS
from genexpr import random_ast
from planebreaker.expr import (
    Binary,
    Call,
    Literal,
    Unary,
    Variable,
    canonical_text,
    free_variables,
    parse,
)


def test_rendering_scheme():
    expr = Binary("add", Call("sin", Variable("x")), Call("cos", Variable("y")))
    assert canonical_text(expr) == "z = (sin(x) + cos(y))"
    assert canonical_text(Literal(3.0)) == "z = 3"
    assert canonical_text(Unary("neg", Variable("x"))) == "z = (-x)"
    assert canonical_text(Binary("pow", Variable("x"), Literal(2.0))) == "z = (x ^ 2)"


def test_roundtrip_on_corpus():
    for source in CORPUS:
        expr = parse(source)
        assert parse(canonical_text(expr)) == expr, source


def test_roundtrip_extreme_literals():
    for value in (1e-7, 1e20, 123456789.123456, 0.1, 2.5e-12, 9.999e15):
        expr = Literal(value)
        again = parse(canonical_text(expr))
        assert again == expr, value


def test_roundtrip_generated_corpus():
    rng = random.Random(99)
    for _ in range(2000):
        expr = random_ast(rng, depth=6)
        assert parse(canonical_text(expr)) == expr


@settings(max_examples=300, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_roundtrip_property(seed):
    expr = random_ast(random.Random(seed), depth=5)
    assert parse(canonical_text(expr)) == expr


@pytest.mark.parametrize(
    "source,expected",
    [
        ("x + y", {"x", "y"}),
        ("5", set()),
        ("sin(x)*x", {"x"}),
        ("pi*e", set()),
        ("-(y)", {"y"}),
    ],
)
def test_free_variables(source, expected):
    assert free_variables(parse(source)) == expected
