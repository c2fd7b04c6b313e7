from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nccalc import GF, QQ, field_from_tag
from nccalc.exactfield import (ExactScalar, FieldMismatchError, field_arith, modular_inverse,
                               parse_scalar)

F7 = GF(7)
rationals = st.fractions(max_denominator=50)
residues = st.integers(min_value=-100, max_value=100)


def test_field_tags():
    assert field_from_tag("Q") is QQ
    assert field_from_tag("F7") == F7
    assert field_from_tag("Fp7") == F7
    assert field_from_tag("GF7") == F7
    with pytest.raises(ValueError):
        field_from_tag("R")
    with pytest.raises(ValueError):
        GF(9)


def test_render_and_parse_round_trip():
    assert QQ.render(Fraction(-3, 6)) == "-1/2"
    assert QQ.render(Fraction(4)) == "4"
    assert F7.render(10) == "3 mod 7"
    assert parse_scalar("3 mod 7") == ExactScalar(F7, 3)
    assert parse_scalar("-2/4") == ExactScalar(QQ, Fraction(-1, 2))
    assert parse_scalar("1/2", F7) == ExactScalar(F7, 4)
    with pytest.raises(FieldMismatchError):
        parse_scalar("3 mod 5", F7)
    with pytest.raises(ValueError):
        parse_scalar("0.5")
    with pytest.raises(ZeroDivisionError):
        parse_scalar("1/0")


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        QQ.coerce(0.5)
    with pytest.raises(TypeError):
        F7.coerce(1.0)


def test_mixed_fields_refuse_to_combine():
    with pytest.raises(FieldMismatchError):
        ExactScalar(QQ, 1) + ExactScalar(F7, 1)
    with pytest.raises(FieldMismatchError):
        field_arith(ExactScalar(QQ, 1), ExactScalar(F7, 1), "add")


def test_modular_inverse():
    for a in range(1, 7):
        x = ExactScalar(F7, a)
        assert x * modular_inverse(x) == 1
    with pytest.raises(ZeroDivisionError):
        modular_inverse(ExactScalar(F7, 0))
    with pytest.raises(TypeError):
        modular_inverse(ExactScalar(QQ, 2))


def test_scalars_are_immutable():
    x = ExactScalar(QQ, 1)
    with pytest.raises(AttributeError):
        x.raw = 2


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    x, y, z = (ExactScalar(QQ, v) for v in (a, b, c))
    assert (x + y) * z == x * z + y * z
    assert x - x == 0
    if y:
        assert (x / y) * y == x
    assert parse_scalar(str(x)) == x


@given(residues, residues, residues)
def test_prime_field_axioms(a, b, c):
    x, y, z = (ExactScalar(F7, v) for v in (a, b, c))
    assert (x + y) * z == x * z + y * z
    assert x * 7 == 0
    if y:
        assert field_arith(field_arith(x, y, "div"), y, "mul") == x
    assert parse_scalar(str(x)) == x
