from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from multiloop.scalars import (ConductorMismatch, CycScalar, DivisionByZero, format_scalar,
                               is_root_of_unity, multiplicative_order, nth_root, parse_scalar,
                               promote, root_of_unity)

CONDUCTORS = [1, 2, 3, 4, 6, 12]


@st.composite
def scalars(draw, n=None):
  n = n or draw(st.sampled_from(CONDUCTORS))
  out = CycScalar.rational(0, n)
  for k in range(draw(st.integers(0, 3))):
    q = F(draw(st.integers(-6, 6)), draw(st.integers(1, 5)))
    out = out + promote(root_of_unity(n, draw(st.integers(0, n - 1))) * q, n)
  return out


@st.composite
def same_field(draw, count=3):
  n = draw(st.sampled_from(CONDUCTORS))
  return [draw(scalars(n)) for _ in range(count)]


@settings(max_examples=150, deadline=None)
@given(same_field())
def test_field_axioms(xs):
  a, b, c = xs
  assert (a + b) + c == a + (b + c)
  assert a * (b + c) == a * b + a * c
  assert a * b == b * a
  assert a - a == 0
  if b:
    assert (a / b) * b == a


@settings(max_examples=100, deadline=None)
@given(scalars())
def test_format_parse_round_trip(a):
  assert parse_scalar(format_scalar(a), a.n) == a


@settings(max_examples=100, deadline=None)
@given(scalars(), scalars())
def test_mixed_conductors_add_in_compositum(a, b):
  s = a + b
  assert s - b == a


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 12])
def test_roots_of_unity(n):
  z = root_of_unity(n)
  assert z ** n == 1
  assert multiplicative_order(z) == n
  assert sum((z ** k for k in range(n)), CycScalar.rational(0)) == (1 if n == 1 else 0)


def test_known_identities():
  z3 = root_of_unity(3)
  assert z3 ** 2 + z3 + 1 == 0
  i = root_of_unity(4)
  assert i * i == -1
  assert root_of_unity(6) == -(z3 ** 2)
  assert is_root_of_unity(i) and not is_root_of_unity(CycScalar.rational(2))


def test_nth_root():
  assert nth_root(CycScalar.rational(-1), 2) is None
  assert nth_root(promote(CycScalar.rational(-1), 4), 2) ** 2 == -1
  r = nth_root(CycScalar.rational(F(9, 4)), 2)
  assert r * r == F(9, 4)


def test_errors():
  with pytest.raises(DivisionByZero):
    CycScalar.rational(1) / CycScalar.rational(0)
  with pytest.raises(ConductorMismatch):
    parse_scalar("z^1@3", 2)
  assert parse_scalar("z^1@2", 2) == -1
  assert parse_scalar("1/2 - z^2@4", 4) == F(3, 2)
