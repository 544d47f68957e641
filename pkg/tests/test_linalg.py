from fractions import Fraction as F

import sympy
from hypothesis import given, settings, strategies as st

from multiloop import linalg as la
from multiloop.scalars import CycScalar

entries = st.integers(-3, 3)


@st.composite
def matrices(draw):
  r, c = draw(st.integers(1, 6)), draw(st.integers(1, 6))
  return [[draw(entries) for _ in range(c)] for _ in range(r)]


def sparse(rows):
  return [{j: CycScalar.rational(x) for j, x in enumerate(row) if x} for row in rows]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
  assert la.rank(sparse(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_nullspace_is_kernel(rows):
  ncols = len(rows[0])
  ns = la.nullspace(sparse(rows), ncols)
  assert len(ns) == ncols - sympy.Matrix(rows).rank()
  for v in ns:
    for row in sparse(rows):
      assert sum((row[j] * x for j, x in v.items() if j in row), CycScalar.rational(0)) == 0


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.data())
def test_inverse(n, data):
  rows = [[data.draw(entries) for _ in range(n)] for _ in range(n)]
  if sympy.Matrix(rows).det() == 0:
    return
  a = la.from_dense([[CycScalar.rational(x) for x in row] for row in rows])
  prod = la.mat_mul(a, la.inverse(a, n))
  assert la.mat_equal(prod, la.identity(n, CycScalar.rational(1)))


def test_incremental_basis_coords():
  B = la.IncrementalBasis()
  one = CycScalar.rational(1)
  u, v = {0: one, 1: one}, {1: one, 2: CycScalar.rational(F(1, 2))}
  assert B.add(u) == (0, None) and B.add(v) == (1, None)
  assert B.add(la.vadd(u, v, 2)) == (None, {0: one, 1: CycScalar.rational(2)})
  c = B.coords(la.vadd(u, v, 3))
  assert c == {0: one, 1: CycScalar.rational(3)}
