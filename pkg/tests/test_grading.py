from fractions import Fraction as F
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from multiloop import linalg as la
from multiloop.grading import (GroupOrderViolation, NotADiagramSymmetry, NotAHomomorphism,
                               NonCommuting, OrderMismatch, character_aut, check_lie_torus,
                               compose, eigenspace_decompose, ghat_orbit, identity_aut,
                               make_diagram_aut, make_torus_aut, outer_part, validate_tuple)
from multiloop.liealg import build_simple
from multiloop.scalars import CycScalar, root_of_unity

R = CycScalar.rational


def decompose(g, auts, m):
  return eigenspace_decompose(g, auts, validate_tuple(auts, m))


@pytest.fixture(scope="module")
def a2():
  g = build_simple("A", 2)
  return decompose(g, [make_diagram_aut(g, (1, 0))], [2])


@pytest.fixture(scope="module")
def a3():
  g = build_simple("A", 3)
  return decompose(g, [make_diagram_aut(g, (2, 1, 0))], [2])


def dense_rank_kernel(aut, eigen):
  dim = aut.g.dim
  M = sympy.zeros(dim, dim)
  for col, img in enumerate(aut.images):
    for row, c in img.items():
      f = c.to_fraction()
      M[row, col] = sympy.Rational(f.numerator, f.denominator)
  return dim - (M - eigen * sympy.eye(dim)).rank()


def test_dims_match_rank_oracle(a2, a3):
  assert a2.dims() == (3, 5)
  assert a3.dims() == (10, 5)
  for dec in (a2, a3):
    assert dec.dims() == tuple(dense_rank_kernel(dec.auts[0], e) for e in (1, -1))


def test_eigenspaces_are_eigenvectors(a3):
  sigma = a3.auts[0]
  for k in a3.classes:
    xi = R(1) if k == (0,) else R(-1)
    for v in a3.basis[k]:
      assert sigma.apply(v) == la.vscale(v, xi)


def test_bracket_respects_grading(a2):
  for k, l in product(a2.classes, repeat=2):
    for b in range(len(a2.basis[k])):
      for c in range(len(a2.basis[l])):
        v = a2.g.bracket(a2.basis[k][b], a2.basis[l][c])
        if v:
          assert {kk for kk, _ in a2.coords(v)} == {a2.group.add(k, l)}


def test_fixed_types(a2, a3):
  assert a2.zero_type() == ("B", 1)
  assert a3.zero_type() in {("B", 2), ("C", 2)}


def test_lie_torus_report(a2, a3):
  for dec in (a2, a3):
    assert all(ok for _, ok, _ in check_lie_torus(dec))
  g = build_simple("A", 1)
  sign = decompose(g, [make_torus_aut(g, [R(-1)])], [2])
  assert sign.dims() == (1, 2)
  rows = check_lie_torus(sign)
  assert not rows[0][1] and "dim g_0 = 1" in rows[0][2]


def test_orbits(a2, a3):
  assert ghat_orbit(a2, (1, 0)) == [(1, 0), (0, 1)]
  assert ghat_orbit(a2, (1, 1)) == [(1, 1)]
  assert sorted(ghat_orbit(a3, (1, 0, 0))) == [(0, 0, 1), (1, 0, 0)]


def test_outer_part_of_inner_and_diagram():
  g = build_simple("A", 3)
  flip = make_diagram_aut(g, (2, 1, 0))
  torus = make_torus_aut(g, [root_of_unity(4), R(1), R(-1)])
  assert outer_part(g, torus) == (0, 1, 2)
  assert outer_part(g, compose([flip, torus])) == (2, 1, 0)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([0, 1, 2, 3]), min_size=3, max_size=3))
def test_torus_automorphisms_commute_and_preserve_bracket(ks):
  g = build_simple("A", 3)
  t = make_torus_aut(g, [root_of_unity(4, k) for k in ks])
  s = make_torus_aut(g, [R(-1), R(1), R(-1)])
  assert t.then(s) == s.then(t)
  assert not t.automorphism_defects()


def test_errors():
  g = build_simple("A", 2)
  flip = make_diagram_aut(g, (1, 0))
  with pytest.raises(NotADiagramSymmetry):
    make_diagram_aut(build_simple("B", 2), (1, 0))
  with pytest.raises(GroupOrderViolation):
    validate_tuple([flip, flip], [2, 2])
  with pytest.raises(OrderMismatch):
    validate_tuple([flip], [3])
  torus = make_torus_aut(g, [root_of_unity(3), R(1)])
  with pytest.raises(NonCommuting):
    validate_tuple([flip, torus], [2, 3])
  dec = decompose(g, [flip], [2])
  with pytest.raises(NotAHomomorphism):
    character_aut(dec, [root_of_unity(3)])
