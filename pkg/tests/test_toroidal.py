from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from multiloop.grading import eigenspace_decompose, identity_aut, make_diagram_aut, validate_tuple
from multiloop.liealg import build_simple
from multiloop.scalars import CycScalar, promote, root_of_unity
from multiloop.toroidal import (DegreeNotInGamma, NullRoot, ToroidalAlgebra, WindowOverflow,
                                format_element, parse_element)
from multiloop.verify import SweepConfig, jacobi_residual, sweep_jacobi

R = CycScalar.rational
PHIS = [(0, 0), (1, 0), (0, 1), (1, 1)]


@pytest.fixture(scope="module")
def a2():
  g = build_simple("A", 2)
  s = make_diagram_aut(g, (1, 0))
  return eigenspace_decompose(g, [s], validate_tuple([s], [2]))


@pytest.fixture(scope="module")
def a2x():
  g = build_simple("A", 2)
  auts = [make_diagram_aut(g, (1, 0)), identity_aut(g)]
  return eigenspace_decompose(g, auts, validate_tuple(auts, [2, 1]))


@pytest.mark.parametrize("phi", PHIS)
def test_jacobi_window_2(a2, phi):
  rep = sweep_jacobi(ToroidalAlgebra(a2, 2, tuple(map(R, phi))), SweepConfig())
  assert rep.passed, rep.to_json()


@pytest.mark.parametrize("phi", [(0, 0), (1, 1), (F(1, 2), -3)])
def test_jacobi_two_variables(a2x, phi):
  rep = sweep_jacobi(ToroidalAlgebra(a2x, 1, tuple(map(R, phi))), SweepConfig())
  assert rep.passed, rep.to_json()


def test_corrupted_structure_constant_is_caught(a2):
  alg = ToroidalAlgebra(a2, 2)
  basis = alg.window_basis()
  x = next(k for k in basis if k[0] == "x" and k[1] == (1,))
  y = next(k for k in basis if k[0] == "x" and k[1] == (-1,) and alg.basis_bracket(x, k))
  bad = dict(alg.basis_bracket(x, y))
  first = next(iter(bad))
  bad[first] = bad[first] * 2
  alg._cache[(x, y)] = bad
  rep = sweep_jacobi(alg, SweepConfig())
  jac = rep.get("jacobi")
  assert jac.status == "fail" and jac.witnesses
  assert rep.get("antisymmetry").status == "fail"


def test_centre_and_cocycle_reduction(a2, a2x):
  alg = ToroidalAlgebra(a2, 2)
  assert alg.centre_on_window() == [{("K", (0,), 0): R(1)}]
  # one variable: every K t^r with r != 0 is exact
  assert alg.K((2,), 0) == {}
  alg2 = ToroidalAlgebra(a2x, 2)
  # r_1 K_1(r) + r_2 K_2(r) = 0
  r = (2, 1)
  total = {}
  for i in range(2):
    for k, v in alg2.K(r, i, R(r[i])).items():
      total[k] = total.get(k, R(0)) + v
  assert all(not v for v in total.values())


def test_derivation_action_on_loops(a2):
  alg = ToroidalAlgebra(a2, 3)
  x = alg.loop((1,), 0)
  assert alg.bracket(alg.d((0,), 0), x) == x
  dx = alg.bracket(alg.d((2,), 0), alg.loop((-1,), 0))
  assert dx == alg.loop((1,), 0, R(-1))


def test_root_spaces(a2):
  alg = ToroidalAlgebra(a2, 2)
  assert len(alg.root_space((0,), (0,))) == 3
  assert len(alg.root_space((0,), (2,))) == 2
  assert len(alg.root_space((2,), (1,))) == 1
  with pytest.raises(NullRoot):
    alg.coroot((0,), (0,))


def test_weyl_reflection_is_involution(a2):
  alg = ToroidalAlgebra(a2, 2)
  alpha, k = (2,), (1,)
  lam = ((F(1),), (F(0),), (F(0),))
  once = alg.weyl_reflect(alpha, k, lam)
  assert alg.weyl_reflect(alpha, k, once) == lam


def test_errors(a2):
  alg = ToroidalAlgebra(a2, 2)
  with pytest.raises(DegreeNotInGamma):
    alg.d((1,), 0)
  with pytest.raises(WindowOverflow):
    alg.bracket(alg.loop((2,), 0), alg.loop((2,), 0))


coef = st.builds(lambda q, k: promote(root_of_unity(4, k), 4) * q + R(F(1, 3)),
                 st.fractions(-3, 3, max_denominator=4), st.integers(0, 3))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["x0", "x2", "d_1", "K_1"]), st.integers(-1, 1), coef),
                max_size=4))
def test_literal_round_trip(a2x, terms):
  alg = ToroidalAlgebra(a2x, 2)
  elt = {}
  for sym, j, c in terms:
    k = (2 * j, j)
    part = (alg.loop(k, int(sym[1:]), c) if sym[0] == "x" else
            alg.d(k, 0, c) if sym[0] == "d" else alg.K(k, 0, c))
    for key, v in part.items():
      elt[key] = elt.get(key, R(0)) + v
  elt = {k: v for k, v in elt.items() if v}
  assert parse_element(format_element(elt), alg, 4) == elt


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([-2, 0, 2]), st.sampled_from([-2, 0, 2]), st.sampled_from([-2, 0, 2]),
       st.fractions(-2, 2, max_denominator=3), st.fractions(-2, 2, max_denominator=3))
def test_derivation_jacobi_with_cocycle(a2, r, s, t, a, b):
  alg = ToroidalAlgebra(a2, 6, (R(a), R(b)))
  x, y, z = ("d", (r,), 0), ("d", (s,), 0), ("d", (t,), 0)
  assert not jacobi_residual(alg, x, y, z)
