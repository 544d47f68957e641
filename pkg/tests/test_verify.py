import json

import pytest

from multiloop.grading import eigenspace_decompose, make_diagram_aut, validate_tuple
from multiloop.liealg import build_simple
from multiloop.repmod import build_realized
from multiloop.scalars import CycScalar
from multiloop.toroidal import ToroidalAlgebra, parse_element
from multiloop.verify import SweepConfig, jacobi_residual, sweep_jacobi, sweep_lietorus, sweep_module

R = CycScalar.rational


@pytest.fixture(scope="module")
def a2():
  g = build_simple("A", 2)
  s = make_diagram_aut(g, (1, 0))
  return eigenspace_decompose(g, [s], validate_tuple([s], [2]))


def test_report_schema_and_determinism(a2):
  alg = ToroidalAlgebra(a2, 2, (R(1), R(0)))
  one = sweep_jacobi(alg, SweepConfig(seed=3)).to_json()
  two = sweep_jacobi(ToroidalAlgebra(a2, 2, (R(1), R(0))), SweepConfig(seed=3)).to_json()
  assert one == two
  doc = json.loads(one)
  for c in doc["checks"]:
    assert {"check", "status", "witnesses", "elapsed_ms"} <= set(c)
    assert c["elapsed_ms"] is None
  timed = json.loads(sweep_jacobi(alg, SweepConfig()).to_json(timing=True))
  assert all(isinstance(c["elapsed_ms"], float) for c in timed["checks"])


def test_sampling_above_limit(a2):
  alg = ToroidalAlgebra(a2, 2)
  rep = sweep_jacobi(alg, SweepConfig(samples=50, seed=1, exhaustive_limit=10))
  assert rep.get("jacobi").detail == "50 sampled triples" and rep.passed


def test_witness_replays(a2):
  alg = ToroidalAlgebra(a2, 2)
  basis = alg.window_basis()
  x = next(k for k in basis if k[0] == "x" and k[1] == (1,))
  y = next(k for k in basis if k[0] == "x" and k[1] == (-1,) and alg.basis_bracket(x, k))
  bad = {k: v * 3 for k, v in alg.basis_bracket(x, y).items()}
  alg._cache[(x, y)] = bad
  rep = sweep_jacobi(alg, SweepConfig())
  w = rep.get("jacobi").witnesses[0]["triple"]
  keys = [next(iter(parse_element(t, alg))) for t in w]
  assert jacobi_residual(alg, *keys)


def test_module_and_lietorus_reports(a2):
  M = build_realized(a2, (), 1, (1, 1), (0,), window=2)
  rep = sweep_module(M, SweepConfig(window=2, samples=20))
  assert rep.passed
  assert [c.check for c in rep.checks] == ["module_axiom", "level_zero", "weight_table",
                                           "weyl_invariance", "highest_weight_space",
                                           "integrability"]
  lt = sweep_lietorus(a2, SweepConfig())
  assert lt.passed and lt.totals()["pass"] == 5


def test_config_validation():
  with pytest.raises(ValueError):
    SweepConfig(samples=0)
