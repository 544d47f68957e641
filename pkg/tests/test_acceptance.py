"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line."""

import itertools
import json
import subprocess
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest
import sympy

from multiloop.cli import build_decomposition, build_module, load_config
from multiloop.grading import (check_lie_torus, eigenspace_decompose, identity_aut,
                               make_diagram_aut, make_torus_aut, validate_tuple)
from multiloop.liealg import build_simple
from multiloop.repmod import (build_evaluation, build_gln_module, build_L_beta,
                              find_intertwiner, iso_check, evaluation_iso_predicate,
                              realized_iso_oracle)
from multiloop.scalars import CycScalar
from multiloop.toroidal import ToroidalAlgebra, gl_bracket
from multiloop.verify import SweepConfig, module_axiom_failures, sweep_jacobi, sweep_module

FIX = Path(__file__).parent / "fixtures"
R = CycScalar.rational
PHIS = [(0, 0), (1, 0), (0, 1), (1, 1)]


def report(capsys, n, ok, detail):
  with capsys.disabled():
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
  assert ok, detail


def dec_of(name):
  return build_decomposition(load_config(FIX / f"{name}.json"))


def a2_times_identity():
  g = build_simple("A", 2)
  auts = [make_diagram_aut(g, (1, 0)), identity_aut(g)]
  return eigenspace_decompose(g, auts, validate_tuple(auts, [2, 1]))


def sl2_sign():
  g = build_simple("A", 1)
  s = make_torus_aut(g, [R(-1)])
  return eigenspace_decompose(g, [s], validate_tuple([s], [2]))


def rank_oracle_dims(aut, m):
  """dim ker(sigma - xi^k) from a dense sympy rank computation."""
  dim = aut.g.dim
  mat = sympy.zeros(dim, dim)
  for col, img in enumerate(aut.images):
    for row, c in img.items():
      mat[row, col] = sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator)
  out = []
  for k in range(m):
    xi = sympy.Integer(-1) ** k if m == 2 else sympy.exp(2 * sympy.pi * sympy.I * k / m)
    out.append(dim - (mat - xi * sympy.eye(dim)).rank(simplify=True))
  return tuple(out)


def test_criterion_1_twisted_algebra_soundness(capsys):
  parts = []
  ok = True
  for name in ("a2_twisted", "a3_twisted"):
    dec = dec_of(name)
    start = time.perf_counter()
    for phi in PHIS:
      rep = sweep_jacobi(ToroidalAlgebra(dec, 3, tuple(map(R, phi))), SweepConfig(window=3))
      ok &= rep.passed and "sampled" not in rep.get("jacobi").detail
    secs = time.perf_counter() - start
    ok &= secs < 60
    parts.append(f"{name} {rep.get('jacobi').detail} x{len(PHIS)} phi in {secs:.1f}s")
  report(capsys, 1, ok, "; ".join(parts))


def test_criterion_2_eigenspace_dimensions(capsys):
  cases = [("A2 flip", dec_of("a2_twisted"), (3, 5)), ("A3 flip", dec_of("a3_twisted"), (10, 5)),
           ("sl2 sign", sl2_sign(), (1, 2))]
  ok = True
  parts = []
  for name, dec, want in cases:
    got = tuple(dec.dims())
    oracle = rank_oracle_dims(dec.auts[0], dec.m[0])
    ok &= got == want == oracle
    parts.append(f"{name} {got} oracle {oracle}")
  report(capsys, 2, ok, "; ".join(parts))


def test_criterion_3_lie_torus_gate(capsys):
  from multiloop.verify import sweep_lietorus
  ok = True
  parts = []
  for name in ("a2_twisted", "a3_twisted"):
    rep = sweep_lietorus(dec_of(name), SweepConfig(window=2))
    ok &= rep.passed and len(rep.checks) == 5
    parts.append(f"{name} {rep.totals()['pass']}/5 pass")
  rows = check_lie_torus(sl2_sign())
  first = rows[0]
  ok &= (not first[1]) and "dim g_0 = 1" in first[2]
  parts.append(f"sl2 sign: {first[0]} fails ({first[2]})")
  report(capsys, 3, ok, "; ".join(parts))


@pytest.fixture(scope="module")
def crit4():
  M = build_module(load_config(FIX / "a2_twisted.json"), window=2)
  start = time.perf_counter()
  rep = sweep_module(M, SweepConfig(window=2, samples=100, seed=0))
  return M, rep, time.perf_counter() - start


def test_criterion_4_realized_module(capsys, crit4):
  M, rep, secs = crit4
  names = ["module_axiom", "level_zero", "weight_table", "weyl_invariance"]
  ok = all(rep.get(n).status == "pass" for n in names) and secs < 120
  ok &= (M.V1.dim, M.V2.dims()) == (1, (3, 5))
  report(capsys, 4, ok, f"{', '.join(f'{n} {rep.get(n).status}' for n in names)}; "
                        f"{rep.get('module_axiom').detail}; {secs:.1f}s")


def test_criterion_5_integrability(capsys, crit4):
  M, rep, _ = crit4
  res = rep.get("integrability")
  bound = M.V1.dim * M.V2.dim + 1
  ok = res.status == "pass" and res.detail.startswith("100 samples") and f"bound {bound}" in res.detail
  report(capsys, 5, ok, res.detail)


def test_criterion_6_highest_weight_space(capsys, crit4):
  M, rep, _ = crit4
  res = rep.get("highest_weight_space")
  report(capsys, 6, res.status == "pass", f"{res.status}, top dims {M.V2.top_space_dims()}")


def test_criterion_7_evaluation_oracle(capsys):
  dec = dec_of("a2_twisted")
  w1, w2, adj = (1, 0), (0, 1), (1, 1)
  pairs = [(w1, 1, w2, -1), (w1, 1, w2, 1), (w1, 1, w1, 1), (w1, 1, w1, -1),
           (w1, 2, w2, -2), (w1, 2, w1, -2), (w1, 2, w2, 2), (adj, 1, adj, -1),
           (adj, 1, adj, 2), (w1, 1, adj, 1)]
  agree = 0
  verdicts = []
  for lam, a, mu, b in pairs:
    found = find_intertwiner(build_evaluation(dec, lam, [a]), build_evaluation(dec, mu, [b])) is not None
    pred = evaluation_iso_predicate(dec, lam, [a], mu, [b])
    agree += found == pred
    verdicts.append(found)
  ok = agree == len(pairs) and verdicts[0] and not verdicts[1]
  report(capsys, 7, ok, f"{agree}/{len(pairs)} pairs agree")


def test_criterion_8_iso_class_predicate(capsys):
  dec = dec_of("a2_twisted")
  half = F(1, 2)
  grid1 = [(((), 1, (1, 0), (0,)), ((), 1, (1, 0), (1,))),
           (((), 1, (1, 0), (0,)), ((), 1, (1, 0), (half,))),
           (((), 1, (1, 0), (0,)), ((), 1, (0, 1), (0,))),
           (((), 1, (1, 0), (0,)), ((), 1, (0, 1), (1,))),
           (((), 1, (1, 0), (0,)), ((), 2, (1, 0), (0,))),
           (((), 1, (1, 0), (0,)), ((), 1, (1, 1), (0,))),
           (((), 1, (1, 1), (0,)), ((), 1, (1, 1), (-2,)))]
  dec2 = a2_times_identity()
  grid2 = [(((1,), 1, (1, 0), (0, 0)), ((1,), 1, (1, 0), (1, 0))),
           (((1,), 1, (1, 0), (0, 0)), ((1,), 1, (1, 0), (0, half))),
           (((1,), 1, (1, 0), (0, 0)), ((0,), 1, (1, 0), (0, 0)))]
  agree = 0
  seen = set()
  for d, grid in ((dec, grid1), (dec2, grid2)):
    for q1, q2 in grid:
      ok, verdict, cert = iso_check(d, q1, q2)
      agree += ok == realized_iso_oracle(d, q1, q2)
      seen.add(verdict)
  total = len(grid1) + len(grid2)
  report(capsys, 8, agree == total, f"{agree}/{total} agree with the window-intertwiner oracle; "
                                    f"{len(seen)} distinct verdicts")


def test_criterion_9_i_subalgebra(capsys):
  start = time.perf_counter()
  dec = a2_times_identity()
  alg = ToroidalAlgebra(dec, 2, (R(0), R(0)))
  n = alg.n
  units = [tuple(R(int(i == j)) for j in range(n)) for i in range(n)]
  degs = alg.gamma_degrees()
  closed = pi_ok = 0
  total = 0
  for (u, r), (v, s) in itertools.product(itertools.product(units, degs), repeat=2):
    if not alg.in_window(tuple(a + b for a, b in zip(r, s))):
      continue
    total += 1
    a, b = alg.I_element(u, r), alg.I_element(v, s)
    br = alg.bracket(a, b)
    closed += br == alg.I_bracket_closed(u, r, v, s)
    pi_ok += alg.pi_map(br) == gl_bracket(alg.pi_map(a), alg.pi_map(b))
  L = build_L_beta(alg, build_gln_module((1,), 1, n), (F(1, 3), 0), lam=(1, 0))
  bad, count = module_axiom_failures(L)
  secs = time.perf_counter() - start
  ok = closed == pi_ok == total and not bad and secs < 30
  report(capsys, 9, ok, f"closed form {closed}/{total}, pi {pi_ok}/{total}, "
                        f"L(beta,V1) {count} checks {len(bad)} failures, {secs:.1f}s")


def test_criterion_10_determinism(capsys, tmp_path):
  dec = dec_of("a2_twisted")
  cfg = SweepConfig(window=2, seed=7)
  j = [sweep_jacobi(ToroidalAlgebra(dec, 2, (R(1), R(1))), cfg).to_json() for _ in range(2)]
  cfg4 = load_config(FIX / "a2_twisted.json")
  m = [sweep_module(build_module(cfg4), SweepConfig(window=2, seed=7)).to_json() for _ in range(2)]
  outs = []
  for t in range(2):
    out = tmp_path / f"run{t}"
    for cmd in (["module", "check"], ["module", "weights"], ["torus", "check"]):
      subprocess.run([sys.executable, "-m", "multiloop", *cmd, "-c", str(FIX / "a2_twisted.json"),
                      "--seed", "7", "--out", str(out)], check=True, capture_output=True)
    outs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
  ok = j[0] == j[1] and m[0] == m[1] and outs[0] == outs[1] and len(outs[0]) == 3
  json.loads(outs[0]["module_check.json"])
  report(capsys, 10, ok, f"sweep reports and {len(outs[0])} CLI outputs byte-identical across runs")
