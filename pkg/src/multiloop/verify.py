"""Property sweeps with deterministic sampling and JSON reports."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from . import linalg as la
from .grading import check_lie_torus, group_elements
from .repmod import (GradedLTModule, LoopTensorModule, RealizedModule,
                     check_integrable, highest_weight_space, is_interior,
                     positive_keys, weight_table, weight_table_by_eigenspaces,
                     weyl_check)
from .scalars import CycScalar
from .toroidal import ToroidalAlgebra, format_element

ONE = CycScalar.rational(1)


@dataclass
class SweepConfig:
  target: str = "algebra"
  window: int = 2
  phi: tuple = (0, 0)
  samples: int = 100
  seed: int = 0
  parallelism: int = 1
  exhaustive_limit: int = 10 ** 6

  def __post_init__(self):
    if self.samples < 1:
      raise ValueError("samples must be at least 1")


@dataclass
class CheckResult:
  check: str
  status: str
  witnesses: list = field(default_factory=list)
  elapsed_ms: float | None = None
  detail: str = ""

  def as_dict(self, timing=False):
    out = {"check": self.check, "status": self.status, "witnesses": self.witnesses,
           "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None}
    if self.detail:
      out["detail"] = self.detail
    return out


@dataclass
class SweepReport:
  checks: list = field(default_factory=list)

  @property
  def passed(self) -> bool:
    return all(c.status in ("pass", "info") for c in self.checks)

  def totals(self):
    out = {"pass": 0, "fail": 0, "info": 0}
    for c in self.checks:
      out[c.status] = out.get(c.status, 0) + 1
    return out

  def get(self, name):
    return next(c for c in self.checks if c.check == name)

  def to_json(self, timing=False) -> str:
    doc = {"checks": [c.as_dict(timing) for c in self.checks], "totals": self.totals()}
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)

  def lines(self):
    out = []
    for c in self.checks:
      tag = {"pass": "PASS", "fail": "FAIL", "info": "INFO"}[c.status]
      out.append(f"{tag} {c.check}" + (f": {c.detail}" if c.detail else ""))
    return out


class _Timer:
  def __enter__(self):
    self.t = time.perf_counter()
    return self

  def __exit__(self, *exc):
    self.ms = (time.perf_counter() - self.t) * 1000


def _result(name, witnesses, timer, detail=""):
  return CheckResult(name, "fail" if witnesses else "pass", witnesses[:20], timer.ms, detail)


def key_label(key) -> str:
  return format_element({key: ONE}).split("*", 1)[1]


# ---------------------------------------------------------------------------

def _sum(parts):
  out = {}
  for p in parts:
    la.vaxpy_into(out, p, ONE)
  return out


def jacobi_residual(alg: ToroidalAlgebra, x, y, z):
  X, Y, Z = {x: ONE}, {y: ONE}, {z: ONE}
  return _sum([alg.bracket(X, alg.bracket(Y, Z)), alg.bracket(Y, alg.bracket(Z, X)),
               alg.bracket(Z, alg.bracket(X, Y))])


def sweep_jacobi(alg: ToroidalAlgebra, cfg: SweepConfig) -> SweepReport:
  """Antisymmetry on all ordered pairs and Jacobi on unordered triples.

  The Jacobi sum changes sign under any transposition once antisymmetry
  holds, so checking each multiset of three basis elements covers all
  ordered triples.
  """
  basis = alg.window_basis()
  report = SweepReport()
  with _Timer() as t:
    bad = []
    for x in basis:
      for y in basis:
        if alg.fits(x, y):
          s = _sum([alg.bracket({x: ONE}, {y: ONE}), alg.bracket({y: ONE}, {x: ONE})])
          if s:
            bad.append({"pair": [key_label(x), key_label(y)], "residual": format_element(s)})
  report.checks.append(_result("antisymmetry", bad, t))

  with _Timer() as t:
    bad = []
    for x in basis:
      for y in basis:
        if not alg.fits(x, y):
          continue
        want = tuple(a + b for a, b in zip(alg.key_weight(x)[0], alg.key_weight(y)[0]))
        deg = tuple(a + b for a, b in zip(x[1], y[1]))
        for k in alg.basis_bracket(x, y):
          w, d = alg.key_weight(k)
          if d != deg or (k[0] == "x" and w != want):
            bad.append({"pair": [key_label(x), key_label(y)], "term": key_label(k)})
  report.checks.append(_result("grading", bad, t))

  with _Timer() as t:
    n = len(basis)
    triples = [(i, j, k) for i in range(n) for j in range(i, n) for k in range(j, n)
               if alg.fits(basis[i], basis[j], basis[k])]
    detail = f"{len(triples)} triples"
    if len(triples) > cfg.exhaustive_limit:
      rng = random.Random(cfg.seed)
      triples = sorted(rng.sample(triples, cfg.samples))
      detail = f"{cfg.samples} sampled triples"
    bad = []
    for i, j, k in triples:
      r = jacobi_residual(alg, basis[i], basis[j], basis[k])
      if r:
        bad.append({"triple": [key_label(basis[i]), key_label(basis[j]), key_label(basis[k])],
                    "residual": format_element(r)})
  report.checks.append(_result("jacobi", bad, t, detail))
  return report


# ---------------------------------------------------------------------------

def module_axiom_failures(M: LoopTensorModule, limit=None):
  alg = M.alg
  basis = [k for k in alg.window_basis() if M.allows(k)]
  bad = []
  count = 0
  for i, x in enumerate(basis):
    for y in basis[i:]:
      if not alg.fits(x, y):
        continue
      for k in alg.degrees():
        if not alg.fits(x, y, ("v", k, 0)):
          continue
        for vk in M.piece_basis(k):
          count += 1
          r = M.check_axiom(x, y, vk)
          if r:
            bad.append({"pair": [key_label(x), key_label(y)], "vector": _vlabel(vk),
                        "residual": {_vlabel(a): str(b) for a, b in sorted(r.items())}})
  return bad, count


def _vlabel(vk):
  k, p, q = vk
  return f"v{p}.{q}@[{','.join(map(str, k))}]"


def sweep_module(M: LoopTensorModule, cfg: SweepConfig) -> SweepReport:
  report = SweepReport()
  alg = M.alg
  with _Timer() as t:
    bad, count = module_axiom_failures(M)
  report.checks.append(_result("module_axiom", bad, t, f"{count} (pair, vector) checks"))

  with _Timer() as t:
    bad = []
    for key in alg.window_basis():
      if key[0] != "K":
        continue
      for k in alg.degrees():
        for vk in M.piece_basis(k):
          if M.act_basis(key, vk):
            bad.append({"element": key_label(key), "vector": _vlabel(vk)})
    # the K terms produced by brackets must also act trivially
    for r in alg.gamma_degrees():
      for i in range(alg.n):
        elt = alg.reduce_central({(r, i): ONE})
        for vk in M.piece_basis((0,) * alg.n):
          if M.act(elt, {vk: ONE}):
            bad.append({"element": f"K_{i + 1}@{list(r)}", "vector": _vlabel(vk)})
  report.checks.append(_result("level_zero", bad, t))

  with _Timer() as t:
    table = weight_table(M)
    bad = []
    try:
      other = weight_table_by_eigenspaces(M)
    except AssertionError as e:
      other = {}
      bad.append({"error": str(e)})
    for key in sorted(set(table) | set(other)) if other else ():
      if table.get(key) != other.get(key):
        bad.append({"weight": _wlabel(key), "table": table.get(key), "eigenspaces": other.get(key)})
    if isinstance(M, RealizedModule):
      for k in alg.degrees():
        total = sum(d for (kk, _), d in table.items() if kk == k)
        want = M.V1.dim * len(M.V2.basis[M.fiber_class(k)])
        if total != want:
          bad.append({"degree": list(k), "dim": total, "expected": want})
  report.checks.append(_result("weight_table", bad, t))

  with _Timer() as t:
    bad = [{"weight": _wlabel((k, mu)), "root": [str(x) for x in alpha], "translate": list(s)}
           for k, mu, alpha, s in weyl_check(M)]
  report.checks.append(_result("weyl_invariance", bad, t))

  if isinstance(M, RealizedModule):
    with _Timer() as t:
      bad = []
      hws = highest_weight_space(M)
      tops = M.V2.top_space_dims()
      pos = positive_keys(M)
      for k, vecs in hws.items():
        if not is_interior(M, k):
          continue
        want = M.V1.dim * tops[M.fiber_class(k)]
        if len(vecs) != want:
          bad.append({"degree": list(k), "dim": len(vecs), "expected": want})
        for v in vecs:
          for key in pos:
            if alg.in_window(tuple(a + b for a, b in zip(k, key[1]))) and M.act({key: ONE}, v):
              bad.append({"degree": list(k), "element": key_label(key)})
    report.checks.append(_result("highest_weight_space", bad, t))

  with _Timer() as t:
    res, bound = check_integrable(M, cfg.samples, cfg.seed)
    bad = [{"element": key_label(key), "vector": _vlabel(vk), "bound": bound}
           for key, vk, m in res if m is None]
    worst = max((m for _, _, m in res if m is not None), default=0)
  report.checks.append(_result("integrability", bad, t,
                               f"{len(res)} samples, max exponent {worst}, bound {bound}"))
  return report


def _wlabel(key):
  k, mu = key
  return {"degree": list(k), "weight": [str(x) for x in mu]}


# ---------------------------------------------------------------------------

def sweep_lietorus(dec, cfg: SweepConfig) -> SweepReport:
  report = SweepReport()
  with _Timer() as t:
    rows = check_lie_torus(dec, cfg.window)
  share = t.ms / max(len(rows), 1)
  for name, ok, detail in rows:
    report.checks.append(CheckResult(name, "pass" if ok else "fail",
                                     [] if ok else [detail], share, detail))
  with _Timer() as t:
    order = len(group_elements(dec.auts, dec.m))
  ok = order == dec.group.order
  detail = f"|<sigma>| = {order}, product of orders = {dec.group.order}"
  report.checks.append(CheckResult("group_order", "pass" if ok else "fail",
                                   [] if ok else [detail], t.ms, detail))
  return report


def sweep_centre(alg: ToroidalAlgebra) -> CheckResult:
  with _Timer() as t:
    centre = alg.centre_on_window()
    zero = (0,) * alg.n
    want = [{("K", zero, i): ONE} for i in range(alg.n)]
    ok = la.rank(_flatten(centre + want)) == alg.n == len(centre)
  return CheckResult("toroidal_centre", "pass" if ok else "fail",
                     [] if ok else [format_element(c) for c in centre], t.ms,
                     f"centre dim {len(centre)}")


def _flatten(elements):
  keys = sorted({k for e in elements for k in e})
  idx = {k: i for i, k in enumerate(keys)}
  return [{idx[k]: v for k, v in e.items()} for e in elements]
