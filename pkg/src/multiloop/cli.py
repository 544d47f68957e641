"""Command-line driver.

  multiloop algebra info|check -c CONFIG
  multiloop torus check -c CONFIG
  multiloop module build|weights|hws|check -c CONFIG
  multiloop iso check -c Q1 -c Q2
  multiloop intertwine -c CONFIG

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import grading as gr
from . import liealg, repmod
from .scalars import CycScalar, format_scalar, parse_scalar
from .toroidal import ToroidalAlgebra
from .verify import SweepConfig, sweep_centre, sweep_jacobi, sweep_lietorus, sweep_module


class ConfigError(ValueError):
  pass


@dataclass
class SessionConfig:
  conductor: int = 1
  algebra: dict = field(default_factory=dict)
  automorphisms: list = field(default_factory=list)
  m: list = field(default_factory=list)
  phi: tuple = (0, 0)
  window: int = 2
  module: dict | None = None
  evaluation: list | None = None
  path: str = ""

  def to_dict(self):
    out = {"conductor": self.conductor, "algebra": dict(self.algebra),
           "automorphisms": self.automorphisms, "m": list(self.m),
           "phi": [format_scalar(x) for x in self.phi], "window": self.window}
    if self.module is not None:
      out["module"] = self.module
    if self.evaluation is not None:
      out["evaluation"] = self.evaluation
    return out

  def scalar(self, text, where):
    try:
      return parse_scalar(text, self.conductor)
    except ValueError as e:
      raise ConfigError(f"{self.path}: field {where}: {e}") from None


_KNOWN = {"conductor", "algebra", "automorphisms", "m", "phi", "window", "module",
          "evaluation", "outputs"}


def load_config(path) -> SessionConfig:
  try:
    with open(path, encoding="utf-8") as fh:
      raw = json.load(fh)
  except json.JSONDecodeError as e:
    raise ConfigError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
  except OSError as e:
    raise ConfigError(f"{path}: {e.strerror}") from None
  if not isinstance(raw, dict):
    raise ConfigError(f"{path}: top level must be an object")
  unknown = sorted(set(raw) - _KNOWN)
  if unknown:
    raise ConfigError(f"{path}: unknown field(s) {', '.join(unknown)}")
  cfg = SessionConfig(path=str(path))
  cfg.conductor = _int(raw.get("conductor", 1), path, "conductor")
  alg = raw.get("algebra")
  if not isinstance(alg, dict) or "type" not in alg or "rank" not in alg:
    raise ConfigError(f"{path}: field algebra: needs type and rank")
  cfg.algebra = {"type": str(alg["type"]), "rank": _int(alg["rank"], path, "algebra.rank")}
  cfg.automorphisms = raw.get("automorphisms", [])
  if not isinstance(cfg.automorphisms, list):
    raise ConfigError(f"{path}: field automorphisms: must be a list")
  cfg.m = [_int(x, path, "m") for x in raw.get("m", [1] * max(1, len(cfg.automorphisms)))]
  phi = raw.get("phi", [0, 0])
  if not isinstance(phi, list) or len(phi) != 2:
    raise ConfigError(f"{path}: field phi: must be [a, b]")
  cfg.phi = tuple(cfg.scalar(x, "phi") for x in phi)
  cfg.window = _int(raw.get("window", 2), path, "window")
  cfg.module = raw.get("module")
  cfg.evaluation = raw.get("evaluation")
  return cfg


def _int(x, path, where):
  if isinstance(x, bool) or not isinstance(x, int):
    raise ConfigError(f"{path}: field {where}: expected an integer, got {x!r}")
  return x


def build_decomposition(cfg: SessionConfig):
  g = liealg.build_simple(cfg.algebra["type"], cfg.algebra["rank"])
  auts = []
  for t, spec in enumerate(cfg.automorphisms):
    parts = []
    if "diagram" in spec:
      perm = spec["diagram"]
      if not isinstance(perm, list) or sorted(perm) != list(range(1, g.rank + 1)):
        raise ConfigError(f"{cfg.path}: field automorphisms[{t}].diagram: "
                          f"expected a permutation of 1..{g.rank}")
      parts.append(gr.make_diagram_aut(g, [p - 1 for p in perm]))
    if "character" in spec:
      vals = [CycScalar.rational(1)] * g.rank
      for name, text in spec["character"].items():
        try:
          i = int(name.split("_")[1]) - 1
          assert 0 <= i < g.rank
        except (IndexError, ValueError, AssertionError):
          raise ConfigError(f"{cfg.path}: field automorphisms[{t}].character: bad key {name!r}") from None
        vals[i] = cfg.scalar(text, f"automorphisms[{t}].character.{name}")
      parts.append(gr.make_torus_aut(g, vals))
    auts.append(gr.compose(parts) if parts else gr.identity_aut(g))
  if not auts:
    auts = [gr.identity_aut(g)]
  if len(cfg.m) != len(auts):
    raise ConfigError(f"{cfg.path}: field m: need {len(auts)} entries")
  group = gr.validate_tuple(auts, cfg.m)
  return gr.eigenspace_decompose(g, auts, group)


def module_params(cfg: SessionConfig, dec):
  spec = cfg.module
  if not isinstance(spec, dict):
    raise ConfigError(f"{cfg.path}: field module: missing")
  try:
    psi = tuple(spec.get("psi", []))
    lam = tuple(spec["lambda"])
  except KeyError:
    raise ConfigError(f"{cfg.path}: field module.lambda: missing") from None
  c = cfg.scalar(spec.get("c", "0"), "module.c")
  beta = tuple(cfg.scalar(b, "module.beta") for b in spec.get("beta", ["0"] * dec.n))
  if len(beta) != dec.n:
    raise ConfigError(f"{cfg.path}: field module.beta: need {dec.n} entries")
  return psi, c, lam, beta


def build_module(cfg: SessionConfig, window=None, phi=None):
  dec = build_decomposition(cfg)
  psi, c, lam, beta = module_params(cfg, dec)
  spec = cfg.module
  points = spec.get("points", "auto")
  if points != "auto":
    points = [[cfg.scalar(x, "module.points") for x in p] for p in points]
  return repmod.build_realized(
      dec, psi, c, lam, beta, spec.get("multiplicities"), points,
      window or cfg.window, phi or cfg.phi, schur_index=spec.get("schur_index", 1))


def _emit(args, name, text):
  if args.out:
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
      fh.write(text if text.endswith("\n") else text + "\n")
  else:
    print(text)


def _finish(args, report, name):
  for line in report.lines():
    print(line)
  if args.out:
    _emit(args, name, report.to_json(args.timing))
  return 0 if report.passed else 1


def _sweep_cfg(args, cfg, target):
  return SweepConfig(target=target, window=args.window or cfg.window,
                     phi=args.phi or cfg.phi, samples=args.samples, seed=args.seed)


def cmd_algebra(args, cfg):
  dec = build_decomposition(cfg)
  g = dec.g
  if args.action == "info":
    t = dec.zero_type()
    info = {"type": f"{g.rs.letter}{g.rank}", "dim": g.dim, "positive_roots": len(g.rs.positive),
            "m": list(dec.m), "eigenspace_dims": list(dec.dims()),
            "fixed_type": f"{t[0]}{t[1]}" if t else None}
    _emit(args, "algebra_info.json", json.dumps(info, indent=2, sort_keys=True))
    return 0
  scfg = _sweep_cfg(args, cfg, "algebra")
  alg = ToroidalAlgebra(dec, scfg.window, scfg.phi)
  report = sweep_jacobi(alg, scfg)
  report.checks.append(sweep_centre(alg))
  return _finish(args, report, "algebra_check.json")


def cmd_torus(args, cfg):
  dec = build_decomposition(cfg)
  scfg = _sweep_cfg(args, cfg, "algebra")
  return _finish(args, sweep_lietorus(dec, scfg), "torus_check.json")


def cmd_module(args, cfg):
  M = build_module(cfg, args.window, args.phi)
  if args.action == "build":
    info = {"dim_V1": M.V1.dim, "dim_V2": M.V2.dim, "V2_dims": list(M.V2.dims()),
            "orbit": [list(o) for o in M.V2.orbit],
            "points": [[format_scalar(x) for x in p] for p in M.V2.points],
            "beta": [format_scalar(b) for b in M.beta]}
    _emit(args, "module.json", json.dumps(info, indent=2, sort_keys=True))
    return 0
  if args.action == "weights":
    rows = ["k\tweight\tdim"]
    for (k, mu), d in repmod.weight_table(M).items():
      rows.append(f"{','.join(map(str, k))}\t{','.join(map(str, mu))}\t{d}")
    _emit(args, "weights.tsv", "\n".join(rows))
    return 0
  if args.action == "hws":
    rows = ["k\tdim"]
    for k, vecs in repmod.highest_weight_space(M).items():
      rows.append(f"{','.join(map(str, k))}\t{len(vecs)}")
    _emit(args, "hws.tsv", "\n".join(rows))
    return 0
  scfg = _sweep_cfg(args, cfg, "module")
  return _finish(args, sweep_module(M, scfg), "module_check.json")


def cmd_iso(args, cfgs):
  if len(cfgs) != 2:
    raise ConfigError("iso check takes exactly two -c configs")
  a, b = cfgs
  dec = build_decomposition(a)
  dec_b = build_decomposition(b)
  if dec_b.m != dec.m or dec_b.g is not dec.g or dec_b.dims() != dec.dims():
    raise repmod.IncompatibleGradings("the two configs describe different gradings")
  q1, q2 = module_params(a, dec), module_params(b, dec)
  ok, verdict, cert = repmod.iso_check(dec, q1, q2)
  print(verdict)
  if args.out:
    _emit(args, "iso.json", json.dumps({"isomorphic": ok, "verdict": verdict, "certificate": cert},
                                       indent=2, sort_keys=True, ensure_ascii=False))
  return 0


def cmd_intertwine(args, cfg):
  dec = build_decomposition(cfg)
  ev = cfg.evaluation
  if not isinstance(ev, list) or len(ev) != 2:
    raise ConfigError(f"{cfg.path}: field evaluation: needs two entries")
  mods = []
  for t, e in enumerate(ev):
    pt = [cfg.scalar(x, f"evaluation[{t}].point") for x in e["point"]]
    mods.append((tuple(e["lambda"]), pt))
  (lam, a), (mu, b) = mods
  T = repmod.find_intertwiner(repmod.build_evaluation(dec, lam, a),
                              repmod.build_evaluation(dec, mu, b),
                              args.window)
  pred = repmod.evaluation_iso_predicate(dec, lam, a, mu, b)
  found = T is not None
  print(f"intertwiner {'found' if found else 'none'}; predicate {'isomorphic' if pred else 'not isomorphic'}")
  print(("PASS" if found == pred else "FAIL") + " intertwiner agrees with predicate")
  return 0 if found == pred else 1


def _phi(text):
  parts = text.split(",")
  if len(parts) != 2:
    raise argparse.ArgumentTypeError("expected a,b")
  return tuple(parse_scalar(p.strip()) for p in parts)


def make_parser():
  p = argparse.ArgumentParser(prog="multiloop", description=__doc__.split("\n")[0])
  common = argparse.ArgumentParser(add_help=False)
  common.add_argument("-c", "--config", action="append", required=True)
  common.add_argument("--window", type=int)
  common.add_argument("--phi", type=_phi)
  common.add_argument("--seed", type=int, default=0)
  common.add_argument("--samples", type=int, default=100)
  common.add_argument("--out")
  common.add_argument("--timing", action="store_true", help="record elapsed_ms in JSON reports")
  sub = p.add_subparsers(dest="command", required=True)
  s = sub.add_parser("algebra", parents=[common])
  s.add_argument("action", choices=["info", "check"])
  s = sub.add_parser("torus", parents=[common])
  s.add_argument("action", choices=["check"])
  s = sub.add_parser("module", parents=[common])
  s.add_argument("action", choices=["build", "weights", "hws", "check"])
  s = sub.add_parser("iso", parents=[common])
  s.add_argument("action", choices=["check"])
  sub.add_parser("intertwine", parents=[common])
  return p


_DOMAIN_ERRORS = (ConfigError, liealg.UnsupportedType, liealg.NonDominantWeight,
                  gr.NotADiagramSymmetry, gr.NotRootOfUnity, gr.NonCommuting,
                  gr.OrderMismatch, gr.GroupOrderViolation, repmod.ZeroLambda,
                  repmod.GradedIrreducibilityFailure, repmod.IncompatibleGradings,
                  repmod.NotInField, repmod.WeightNotInOrbit)


def run(argv=None) -> int:
  parser = make_parser()
  try:
    args = parser.parse_args(argv)
  except SystemExit as e:
    return 0 if e.code == 0 else 2
  try:
    cfgs = [load_config(path) for path in args.config]
    if args.command == "iso":
      return cmd_iso(args, cfgs)
    if len(cfgs) != 1:
      raise ConfigError(f"{args.command} takes one -c config")
    handler = {"algebra": cmd_algebra, "torus": cmd_torus, "module": cmd_module,
               "intertwine": cmd_intertwine}[args.command]
    return handler(args, cfgs[0])
  except _DOMAIN_ERRORS as e:
    print(f"{type(e).__name__}: {e}", file=sys.stderr)
    return 2


def main():
  sys.exit(run())
