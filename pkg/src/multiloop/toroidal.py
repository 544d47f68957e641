"""The twisted full toroidal algebra on a finite degree window.

Elements are sparse dicts keyed by
  ('x', k, b)  the b-th basis vector of g_kbar times t^k,
  ('K', r, i)  t^r K_i, r in Gamma, kept reduced modulo dA,
  ('d', r, i)  t^r d_i, r in Gamma.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from . import linalg as la
from .grading import EigenspaceDecomposition
from .scalars import CycScalar, parse_scalar, format_scalar


class DegreeNotInGamma(ValueError):
  pass


class WindowOverflow(ValueError):
  pass


class NullRoot(ValueError):
  pass


class NotInI(ValueError):
  pass


ONE = CycScalar.rational(1)
ZERO = CycScalar.rational(0)
_KIND_ORDER = {"x": 0, "K": 1, "d": 2}


def key_order(key):
  return (_KIND_ORDER[key[0]], key[1], key[2])


def _add(a, b):
  return tuple(x + y for x, y in zip(a, b))


def _acc(out, key, c):
  if not c:
    return
  v = out.get(key)
  v = c if v is None else v + c
  if v:
    out[key] = v
  else:
    out.pop(key, None)


class ToroidalAlgebra:
  """Bracket of LT + Z(m) + D(m) with cocycle phi = a*phi1 + b*phi2."""

  def __init__(self, dec: EigenspaceDecomposition, window: int, phi=(0, 0)):
    self.dec = dec
    self.n = dec.n
    self.m = dec.m
    self.window = int(window)
    self.phi = (CycScalar.coerce(phi[0]), CycScalar.coerce(phi[1]))
    self._cache = {}

  # degrees
  def in_gamma(self, r) -> bool:
    return all(x % mi == 0 for x, mi in zip(r, self.m))

  def in_window(self, k) -> bool:
    return all(-self.window <= x <= self.window for x in k)

  def degrees(self):
    rng = range(-self.window, self.window + 1)
    return list(itertools.product(rng, repeat=self.n))

  def gamma_degrees(self):
    return [r for r in self.degrees() if self.in_gamma(r)]

  def degree_of(self, key):
    return key[1]

  def _check_gamma(self, r):
    if not self.in_gamma(r):
      raise DegreeNotInGamma(f"degree {r} is not in Gamma = {self.m}")

  # element constructors
  def loop(self, k, b, c=ONE):
    return {("x", tuple(k), b): CycScalar.coerce(c)}

  def loop_vector(self, k, vec):
    """x (t^k) for x given in Chevalley coordinates; must lie in g_kbar."""
    k = tuple(k)
    kb = self.dec.group.reduce(k)
    out = {}
    for (cls, i), c in self.dec.coords(vec).items():
      if cls != kb:
        raise ValueError(f"vector is not in the eigenspace of degree {k}")
      out[("x", k, i)] = c
    return out

  def K(self, r, i, c=ONE):
    r = tuple(r)
    self._check_gamma(r)
    return self.reduce_central({(r, i): CycScalar.coerce(c)})

  def d(self, r, i, c=ONE):
    r = tuple(r)
    self._check_gamma(r)
    return {("d", r, i): CycScalar.coerce(c)}

  def reduce_central(self, raw):
    """Canonical form of sum c t^r K_i modulo the relations sum_i r_i t^r K_i = 0.

    raw maps (r, i) -> coefficient; the result is an element dict.
    """
    out = {}
    for (r, i), c in raw.items():
      r = tuple(r)
      self._check_gamma(r)
      if not c:
        continue
      p = next((j for j, x in enumerate(r) if x), None)
      if p is None or i != p:
        _acc(out, ("K", r, i), CycScalar.coerce(c))
        continue
      for j, x in enumerate(r):
        if j != p and x:
          _acc(out, ("K", r, j), CycScalar.coerce(c) * Fraction(-x, r[p]))
    return out

  def cocycle(self, r, s, i, j):
    """phi(t^r d_i, t^s d_j), reduced."""
    r, s = tuple(r), tuple(s)
    self._check_gamma(r)
    self._check_gamma(s)
    a, b = self.phi
    coeff = a * (-s[i] * r[j]) + b * (r[i] * s[j])
    if not coeff:
      return {}
    rs = _add(r, s)
    return self.reduce_central({(rs, p): coeff * rp for p, rp in enumerate(r) if rp})

  # bracket
  def basis_bracket(self, x, y):
    key = (x, y)
    out = self._cache.get(key)
    if out is None:
      deg = _add(x[1], y[1])
      if not self.in_window(deg):
        raise WindowOverflow(f"[{x}, {y}] has degree {deg} outside the window")
      out = self._raw_bracket(x, y)
      self._cache[key] = out
    return out

  def _raw_bracket(self, x, y):
    kx, ky = x[0], y[0]
    if kx == "K" and ky == "d" or kx == "x" and ky == "d":
      return {k: -v for k, v in self._raw_bracket(y, x).items()}
    if kx == "x" and ky == "x":
      return self._loop_loop(x, y)
    if kx == "d" and ky == "x":
      _, r, i = x
      _, k, b = y
      if not k[i]:
        return {}
      return {("x", _add(r, k), b): CycScalar.rational(k[i])}
    if kx == "d" and ky == "K":
      _, r, i = x
      _, s, j = y
      rs = _add(r, s)
      raw = {}
      if s[i]:
        raw[(rs, j)] = CycScalar.rational(s[i])
      if i == j:
        for p, rp in enumerate(r):
          if rp:
            raw[(rs, p)] = raw.get((rs, p), ZERO) + rp
      return self.reduce_central(raw)
    if kx == "d" and ky == "d":
      _, r, i = x
      _, s, j = y
      rs = _add(r, s)
      out = {}
      if s[i]:
        _acc(out, ("d", rs, j), CycScalar.rational(s[i]))
      if r[j]:
        _acc(out, ("d", rs, i), CycScalar.rational(-r[j]))
      for k, v in self.cocycle(r, s, i, j).items():
        _acc(out, k, v)
      return out
    return {}

  def _loop_loop(self, x, y):
    dec = self.dec
    _, k, b = x
    _, l, c = y
    kb, lb = dec.group.reduce(k), dec.group.reduce(l)
    kl = _add(k, l)
    out = {}
    for t, v in dec.bracket_basis(kb, b, lb, c).items():
      out[("x", kl, t)] = v
    if any(k) and dec.group.add(kb, lb) == dec.group.reduce((0,) * self.n):
      f = dec.form_basis(kb, b, lb, c)
      if f:
        raw = {(kl, i): f * ki for i, ki in enumerate(k) if ki}
        for key, v in self.reduce_central(raw).items():
          _acc(out, key, v)
    return out

  def bracket(self, u, v):
    out = {}
    for x, a in u.items():
      for y, b in v.items():
        for key, c in self.basis_bracket(x, y).items():
          _acc(out, key, c * a * b)
    return out

  def fits(self, *keys) -> bool:
    """All partial degree sums of the given basis keys stay in the window."""
    degs = [k[1] for k in keys]
    for size in range(1, len(degs) + 1):
      for combo in itertools.combinations(degs, size):
        tot = tuple(sum(c) for c in zip(*combo))
        if not self.in_window(tot):
          return False
    return True

  # bases and weights
  def window_basis(self):
    out = []
    dec = self.dec
    for k in self.degrees():
      for b in range(len(dec.basis[dec.group.reduce(k)])):
        out.append(("x", k, b))
    for r in self.gamma_degrees():
      p = next((j for j, x in enumerate(r) if x), None)
      for i in range(self.n):
        if i != p:
          out.append(("K", r, i))
    for r in self.gamma_degrees():
      for i in range(self.n):
        out.append(("d", r, i))
    return sorted(out, key=key_order)

  def key_weight(self, key):
    """(restricted h_0 weight, degree) of a basis key."""
    zero = tuple([Fraction(0)] * len(self.dec.cartan_basis))
    if key[0] == "x":
      kb = self.dec.group.reduce(key[1])
      return (self.dec.weights[kb][key[2]], key[1])
    return (zero, key[1])

  def root_space(self, alpha, k):
    """Basis keys of the root space of alpha + delta_k."""
    dec = self.dec
    k = tuple(k)
    if not self.in_window(k):
      raise WindowOverflow(f"degree {k} is outside the window")
    alpha = tuple(Fraction(x) for x in alpha)
    kb = dec.group.reduce(k)
    out = [("x", k, i) for i in dec.spaces.get((kb, alpha), [])]
    if not any(alpha) and self.in_gamma(k):
      p = next((j for j, x in enumerate(k) if x), None)
      out += [("K", k, i) for i in range(self.n) if i != p]
      out += [("d", k, i) for i in range(self.n)]
    return out

  def centre_on_window(self):
    """Basis of elements commuting with every window basis element, degree by degree."""
    basis = self.window_basis()
    by_deg = {}
    for key in basis:
      by_deg.setdefault(key[1], []).append(key)
    result = []
    for q, keys in sorted(by_deg.items()):
      idx = {k: t for t, k in enumerate(keys)}
      eqs = []
      for y in basis:
        if not self.in_window(_add(q, y[1])):
          continue
        rows = {}
        for t, key in enumerate(keys):
          for out_key, c in self.basis_bracket(key, y).items():
            rows.setdefault(out_key, {})[t] = c
        eqs.extend(rows.values())
      for vec in la.nullspace(eqs, len(keys)):
        result.append({keys[t]: CycScalar.coerce(c) for t, c in vec.items()})
    return result

  # roots, coroots, reflections
  def coroot(self, alpha, k):
    dec = self.dec
    alpha = tuple(Fraction(x) for x in alpha)
    if not any(alpha):
      raise NullRoot("null roots have no coroot")
    out = self.loop_vector((0,) * self.n, dec.coroot_vector(alpha))
    scale = Fraction(2) / dec.weight_ip(alpha, alpha)
    for i, ki in enumerate(k):
      if ki:
        _acc(out, ("K", (0,) * self.n, i), CycScalar.rational(scale * ki))
    return out

  def pair(self, lam, element):
    """lam(element) for a weight functional (h_0 values, K values, d values)."""
    return self._pair_h(lam, element) + self._pair_central(lam, element)

  def _pair_h(self, lam, element):
    dec = self.dec
    hvals = lam[0]
    zero = (0,) * self.n
    vec = {}
    for key, c in element.items():
      if key[0] == "x":
        la.vaxpy_into(vec, dec.basis[dec.group.reduce(zero)][key[2]], c)
    s = ZERO
    for t, hb in enumerate(dec.cartan_basis):
      coef = vec.get(min(hb))
      if coef:
        s = s + coef * hvals[t]
    return s

  def _pair_central(self, lam, element):
    _, kvals, dvals = lam
    s = ZERO
    for key, c in element.items():
      if key[0] == "K":
        s = s + c * kvals[key[2]]
      elif key[0] == "d":
        s = s + c * dvals[key[2]]
    return s

  def root_functional(self, alpha, k):
    zero = tuple([Fraction(0)] * self.n)
    return (tuple(Fraction(x) for x in alpha), zero, tuple(Fraction(x) for x in k))

  def weyl_reflect(self, alpha, k, lam):
    """r_gamma(lam) = lam - lam(gamma^vee) gamma for gamma = alpha + delta_k."""
    c = self.pair(lam, self.coroot(alpha, k)).to_fraction()
    g = self.root_functional(alpha, k)
    return tuple(tuple(Fraction(x) - c * y for x, y in zip(lp, gp)) for lp, gp in zip(lam, g))

  # I-subalgebra
  def D_element(self, u, r):
    r = tuple(r)
    self._check_gamma(r)
    out = {}
    for i, ui in enumerate(u):
      _acc(out, ("d", r, i), CycScalar.coerce(ui))
    return out

  def I_element(self, u, r):
    out = self.D_element(u, r)
    for k, v in self.D_element(u, (0,) * self.n).items():
      _acc(out, k, -v)
    return out

  def I_bracket_closed(self, u, r, v, s):
    """(v,r) I(u,r) - (u,s) I(v,s) + I(w, r+s), w = (u,s) v - (v,r) u."""
    vr = sum((CycScalar.coerce(a) * b for a, b in zip(v, r)), ZERO)
    us = sum((CycScalar.coerce(a) * b for a, b in zip(u, s)), ZERO)
    w = [us * CycScalar.coerce(b) - vr * CycScalar.coerce(a) for a, b in zip(u, v)]
    out = {}
    for part, c in ((self.I_element(u, r), vr), (self.I_element(v, s), -us),
                    (self.I_element(w, _add(r, s)), ONE)):
      for k, x in part.items():
        _acc(out, k, x * c)
    return out

  def pi_map(self, element):
    """Image in gl_n of an element of I: I(e_i, r) -> sum_j r_j E_ji."""
    n = self.n
    totals = [ZERO] * n
    mat = [[ZERO] * n for _ in range(n)]
    for key, c in element.items():
      if key[0] != "d":
        raise NotInI(f"{key} is not a derivation term")
      _, r, i = key
      totals[i] = totals[i] + c
      for j, rj in enumerate(r):
        if rj:
          mat[j][i] = mat[j][i] + c * rj
    if any(totals):
      raise NotInI("coefficients of each d_i must sum to zero")
    return mat


def gl_bracket(a, b):
  n = len(a)
  out = [[ZERO] * n for _ in range(n)]
  for i in range(n):
    for j in range(n):
      s = ZERO
      for k in range(n):
        s = s + a[i][k] * b[k][j] - b[i][k] * a[k][j]
      out[i][j] = s
  return out


# ---------------------------------------------------------------------------
# element literals: "2*x3@[1]", "-1/2*K_1@[2,0]", "d_2@[0,0]"

_TERM = re.compile(r"\s*(?:(?:\((?P<pcoef>[^()]*)\)|(?P<coef>[^*@()]+))\*)?"
                   r"(?P<sym>x\d+|[Kd]_\d+)@\[(?P<deg>[-\d,\s]*)\]\s*$")


def _split_terms(text):
  """Split on ' + ' outside parentheses."""
  out, depth, start = [], 0, 0
  for i, ch in enumerate(text):
    depth += (ch == "(") - (ch == ")")
    if depth == 0 and text.startswith(" + ", i):
      out.append(text[start:i])
      start = i + 3
  out.append(text[start:])
  return out


def parse_element(text: str, alg: ToroidalAlgebra, conductor: int = 1):
  out = {}
  if text.strip() == "0":
    return out
  for term in _split_terms(text.strip()):
    mt = _TERM.match(term)
    if not mt:
      raise ValueError(f"bad element term {term!r}")
    coef_text = mt["pcoef"] or mt["coef"]
    coef = parse_scalar(coef_text, conductor) if coef_text else ONE
    deg = tuple(int(x) for x in mt["deg"].split(",") if x.strip())
    if len(deg) != alg.n:
      raise ValueError(f"degree {deg} has the wrong length")
    sym = mt["sym"]
    if sym[0] == "x":
      part = alg.loop(deg, int(sym[1:]), coef)
    elif sym[0] == "K":
      part = alg.K(deg, int(sym[2:]) - 1, coef)
    else:
      part = alg.d(deg, int(sym[2:]) - 1, coef)
    for k, v in part.items():
      _acc(out, k, v)
  return out


def format_element(element, conductor=None) -> str:
  if not element:
    return "0"
  terms = []
  for key in sorted(element, key=key_order):
    kind, deg, idx = key
    sym = f"x{idx}" if kind == "x" else f"{kind}_{idx + 1}"
    coef = format_scalar(element[key], conductor)
    if any(ch in coef[1:] for ch in "+-*"):
      coef = f"({coef})"
    terms.append(f"{coef}*{sym}@[{','.join(map(str, deg))}]")
  return " + ".join(terms)
