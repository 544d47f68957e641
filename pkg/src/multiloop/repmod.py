"""Modules: gl_n modules, evaluation modules, graded sums and the realized modules.

A realized module is V1 (x) V2 with V2 graded by G; its degree-k piece is
V1 (x) V2_kbar (x) t^k.  Vectors are dicts keyed by (k, p, q) where p indexes
a basis of V1 and q the adapted basis of the fibre in degree k.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import linalg as la
from .grading import (EigenspaceDecomposition, act_on_weight, character_aut,
                      character_values, ghat_orbit, orbit_data, outer_part)
from .liealg import NonDominantWeight, build_irrep, build_simple, dominant
from .scalars import CycScalar, nth_root
from .toroidal import ToroidalAlgebra, WindowOverflow

ONE = CycScalar.rational(1)
ZERO = CycScalar.rational(0)


class ZeroLambda(ValueError):
  pass


class GradedIrreducibilityFailure(ValueError):
  pass


class WeightNotInOrbit(ValueError):
  pass


class NotInField(ValueError):
  pass


class IncompatibleGradings(ValueError):
  pass


def _power(a, k):
  out = ONE
  for x, e in zip(a, k):
    if e:
      out = out * x ** e
  return out


def _restrict(dec, labels):
  """Restricted h_0 weight of a g-weight given by Dynkin labels."""
  g = dec.g
  out = []
  for hb in dec.cartan_basis:
    s = ZERO
    for k, c in hb.items():
      s = s + c * labels[g.h_index(k)]
    out.append(s.to_fraction())
  return tuple(out)


def intertwiner_space(pairs, src_w, dst_w):
  """Basis of {T : T A = B T for all (A, B)} with T weight-blocked.

  A acts on the source (weights src_w), B on the target (weights dst_w);
  matrices are row-major and T is returned row-major (target x source).
  """
  unknowns = [(i, t) for i in range(len(dst_w)) for t in range(len(src_w))
              if dst_w[i] == src_w[t]]
  by_row = {}
  for u, (i, t) in enumerate(unknowns):
    by_row.setdefault(i, []).append((t, u))
  eqs = []
  for A, B in pairs:
    rows = {}
    for i, lst in by_row.items():
      for t, u in lst:
        for j, a in A.get(t, {}).items():
          r = rows.setdefault((i, j), {})
          r[u] = r.get(u, ZERO) + a
    Bt = la.transpose(B)
    for t, lst in by_row.items():
      for i0, b in Bt.get(t, {}).items():
        for j, u in lst:
          r = rows.setdefault((i0, j), {})
          r[u] = r.get(u, ZERO) - b
    eqs.extend({k: v for k, v in r.items() if v} for r in rows.values())
  sols = []
  for vec in la.nullspace([e for e in eqs if e], len(unknowns)):
    T = {}
    for u, c in vec.items():
      i, t = unknowns[u]
      T.setdefault(i, {})[t] = CycScalar.coerce(c)
    sols.append(T)
  return sols


def _combine(sols, coeffs):
  out = {}
  for T, c in zip(sols, coeffs):
    if c:
      out = la.mat_add(out, T, c)
  return out


def pick_invertible(sols, n, seed=0, tries=24):
  """An invertible combination of the given matrices, or None."""
  if not sols:
    return None
  rng = random.Random(seed)
  cands = [[1] * len(sols)]
  for _ in range(tries):
    cands.append([rng.randint(-5, 5) for _ in sols])
  for c in cands:
    T = _combine(sols, c)
    try:
      la.inverse(T, n)
    except ValueError:
      continue
    return T
  return None


def _generated_dim(mats, start, dim):
  basis = la.IncrementalBasis()
  todo = []
  for v in start:
    if basis.add(v)[0] is not None:
      todo.append(v)
  while todo and len(basis) < dim:
    v = todo.pop()
    for M in mats:
      w = la.mat_vec(M, v)
      if w and basis.add(w)[0] is not None:
        todo.append(w)
  return len(basis)


# ---------------------------------------------------------------------------
# gl_n

class GlnModule:
  """Irreducible gl_n module: sl_n acts with highest weight psi, the identity by c."""

  def __init__(self, psi, c, n):
    self.n = n
    self.psi = tuple(psi)
    self.c = CycScalar.coerce(c)
    if n == 1:
      if self.psi:
        raise NonDominantWeight("gl_1 takes the empty weight")
      self.dim = 1
      self.weights = [()]
      self.E = {(0, 0): {0: {0: self.c}} if self.c else {}}
      return
    if len(self.psi) != n - 1 or not dominant(self.psi):
      raise NonDominantWeight(f"{self.psi} is not a dominant sl_{n} weight")
    g = build_simple("A", n - 1)
    V = build_irrep(g, self.psi)
    self.irrep = V
    self.dim = V.dim
    self.weights = V.weight_of
    rs = g.rs
    E = {}
    for i in range(n - 1):
      E[(i, i + 1)] = V.mats[g.e(rs.simple_roots[i])]
      E[(i + 1, i)] = V.mats[g.f(rs.simple_roots[i])]
    for gap in range(2, n):
      for i in range(n - gap):
        j = i + gap
        E[(i, j)] = la.commutator(E[(i, i + 1)], E[(i + 1, j)])
        E[(j, i)] = la.commutator(E[(j, j - 1)], E[(j - 1, i)])
    for i in range(n):
      diag = {}
      for u, mu in enumerate(self.weights):
        s = self.c * Fraction(1, n)
        for k in range(1, n):
          coef = Fraction(n - k, n) if k >= i + 1 else Fraction(-k, n)
          s = s + coef * mu[k - 1]
        if s:
          diag[u] = {u: s}
      E[(i, i)] = diag
    self.E = E

  def matrix(self, i, j):
    return self.E[(i, j)]

  def __repr__(self):
    return f"GlnModule(n={self.n}, psi={self.psi}, c={self.c}, dim={self.dim})"


def build_gln_module(psi, c, n) -> GlnModule:
  return GlnModule(psi, c, n)


# ---------------------------------------------------------------------------
# g-modules and evaluation modules

class GModule:
  """A g-module given by one matrix per Chevalley basis vector."""

  def __init__(self, g, mats, dim, weight_of=None):
    self.g = g
    self.mats = mats
    self.dim = dim
    self.weight_of = weight_of

  def matrix_of(self, x):
    out = {}
    for b, c in x.items():
      out = la.mat_add(out, self.mats[b], c)
    return out


def twist_module(V, phi) -> GModule:
  """V^phi: x.v = phi(x) v on the same carrier."""
  mats = []
  for b in range(V.g.dim):
    mats.append(V.matrix_of(phi.images[b]))
  return GModule(V.g, mats, V.dim, getattr(V, "weight_of", None))


def in_unit_group(dec, a) -> bool:
  return all(CycScalar.coerce(x) ** mi == ONE for x, mi in zip(a, dec.m))


class EvaluationModule:
  """ev_a V(lam): (x t^k) v = a^k x.v for x in g_kbar."""

  def __init__(self, dec: EigenspaceDecomposition, lam, a):
    self.dec = dec
    self.lam = tuple(lam)
    self.a = tuple(CycScalar.coerce(x) for x in a)
    if len(self.a) != dec.n or any(not x for x in self.a):
      raise NotInField("evaluation points must be n nonzero field elements")
    self.irrep = build_irrep(dec.g, self.lam)
    self.dim = self.irrep.dim
    self.weights = [_restrict(dec, w) for w in self.irrep.weight_of]
    self._mats = {}

  def class_matrix(self, kbar, b):
    key = (kbar, b)
    if key not in self._mats:
      self._mats[key] = self.irrep.matrix_of(self.dec.basis[kbar][b])
    return self._mats[key]

  def matrix(self, k, b):
    kbar = self.dec.group.reduce(k)
    return la.mat_scale(self.class_matrix(kbar, b), _power(self.a, k))

  def generators(self, window):
    rng = range(-window, window + 1)
    for k in itertools.product(rng, repeat=self.dec.n):
      kbar = self.dec.group.reduce(k)
      for b in range(len(self.dec.basis[kbar])):
        yield k, b

  def is_irreducible(self, window=None):
    w = max(self.dec.m) if window is None else window
    mats = [self.matrix(k, b) for k, b in self.generators(w)]
    return _generated_dim(mats, [{0: ONE}], self.dim) == self.dim and \
        len(intertwiner_space([(M, M) for M in mats], self.weights, self.weights)) == 1


def build_evaluation(dec, lam, a) -> EvaluationModule:
  return EvaluationModule(dec, lam, a)


def evaluation_iso_predicate(dec, lam, a, mu, b) -> bool:
  """ev_a V(lam) ~ ev_b V(mu) iff a(m) = b(m) and mu = lam o gamma, gamma = outer(alpha_chi), chi = a/b."""
  a = [CycScalar.coerce(x) for x in a]
  b = [CycScalar.coerce(x) for x in b]
  if any(x ** mi != y ** mi for x, y, mi in zip(a, b, dec.m)):
    return False
  chi = [x / y for x, y in zip(a, b)]
  gamma = outer_part(dec.g, character_aut(dec, chi))
  return tuple(mu) == act_on_weight(tuple(lam), gamma)


def find_intertwiner(M: EvaluationModule, M2: EvaluationModule, window=None, seed=0):
  """Invertible T with T rho_a(x t^k) = rho'_b(x t^k) T on the window, or None."""
  if M.dim != M2.dim:
    return None
  w = max(M.dec.m) if window is None else window
  pairs = [(M.matrix(k, b), M2.matrix(k, b)) for k, b in M.generators(w)]
  sols = intertwiner_space(pairs, M.weights, M2.weights)
  return pick_invertible(sols, M.dim, seed)


# ---------------------------------------------------------------------------
# G-graded sums

def choose_points(dec, orbit, multiplicities, base):
  """Point b = xi^d a for each component, with ev_b V(lam_1) ~ ev_a V(lam_j)."""
  base = tuple(CycScalar.coerce(x) for x in base)
  lam = tuple(orbit[0])
  data = orbit_data(dec)
  points = []
  for target, p in zip(orbit, multiplicities):
    d = next((d for d, gamma in data if act_on_weight(lam, gamma) == tuple(target)), None)
    if d is None:
      raise WeightNotInOrbit(f"{target} is not in the orbit of {lam}")
    shift = character_values(dec, d)
    points.extend([tuple(s * x for s, x in zip(shift, base))] * p)
  return points


class GradedLTModule:
  """Sum of N copies of V(lam) at points a_nu, with its induced G-grading."""

  def __init__(self, dec: EigenspaceDecomposition, lam, points, schur_index=1, seed=0):
    self.dec = dec
    self.lam = tuple(lam)
    if not any(self.lam):
      raise ZeroLambda("λ ∈ P_g⁺ \\ {0} required")
    self.points = [tuple(CycScalar.coerce(x) for x in p) for p in points]
    for p in self.points:
      if len(p) != dec.n or not in_unit_group(dec, p):
        raise NotInField(f"point {p} is not in U(m)")
    self.schur_index = schur_index
    self.irrep = build_irrep(dec.g, self.lam)
    d = self.irrep.dim
    self.N = len(self.points)
    self.dim = self.N * d
    w1 = [_restrict(dec, w) for w in self.irrep.weight_of]
    self.ambient_weights = w1 * self.N
    self._rho = {}
    self.seed = seed
    self._grade()

  def rho(self, kbar, b):
    """Matrix of x t^kbar (x = b-th basis vector of g_kbar) on the ambient space."""
    key = (kbar, b)
    if key not in self._rho:
      R = self.irrep.matrix_of(self.dec.basis[kbar][b])
      d = self.irrep.dim
      out = {}
      for nu, p in enumerate(self.points):
        s = _power(p, kbar)
        for i, row in R.items():
          out[nu * d + i] = {nu * d + j: x * s for j, x in row.items()}
      self._rho[key] = out
    return self._rho[key]

  def generators(self):
    for kbar in self.dec.classes:
      for b in range(len(self.dec.basis[kbar])):
        yield kbar, b

  def _grade(self):
    dec = self.dec
    n = self.dim
    gens = list(self.generators())
    thetas = []
    for i in range(dec.n):
      pairs = []
      for kbar, b in gens:
        R = self.rho(kbar, b)
        pairs.append((R, la.mat_scale(R, dec.xi[i] ** kbar[i])))
      for T in thetas:
        pairs.append((T, T))
      sols = intertwiner_space(pairs, self.ambient_weights, self.ambient_weights)
      th = pick_invertible(sols, n, self.seed)
      if th is None:
        raise GradedIrreducibilityFailure("no invertible grading operator exists for these points")
      p = th
      for _ in range(dec.m[i] - 1):
        p = la.mat_mul(p, th)
      c = p.get(0, {}).get(0)
      if not c or not la.mat_equal(p, la.identity(n, c)):
        raise GradedIrreducibilityFailure("grading operator does not have finite order")
      r = nth_root(c, dec.m[i])
      if r is None:
        raise GradedIrreducibilityFailure("cannot normalize the grading operator in this field")
      thetas.append(la.mat_scale(th, ONE / r))
    best = None
    for js in dec.classes:
      cand = [la.mat_scale(T, x ** j) for T, x, j in zip(thetas, dec.xi, js)]
      dims = tuple(len(self._eigen(cand, k, dims_only=True)) for k in dec.classes)
      if best is None or dims < best[0]:
        best = (dims, cand)
    self.thetas = best[1]
    self.basis, self.weights, self.spaces = {}, {}, {}
    for k in dec.classes:
      self.basis[k], self.weights[k] = self._eigen(self.thetas, k)
    self.flat = [(k, q) for k in dec.classes for q in range(len(self.basis[k]))]
    cols = {}
    for t, (k, q) in enumerate(self.flat):
      for i, c in self.basis[k][q].items():
        cols.setdefault(i, {})[t] = c
    if len(self.flat) != n:
      raise GradedIrreducibilityFailure("grading operators are not diagonalizable")
    self._dual = la.inverse(cols, n)
    self._fiber = {}

  def _project(self, thetas, v, k):
    out = dict(v)
    for T, mi, xi, ki in zip(thetas, self.dec.m, self.dec.xi, k):
      acc, cur = {}, out
      inv = xi.inverse() ** ki
      c = CycScalar.rational(Fraction(1, mi))
      for _ in range(mi):
        la.vaxpy_into(acc, cur, c)
        c = c * inv
        cur = la.mat_vec(T, cur)
      out = acc
    return out

  def _eigen(self, thetas, k, dims_only=False):
    groups = {}
    for i, w in enumerate(self.ambient_weights):
      groups.setdefault(w, []).append(i)
    vecs, wts = [], []
    for mu in sorted(groups, reverse=True):
      rows, _ = la.echelon([self._project(thetas, {i: ONE}, k) for i in groups[mu]])
      vecs.extend(rows)
      wts.extend([mu] * len(rows))
    return vecs if dims_only else (vecs, wts)

  def dims(self):
    return tuple(len(self.basis[k]) for k in self.dec.classes)

  def coords(self, v):
    flat = la.mat_vec(self._dual, v)
    return {self.flat[t]: c for t, c in flat.items()}

  def fiber_action(self, lbar, b, kbar):
    """Column images {q: {q': c}} of x t^lbar from V2_kbar to V2_{kbar+lbar}."""
    key = (lbar, b, kbar)
    out = self._fiber.get(key)
    if out is None:
      R = self.rho(lbar, b)
      target = self.dec.group.add(kbar, lbar)
      out = {}
      for q, vec in enumerate(self.basis[kbar]):
        img = {}
        for (cls, q2), c in self.coords(la.mat_vec(R, vec)).items():
          if cls != target:
            raise AssertionError("action does not respect the grading")
          img[q2] = c
        out[q] = img
      self._fiber[key] = out
    return out

  def commutant_dim(self):
    pairs = [(self.rho(k, b), self.rho(k, b)) for k, b in self.generators()]
    pairs += [(T, T) for T in self.thetas]
    return len(intertwiner_space(pairs, self.ambient_weights, self.ambient_weights))

  def generation_ok(self):
    mats = [self.rho(k, b) for k, b in self.generators()]
    for k in self.dec.classes:
      for vec in self.basis[k]:
        if _generated_dim(mats, [vec], self.dim) != self.dim:
          return False
    return True

  def is_graded_irreducible(self):
    return self.commutant_dim() == self.schur_index ** 2 and self.generation_ok()

  def top_space_dims(self):
    """dim of the joint kernel of positive root vectors in each V2_kbar."""
    dec = self.dec
    pos = [(k, b) for k in dec.classes for b, w in enumerate(dec.weights[k])
           if any(w) and dec.is_positive(w)]
    out = {}
    for k in dec.classes:
      vecs = self.basis[k]
      eqs = {}
      for lb, b in pos:
        R = self.rho(lb, b)
        for q, v in enumerate(vecs):
          for i, c in la.mat_vec(R, v).items():
            eqs.setdefault((lb, b, i), {})[q] = c
      out[k] = len(la.nullspace(list(eqs.values()), len(vecs)))
    return out


def build_graded_sum(dec, lam, multiplicities=None, base=None, points=None,
                     schur_index=1, check=True) -> GradedLTModule:
  lam = tuple(lam)
  if len(lam) != dec.g.rank or not dominant(lam):
    raise NonDominantWeight(f"{lam} is not dominant integral")
  if not any(lam):
    raise ZeroLambda("λ ∈ P_g⁺ \\ {0} required")
  orbit = ghat_orbit(dec, lam)
  if points is None or points == "auto":
    if multiplicities is None:
      multiplicities = [schur_index] * len(orbit)
    if len(multiplicities) != len(orbit):
      raise ValueError(f"need {len(orbit)} multiplicities, one per orbit weight")
    base = base or [ONE] * dec.n
    points = choose_points(dec, orbit, multiplicities, base)
  M = GradedLTModule(dec, lam, points, schur_index)
  if check and not M.is_graded_irreducible():
    raise GradedIrreducibilityFailure("the graded sum has a proper graded submodule")
  M.orbit = orbit
  return M


# ---------------------------------------------------------------------------
# loop tensor modules

class LoopTensorModule:
  """Common action of loop and derivation terms on V1 (x) F_k (x) t^k."""

  def __init__(self, alg: ToroidalAlgebra, V1: GlnModule, beta):
    self.alg = alg
    self.dec = alg.dec
    self.V1 = V1
    self.beta = tuple(CycScalar.coerce(x) for x in beta)
    if len(self.beta) != self.dec.n:
      raise IncompatibleGradings("beta must have one entry per variable")
    if V1.n != self.dec.n:
      raise IncompatibleGradings("gl_n module must have n equal to the number of variables")

  # to be supplied: fiber_dim(k), fiber_weights(k), fiber_map(l, b, k), allows(key)
  def piece_basis(self, k):
    k = tuple(k)
    return [(k, p, q) for p in range(self.V1.dim) for q in range(self.fiber_dim(k))]

  def piece_weights(self, k):
    fw = self.fiber_weights(k)
    return [fw[q] for p in range(self.V1.dim) for q in range(len(fw))]

  def act_basis(self, key, vkey):
    kind = key[0]
    k, p, q = vkey
    if kind == "K":
      return {}
    if kind == "x":
      _, l, b = key
      out = {}
      kl = tuple(x + y for x, y in zip(k, l))
      for q2, c in self.fiber_map(l, b, k).get(q, {}).items():
        out[(kl, p, q2)] = c
      return out
    _, r, i = key
    kr = tuple(x + y for x, y in zip(k, r))
    out = {}
    s = self.beta[i] + k[i]
    if s:
      out[(kr, p, q)] = s
    for j, rj in enumerate(r):
      if rj:
        col = la.mat_vec(self.V1.E[(j, i)], {p: ONE})
        for p2, c in col.items():
          v = out.get((kr, p2, q), ZERO) + c * rj
          if v:
            out[(kr, p2, q)] = v
          else:
            out.pop((kr, p2, q), None)
    return out

  def act(self, element, vec):
    out = {}
    for key, a in element.items():
      for vk, c in vec.items():
        la.vaxpy_into(out, self.act_basis(key, vk), a * c)
    return out

  def check_axiom(self, x, y, vkey):
    """rho([x,y])v - rho(x)rho(y)v + rho(y)rho(x)v for basis keys x, y."""
    v = {vkey: ONE}
    lhs = self.act(self.alg.basis_bracket(x, y), v)
    X, Y = {x: ONE}, {y: ONE}
    rhs = la.vadd(self.act(X, self.act(Y, v)), self.act(Y, self.act(X, v)), -1)
    return la.vadd(lhs, rhs, -1)


class RealizedModule(LoopTensorModule):
  """V(psi, c, lam, beta) on the window of alg."""

  def __init__(self, alg, V1: GlnModule, V2: GradedLTModule, beta, shift=None):
    super().__init__(alg, V1, beta)
    self.V2 = V2
    self.shift = tuple(shift) if shift else (0,) * self.dec.n
    self.params = (V1.psi, V1.c, V2.lam, self.beta)

  def fiber_class(self, k):
    return self.dec.group.reduce(tuple(x + s for x, s in zip(k, self.shift)))

  def fiber_dim(self, k):
    return len(self.V2.basis[self.fiber_class(k)])

  def fiber_weights(self, k):
    return self.V2.weights[self.fiber_class(k)]

  def fiber_map(self, l, b, k):
    return self.V2.fiber_action(self.dec.group.reduce(l), b, self.fiber_class(k))

  def allows(self, key):
    return True

  def candidate_weights(self):
    return sorted({_restrict(self.dec, w) for w in self.V2.irrep.weight_of})


class LBetaModule(LoopTensorModule):
  """L(beta, V1) over L(g0, sigma) + D(m): V1 (x) E (x) A with E an evaluation part."""

  def __init__(self, alg, V1: GlnModule, beta, lam=None, points=None):
    super().__init__(alg, V1, beta)
    dec = self.dec
    self.zero_keys = {(k, b) for k in dec.classes for b, w in enumerate(dec.weights[k]) if not any(w)}
    if lam is None:
      self.E = None
      self.edim = 1
      self.eweights = [tuple([Fraction(0)] * len(dec.cartan_basis))]
    else:
      self.E = build_irrep(dec.g, lam)
      self.edim = self.E.dim
      self.eweights = [_restrict(dec, w) for w in self.E.weight_of]
      self.points = [tuple(CycScalar.coerce(x) for x in p) for p in (points or [[ONE] * dec.n])]
      for p in self.points:
        if not in_unit_group(dec, p):
          raise NotInField(f"point {p} is not in U(m)")
    self._cache = {}

  def allows(self, key):
    if key[0] != "x":
      return True
    return (self.dec.group.reduce(key[1]), key[2]) in self.zero_keys

  def candidate_weights(self):
    return sorted(set(self.eweights))

  def fiber_dim(self, k):
    return self.edim * (len(self.points) if self.E else 1)

  def fiber_weights(self, k):
    return self.eweights * (len(self.points) if self.E else 1)

  def fiber_map(self, l, b, k):
    lbar = self.dec.group.reduce(l)
    if (lbar, b) not in self.zero_keys:
      raise ValueError("only zero-weight loop terms act on L(beta, V1)")
    if self.E is None:
      return {}
    key = (lbar, b)
    if key not in self._cache:
      R = self.E.matrix_of(self.dec.basis[lbar][b])
      d = self.edim
      out = {}
      for nu, p in enumerate(self.points):
        s = _power(p, lbar)
        for j in range(d):
          img = {nu * d + i: x * s for i, x in la.transpose(R).get(j, {}).items()}
          out[nu * d + j] = img
      self._cache[key] = out
    return self._cache[key]


def build_L_beta(alg, V1, beta, lam=None, points=None) -> LBetaModule:
  return LBetaModule(alg, V1, beta, lam, points)


def build_realized(dec, psi, c, lam, beta, multiplicities=None, points=None,
                   window=2, phi=(0, 0), base=None, schur_index=1, shift=None):
  alg = ToroidalAlgebra(dec, window, phi)
  V1 = build_gln_module(psi, c, dec.n)
  V2 = build_graded_sum(dec, lam, multiplicities, base, points, schur_index)
  return RealizedModule(alg, V1, V2, beta, shift)


# ---------------------------------------------------------------------------
# weight data, highest weight spaces, integrability

def weight_table(M: LoopTensorModule):
  """{(k, mu): dim} over the window degrees."""
  out = {}
  for k in M.alg.degrees():
    for w in M.piece_weights(k):
      out[(k, w)] = out.get((k, w), 0) + 1
  return dict(sorted(out.items()))


def weight_table_by_eigenspaces(M: LoopTensorModule):
  """Same table from joint eigenspaces of h_0 and d acting on each piece."""
  dec = M.dec
  z = dec.zero_class()
  h_idx = dec.spaces.get((z, tuple([Fraction(0)] * len(dec.cartan_basis))), [])
  zero = (0,) * dec.n
  cand = M.candidate_weights()
  out = {}
  for k in M.alg.degrees():
    keys = M.piece_basis(k)
    idx = {key: t for t, key in enumerate(keys)}
    mats = []
    for b in h_idx:
      cols = {}
      for t, key in enumerate(keys):
        for k2, c in M.act_basis(("x", zero, b), key).items():
          cols.setdefault(idx[k2], {})[t] = c
      mats.append(cols)
    for i in range(dec.n):
      for t, key in enumerate(keys):
        img = M.act_basis(("d", zero, i), key)
        if img != ({key: M.beta[i] + k[i]} if M.beta[i] + k[i] else {}):
          raise AssertionError("d does not act by the expected scalar")
    for mu in cand:
      eqs = []
      for s, H in enumerate(mats):
        shifted = la.mat_add(H, la.identity(len(keys), CycScalar.rational(mu[s])), -1)
        eqs.extend(shifted.values())
      dim = len(la.nullspace(eqs, len(keys)))
      if dim:
        out[(k, mu)] = dim
  return dict(sorted(out.items()))


def real_roots(M: LoopTensorModule):
  """(alpha, s) for nonzero restricted weights alpha with g_sbar(alpha) != 0, s in the window."""
  dec = M.dec
  out = []
  for s in M.alg.degrees():
    sb = dec.group.reduce(s)
    for (k, w) in dec.spaces:
      if k == sb and any(w):
        out.append((w, s))
  return out


def weyl_check(M: LoopTensorModule):
  """Witnesses (k, mu, alpha, s) where the table is not reflection-invariant."""
  table = weight_table(M)
  dec = M.dec
  bad = []
  for (k, mu), dim in table.items():
    for alpha, s in real_roots(M):
      lam = (mu, tuple([Fraction(0)] * dec.n), tuple(Fraction(x) for x in k))
      h, _, dv = M.alg.weyl_reflect(alpha, s, lam)
      if any(x.denominator != 1 for x in dv):
        bad.append((k, mu, alpha, s))
        continue
      k2 = tuple(int(x) for x in dv)
      if not M.alg.in_window(k2):
        continue
      if table.get((k2, h), 0) != dim:
        bad.append((k, mu, alpha, s))
  return bad


def positive_keys(M: LoopTensorModule):
  dec = M.dec
  out = []
  for l in M.alg.degrees():
    lb = dec.group.reduce(l)
    for b, w in enumerate(dec.weights[lb]):
      if any(w) and dec.is_positive(w) and M.allows(("x", l, b)):
        out.append(("x", l, b))
  return out


def is_interior(M, k):
  dec = M.dec
  reach = set()
  for l in M.alg.degrees():
    if M.alg.in_window(tuple(x + y for x, y in zip(k, l))):
      reach.add(dec.group.reduce(l))
  return len(reach) == len(dec.classes)


def highest_weight_space(M: LoopTensorModule):
  """{k: basis of V_+ in degree k} using positive generators with k+l in the window."""
  out = {}
  pos = positive_keys(M)
  for k in M.alg.degrees():
    keys = M.piece_basis(k)
    eqs = {}
    for key in pos:
      if not M.alg.in_window(tuple(x + y for x, y in zip(k, key[1]))):
        continue
      for t, vk in enumerate(keys):
        for k2, c in M.act_basis(key, vk).items():
          eqs.setdefault((key, k2), {})[t] = c
    sols = la.nullspace(list(eqs.values()), len(keys))
    out[k] = [{keys[t]: CycScalar.coerce(c) for t, c in v.items()} for v in sols]
  return out


def nilpotency_exponent(M, key, vec, bound):
  """Least m <= bound with key^m vec = 0, or None."""
  cur = dict(vec)
  for m in range(1, bound + 1):
    cur = M.act({key: ONE}, cur)
    if not cur:
      return m
  return None


def check_integrable(M: LoopTensorModule, samples=100, seed=0):
  """[(key, vkey, exponent)] for seeded samples of real-root generators and basis vectors."""
  rng = random.Random(seed)
  dec = M.dec
  gens = [("x", l, b) for l in M.alg.degrees()
          for b, w in enumerate(dec.weights[dec.group.reduce(l)]) if any(w) and M.allows(("x", l, b))]
  vecs = [vk for k in M.alg.degrees() for vk in M.piece_basis(k)]
  fibre = M.V2.dim if isinstance(M, RealizedModule) else M.fiber_dim((0,) * dec.n)
  bound = M.V1.dim * fibre + 1
  out = []
  for _ in range(samples):
    key = gens[rng.randrange(len(gens))]
    vk = vecs[rng.randrange(len(vecs))]
    out.append((key, vk, nilpotency_exponent(M, key, {vk: ONE}, bound)))
  return out, bound


# ---------------------------------------------------------------------------
# isomorphism classes

def iso_check(dec, q1, q2):
  """(verdict, certificate) for quadruples (psi, c, lam, beta)."""
  psi1, c1, lam1, beta1 = q1
  psi2, c2, lam2, beta2 = q2
  n = dec.n
  if len(beta1) != n or len(beta2) != n or len(tuple(psi1)) != len(tuple(psi2)) \
      or len(lam1) != dec.g.rank or len(lam2) != dec.g.rank:
    raise IncompatibleGradings("quadruples do not belong to the same grading")
  c1, c2 = CycScalar.coerce(c1), CycScalar.coerce(c2)
  clause1 = tuple(psi1) == tuple(psi2) and c1 == c2
  orbit = ghat_orbit(dec, lam1)
  clause2 = tuple(lam2) in orbit
  diff = [CycScalar.coerce(a) - CycScalar.coerce(b) for a, b in zip(beta1, beta2)]
  clause3 = all(d.is_rational() and d.to_fraction().denominator == 1 for d in diff)
  cert = {"clause1": clause1, "clause2": clause2, "clause3": clause3,
          "orbit": [list(o) for o in orbit], "shift": [str(d) for d in diff]}
  if not clause1:
    verdict = "not isomorphic (clause 1: ψ or c differ)"
  elif not clause2:
    verdict = "not isomorphic (clause 2: λ′ outside the orbit of λ)"
  elif not clause3:
    verdict = "not isomorphic (clause 3: β − β′ not integral)"
  elif any(diff):
    verdict = "isomorphic (clause 3: integral shift)"
  elif tuple(lam1) != tuple(lam2):
    verdict = "isomorphic (clause 2: same orbit)"
  else:
    verdict = "isomorphic (identical parameters)"
  return clause1 and clause2 and clause3, verdict, cert


def window_intertwiner(M: LoopTensorModule, M2: LoopTensorModule, seed=0):
  """Search for a degree-aligned invertible intertwiner between two loop tensor modules.

  Degree k of M goes to degree k + beta - beta' of M2, so d-eigenvalues agree.
  Returns True when some solution is invertible on every aligned piece in the window.
  """
  diff = [CycScalar.coerce(a) - CycScalar.coerce(b) for a, b in zip(M.beta, M2.beta)]
  if not all(d.is_rational() and d.to_fraction().denominator == 1 for d in diff):
    return False
  off = tuple(int(d.to_fraction()) for d in diff)
  alg = M.alg
  degs = [k for k in alg.degrees() if alg.in_window(tuple(x + o for x, o in zip(k, off)))]
  src, dst = [], []
  for k in degs:
    k2 = tuple(x + o for x, o in zip(k, off))
    a, b = M.piece_basis(k), M2.piece_basis(k2)
    if len(a) != len(b):
      return False
    src.extend(a)
    dst.extend(b)
  sidx = {v: t for t, v in enumerate(src)}
  didx = {v: t for t, v in enumerate(dst)}
  sw = []
  for k in degs:
    sw.extend((k, w) for w in M.piece_weights(k))
  dw = []
  for k in degs:
    k2 = tuple(x + o for x, o in zip(k, off))
    dw.extend((k, w) for w in M2.piece_weights(k2))
  pairs = []
  keys = [key for key in alg.window_basis() if key[0] != "K" and M.allows(key) and M2.allows(key)]
  for key in keys:
    A, B = {}, {}
    for t, vk in enumerate(src):
      for k2, c in M.act_basis(key, vk).items():
        if k2 in sidx:
          A.setdefault(sidx[k2], {})[t] = c
    for t, vk in enumerate(dst):
      for k2, c in M2.act_basis(key, vk).items():
        if k2 in didx:
          B.setdefault(didx[k2], {})[t] = c
    pairs.append((A, B))
  sols = intertwiner_space(pairs, sw, dw)
  return pick_invertible(sols, len(src), seed) is not None


def realized_iso_oracle(dec, q1, q2, window=None, phi=(0, 0)):
  """Independent isomorphism test: window intertwiner search over grading shifts of V2.

  The window defaults to max m_i so that some t^r d_i with r != 0 is present.
  """
  window = max(dec.m) if window is None else window
  psi1, c1, lam1, beta1 = q1
  psi2, c2, lam2, beta2 = q2
  alg = ToroidalAlgebra(dec, window, phi)
  V1a = build_gln_module(psi1, c1, dec.n)
  V1b = build_gln_module(psi2, c2, dec.n)
  Ma = RealizedModule(alg, V1a, build_graded_sum(dec, lam1), beta1)
  V2b = build_graded_sum(dec, lam2)
  for s in dec.classes:
    Mb = RealizedModule(alg, V1b, V2b, beta2, shift=s)
    if V1a.dim == V1b.dim and window_intertwiner(Ma, Mb):
      return True
  return False
