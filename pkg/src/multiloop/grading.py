"""Commuting finite-order automorphisms and the gradings they induce."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import prod

from . import linalg as la
from .liealg import (ChevalleyAlgebra, NonDominantWeight, classify_cartan,
                     dominant)
from .scalars import (CycScalar, is_root_of_unity, multiplicative_order,
                      root_of_unity)


class NotADiagramSymmetry(ValueError):
  pass


class NotRootOfUnity(ValueError):
  pass


class NonCommuting(ValueError):
  pass


class OrderMismatch(ValueError):
  pass


class GroupOrderViolation(ValueError):
  pass


class NotAHomomorphism(ValueError):
  pass


class CartanNotPreserved(ValueError):
  pass


ONE = CycScalar.rational(1)
MAX_ORDER = 5040


class FiniteOrderAut:
  """Automorphism of g as column images of the Chevalley basis."""

  def __init__(self, g: ChevalleyAlgebra, images, perm=None, chi=None, name=""):
    self.g = g
    self.images = [dict(v) for v in images]
    self.perm = perm
    self.chi = chi
    self.name = name
    self._order = None

  def apply(self, v):
    out = {}
    for b, c in v.items():
      la.vaxpy_into(out, self.images[b], c)
    return out

  def then(self, other: "FiniteOrderAut") -> "FiniteOrderAut":
    """Apply self first, then other."""
    imgs = [other.apply(v) for v in self.images]
    return FiniteOrderAut(self.g, imgs, name=f"{self.name}*{other.name}".strip("*"))

  def power(self, k: int) -> "FiniteOrderAut":
    out = identity_aut(self.g)
    for _ in range(k % self.order if self._order else k):
      out = out.then(self)
    return out

  def is_identity(self) -> bool:
    return all(v == {b: ONE} for b, v in enumerate(self.images))

  def key(self):
    return tuple(tuple(sorted(v.items())) for v in self.images)

  def __eq__(self, other):
    return isinstance(other, FiniteOrderAut) and self.images == other.images

  __hash__ = None

  @property
  def order(self) -> int:
    if self._order is None:
      cur = self
      k = 1
      while not cur.is_identity():
        cur = cur.then(self)
        k += 1
        if k > MAX_ORDER:
          raise OrderMismatch("automorphism does not have small finite order")
      self._order = k
    return self._order

  def preserves_cartan(self) -> bool:
    g = self.g
    return all(all(g.basis_kind(k) == "h" for k in self.images[g.h(i)])
               for i in range(g.rank))

  def automorphism_defects(self):
    """Basis pairs where sigma[x,y] != [sigma x, sigma y]."""
    g = self.g
    bad = []
    for x in range(g.dim):
      for y in range(x + 1, g.dim):
        lhs = self.apply(g.basis_bracket(x, y))
        rhs = g.bracket(self.images[x], self.images[y])
        if la.vadd(lhs, rhs, -1):
          bad.append((x, y))
    return bad

  def form_defects(self):
    g = self.g
    bad = []
    for x in range(g.dim):
      for y in range(x, g.dim):
        lhs = g.form.get((x, y), CycScalar.rational(0))
        if g.form_value(self.images[x], self.images[y]) != lhs:
          bad.append((x, y))
    return bad

  def __repr__(self):
    return f"FiniteOrderAut({self.name or 'matrix'}, order={self.order})"


def identity_aut(g) -> FiniteOrderAut:
  return FiniteOrderAut(g, [{b: ONE} for b in range(g.dim)], name="id")


def _extend_from_simple(g, e_img, f_img, h_img):
  """Images of all basis vectors from those of the generators."""
  rs = g.rs
  e_all = {rs.simple_roots[i]: e_img[i] for i in range(g.rank)}
  f_all = {rs.simple_roots[i]: f_img[i] for i in range(g.rank)}
  for xi in rs.positive[g.rank:]:
    a, b, den, sign = g.recipe[xi]
    e_all[xi] = la.vscale(g.bracket(e_all[a], e_all[b]), Fraction(1, den))
    f_all[xi] = la.vscale(g.bracket(f_all[a], f_all[b]), Fraction(sign, den))
  return [e_all[r] for r in rs.positive] + list(h_img) + [f_all[r] for r in rs.positive]


def make_diagram_aut(g: ChevalleyAlgebra, perm) -> FiniteOrderAut:
  """Diagram automorphism for a 0-based permutation of the simple roots."""
  perm = tuple(perm)
  l = g.rank
  if sorted(perm) != list(range(l)):
    raise NotADiagramSymmetry(f"{perm} is not a permutation of {l} nodes")
  a = g.rs.cartan
  if any(a[perm[i]][perm[j]] != a[i][j] for i in range(l) for j in range(l)):
    raise NotADiagramSymmetry(f"{[p + 1 for p in perm]} does not preserve the Dynkin diagram")
  simple = g.rs.simple_roots
  e_img = [{g.e(simple[perm[i]]): ONE} for i in range(l)]
  f_img = [{g.f(simple[perm[i]]): ONE} for i in range(l)]
  h_img = [{g.h(perm[i]): ONE} for i in range(l)]
  imgs = _extend_from_simple(g, e_img, f_img, h_img)
  return FiniteOrderAut(g, imgs, perm=perm, name="diagram" + "".join(str(p + 1) for p in perm))


def root_character(values, root):
  out = ONE
  for v, n in zip(values, root):
    if n:
      out = out * v ** n
  return out


def make_torus_aut(g: ChevalleyAlgebra, values) -> FiniteOrderAut:
  """Diagonal automorphism scaling g_alpha by chi(alpha)."""
  values = [CycScalar.coerce(v) for v in values]
  if len(values) != g.rank:
    raise ValueError("one character value per simple root is required")
  for v in values:
    if not is_root_of_unity(v):
      raise NotRootOfUnity(f"{v} is not a root of unity")
  imgs = []
  for b in range(g.dim):
    kind = g.basis_kind(b)
    if kind == "h":
      imgs.append({b: ONE})
    else:
      c = root_character(values, g.root_of[b])
      imgs.append({b: c})
  return FiniteOrderAut(g, imgs, chi=tuple(values), name="torus")


def compose(auts) -> FiniteOrderAut:
  """Product applying the first listed automorphism first."""
  out = None
  for a in auts:
    out = a if out is None else out.then(a)
  return out


class GradingGroup:
  """G = Z^n / (m_1 Z + ... + m_n Z)."""

  def __init__(self, m):
    self.m = tuple(int(x) for x in m)
    if any(x < 1 for x in self.m):
      raise ValueError("orders must be positive")
    self.n = len(self.m)

  def reduce(self, k):
    return tuple(int(x) % mi for x, mi in zip(k, self.m))

  def elements(self):
    return list(itertools.product(*(range(mi) for mi in self.m)))

  def add(self, a, b):
    return self.reduce(tuple(x + y for x, y in zip(a, b)))

  def neg(self, a):
    return self.reduce(tuple(-x for x in a))

  def in_gamma(self, k) -> bool:
    return all(int(x) % mi == 0 for x, mi in zip(k, self.m))

  @property
  def order(self) -> int:
    return prod(self.m)

  def __repr__(self):
    return f"GradingGroup{self.m}"


def validate_tuple(auts, m) -> GradingGroup:
  auts = list(auts)
  m = tuple(m)
  if len(auts) != len(m):
    raise OrderMismatch("need one order per automorphism")
  for i in range(len(auts)):
    for j in range(i + 1, len(auts)):
      if auts[i].then(auts[j]) != auts[j].then(auts[i]):
        raise NonCommuting(f"automorphisms {i + 1} and {j + 1} do not commute")
  for i, (a, mi) in enumerate(zip(auts, m)):
    if a.order != mi:
      raise OrderMismatch(f"automorphism {i + 1} has order {a.order}, expected {mi}")
  group = group_elements(auts, m)
  if len(group) != prod(m):
    raise GroupOrderViolation(
        f"generated group has order {len(group)}, expected {prod(m)}")
  return GradingGroup(m)


def group_elements(auts, m):
  """Distinct elements sigma_1^j1 ... sigma_n^jn, keyed by matrix."""
  seen = {}
  for js in itertools.product(*(range(mi) for mi in m)):
    cur = identity_aut(auts[0].g) if auts else None
    for a, j in zip(auts, js):
      for _ in range(j):
        cur = cur.then(a)
    if cur is not None:
      seen.setdefault(cur.key(), js)
  return seen


def _frac_tuple(v):
  return tuple(x.to_fraction() for x in v)


class EigenspaceDecomposition:
  """Joint eigenspaces g_kbar of the tuple, in a basis adapted to h_0-weights."""

  def __init__(self, g: ChevalleyAlgebra, auts, group: GradingGroup):
    self.g = g
    self.auts = list(auts)
    self.group = group
    self.m = group.m
    self.n = group.n
    self.xi = [root_of_unity(mi, 1) for mi in self.m]
    self.h_preserving = all(a.preserves_cartan() and _root_like(a) for a in self.auts)
    self._build()
    self._struct = {}
    self._type = None

  def project(self, v, kbar):
    out = dict(v)
    for sig, mi, xi, ki in zip(self.auts, self.m, self.xi, kbar):
      acc = {}
      cur = out
      inv = xi.inverse() ** ki
      c = CycScalar.rational(Fraction(1, mi))
      for _ in range(mi):
        la.vaxpy_into(acc, cur, c)
        c = c * inv
        cur = sig.apply(cur)
      out = acc
    return out

  def _build(self):
    g = self.g
    G = self.group.elements()
    self.classes = G
    if self.h_preserving:
      hs = [self.project({g.h(i): ONE}, (0,) * self.n) for i in range(g.rank)]
      rows, _ = la.echelon(hs)
      self.cartan_basis = rows
      # alpha(h_i) for every Chevalley basis vector
      self.basis_weight = []
      for b in range(g.dim):
        r = g.root_of[b]
        vals = [g.rs.pairing(r, i) for i in range(g.rank)]
        w = tuple(sum((c * vals[g.h_index(k)] for k, c in hb.items()), CycScalar.rational(0))
                  for hb in rows)
        self.basis_weight.append(_frac_tuple(w))
    else:
      self.cartan_basis = []
      self.basis_weight = [() for _ in range(g.dim)]
    groups = {}
    for b in range(g.dim):
      groups.setdefault(self.basis_weight[b], []).append(b)
    self.basis = {}
    self.weights = {}
    self.spaces = {}
    for k in G:
      vecs, wts = [], []
      for mu in sorted(groups, reverse=True):
        rows, _ = la.echelon([self.project({b: ONE}, k) for b in groups[mu]])
        if rows:
          self.spaces[(k, mu)] = list(range(len(vecs), len(vecs) + len(rows)))
          vecs.extend(rows)
          wts.extend([mu] * len(rows))
      self.basis[k] = vecs
      self.weights[k] = wts
    self.flat = [(k, i) for k in G for i in range(len(self.basis[k]))]
    self.flat_index = {p: t for t, p in enumerate(self.flat)}
    cols = {}
    for t, (k, i) in enumerate(self.flat):
      for b, c in self.basis[k][i].items():
        cols.setdefault(b, {})[t] = c
    if len(self.flat) != g.dim:
      raise AssertionError("eigenspaces do not span g")
    self._dual = la.inverse(cols, g.dim)
    self._gram = None

  # coordinates
  def dims(self):
    return tuple(len(self.basis[k]) for k in self.classes)

  def coords(self, v):
    """{(kbar, i): coeff} for a vector in Chevalley coordinates."""
    flat = la.mat_vec(self._dual, v)
    return {self.flat[t]: c for t, c in flat.items()}

  def vector(self, kbar, i):
    return self.basis[kbar][i]

  def bracket_basis(self, k, b, l, c):
    """[g_k basis b, g_l basis c] in the basis of g_{k+l}, as {index: coeff}."""
    key = (k, b, l, c)
    r = self._struct.get(key)
    if r is None:
      v = self.g.bracket(self.basis[k][b], self.basis[l][c])
      target = self.group.add(k, l)
      r = {}
      for (kk, i), x in self.coords(v).items():
        if kk != target:
          raise AssertionError("bracket left the expected eigenspace")
        r[i] = x
      self._struct[key] = r
    return r

  def form_basis(self, k, b, l, c):
    return self.g.form_value(self.basis[k][b], self.basis[l][c])

  def zero_class(self):
    return (0,) * self.n

  # restricted root data
  def root_weights(self, kbar=None):
    """Nonzero restricted weights occurring in g_kbar (or anywhere)."""
    ks = self.classes if kbar is None else [kbar]
    out = set()
    for k in ks:
      out.update(w for w in self.weights[k] if any(w))
    return sorted(out, reverse=True)

  def is_positive(self, mu) -> bool:
    for b in range(self.g.npos):
      if self.basis_weight[b] == tuple(mu):
        return True
    return False

  def gram(self):
    if self._gram is None:
      cb = self.cartan_basis
      r = len(cb)
      gm = {}
      for s in range(r):
        for t in range(r):
          v = self.g.form_value(cb[s], cb[t])
          if v:
            gm.setdefault(s, {})[t] = v
      self._gram = (gm, la.inverse(gm, r) if r else {})
    return self._gram

  def weight_ip(self, mu, nu) -> Fraction:
    _, ginv = self.gram()
    s = CycScalar.rational(0)
    for i, row in ginv.items():
      for j, x in row.items():
        if mu[i] and nu[j]:
          s = s + x * mu[i] * nu[j]
    return s.to_fraction()

  def coroot_vector(self, mu):
    """h_mu = 2 t_mu / (mu|mu) as a Chevalley-coordinate vector in h_0."""
    _, ginv = self.gram()
    ln = self.weight_ip(mu, mu)
    coeff = {}
    for i, row in ginv.items():
      s = CycScalar.rational(0)
      for j, x in row.items():
        if mu[j]:
          s = s + x * mu[j]
      if s:
        coeff[i] = s * (Fraction(2) / ln)
    out = {}
    for i, c in coeff.items():
      la.vaxpy_into(out, self.cartan_basis[i], c)
    return out

  def zero_roots(self):
    return self.root_weights(self.zero_class())

  def zero_simple_roots(self):
    pos = [w for w in self.zero_roots() if self.is_positive(w)]
    ps = set(pos)
    simple = []
    for w in pos:
      if not any(tuple(a - b for a, b in zip(w, v)) in ps for v in pos):
        simple.append(w)
    return simple

  def zero_cartan_matrix(self):
    s = self.zero_simple_roots()
    out = []
    for a in s:
      out.append(tuple(int(2 * self.weight_ip(a, b) / self.weight_ip(a, a)) for b in s))
    return tuple(out)

  def zero_type(self):
    """(letter, rank) of the root system of g_0, with rank 1 read as B1."""
    if self._type is None:
      a = self.zero_cartan_matrix()
      if not a:
        self._type = None
      elif len(a) == 1:
        self._type = ("B", 1)
      else:
        self._type = classify_cartan(a)
    return self._type

  def extended_zero_roots(self):
    roots = list(self.zero_roots())
    t = self.zero_type()
    if t and t[0] == "B":
      top = max(self.weight_ip(r, r) for r in roots)
      roots += [tuple(2 * x for x in r) for r in roots
                if self.weight_ip(r, r) < top or t[1] == 1]
    return set(roots)

  def __repr__(self):
    return f"EigenspaceDecomposition(m={self.m}, dims={self.dims()})"


def _root_like(a: FiniteOrderAut) -> bool:
  g = a.g
  for b in range(g.dim):
    if g.basis_kind(b) != "h":
      img = a.images[b]
      if len(img) != 1 or g.basis_kind(next(iter(img))) == "h":
        return False
  return True


def eigenspace_decompose(g, auts, group: GradingGroup) -> EigenspaceDecomposition:
  return EigenspaceDecomposition(g, auts, group)


# ---------------------------------------------------------------------------
# Lie torus conditions

def _ad_image(dec, l, c, k, u):
  """[g_l basis c, u] for u in coordinates of g_k."""
  out = {}
  for b, x in u.items():
    la.vaxpy_into(out, dec.bracket_basis(l, c, k, b), x)
  return out


def _killing_nondegenerate(dec):
  z = dec.zero_class()
  n = len(dec.basis[z])
  if n == 0:
    return False
  ad = []
  for x in range(n):
    m = {}
    for y in range(n):
      for t, c in dec.bracket_basis(z, x, z, y).items():
        m.setdefault(t, {})[y] = c
    ad.append(m)
  rows = []
  for x in range(n):
    row = {}
    for y in range(n):
      p = la.mat_mul(ad[x], ad[y])
      tr = CycScalar.rational(0)
      for i, r in p.items():
        v = r.get(i)
        if v:
          tr = tr + v
      if tr:
        row[y] = tr
    rows.append(row)
  return la.rank(rows) == n


def _connected(a):
  n = len(a)
  if n == 0:
    return False
  seen = {0}
  todo = [0]
  while todo:
    i = todo.pop()
    for j in range(n):
      if a[i][j] and j not in seen:
        seen.add(j)
        todo.append(j)
  return len(seen) == n


def module_decomposition(dec, k):
  """Split g_k into the joint kernel U of ad g_0 and W = [g_0, g_k]."""
  z = dec.zero_class()
  n0 = len(dec.basis[z])
  nk = len(dec.basis[k])
  eqs = []
  for c in range(n0):
    cols = {}
    for b in range(nk):
      for t, x in dec.bracket_basis(z, c, k, b).items():
        cols.setdefault(t, {})[b] = x
    eqs.extend(cols.values())
  U = la.nullspace(eqs, nk)
  Wgen = []
  for c in range(n0):
    for b in range(nk):
      v = dec.bracket_basis(z, c, k, b)
      if v:
        Wgen.append(v)
  W, _ = la.echelon(Wgen)
  return U, W


def _generate(dec, k, start):
  """g_0-submodule of g_k generated by the given vectors."""
  z = dec.zero_class()
  n0 = len(dec.basis[z])
  basis = la.IncrementalBasis()
  todo = []
  for v in start:
    if basis.add(v)[0] is not None:
      todo.append(v)
  while todo:
    v = todo.pop()
    for c in range(n0):
      w = _ad_image(dec, z, c, k, v)
      if w and basis.add(w)[0] is not None:
        todo.append(w)
  return len(basis)


def _positive_zero_indices(dec):
  z = dec.zero_class()
  return [i for i, w in enumerate(dec.weights[z]) if any(w) and dec.is_positive(w)]


def check_lie_torus(dec: EigenspaceDecomposition, window=None):
  """Per-condition report: list of (name, passed, detail)."""
  report = []
  z = dec.zero_class()
  dim0 = len(dec.basis[z])
  if not dec.h_preserving:
    msg = "automorphisms outside the diagram/torus family"
    return [("fixed_part_simple", False, msg), ("graded_pieces_irreducible", False, msg),
            ("root_spaces_one_dim", False, msg), ("window_centre_trivial", False, msg)]
  a = dec.zero_cartan_matrix()
  ok1 = dim0 > 0 and _killing_nondegenerate(dec) and _connected(a) and \
      len(a) == len(dec.cartan_basis)
  t = dec.zero_type()
  detail = f"dim g_0 = {dim0}" + (f", type {t[0]}{t[1]}" if ok1 and t else "")
  report.append(("fixed_part_simple", ok1, detail))

  ok2, notes = True, []
  allowed = dec.extended_zero_roots() | {tuple([Fraction(0)] * len(dec.cartan_basis))}
  pos = _positive_zero_indices(dec)
  for k in dec.classes:
    if k == z or not dec.basis[k]:
      continue
    U, W = module_decomposition(dec, k)
    nk = len(dec.basis[k])
    if la.rank(U + W) != nk or len(U) + len(W) != nk:
      ok2 = False
      notes.append(f"{k}: U + W is not all of g_k")
      continue
    if W:
      if len(W) == 1:
        ok2 = False
        notes.append(f"{k}: W is one-dimensional")
      eqs = []
      for c in pos:
        cols = {}
        for r, w in enumerate(W):
          for t2, x in _ad_image(dec, z, c, k, w).items():
            cols.setdefault(t2, {})[r] = x
        eqs.extend(cols.values())
      top = la.nullspace(eqs, len(W))
      if len(top) != 1:
        ok2 = False
        notes.append(f"{k}: {len(top)} highest weight vectors in W")
      else:
        vec = {}
        for r, x in top[0].items():
          la.vaxpy_into(vec, W[r], x)
        if _generate(dec, k, [vec]) != len(W):
          ok2 = False
          notes.append(f"{k}: W is reducible")
    for w in set(dec.weights[k]):
      if w not in allowed:
        ok2 = False
        notes.append(f"{k}: weight {tuple(map(str, w))} outside the extended roots")
    notes.append(f"{k}: dim U = {len(U)}, dim W = {len(W)}")
  report.append(("graded_pieces_irreducible", ok2, "; ".join(notes) or "no nonzero classes"))

  bad = [(k, w) for (k, w), idx in dec.spaces.items() if any(w) and len(idx) > 1]
  report.append(("root_spaces_one_dim", not bad,
                 "all nonzero root spaces have dim <= 1" if not bad
                 else f"{len(bad)} root spaces of dim > 1"))

  w = max(dec.m) if window is None else window
  centre = window_centre_dims(dec, w)
  ok4 = all(d == 0 for d in centre.values())
  report.append(("window_centre_trivial", ok4, f"window {w}: centre dim {sum(centre.values())}"))
  return report


def window_centre_dims(dec, w):
  """Dimension of the centre of the multiloop algebra in each degree of the window."""
  out = {}
  rng = range(-w, w + 1)
  for k in itertools.product(rng, repeat=dec.n):
    kb = dec.group.reduce(k)
    nk = len(dec.basis[kb])
    if nk == 0:
      continue
    classes = set()
    for l in itertools.product(rng, repeat=dec.n):
      if all(-w <= a + b <= w for a, b in zip(k, l)):
        classes.add(dec.group.reduce(l))
    eqs = []
    for lb in sorted(classes):
      for c in range(len(dec.basis[lb])):
        cols = {}
        for b in range(nk):
          for t, x in dec.bracket_basis(lb, c, kb, b).items():
            cols.setdefault(t, {})[b] = x
        eqs.extend(cols.values())
    out[k] = len(la.nullspace(eqs, nk))
  return out


# ---------------------------------------------------------------------------
# characters, outer parts and orbits

def character_aut(dec: EigenspaceDecomposition, values) -> FiniteOrderAut:
  """alpha_chi scaling g_kbar by chi(kbar); values are chi on the generators of G."""
  values = [CycScalar.coerce(v) for v in values]
  if len(values) != dec.n:
    raise NotAHomomorphism("one value per generator of G is required")
  for v, mi in zip(values, dec.m):
    if v ** mi != ONE:
      raise NotAHomomorphism(f"chi value {v} does not satisfy chi^{mi} = 1")
  scale = {k: root_character(values, k) for k in dec.classes}
  imgs = []
  for b in range(dec.g.dim):
    out = {}
    for (k, i), c in dec.coords({b: ONE}).items():
      la.vaxpy_into(out, dec.basis[k][i], c * scale[k])
    imgs.append(out)
  return FiniteOrderAut(dec.g, imgs, chi=tuple(values), name="character")


def outer_part(g: ChevalleyAlgebra, phi: FiniteOrderAut):
  """Diagram permutation gamma (0-based) with phi = (inner) o gamma."""
  rs = g.rs
  l = g.rank
  if not phi.preserves_cartan():
    raise CartanNotPreserved("automorphism does not preserve the Cartan subalgebra")
  cols = []
  for i in range(l):
    img = phi.images[g.e(rs.simple_roots[i])]
    if len(img) != 1 or g.basis_kind(next(iter(img))) == "h":
      raise CartanNotPreserved("simple root vector is not sent to a root vector")
    cols.append(g.root_of[next(iter(img))])

  def apply(root):
    return tuple(sum(n * cols[i][j] for i, n in enumerate(root)) for j in range(l))

  images = {r: apply(r) for r in rs.positive}
  if any(not rs.is_root(v) for v in images.values()):
    raise CartanNotPreserved("induced lattice map does not preserve the roots")
  simple = rs.simple_roots
  for _ in range(len(rs.positive) + 1):
    j = next((j for j in range(l) if tuple(-x for x in simple[j]) in images.values()), None)
    if j is None:
      break
    for r, v in images.items():
      c = rs.pairing(v, j)
      images[r] = tuple(x - c * (t == j) for t, x in enumerate(v))
  else:
    raise AssertionError("Weyl reduction did not terminate")
  return tuple(simple.index(images[simple[i]]) for i in range(l))


def act_on_weight(lam, gamma):
  return tuple(lam[gamma[i]] for i in range(len(lam)))


def character_values(dec, d):
  return [x ** di for x, di in zip(dec.xi, d)]


def orbit_data(dec: EigenspaceDecomposition):
  """[(d, gamma)] over all characters chi_i = xi_i^{d_i}."""
  cache = getattr(dec, "_orbit_data", None)
  if cache is None:
    cache = []
    for d in dec.classes:
      phi = character_aut(dec, character_values(dec, d))
      cache.append((d, outer_part(dec.g, phi)))
    dec._orbit_data = cache
  return cache


def ghat_orbit(dec: EigenspaceDecomposition, lam):
  lam = tuple(lam)
  if len(lam) != dec.g.rank or not dominant(lam):
    raise NonDominantWeight(f"{lam} is not dominant integral")
  out = [lam]
  for _, gamma in orbit_data(dec):
    mu = act_on_weight(lam, gamma)
    if mu not in out:
      out.append(mu)
  return out
