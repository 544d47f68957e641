"""Simple Lie algebras in a Chevalley basis and their irreducible modules.

Everything is driven by the Cartan matrix.  The irreducible module L(lam) is
generated weight by weight from a highest weight vector: a candidate f_i u is
identified with its vector of e_j images, which is injective on L(lam) below
the top.  The adjoint module L(theta) then gives faithful matrices from which
the structure constants are read off exactly.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg as la
from .scalars import CycScalar


class UnsupportedType(ValueError):
  pass


class NonDominantWeight(ValueError):
  pass


ONE = CycScalar.rational(1)
ZERO = CycScalar.rational(0)


def _chain(rank):
  a = [[0] * rank for _ in range(rank)]
  for i in range(rank):
    a[i][i] = 2
    if i + 1 < rank:
      a[i][i + 1] = a[i + 1][i] = -1
  return a


def cartan_matrix(letter: str, rank: int):
  """Cartan matrix a_ij = <alpha_j, alpha_i^vee> in Bourbaki numbering."""
  letter = str(letter).upper()
  ok = {"A": rank >= 1, "B": rank >= 2, "C": rank >= 2, "D": rank >= 4,
        "E": rank in (6, 7, 8), "F": rank == 4, "G": rank == 2}
  if not ok.get(letter, False):
    raise UnsupportedType(f"no simple Lie algebra of type {letter}{rank}")
  if letter == "A":
    a = _chain(rank)
  elif letter == "B":
    a = _chain(rank)
    a[rank - 1][rank - 2] = -2
  elif letter == "C":
    a = _chain(rank)
    a[rank - 2][rank - 1] = -2
  elif letter == "D":
    a = _chain(rank)
    a[rank - 1][rank - 2] = a[rank - 2][rank - 1] = 0
    a[rank - 1][rank - 3] = a[rank - 3][rank - 1] = -1
  elif letter == "E":
    a = [[0] * rank for _ in range(rank)]
    edges = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, rank - 1)]
    for i in range(rank):
      a[i][i] = 2
    for i, j in edges:
      a[i][j] = a[j][i] = -1
  elif letter == "F":
    a = _chain(4)
    a[2][1] = -2
  else:
    a = [[2, -3], [-1, 2]]
  return tuple(tuple(r) for r in a)


def symmetrizer(cartan):
  """d_i = (alpha_i|alpha_i)/2 with the longest simple roots at d = 1."""
  n = len(cartan)
  d = [None] * n
  d[0] = Fraction(1)
  todo = [0]
  while todo:
    i = todo.pop()
    for j in range(n):
      if cartan[i][j] and d[j] is None:
        d[j] = d[i] * cartan[i][j] / cartan[j][i]
        todo.append(j)
  if any(x is None for x in d):
    raise ValueError("Cartan matrix is not connected")
  top = max(d)
  return tuple(x / top for x in d)


class RootSystem:
  """Irreducible reduced root system given by type letter and rank."""

  def __init__(self, letter, rank, cartan=None):
    self.letter = str(letter).upper()
    self.rank = rank
    self.cartan = cartan if cartan is not None else cartan_matrix(letter, rank)
    self.d = symmetrizer(self.cartan)
    self.positive = self._positive_roots()
    self.index = {r: i for i, r in enumerate(self.positive)}
    self.theta = self.positive[-1]

  def __repr__(self):
    return f"RootSystem({self.letter}{self.rank})"

  def _positive_roots(self):
    l = self.rank
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    found = set(simple)
    layer = list(simple)
    while layer:
      nxt = []
      for beta in layer:
        for i in range(l):
          q = 0
          while True:
            down = tuple(b - (q + 1) * (k == i) for k, b in enumerate(beta))
            if down in found:
              q += 1
            else:
              break
          if q - self.pairing(beta, i) > 0:
            up = tuple(b + (k == i) for k, b in enumerate(beta))
            if up not in found:
              found.add(up)
              nxt.append(up)
      layer = nxt
    return tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))

  @property
  def simple_roots(self):
    return self.positive[:self.rank]

  def is_root(self, r) -> bool:
    r = tuple(r)
    return r in self.index or tuple(-x for x in r) in self.index

  def pairing(self, root, i) -> int:
    """<root, alpha_i^vee> for a root in simple-root coordinates."""
    return sum(n * self.cartan[i][j] for j, n in enumerate(root))

  def labels(self, root):
    """Dynkin labels of a root-lattice element."""
    return tuple(self.pairing(root, i) for i in range(self.rank))

  def ip(self, a, b) -> Fraction:
    """(a|b) for root-lattice elements, long roots of squared length 2."""
    return sum((Fraction(x * y) * self.d[i] * self.cartan[i][j]
                for i, x in enumerate(a) if x
                for j, y in enumerate(b) if y), Fraction(0))

  def is_short(self, root) -> bool:
    return self.ip(root, root) < 2

  def weight_root_ip(self, lam, root) -> Fraction:
    """(lam|root) for lam in Dynkin labels."""
    return sum((Fraction(lam[j]) * n * self.d[j] for j, n in enumerate(root)), Fraction(0))

  def simple_reflection_labels(self, lam, i):
    """s_i applied to a weight in Dynkin labels."""
    c = lam[i]
    return tuple(x - c * self.cartan[j][i] for j, x in enumerate(lam))

  def all_roots(self):
    return self.positive + tuple(tuple(-x for x in r) for r in self.positive)


def dominant(lam) -> bool:
  return all(isinstance(x, int) and x >= 0 for x in lam)


def weyl_dimension(rs: RootSystem, lam) -> int:
  """Weyl's product formula, exactly."""
  lam = tuple(lam)
  if len(lam) != rs.rank or not dominant(lam):
    raise NonDominantWeight(f"{lam} is not dominant integral for {rs}")
  rho = (1,) * rs.rank
  num = Fraction(1)
  for a in rs.positive:
    shifted = tuple(x + 1 for x in lam)
    num *= rs.weight_root_ip(shifted, a) / rs.weight_root_ip(rho, a)
  assert num.denominator == 1
  return int(num)


def extended_roots(rs: RootSystem, treat_as_b=None):
  """Nonzero roots, plus doubled short roots when the type is B (or rank 1)."""
  roots = list(rs.all_roots())
  is_b = rs.letter == "B" or rs.rank == 1 if treat_as_b is None else treat_as_b
  if is_b:
    if rs.rank == 1:
      short = roots
    else:
      short = [r for r in roots if rs.is_short(r)]
    roots += [tuple(2 * x for x in r) for r in short]
  return roots


# ---------------------------------------------------------------------------
# highest weight modules from the Cartan matrix

class _HWData:
  __slots__ = ("weights", "weight_of", "blocks", "E", "F", "dim")


def _weight_minus(cartan, mu, i):
  return tuple(x - cartan[j][i] for j, x in enumerate(mu))


def _weight_plus(cartan, mu, i):
  return tuple(x + cartan[j][i] for j, x in enumerate(mu))


def highest_weight_data(cartan, lam) -> _HWData:
  """Action of e_i, f_i on L(lam), level by level below the top."""
  l = len(cartan)
  lam = tuple(lam)
  E = [dict() for _ in range(l)]   # column-major: E[i][u] = e_i u
  F = [dict() for _ in range(l)]
  weight_of = [lam]
  blocks = {lam: (0, 1)}
  for i in range(l):
    E[i][0] = {}
  level = [lam]
  while level:
    targets = {}
    for nu in level:
      s, dim = blocks[nu]
      for i in range(l):
        mu = _weight_minus(cartan, nu, i)
        for u in range(s, s + dim):
          targets.setdefault(mu, []).append((i, u, nu))
    nxt = []
    for mu in sorted(targets, key=lambda w: tuple(-x for x in w)):
      basis = la.IncrementalBasis()
      accepted_imgs = []
      placed = []
      for i, u, nu in targets[mu]:
        img_by_j = []
        whole = {}
        for j in range(l):
          piece = {}
          for w, c in E[j][u].items():
            la.vaxpy_into(piece, F[i].get(w, {}), c)
          if i == j and nu[i]:
            la.vaxpy_into(piece, {u: ONE}, nu[i])
          img_by_j.append(piece)
          la.vaxpy_into(whole, piece, 1)
        t, coords = basis.add(whole)
        if t is not None:
          accepted_imgs.append(img_by_j)
        placed.append((i, u, t, coords))
      dim = len(basis)
      if dim == 0:
        for i, u, _, _ in placed:
          F[i][u] = {}
        continue
      start = len(weight_of)
      blocks[mu] = (start, dim)
      weight_of.extend([mu] * dim)
      nxt.append(mu)
      for i, u, t, coords in placed:
        if t is not None:
          F[i][u] = {start + t: ONE}
        else:
          F[i][u] = {start + k: c for k, c in coords.items() if c}
      for t, img_by_j in enumerate(accepted_imgs):
        for j in range(l):
          E[j][start + t] = img_by_j[j]
    level = nxt
  total = len(weight_of)
  for i in range(l):
    for u in range(total):
      F[i].setdefault(u, {})
  out = _HWData()
  out.weights = list(blocks)
  out.weight_of = weight_of
  out.blocks = blocks
  out.dim = total
  out.E = [la.transpose(m) for m in E]
  out.F = [la.transpose(m) for m in F]
  return out


# ---------------------------------------------------------------------------

class ChevalleyAlgebra:
  """Structure constants in a Chevalley basis e_alpha, h_i, f_alpha.

  Basis order: e_alpha for positive alpha (height order), then h_1..h_l,
  then f_alpha in the same root order.  Non-simple root vectors are
  e_xi = [e_a, e_b]/(p+1) for the extraspecial pair (a, b) of xi.
  """

  def __init__(self, rs: RootSystem):
    self.rs = rs
    self.rank = rs.rank
    P = len(rs.positive)
    self.npos = P
    self.dim = 2 * P + rs.rank
    self.root_of = []    # root of each basis vector, zero tuple for h
    self.labels = []
    zero = (0,) * rs.rank
    for r in rs.positive:
      self.root_of.append(r)
      self.labels.append("e" + "".join(map(str, r)))
    for i in range(rs.rank):
      self.root_of.append(zero)
      self.labels.append(f"h{i + 1}")
    for r in rs.positive:
      self.root_of.append(tuple(-x for x in r))
      self.labels.append("f" + "".join(map(str, r)))
    self.label_index = {s: i for i, s in enumerate(self.labels)}
    self.recipe = {}
    self._build()
    self._build_form()

  # index helpers
  def e(self, root) -> int:
    return self.rs.index[tuple(root)]

  def f(self, root) -> int:
    return self.npos + self.rank + self.rs.index[tuple(root)]

  def h(self, i) -> int:
    return self.npos + i

  def h_index(self, b) -> int:
    return b - self.npos

  def basis_kind(self, b):
    if b < self.npos:
      return "e"
    return "h" if b < self.npos + self.rank else "f"

  def index_of_root(self, root):
    """Basis index of the root vector for a nonzero root (either sign)."""
    root = tuple(root)
    if root in self.rs.index:
      return self.e(root)
    return self.f(tuple(-x for x in root))

  def extraspecial(self, xi):
    rs = self.rs
    for a in rs.positive:
      b = tuple(x - y for x, y in zip(xi, a))
      if b in rs.index:
        p = 0
        while rs.is_root(tuple(x - (p + 1) * y for x, y in zip(b, a))):
          p += 1
        return a, b, p + 1
    raise AssertionError(f"no extraspecial pair for {xi}")

  def coroot_coeffs(self, root):
    """Coefficients of root^vee in the basis h_i."""
    rs = self.rs
    ln = rs.ip(root, root)
    return tuple(2 * n * rs.d[i] / ln for i, n in enumerate(root))

  def _build(self):
    rs = self.rs
    adj = highest_weight_data(rs.cartan, rs.labels(rs.theta))
    if adj.dim != self.dim:
      raise AssertionError("adjoint module has the wrong dimension")
    l = rs.rank
    Em = {rs.simple_roots[i]: adj.E[i] for i in range(l)}
    Fm = {rs.simple_roots[i]: adj.F[i] for i in range(l)}
    Hm = [la.commutator(adj.E[i], adj.F[i]) for i in range(l)]
    for xi in rs.positive[l:]:
      a, b, den = self.extraspecial(xi)
      Em[xi] = la.mat_scale(la.commutator(Em[a], Em[b]), Fraction(1, den))
      ff = la.mat_scale(la.commutator(Fm[a], Fm[b]), Fraction(1, den))
      hxi = {}
      for i, c in enumerate(self.coroot_coeffs(xi)):
        hxi = la.mat_add(hxi, Hm[i], c)
      ef = la.commutator(Em[xi], ff)
      if la.mat_equal(ef, hxi):
        sign = 1
      elif la.mat_equal(ef, la.mat_scale(hxi, -1)):
        sign = -1
      else:
        raise AssertionError(f"[e,f] is not the coroot for {xi}")
      Fm[xi] = la.mat_scale(ff, sign)
      self.recipe[xi] = (a, b, den, sign)
    mats = [Em[r] for r in rs.positive] + Hm + [Fm[r] for r in rs.positive]
    self.adjoint_matrices = mats
    self.brackets = {}
    zero = (0,) * l
    for x in range(self.dim):
      for y in range(x + 1, self.dim):
        s = tuple(p + q for p, q in zip(self.root_of[x], self.root_of[y]))
        if s == zero:
          if self.basis_kind(x) == "h":
            continue
          c = la.commutator(mats[x], mats[y])
          res = {}
          for i, co in enumerate(self.coroot_coeffs(self.root_of[x])):
            if co:
              res[self.h(i)] = co
          chk = {}
          for i, co in res.items():
            chk = la.mat_add(chk, mats[i], co)
          if not la.mat_equal(c, chk):
            raise AssertionError("Chevalley relation [e,f] = h failed")
        elif rs.is_root(s):
          c = la.commutator(mats[x], mats[y])
          t = self.index_of_root(s)
          if la.mat_is_zero(c):
            continue
          row = next(iter(mats[t]))
          col = next(iter(mats[t][row]))
          ratio = c.get(row, {}).get(col, 0) / mats[t][row][col]
          if not la.mat_equal(c, la.mat_scale(mats[t], ratio)):
            raise AssertionError("bracket is not a root vector multiple")
          res = {t: ratio}
        else:
          continue
        res = {k: CycScalar.coerce(v) for k, v in res.items() if v}
        if res:
          self.brackets[(x, y)] = res
          self.brackets[(y, x)] = {k: -v for k, v in res.items()}

  def _build_form(self):
    rs = self.rs
    self.form = {}
    l = rs.rank
    for i in range(l):
      for j in range(l):
        v = Fraction(rs.cartan[i][j]) / rs.d[j]
        if v:
          self.form[(self.h(i), self.h(j))] = CycScalar.rational(v)
    for r in rs.positive:
      v = CycScalar.rational(Fraction(2) / rs.ip(r, r))
      self.form[(self.e(r), self.f(r))] = v
      self.form[(self.f(r), self.e(r))] = v

  # element-level operations; elements are sparse coordinate dicts
  def basis_bracket(self, x, y):
    return self.brackets.get((x, y), {})

  def bracket(self, u, v):
    out = {}
    for x, a in u.items():
      for y, b in v.items():
        r = self.brackets.get((x, y))
        if r:
          la.vaxpy_into(out, r, a * b)
    return out

  def form_value(self, u, v):
    s = ZERO
    for x, a in u.items():
      for y, b in v.items():
        f = self.form.get((x, y))
        if f is not None:
          s = s + f * a * b
    return s

  def basis_vector(self, b):
    return {b: ONE}

  def parse_label(self, s):
    return self.label_index[s]

  def __repr__(self):
    return f"ChevalleyAlgebra({self.rs.letter}{self.rank}, dim={self.dim})"


_ALGEBRAS = {}


def build_simple(letter: str, rank: int) -> ChevalleyAlgebra:
  key = (str(letter).upper(), rank)
  if key not in _ALGEBRAS:
    _ALGEBRAS[key] = ChevalleyAlgebra(RootSystem(*key))
  return _ALGEBRAS[key]


def invariant_form(g: ChevalleyAlgebra, x, y):
  """(x|y) for basis indices or sparse coordinate vectors."""
  if isinstance(x, int):
    x = {x: ONE}
  if isinstance(y, int):
    y = {y: ONE}
  return g.form_value(x, y)


# ---------------------------------------------------------------------------

class IrrepModule:
  """Finite-dimensional irreducible module V(lam) with matrices for every basis element."""

  def __init__(self, g: ChevalleyAlgebra, lam):
    self.g = g
    self.lam = tuple(lam)
    data = highest_weight_data(g.rs.cartan, self.lam)
    self.dim = data.dim
    self.weight_of = data.weight_of
    self.blocks = data.blocks
    rs = g.rs
    l = rs.rank
    to_c = lambda m: {i: {j: CycScalar.rational(v) if not isinstance(v, CycScalar) else v
                          for j, v in r.items()} for i, r in m.items()}
    em = {rs.simple_roots[i]: to_c(data.E[i]) for i in range(l)}
    fm = {rs.simple_roots[i]: to_c(data.F[i]) for i in range(l)}
    for xi in rs.positive[l:]:
      a, b, den, sign = g.recipe[xi]
      em[xi] = la.mat_scale(la.commutator(em[a], em[b]), Fraction(1, den))
      fm[xi] = la.mat_scale(la.commutator(fm[a], fm[b]), Fraction(sign, den))
    hm = []
    for i in range(l):
      hm.append({u: {u: CycScalar.rational(w[i])} for u, w in enumerate(self.weight_of) if w[i]})
    self.mats = [em[r] for r in rs.positive] + hm + [fm[r] for r in rs.positive]

  def act(self, x, v):
    """Action of a Lie algebra element (sparse coords) on a vector."""
    out = {}
    for b, c in x.items():
      la.vaxpy_into(out, la.mat_vec(self.mats[b], v), c)
    return out

  def matrix_of(self, x):
    out = {}
    for b, c in x.items():
      out = la.mat_add(out, self.mats[b], c)
    return out

  def weight_multiplicities(self):
    return {w: d for w, (s, d) in self.blocks.items()}

  def __repr__(self):
    return f"IrrepModule({self.g.rs.letter}{self.g.rank}, lam={self.lam}, dim={self.dim})"


def build_irrep(g: ChevalleyAlgebra, lam) -> IrrepModule:
  lam = tuple(lam)
  if len(lam) != g.rank or not dominant(lam):
    raise NonDominantWeight(f"{lam} is not dominant integral for {g}")
  return IrrepModule(g, lam)


# ---------------------------------------------------------------------------

def classify_cartan(cartan):
  """(letter, rank) of a connected Cartan matrix, trying every type of that rank.

  Rank-2 B/C coincide; B is reported.  Returns None when nothing matches.
  """
  l = len(cartan)
  cands = [("A", l), ("B", l), ("C", l), ("D", l), ("E", l), ("F", l), ("G", l)]
  for letter, rank in cands:
    try:
      ref = cartan_matrix(letter, rank)
    except UnsupportedType:
      continue
    if _cartan_iso(ref, cartan):
      return letter, rank
  return None


def _cartan_iso(a, b):
  n = len(a)
  perm = [None] * n
  used = [False] * n

  def ok(i):
    for j in range(i + 1):
      if a[i][j] != b[perm[i]][perm[j]] or a[j][i] != b[perm[j]][perm[i]]:
        return False
    return True

  def go(i):
    if i == n:
      return True
    for c in range(n):
      if not used[c]:
        perm[i] = c
        used[c] = True
        if ok(i) and go(i + 1):
          return True
        used[c] = False
    perm[i] = None
    return False

  return go(0)
