"""Sparse exact linear algebra over any field whose elements support + - * /.

Vectors are dicts {index: value} with no explicit zeros.  Matrices are
row-major dicts of such vectors, {row: {col: value}}.
"""

from __future__ import annotations


def vadd(u, v, c=1):
  """u + c*v as a new dict."""
  out = dict(u)
  for k, x in v.items():
    y = out.get(k)
    y = x * c if y is None else y + x * c
    if y:
      out[k] = y
    else:
      out.pop(k, None)
  return out


def vscale(v, c):
  if not c:
    return {}
  return {k: x * c for k, x in v.items()}


def vaxpy_into(acc, v, c):
  """acc += c*v in place."""
  for k, x in v.items():
    y = acc.get(k)
    y = x * c if y is None else y + x * c
    if y:
      acc[k] = y
    else:
      acc.pop(k, None)


def mat_vec(a, v):
  """A v where A is row-major."""
  out = {}
  for i, row in a.items():
    s = None
    for j, x in row.items():
      y = v.get(j)
      if y is not None:
        s = x * y if s is None else s + x * y
    if s:
      out[i] = s
  return out


def transpose(a):
  out = {}
  for i, row in a.items():
    for j, x in row.items():
      out.setdefault(j, {})[i] = x
  return out


def mat_mul(a, b):
  out = {}
  for i, row in a.items():
    acc = {}
    for k, x in row.items():
      brow = b.get(k)
      if brow:
        vaxpy_into(acc, brow, x)
    if acc:
      out[i] = acc
  return out


def mat_add(a, b, c=1):
  out = {i: dict(r) for i, r in a.items()}
  for i, row in b.items():
    r = vadd(out.get(i, {}), row, c)
    if r:
      out[i] = r
    else:
      out.pop(i, None)
  return out


def mat_scale(a, c):
  if not c:
    return {}
  return {i: {j: x * c for j, x in r.items()} for i, r in a.items()}


def commutator(a, b):
  return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def identity(n, one=1):
  return {i: {i: one} for i in range(n)}


def mat_is_zero(a):
  return not any(a.values())


def mat_equal(a, b):
  return mat_is_zero(mat_add(a, b, -1))


def to_dense(a, nrows, ncols, zero=0):
  return [[a.get(i, {}).get(j, zero) for j in range(ncols)] for i in range(nrows)]


def from_dense(rows):
  out = {}
  for i, r in enumerate(rows):
    d = {j: x for j, x in enumerate(r) if x}
    if d:
      out[i] = d
  return out


def echelon(vectors):
  """Reduced row echelon form of a list of sparse vectors.

  Returns (rows, pivots): independent rows with leading 1 at the pivot and
  zeros in every other pivot column.
  """
  rows, pivots = [], []
  for v in vectors:
    v = dict(v)
    for p, r in zip(pivots, rows):
      c = v.get(p)
      if c:
        vaxpy_into(v, r, -c)
    if not v:
      continue
    p = min(v)
    inv = 1 / v[p]
    v = {k: x * inv for k, x in v.items()}
    for idx, r in enumerate(rows):
      c = r.get(p)
      if c:
        r = dict(r)
        vaxpy_into(r, v, -c)
        rows[idx] = r
    rows.append(v)
    pivots.append(p)
  order = sorted(range(len(pivots)), key=pivots.__getitem__)
  return [rows[i] for i in order], [pivots[i] for i in order]


def rank(vectors):
  return len(echelon(vectors)[0])


def nullspace(rows, ncols):
  """Basis of {x : R x = 0} for the row list R, as sparse vectors of length ncols."""
  red, piv = echelon(rows)
  pivset = set(piv)
  basis = []
  for f in range(ncols):
    if f in pivset:
      continue
    x = {f: 1}
    for p, r in zip(piv, red):
      c = r.get(f)
      if c:
        x[p] = -c
    basis.append(x)
  return basis


def solve(rows, rhs, ncols):
  """One solution x of R x = rhs (rhs indexed like rows), or None."""
  aug = []
  for i, r in enumerate(rows):
    row = dict(r)
    b = rhs.get(i) if isinstance(rhs, dict) else rhs[i]
    if b:
      row[ncols] = b
    aug.append(row)
  red, piv = echelon(aug)
  if ncols in piv:
    return None
  x = {}
  for p, r in zip(piv, red):
    b = r.get(ncols)
    if b:
      x[p] = b
  return x


def inverse(a, n):
  """Inverse of an n x n row-major matrix; raises ValueError if singular."""
  aug = []
  for i in range(n):
    row = dict(a.get(i, {}))
    row[n + i] = 1
    aug.append(row)
  red, piv = echelon(aug)
  if piv[:n] != list(range(n)) or len(piv) < n:
    raise ValueError("singular matrix")
  out = {}
  for i in range(n):
    r = {j - n: x for j, x in red[i].items() if j >= n}
    if r:
      out[i] = r
  return out


class IncrementalBasis:
  """Grow a basis one candidate at a time, expressing dependents in it.

  add(v) returns (index, None) if v is new, or (None, coords) where coords
  expresses v in terms of the previously accepted vectors.
  """

  def __init__(self):
    self.rows = []  # (pivot, reduced vector, combination of accepted vectors)
    self.accepted = []

  def __len__(self):
    return len(self.accepted)

  def reduce(self, v):
    v = dict(v)
    combo = {}
    for p, r, rc in self.rows:
      c = v.get(p)
      if c:
        c = c / r[p]
        vaxpy_into(v, r, -c)
        vaxpy_into(combo, rc, c)
    return v, combo

  def add(self, v):
    rest, combo = self.reduce(v)
    if not rest:
      return None, combo
    t = len(self.accepted)
    self.accepted.append(v)
    rc = {t: 1}
    vaxpy_into(rc, combo, -1)
    self.rows.append((min(rest), rest, rc))
    return t, None

  def coords(self, v):
    """Coordinates of v in the accepted vectors, or None if v is outside the span."""
    rest, combo = self.reduce(v)
    return None if rest else combo
