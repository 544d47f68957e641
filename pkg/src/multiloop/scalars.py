"""Exact arithmetic in the cyclotomic fields Q(zeta_N).

An element is stored as its coordinates in the power basis
1, z, ..., z^(phi(N)-1) after reduction modulo the N-th cyclotomic
polynomial, which makes the representation unique.  Elements of different
conductors can be mixed; the result lives at the lcm of the two.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd


class ConductorMismatch(ValueError):
  """Raised when an element cannot be expressed at the requested conductor."""


class DivisionByZero(ZeroDivisionError):
  """Raised on division by an exact zero."""


def _lcm(a: int, b: int) -> int:
  return a * b // gcd(a, b)


def _polydivmod(num, den):
  num = list(num)
  out = [0] * max(len(num) - len(den) + 1, 1)
  for i in range(len(num) - len(den), -1, -1):
    q = num[i + len(den) - 1] // den[-1]
    out[i] = q
    for j, d in enumerate(den):
      num[i + j] -= q * d
  return out, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
  """Integer coefficients of Phi_n, lowest degree first."""
  if n < 1:
    raise ValueError("conductor must be positive")
  poly = [-1] + [0] * (n - 1) + [1]
  for d in range(1, n):
    if n % d == 0:
      poly, rem = _polydivmod(poly, cyclotomic_poly(d))
      assert not any(rem)
  return tuple(poly)


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple:
  """z^j for 0 <= j < n, each reduced to a tuple of ints of length phi(n)."""
  phi = cyclotomic_poly(n)
  deg = len(phi) - 1
  rows = []
  cur = [1] + [0] * (deg - 1)
  for _ in range(n):
    rows.append(tuple(cur))
    top = cur[-1]
    cur = [0] + cur[:-1]
    if top:
      for i in range(deg):
        cur[i] -= top * phi[i]
  return tuple(rows)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple:
  return tuple(j for j in range(1, n + 1) if gcd(j, n) == 1)


_ZERO = Fraction(0)
_ONE = Fraction(1)


class CycScalar:
  """An exact element of Q(zeta_N)."""

  __slots__ = ("n", "c", "_h")

  def __init__(self, n: int, coeffs=(0,)):
    # coeffs may have any length; entry j is the coefficient of z^j.
    if n < 1:
      raise ValueError("conductor must be positive")
    table = _powers(n)
    deg = len(table[0])
    acc = [_ZERO] * deg
    for j, a in enumerate(coeffs):
      if a:
        a = Fraction(a)
        for i, t in enumerate(table[j % n]):
          if t:
            acc[i] += a * t
    self.n = n
    self.c = tuple(acc)
    self._h = None

  @classmethod
  def _raw(cls, n, c):
    out = object.__new__(cls)
    out.n = n
    out.c = c
    out._h = None
    return out

  @classmethod
  def rational(cls, q, n: int = 1) -> "CycScalar":
    q = Fraction(q)
    deg = len(_powers(n)[0])
    return cls._raw(n, (q,) + (_ZERO,) * (deg - 1))

  # ---- coercion -----------------------------------------------------------
  @staticmethod
  def coerce(x) -> "CycScalar":
    if isinstance(x, CycScalar):
      return x
    if isinstance(x, (int, Fraction)):
      return CycScalar._raw(1, (Fraction(x),))
    raise TypeError(f"cannot use {type(x).__name__} as a cyclotomic scalar")

  def _align(self, other):
    other = CycScalar.coerce(other)
    if other.n == self.n:
      return self, other
    if len(other.c) == 1 and not any(other.c[1:]):
      return self, CycScalar.rational(other.c[0], self.n)
    if len(self.c) == 1:
      return CycScalar.rational(self.c[0], other.n), other
    m = _lcm(self.n, other.n)
    return promote(self, m), promote(other, m)

  @property
  def coeffs(self) -> tuple:
    """Canonical coefficient vector of length N (zero-padded)."""
    return self.c + (_ZERO,) * (self.n - len(self.c))

  # ---- arithmetic ---------------------------------------------------------
  def __add__(self, other):
    if not isinstance(other, CycScalar) or other.n != self.n:
      try:
        a, b = self._align(other)
      except TypeError:
        return NotImplemented
    else:
      a, b = self, other
    return CycScalar._raw(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

  __radd__ = __add__

  def __neg__(self):
    return CycScalar._raw(self.n, tuple(-x for x in self.c))

  def __sub__(self, other):
    if not isinstance(other, CycScalar) or other.n != self.n:
      try:
        a, b = self._align(other)
      except TypeError:
        return NotImplemented
    else:
      a, b = self, other
    return CycScalar._raw(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

  def __rsub__(self, other):
    return (-self) + other

  def __mul__(self, other):
    if isinstance(other, (int, Fraction)):
      return CycScalar._raw(self.n, tuple(x * other for x in self.c))
    if not isinstance(other, CycScalar):
      return NotImplemented
    if len(other.c) == 1 and other.n <= 2:
      q = other.c[0]
      return CycScalar._raw(self.n, tuple(x * q for x in self.c))
    if len(self.c) == 1 and self.n <= 2:
      q = self.c[0]
      return CycScalar._raw(other.n, tuple(x * q for x in other.c))
    a, b = self._align(other)
    n = a.n
    table = _powers(n)
    acc = [_ZERO] * len(a.c)
    for i, x in enumerate(a.c):
      if not x:
        continue
      for j, y in enumerate(b.c):
        if not y:
          continue
        xy = x * y
        for t, v in enumerate(table[(i + j) % n]):
          if v:
            acc[t] += xy * v
    return CycScalar._raw(n, tuple(acc))

  __rmul__ = __mul__

  def galois(self, j: int) -> "CycScalar":
    """Image under the field automorphism z -> z^j (gcd(j, N) = 1)."""
    if gcd(j, self.n) != 1:
      raise ValueError("exponent must be coprime to the conductor")
    table = _powers(self.n)
    acc = [_ZERO] * len(self.c)
    for i, x in enumerate(self.c):
      if x:
        for t, v in enumerate(table[(i * j) % self.n]):
          if v:
            acc[t] += x * v
    return CycScalar._raw(self.n, tuple(acc))

  def conjugate(self) -> "CycScalar":
    return self.galois(self.n - 1) if self.n > 2 else self

  def norm(self) -> Fraction:
    out = CycScalar.rational(1, self.n)
    for j in _units(self.n):
      out = out * self.galois(j)
    return out.c[0]

  def inverse(self) -> "CycScalar":
    if self.is_zero():
      raise DivisionByZero("inverse of zero")
    if len(self.c) == 1:
      return CycScalar._raw(self.n, (1 / self.c[0],))
    # a^-1 = (product of the other conjugates) / norm(a)
    rest = CycScalar.rational(1, self.n)
    for j in _units(self.n):
      if j % self.n != 1:
        rest = rest * self.galois(j)
    nrm = (self * rest).c[0]
    return rest * (1 / nrm)

  def __truediv__(self, other):
    if isinstance(other, (int, Fraction)):
      if not other:
        raise DivisionByZero("division by zero")
      return CycScalar._raw(self.n, tuple(x / other for x in self.c))
    if not isinstance(other, CycScalar):
      return NotImplemented
    return self * other.inverse()

  def __rtruediv__(self, other):
    return CycScalar.coerce(other) * self.inverse()

  def __pow__(self, k: int):
    if k < 0:
      return self.inverse() ** (-k)
    out = CycScalar.rational(1, self.n)
    base = self
    while k:
      if k & 1:
        out = out * base
      base = base * base
      k >>= 1
    return out

  # ---- predicates ---------------------------------------------------------
  def is_zero(self) -> bool:
    return not any(self.c)

  def __bool__(self):
    return any(self.c)

  def is_rational(self) -> bool:
    return not any(self.c[1:])

  def to_fraction(self) -> Fraction:
    if not self.is_rational():
      raise ValueError(f"{self} is not rational")
    return self.c[0]

  def __eq__(self, other):
    if isinstance(other, CycScalar) and other.n == self.n:
      return self.c == other.c
    try:
      a, b = self._align(other)
    except TypeError:
      return NotImplemented
    return a.c == b.c

  def __hash__(self):
    if self._h is None:
      if self.is_rational():
        self._h = hash(self.c[0])
      else:
        # the normalised trace does not depend on the conductor used
        tr = sum((self.galois(j).c[0] for j in _units(self.n)), _ZERO)
        self._h = hash((tr / len(_units(self.n)), "cyc"))
    return self._h

  def __repr__(self):
    return f"CycScalar({self.n}, {format_scalar(self)!r})"

  def __str__(self):
    return format_scalar(self)


def root_of_unity(n: int, k: int = 1) -> CycScalar:
  """zeta_n^k in canonical form."""
  if n < 1:
    raise ValueError("order must be positive")
  return CycScalar._raw(n, tuple(Fraction(v) for v in _powers(n)[k % n]))


def promote(a, m: int) -> CycScalar:
  """Express a (at conductor N) at conductor m, a multiple of N."""
  a = CycScalar.coerce(a)
  if m % a.n:
    raise ConductorMismatch(f"conductor {a.n} does not divide {m}")
  if m == a.n:
    return a
  step = m // a.n
  table = _powers(m)
  acc = [_ZERO] * len(table[0])
  for i, x in enumerate(a.c):
    if x:
      for t, v in enumerate(table[(i * step) % m]):
        if v:
          acc[t] += x * v
  return CycScalar._raw(m, tuple(acc))


def field_ops():
  """Names of the supported field operations (all are methods/operators)."""
  return ("add", "sub", "mul", "div", "neg", "inverse", "is_zero", "conjugate")


def is_root_of_unity(a) -> bool:
  a = CycScalar.coerce(a)
  if a.is_zero():
    return False
  order = _lcm(2, a.n)
  return a ** order == 1


def multiplicative_order(a) -> int:
  a = CycScalar.coerce(a)
  order = _lcm(2, a.n)
  if a.is_zero() or a ** order != 1:
    raise ValueError(f"{a} is not a root of unity")
  for d in range(1, order + 1):
    if order % d == 0 and a ** d == 1:
      return d
  return order


def nth_root(a, k: int):
  """Some b = +-q*z^t in the same field with b^k = a, or None."""
  a = CycScalar.coerce(a)
  for t in range(a.n):
    for sign in (1, -1):
      w = root_of_unity(a.n, t) * sign
      u = a / w ** k
      if u.is_rational():
        r = _rational_root(u.c[0], k)
        if r is not None:
          return w * r
  return None


def _rational_root(q: Fraction, k: int):
  if q < 0:
    return None
  num, den = q.numerator, q.denominator
  rn, rd = _int_root(num, k), _int_root(den, k)
  if rn is None or rd is None:
    return None
  return Fraction(rn, rd)


def _int_root(x: int, k: int):
  if x in (0, 1):
    return x
  r = round(x ** (1.0 / k))
  for c in (r - 1, r, r + 1):
    if c >= 0 and c ** k == x:
      return c
  return None


# ---- text format ------------------------------------------------------------

def format_scalar(a, conductor: int | None = None) -> str:
  """Render as a sum of 'p/q' and 'p/q*z^k' terms."""
  a = CycScalar.coerce(a)
  if conductor is not None:
    a = promote(a, conductor)
  terms = []
  for j, x in enumerate(a.c):
    if x:
      terms.append(str(x) if j == 0 else f"{x}*z^{j}")
  return " + ".join(terms) if terms else "0"


_TERM = re.compile(
    r"^(?:(?P<q>[+-]?\d+(?:/\d+)?)(?:\*z\^(?P<k1>-?\d+))?"
    r"|(?P<sgn>[+-]?)z\^(?P<k2>-?\d+))(?:@(?P<ord>\d+))?$")


def parse_scalar(text: str, conductor: int = 1) -> CycScalar:
  """Parse the text format.  'z^k@M' denotes zeta_M^k; bare 'z' means zeta_conductor."""
  if isinstance(text, (int, Fraction)):
    return CycScalar.rational(text, conductor)
  s = str(text).replace(" ", "")
  if not s:
    raise ValueError("empty scalar literal")
  parts = re.findall(r"[+-]?[^+-]+", s)
  total = CycScalar.rational(0, conductor)
  for part in parts:
    m = _TERM.match(part)
    if not m:
      raise ValueError(f"bad scalar literal: {text!r}")
    order = int(m.group("ord")) if m.group("ord") else conductor
    if m.group("q") is not None:
      coef = Fraction(m.group("q"))
      k = m.group("k1")
    else:
      coef = Fraction(-1 if m.group("sgn") == "-" else 1)
      k = m.group("k2")
    term = root_of_unity(order, int(k)) * coef if k is not None else CycScalar.rational(coef)
    if conductor % term.n:
      raise ConductorMismatch(
          f"literal {part!r} needs conductor {term.n}, session has {conductor}")
    total = total + promote(term, conductor)
  return total
