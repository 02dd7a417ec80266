"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Rational values are carried as plain ``int``/``Fraction`` wherever possible;
:class:`CycScalar` is used once a root of unity is involved.  All three kinds
mix freely in arithmetic, and the helpers here (:func:`as_cyc`,
:func:`inverse`, :func:`classify`) accept any of them.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence, Union

__all__ = [
    "CycScalar",
    "Scalar",
    "cyclotomic_poly",
    "totient",
    "reduce",
    "lift_conductor",
    "classify",
    "Classification",
    "as_cyc",
    "inverse",
    "divide",
    "conductor_of",
    "format_scalar",
    "parse_scalar",
    "zeta",
]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, index = power; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for t, dc in enumerate(den):
                num[k + t] -= c * dc
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k = coordinates of zeta_n**k (0 <= k < n) in the power basis."""
    phi = totient(n)
    cyc = cyclotomic_poly(n)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by zeta: shift then reduce the top coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * cyc[t] for t, c in enumerate(cur)]
    return tuple(rows)


@lru_cache(maxsize=None)
def _power_traces(n: int) -> tuple[int, ...]:
    # Tr(zeta_n**k) over Q is the Ramanujan sum c_n(k)
    phi = totient(n)
    out = []
    for k in range(n):
        m = n // math.gcd(k, n)
        out.append(_moebius(m) * phi // totient(m))
    return tuple(out)


def _moebius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


class CycScalar:
    """Element of Q(zeta_N) in the reduced power basis 1, z, ..., z^(phi(N)-1)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        phi = totient(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            coeffs = reduce(coeffs, conductor).coeffs
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple) -> "CycScalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "conductor", conductor)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def rational(cls, value, conductor: int = 1) -> "CycScalar":
        phi = totient(conductor)
        return cls._raw(conductor, (Fraction(value),) + (Fraction(0),) * (phi - 1))

    # -- predicates -------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # -- arithmetic -------------------------------------------------------
    def _common(self, other) -> tuple["CycScalar", "CycScalar"] | None:
        if isinstance(other, CycScalar):
            if other.conductor == self.conductor:
                return self, other
            m = math.lcm(self.conductor, other.conductor)
            return lift_conductor(self, m), lift_conductor(other, m)
        if isinstance(other, (int, Fraction)):
            return self, CycScalar.rational(other, self.conductor)
        return None

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycScalar._raw(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycScalar._raw(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycScalar._raw(self.conductor, tuple(x * other for x in self.coeffs))
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        n = a.conductor
        phi = len(a.coeffs)
        raw = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] += x * y
        return reduce(raw, n)

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycScalar.rational(1 / self.coeffs[0], self.conductor)
        n, phi = self.conductor, len(self.coeffs)
        # columns: coordinates of self * z^k; solve M y = e_0
        cols = []
        cur = self
        z = zeta(n)
        for _ in range(phi):
            cols.append(cur.coeffs)
            cur = cur * z
        from .linalg import solve

        mat = [[cols[k][r] for k in range(phi)] for r in range(phi)]
        rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        y = solve(mat, rhs)
        return CycScalar._raw(n, tuple(Fraction(v) for v in y))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycScalar._raw(self.conductor, tuple(x / other for x in self.coeffs))
        if isinstance(other, CycScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycScalar.rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycScalar):
            if other.conductor == self.conductor:
                return self.coeffs == other.coeffs
            a, b = self._common(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def normalized_trace(self) -> Fraction:
        """Tr(x)/[Q(x-field):Q]; independent of the conductor used."""
        traces = _power_traces(self.conductor)
        total = sum((c * traces[i] for i, c in enumerate(self.coeffs) if c), Fraction(0))
        return total / len(self.coeffs)

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(("cyc", self.normalized_trace()))

    def __repr__(self):
        return f"CycScalar({self.conductor}, {format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, CycScalar]


def zeta(n: int) -> CycScalar:
    """The primitive root zeta_n as a CycScalar of conductor n."""
    if n <= 2:
        return CycScalar.rational(1 if n == 1 else -1, n)
    return CycScalar._raw(n, tuple(Fraction(c) for c in _power_table(n)[1]))


def reduce(raw_poly: Sequence, conductor: int) -> CycScalar:
    """Canonical representative of a polynomial in zeta_N (coefficients low-first)."""
    n = conductor
    if n < 1:
        raise ValueError("conductor must be positive")
    phi = totient(n)
    table = _power_table(n)
    out = [Fraction(0)] * phi
    for k, c in enumerate(raw_poly):
        if not c:
            continue
        c = Fraction(c)
        if k < phi:
            out[k] += c
        else:
            row = table[k % n]
            for t, r in enumerate(row):
                if r:
                    out[t] += c * r
    return CycScalar._raw(n, tuple(out))


def lift_conductor(x: Scalar, m: int) -> CycScalar:
    """Express ``x`` in Q(zeta_m); requires the conductor of ``x`` to divide ``m``."""
    if not isinstance(x, CycScalar):
        return CycScalar.rational(x, m)
    n = x.conductor
    if m % n:
        raise ValueError(f"conductor {n} does not divide {m}")
    if m == n:
        return x
    step = m // n
    raw = [Fraction(0)] * (step * (len(x.coeffs) - 1) + 1)
    for k, c in enumerate(x.coeffs):
        raw[k * step] = c
    return reduce(raw, m)


def conductor_of(x: Scalar) -> int:
    return x.conductor if isinstance(x, CycScalar) else 1


def as_cyc(x: Scalar, conductor: int | None = None) -> CycScalar:
    if isinstance(x, CycScalar):
        return x if conductor is None else lift_conductor(x, math.lcm(conductor, x.conductor))
    return CycScalar.rational(x, conductor or 1)


def inverse(x: Scalar) -> Scalar:
    if isinstance(x, CycScalar):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return Fraction(1) / Fraction(x)


def divide(a: Scalar, b: Scalar) -> Scalar:
    """Exact a/b; never produces a float."""
    if isinstance(a, CycScalar) or isinstance(b, CycScalar):
        return a * inverse(b)
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


class Classification(NamedTuple):
    rational: bool
    rational_integer: bool
    algebraic_integer: bool


def classify(x: Scalar) -> Classification:
    if isinstance(x, int):
        return Classification(True, True, True)
    if isinstance(x, Fraction):
        return Classification(True, x.denominator == 1, x.denominator == 1)
    rat = x.is_rational()
    alg = all(c.denominator == 1 for c in x.coeffs)
    return Classification(rat, rat and x.coeffs[0].denominator == 1, alg)


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """Render as ``a/b`` or ``c0 + c1*zN + c2*zN^2 ...``."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return _fmt_rat(x)
    if x.is_rational():
        return _fmt_rat(x.coeffs[0])
    parts: list[str] = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = _fmt_rat(mag)
        else:
            z = f"z{x.conductor}" + (f"^{k}" if k > 1 else "")
            body = z if mag == 1 else f"{_fmt_rat(mag)}*{z}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(\*)?\s*)?(?:z(\d+)(?:\^(\d+))?)?\s*"
)


def parse_scalar(text: str, conductor: int | None = None) -> Scalar:
    """Inverse of :func:`format_scalar`.

    Rational inputs come back as ``int``/``Fraction`` unless ``conductor``
    is given, in which case the result is always a CycScalar of that
    conductor (or a multiple, if the text names a larger root of unity).
    """
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    terms: list[tuple[Fraction, int, int]] = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r} at column {pos + 1}")
        sign, num, star, zn, power = m.groups()
        if num is None and zn is None:
            raise ValueError(f"cannot parse scalar {text!r} at column {pos + 1}")
        if star and zn is None:
            raise ValueError(f"dangling '*' in scalar {text!r}")
        if terms and sign is None:
            raise ValueError(f"missing operator in scalar {text!r} at column {pos + 1}")
        c = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        n = int(zn) if zn is not None else 1
        k = int(power) if power is not None else (1 if zn is not None else 0)
        terms.append((c, n, k))
        pos = m.end()
    n_all = math.lcm(*(t[1] for t in terms), conductor or 1)
    if n_all == 1 and conductor is None:
        q = sum((t[0] for t in terms), Fraction(0))
        return q.numerator if q.denominator == 1 else q
    raw: dict[int, Fraction] = {}
    for c, n, k in terms:
        e = (k * (n_all // n)) % n_all
        raw[e] = raw.get(e, Fraction(0)) + c
    poly = [Fraction(0)] * (max(raw) + 1)
    for e, c in raw.items():
        poly[e] += c
    return reduce(poly, n_all)
