"""Exact univariate polynomial and rational-function arithmetic.

Every scalar is an arbitrary-precision rational (``fractions.Fraction``), so
all results in this module are exact; nothing here touches floating point.

A :class:`Poly` is a dense polynomial in one variable ``u``, stored as an
ascending coefficient tuple with no trailing zeros (the zero polynomial is
the empty tuple).  A :class:`RatFunc` is a reduced rational function
``num/den`` with ``gcd(num, den) = 1``; whenever ``den(0) != 0`` both parts
are scaled so that ``den(0) = 1``, which makes equality of rational
functions a plain structural comparison.  A :class:`PowerSeries` is a
truncated Taylor expansion that carries its truncation order explicitly.

Determinants of polynomial matrices use Bareiss fraction-free elimination
over integer polynomials (rows are cleared of denominators first), and
polynomial gcds use the subresultant pseudo-remainder sequence; both avoid
the coefficient blow-up of naive rational elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "Poly",
    "RatFunc",
    "PowerSeries",
    "PolyMatrix",
    "poly_gcd",
    "poly_det",
    "ratfunc_reduce",
    "ratfunc_pow",
    "series_expand",
    "log_derivative_series",
    "rational_to_json",
    "rational_from_json",
]


def rational_to_json(x: Fraction) -> int | str:
    """Serialize a rational as an int when integral, else as a "p/q" string."""
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_json(value: int | str) -> Fraction:
    """Parse the serialization produced by :func:`rational_to_json`."""
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"expected int or 'p/q' string, got {value!r}")
    return Fraction(value)


class Poly:
    """Dense univariate polynomial over the rationals.

    Coefficients are stored ascending: ``coeffs[i]`` multiplies ``u**i``.
    Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __neg__(self) -> Poly:
        return Poly([-c for c in self._coeffs])

    def __add__(self, other: Poly | Scalar) -> Poly:
        other = _as_poly(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other: Poly | Scalar) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Poly | Scalar) -> Poly:
        return _as_poly(other) + (-self)

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self._coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly | Scalar) -> tuple[Poly, Poly]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self._coeffs)
        dd, dv = len(rem) - 1, other.degree
        lead = other.leading()
        quot = [Fraction(0)] * max(dd - dv + 1, 0)
        for k in range(dd - dv, -1, -1):
            q = rem[dv + k] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other._coeffs):
                    rem[k + j] -= q * c
        return Poly(quot), Poly(rem[:dv] if dv > 0 else [])

    def __floordiv__(self, other: Poly | Scalar) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly | Scalar) -> Poly:
        return divmod(self, other)[1]

    def __truediv__(self, other: Poly | Scalar) -> Poly:
        """Exact division; raises if the division leaves a remainder."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Poly([c / other for c in self._coeffs])
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def __call__(self, x):
        """Evaluate by Horner's rule; exact when ``x`` is int or Fraction."""
        acc = x * 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly([i * c for i, c in enumerate(self._coeffs)][1:])

    def monic(self) -> Poly:
        if self.is_zero():
            raise ValueError("zero polynomial cannot be made monic")
        return self / self.leading()

    def to_json(self) -> list[int | str]:
        return [rational_to_json(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Sequence[int | str]) -> Poly:
        return cls([rational_from_json(v) for v in data])

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*u")
            else:
                terms.append(f"{c}*u^{i}")
        return f"Poly({' + '.join(terms)})"


ZERO = Poly()
ONE = Poly([1])
U = Poly([0, 1])


def _as_poly(value: Poly | Scalar) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly([value])


# ---------------------------------------------------------------------------
# Integer-coefficient internals shared by the determinant and gcd routines.
# An integer polynomial is a plain list of ints, ascending, trailing nonzero.
# ---------------------------------------------------------------------------


def _ztrim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _zmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ztrim(out)


def _zsub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] -= y
    return _ztrim(out)


def _zdiv_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact division in Z[u]; the caller guarantees divisibility."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    rem = list(a)
    db, lb = len(b) - 1, b[-1]
    dq = len(rem) - 1 - db
    if dq < 0:
        raise ValueError("inexact polynomial division")
    quot = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[db + k]
        if c % lb:
            raise ValueError("inexact polynomial division")
        q = c // lb
        quot[k] = q
        if q:
            for j, y in enumerate(b):
                rem[k + j] -= q * y
    if any(rem):
        raise ValueError("inexact polynomial division")
    return _ztrim(quot)


def _zcontent(p: list[int]) -> int:
    g = 0
    for c in p:
        g = _int_gcd(g, abs(c))
    return g


def _zprimitive(p: list[int]) -> list[int]:
    g = _zcontent(p)
    if g <= 1:
        return list(p)
    return [c // g for c in p]


def _to_int_poly(p: Poly) -> tuple[list[int], int]:
    """Clear denominators: returns (integer coefficients, common multiplier)."""
    mult = 1
    for c in p.coeffs:
        mult = mult * c.denominator // _int_gcd(mult, c.denominator)
    return [int(c * mult) for c in p.coeffs], mult


def _zprem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of lc(g)**(deg f - deg g + 1) * f modulo g."""
    dg, lg = len(g) - 1, g[-1]
    rem = list(f)
    steps = len(f) - len(g) + 1
    while rem and len(rem) - 1 >= dg:
        lr, dr = rem[-1], len(rem) - 1
        rem = [lg * c for c in rem]
        for j, y in enumerate(g):
            rem[dr - dg + j] -= lr * y
        _ztrim(rem)
        steps -= 1
    if steps > 0:
        scale = lg**steps
        rem = [scale * c for c in rem]
    return rem


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the subresultant remainder sequence."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return ONE
    f, _ = _to_int_poly(a)
    g, _ = _to_int_poly(b)
    f, g = _zprimitive(f), _zprimitive(g)
    if len(f) < len(g):
        f, g = g, f
    gg, h = 1, 1
    while True:
        d = len(f) - len(g)
        rem = _zprem(f, g)
        if not rem:
            break
        if len(rem) == 1:
            return ONE
        divisor = gg * h**d
        f, g = g, [c // divisor for c in rem]
        gg = f[-1]
        h = h if d == 0 else (gg**d if d == 1 else gg**d // h ** (d - 1))
    return Poly(_zprimitive(g)).monic()


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function num/den, canonical once den(0) is nonzero."""

    num: Poly
    den: Poly

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def is_one(self) -> bool:
        return self.num == ONE and self.den == ONE

    def __mul__(self, other: RatFunc) -> RatFunc:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_reduce(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RatFunc) -> RatFunc:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_reduce(self.num * other.den, self.den * other.num)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> RatFunc:
        return ratfunc_reduce(Poly.from_json(data["num"]), Poly.from_json(data["den"]))

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r} / {self.den!r})"


def ratfunc_reduce(num: Poly, den: Poly) -> RatFunc:
    """Reduce num/den to lowest terms and normalize so that den(0) = 1.

    When the denominator vanishes at 0 (never the case for zeta functions),
    the denominator is made monic instead, so reduction stays canonical.
    """
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return RatFunc(ZERO, ONE)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num / g, den / g
    scale = den(Fraction(0))
    if scale == 0:
        scale = den.leading()
    return RatFunc(num / scale, den / scale)


def ratfunc_pow(f: RatFunc, c: int) -> RatFunc:
    """Exact c-th power of a reduced rational function, c >= 1.

    Powers preserve reducedness (gcd(num, den) = 1 implies the same for the
    powers), so no gcd is recomputed.
    """
    if c < 1:
        raise ValueError("exponent must be a positive integer")
    return RatFunc(f.num**c, f.den**c)


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series with an explicit truncation order.

    ``coeffs[m]`` is the coefficient of ``u**m`` for m = 0..order.
    """

    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must equal order + 1")

    @classmethod
    def of(cls, coeffs: Iterable[Scalar], order: int | None = None) -> PowerSeries:
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs), order)

    def __getitem__(self, m: int) -> Fraction:
        if m < 0 or m > self.order:
            raise IndexError(f"coefficient {m} beyond truncation order {self.order}")
        return self.coeffs[m]

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return PowerSeries(tuple(out), order)

    def __add__(self, other: PowerSeries) -> PowerSeries:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return PowerSeries(
            tuple(self.coeffs[m] + other.coeffs[m] for m in range(order + 1)), order
        )

    def to_json(self) -> list[int | str]:
        return [rational_to_json(c) for c in self.coeffs]


def _series_div(num: Poly, den: Poly, order: int) -> PowerSeries:
    d0 = den(Fraction(0))
    if d0 == 0:
        raise ZeroDivisionError("series expansion at a pole of the function")
    out = [Fraction(0)] * (order + 1)
    dcs = den.coeffs
    for m in range(order + 1):
        acc = num[m]
        for i in range(1, min(m, len(dcs) - 1) + 1):
            if dcs[i]:
                acc -= dcs[i] * out[m - i]
        out[m] = acc / d0
    return PowerSeries(tuple(out), order)


def series_expand(f: RatFunc, order: int) -> PowerSeries:
    """Taylor coefficients of f at 0 through ``order``.

    Uses the linear recurrence induced by the denominator, so the cost is
    O(order * deg den) exact operations.
    """
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    return _series_div(f.num, f.den, order)


def log_derivative_series(z: RatFunc, order: int) -> PowerSeries:
    """Coefficients of u*Z'(u)/Z(u) through ``order``; requires Z(0) = 1.

    The m-th coefficient equals m times the u**m coefficient of log Z, which
    is the geodesic-counting sequence when Z is a graph zeta function.
    """
    if z.num(Fraction(0)) != 1 or z.den(Fraction(0)) != 1:
        raise ValueError("logarithmic derivative requires Z(0) = 1")
    num = U * (z.num.derivative() * z.den - z.den.derivative() * z.num)
    den = z.num * z.den
    return _series_div(num, den, order)


class PolyMatrix:
    """Square matrix of polynomials; rows are tuples of :class:`Poly`."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable[Poly | Scalar]]):
        rs = tuple(tuple(_as_poly(e) for e in row) for row in rows)
        n = len(rs)
        for row in rs:
            if len(row) != n:
                raise ValueError("polynomial matrix must be square")
        self.n = n
        self.rows = rs

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, n: int) -> PolyMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __repr__(self) -> str:
        return f"PolyMatrix(n={self.n})"


def poly_det(matrix: PolyMatrix) -> Poly:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Each row is first multiplied by the lcm of its coefficient denominators
    so the elimination runs over integer polynomials; the final determinant
    is divided by the accumulated row multipliers.  Intermediate entries are
    minors of the scaled matrix, so every division is exact.
    """
    n = matrix.n
    if n == 0:
        return ONE
    scale = 1
    rows: list[list[list[int]]] = []
    for row in matrix.rows:
        mult = 1
        for p in row:
            for c in p.coeffs:
                mult = mult * c.denominator // _int_gcd(mult, c.denominator)
        scale *= mult
        rows.append([_ztrim([int(c * mult) for c in p.coeffs]) for p in row])
    sign = 1
    prev: list[int] = [1]
    for k in range(n - 1):
        pivot_row = next((r for r in range(k, n) if rows[r][k]), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            for j in range(k + 1, n):
                num = _zsub(_zmul(pivot, rows[i][j]), _zmul(rik, rows[k][j]))
                rows[i][j] = _zdiv_exact(num, prev)
            rows[i][k] = []
        prev = pivot
    det = rows[n - 1][n - 1]
    if sign < 0:
        det = [-c for c in det]
    return Poly(det) / scale
