"""Exact arithmetic substrate: Möbius function and truncated power series.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator); integers are Python ints, so nothing here overflows.

A :class:`TruncSeries` carries its truncation order explicitly.  Combining
series of different orders is an error rather than a silent re-truncation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, UsageError

__all__ = [
    "moebius",
    "divisors",
    "p_adic_split",
    "TruncSeries",
    "series_mul",
    "series_inverse",
    "series_log",
    "series_pow",
    "jennings_product",
]


def moebius(n: int) -> int:
    """Classical Möbius function."""
    if n < 1:
        raise DomainError(f"moebius needs n >= 1, got {n}")
    result = 1
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            m //= q
            if m % q == 0:
                return 0
            result = -result
        q += 1
    if m > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise DomainError(f"divisors needs n >= 1, got {n}")
    small, large = [], []
    q = 1
    while q * q <= n:
        if n % q == 0:
            small.append(q)
            if q * q != n:
                large.append(n // q)
        q += 1
    return small + large[::-1]


def p_adic_split(n: int, p: int) -> tuple[int, int]:
    """Return ``(j, m)`` with ``n = p**j * m`` and ``p`` not dividing ``m``."""
    if n < 1:
        raise DomainError(f"p_adic_split needs n >= 1, got {n}")
    j = 0
    while n % p == 0:
        n //= p
        j += 1
    return j, n


class TruncSeries:
    """Power series ``sum c_k t^k`` known exactly up to degree ``order``."""

    __slots__ = ("_order", "_coeffs")

    def __init__(self, coeffs: Iterable[int | Fraction] | Mapping[int, int | Fraction], order: int):
        if order < 0:
            raise DomainError(f"truncation order must be >= 0, got {order}")
        data = [Fraction(0)] * (order + 1)
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        for k, c in items:
            if k < 0:
                raise DomainError("negative degree in series coefficients")
            if k <= order:
                data[k] = Fraction(c)
        self._order = order
        self._coeffs = tuple(data)

    @classmethod
    def one(cls, order: int) -> TruncSeries:
        return cls([1], order)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self._coeffs[k]

    def __len__(self) -> int:
        return self._order + 1

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._order, self._coeffs))

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self._coeffs)
        return f"TruncSeries([{body}], order={self._order})"

    def _check(self, other: TruncSeries) -> None:
        if not isinstance(other, TruncSeries):
            raise UsageError(f"expected TruncSeries, got {type(other).__name__}")
        if other._order != self._order:
            raise UsageError(f"mismatched truncation orders {self._order} and {other._order}")

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self._coeffs, other._coeffs)], self._order)

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self._coeffs, other._coeffs)], self._order)

    def __neg__(self) -> TruncSeries:
        return TruncSeries([-a for a in self._coeffs], self._order)

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        return series_mul(self, other)

    def scale(self, c: int | Fraction) -> TruncSeries:
        c = Fraction(c)
        return TruncSeries([c * a for a in self._coeffs], self._order)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def as_ints(self) -> list[int]:
        """Coefficients as ints; raises if any coefficient is not integral."""
        if not self.is_integral():
            raise DomainError("series has non-integral coefficients")
        return [c.numerator for c in self._coeffs]


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common order."""
    a._check(b)
    n = a.order
    ac, bc = a.coeffs, b.coeffs
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(ac):
        if not x:
            continue
        for j in range(n + 1 - i):
            y = bc[j]
            if y:
                out[i + j] += x * y
    return TruncSeries(out, n)


def series_inverse(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if a[0] != 1:
        raise DomainError(f"series_inverse needs constant term 1, got {a[0]}")
    n = a.order
    ac = a.coeffs
    out = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        out[k] = -sum((ac[i] * out[k - i] for i in range(1, k + 1) if ac[i]), Fraction(0))
    return TruncSeries(out, n)


def series_log(a: TruncSeries) -> TruncSeries:
    """Formal logarithm of a series with constant term 1.

    Uses ``log(a)' = a'/a``, which agrees with the expansion of
    ``log(1 + X)`` in ``X = a - 1`` coefficient by coefficient.
    """
    if a[0] != 1:
        raise DomainError(f"series_log needs constant term 1, got {a[0]}")
    n = a.order
    if n == 0:
        return TruncSeries([0], 0)
    ac = a.coeffs
    inv = series_inverse(a).coeffs
    # coefficient of t^(k-1) in a' * a^{-1}, divided by k
    out = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if ac[i]:
                acc += i * ac[i] * inv[k - i]
        out[k] = acc / k
    return TruncSeries(out, n)


def series_pow(a: TruncSeries, k: int) -> TruncSeries:
    """``a**k`` for a nonnegative integer ``k`` by repeated squaring."""
    if k < 0:
        raise DomainError("series_pow needs a nonnegative exponent")
    result = TruncSeries.one(a.order)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def jennings_product(c: Sequence[int], p: int, order: int) -> TruncSeries:
    """Expand ``prod_n ((1 - t^(np)) / (1 - t^n))^(c_n)`` up to ``t^order``.

    ``c`` lists ``c_1, c_2, ...``; it must cover every degree up to ``order``.
    This is the Hilbert series of the restricted enveloping algebra of a
    graded restricted Lie algebra with dimensions ``c``.
    """
    if len(c) < order:
        raise UsageError(f"dimension sequence covers {len(c)} degrees, need {order}")
    result = TruncSeries.one(order)
    for n in range(1, order + 1):
        cn = c[n - 1]
        if cn < 0:
            raise DomainError("dimensions must be nonnegative")
        if cn == 0:
            continue
        # (1 - t^{np})/(1 - t^n) = 1 + t^n + ... + t^{n(p-1)}
        factor = TruncSeries({n * i: 1 for i in range(p)}, order)
        result = series_mul(result, series_pow(factor, cn))
    return result
