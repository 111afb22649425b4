"""Graded dimension pipelines for free and free restricted Lie algebras.

The generalized pipeline takes a profile of free homogeneous generators,
forms the enveloping series ``1/(1 - sum r_i t^i)``, takes its logarithm
``b`` and Möbius-inverts ``n*b_n`` to get the Lie dimensions ``w_n``.
Restricted dimensions telescope over p-power divisors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, InvariantError, UsageError, ValidationError
from .numkit import TruncSeries, divisors, moebius, p_adic_split, series_inverse, series_log

__all__ = [
    "DimSeq",
    "GenProfile",
    "GrowthRoot",
    "witt_dim",
    "restricted_dim",
    "witt_dims",
    "restricted_dims",
    "free_graded_lie_dims",
    "restricted_from_ordinary",
    "lie_dims_from_log",
    "dominant_root",
    "cumulative",
    "is_prime",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")


@dataclass(frozen=True)
class DimSeq:
    """Dimensions of the homogeneous components in degrees ``1..N``.

    Indexing is by degree: ``seq[1]`` is the degree-one dimension.
    Iteration yields the values in degree order.
    """

    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        if any(v < 0 for v in vals):
            raise ValidationError(f"dimensions must be nonnegative: {vals}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, n: int) -> DimSeq:
        return cls([0] * n)

    @property
    def max_degree(self) -> int:
        return len(self.values)

    def __getitem__(self, degree: int) -> int:
        if not 1 <= degree <= len(self.values):
            raise IndexError(f"degree {degree} outside 1..{len(self.values)}")
        return self.values[degree - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def truncate(self, n: int) -> DimSeq:
        if n > len(self.values):
            raise UsageError(f"cannot extend a sequence of horizon {len(self.values)} to {n}")
        return DimSeq(self.values[:n])

    def as_list(self) -> list[int]:
        return list(self.values)


@dataclass(frozen=True)
class GenProfile:
    """Number ``r_i`` of free homogeneous generators in each degree ``i``."""

    entries: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for deg, count in sorted(dict(self.entries).items()):
            deg, count = int(deg), int(count)
            if deg < 1:
                raise ValidationError(f"generator degree must be >= 1, got {deg}")
            if count < 0:
                raise ValidationError(f"generator count must be >= 0, got {count}")
            if count:
                clean[deg] = count
        object.__setattr__(self, "entries", clean)

    @classmethod
    def parse(cls, text: str) -> GenProfile:
        """Parse ``"2:1,3:2"`` (degree:count pairs)."""
        entries: dict[int, int] = {}
        text = text.strip()
        if not text:
            return cls({})
        for chunk in text.split(","):
            try:
                deg, count = chunk.split(":")
                deg_i, count_i = int(deg), int(count)
            except ValueError:
                raise ValidationError(f"bad profile entry {chunk!r}; expected degree:count") from None
            entries[deg_i] = entries.get(deg_i, 0) + count_i
        return cls(entries)

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> GenProfile:
        entries: dict[int, int] = {}
        for deg in degrees:
            entries[deg] = entries.get(deg, 0) + 1
        return cls(entries)

    @property
    def top_degree(self) -> int:
        """Largest degree carrying a generator (``e``); 0 for the empty profile."""
        return max(self.entries, default=0)

    @property
    def rank(self) -> int:
        return sum(self.entries.values())

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __str__(self) -> str:
        return ",".join(f"{d}:{c}" for d, c in self.entries.items())


@dataclass(frozen=True)
class GrowthRoot:
    lam: float
    residual_bound: float
    lower: Fraction
    upper: Fraction
    exact: bool


def witt_dim(d: int, n: int) -> int:
    """Dimension of the degree-``n`` part of the free Lie algebra of rank ``d``."""
    if d < 1 or n < 1:
        raise DomainError(f"witt_dim needs d >= 1 and n >= 1, got d={d}, n={n}")
    total = sum(moebius(l) * d ** (n // l) for l in divisors(n))
    q, r = divmod(total, n)
    if r:
        raise InvariantError(f"Witt sum {total} not divisible by n={n} (d={d})")
    return q


def restricted_dim(d: int, p: int, n: int) -> int:
    """Dimension of the degree-``n`` part of the free restricted Lie algebra."""
    _require_prime(p)
    j, m = p_adic_split(n, p)
    return sum(witt_dim(d, n // p**i) for i in range(j + 1))


def witt_dims(d: int, N: int) -> DimSeq:
    return DimSeq(witt_dim(d, n) for n in range(1, N + 1))


def restricted_dims(d: int, p: int, N: int) -> DimSeq:
    return DimSeq(restricted_dim(d, p, n) for n in range(1, N + 1))


def lie_dims_from_log(b: Sequence[Fraction], N: int) -> list[int]:
    """Möbius-invert ``n*b_n = sum_{m|n} m*w_m`` for ``w_1..w_N``.

    ``b`` is indexed from degree 0.  Every ``w_n`` must come out as a
    nonnegative integer; anything else raises :class:`InvariantError`.
    """
    out = []
    for n in range(1, N + 1):
        acc = sum((moebius(n // m) * m * Fraction(b[m]) for m in divisors(n)), Fraction(0))
        w = acc / n
        if w.denominator != 1:
            raise InvariantError(f"w_{n} = {w} is not an integer")
        if w < 0:
            raise InvariantError(f"w_{n} = {w} is negative")
        out.append(w.numerator)
    return out


def free_graded_lie_dims(profile: GenProfile, N: int) -> DimSeq:
    """Graded dimensions of the free Lie algebra on the generators in ``profile``."""
    if not profile:
        raise ValidationError("free_graded_lie_dims needs a nonempty profile")
    denom = TruncSeries({0: 1, **{i: -r for i, r in profile.entries.items()}}, N)
    b = series_log(series_inverse(denom))
    return DimSeq(lie_dims_from_log(b.coeffs, N))


def restricted_from_ordinary(w: DimSeq | Sequence[int], p: int, N: int | None = None) -> DimSeq:
    """``c_n = w_m + w_{pm} + ... + w_{p^k m}`` for ``n = p^k m``, ``p`` not dividing ``m``."""
    _require_prime(p)
    w = DimSeq(w) if not isinstance(w, DimSeq) else w
    N = len(w) if N is None else N
    if N > len(w):
        raise UsageError(f"sequence covers {len(w)} degrees, asked for {N}")
    out = []
    for n in range(1, N + 1):
        k, m = p_adic_split(n, p)
        out.append(sum(w[m * p**i] for i in range(k + 1)))
    return DimSeq(out)


def _profile_poly_sign(profile: GenProfile, t: Fraction) -> int:
    e = profile.top_degree
    val = t**e - sum(r * t ** (e - i) for i, r in profile.entries.items())
    return (val > 0) - (val < 0)


def dominant_root(profile: GenProfile, tol: float = 1e-12) -> GrowthRoot:
    """Unique positive real root of ``t^e - sum r_i t^(e-i)``.

    Bisection with exact rational sign tests on a dyadic bracket, so roots
    that are dyadic rationals (e.g. integers) are found exactly.
    """
    if not profile:
        raise ValidationError("dominant_root needs a nonempty profile")
    if tol <= 0:
        raise DomainError("tol must be positive")
    bound = 1 + profile.rank
    hi = Fraction(1 << max(0, (bound - 1).bit_length()))
    lo = Fraction(0)
    if _profile_poly_sign(profile, hi) == 0:
        return GrowthRoot(float(hi), 0.0, hi, hi, True)
    tol_q = Fraction(tol)
    while hi - lo > tol_q:
        mid = (lo + hi) / 2
        s = _profile_poly_sign(profile, mid)
        if s == 0:
            return GrowthRoot(float(mid), 0.0, mid, mid, True)
        if s < 0:
            lo = mid
        else:
            hi = mid
    lam = float((lo + hi) / 2)
    return GrowthRoot(lam, float(hi - lo), lo, hi, False)


def cumulative(seq: DimSeq | Sequence[int]) -> DimSeq:
    """Prefix sums ``l(n) = sum_{m <= n} seq(m)``."""
    out, acc = [], 0
    for v in seq:
        acc += v
        out.append(acc)
    return DimSeq(out)

