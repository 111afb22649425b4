"""Demushkin groups: presentation catalog and graded dimension pipelines.

The restricted Lie algebra of a Demushkin group with ``d`` generators is
``R/J`` where ``J`` is the restricted ideal of one homogeneous quadratic
relator.  Its enveloping algebra has Hilbert series ``1/(1 - d t + t^2)``,
whose logarithm has coefficients ``b_n = s_n / n`` with the integer power
sums ``s_0 = 2, s_1 = d, s_n = d s_{n-1} - s_{n-2}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .density import DensityReport, fg_density_report
from .errors import ValidationError
from .hallbasis import AlgebraElement, GradedEchelon, Mode, closure, format_expr, parse_expr, to_associative
from .hallbasis.closure import check_resource
from .numkit import TruncSeries, series_inverse
from .witt import (
    DimSeq,
    GenProfile,
    dominant_root,
    is_prime,
    lie_dims_from_log,
    restricted_dims,
    restricted_from_ordinary,
)

__all__ = [
    "CASES",
    "INFINITY",
    "DemushkinPresentation",
    "EpsilonPair",
    "QuotientCheck",
    "make_presentation",
    "enveloping_dims",
    "enveloping_series",
    "power_sums",
    "demushkin_w",
    "demushkin_lie_dims",
    "epsilon",
    "quotient_dims_bruteforce",
    "relator_quotient_dims",
    "associative_quotient_dims",
    "fg_subalgebra_density_profile",
]

CASES = ("genericEven", "oddP2", "evenP2a", "evenP2b")
INFINITY = math.inf


@dataclass(frozen=True)
class DemushkinPresentation:
    d: int
    p: int
    f: int | float
    case: str
    group_relator: str
    graded_relator: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "p": self.p,
            "f": "inf" if self.f == INFINITY else self.f,
            "case": self.case,
            "group_relator": self.group_relator,
            "graded_relator": self.graded_relator,
        }


def _parse_f(f: int | float | str) -> int | float:
    if isinstance(f, str):
        if f.strip().lower() in ("inf", "infinity", "oo"):
            return INFINITY
        try:
            return int(f)
        except ValueError:
            raise ValidationError(f"f must be a positive integer or 'inf', got {f!r}") from None
    if f == INFINITY:
        return INFINITY
    if isinstance(f, float) and not f.is_integer():
        raise ValidationError(f"f must be an integer or infinity, got {f}")
    return int(f)


def _commutators(pairs: range) -> str:
    return "".join(f"[x{i},x{i + 1}]" for i in pairs)


def _lie_commutators(pairs: range) -> list[str]:
    return [f"[x{i},x{i + 1}]" for i in pairs]


def make_presentation(d: int, p: int, f: int | float | str, case: str) -> DemushkinPresentation:
    """Validated one-relator presentation for the chosen case.

    ``f`` may be infinite (``"inf"``), in which case ``p^f`` reads as 0 and
    the corresponding power drops out of the group relator.
    """
    f = _parse_f(f)
    if case not in CASES:
        raise ValidationError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    if d < 3:
        raise ValidationError(f"d >= 3 required, got d={d}")
    if not is_prime(p):
        raise ValidationError(f"p must be prime, got p={p}")
    if f != INFINITY and f < 1:
        raise ValidationError(f"f must be >= 1 or infinite, got f={f}")
    finite = f != INFINITY

    if case == "genericEven":
        if d % 2:
            raise ValidationError(f"genericEven needs d even, got d={d}")
        if finite and p**f == 2:
            raise ValidationError("p^f = 2 forbidden in genericEven")
        power = f"x1^{p**f}" if finite else ""
        group = power + _commutators(range(1, d, 2))
        graded = " + ".join(_lie_commutators(range(1, d, 2)))
    elif case == "oddP2":
        if d % 2 == 0:
            raise ValidationError(f"oddP2 needs d odd, got d={d}")
        if p != 2:
            raise ValidationError(f"oddP2 needs p = 2, got p={p}")
        if finite and f < 2:
            raise ValidationError(f"oddP2 needs f >= 2 or infinite, got f={f}")
        group = "x1^2" + (f"x2^{2**f}" if finite else "") + _commutators(range(2, d, 2))
        graded = " + ".join(["P(x1)"] + _lie_commutators(range(2, d, 2)))
    else:
        if d % 2:
            raise ValidationError(f"{case} needs d even, got d={d}")
        if p != 2:
            raise ValidationError(f"{case} needs p = 2, got p={p}")
        if case == "evenP2b" and not finite:
            raise ValidationError("evenP2b needs a finite f >= 2")
        if finite and f < 2:
            raise ValidationError(f"{case} needs f >= 2, got f={f}")
        if case == "evenP2a":
            group = f"x1^{2 + 2**f if finite else 2}" + _commutators(range(1, d, 2))
        else:
            group = "x1^2[x1,x2]" + f"x3^{2**f}" + _commutators(range(3, d, 2))
        graded = " + ".join(["P(x1)"] + _lie_commutators(range(1, d, 2)))
    graded = format_expr(parse_expr(graded, p=p, d=d))
    return DemushkinPresentation(d, p, f, case, group, graded)


def enveloping_dims(d: int, N: int) -> list[int]:
    """``a_0..a_N`` of ``1/(1 - d t + t^2)``: ``a_0 = 1``, ``a_1 = d``, ``a_n = d a_{n-1} - a_{n-2}``."""
    if d < 3:
        raise ValidationError(f"d >= 3 required, got d={d}")
    a = [1, d][: N + 1]
    while len(a) < N + 1:
        a.append(d * a[-1] - a[-2])
    return a


def enveloping_series(d: int, N: int) -> TruncSeries:
    """Same coefficients, obtained by inverting ``1 - d t + t^2`` as a series."""
    return series_inverse(TruncSeries({0: 1, 1: -d, 2: 1}, N))


def power_sums(d: int, N: int) -> list[int]:
    """``s_n = (d - eps)^n + eps^n`` for ``n = 0..N``, exactly."""
    s = [2, d][: N + 1]
    while len(s) < N + 1:
        s.append(d * s[-1] - s[-2])
    return s


def demushkin_w(d: int, N: int) -> DimSeq:
    """Lie dimensions ``w_n`` from ``b_n = s_n / n``; integrality is enforced."""
    if d < 3:
        raise ValidationError(f"d >= 3 required, got d={d}")
    s = power_sums(d, N)
    b = [Fraction(0)] + [Fraction(s[n], n) for n in range(1, N + 1)]
    return DimSeq(lie_dims_from_log(b, N))


def demushkin_lie_dims(d: int, p: int, N: int) -> DimSeq:
    """Dimensions ``c_n`` of the graded restricted Lie algebra of a Demushkin group."""
    return restricted_from_ordinary(demushkin_w(d, N), p, N)


@dataclass(frozen=True)
class EpsilonPair:
    epsilon: float
    d_minus_eps: float
    certified_digits: int
    lower: Fraction
    upper: Fraction
    residual: Fraction


def epsilon(d: int, digits: int = 15) -> EpsilonPair:
    """Root ``eps`` in ``(0, 1)`` of ``t^2 - d t + 1`` by exact-rational bisection."""
    if d < 3:
        raise ValidationError(f"d >= 3 required, got d={d}")
    lo, hi = Fraction(0), Fraction(1)  # f(0) = 1 > 0, f(1) = 2 - d < 0
    width = Fraction(1, 10 ** (digits + 2))
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid * mid - d * mid + 1 > 0:
            lo = mid
        else:
            hi = mid
    mid = (lo + hi) / 2
    residual = abs((d - mid) * mid - 1)
    return EpsilonPair(float(mid), float(d - mid), digits, lo, hi, residual)


def associative_quotient_dims(relator: AlgebraElement, N: int) -> list[int]:
    """``dim (A/(r))_n`` for the two-sided ideal of a homogeneous relator, ``n = 0..N``."""
    d, p = relator.d, relator.p
    ech = GradedEchelon(d, p, N)
    gens = [AlgebraElement.generator(i, d, p, N) for i in range(1, d + 1)]
    queue = [relator]
    while queue:
        cand = queue.pop()
        row = ech.add(cand)
        if row is None or row.lowest_degree + 1 > N:
            continue
        for g in gens:
            queue.append(g * row)
            queue.append(row * g)
    ideal = [0] + ech.leading_dims()
    return [d**n - ideal[n] for n in range(N + 1)]


@dataclass(frozen=True)
class QuotientCheck:
    lie_dims: DimSeq
    ideal_dims: DimSeq
    expected_lie: DimSeq
    assoc_dims: list[int]
    expected_assoc: list[int]

    @property
    def lie_match(self) -> bool:
        return self.lie_dims == self.expected_lie

    @property
    def assoc_match(self) -> bool:
        return self.assoc_dims == self.expected_assoc

    def to_dict(self) -> dict[str, Any]:
        return {
            "lie_dims": self.lie_dims.as_list(),
            "ideal_dims": self.ideal_dims.as_list(),
            "expected_lie": self.expected_lie.as_list(),
            "lie_match": self.lie_match,
            "assoc_dims": self.assoc_dims,
            "expected_assoc": self.expected_assoc,
            "assoc_match": self.assoc_match,
        }


def relator_quotient_dims(relator: str, d: int, p: int, N: int, *, force: bool = False) -> tuple[DimSeq, DimSeq, list[int]]:
    """``R/J`` dims, ``J`` dims and associative quotient dims for one relator."""
    check_resource(d, N, force)
    r = to_associative(parse_expr(relator, p=p, d=d), d, p, N)
    if r.is_zero():
        raise ValidationError("relator must be a nonzero homogeneous element")
    if not r.is_homogeneous():
        raise ValidationError(f"relator must be homogeneous; it has degrees {r.degrees}")
    ideal = closure([r], d, p, N, Mode.RESTRICTED_IDEAL, force=force).dims
    amb = restricted_dims(d, p, N)
    quotient = DimSeq(a - j for a, j in zip(amb, ideal))
    return quotient, ideal, associative_quotient_dims(r, N)


def quotient_dims_bruteforce(pres: DemushkinPresentation, N: int, *, force: bool = False) -> QuotientCheck:
    """Compare the oracle quotient ``R/J`` with the closed-form pipeline."""
    quotient, ideal, assoc = relator_quotient_dims(pres.graded_relator, pres.d, pres.p, N, force=force)
    return QuotientCheck(
        quotient,
        ideal,
        demushkin_lie_dims(pres.d, pres.p, N),
        assoc,
        enveloping_dims(pres.d, N),
    )


def fg_subalgebra_density_profile(profile: GenProfile, d: int, p: int, N: int) -> DensityReport:
    """Partial ratios of a free restricted subalgebra on ``profile`` inside the Demushkin algebra."""
    amb = demushkin_lie_dims(d, p, N)
    eps = epsilon(d)
    if profile:
        root = dominant_root(profile)
        if root.lam >= eps.d_minus_eps:
            raise ValidationError(
                f"growth rate lambda = {root.lam:.6g} is not below d - eps = {eps.d_minus_eps:.6g}; "
                "a free subalgebra on this profile cannot embed"
            )
    rep = fg_density_report(profile, amb, N, p=p, ambient_rate=eps.d_minus_eps)
    rep.flags["d_minus_eps"] = eps.d_minus_eps
    return rep
