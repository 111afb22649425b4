"""Filtration growth of pro-p groups and Hausdorff-dimension partial ratios.

Two filtrations are covered.  For the Frattini series of a free pro-p group
of rank ``d`` the ranks follow the Schreier recursion
``d_{i+1} = (d_i - 1) p^{d_i} + 1`` and the log-indices are
``L_i = d_0 + ... + d_{i-1}``.  For the Zassenhaus series the log-index at
level ``n`` is the cumulative dimension of the graded restricted Lie algebra
up to degree ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Literal, Sequence

from .demushkin import DemushkinPresentation, demushkin_lie_dims, make_presentation
from .density import DensityReport, density_report
from .errors import DomainError, UsageError, ValidationError
from .witt import DimSeq, cumulative, is_prime, restricted_dims

__all__ = [
    "DEFAULT_BIT_BUDGET",
    "LevelRecord",
    "FiltrationGrowth",
    "Factor",
    "ProductSpec",
    "SubgroupSelection",
    "frattini_growth_free",
    "rank_gradient_free",
    "rank_gradient_chain",
    "zassenhaus_log_indices",
    "factor_growth",
    "product_hdim_estimate",
    "normal_spectrum",
]

DEFAULT_BIT_BUDGET = 2**20

Kind = Literal["frattini", "zassenhaus"]


@dataclass(frozen=True)
class LevelRecord:
    """One filtration level.

    ``d_i`` or ``log_index`` is ``None`` when saturated; ``log_p_d_i`` then
    holds a base-``p`` logarithmic estimate of the rank.
    """

    level: int
    d_i: int | None
    log_index: int | None
    log_p_d_i: float | None = None

    @property
    def saturated(self) -> bool:
        return self.d_i is None or self.log_index is None

    def to_dict(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "d_i": None if self.d_i is None else str(self.d_i),
            "log_index": None if self.log_index is None else str(self.log_index),
            "log_p_d_i": self.log_p_d_i,
            "saturated": self.saturated,
        }


@dataclass(frozen=True)
class FiltrationGrowth:
    p: int
    kind: Kind
    levels: tuple[LevelRecord, ...]

    def __getitem__(self, level: int) -> LevelRecord:
        for rec in self.levels:
            if rec.level == level:
                return rec
        raise IndexError(f"level {level} not in this table")

    def ranks(self) -> list[int | None]:
        return [r.d_i for r in self.levels]

    def log_indices(self) -> list[int | None]:
        return [r.log_index for r in self.levels]

    def exact_levels(self) -> list[int]:
        """Levels whose log-index is an exact integer."""
        return [r.level for r in self.levels if r.log_index is not None]


def _bits_of_power(p: int, e: int) -> float:
    if e > 2**60:
        return math.inf
    return e * math.log2(p)


def frattini_growth_free(d: int, p: int, levels: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> FiltrationGrowth:
    """Ranks ``d_i`` and log-indices ``L_i`` of the Frattini series, levels ``0..levels-1``."""
    if d < 2:
        raise DomainError(f"frattini growth needs d >= 2, got {d}")
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    if levels < 1:
        raise ValidationError(f"levels must be >= 1, got {levels}")
    recs: list[LevelRecord] = []
    di: int | None = d
    est: float = math.log(d, p)
    L: int | None = 0
    for i in range(levels):
        recs.append(LevelRecord(i, di, L, None if di is not None else est))
        if di is not None:
            L = None if L is None else L + di
            if _bits_of_power(p, di) <= bit_budget:
                di = (di - 1) * p**di + 1
                est = math.log(di, p)
            else:
                try:
                    est = di + math.log(di - 1, p)
                except OverflowError:
                    est = math.inf
                di = None
        else:
            L = None
            try:
                est = p**est + est
            except OverflowError:
                est = math.inf
    return FiltrationGrowth(p, "frattini", tuple(recs))


def rank_gradient_free(d: int) -> Fraction:
    """Rank gradient ``d - 1`` of a free pro-p group of rank ``d``."""
    if d < 1:
        raise DomainError(f"d >= 1 required, got {d}")
    return Fraction(d - 1)


def rank_gradient_chain(growth: FiltrationGrowth) -> list[Fraction]:
    """``(d_i - 1) / p^{L_i}`` at every exact Frattini level."""
    if growth.kind != "frattini":
        raise UsageError("rank-gradient chain needs a Frattini growth table")
    return [Fraction(r.d_i - 1, growth.p**r.log_index) for r in growth.levels if not r.saturated]


def zassenhaus_log_indices(lie_dims: DimSeq | Sequence[int], levels: int, p: int = 2) -> FiltrationGrowth:
    """``log_p |G : Z_{n+1}| = sum_{m <= n} dim R_m`` for ``n = 1..levels``."""
    lie_dims = lie_dims if isinstance(lie_dims, DimSeq) else DimSeq(lie_dims)
    if levels > len(lie_dims):
        raise ValidationError(f"need dimensions up to {levels}, have {len(lie_dims)}")
    cum = cumulative(lie_dims.truncate(levels))
    recs = tuple(LevelRecord(n, lie_dims[n], cum[n]) for n in range(1, levels + 1))
    return FiltrationGrowth(p, "zassenhaus", recs)


# --------------------------------------------------------------------------
# direct products


@dataclass(frozen=True)
class Factor:
    kind: Literal["free", "demushkin"]
    d: int
    presentation: DemushkinPresentation | None = None

    def __post_init__(self):
        if self.kind not in ("free", "demushkin"):
            raise ValidationError(f"factor kind must be free or demushkin, got {self.kind!r}")
        if self.d < 1:
            raise ValidationError(f"factor rank must be >= 1, got {self.d}")
        if self.kind == "demushkin" and self.presentation is None:
            raise ValidationError("demushkin factors need a presentation")

    def __str__(self) -> str:
        return f"{self.kind}:{self.d}"


@dataclass(frozen=True)
class ProductSpec:
    p: int
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValidationError("a product needs at least one factor")
        if not is_prime(self.p):
            raise ValidationError(f"p must be prime, got {self.p}")
        for f in self.factors:
            if f.presentation is not None and f.presentation.p != self.p:
                raise ValidationError(f"factor {f} uses p={f.presentation.p}, product uses p={self.p}")

    @classmethod
    def free(cls, ranks: Sequence[int], p: int = 2) -> ProductSpec:
        return cls(p, tuple(Factor("free", r) for r in ranks))

    @classmethod
    def parse(cls, text: str, p: int = 2) -> ProductSpec:
        """Parse ``"3,3,2"`` (free ranks) or items like ``"free:3,demushkin:4:genericEven:inf"``."""
        factors = []
        for item in text.split(","):
            parts = item.strip().split(":")
            bad = ValidationError(f"bad factor {item!r}; expected RANK, free:RANK or demushkin:D:CASE[:F]")
            if len(parts) == 1 or (parts[0] == "free" and len(parts) == 2):
                kind, rank = "free", parts[-1]
            elif parts[0] == "demushkin" and len(parts) in (3, 4):
                kind, rank = "demushkin", parts[1]
            else:
                raise bad
            try:
                r = int(rank)
            except ValueError:
                raise bad from None
            if kind == "free":
                factors.append(Factor("free", r))
            else:
                f = parts[3] if len(parts) == 4 else "inf"
                factors.append(Factor("demushkin", r, make_presentation(r, p, f, parts[2])))
        return cls(p, tuple(factors))

    @property
    def has_demushkin(self) -> bool:
        return any(f.kind == "demushkin" for f in self.factors)


@dataclass(frozen=True)
class SubgroupSelection:
    """Per-factor ``full``/``trivial`` choices, or custom cumulative log-index sequences.

    A custom entry of ``None`` stands for the trivial subgroup.
    """

    choices: tuple[str, ...] = ()
    custom: tuple[DimSeq | None, ...] | None = None

    @classmethod
    def factors(cls, spec: ProductSpec, selected: Sequence[int]) -> SubgroupSelection:
        """Full factors at the given 0-based positions, trivial elsewhere."""
        sel = set(selected)
        if any(not 0 <= j < len(spec.factors) for j in sel):
            raise ValidationError(f"selection {sorted(sel)} out of range for {len(spec.factors)} factors")
        return cls(tuple("full" if j in sel else "trivial" for j in range(len(spec.factors))))

    @classmethod
    def parse(cls, text: str) -> SubgroupSelection:
        """``"full,trivial,trivial"`` or the shorthand ``"1,0,0"``."""
        words = {"full": "full", "1": "full", "trivial": "trivial", "0": "trivial"}
        out = []
        for w in text.split(","):
            w = w.strip().lower()
            if w not in words:
                raise ValidationError(f"bad selection entry {w!r}; use full/trivial or 1/0")
            out.append(words[w])
        return cls(tuple(out))

    def width(self) -> int:
        return len(self.custom) if self.custom is not None else len(self.choices)


def factor_growth(factor: Factor, p: int, kind: Kind, levels: int,
                  bit_budget: int = DEFAULT_BIT_BUDGET) -> list[int | None]:
    """Cumulative log-indices of one factor at levels ``1..levels`` (``None`` if saturated)."""
    if kind == "frattini":
        if factor.kind != "free":
            raise UsageError(
                "no exact Frattini rank recursion is available for Demushkin factors; use the zassenhaus kind"
            )
        g = frattini_growth_free(factor.d, p, levels + 1, bit_budget)
        return g.log_indices()[1:]
    if kind == "zassenhaus":
        if factor.kind == "free":
            dims = restricted_dims(factor.d, p, levels)
        else:
            dims = demushkin_lie_dims(factor.d, p, levels)
        return zassenhaus_log_indices(dims, levels, p).log_indices()
    raise ValidationError(f"kind must be frattini or zassenhaus, got {kind!r}")


def _increments(cum: Sequence[int]) -> list[int]:
    out, prev = [], 0
    for v in cum:
        out.append(v - prev)
        prev = v
    return out


def product_hdim_estimate(spec: ProductSpec, sel: SubgroupSelection, kind: Kind, levels: int,
                          bit_budget: int = DEFAULT_BIT_BUDGET) -> DensityReport:
    """Ratios ``sum_selected L_i / sum_all L_i`` at levels ``1..levels``.

    Only levels where every factor is exact are reported; a shorter horizon
    is flagged with ``truncated_at``.
    """
    if levels < 1:
        raise ValidationError(f"levels must be >= 1, got {levels}")
    if sel.width() != len(spec.factors):
        raise ValidationError(f"selection covers {sel.width()} factors, product has {len(spec.factors)}")
    growth = [factor_growth(f, spec.p, kind, levels, bit_budget) for f in spec.factors]
    exact = levels
    for g in growth:
        for i, v in enumerate(g):
            if v is None:
                exact = min(exact, i)
                break
    if exact == 0:
        raise ValidationError("no level is exactly representable for every factor; raise the bit budget")

    total = [sum(g[i] for g in growth) for i in range(exact)]
    selected = [0] * exact
    for j, g in enumerate(growth):
        if sel.custom is not None:
            seq = sel.custom[j]
            if seq is None:
                continue
            if len(seq) < exact:
                raise ValidationError(f"custom sequence for factor {j} covers {len(seq)} levels, need {exact}")
            for i in range(exact):
                if seq[i + 1] > g[i]:
                    raise ValidationError(
                        f"custom log-index {seq[i + 1]} exceeds factor {j} growth {g[i]} at level {i + 1}"
                    )
                selected[i] += seq[i + 1]
        elif sel.choices[j] == "full":
            for i in range(exact):
                selected[i] += g[i]

    flags: dict[str, Any] = {"kind": kind, "factors": [str(f) for f in spec.factors]}
    if exact < levels:
        flags["truncated_at"] = exact
        flags["saturated_levels"] = list(range(exact + 1, levels + 1))
    try:
        return density_report(_increments(selected), _increments(total), flags=flags)
    except ValidationError as exc:
        raise ValidationError(f"custom sequences must be nondecreasing log-indices ({exc})") from None


def normal_spectrum(spec: ProductSpec, alphas: Sequence[Fraction | int | str] | None = None) -> list[Fraction]:
    """All subset sums of the factor dimensions, sorted and deduplicated.

    Without ``alphas`` every factor must be free: each of the ``t`` factors
    of maximal rank gets ``1/t`` and the others get ``0``.
    """
    if alphas is None:
        if spec.has_demushkin:
            raise UsageError("default alphas apply to products of free factors only; pass alphas explicitly")
        top = max(f.d for f in spec.factors)
        t = sum(1 for f in spec.factors if f.d == top)
        alphas = [Fraction(1, t) if f.d == top else Fraction(0) for f in spec.factors]
    else:
        alphas = [Fraction(a) for a in alphas]
        if len(alphas) != len(spec.factors):
            raise ValidationError(f"{len(alphas)} alphas for {len(spec.factors)} factors")
        if any(not 0 <= a <= 1 for a in alphas):
            raise ValidationError("every alpha must lie in [0, 1]")
    sums = {Fraction(0)}
    for r in range(1, len(alphas) + 1):
        for combo in combinations(alphas, r):
            sums.add(sum(combo, Fraction(0)))
    return sorted(sums)
