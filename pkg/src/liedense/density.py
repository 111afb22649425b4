"""Densities of graded subalgebras, and the greedy prescribed-density construction.

The density of a graded subalgebra ``S`` of ``R`` is the lower limit of the
partial ratios ``sum_{m<=n} dim S_m / sum_{m<=n} dim R_m``.  Everything in
this module reports the finite prefix of those ratios only, in exact
rationals; no limit is ever claimed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import DomainError, ResourceError, ValidationError
from .hallbasis import (
    BasicCommutator,
    Closure,
    LieExpr,
    Mode,
    closure,
    enumerate_basic_commutators,
)
from .witt import (
    DimSeq,
    GenProfile,
    cumulative,
    dominant_root,
    free_graded_lie_dims,
    restricted_dims,
    restricted_from_ordinary,
    witt_dims,
)

__all__ = [
    "DensityReport",
    "GreedyStep",
    "GreedyTrace",
    "GreedyResult",
    "density_report",
    "greedy_construct",
    "ideal_density_report",
    "fg_density_report",
    "codim_growth_bound",
    "parse_alpha",
]


def parse_alpha(alpha: Fraction | int | float | str) -> Fraction:
    """Exact rational from ``"a/b"``, a decimal string, an int, or a binary64 value.

    Floats are taken at their exact binary64 value.
    """
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, (int, float)):
        return Fraction(alpha)
    try:
        return Fraction(alpha.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot read alpha from {alpha!r}") from None


@dataclass(frozen=True)
class DensityReport:
    """Prefix of partial density ratios up to ``horizon``."""

    sub_dims: DimSeq
    amb_dims: DimSeq
    ratios: tuple[Fraction, ...]
    running_min: tuple[Fraction, ...]
    flags: dict[str, Any] = field(default_factory=dict)
    alpha: Fraction | None = None

    @property
    def horizon(self) -> int:
        return len(self.ratios)

    def ratio(self, n: int) -> Fraction:
        """Partial ratio at degree (or level) ``n``, 1-based."""
        return self.ratios[n - 1]

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if self.alpha is not None:
            out["alpha"] = _q(self.alpha)
            out["alpha_f64"] = float(self.alpha)
        out["horizon"] = self.horizon
        out["sub_dims"] = self.sub_dims.as_list()
        out["amb_dims"] = self.amb_dims.as_list()
        out["ratios"] = [_q(r) for r in self.ratios]
        out["ratios_f64"] = [float(r) for r in self.ratios]
        out["running_min"] = [_q(r) for r in self.running_min]
        out["flags"] = {"prefix_estimate": True, **self.flags}
        return out


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def density_report(sub: DimSeq | Sequence[int], amb: DimSeq | Sequence[int], *,
                   alpha: Fraction | None = None, flags: dict[str, Any] | None = None) -> DensityReport:
    """Exact partial ratios ``l_sub(n) / l_amb(n)`` and their suffix minima."""
    sub = sub if isinstance(sub, DimSeq) else DimSeq(sub)
    amb = amb if isinstance(amb, DimSeq) else DimSeq(amb)
    if len(sub) != len(amb):
        raise ValidationError(f"horizons differ: {len(sub)} vs {len(amb)}")
    for n, (s, a) in enumerate(zip(sub, amb), start=1):
        if s > a:
            raise ValidationError(f"subalgebra dimension {s} exceeds ambient {a} at degree {n}")
    ratios = []
    for ls, la in zip(cumulative(sub), cumulative(amb)):
        if la == 0:
            raise ValidationError("ambient has no dimensions up to this degree; ratio undefined")
        ratios.append(Fraction(ls, la))
    running = list(ratios)
    for i in range(len(running) - 2, -1, -1):
        running[i] = min(running[i], running[i + 1])
    return DensityReport(sub, amb, tuple(ratios), tuple(running), dict(flags or {}), alpha)


def _nondecreasing_from(ratios: Sequence[Fraction]) -> int:
    """Smallest degree from which the ratios never decrease."""
    start = len(ratios)
    for i in range(len(ratios) - 1, 0, -1):
        if ratios[i - 1] <= ratios[i]:
            start = i
        else:
            break
    return max(start, 1)


# --------------------------------------------------------------------------
# greedy construction


@dataclass(frozen=True)
class GreedyStep:
    k: int
    added: tuple[BasicCommutator, ...]
    beta_before: Fraction
    beta_after: Fraction
    inv_i: bool
    checkpoint: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "added": [str(c) for c in self.added],
            "beta_before": _q(self.beta_before),
            "beta_after": _q(self.beta_after),
            "inv_i": self.inv_i,
            "checkpoint": self.checkpoint,
        }


@dataclass(frozen=True)
class GreedyTrace:
    alpha: Fraction
    steps: tuple[GreedyStep, ...]
    final_gens: tuple[BasicCommutator, ...]
    inv_i_all: bool
    inv_ii_checkpoints: bool
    free: bool

    @property
    def checkpoints(self) -> list[int]:
        return [s.k for s in self.steps if s.checkpoint]

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": _q(self.alpha),
            "steps": [s.to_dict() for s in self.steps],
            "final_gens": [str(c) for c in self.final_gens],
            "inv_i_all": self.inv_i_all,
            "inv_ii_checkpoints": self.inv_ii_checkpoints,
            "free": self.free,
        }


@dataclass(frozen=True)
class GreedyResult:
    final_gens: tuple[BasicCommutator, ...]
    trace: GreedyTrace
    report: DensityReport
    lie_dims: DimSeq

    @property
    def gens_exprs(self) -> list[LieExpr]:
        return [c.to_expr() for c in self.final_gens]


def greedy_construct(alpha: Fraction | float | str, d: int, p: int, N: int, mode: str = "lie",
                     *, max_stall: int | None = None, force: bool = False) -> GreedyResult:
    """Build a subalgebra generated by basic commutators with partial ratios tracking ``alpha``.

    Decisions are taken weight by weight in the free Lie algebra.  In
    ``restricted`` mode the returned report is for the restricted closure
    ``<M>_res`` inside the free restricted algebra, whose degree-``n``
    dimension is ``sum_j dim M_{n/p^j}``.
    """
    alpha = parse_alpha(alpha)
    if not 0 <= alpha <= 1:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    if d < 2:
        raise DomainError(f"greedy construction needs a non-abelian algebra, d >= 2 (got {d})")
    if mode not in ("lie", "restricted"):
        raise ValidationError(f"mode must be 'lie' or 'restricted', got {mode!r}")
    max_stall = N if max_stall is None else max_stall

    amb = witt_dims(d, N)
    l = cumulative(amb)
    comms = enumerate_basic_commutators(d, N)
    cl = Closure(d, p, N, Mode.LIE, force=force)

    def lm(k: int) -> int:
        return sum(cl.dims().values[:k])

    steps: list[GreedyStep] = []
    final: list[BasicCommutator] = []

    a = math.floor(alpha * d)
    y1 = comms[0][:a]
    cl.add_generators([c.to_expr() for c in y1])
    final.extend(y1)
    r1 = Fraction(lm(1), l[1])
    steps.append(GreedyStep(1, tuple(y1), Fraction(0), r1, alpha - Fraction(1, l[1]) <= r1, r1 <= alpha))

    stall = 0
    for k in range(2, N + 1):
        beta = Fraction(lm(k), l[k])
        added: list[BasicCommutator] = []
        if beta <= alpha:
            stall = 0
            lower = alpha - Fraction(1, l[k])
            current = beta
            for c in comms[k - 1]:
                if current >= lower:
                    break
                if cl.contains(c.to_expr()):
                    continue
                cl.add_generators([c.to_expr()])
                added.append(c)
                current = Fraction(lm(k), l[k])
            final.extend(added)
            after = current
            checkpoint = True
        else:
            stall += 1
            if stall > max_stall:
                raise ResourceError(f"ratio stayed above alpha for {stall} weights (up to k={k})")
            after = beta
            checkpoint = False
        inv_i = alpha - Fraction(1, l[k]) <= after
        steps.append(GreedyStep(k, tuple(added), beta, after, inv_i, checkpoint))

    mdims = cl.dims()
    lie_report = density_report(mdims, amb)
    inv_i_all = all(alpha - Fraction(1, l[n]) <= lie_report.ratio(n) for n in range(1, N + 1))
    inv_ii = all(lie_report.ratio(s.k) <= alpha for s in steps if s.checkpoint)

    profile = GenProfile.from_degrees(c.weight for c in final)
    free = mdims.as_list() == (free_graded_lie_dims(profile, N).as_list() if profile else [0] * N)

    trace = GreedyTrace(alpha, tuple(steps), tuple(final), inv_i_all, inv_ii, free)
    flags: dict[str, Any] = {
        "mode": mode,
        "inv_i_all": inv_i_all,
        "inv_ii_checkpoints": inv_ii,
        "free": free,
    }
    if not free:
        flags["non_free"] = True
    if mode == "restricted":
        sdims = restricted_from_ordinary(mdims, p)
        oracle = closure([c.to_expr() for c in final], d, p, N, Mode.RESTRICTED, force=force).dims if final \
            else DimSeq.zeros(N)
        flags["restricted_lift_consistent"] = oracle == sdims
        report = density_report(sdims, restricted_dims(d, p, N), alpha=alpha, flags=flags)
        # the lift is not tuned to alpha, so report how the invariants fare after it
        lr = cumulative(report.amb_dims)
        report.flags["restricted_inv_i_all"] = all(
            alpha - Fraction(1, lr[n]) <= report.ratio(n) for n in range(1, N + 1)
        )
        report.flags["restricted_inv_ii_checkpoints"] = all(report.ratio(s.k) <= alpha for s in steps if s.checkpoint)
    else:
        report = density_report(mdims, amb, alpha=alpha, flags=flags)
    return GreedyResult(tuple(final), trace, report, mdims)


# --------------------------------------------------------------------------
# ideals and finitely generated subalgebras


def ideal_density_report(gens: Sequence[LieExpr | str], d: int, p: int, N: int,
                         restricted: bool = False, *, force: bool = False) -> DensityReport:
    """Partial ratios of the (restricted) ideal generated by ``gens`` in the free algebra."""
    mode = Mode.RESTRICTED_IDEAL if restricted else Mode.LIE_IDEAL
    basis = closure(gens, d, p, N, mode, force=force)
    if not any(basis.dims):
        raise ValidationError("ideal generators are all zero up to the truncation degree")
    amb = restricted_dims(d, p, N) if restricted else witt_dims(d, N)
    rep = density_report(basis.dims, amb)
    rep.flags.update({"expect": "trend -> 1", "nondecreasing_from": _nondecreasing_from(rep.ratios)})
    return rep


def fg_density_report(profile: GenProfile, ambient: DimSeq, N: int | None = None, *,
                      p: int | None = None, ambient_rate: float | None = None) -> DensityReport:
    """Partial ratios of a free subalgebra on ``profile`` against ``ambient`` dimensions.

    With ``p`` the subalgebra dimensions are those of the free restricted
    algebra on the same generators.
    """
    N = len(ambient) if N is None else N
    ambient = ambient.truncate(N)
    if profile:
        sub = free_graded_lie_dims(profile, N)
        if p is not None:
            sub = restricted_from_ordinary(sub, p)
    else:
        sub = DimSeq.zeros(N)
    flags: dict[str, Any] = {"expect": "trend -> 0", "profile": str(profile)}
    if profile:
        root = dominant_root(profile)
        flags["lambda"] = root.lam
        if ambient_rate is not None:
            flags["ambient_rate"] = ambient_rate
            flags["lambda_below_rate"] = root.lam < ambient_rate
    rep = density_report(sub, ambient, flags=flags)
    rep.flags["tail_decreasing"] = N >= 2 and rep.ratios[-1] < rep.ratios[N // 2 - 1]
    return rep


def codim_growth_bound(t: int, p: int, n: int) -> int:
    """``t * floor(log_p n)``, computed in integers."""
    if t < 0 or n < 1:
        raise DomainError(f"need t >= 0 and n >= 1, got t={t}, n={n}")
    k, q = 0, p
    while q <= n:
        k += 1
        q *= p
    return t * k
