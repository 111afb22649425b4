"""Subalgebra and ideal closures inside the truncated free associative algebra.

The Lie subalgebra generated by a set ``G`` is spanned by right-normed
brackets ``[g_1, [g_2, ..., g_k]]``, and the (restricted) Lie ideal
generated by ``G`` is its span under ``ad(x_1), ..., ad(x_d)``.  So a
worklist that brackets every new basis row with a fixed acting set
(``G`` for subalgebras, the ambient generators for ideals), plus the p-map
on every new row in restricted modes, reaches the exact closure within the
truncation.  Truncating at degree ``N`` is a quotient by an ideal, so it
commutes with all of these operations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from ..errors import ResourceError, ValidationError
from ..witt import DimSeq
from .algebra import AlgebraElement, coerce_expr
from .expr import LieExpr
from .linalg import GradedEchelon

__all__ = [
    "Mode",
    "SubalgebraBasis",
    "Closure",
    "closure",
    "graded_dims",
    "gradedify",
    "GradedifyReport",
    "intersection_dims",
    "free_lie_basis",
    "check_resource",
    "COLUMN_LIMIT",
]

COLUMN_LIMIT = 2**20


class Mode(str, Enum):
    LIE = "lie"
    RESTRICTED = "restricted"
    LIE_IDEAL = "lieIdeal"
    RESTRICTED_IDEAL = "restrictedIdeal"

    @property
    def restricted(self) -> bool:
        return self in (Mode.RESTRICTED, Mode.RESTRICTED_IDEAL)

    @property
    def ideal(self) -> bool:
        return self in (Mode.LIE_IDEAL, Mode.RESTRICTED_IDEAL)


def check_resource(d: int, N: int, force: bool = False) -> None:
    """Refuse degrees whose word space exceeds :data:`COLUMN_LIMIT` columns."""
    if force:
        return
    for n in range(1, N + 1):
        if d**n > COLUMN_LIMIT:
            raise ResourceError(
                f"degree {n} needs {d}**{n} = {d**n} columns (limit {COLUMN_LIMIT}); "
                f"reached degree {n - 1} safely; pass force to override"
            )


@dataclass(frozen=True)
class SubalgebraBasis:
    d: int
    p: int
    N: int
    per_degree: dict[int, list[AlgebraElement]]
    dims: DimSeq
    stable: bool


class Closure:
    """Incrementally maintained closure of a growing generating set."""

    def __init__(self, d: int, p: int, N: int, mode: Mode | str = Mode.LIE, *, force: bool = False,
                 homogeneous: bool = True):
        check_resource(d, N, force)
        self.d, self.p, self.N = d, p, N
        self.mode = Mode(mode)
        self.homogeneous = homogeneous
        self.echelon = GradedEchelon(d, p, N)
        self._acting: list[AlgebraElement] = []
        if self.mode.ideal:
            self._acting = [AlgebraElement.generator(i, d, p, N) for i in range(1, d + 1)]
        self.generators: list[AlgebraElement] = []

    def _coerce(self, g: LieExpr | str | AlgebraElement) -> AlgebraElement:
        e = coerce_expr(g, self.d, self.p, self.N)
        if self.homogeneous and not e.is_homogeneous():
            raise ValidationError(
                f"generator has components in degrees {e.degrees}; closure needs homogeneous generators"
            )
        return e

    def contains(self, g: LieExpr | str | AlgebraElement) -> bool:
        return self.echelon.contains(coerce_expr(g, self.d, self.p, self.N))

    def add_generators(self, gens: Iterable[LieExpr | str | AlgebraElement]) -> None:
        new = [self._coerce(g) for g in gens]
        queue: deque[AlgebraElement] = deque()
        if not self.mode.ideal:
            # old rows must also see the new acting elements
            for g in new:
                for row in list(self.echelon.rows()):
                    queue.append(g.bracket(row))
            self._acting.extend(new)
        self.generators.extend(new)
        queue.extend(new)
        self._run(queue)

    def _run(self, queue: deque[AlgebraElement]) -> None:
        while queue:
            cand = queue.popleft()
            if cand.is_zero():
                continue
            row = self.echelon.add(cand)
            if row is None:
                continue
            low = row.lowest_degree
            for a in self._acting:
                if low + 1 <= self.N:
                    queue.append(a.bracket(row))
            if self.mode.restricted and self.p * low <= self.N:
                queue.append(row.pmap())

    def dims(self) -> DimSeq:
        return DimSeq(self.echelon.leading_dims())

    def basis(self) -> SubalgebraBasis:
        per: dict[int, list[AlgebraElement]] = {n: [] for n in range(1, self.N + 1)}
        for row in self.echelon.rows():
            low = row.lowest_degree
            if low is not None and low >= 1:
                per[low].append(row)
        return SubalgebraBasis(self.d, self.p, self.N, per, self.dims(), True)


def closure(gens: Sequence[LieExpr | str | AlgebraElement], d: int, p: int, N: int,
            mode: Mode | str = Mode.LIE, *, force: bool = False) -> SubalgebraBasis:
    """Smallest sub-object of the requested kind containing ``gens``, up to degree ``N``."""
    c = Closure(d, p, N, mode, force=force)
    c.add_generators(gens)
    return c.basis()


def graded_dims(b: SubalgebraBasis) -> DimSeq:
    return b.dims


def free_lie_basis(d: int, p: int, N: int, restricted: bool = False, *, force: bool = False) -> SubalgebraBasis:
    """Closure of ``{x_1..x_d}``: the free (restricted) Lie algebra up to degree ``N``."""
    gens = [AlgebraElement.generator(i, d, p, N) for i in range(1, d + 1)]
    return closure(gens, d, p, N, Mode.RESTRICTED if restricted else Mode.LIE, force=force)


def _block_rank(rows: list[np.ndarray], p: int, length: int, d: int, n: int) -> int:
    ech = GradedEchelon(d, p, n)
    for r in rows:
        ech.add(AlgebraElement(d, p, n, {n: r}))
    return len(ech)


def intersection_dims(a: SubalgebraBasis, b: SubalgebraBasis) -> DimSeq:
    """``dim(A_n ∩ B_n)`` for graded subspaces, via ``dim A + dim B - dim(A + B)``."""
    out = []
    for n in range(1, min(a.N, b.N) + 1):
        ra = [r.blocks[n] for r in a.per_degree.get(n, [])]
        rb = [r.blocks[n] for r in b.per_degree.get(n, [])]
        total = _block_rank(ra + rb, a.p, a.d**n, a.d, n)
        out.append(len(ra) + len(rb) - total)
    return DimSeq(out)


@dataclass(frozen=True)
class GradedifyReport:
    """Leading-term dimensions of a possibly inhomogeneous subalgebra.

    ``dims[n]`` is certified only for ``n <= trust_horizon``.
    ``lie_dims`` (restricted mode) gives the dimensions of the
    leading-term space intersected with the free Lie algebra.
    """

    dims: DimSeq
    trust_horizon: int
    lie_dims: DimSeq | None
    basis: SubalgebraBasis

    def certified(self, n: int) -> bool:
        return n <= self.trust_horizon


def gradedify(gens: Sequence[LieExpr | str | AlgebraElement], d: int, p: int, N: int,
              mode: Mode | str = Mode.LIE, *, force: bool = False) -> GradedifyReport:
    """Dimensions of the associated graded ``S_grd`` of the subalgebra generated by ``gens``."""
    mode = Mode(mode)
    if mode.ideal:
        raise ValidationError("gradedify supports the lie and restricted modes only")
    c = Closure(d, p, N, mode, force=force, homogeneous=False)
    c.add_generators(gens)
    top = max((g.degrees[-1] for g in c.generators if not g.is_zero()), default=1)
    homogeneous = all(g.is_homogeneous() for g in c.generators)
    horizon = N if homogeneous else max(0, N - top + 1)
    # leading homogeneous parts, grouped by degree
    per: dict[int, list[AlgebraElement]] = {n: [] for n in range(1, N + 1)}
    for row in c.echelon.rows():
        low = row.lowest_degree
        per[low].append(row.component(low))
    lead_basis = SubalgebraBasis(d, p, N, per, c.dims(), True)
    lie_dims = None
    if mode.restricted:
        lie_dims = intersection_dims(lead_basis, free_lie_basis(d, p, N, force=force))
    return GradedifyReport(c.dims(), horizon, lie_dims, lead_basis)
