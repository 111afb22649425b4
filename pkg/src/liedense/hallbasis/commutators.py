"""Enumeration of basic (Hall) commutators.

Weight-one basic commutators are ``x_1 < ... < x_d``.  A bracket ``[u, v]``
of basic commutators is basic when ``u > v`` and, if ``u = [y, z]``, also
``v >= z``.  New commutators of a given weight are ordered by the Hall
indices of ``(u, v)``, which makes the whole order deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ResourceError, ValidationError
from ..witt import witt_dim
from .expr import Bracket, Gen, LieExpr, PPower

__all__ = ["BasicCommutator", "enumerate_basic_commutators", "MAX_COMMUTATORS"]

MAX_COMMUTATORS = 2_000_000


@dataclass(frozen=True)
class BasicCommutator:
    weight: int
    hall_index: int
    generator: int | None = None
    left: "BasicCommutator | None" = None
    right: "BasicCommutator | None" = None

    def to_expr(self) -> LieExpr:
        if self.generator is not None:
            return Gen(self.generator)
        return Bracket(self.left.to_expr(), self.right.to_expr())

    def __str__(self) -> str:
        if self.generator is not None:
            return f"x{self.generator}"
        return f"[{self.left},{self.right}]"

    def left_normed(self) -> str:
        """Left-normed notation, e.g. ``[x2,x1,x1]`` for ``[[x2,x1],x1]``."""
        if self.generator is not None:
            return f"x{self.generator}"
        parts = [str(self.right) if self.right.generator is not None else self.right.left_normed()]
        node = self.left
        while node.generator is None:
            parts.append(node.right.left_normed())
            node = node.left
        parts.append(f"x{node.generator}")
        return "[" + ",".join(reversed(parts)) + "]"


def p_power_expr(c: BasicCommutator, times: int) -> LieExpr:
    e = c.to_expr()
    for _ in range(times):
        e = PPower(e)
    return e


def enumerate_basic_commutators(d: int, max_weight: int) -> list[list[BasicCommutator]]:
    """Basic commutators grouped by weight; entry ``k`` holds weight ``k + 1``."""
    if d < 1 or max_weight < 1:
        raise ValidationError(f"need d >= 1 and max_weight >= 1, got d={d}, max_weight={max_weight}")
    total = sum(witt_dim(d, n) for n in range(1, max_weight + 1))
    if total > MAX_COMMUTATORS:
        raise ResourceError(f"{total} basic commutators up to weight {max_weight} exceeds limit {MAX_COMMUTATORS}")
    by_weight: list[list[BasicCommutator]] = [[BasicCommutator(1, i, generator=i + 1) for i in range(d)]]
    next_index = d
    for n in range(2, max_weight + 1):
        new = []
        for wu in range(n - 1, 0, -1):
            wv = n - wu
            if wv > wu:
                break
            for u in by_weight[wu - 1]:
                for v in by_weight[wv - 1]:
                    if not u.hall_index > v.hall_index:
                        continue
                    if u.generator is None and v.hall_index < u.right.hall_index:
                        continue
                    new.append((u.hall_index, v.hall_index, u, v))
        new.sort(key=lambda t: (t[0], t[1]))
        layer = []
        for _, _, u, v in new:
            layer.append(BasicCommutator(n, next_index, left=u, right=v))
            next_index += 1
        by_weight.append(layer)
    return by_weight
