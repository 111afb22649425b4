"""Truncated free associative algebra ``F_p<x_1..x_d>`` as the ambient model.

A homogeneous degree-``n`` block is a dense vector of length ``d**n``
indexed by words in rank order: the word ``(w_1..w_n)`` (letters ``1..d``)
sits at ``sum (w_k - 1) * d**(n-k)``.  With this layout the product of two
homogeneous blocks is ``np.outer(a, b).ravel()``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..errors import UsageError, ValidationError
from .expr import Bracket, Gen, LieExpr, PPower, Sum, max_generator, parse_expr

__all__ = ["AlgebraElement", "to_associative", "word_index", "index_word", "coerce_expr"]


def word_index(word: tuple[int, ...], d: int) -> int:
    idx = 0
    for letter in word:
        idx = idx * d + (letter - 1)
    return idx


def index_word(idx: int, n: int, d: int) -> tuple[int, ...]:
    letters = []
    for _ in range(n):
        idx, r = divmod(idx, d)
        letters.append(r + 1)
    return tuple(reversed(letters))


@dataclass(frozen=True)
class AlgebraElement:
    """Element of ``F_p<x_1..x_d>`` modulo words longer than ``N``.

    ``blocks`` maps degree to a dense coefficient vector; zero blocks are
    never stored.  Degree 0 (scalars) is not used by Lie elements but is
    allowed.
    """

    d: int
    p: int
    N: int
    blocks: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for deg in sorted(self.blocks):
            blk = self.blocks[deg]
            if deg > self.N:
                continue
            arr = np.asarray(blk, dtype=np.int64) % self.p
            if arr.shape != (self.d**deg,):
                raise ValidationError(f"block of degree {deg} has shape {arr.shape}, expected {(self.d**deg,)}")
            if arr.any():
                arr.setflags(write=False)
                clean[deg] = arr
        object.__setattr__(self, "blocks", clean)

    @classmethod
    def zero(cls, d: int, p: int, N: int) -> AlgebraElement:
        return cls(d, p, N, {})

    @classmethod
    def generator(cls, i: int, d: int, p: int, N: int) -> AlgebraElement:
        if not 1 <= i <= d:
            raise ValidationError(f"generator index {i} out of range 1..{d}")
        if N < 1:
            return cls.zero(d, p, N)
        v = np.zeros(d, dtype=np.int64)
        v[i - 1] = 1
        return cls(d, p, N, {1: v})

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, ...], int], d: int, p: int, N: int) -> AlgebraElement:
        blocks: dict[int, np.ndarray] = {}
        for word, c in terms.items():
            n = len(word)
            if n > N:
                continue
            blk = blocks.setdefault(n, np.zeros(d**n, dtype=np.int64))
            blk[word_index(word, d)] += c
        return cls(d, p, N, blocks)

    def _same_space(self, other: AlgebraElement) -> None:
        if (self.d, self.p, self.N) != (other.d, other.p, other.N):
            raise UsageError("elements live in different truncated algebras")

    @property
    def degrees(self) -> list[int]:
        return list(self.blocks)

    def is_zero(self) -> bool:
        return not self.blocks

    def is_homogeneous(self) -> bool:
        return len(self.blocks) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element, else ``None``."""
        return next(iter(self.blocks)) if len(self.blocks) == 1 else None

    @property
    def lowest_degree(self) -> int | None:
        return min(self.blocks, default=None)

    def component(self, n: int) -> AlgebraElement:
        return AlgebraElement(self.d, self.p, self.N, {n: self.blocks[n]} if n in self.blocks else {})

    def terms(self) -> dict[tuple[int, ...], int]:
        """Sparse view: word (tuple of letters) -> coefficient in ``1..p-1``."""
        out = {}
        for n, blk in self.blocks.items():
            for idx in np.flatnonzero(blk):
                out[index_word(int(idx), n, self.d)] = int(blk[idx])
        return out

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._same_space(other)
        out = dict(self.blocks)
        for n, blk in other.blocks.items():
            out[n] = out[n] + blk if n in out else blk
        return AlgebraElement(self.d, self.p, self.N, out)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.d, self.p, self.N, {n: -b for n, b in self.blocks.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c: int) -> AlgebraElement:
        return AlgebraElement(self.d, self.p, self.N, {n: c * b for n, b in self.blocks.items()})

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        self._same_space(other)
        out: dict[int, np.ndarray] = {}
        for m, a in self.blocks.items():
            for n, b in other.blocks.items():
                if m + n > self.N:
                    continue
                prod = np.outer(a, b).ravel()
                out[m + n] = (out[m + n] + prod) % self.p if m + n in out else prod
        return AlgebraElement(self.d, self.p, self.N, out)

    def bracket(self, other: AlgebraElement) -> AlgebraElement:
        """Commutator ``uv - vu``."""
        self._same_space(other)
        out: dict[int, np.ndarray] = {}
        for m, a in self.blocks.items():
            for n, b in other.blocks.items():
                if m + n > self.N:
                    continue
                term = np.outer(a, b).ravel() - np.outer(b, a).ravel()
                out[m + n] = (out[m + n] + term) % self.p if m + n in out else term
        return AlgebraElement(self.d, self.p, self.N, out)

    def power(self, k: int) -> AlgebraElement:
        if k < 1:
            raise ValidationError("power needs k >= 1")
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def pmap(self) -> AlgebraElement:
        """The p-map ``u -> u^p`` of the restricted structure."""
        return self.power(self.p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if (self.d, self.p, self.N) != (other.d, other.p, other.N):
            return False
        if self.blocks.keys() != other.blocks.keys():
            return False
        return all(np.array_equal(self.blocks[n], other.blocks[n]) for n in self.blocks)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        parts = []
        for word, c in sorted(self.terms().items(), key=lambda kv: (len(kv[0]), kv[0])):
            w = "".join(str(l) if self.d < 10 else f"({l})" for l in word)
            parts.append(f"{c}*{w}")
        return f"AlgebraElement(d={self.d}, p={self.p}, N={self.N}: {' + '.join(parts) or '0'})"


def to_associative(e: LieExpr, d: int, p: int, N: int) -> AlgebraElement:
    """Image of a Lie expression under ``[u,v] = uv - vu`` and ``u^[p] = u^p``."""
    if max_generator(e) > d:
        raise ValidationError(f"expression uses generator x{max_generator(e)} but d={d}")
    if isinstance(e, Gen):
        return AlgebraElement.generator(e.index, d, p, N)
    if isinstance(e, Bracket):
        return to_associative(e.left, d, p, N).bracket(to_associative(e.right, d, p, N))
    if isinstance(e, PPower):
        return to_associative(e.arg, d, p, N).pmap()
    total = AlgebraElement.zero(d, p, N)
    for c, atom in e.terms:
        total = total + to_associative(atom, d, p, N).scale(c)
    return total


def coerce_expr(g: LieExpr | str | AlgebraElement, d: int, p: int, N: int) -> AlgebraElement:
    """Accept expression text, a parsed expression, or an element."""
    if isinstance(g, AlgebraElement):
        if (g.d, g.p, g.N) != (d, p, N):
            raise UsageError("generator lives in a different truncated algebra")
        return g
    if isinstance(g, str):
        g = parse_expr(g, p=p, d=d)
    return to_associative(g, d, p, N)
