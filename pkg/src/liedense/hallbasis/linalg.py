"""Incremental row echelon form over F_p for graded rows.

A row is a mapping ``degree -> block``.  The pivot of a row is taken in its
lowest nonzero degree, at the last nonzero position of that block, so the
number of pivots in degree ``n`` is the dimension of the degree-``n``
leading-term space.  For homogeneous rows this is simply the rank per
degree.

For ``p = 2`` blocks are packed into Python ints and eliminated with XOR;
for odd ``p`` they are dense ``int64`` vectors.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .algebra import AlgebraElement

__all__ = ["GradedEchelon"]


class _GF2:
    p = 2

    @staticmethod
    def pack(arr: np.ndarray) -> int:
        bits = np.packbits(arr.astype(np.uint8), bitorder="little")
        return int.from_bytes(bits.tobytes(), "little")

    @staticmethod
    def unpack(blk: int, length: int) -> np.ndarray:
        nbytes = (length + 7) // 8
        raw = np.frombuffer(blk.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[:length].astype(np.int64)

    @staticmethod
    def lead(blk: int) -> tuple[int, int]:
        return blk.bit_length() - 1, 1

    @staticmethod
    def eliminate(blk: int | None, c: int, other: int) -> int:
        return other if blk is None else blk ^ other

    @staticmethod
    def normalize(blk: int, inv: int) -> int:
        return blk

    @staticmethod
    def nonzero(blk: int) -> bool:
        return blk != 0


class _Fp:
    def __init__(self, p: int):
        self.p = p

    @staticmethod
    def pack(arr: np.ndarray) -> np.ndarray:
        return arr.copy()

    @staticmethod
    def unpack(blk: np.ndarray, length: int) -> np.ndarray:
        return blk.copy()

    @staticmethod
    def lead(blk: np.ndarray) -> tuple[int, int]:
        idx = int(np.flatnonzero(blk)[-1])
        return idx, int(blk[idx])

    def eliminate(self, blk: np.ndarray | None, c: int, other: np.ndarray) -> np.ndarray:
        if blk is None:
            return (-c * other) % self.p
        return (blk - c * other) % self.p

    def normalize(self, blk: np.ndarray, inv: int) -> np.ndarray:
        return (blk * inv) % self.p

    @staticmethod
    def nonzero(blk: np.ndarray) -> bool:
        return bool(blk.any())


class GradedEchelon:
    """Span of graded rows, kept in echelon form with deterministic pivots."""

    def __init__(self, d: int, p: int, N: int):
        self.d, self.p, self.N = d, p, N
        self._ops = _GF2() if p == 2 else _Fp(p)
        self._pivots: dict[tuple[int, int], dict[int, object]] = {}
        self._rows: list[AlgebraElement] = []
        self._count = [0] * (N + 1)

    def __len__(self) -> int:
        return len(self._rows)

    def _pack(self, e: AlgebraElement) -> dict[int, object]:
        return {n: self._ops.pack(b) for n, b in e.blocks.items()}

    def _reduce(self, row: dict[int, object]) -> dict[int, object]:
        ops = self._ops
        while row:
            deg = min(row)
            idx, c = ops.lead(row[deg])
            piv = self._pivots.get((deg, idx))
            if piv is None:
                break
            for n, b in piv.items():
                nb = ops.eliminate(row.get(n), c, b)
                if ops.nonzero(nb):
                    row[n] = nb
                else:
                    row.pop(n, None)
        return row

    def contains(self, e: AlgebraElement) -> bool:
        return not self._reduce(self._pack(e))

    def add(self, e: AlgebraElement) -> AlgebraElement | None:
        """Insert ``e``; return the stored (reduced, normalized) row if it was new."""
        row = self._reduce(self._pack(e))
        if not row:
            return None
        ops = self._ops
        deg = min(row)
        idx, c = ops.lead(row[deg])
        inv = pow(c, -1, self.p)
        row = {n: ops.normalize(b, inv) for n, b in row.items()}
        self._pivots[(deg, idx)] = row
        self._count[deg] += 1
        stored = AlgebraElement(
            self.d, self.p, self.N, {n: ops.unpack(b, self.d**n) for n, b in row.items()}
        )
        self._rows.append(stored)
        return stored

    def rows(self) -> Iterator[AlgebraElement]:
        return iter(self._rows)

    def leading_dims(self) -> list[int]:
        """Number of pivots in each degree ``1..N``."""
        return self._count[1:]

    def rank(self) -> int:
        return len(self._rows)
