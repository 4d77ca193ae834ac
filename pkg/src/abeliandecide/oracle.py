"""Brute-force Abelian k-power search, independent of the template machinery."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class PowerOccurrence:
    position: int
    block_length: int
    k: int

    @property
    def end(self) -> int:
        return self.position + self.k * self.block_length

    def blocks(self, w: Sequence[int]) -> list[tuple[int, ...]]:
        p, n = self.position, self.block_length
        return [tuple(w[p + i * n : p + (i + 1) * n]) for i in range(self.k)]

    def verify(self, w: Sequence[int]) -> bool:
        if self.block_length < 1 or self.k < 2 or self.position < 0 or self.end > len(w):
            return False
        bs = [sorted(b) for b in self.blocks(w)]
        return all(b == bs[0] for b in bs)


def find_abelian_power(w: Sequence[int], k: int) -> PowerOccurrence | None:
    """Least occurrence by (position, block length) of an Abelian k-power in ``w``."""
    if k < 2:
        raise ValueError("k must be >= 2")
    n = len(w)
    if n < k:
        return None
    arr = np.asarray(w, dtype=np.int64)
    letters = np.unique(arr)
    onehot = (arr[:, None] == letters[None, :]).astype(np.int32)
    P = np.vstack([np.zeros((1, len(letters)), dtype=np.int32), np.cumsum(onehot, axis=0)])
    best: tuple[int, int] | None = None
    for ell in range(1, n // k + 1):
        # blk[p] = Parikh vector of w[p:p+ell]
        blk = P[ell:] - P[:-ell]
        same = np.all(blk[:-ell] == blk[ell:], axis=1)  # same[p]: block p ~ block p+ell
        npos = n - k * ell + 1
        ok = same[:npos].copy()
        for i in range(1, k - 1):
            ok &= same[i * ell : i * ell + npos]
        hits = np.flatnonzero(ok)
        if hits.size and (best is None or hits[0] < best[0]):
            best = (int(hits[0]), ell)
            if best[0] == 0:
                break
    if best is None:
        return None
    return PowerOccurrence(best[0], best[1], k)
