"""Knot diagrams over curve shadows and the Casson invariant c2.

A crossing is ascending when the first passage after the basepoint goes
over.  ``c2 = -sum sgn(x) sgn(y)`` over descending x and ascending y that
interleave with y met first from the basepoint (pattern y x y x).  Over
uniformly random resolutions the mean of c2 is defect / 8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .curvemap import CurveMap, gauss_code, passages
from .defect import defect_polyak

MAX_EXHAUSTIVE = 24
_BLOCK = 4096


@dataclass(frozen=True)
class KnotDiagram:
    shadow: CurveMap
    over_bits: tuple[int, ...]  # indexed by crossing id; 1 = ascending

    def __post_init__(self):
        if len(self.over_bits) != self.shadow.n:
            raise ValueError("over_bits must have one entry per crossing")
        if any(b not in (0, 1) for b in self.over_bits):
            raise ValueError("over_bits must be 0 or 1")

    @classmethod
    def all_ascending(cls, shadow: CurveMap) -> "KnotDiagram":
        return cls(shadow, (1,) * shadow.n)

    def over_parity(self) -> tuple[int, ...]:
        """Per crossing, the slot parity of the strand that goes over."""
        parity = [0] * self.shadow.n
        seen = set()
        for v, entry, _ in passages(self.shadow):
            if v in seen:
                continue
            seen.add(v)
            first_par = entry & 1
            parity[v] = first_par if self.over_bits[v] else 1 - first_par
        return tuple(parity)

    @classmethod
    def from_over_parity(cls, shadow: CurveMap, parity: Sequence[int]) -> "KnotDiagram":
        bits = [0] * shadow.n
        seen = set()
        for v, entry, _ in passages(shadow):
            if v in seen:
                continue
            seen.add(v)
            bits[v] = int((entry & 1) == parity[v])
        return cls(shadow, tuple(bits))

    def with_basepoint(self, d: int) -> "KnotDiagram":
        """Same knot read from another basepoint (bits re-expressed)."""
        return KnotDiagram.from_over_parity(self.shadow.with_basepoint(d), self.over_parity())

    def reversed(self) -> "KnotDiagram":
        return KnotDiagram.from_over_parity(self.shadow.reversed(), self.over_parity())

    def mirror_signs(self) -> "KnotDiagram":
        """Reflected shadow with the same over/under data (all signs flip)."""
        m = self.shadow.mirror()
        par = self.over_parity()
        # reflection sends slot s to -s, which keeps slot parity
        return KnotDiagram.from_over_parity(m, par)


def _weights(shadow: CurveMap) -> tuple[list[int], np.ndarray]:
    """(crossing order, matrix W with W[x][y] = [y before x, interleaved] sgn sgn)
    in first-occurrence order."""
    code = gauss_code(shadow)
    order, m = code.interleave_matrix()
    signs = np.array([code.signs[x] for x in order], dtype=np.int64)
    inter = np.array(m, dtype=np.int64).reshape(len(order), len(order))
    # order is first-occurrence order, so "y first" means column index < row index
    before = np.tril(np.ones((len(order), len(order)), dtype=np.int64), k=-1)
    return order, inter * before * np.outer(signs, signs)


def casson_c2(diagram: KnotDiagram) -> int:
    shadow = diagram.shadow
    shadow.require_unicursal()
    if shadow.n == 0:
        return 0
    order, w = _weights(shadow)
    asc = np.array([diagram.over_bits[x] for x in order], dtype=np.int64)
    return int(-((1 - asc) @ w @ asc))


def expected_c2_exhaustive(shadow: CurveMap) -> tuple[int, int]:
    """(sum of c2 over all 2^n resolutions, 2^n)."""
    shadow.require_unicursal()
    n = shadow.n
    if n > MAX_EXHAUSTIVE:
        raise ValueError(f"n too large for exhaustive enumeration ({n} > {MAX_EXHAUSTIVE})")
    if n == 0:
        return 0, 1
    _, w = _weights(shadow)
    ones = [[1] * n for _ in range(n)]
    return kernels.casson_sum(w.tolist(), ones), 1 << n


def expected_c2_monte_carlo(shadow: CurveMap, samples: int, seed: int = 0) -> tuple[float, float]:
    """(mean, standard error) of c2 over ``samples`` random resolutions.

    Sample i belongs to block i // 4096, whose generator is seeded by
    (seed, block), so results do not depend on how blocks are scheduled.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    shadow.require_unicursal()
    n = shadow.n
    if n == 0:
        return 0.0, 0.0
    _, w = _weights(shadow)
    total = 0.0
    total_sq = 0.0
    for block in range((samples + _BLOCK - 1) // _BLOCK):
        size = min(_BLOCK, samples - block * _BLOCK)
        rng = np.random.default_rng(np.random.SeedSequence([seed, block]))
        asc = rng.integers(0, 2, size=(size, n), dtype=np.int64)
        c2 = -(((1 - asc) @ w) * asc).sum(axis=1)
        total += float(c2.sum())
        total_sq += float((c2.astype(np.float64) ** 2).sum())
    mean = total / samples
    if samples == 1:
        return mean, 0.0
    var = (total_sq - samples * mean * mean) / (samples - 1)
    return mean, float(np.sqrt(max(var, 0.0) / samples))


def defect_over_eight(shadow: CurveMap) -> Fraction:
    return Fraction(defect_polyak(shadow), 8)


__all__ = [
    "KnotDiagram",
    "casson_c2",
    "expected_c2_exhaustive",
    "expected_c2_monte_carlo",
    "defect_over_eight",
]
