"""The defect invariant, computed from interleaved sign products and from
subloop winding numbers, with per-vertex diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curvemap import CurveMap, ValidationError, dual_diameter, gauss_code, subloop_windings


def _pair_sum(curve: CurveMap) -> tuple[int, int]:
    """(sum of sign products over interleaved pairs, number of such pairs)."""
    code = gauss_code(curve)
    order, m = code.interleave_matrix()
    signs = [code.signs[x] for x in order]
    total = 0
    pairs = 0
    for i, row in enumerate(m):
        si = signs[i]
        for j in range(i + 1, len(order)):
            if row[j]:
                total += si * signs[j]
                pairs += 1
    return total, pairs


def defect_polyak(curve: CurveMap) -> int:
    """-2 times the sum of sgn(x) sgn(y) over unordered interleaved pairs."""
    curve.require_unicursal()
    if curve.n == 0:
        return 0
    return -2 * _pair_sum(curve)[0]


def defect_winding(curve: CurveMap) -> int:
    """n - 2 sum_x sgn(x) wind(gamma_x, x), with the basepoint moved onto the
    outer face first if needed."""
    curve.require_unicursal()
    if curve.n == 0:
        return 0
    curve, _ = curve.outer_basepoint()
    signs = gauss_code(curve).signs
    winds = subloop_windings(curve)
    value = curve.n - 2 * sum(signs[x] * w for x, w in winds.items())
    if not isinstance(value, int) and Fraction(value).denominator != 1:
        raise ValidationError(f"winding formula gave a non-integer {value}")
    return int(value)


def maybe_defect(curve: CurveMap) -> int | None:
    """Defect when the map is a single curve (or the circle), else None."""
    if curve.n == 0:
        return 0 if curve.loops == 1 else None
    if not curve.is_unicursal():
        return None
    return defect_polyak(curve)


@dataclass(frozen=True)
class DefectReport:
    n: int
    polyak: int
    winding: int
    pairs: int
    lemma52_bound: int
    residuals: dict = field(default_factory=dict)
    relocated: bool = False

    @property
    def consistent(self) -> bool:
        return (
            self.polyak == self.winding
            and abs(self.polyak) <= self.lemma52_bound
            and all(r == 0 for r in self.residuals.values())
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "polyak": self.polyak,
            "winding": self.winding,
            "pairs": self.pairs,
            "lemma52_bound": self.lemma52_bound,
            "residuals": {str(k): v for k, v in sorted(self.residuals.items())},
        }


def lemma51_residuals(curve: CurveMap) -> dict[int, int]:
    """sum_{y interleaved with x} sgn(y) - (2 wind(gamma_x, x) - sgn(x)) per crossing."""
    code = gauss_code(curve)
    order, m = code.interleave_matrix()
    winds = subloop_windings(curve)
    out = {}
    for i, x in enumerate(order):
        lhs = sum(code.signs[order[j]] for j in range(len(order)) if m[i][j])
        rhs = 2 * winds[x] - code.signs[x]
        r = lhs - rhs
        if Fraction(r).denominator != 1:
            raise ValidationError(f"non-integer residual at crossing {x}")
        out[x] = int(r)
    return out


def defect_report(curve: CurveMap) -> DefectReport:
    curve.require_unicursal()
    if curve.n == 0:
        return DefectReport(0, 0, 0, 0, 0, {})
    curve, relocated = curve.outer_basepoint()
    total, pairs = _pair_sum(curve)
    n = curve.n
    return DefectReport(
        n=n,
        polyak=-2 * total,
        winding=defect_winding(curve),
        pairs=pairs,
        lemma52_bound=2 * n * dual_diameter(curve) + n,
        residuals=lemma51_residuals(curve),
        relocated=relocated,
    )


__all__ = [
    "defect_polyak",
    "defect_winding",
    "maybe_defect",
    "DefectReport",
    "defect_report",
    "lemma51_residuals",
]
