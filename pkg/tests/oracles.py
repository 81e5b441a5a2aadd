"""Independent reference computations used to freeze expected values.

Nothing here touches the combinatorial map code: curves are sampled as
polylines in the plane and crossings are found geometrically.
"""

from __future__ import annotations

from collections import defaultdict
from math import comb

import numpy as np


def torus_polyline(p: int, q: int, samples: int | None = None) -> np.ndarray:
    """Polyline of r = 2 + cos(q t), theta = p t; the flat torus knot T(p,q)."""
    if samples is None:
        samples = 48 * p * q + 64
    t = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    r = 2.0 + np.cos(q * t)
    return np.stack([r * np.cos(p * t), r * np.sin(p * t)], axis=1)


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def polyline_crossings(pts: np.ndarray) -> list[tuple[float, float, int]]:
    """Self-crossings of a closed polyline as (s, t, sign) with s < t.

    s and t are positions along the polyline (segment index plus fraction);
    sign is the orientation of (tangent at s, tangent at t).
    """
    n = len(pts)
    a = pts
    b = np.roll(pts, -1, axis=0)
    seg_len = np.linalg.norm(b - a, axis=1).max()
    cell = 2 * seg_len
    buckets: dict[tuple[int, int], list[int]] = defaultdict(list)
    lo = np.floor(np.minimum(a, b) / cell).astype(int)
    hi = np.floor(np.maximum(a, b) / cell).astype(int)
    for i in range(n):
        for cx in range(lo[i, 0], hi[i, 0] + 1):
            for cy in range(lo[i, 1], hi[i, 1] + 1):
                buckets[(cx, cy)].append(i)
    found: dict[tuple[int, int], tuple[float, float, int]] = {}
    for segs in buckets.values():
        m = len(segs)
        for x in range(m):
            i = segs[x]
            for y in range(x + 1, m):
                j = segs[y]
                if abs(i - j) <= 1 or abs(i - j) == n - 1:
                    continue
                key = (min(i, j), max(i, j))
                if key in found:
                    continue
                i0, j0 = key
                d1 = b[i0] - a[i0]
                d2 = b[j0] - a[j0]
                den = _cross(d1, d2)
                if den == 0:
                    continue
                w = a[j0] - a[i0]
                s = _cross(w, d2) / den
                u = _cross(w, d1) / den
                if 0 <= s < 1 and 0 <= u < 1:
                    found[key] = (i0 + s, j0 + u, 1 if den > 0 else -1)
    return sorted(found.values())


def defect_from_crossings(crossings: list[tuple[float, float, int]]) -> int:
    """-2 times the sum of sign products over interleaved crossing pairs."""
    if not crossings:
        return 0
    arr = np.array(crossings)
    s, t, sg = arr[:, 0], arr[:, 1], arr[:, 2].astype(np.int64)
    # x before y and interleaved: s_x < s_y < t_x < t_y
    inter = (s[:, None] < s[None, :]) & (s[None, :] < t[:, None]) & (t[:, None] < t[None, :])
    return int(-2 * np.sum(inter * np.outer(sg, sg)))


def geometric_torus_defect(p: int, q: int) -> tuple[int, int]:
    """(crossings, defect) of T(p,q) computed from the sampled polyline."""
    cr = polyline_crossings(torus_polyline(p, q))
    return len(cr), defect_from_crossings(cr)


def formula_torus_defect(p: int, q: int) -> int | None:
    """Closed forms for T(p, ap+1) and T(aq+1, q); None otherwise."""
    if (q - 1) % p == 0 and q > p:
        return 2 * ((q - 1) // p) * comb(p + 1, 3)
    if (p - 1) % q == 0 and p > q:
        return -2 * ((p - 1) // q) * comb(q, 3)
    return None


# ----------------------------------------------------------------------
# c2 from the Alexander polynomial (Wirtinger presentation, Fox calculus)


def _det(rows):
    """Exact determinant by Gaussian elimination over the rationals."""
    from fractions import Fraction

    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def _interpolate(xs, ys):
    """Coefficients (low to high) of the polynomial through the points."""
    from fractions import Fraction

    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    return coeffs


def alexander_c2(sequence, gauss_signs, first_over):
    """c2 of a knot diagram given by its Gauss word.

    ``sequence``: crossing ids in traversal order (each twice);
    ``gauss_signs[x]``: shadow sign; ``first_over[x]``: 1 if the first
    passage through x goes over.  c2 = sum k^2 a_k for the symmetric
    normalised Alexander polynomial a_0 + sum a_k (t^k + t^-k).
    """
    n = len(sequence) // 2
    if n == 0:
        return 0
    seen = set()
    over_pos = {}
    under_pos = {}
    for pos, x in enumerate(sequence):
        first = x not in seen
        seen.add(x)
        if first == bool(first_over[x]):
            over_pos[x] = pos
        else:
            under_pos[x] = pos
    # arcs run from one under-passage to the next; arc j starts after the j-th one
    unders = sorted(under_pos.values())
    arc_after = {p: j for j, p in enumerate(unders)}

    def arc_at(pos):
        before = [p for p in unders if p < pos]
        return arc_after[before[-1]] if before else n - 1

    def row(t):
        rows = []
        for x in sorted(under_pos):
            j = arc_after[under_pos[x]]
            i = (j - 1) % n
            k = arc_at(over_pos[x])
            first_is_over = over_pos[x] < under_pos[x]
            eps = gauss_signs[x] * (-1 if first_is_over else 1)
            r = [0] * n
            if eps > 0:
                r[k] += 1 - t
                r[i] += t
                r[j] -= 1
            else:
                r[k] += t - 1
                r[i] += 1
                r[j] -= t
            rows.append(r)
        return [r[:-1] for r in rows[:-1]]

    xs = list(range(2, n + 2))
    ys = [_det(row(t)) for t in xs]
    coeffs = _interpolate(xs, ys)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if sum(coeffs) < 0:
        coeffs = [-c for c in coeffs]
    assert sum(coeffs) == 1 and coeffs == coeffs[::-1], coeffs
    m = (len(coeffs) - 1) // 2
    return int(sum(k * k * coeffs[m + k] for k in range(1, m + 1)))
