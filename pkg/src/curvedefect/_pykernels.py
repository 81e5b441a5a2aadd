"""Pure-Python versions of the hot kernels.

These are always importable and serve as the fallback when the compiled
extension ``_ckernels`` is missing.  Both modules expose the same three
functions with identical semantics.
"""

from __future__ import annotations

from typing import Sequence


def canonical_code(alpha: Sequence[int], n: int, mirror: bool) -> tuple[int, ...]:
    """Lexicographically smallest BFS relabelling code of a connected
    4-regular map.

    ``alpha`` is the dart involution on darts ``4*v + slot``.  Every dart is
    tried as the root; with ``mirror`` the reversed rotation is tried too.
    The code lists, for each vertex in discovery order and each relative slot
    in rotation order, ``4 * label(w) + relslot(w)`` of the alpha-image.
    """
    if n == 0:
        return ()
    size = 4 * n
    best: list[int] | None = None
    chiralities = (1, -1) if mirror else (1,)
    label = [-1] * n
    offset = [0] * n
    for start in range(size):
        for step in chiralities:
            for i in range(n):
                label[i] = -1
            v0 = start >> 2
            label[v0] = 0
            offset[v0] = start & 3
            order = [v0]
            code: list[int] = []
            worse = False
            better = best is None
            head = 0
            while head < len(order):
                v = order[head]
                head += 1
                base = offset[v]
                for k in range(4):
                    e = alpha[4 * v + ((base + step * k) & 3)]
                    w = e >> 2
                    if label[w] < 0:
                        label[w] = len(order)
                        offset[w] = e & 3
                        order.append(w)
                    token = 4 * label[w] + ((step * ((e & 3) - offset[w])) & 3)
                    if not better:
                        ref = best[len(code)]
                        if token > ref:
                            worse = True
                            break
                        if token < ref:
                            better = True
                    code.append(token)
                if worse:
                    break
            if worse:
                continue
            if len(order) != n:
                raise ValueError("canonical_code requires a connected map")
            if better:
                best = code
    return tuple(best)


def interleave_matrix(first: Sequence[int], second: Sequence[int]) -> list[list[int]]:
    """0/1 matrix with ``m[x][y] == 1`` iff crossings x and y interleave.

    ``first[x] < second[x]`` are the two positions of x in the Gauss word.
    """
    n = len(first)
    m = [[0] * n for _ in range(n)]
    for x in range(n):
        a, b = first[x], second[x]
        row = m[x]
        for y in range(x + 1, n):
            inside = (a < first[y] < b) + (a < second[y] < b)
            if inside == 1:
                row[y] = 1
                m[y][x] = 1
    return m


def casson_sum(weights: Sequence[Sequence[int]], ordered_after: Sequence[Sequence[int]]) -> int:
    """Sum of ``c2`` over all ``2**n`` ascending/descending resolutions.

    ``weights[x][y]`` is ``[x interleaves y] * sgn(x) * sgn(y)`` and
    ``ordered_after[x][y]`` is 1 when y's first passage comes before x's.
    A resolution contributes ``-sum w[x][y]`` over descending x and
    ascending y with ``ordered_after[x][y]``.  Enumeration uses a Gray code
    with O(n) incremental updates.
    """
    n = len(weights)
    if n == 0:
        return 0
    # coef[x][y] contribution when x descending and y ascending
    coef = [[weights[x][y] * ordered_after[x][y] for y in range(n)] for x in range(n)]
    asc = [0] * n
    # running value: -sum_{x desc, y asc} coef[x][y]; all descending at start
    value = 0
    total = value
    # row/col partial sums against current ascending set
    for g in range(1, 1 << n):
        bit = (g & -g).bit_length() - 1
        x = bit
        if asc[x]:
            # x: ascending -> descending
            # remove terms with y = x ascending, add terms with x descending
            gain = 0
            for z in range(n):
                if z != x:
                    if not asc[z]:
                        gain += coef[z][x]
                    else:
                        gain -= coef[x][z]
            value += gain
            asc[x] = 0
        else:
            loss = 0
            for z in range(n):
                if z != x:
                    if asc[z]:
                        loss += coef[x][z]
                    else:
                        loss -= coef[z][x]
            value += loss
            asc[x] = 1
        total += value
    return total
