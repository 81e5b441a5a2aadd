# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels`` (same semantics)."""

from libc.stdlib cimport malloc, free


def canonical_code(alpha, int n, bint mirror):
    if n == 0:
        return ()
    cdef int size = 4 * n
    cdef int *al = <int *> malloc(size * sizeof(int))
    cdef int *label = <int *> malloc(n * sizeof(int))
    cdef int *offset = <int *> malloc(n * sizeof(int))
    cdef int *order = <int *> malloc(n * sizeof(int))
    cdef int *best = <int *> malloc(size * sizeof(int))
    cdef int *code = <int *> malloc(size * sizeof(int))
    cdef int i, start, step, v0, head, tail, v, base, k, e, w, token, length
    cdef int have_best = 0, worse, better, nchir
    cdef int chir[2]
    if not (al and label and offset and order and best and code):
        raise MemoryError()
    try:
        for i in range(size):
            al[i] = alpha[i]
        chir[0] = 1
        chir[1] = -1
        nchir = 2 if mirror else 1
        for start in range(size):
            for i in range(nchir):
                step = chir[i]
                for v in range(n):
                    label[v] = -1
                v0 = start >> 2
                label[v0] = 0
                offset[v0] = start & 3
                order[0] = v0
                tail = 1
                head = 0
                length = 0
                worse = 0
                better = not have_best
                while head < tail:
                    v = order[head]
                    head += 1
                    base = offset[v]
                    for k in range(4):
                        e = al[4 * v + ((base + step * k) & 3)]
                        w = e >> 2
                        if label[w] < 0:
                            label[w] = tail
                            offset[w] = e & 3
                            order[tail] = w
                            tail += 1
                        token = 4 * label[w] + ((step * ((e & 3) - offset[w])) & 3)
                        if not better:
                            if token > best[length]:
                                worse = 1
                                break
                            if token < best[length]:
                                better = 1
                        code[length] = token
                        length += 1
                    if worse:
                        break
                if worse:
                    continue
                if tail != n:
                    raise ValueError("canonical_code requires a connected map")
                if better:
                    for k in range(size):
                        best[k] = code[k]
                    have_best = 1
        return tuple([best[k] for k in range(size)])
    finally:
        free(al)
        free(label)
        free(offset)
        free(order)
        free(best)
        free(code)


def interleave_matrix(first, second):
    cdef int n = len(first)
    cdef int x, y, a, b, fy, sy, inside
    m = [[0] * n for _ in range(n)]
    cdef int *f = <int *> malloc((n + 1) * sizeof(int))
    cdef int *s = <int *> malloc((n + 1) * sizeof(int))
    if not (f and s):
        raise MemoryError()
    try:
        for x in range(n):
            f[x] = first[x]
            s[x] = second[x]
        for x in range(n):
            a = f[x]
            b = s[x]
            row = m[x]
            for y in range(x + 1, n):
                fy = f[y]
                sy = s[y]
                inside = (a < fy and fy < b) + (a < sy and sy < b)
                if inside == 1:
                    row[y] = 1
                    m[y][x] = 1
        return m
    finally:
        free(f)
        free(s)


def casson_sum(weights, ordered_after):
    cdef int n = len(weights)
    if n == 0:
        return 0
    cdef long long *coef = <long long *> malloc(n * n * sizeof(long long))
    cdef char *asc = <char *> malloc(n * sizeof(char))
    cdef int x, y, z
    cdef long long value = 0, total = 0, delta
    cdef unsigned long long g, limit
    if not (coef and asc):
        raise MemoryError()
    try:
        for x in range(n):
            asc[x] = 0
            wrow = weights[x]
            orow = ordered_after[x]
            for y in range(n):
                coef[x * n + y] = <long long> wrow[y] * <long long> orow[y]
        limit = (<unsigned long long> 1) << n
        g = 1
        while g < limit:
            x = 0
            while not ((g >> x) & 1):
                x += 1
            delta = 0
            if asc[x]:
                for z in range(n):
                    if z != x:
                        if not asc[z]:
                            delta += coef[z * n + x]
                        else:
                            delta -= coef[x * n + z]
                asc[x] = 0
            else:
                for z in range(n):
                    if z != x:
                        if asc[z]:
                            delta += coef[x * n + z]
                        else:
                            delta -= coef[z * n + x]
                asc[x] = 1
            value += delta
            total += value
            g += 1
        return total
    finally:
        free(coef)
        free(asc)
