"""numba-compiled int64 twins of the reduction loops in _reduction.

Every multiply-add is guarded so entries never exceed 2**61 in magnitude;
a kernel that would overflow returns 1 and the caller reruns the exact
object-array path.  On success the output is bit-identical to _reduction
(same pivots, same tie-breaks, same elementary operations).
"""

import numpy as np
from numba import njit

LIM = 1 << 61


@njit(cache=True)
def _row_swap(m, i, j):
    for k in range(m.shape[1]):
        t = m[i, k]
        m[i, k] = m[j, k]
        m[j, k] = t


@njit(cache=True)
def _col_swap(m, i, j):
    for k in range(m.shape[0]):
        t = m[k, i]
        m[k, i] = m[k, j]
        m[k, j] = t


@njit(cache=True)
def _row_neg(m, i):
    for k in range(m.shape[1]):
        m[i, k] = -m[i, k]


@njit(cache=True)
def _rowop(m, i, r, q):
    # m[i] -= q * m[r]; False when any entry would leave [-LIM, LIM].
    for k in range(m.shape[1]):
        y = m[r, k]
        if y != 0:
            aq = q if q >= 0 else -q
            ay = y if y >= 0 else -y
            if aq > LIM // ay:
                return False
            x = m[i, k] - q * y
            if x > LIM or x < -LIM:
                return False
            m[i, k] = x
    return True


@njit(cache=True)
def _colop(m, j, t, q):
    # m[:, j] -= q * m[:, t]
    for k in range(m.shape[0]):
        y = m[k, t]
        if y != 0:
            aq = q if q >= 0 else -q
            ay = y if y >= 0 else -y
            if aq > LIM // ay:
                return False
            x = m[k, j] - q * y
            if x > LIM or x < -LIM:
                return False
            m[k, j] = x
    return True


@njit(cache=True)
def _row_add(m, i, src):
    # m[i] += m[src]
    for k in range(m.shape[1]):
        x = m[i, k] + m[src, k]
        if x > LIM or x < -LIM:
            return False
        m[i, k] = x
    return True


@njit(cache=True)
def hnf_i64(h, u):
    rows, cols = h.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            piv = -1
            best = 0
            for i in range(r, rows):
                v = h[i, c]
                if v != 0:
                    a = -v if v < 0 else v
                    if piv < 0 or a < best:
                        piv = i
                        best = a
            if piv < 0:
                break
            if piv != r:
                _row_swap(h, r, piv)
                _row_swap(u, r, piv)
            if h[r, c] < 0:
                _row_neg(h, r)
                _row_neg(u, r)
            clear = True
            p = h[r, c]
            for i in range(r + 1, rows):
                v = h[i, c]
                if v != 0:
                    q = v // p
                    if q != 0:
                        if not _rowop(h, i, r, q):
                            return 1
                        if not _rowop(u, i, r, q):
                            return 1
                    if h[i, c] != 0:
                        clear = False
            if clear:
                break
        if h[r, c] != 0:
            p = h[r, c]
            for i in range(r):
                v = h[i, c]
                if v != 0:
                    q = v // p
                    if q != 0:
                        if not _rowop(h, i, r, q):
                            return 1
                        if not _rowop(u, i, r, q):
                            return 1
            r += 1
    return 0


@njit(cache=True)
def snf_i64(s, u, v):
    rows, cols = s.shape
    t = 0
    while t < rows and t < cols:
        pi = -1
        pj = -1
        best = 0
        for i in range(t, rows):
            for j in range(t, cols):
                w = s[i, j]
                if w != 0:
                    a = -w if w < 0 else w
                    if pi < 0 or a < best:
                        pi = i
                        pj = j
                        best = a
        if pi < 0:
            break
        if pi != t:
            _row_swap(s, t, pi)
            _row_swap(u, t, pi)
        if pj != t:
            _col_swap(s, t, pj)
            _col_swap(v, t, pj)
        while True:
            dirty = False
            p = s[t, t]
            for i in range(t + 1, rows):
                w = s[i, t]
                if w != 0:
                    q = w // p
                    if q != 0:
                        if not _rowop(s, i, t, q):
                            return 1
                        if not _rowop(u, i, t, q):
                            return 1
                    if s[i, t] != 0:
                        _row_swap(s, t, i)
                        _row_swap(u, t, i)
                        dirty = True
                        p = s[t, t]
            if dirty:
                continue
            for j in range(t + 1, cols):
                w = s[t, j]
                if w != 0:
                    q = w // p
                    if q != 0:
                        if not _colop(s, j, t, q):
                            return 1
                        if not _colop(v, j, t, q):
                            return 1
                    if s[t, j] != 0:
                        _col_swap(s, t, j)
                        _col_swap(v, t, j)
                        dirty = True
                        p = s[t, t]
            if dirty:
                continue
            p = s[t, t]
            fi = -1
            fj = -1
            for i in range(t + 1, rows):
                if fi >= 0:
                    break
                for j in range(t + 1, cols):
                    if s[i, j] % p != 0:
                        fi = i
                        fj = j
                        break
            if fi < 0:
                break
            if not _row_add(s, t, fi):
                return 1
            if not _row_add(u, t, fi):
                return 1
        if s[t, t] < 0:
            _row_neg(s, t)
            _row_neg(u, t)
        t += 1
    return 0
