"""Exact in-place integer row/column reduction on numpy object arrays.

These are the arbitrary-precision twins of the int64 kernels in
_reduction_numba.  Both implement the same elementary-operation sequence
(same pivot choices, same tie-breaks), so whenever the fast path succeeds
it produces bit-identical output to this module.
"""

import numpy as np


def _row_swap(m, i, j):
    m[[i, j]] = m[[j, i]]


def _col_swap(m, i, j):
    m[:, [i, j]] = m[:, [j, i]]


def hnf_inplace(h, u):
    """Reduce h to row Hermite normal form, mirroring all row ops into u.

    Post: h is upper echelon with positive pivots and entries above each
    pivot reduced into [0, pivot).
    """
    rows, cols = h.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # Euclid down column c: move the smallest nonzero entry into the
        # pivot slot, eliminate below, repeat until the column is clear.
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
                h[r] = -h[r]
                u[r] = -u[r]
            clear = True
            p = h[r, c]
            for i in range(r + 1, rows):
                v = h[i, c]
                if v != 0:
                    q = v // p
                    if q:
                        h[i] -= h[r] * q
                        u[i] -= u[r] * q
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
                    if q:
                        h[i] -= h[r] * q
                        u[i] -= u[r] * q
            r += 1


def snf_inplace(s, u, v):
    """Reduce s to Smith normal form, mirroring row ops into u, column ops
    into v.

    Post: s diagonal, entries nonnegative, each dividing the next.
    Pivot strategy: smallest nonzero entry of the remaining block.
    """
    rows, cols = s.shape
    t = 0
    while t < rows and t < cols:
        # Smallest nonzero entry of s[t:, t:] becomes the pivot.
        pi = pj = -1
        best = 0
        for i in range(t, rows):
            for j in range(t, cols):
                w = s[i, j]
                if w != 0:
                    a = -w if w < 0 else w
                    if pi < 0 or a < best:
                        pi, pj, best = i, j, a
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
                    if q:
                        s[i] -= s[t] * q
                        u[i] -= u[t] * q
                    if s[i, t] != 0:
                        # Remainder is smaller than the pivot; promote it.
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
                    if q:
                        s[:, j] -= s[:, t] * q
                        v[:, j] -= v[:, t] * q
                    if s[t, j] != 0:
                        _col_swap(s, t, j)
                        _col_swap(v, t, j)
                        dirty = True
                        p = s[t, t]
            if dirty:
                continue
            # Cross is clear; force divisibility of the remaining block.
            p = s[t, t]
            fi = fj = -1
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if s[i, j] % p != 0:
                        fi, fj = i, j
                        break
                if fi >= 0:
                    break
            if fi < 0:
                break
            s[t] += s[fi]
            u[t] += u[fi]
        if s[t, t] < 0:
            s[t] = -s[t]
            u[t] = -u[t]
        t += 1
