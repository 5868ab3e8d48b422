"""Compiled inner loops for the enumeration oracle.

All kernels take the field as dense lookup tables (add, mul, neg, inv) and
return int64 histograms; reweighting into exact integers happens in Python.
Every kernel enumerates only the share of the outermost loop assigned to
``part`` out of ``parts`` so callers can split work deterministically.
"""

import numpy as np
from numba import njit

# -- elimination primitives ------------------------------------------------------


@njit(cache=True, nogil=True)
def _rank_inplace(M, rows, cols, add, mul, neg, inv):
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        ip = inv[M[r, c]]
        for i in range(r + 1, rows):
            x = M[i, c]
            if x != 0:
                f = neg[mul[x, ip]]
                for j in range(c, cols):
                    y = M[r, j]
                    if y != 0:
                        M[i, j] = add[M[i, j], mul[f, y]]
        r += 1
        if r == rows:
            break
    return r


@njit(cache=True, nogil=True)
def _reduce(v, m, basis, pivots, rank, add, mul, neg):
    # v -= v[p_t] * b_t for each basis vector in insertion order
    for t in range(rank):
        x = v[pivots[t]]
        if x != 0:
            f = neg[x]
            for i in range(m):
                y = basis[t, i]
                if y != 0:
                    v[i] = add[v[i], mul[f, y]]


@njit(cache=True, nogil=True)
def _insert(v, m, basis, pivots, rank, mul, inv):
    p = -1
    for i in range(m):
        if v[i] != 0:
            p = i
            break
    if p < 0:
        return rank
    ip = inv[v[p]]
    for i in range(m):
        basis[rank, i] = mul[ip, v[i]]
    pivots[rank] = p
    return rank + 1


# -- column-product strategies (exhaustive / projectivized) ------------------------


@njit(cache=True, nogil=True)
def column_product_hist(m, n, cand, ncand, exps, part, parts, add, mul, neg, inv):
    """Rank histogram over every product of per-column candidates.

    cand[j, c, :] is candidate c of column j; exps[j, c] is its weight
    exponent.  hist[k, r] counts states with total exponent k and rank r.
    """
    rmax = min(m, n)
    hist = np.zeros((n + 1, rmax + 1), dtype=np.int64)
    idx = np.zeros(n, dtype=np.int64)
    M = np.zeros((m, n), dtype=np.int64)
    work = 0
    first = part
    if first >= ncand[0]:
        return hist, work
    idx[0] = first
    while True:
        k = 0
        for j in range(n):
            c = idx[j]
            k += exps[j, c]
            for i in range(m):
                M[i, j] = cand[j, c, i]
        r = _rank_inplace(M, m, n, add, mul, neg, inv)
        hist[k, r] += 1
        work += 1
        # advance mixed-radix counter; column 0 strides by `parts`
        j = n - 1
        while j >= 1:
            idx[j] += 1
            if idx[j] < ncand[j]:
                break
            idx[j] = 0
            j -= 1
        if j == 0:
            idx[0] += parts
            if idx[0] >= ncand[0]:
                break
    return hist, work


@njit(cache=True, nogil=True)
def column_dfs_hist(m, n, cand, ncand, exps, last_rows, nlast, q, target,
                    part, parts, add, mul, neg, inv):
    """Depth-first column enumeration with an incremental echelon basis.

    Columns 0..n-2 range over their candidates; the last column is counted
    in closed form from dim(U meet V), U the coordinate subspace of its free
    rows.  Branches that cannot reach ``target`` (>= 0) are pruned, so only
    hist[:, target] is exact in that mode.
    """
    rmax = min(m, n)
    hist = np.zeros((n + 1, rmax + 1), dtype=np.int64)
    basis = np.zeros((n + m + 1, m), dtype=np.int64)
    pivots = np.zeros(n + m + 1, dtype=np.int64)
    rank_at = np.zeros(n + 1, dtype=np.int64)
    exp_at = np.zeros(n + 1, dtype=np.int64)
    idx = np.full(n + 1, -1, dtype=np.int64)
    v = np.zeros(m, dtype=np.int64)
    work = 0
    qpow = np.ones(m + 1, dtype=np.int64)
    for i in range(1, m + 1):
        qpow[i] = qpow[i - 1] * q
    last = n - 1
    d = 0
    rank_at[0] = 0
    exp_at[0] = 0
    while d >= 0:
        rho = rank_at[d]
        if d == last:
            # closed-form last column
            work += 1
            trial = rho
            for t in range(nlast):
                for i in range(m):
                    v[i] = 0
                v[last_rows[t]] = 1
                _reduce(v, m, basis, pivots, trial, add, mul, neg)
                trial = _insert(v, m, basis, pivots, trial, mul, inv)
            dim_sum = trial
            dim_meet = nlast + rho - dim_sum
            inside = qpow[dim_meet]
            k = exp_at[d]
            hist[k, rho] += inside
            if rho + 1 <= rmax:
                hist[k, rho + 1] += qpow[nlast] - inside
            d -= 1
            continue
        # next candidate at depth d
        if idx[d] < 0:
            idx[d] = part if d == 0 else 0
        else:
            idx[d] += parts if d == 0 else 1
        if idx[d] >= ncand[d]:
            idx[d] = -1
            d -= 1
            continue
        c = idx[d]
        for i in range(m):
            v[i] = cand[d, c, i]
        _reduce(v, m, basis, pivots, rho, add, mul, neg)
        newrank = _insert(v, m, basis, pivots, rho, mul, inv)
        work += 1
        remaining = n - d - 1
        if target >= 0 and (newrank > target or newrank + remaining < target):
            continue
        rank_at[d + 1] = newrank
        exp_at[d + 1] = exp_at[d] + exps[d, c]
        d += 1
    return hist, work


# -- symmetric / skew enumeration -------------------------------------------------


@njit(cache=True, nogil=True)
def _sym_char(W, n, add, mul, neg, inv, square):
    """(rank, character index) of a symmetric matrix in odd characteristic.

    Destroys W.  Character index 0 is '+', 1 is '-'.
    """
    prod = 1
    r = 0
    for k in range(n):
        piv = -1
        for i in range(k, n):
            if W[i, i] != 0:
                piv = i
                break
        if piv < 0:
            a = -1
            b = -1
            for i in range(k, n):
                for j in range(i + 1, n):
                    if W[i, j] != 0:
                        a = i
                        b = j
                        break
                if a >= 0:
                    break
            if a < 0:
                break
            # row a += row b, then column a += column b
            for j in range(n):
                W[a, j] = add[W[a, j], W[b, j]]
            for i in range(n):
                W[i, a] = add[W[i, a], W[i, b]]
            piv = a
        if piv != k:
            for j in range(n):
                t = W[k, j]
                W[k, j] = W[piv, j]
                W[piv, j] = t
            for i in range(n):
                t = W[i, k]
                W[i, k] = W[i, piv]
                W[i, piv] = t
        d = W[k, k]
        ip = inv[d]
        for j in range(k + 1, n):
            x = W[j, k]
            if x != 0:
                f = neg[mul[x, ip]]
                for c in range(n):
                    W[j, c] = add[W[j, c], mul[f, W[k, c]]]
                for i in range(n):
                    W[i, j] = add[W[i, j], mul[f, W[i, k]]]
        prod = mul[prod, d]
        r += 1
    if square[prod] == 1:
        return r, 0
    return r, 1


@njit(cache=True, nogil=True)
def symmetric_hist(n, pos_i, pos_j, lead, start, stop, skew, want_char, q,
                   add, mul, neg, inv, square):
    """Rank (x character) histogram over symmetric or skew matrices.

    The free upper-triangular coordinates are pos_i/pos_j.  Coordinates
    before ``lead`` are 0, coordinate ``lead`` is 1 (lead = -1: no fixed
    coordinate) and the remaining ones run over the flat index range
    [start, stop) in mixed radix q.
    """
    f = pos_i.shape[0]
    hist = np.zeros((n + 1, 2), dtype=np.int64)
    vals = np.zeros(f, dtype=np.int64)
    A = np.zeros((n, n), dtype=np.int64)
    W = np.zeros((n, n), dtype=np.int64)
    base = lead + 1
    work = 0
    for t in range(start, stop):
        for s in range(f):
            vals[s] = 0
        if lead >= 0:
            vals[lead] = 1
        x = t
        for s in range(f - 1, base - 1, -1):
            vals[s] = x % q
            x //= q
        for i in range(n):
            for j in range(n):
                A[i, j] = 0
        for s in range(f):
            i = pos_i[s]
            j = pos_j[s]
            a = vals[s]
            A[i, j] = a
            if i != j:
                A[j, i] = neg[a] if skew else a
        if want_char:
            for i in range(n):
                for j in range(n):
                    W[i, j] = A[i, j]
            r, c = _sym_char(W, n, add, mul, neg, inv, square)
            hist[r, c] += 1
        else:
            r = _rank_inplace(A, n, n, add, mul, neg, inv)
            hist[r, 0] += 1
        work += 1
    return hist, work


# -- Bruhat classification ----------------------------------------------------------


@njit(cache=True, nogil=True)
def _bruhat_code(A, n, add, mul, neg, inv, G, pivot_of_col):
    """Cell code sum_c (w(c)-1) * n^c for invertible A, or -1 if singular."""
    for i in range(n):
        for j in range(n):
            G[i, j] = A[i, j]
    for c in range(n):
        pivot_of_col[c] = -1
    for k in range(n):
        while True:
            c = -1
            for j in range(n - 1, -1, -1):
                if G[k, j] != 0:
                    c = j
                    break
            if c < 0:
                return -1
            src = pivot_of_col[c]
            if src < 0:
                break
            f = neg[mul[G[k, c], inv[G[src, c]]]]
            for j in range(n):
                y = G[src, j]
                if y != 0:
                    G[k, j] = add[G[k, j], mul[f, y]]
        pivot_of_col[c] = k
    code = 0
    base = 1
    for c in range(n):
        code += pivot_of_col[c] * base
        base *= n
    return code


@njit(cache=True, nogil=True)
def bruhat_hist(n, pos_i, pos_j, start, stop, q, add, mul, neg, inv):
    """Per-cell counts of invertible matrices whose free entries are pos_i/pos_j."""
    f = pos_i.shape[0]
    size = 1
    for _ in range(n):
        size *= n
    hist = np.zeros(size, dtype=np.int64)
    A = np.zeros((n, n), dtype=np.int64)
    G = np.zeros((n, n), dtype=np.int64)
    pc = np.zeros(n, dtype=np.int64)
    for t in range(start, stop):
        x = t
        for s in range(f - 1, -1, -1):
            A[pos_i[s], pos_j[s]] = x % q
            x //= q
        code = _bruhat_code(A, n, add, mul, neg, inv, G, pc)
        if code >= 0:
            hist[code] += 1
    return hist


# -- quadratic forms -----------------------------------------------------------------


@njit(cache=True, nogil=True)
def diagonal_form_zeros(coeffs, q, start, stop, add, mul):
    """Number of x in the flat range with sum_i coeffs[i] * x_i^2 = 0."""
    m = coeffs.shape[0]
    count = 0
    for t in range(start, stop):
        x = t
        acc = 0
        for i in range(m):
            xi = x % q
            x //= q
            acc = add[acc, mul[coeffs[i], mul[xi, xi]]]
        if acc == 0:
            count += 1
    return count
