"""Exact integer and rational linear algebra.

Everything in this package runs on arbitrary-precision integers and
fractions.Fraction; a guarded numpy int64 fast path exists for products
whose entry bounds provably cannot overflow (see fast_matmul).

Matrices are lists of lists of ints (rows); vectors are lists of ints.
The bilinear pairing convention throughout the package is row-vector
based: pair(G, u, v) = u G v^T, and isometries act on the right,
v -> v.M.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_INT64_SAFE = 2**62


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(m, n):
    return [[0] * n for _ in range(m)]


def copy_matrix(a):
    return [row[:] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_abs_max(a):
    return max((abs(x) for row in a for x in row), default=0)


def fast_matmul(a, b):
    """a @ b with an explicitly guarded int64 fast path.

    The guard requires max|a| * max|b| * inner_dim < 2^62 so that int64
    accumulation cannot overflow; otherwise exact Python ints are used.
    """
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    n_inner = len(b)
    ma, mb = mat_abs_max(a), mat_abs_max(b)
    if ma and mb and ma * mb * n_inner < _INT64_SAFE:
        res = np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)
        return [[int(x) for x in row] for row in res]
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matmul(a, b):
    return fast_matmul(a, b)


def vec_matmul(v, m):
    """Row vector times matrix, exact."""
    if not m:
        return []
    mv = mat_abs_max(m)
    va = max((abs(x) for x in v), default=0)
    if va and mv and va * mv * len(v) < _INT64_SAFE:
        res = np.asarray(list(v), dtype=np.int64) @ np.asarray(m, dtype=np.int64)
        return [int(x) for x in res]
    cols = list(zip(*m))
    return [sum(x * y for x, y in zip(v, col)) for col in cols]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def pair(gram, u, v):
    """u G v^T for integer rows u, v."""
    return dot(vec_matmul(u, gram), v)


def frac_matmul(a, b):
    """Matrix product over Fraction/int entries, exact."""
    bt = list(zip(*b))
    return [[sum(Fraction(x) * y for x, y in zip(row, col)) for col in bt] for row in a]


def frac_vec_matmul(v, m):
    cols = list(zip(*m))
    return [sum(Fraction(x) * y for x, y in zip(v, col)) for col in cols]


def frac_pair(gram, u, v):
    return sum(a * b for a, b in zip(frac_vec_matmul(u, gram), v))


def gcd2(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def lcm2(a, b):
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // gcd2(a, b)


def content(v):
    g = 0
    for x in v:
        g = gcd2(g, x)
    return g


def primitive_part(v):
    """v divided by the gcd of its entries (zero vector unchanged)."""
    g = content(v)
    if g <= 1:
        return list(v)
    return [x // g for x in v]


def clear_denominators(row):
    """Integer row and positive scale d with d*row integral and primitive-ready."""
    fr = [Fraction(x) for x in row]
    d = 1
    for x in fr:
        d = lcm2(d, x.denominator)
    return [int(x * d) for x in fr], d


# ---------------------------------------------------------------------------
# Hermite normal form (row style) with transformation matrix.


def hnf_row(a):
    """Row HNF: returns (h, u) with u unimodular, u*a = h.

    h is in row echelon form with positive pivots and reduced entries
    above each pivot; zero rows are at the bottom.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = copy_matrix(a)
    u = identity_matrix(m)
    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        best = None
        for i in range(pivot_row, m):
            x = h[i][col]
            if x != 0 and (best is None or abs(x) < abs(h[best][col])):
                best = i
        if best is None:
            continue
        h[pivot_row], h[best] = h[best], h[pivot_row]
        u[pivot_row], u[best] = u[best], u[pivot_row]
        while True:
            p = h[pivot_row][col]
            dirty = False
            for i in range(pivot_row + 1, m):
                x = h[i][col]
                if x == 0:
                    continue
                q = x // p
                if q:
                    h[i] = [hi - q * hp for hi, hp in zip(h[i], h[pivot_row])]
                    u[i] = [ui - q * up for ui, up in zip(u[i], u[pivot_row])]
                if h[i][col] != 0:
                    dirty = True
            if not dirty:
                break
            best = pivot_row
            for i in range(pivot_row, m):
                x = h[i][col]
                if x != 0 and (h[best][col] == 0 or abs(x) < abs(h[best][col])):
                    best = i
            if best != pivot_row:
                h[pivot_row], h[best] = h[best], h[pivot_row]
                u[pivot_row], u[best] = u[best], u[pivot_row]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        p = h[pivot_row][col]
        for i in range(pivot_row):
            q = h[i][col] // p
            if q:
                h[i] = [hi - q * hp for hi, hp in zip(h[i], h[pivot_row])]
                u[i] = [ui - q * up for ui, up in zip(u[i], u[pivot_row])]
        pivot_row += 1
    return h, u


def hnf_basis(rows):
    """Nonzero HNF rows: a canonical basis of the row span over Z."""
    h, _ = hnf_row(rows)
    return [row for row in h if any(row)]


def row_rank(a):
    if not a:
        return 0
    return len(hnf_basis(a))


def kernel_basis(a):
    """Basis of the left integer kernel {x : x a = 0}; saturated.

    a is m x n; returns rows of length m (possibly none).
    """
    if not a:
        return []
    h, u = hnf_row(a)
    return [u[i][:] for i in range(len(h)) if not any(h[i])]


def right_kernel_basis(a):
    """Basis of {y : a y^T = 0}, returned as rows of length n."""
    return kernel_basis(transpose(a))


def saturate(rows, ambient_rank=None):
    """Basis of the primitive closure of the span of `rows` in Z^n.

    Raises ValueError if the rows are linearly dependent over Q.
    """
    if not rows:
        return []
    n = len(rows[0])
    if ambient_rank is not None and ambient_rank != n:
        raise ValueError("ambient rank does not match vector length")
    if row_rank(rows) != len(rows):
        raise ValueError("input vectors are linearly dependent")
    k = right_kernel_basis(rows)
    if not k:
        return identity_matrix(n)
    return kernel_basis(transpose(k))


def solve_integer(m, target):
    """One integer solution x of x m = target, or None."""
    h, u = hnf_row(m)
    x = [0] * len(m)
    t = list(target)
    for i, row in enumerate(h):
        piv = next((j for j, v in enumerate(row) if v), None)
        if piv is None:
            break
        q, r = divmod(t[piv], row[piv])
        if r != 0:
            return None
        if q:
            t = [tv - q * hv for tv, hv in zip(t, row)]
            x[i] = q
    if any(t):
        return None
    return vec_matmul(x, u)


def in_row_span(m, target):
    return solve_integer(m, target) is not None


def solve_frac(m, target):
    """Solve x m = target over Q (m square nonsingular); returns Fractions."""
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    inv = [row[n:] for row in aug]
    return [sum(Fraction(t) * inv[k][j] for k, t in enumerate(target)) for j in range(n)]


def frac_inverse(m):
    """Inverse of a square nonsingular matrix, entries as Fractions."""
    n = len(m)
    rows = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        rows.append(solve_frac(m, e))
    # row j solves x m = e_j, i.e. it is the j-th row of m^{-1}
    return rows


# ---------------------------------------------------------------------------
# Smith normal form.


def smith_normal_form(a):
    """SNF with transforms: returns (u, d, v) with u a v = d.

    d is diagonal with d1 | d2 | ..., entries nonnegative; u, v unimodular.
    Pivot choice: smallest absolute value, ties by lowest row then column.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = copy_matrix(a)
    u = identity_matrix(m)
    v = identity_matrix(n)

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row_dst -= q * row_src
        d[dst] = [x - q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in d:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    size = min(m, n)
    while t < size:
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0 and (piv is None or abs(x) < abs(d[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            p = d[t][t]
            restart = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, d[i][t] // p)
                    if d[i][t]:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, d[t][j] // p)
                    if d[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if not restart:
                break
        p = d[t][t]
        ok = True
        for i in range(t + 1, m):
            bad = next((j for j in range(t + 1, n) if d[i][j] % p != 0), None)
            if bad is not None:
                add_row(i, t, -1)  # bring that row in and redo the pivot
                ok = False
                break
        if ok:
            t += 1
    for i in range(size):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]
    return u, d, v


def elementary_divisors(a):
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i] != 0]


def det_int(a):
    """Determinant of an integer matrix (Bareiss fraction-free elimination)."""
    n = len(a)
    if n == 0:
        return 1
    m = copy_matrix(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def signature(gram):
    """Exact signature (n_plus, n_minus, n_zero) of a symmetric matrix."""
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    active = list(range(n))
    plus = minus = zero = 0
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            off = None
            for i in active:
                for j in active:
                    if i != j and a[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += len(active)
                break
            i, j = off
            # congruence: v_i <- v_i + v_j makes a[i][i] = 2 a[i][j] != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            continue
        pivot = a[k][k]
        if pivot > 0:
            plus += 1
        else:
            minus += 1
        active.remove(k)
        for i in active:
            if a[i][k] != 0:
                f = a[i][k] / pivot
                for c in range(n):
                    a[i][c] -= f * a[k][c]
                for r in range(n):
                    a[r][i] -= f * a[r][k]
    return plus, minus, zero


# ---------------------------------------------------------------------------
# LLL on a Gram matrix (no embedding needed).


def lll_gram(gram, delta=Fraction(3, 4)):
    """LLL-reduce a positive definite Gram matrix.

    Returns (reduced_gram, t) with t unimodular and reduced = t * G * t^T.
    """
    n = len(gram)
    t = identity_matrix(n)
    g = [[Fraction(x) for x in row] for row in gram]

    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n

    def gso():
        for i in range(n):
            bstar[i] = g[i][i]
            for j in range(i):
                s = g[i][j]
                for k in range(j):
                    s -= mu[i][k] * mu[j][k] * bstar[k]
                mu[i][j] = s / bstar[j]
                bstar[i] -= mu[i][j] ** 2 * bstar[j]

    def row_op(k, j, q):
        # v_k <- v_k - q v_j ; update t and g congruently
        t[k] = [x - q * y for x, y in zip(t[k], t[j])]
        for c in range(n):
            g[k][c] -= q * g[j][c]
        for r in range(n):
            g[r][k] -= q * g[r][j]

    def swap(k):
        t[k], t[k - 1] = t[k - 1], t[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for r in range(n):
            g[r][k], g[r][k - 1] = g[r][k - 1], g[r][k]

    gso()
    k = 1
    while k < n:
        changed = False
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                row_op(k, j, q)
                changed = True
        if changed:
            gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k)
            gso()
            k = max(k - 1, 1)
    return [[int(x) for x in row] for row in g], t
