"""The field with nine elements, table-driven.

Elements are encoded as integers 0..8: the element a + b*i is a + 3*b
with a, b in {0,1,2} and i^2 = -1.  The Frobenius x -> x^3 is
conjugation a + b*i -> a - b*i.
"""

from __future__ import annotations

Q = 9


def _make_tables():
    add = [[0] * Q for _ in range(Q)]
    mul = [[0] * Q for _ in range(Q)]
    for x in range(Q):
        a1, b1 = x % 3, x // 3
        for y in range(Q):
            a2, b2 = y % 3, y // 3
            add[x][y] = (a1 + a2) % 3 + 3 * ((b1 + b2) % 3)
            # (a1 + b1 i)(a2 + b2 i) with i^2 = -1
            ar = (a1 * a2 - b1 * b2) % 3
            br = (a1 * b2 + b1 * a2) % 3
            mul[x][y] = ar + 3 * br
    neg = [(3 - x % 3) % 3 + 3 * ((3 - x // 3) % 3) for x in range(Q)]
    inv = [0] * Q
    for x in range(1, Q):
        inv[x] = next(y for y in range(1, Q) if mul[x][y] == 1)
    conj = [x % 3 + 3 * ((3 - x // 3) % 3) for x in range(Q)]
    return add, mul, neg, inv, conj


ADD, MUL, NEG, INV, CONJ = _make_tables()
ONE = 1
I_UNIT = 3          # the element i
NORM = [MUL[x][CONJ[x]] for x in range(Q)]  # x * x^3, lands in {0,1,2}


def add(x, y):
    return ADD[x][y]


def sub(x, y):
    return ADD[x][NEG[y]]


def mul(x, y):
    return MUL[x][y]


def inv(x):
    if x == 0:
        raise ZeroDivisionError("inverse of 0 in GF(9)")
    return INV[x]


def conj(x):
    return CONJ[x]


def norm(x):
    return NORM[x]


def pow4(x):
    return NORM[x]  # x^4 = x * x^3 lands in the prime field


def elements():
    return range(Q)


def units():
    return range(1, Q)


def vec_add(u, v):
    return tuple(ADD[a][b] for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(MUL[c][x] for x in v)


def vec_conj(v):
    return tuple(CONJ[x] for x in v)


def normalize_point(v):
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    lead = next((x for x in v if x), None)
    if lead is None:
        return None
    c = INV[lead]
    return tuple(MUL[c][x] for x in v)


def projective_points(dim):
    """All normalized points of P^(dim-1) over GF(9)."""
    pts = set()
    for mask in range(Q ** dim):
        v = []
        m = mask
        for _ in range(dim):
            v.append(m % Q)
            m //= Q
        p = normalize_point(tuple(v))
        if p is not None:
            pts.add(p)
    return sorted(pts)


def mat_mul_vec(m, v):
    """Row vector times matrix over GF(9)."""
    n = len(m[0])
    out = [0] * n
    for i, x in enumerate(v):
        if x:
            row = m[i]
            for j in range(n):
                out[j] = ADD[out[j]][MUL[x][row[j]]]
    return tuple(out)


def mat_mul(a, b):
    return tuple(mat_mul_vec(b, row) for row in a)


def mat_conj(a):
    return tuple(tuple(CONJ[x] for x in row) for row in a)


def mat_transpose(a):
    return tuple(tuple(col) for col in zip(*a))


def rref2x4(p, q):
    """Canonical reduced echelon form of the row span of two points."""
    rows = [list(p), list(q)]
    pivot_cols = []
    r = 0
    for col in range(4):
        piv = next((i for i in range(r, 2) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        c = INV[rows[r][col]]
        rows[r] = [MUL[c][x] for x in rows[r]]
        for i in range(2):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [SUB_TABLE[x][MUL[f][y]] for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == 2:
            break
    if r != 2:
        raise ValueError("points do not span a line")
    return (tuple(rows[0]), tuple(rows[1]))


SUB_TABLE = [[ADD[x][NEG[y]] for y in range(Q)] for x in range(Q)]
