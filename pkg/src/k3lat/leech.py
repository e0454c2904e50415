"""The Leech lattice (negative definite) and the rank-26 ambient lattice.

The Leech lattice is built from the extended binary Golay code in the
sqrt(8)-scaled integer coordinates; the certificate that the result is
the Leech lattice is: even, unimodular, rank 24, no vectors of norm 2
(checked exactly by enumeration).

L26 = Leech(-1) (+) U with U = [[0,1],[1,0]].  The distinguished Weyl
vector is w0 = (0,...,0; 1, 0).  Leech-type roots r with <r,r> = -2 and
<r,w0> = 1 are parametrized by lambda in Leech: r = (lambda; m, 1) with
m = lambda^2/2 - 1 in the positive-definite normalization.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .intlinalg import frac_vec_matmul, hnf_basis, matmul, transpose, vec_matmul
from .lattice import Lattice, NegDefEnumerator

# generator of the extended binary Golay code: [I | A] with the standard
# 12x12 circulant-like block (rows of A)
_GOLAY_A = [
    [1, 0, 0, 1, 1, 1, 1, 1, 0, 0, 0, 1],
    [0, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1, 0],
    [0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1],
    [1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 0],
    [1, 1, 0, 0, 1, 0, 0, 1, 1, 1, 0, 1],
    [1, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1, 0],
    [1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0],
    [0, 1, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1],
    [0, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1],
]


@lru_cache(maxsize=None)
def golay_generator():
    rows = []
    for i in range(12):
        rows.append([1 if j == i else 0 for j in range(12)] + _GOLAY_A[i])
    return rows


@lru_cache(maxsize=None)
def golay_codewords():
    gen = golay_generator()
    words = []
    for mask in range(4096):
        w = [0] * 24
        for i in range(12):
            if mask >> i & 1:
                w = [(a + b) % 2 for a, b in zip(w, gen[i])]
        words.append(tuple(w))
    return tuple(words)


def golay_weight_distribution():
    from collections import Counter

    return sorted(Counter(sum(w) for w in golay_codewords()).items())


@lru_cache(maxsize=None)
def leech_basis_scaled():
    """Basis of the Leech lattice in sqrt(8)-scaled integer coordinates.

    Generators: 2*chi_c for the twelve Golay basis words, (4,4,0,...),
    (4,-4,0,...), and (-3,1,...,1); the HNF of their span is the basis.
    The certificate (even, unimodular, no norm-2 vectors) is checked by
    leech_gram / assert_no_roots.
    """
    gens = []
    for row in golay_generator():
        gens.append([2 * x for x in row])
    v = [0] * 24
    v[0] = 4
    v[1] = 4
    gens.append(v[:])
    for i in range(1, 24):
        v = [0] * 24
        v[0] = 4
        v[i] = -4
        gens.append(v)
    gens.append([-3] + [1] * 23)
    basis = hnf_basis(gens)
    assert len(basis) == 24
    return basis


@lru_cache(maxsize=None)
def leech_gram_positive():
    """Positive definite Leech Gram (divided by the scaling 8)."""
    b = leech_basis_scaled()
    g = matmul(b, transpose(b))
    assert all(x % 8 == 0 for row in g for x in row)
    g = [[x // 8 for x in row] for row in g]
    assert all(g[i][i] % 2 == 0 for i in range(24))
    from .intlinalg import det_int

    assert det_int(g) == 1, "Leech construction is not unimodular"
    return g


@lru_cache(maxsize=None)
def leech_lattice():
    """The negative definite Leech lattice."""
    g = leech_gram_positive()
    return Lattice([[-x for x in row] for row in g])


@lru_cache(maxsize=None)
def leech_enumerator():
    return NegDefEnumerator(leech_lattice().gram)


def leech_has_no_roots():
    """Exact check that the minimum is > 2 (hence 4): no norm -2 vectors."""
    short = leech_enumerator().vectors_in_ball(2)
    return len(short) == 0


@lru_cache(maxsize=None)
def l26():
    """L26 = Leech(-1) (+) U and its distinguished Weyl vector."""
    gl = leech_lattice().gram
    n = 26
    g = [[0] * n for _ in range(n)]
    for i in range(24):
        for j in range(24):
            g[i][j] = gl[i][j]
    g[24][25] = g[25][24] = 1
    lat = Lattice(g)
    w0 = [0] * 26
    w0[24] = 1
    return lat, w0


def leech_root(lam):
    """The Leech-type root for lambda (row in Leech basis coordinates)."""
    from .intlinalg import pair

    gpos = leech_gram_positive()
    norm_pos = pair(gpos, lam, lam)
    assert norm_pos % 2 == 0
    return list(lam) + [norm_pos // 2 - 1, 1]


def leech_roots_violating(x):
    """All Leech-type roots r (w.r.t. w0) with <x, r> < 0.

    x is a rational row in L26 coordinates with positive norm and
    <x, w0> > 0.  The set is finite: it corresponds to Leech vectors in
    an open ball of squared radius 2 - x^2/t^2 around xi/t.
    """
    lat, w0 = l26()
    x = [Fraction(v) for v in x]
    xi = x[:24]
    s, t = x[24], x[25]
    assert t > 0, "point must pair positively with the Weyl vector"
    # <x, r_lam> = t*|lam|^2/2 - (xi, lam)_pos + (s - t) < 0
    # divide by t: |lam - xi/t|^2 < |xi/t|^2 - 2(s - t)/t = 2 - x^2/t^2
    gpos = leech_gram_positive()
    center = [v / t for v in xi]
    from .intlinalg import frac_pair

    xnorm = frac_pair(lat.gram, x, x)
    radius = 2 - xnorm / (t * t)
    if radius <= 0:
        return []
    enum = leech_enumerator()
    out = []
    for lam in enum.close_vectors(center, radius):
        # strict inequality check, exactly
        val = t * Fraction(frac_pair(gpos, lam, lam), 2) \
            - frac_pair(gpos, lam, center) * t + (s - t)
        r = leech_root(lam)
        val2 = frac_pair(lat.gram, x, r)
        assert val2 == val
        if val2 < 0:
            out.append(r)
    return sorted(out)


def walk_to_chamber(x, g=None, g_inv=None, max_steps=10000):
    """Walk Conway chambers toward x, starting from C(w0 . g).

    Returns (g', g'_inv) with x in C(w0 . g'); the Weyl vector of the
    final chamber is w0 . g'.  Leech-type roots of w0 . g correspond to
    standard Leech-type roots r via r . g, so the violated-root search is
    done at y = x . g^{-1} in the standard parametrization, and a
    reflection in r updates g to (reflection . g).
    """
    from .intlinalg import identity_matrix, matmul as imatmul
    from .lattice import reflection

    lat, w0 = l26()
    if g is None:
        g = identity_matrix(26)
        g_inv = identity_matrix(26)
    for _ in range(max_steps):
        y = frac_vec_matmul(x, g_inv)
        viol = leech_roots_violating(y)
        if not viol:
            return g, g_inv
        r = viol[0]
        s = reflection(lat, r)
        g = imatmul(s, g)
        g_inv = imatmul(g_inv, s)
    raise RuntimeError("chamber walk did not terminate")


def weyl_of(g):
    _, w0 = l26()
    return vec_matmul(w0, g)
