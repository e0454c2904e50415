"""Primitive embeddings of the two Neron-Severi lattices into L26.

The rank-22 lattice is embedded by choosing two orthogonal A2's of
Leech-type roots in L26, taking the orthogonal complement S', and
matching the root-wall intersection graph of the resulting chamber with
the 112-line configuration; the rank-20 lattice is then embedded by
composing with the specialization matrix rho.  All acceptance checks
downstream are invariant under the isometry choices made here.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache

from . import fermat, leech
from .borcherds import Chamber, EmbeddingData, Wall, chamber_walls
from .graphs import WeightedGraph, find_isomorphism
from .intlinalg import (
    det_int,
    frac_pair,
    frac_vec_matmul,
    identity_matrix,
    kernel_basis,
    matmul,
    pair,
    primitive_part,
    transpose,
    vec_matmul,
)
from .lattice import DiscriminantForm, Lattice


def _leech_pair(u, v):
    g = leech.leech_gram_positive()
    return pair(g, u, v)


@lru_cache(maxsize=None)
def find_2a2_roots():
    """Four Leech-type roots spanning two orthogonal A2's.

    In the Leech parametrization, <r_a, r_b> = |a-b|^2/2 - 2, so the four
    parameters (0, mu1, lam2, mu2) must satisfy |mu1|^2 = 6, |lam2|^2 =
    |mu2|^2 = 4, (lam2, mu1) = (mu2, mu1) = 3, (lam2, mu2) = 1.
    """
    gpos = leech.leech_gram_positive()
    enum = leech.leech_enumerator()
    basis = leech.leech_basis_scaled()
    # mu1: a norm-6 vector, 2*chi_c for a weight-12 Golay word
    words = leech.golay_codewords()
    dodecad = next(w for w in words if sum(w) == 12)
    from .intlinalg import solve_integer

    mu1 = solve_integer(basis, [2 * x for x in dodecad])
    assert mu1 is not None and _leech_pair(mu1, mu1) == 6
    # candidates: norm 4, pairing 3 with mu1 <=> |x - mu1/2|^2 = 5/2
    center = [Fraction(x, 2) for x in mu1]
    cands = []
    for x in enum.close_vectors(center, Fraction(5, 2),
                                exact_norm=Fraction(5, 2)):
        if _leech_pair(x, x) == 4 and _leech_pair(x, mu1) == 3:
            cands.append(x)
    for i, lam2 in enumerate(cands):
        for mu2 in cands:
            if _leech_pair(lam2, mu2) == 1:
                roots = [leech.leech_root([0] * 24),
                         leech.leech_root(mu1),
                         leech.leech_root(lam2),
                         leech.leech_root(mu2)]
                return tuple(tuple(r) for r in roots)
    raise RuntimeError("no orthogonal A2 pair of Leech-type roots found")


def _root_gram_check(roots):
    l26, _ = leech.l26()
    expected = [[-2, 1, 0, 0], [1, -2, 0, 0], [0, 0, -2, 1], [0, 0, 1, -2]]
    got = [[pair(l26.gram, list(a), list(b)) for b in roots] for a in roots]
    return got == expected


def _cache_dir():
    d = os.environ.get("K3_CACHE_DIR")
    if not d:
        d = os.path.join(os.path.expanduser("~"), ".cache", "k3lat")
    os.makedirs(d, exist_ok=True)
    return d


def _frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _parse_frac(s):
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def save_chamber(path, chamber: Chamber):
    data = {
        "g": chamber.g,
        "g_inv": chamber.g_inv,
        "w_s": [_frac_str(x) for x in chamber.w_s],
        "walls": [
            {
                "func": list(w.func),
                "norm": _frac_str(w.norm),
                "pairing": _frac_str(w.pairing),
                "outer": w.outer,
                "preimages": w.preimages,
                "witness": [_frac_str(x) for x in w.witness]
                if w.witness is not None else None,
            }
            for w in chamber.walls
        ],
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)


def load_chamber(path, emb: EmbeddingData):
    with open(path) as fh:
        data = json.load(fh)
    walls = []
    for w in data["walls"]:
        wall = Wall(tuple(w["func"]), _parse_frac(w["norm"]),
                    _parse_frac(w["pairing"]), w["outer"],
                    [list(map(int, r)) for r in w["preimages"]])
        if w["witness"] is not None:
            wall.witness = [_parse_frac(x) for x in w["witness"]]
        walls.append(wall)
    return Chamber(emb, data["g"], data["g_inv"],
                   walls, [_parse_frac(x) for x in data["w_s"]])


@lru_cache(maxsize=None)
def x3_embedding_and_chamber(use_cache=True):
    """EmbeddingData for the 22-line lattice plus its initial chamber.

    The outer walls of the chamber carry the line matching: outer wall k
    corresponds to line `line_of_outer[k]` of the enumeration.
    """
    ns = fermat.ns3_from_lines()
    roots = [list(r) for r in find_2a2_roots()]
    assert _root_gram_check(roots)
    l26, w0 = leech.l26()
    # complement of the 2A2
    funcs = matmul(l26.gram, transpose(roots))
    s_basis = kernel_basis(funcs)           # 22 x 26
    assert len(s_basis) == 22
    lat_sp = Lattice(matmul(matmul(s_basis, l26.gram), transpose(s_basis)))
    assert lat_sp.sig == (1, 21) and abs(lat_sp.det) == 9

    emb_sp = EmbeddingData(lat_sp, s_basis)
    cache = os.path.join(_cache_dir(), "chamber_x3_sp.json")
    if use_cache and os.path.exists(cache):
        ch = load_chamber(cache, emb_sp)
    else:
        # orient the positive cone toward the projected Weyl vector
        ch = chamber_walls(emb_sp)
        save_chamber(cache, ch)

    outer = ch.outer_walls()
    assert len(outer) == 112, f"expected 112 outer walls, got {len(outer)}"

    # primitive lattice vectors (the root curves) for each outer wall
    from .intlinalg import clear_denominators, frac_inverse

    ginv = frac_inverse(lat_sp.gram)
    root_vecs = []
    for w in outer:
        v = frac_vec_matmul(w.func, ginv)
        vi, _ = clear_denominators(v)
        u = primitive_part(vi)
        assert pair(lat_sp.gram, u, u) == -2
        root_vecs.append(u)
    # intersection graph of the outer-wall roots
    n = len(root_vecs)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            adj[i][j] = adj[j][i] = pair(lat_sp.gram, root_vecs[i], root_vecs[j])
    wall_graph = WeightedGraph([f"w{k}" for k in range(n)], adj=adj)
    g112 = fermat.dual_graph_112()
    iso = find_isomorphism(g112, wall_graph)
    assert iso is not None, "root-wall graph does not match the line graph"

    # embedding of the line lattice: basis line b -> matched root vector
    m_rows = [root_vecs[iso[b]] for b in ns.basis_lines]
    assert matmul(matmul(m_rows, lat_sp.gram), transpose(m_rows)) == ns.gram
    emb_rows = matmul(m_rows, s_basis)      # 22 x 26
    emb = EmbeddingData(ns.lattice, emb_rows)

    # rebuild the chamber in line-lattice coordinates (cached separately)
    cache2 = os.path.join(_cache_dir(), "chamber_x3.json")
    if use_cache and os.path.exists(cache2):
        ch3 = load_chamber(cache2, emb)
    else:
        ch3 = chamber_walls(emb)
        save_chamber(cache2, ch3)
    assert len(ch3.outer_walls()) == 112
    # the projected Weyl vector is h3
    assert list(map(Fraction, ch3.w_s)) == [Fraction(x) for x in ns.h3]
    return emb, ch3


@lru_cache(maxsize=None)
def x0_embedding_and_chamber(use_cache=True):
    """EmbeddingData for the rank-20 lattice (composite embedding) and its
    initial chamber; the projected Weyl vector must equal h0/2."""
    emb3, _ = x3_embedding_and_chamber()
    data = fermat.build_l40()
    rho = data["rho"]
    emb_rows = matmul(rho, emb3.emb)        # 20 x 26
    emb = EmbeddingData(data["s0"], emb_rows)
    assert emb.lat_r.rank == 6
    cache = os.path.join(_cache_dir(), "chamber_x0.json")
    if use_cache and os.path.exists(cache):
        ch0 = load_chamber(cache, emb)
    else:
        ch0 = chamber_walls(emb)
        save_chamber(cache, ch0)
    h0 = data["h0"]
    assert [2 * Fraction(x) for x in ch0.w_s] == [Fraction(x) for x in h0]
    return emb, ch0
