"""Chamber machinery for primitive embeddings into the rank-26 lattice.

An embedding carries S (as a Gram matrix plus a basis mapped into L26),
its orthogonal complement R, and the glue between their discriminant
groups.  A chamber is the pullback to P(S) of a Conway chamber C(w0 . g);
its walls are computed from the Weyl vector by enumerating roots r of L26
with <w, r> = 1 whose projections to S have negative norm, then keeping
the hyperplanes that support facets (certified by explicit interior
witnesses, with an exact LP fallback).
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import leech
from .intlinalg import (
    clear_denominators,
    det_int,
    frac_inverse,
    frac_matmul,
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
from .lattice import (
    DiscriminantForm,
    Lattice,
    NegDefEnumerator,
    vectors_with_norm_and_pairings,
)
from .lp import cone_interior_point_on_hyperplane


class EmbeddingData:
    """A primitive embedding S -> L26 with complement data and glue."""

    def __init__(self, lat_s: Lattice, emb_rows):
        self.lat = lat_s
        self.emb = [list(map(int, row)) for row in emb_rows]
        l26, w0 = leech.l26()
        self.l26 = l26
        self.w0 = w0
        g26 = l26.gram
        # verify the embedding is isometric
        assert matmul(matmul(self.emb, g26), transpose(self.emb)) == lat_s.gram
        # orthogonal complement basis (saturated)
        funcs = matmul(g26, transpose(self.emb))  # 26 x rank
        self.r_basis = kernel_basis(funcs)
        self.lat_r = Lattice(matmul(matmul(self.r_basis, g26),
                                    transpose(self.r_basis)))
        assert self.lat_r.is_negative_definite()
        # primitivity: S-basis extends saturated span
        from .intlinalg import elementary_divisors

        divs = elementary_divisors(self.emb)
        assert all(d == 1 for d in divs), "embedding is not primitive"
        self.form_s = DiscriminantForm(lat_s)
        self.form_r = DiscriminantForm(self.lat_r)
        self._gram_inv_s = frac_inverse(lat_s.gram)
        self._gram_inv_r = frac_inverse(self.lat_r.gram)
        self._proj_s = frac_matmul(frac_matmul(g26, transpose(self.emb)),
                                   self._gram_inv_s)   # 26 x rank
        self._proj_r = frac_matmul(frac_matmul(g26, transpose(self.r_basis)),
                                   self._gram_inv_r)   # 26 x k
        self.glue = self._compute_glue()
        self.shells = self._compute_shells()
        self._enum_cache = {}

    # -- projections -----------------------------------------------------

    def pr_s(self, x26):
        return frac_vec_matmul(x26, self._proj_s)

    def pr_r(self, x26):
        return frac_vec_matmul(x26, self._proj_r)

    def to_l26(self, s_coords, r_coords=None):
        out = frac_vec_matmul(s_coords, self.emb)
        if r_coords is not None:
            out = [a + b for a, b in
                   zip(out, frac_vec_matmul(r_coords, self.r_basis))]
        return out

    # -- glue ------------------------------------------------------------

    def _compute_glue(self):
        """Map class-of-A(R) -> class-of-A(S) from the unimodular overlattice."""
        gens = []
        n = 26
        for i in range(n):
            e = [1 if j == i else 0 for j in range(n)]
            cs = self.form_s.class_of_dual(self.pr_s(e))
            cr = self.form_r.class_of_dual(self.pr_r(e))
            gens.append((cs, cr))
        zero = (self.form_s.zero(), self.form_r.zero())
        group = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for cs, cr in frontier:
                for gs, gr in gens:
                    s = (self.form_s.normalize(tuple(a + b for a, b in zip(cs, gs))),
                         self.form_r.normalize(tuple(a + b for a, b in zip(cr, gr))))
                    if s not in group:
                        group.add(s)
                        nxt.append(s)
            frontier = nxt
        assert len(group) == self.form_s.group_order == self.form_r.group_order
        glue = {}
        for cs, cr in group:
            assert cr not in glue
            glue[cr] = cs
        return glue

    # -- R-side shells ----------------------------------------------------

    def _compute_shells(self):
        """All r_R in R^dual with -2 < <r_R, r_R> <= 0, as rational rows."""
        k = self.lat_r.rank
        if k == 0:
            return [([],)]
        # dual vectors y . G_R^{-1}, y integer; enumerate on the dual Gram
        dual_gram = self._gram_inv_r
        den = 1
        from .intlinalg import lcm2

        for row in dual_gram:
            for x in row:
                den = lcm2(den, Fraction(x).denominator)
        scaled = [[int(-Fraction(x) * den) for x in row] for row in dual_gram]
        enum = NegDefEnumerator([[-x for x in row] for row in scaled])
        shells = [[0] * k]
        for y in enum.vectors_in_ball(2 * den):
            norm = frac_pair(dual_gram, y, y)
            if -2 < norm < 0:
                shells.append(list(y))
        out = []
        for y in shells:
            r_r = frac_vec_matmul(y, dual_gram)  # R-coords of the dual vector
            out.append(r_r)
        return out


class Wall:
    __slots__ = ("func", "norm", "pairing", "outer", "preimages", "witness")

    def __init__(self, func, norm, pairing, outer, preimages):
        self.func = tuple(func)      # primitive integer functional on S
        self.norm = norm             # <v, v> of the primitive dual vector
        self.pairing = pairing       # <v, w_S>
        self.outer = outer
        self.preimages = preimages   # L26 roots projecting onto this wall
        self.witness = None          # rational interior point of the facet

    def key(self):
        return self.func


class Chamber:
    """A V(i)-chamber: Conway chamber C(w0 . g) pulled back to P(S)."""

    def __init__(self, emb: EmbeddingData, g, g_inv, walls, w_s):
        self.emb = emb
        self.g = g
        self.g_inv = g_inv
        self.weyl = vec_matmul(emb.w0, g)
        self.w_s = w_s               # rational row, interior point pr_S(weyl)
        self.walls = walls

    def outer_walls(self):
        return [w for w in self.walls if w.outer]

    def inner_walls(self):
        return [w for w in self.walls if not w.outer]

    def wall_funcs(self):
        return {w.func for w in self.walls}

    def contains_in_interior(self, x):
        gram = self.emb.lat.gram
        for w in self.walls:
            if sum(Fraction(a) * b for a, b in zip(w.func, x)) <= 0:
                return False
        return True

    def contains(self, x):
        for w in self.walls:
            if sum(Fraction(a) * b for a, b in zip(w.func, x)) < 0:
                return False
        return True


def _primitive_functional(lat: Lattice, dual_row):
    """Primitive integer functional of a dual vector, sign-normalized later."""
    f = frac_vec_matmul(dual_row, lat.gram)
    fi, _ = clear_denominators(f)
    return primitive_part(fi)


def chamber_walls(emb: EmbeddingData, g=None, g_inv=None, facet_filter=True):
    """Walls of the chamber C(w0 . g) pulled back along the embedding."""
    if g is None:
        g = identity_matrix(26)
        g_inv = identity_matrix(26)
    w = vec_matmul(emb.w0, g)
    w_s = emb.pr_s(w)
    w_r = emb.pr_r(w)
    lat = emb.lat
    ws_norm = frac_pair(lat.gram, w_s, w_s)
    assert ws_norm > 0, "projected Weyl vector must have positive norm"

    candidates = {}
    for r_r in emb.shells:
        n_r = frac_pair(emb.lat_r.gram, r_r, r_r)
        n_s = Fraction(-2) - n_r
        c = 1 - frac_pair(emb.lat_r.gram, r_r, w_r)
        cls_r = emb.form_r.class_of_dual(r_r)
        cls_s = emb.glue[cls_r]
        shift = emb.form_s.lift(cls_s)
        sols = vectors_with_norm_and_pairings(
            lat, [(w_s, c)], n_s, shift=shift, enum_cache=emb._enum_cache)
        for r_s in sols:
            r26 = emb.to_l26(r_s, r_r)
            r26i = []
            for x in r26:
                x = Fraction(x)
                assert x.denominator == 1, "candidate is not a lattice vector"
                r26i.append(int(x))
            assert pair(emb.l26.gram, r26i, r26i) == -2
            assert pair(emb.l26.gram, vec_matmul(list(map(int, emb.w0)), g),
                        r26i) == 1
            f = _primitive_functional(lat, r_s)
            val = sum(Fraction(a) * b for a, b in zip(f, w_s))
            if val < 0:
                f = tuple(-x for x in f)
            elif val == 0:
                raise ValueError("projected Weyl vector lies on a candidate "
                                 "hyperplane; chamber is degenerate")
            key = tuple(f)
            rec = candidates.get(key)
            if rec is None:
                candidates[key] = [r26i]
            else:
                rec.append(r26i)

    gram_inv = emb._gram_inv_s
    walls = []
    for f, preim in sorted(candidates.items()):
        v = frac_vec_matmul(f, gram_inv)      # primitive dual vector
        norm = sum(Fraction(a) * b for a, b in zip(f, v))
        pairing = sum(Fraction(a) * b for a, b in zip(f, w_s))
        # outer iff the primitive lattice vector on the ray is a root
        vi, _ = clear_denominators(v)
        u = primitive_part(vi)
        outer = (pair(lat.gram, u, u) == -2)
        walls.append(Wall(f, norm, pairing, outer, sorted(preim)))

    if facet_filter:
        walls = _facet_filter(lat, walls, w_s)
    return Chamber(emb, g, g_inv, walls, w_s)


def _facet_filter(lat: Lattice, walls, w_s):
    """Keep only wall candidates whose hyperplane supports a facet.

    Every kept wall stores an exact interior witness x with f_w . x = 0
    and f_u . x > 0 for every other candidate u; rejected candidates are
    certified redundant by an exact LP over the violated subset.
    """
    n = lat.rank
    funcs = [list(w.func) for w in walls]
    nw = len(funcs)
    if nw == 0:
        return walls
    # integer scaling: x_v = -(v,v) * h + (h,v) * v  with h = w_s scaled int
    h_int, _ = clear_denominators(w_s)
    gram_inv = frac_inverse(lat.gram)
    den = 1
    from .intlinalg import lcm2

    for row in gram_inv:
        for x in row:
            den = lcm2(den, Fraction(x).denominator)
    ginv_scaled = [[int(Fraction(x) * den) for x in row] for row in gram_inv]

    f_np = np.asarray(funcs, dtype=np.int64)
    ginv_np = np.asarray(ginv_scaled, dtype=np.int64)
    h_np = np.asarray(h_int, dtype=np.int64)
    a_vec = f_np @ h_np                      # den-free pairings <v, h>*1
    # guard for int64: crude but explicit
    bound = int(np.max(np.abs(f_np))) ** 2 * int(np.max(np.abs(ginv_np))) * n * n
    assert bound < 2**62, "int64 guard tripped in facet filter"

    kept = []
    for idx, wobj in enumerate(walls):
        fv = f_np[idx]
        pv = ginv_np @ fv                    # den * v (dual vector, int)
        p_all = f_np @ pv                    # den * <u, v> for all u
        norm_v = int(p_all[idx])             # den * <v,v>
        # witness x = -norm_v * h + den*<h,v> * v; value at u:
        # -norm_v * a_u + a_v * p_uv  (common positive scale)
        vals = -norm_v * a_vec + int(a_vec[idx]) * p_all
        vals[idx] = 1  # ignore self
        if np.all(vals > 0):
            wobj.witness = [Fraction(int(-norm_v * h + a_vec[idx] * vv), den)
                            for h, vv in zip(h_np, pv)]
            kept.append(wobj)
            continue
        # LP refinement over violated subsets
        active = [int(j) for j in np.nonzero(vals <= 0)[0]]
        wall_found = False
        for _ in range(60):
            others = [funcs[j] for j in active]
            x = cone_interior_point_on_hyperplane(funcs[idx], others)
            if x is None:
                break  # certified redundant on a subset: not a wall
            xv = np.asarray([int(v * _common_den(x)) for v in x], dtype=np.int64)
            allvals = f_np @ xv
            allvals[idx] = 1
            viol = [int(j) for j in np.nonzero(allvals <= 0)[0] if j != idx]
            if not viol:
                wobj.witness = list(x)
                kept.append(wobj)
                wall_found = True
                break
            active.extend(j for j in viol if j not in active)
        else:
            raise RuntimeError("facet test did not converge")
        if not wall_found:
            continue
    return kept


def _common_den(x):
    from .intlinalg import lcm2

    d = 1
    for v in x:
        d = lcm2(d, Fraction(v).denominator)
    return d


# ---------------------------------------------------------------------------
# Crossing walls.


def point_beyond_wall(chamber: Chamber, wall: Wall):
    """A rational point of P(S) just beyond the given wall.

    Starts from the stored witness m (interior of the facet) and moves by
    delta * v; delta is shrunk until every other wall functional stays
    positive and the point still has positive norm.
    """
    lat = chamber.emb.lat
    gram_inv = frac_inverse(lat.gram)
    v = frac_vec_matmul(wall.func, gram_inv)
    m = wall.witness
    assert m is not None
    delta = Fraction(1)
    for _ in range(80):
        x = [a + delta * b for a, b in zip(m, v)]
        if frac_pair(lat.gram, x, x) > 0 and \
           sum(Fraction(a) * b for a, b in zip(wall.func, x)) < 0:
            ok = True
            for w2 in chamber.walls:
                if w2.func == wall.func:
                    continue
                if sum(Fraction(a) * b for a, b in zip(w2.func, x)) <= 0:
                    ok = False
                    break
            if ok:
                return x
        delta /= 2
    raise RuntimeError("could not construct a point beyond the wall")


def adjacent_chamber(chamber: Chamber, wall: Wall, facet_filter=True):
    """The V(i)-chamber adjacent across the given wall."""
    emb = chamber.emb
    x_s = point_beyond_wall(chamber, wall)
    x26 = emb.to_l26(x_s)
    g, g_inv = leech.walk_to_chamber(x26, chamber.g, chamber.g_inv)
    new = chamber_walls(emb, g, g_inv, facet_filter=facet_filter)
    back = tuple(-x for x in wall.func)
    assert back in new.wall_funcs(), "adjacent chamber does not share the wall"
    return new


def walk_to(emb: EmbeddingData, target_s, start_chamber=None, max_steps=256):
    """Greedy chamber walk toward a positive-cone point of S.

    Returns the chamber containing the target.  Raises if the target lies
    on a wall of the final chamber (perturbation required).
    """
    lat = emb.lat
    assert frac_pair(lat.gram, target_s, target_s) > 0
    cur = start_chamber or chamber_walls(emb)
    assert frac_pair(lat.gram, cur.w_s, target_s) > 0, \
        "target must lie in the same positive cone"
    for _ in range(max_steps):
        neg = [w for w in cur.walls
               if sum(Fraction(a) * b for a, b in zip(w.func, target_s)) < 0]
        if not neg:
            on_wall = [w for w in cur.walls
                       if sum(Fraction(a) * b
                              for a, b in zip(w.func, target_s)) == 0]
            if on_wall:
                raise ValueError("target lies on a wall; perturb it")
            return cur
        # cross the most violated wall (exact comparison)
        worst = min(neg, key=lambda w: (
            sum(Fraction(a) * b for a, b in zip(w.func, target_s)), w.func))
        cur = adjacent_chamber(cur, worst)
    raise RuntimeError("chamber walk exceeded step limit")


# ---------------------------------------------------------------------------
# Wall orbits under a group of isometries.


def functional_action(lat: Lattice, iso):
    """Matrix acting on functionals: f -> f . (G^{-1} m G)."""
    gram_inv = frac_inverse(lat.gram)
    m = frac_matmul(frac_matmul(gram_inv, iso), lat.gram)
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            assert x.denominator == 1
            r.append(int(x))
        out.append(r)
    return out


def orbit_walls(lat: Lattice, isometries, walls):
    """Partition wall functionals into orbits under generator matrices.

    isometries: list of isometry matrices of lat (right action on S).
    Returns list of orbits, each a sorted list of functionals, ordered by
    (size, representative).
    """
    actions = [functional_action(lat, m) for m in isometries]
    funcs = {w.func for w in walls}
    remaining = set(funcs)
    orbits = []
    while remaining:
        seed = min(remaining)
        orb = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for f in frontier:
                for a in actions:
                    img = tuple(vec_matmul(list(f), a))
                    assert img in funcs, "group does not preserve the wall set"
                    if img not in orb:
                        orb.add(img)
                        nxt.append(img)
            frontier = nxt
        remaining -= orb
        orbits.append(sorted(orb))
    orbits.sort(key=lambda o: (len(o), o[0]))
    return orbits
