"""The quartic surface x1^4 + x2^4 + x3^4 + x4^4 = 0 over GF(9).

Enumerates its 112 lines, the intersection configuration, a 22-line basis
of the sublattice the lines generate, the projective unitary action, the
genus-one fibration cut out by quadrics, the distinguished 40-line
sub-configuration, and the simply-transitive count of line 5-tuples.

Everything downstream (chamber computations, automorphism groups) is
anchored on the data assembled here, so all of it is cached per process.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import gf9
from .graphs import (
    WeightedGraph,
    find_isomorphism,
    induced_covering,
    quadrangle_cycle_order,
    quadrangles,
)
from .intlinalg import (
    det_int,
    elementary_divisors,
    frac_vec_matmul,
    hnf_basis,
    lcm2,
    matmul,
    row_rank,
    smith_normal_form,
    solve_frac,
    solve_integer,
    transpose,
    vec_matmul,
)
from .lattice import Lattice, DiscriminantForm
from .permgroup import PermGroup


# ---------------------------------------------------------------------------
# Points and lines.


@lru_cache(maxsize=None)
def surface_points():
    """All normalized points of P^3(GF9) on the quartic."""
    pts = [p for p in gf9.projective_points(4)
           if sum(gf9.NORM[x] for x in p) % 3 == 0]
    return tuple(pts)


def _line_points(p, q):
    """The 10 normalized points of the line spanned by p and q."""
    pts = [gf9.normalize_point(p), gf9.normalize_point(q)]
    for t in gf9.units():
        pts.append(gf9.normalize_point(gf9.vec_add(p, gf9.vec_scale(t, q))))
    assert len(set(pts)) == 10
    return tuple(sorted(set(pts)))


@lru_cache(maxsize=None)
def enumerate_lines():
    """The lines contained in the surface, canonically ordered.

    Returns a tuple of Line records: (echelon, points) with echelon the
    canonical 2x4 reduced row form and points the 10 normalized points.
    """
    on_surface = set(surface_points())
    pts = sorted(on_surface)
    seen = {}
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            # quick reject: third point on line must lie on the surface
            r = gf9.normalize_point(gf9.vec_add(p, q))
            if r not in on_surface:
                continue
            line_pts = _line_points(p, q)
            if any(x not in on_surface for x in line_pts):
                continue
            ech = gf9.rref2x4(p, q)
            if ech not in seen:
                seen[ech] = line_pts
    lines = tuple(sorted((ech, pts_) for ech, pts_ in seen.items()))
    return lines


@lru_cache(maxsize=None)
def line_index():
    return {ech: k for k, (ech, _) in enumerate(enumerate_lines())}


@lru_cache(maxsize=None)
def line_point_sets():
    return tuple(frozenset(pts) for _, pts in enumerate_lines())


@lru_cache(maxsize=None)
def dual_graph_112():
    """112-vertex intersection graph of the lines."""
    psets = line_point_sets()
    n = len(psets)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if psets[i] & psets[j]:
                adj[i][j] = adj[j][i] = 1
    return WeightedGraph([f"l{k}" for k in range(n)], adj=adj)


@lru_cache(maxsize=None)
def meet_masks():
    """Bitmask per line of the lines it meets."""
    g = dual_graph_112()
    masks = []
    for i in range(g.n):
        m = 0
        for j in range(g.n):
            if g.adj[i][j]:
                m |= 1 << j
        masks.append(m)
    return tuple(masks)


def zero_section_line():
    """Index of the distinguished section x1 + i*x3 - x4 = x2 + x3 - i*x4 = 0."""
    i = gf9.I_UNIT
    # parametrized by (x3, x4): x1 = x4 - i x3, x2 = i x4 - x3
    p = (gf9.SUB_TABLE[0][i], gf9.NEG[1], 1, 0)       # (x3,x4) = (1,0)
    q = (1, i, 0, 1)                                   # (x3,x4) = (0,1)
    ech = gf9.rref2x4(p, q)
    return line_index()[ech]


# ---------------------------------------------------------------------------
# The lattice generated by the line classes.


class NS3:
    """Rank-22 lattice spanned by the 112 line classes.

    basis_lines: indices of 22 lines whose classes form a lattice basis;
    gram: their Gram matrix (det -9); classes: all 112 classes as integer
    rows in that basis.
    """

    def __init__(self, basis_lines, gram, classes):
        self.basis_lines = basis_lines
        self.lattice = Lattice(gram)
        self.gram = gram
        self.classes = classes
        s = [Fraction(0)] * 22
        for c in classes:
            s = [a + b for a, b in zip(s, c)]
        h3 = [x / 28 for x in s]
        assert all(x.denominator == 1 for x in h3)
        self.h3 = [int(x) for x in h3]

    def pairing(self, u, v):
        return self.lattice.pairing(u, v)


@lru_cache(maxsize=None)
def ns3_from_lines():
    """Search a 22-line basis of the span of all line classes."""
    g = dual_graph_112()
    n = g.n
    gram112 = [[(-2 if i == j else g.adj[i][j]) for j in range(n)] for i in range(n)]

    # greedy rank-22 independent subset
    chosen = []
    for i in range(n):
        trial = chosen + [i]
        sub = [[gram112[a][b] for b in trial] for a in trial]
        if det_int(sub) != 0:
            chosen.append(i)
        elif len(chosen) == 22:
            break
    assert len(chosen) == 22, f"rank is {len(chosen)}, expected 22"

    g0 = [[gram112[a][b] for b in chosen] for a in chosen]
    # rational coordinates of every line class w.r.t. the greedy subset
    coords = []
    den = 1
    for i in range(n):
        rhs = [gram112[i][b] for b in chosen]
        c = solve_frac(g0, rhs)  # c . g0 = rhs, i.e. coefficients of class i
        coords.append(c)
        for x in c:
            den = lcm2(den, x.denominator)
    # full lattice spanned by all classes, via HNF over a common denominator
    int_rows = [[int(x * den) for x in c] for c in coords]
    basis_scaled = hnf_basis(int_rows)
    assert len(basis_scaled) == 22
    # coordinates of each line class w.r.t. the full-lattice basis
    lines_in_basis = []
    for row in int_rows:
        sol = solve_integer(basis_scaled, row)
        assert sol is not None
        lines_in_basis.append(sol)

    # pick 22 lines forming a basis of the full lattice: backtracking on
    # the property that the chosen rows have all elementary divisors 1
    target = 22
    picked = []

    def extendable(rows):
        divs = elementary_divisors(rows)
        return len(divs) == len(rows) and all(d == 1 for d in divs)

    def backtrack(start):
        if len(picked) == target:
            return True
        for i in range(start, n):
            picked.append(i)
            rows = [lines_in_basis[j] for j in picked]
            if row_rank(rows) == len(rows) and extendable(rows):
                if backtrack(i + 1):
                    return True
            picked.pop()
        return False

    ok = backtrack(0)
    assert ok, "no 22-line basis found"
    basis_lines = list(picked)
    gram = [[gram112[a][b] for b in basis_lines] for a in basis_lines]
    assert det_int(gram) == -9

    # classes of all 112 lines in the line basis
    m = [lines_in_basis[b] for b in basis_lines]
    classes = []
    for i in range(n):
        sol = solve_integer(m, lines_in_basis[i])
        assert sol is not None
        classes.append(sol)
    # cross-check: pairings match the configuration
    for i in range(0, n, 17):
        for j in range(n):
            expect = -2 if i == j else g.adj[i][j]
            got = sum(classes[i][a] * gram[a][b] * classes[j][b]
                      for a in range(22) for b in range(22))
            assert got == expect
    return NS3(basis_lines, gram, classes)


# ---------------------------------------------------------------------------
# Projective unitary action.


def _is_unitary_similitude(m):
    tg = gf9.mat_transpose(m)
    prod = gf9.mat_mul(tg, gf9.mat_conj(m))
    diag = prod[0][0]
    if diag == 0:
        return False
    for i in range(4):
        for j in range(4):
            if prod[i][j] != (diag if i == j else 0):
                return False
    return True


def _line_permutation(m):
    """Permutation of line indices induced by a matrix acting on points."""
    lines = enumerate_lines()
    idx = line_index()
    perm = []
    for ech, _ in lines:
        p = gf9.mat_mul_vec(m, ech[0])
        q = gf9.mat_mul_vec(m, ech[1])
        perm.append(idx[gf9.rref2x4(p, q)])
    return tuple(perm)


@lru_cache(maxsize=None)
def unitary_generators():
    """Small generating set of the projective unitary group, as matrices."""
    gens = []
    # coordinate transpositions and the 4-cycle
    perm_imgs = [(1, 0, 2, 3), (1, 2, 3, 0)]
    for img in perm_imgs:
        m = tuple(tuple(1 if j == img[i] else 0 for j in range(4)) for i in range(4))
        gens.append(m)
    # a diagonal of norm-one entries
    gens.append(((gf9.I_UNIT, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    # a dense 2x2 unitary block, found by brute force
    block = None
    for a in gf9.units():
        for b in gf9.units():
            for c in gf9.units():
                for d in gf9.units():
                    m2 = ((a, b), (c, d))
                    tg = tuple(zip(*m2))
                    prod = [[0, 0], [0, 0]]
                    good = True
                    for i in range(2):
                        for j in range(2):
                            s = 0
                            for k in range(2):
                                s = gf9.ADD[s][gf9.MUL[tg[i][k]][gf9.CONJ[tg[j][k]]]]
                            prod[i][j] = s
                    if prod[0][1] == 0 and prod[1][0] == 0 and \
                       prod[0][0] != 0 and prod[0][0] == prod[1][1]:
                        block = m2
                        good = True
                        break
                if block:
                    break
            if block:
                break
        if block:
            break
    assert block is not None
    # the block has similitude factor 2; scale the complementary identity
    # block by an element of norm 2 so the whole matrix is a similitude
    lam = next(x for x in gf9.units() if gf9.NORM[x] == 2)
    m = [[0] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            m[i][j] = block[i][j]
    m[2][2] = m[3][3] = lam
    gens.append(tuple(tuple(row) for row in m))
    m = [[0] * 4 for _ in range(4)]
    m[0][0] = m[1][1] = lam
    for i in range(2):
        for j in range(2):
            m[2 + i][2 + j] = block[i][j]
    gens.append(tuple(tuple(row) for row in m))
    for g in gens:
        assert _is_unitary_similitude(g)
    return tuple(gens)


@lru_cache(maxsize=None)
def pgu_line_group():
    """The unitary projective action on the 112 lines, as a PermGroup."""
    gens = [_line_permutation(m) for m in unitary_generators()]
    return PermGroup(gens)


@lru_cache(maxsize=None)
def frobenius_line_permutation():
    """Line permutation induced by the field Frobenius x -> x^3."""
    lines = enumerate_lines()
    idx = line_index()
    perm = []
    for ech, _ in lines:
        p = tuple(gf9.CONJ[x] for x in ech[0])
        q = tuple(gf9.CONJ[x] for x in ech[1])
        perm.append(idx[gf9.rref2x4(p, q)])
    return tuple(perm)


def perm_to_isometry(perm, ns=None):
    """Isometry of the line lattice induced by a line permutation."""
    ns = ns or ns3_from_lines()
    return [ns.classes[perm[b]] for b in ns.basis_lines]


# ---------------------------------------------------------------------------
# The genus-one fibration.


def _sigma_value(pt):
    """Value of the quadric pencil map at a surface point, in P^1(GF9)."""
    x1, x2, x3, x4 = pt
    i = gf9.I_UNIT
    sq = lambda x: gf9.MUL[x][x]
    u = gf9.SUB_TABLE[sq(x3)][gf9.MUL[i][sq(x4)]]
    v = gf9.ADD[sq(x1)][gf9.MUL[i][sq(x2)]]
    if u == 0 and v == 0:
        u = gf9.ADD[gf9.NEG[sq(x1)]][gf9.MUL[i][sq(x2)]]
        v = gf9.ADD[sq(x3)][gf9.MUL[i][sq(x4)]]
    assert not (u == 0 and v == 0)
    if v == 0:
        return (1, 0)
    c = gf9.INV[v]
    return (gf9.MUL[u][c], 1)


@lru_cache(maxsize=None)
def fibration_classify():
    """Classify the 112 lines under the fibration map.

    Returns (fibers, sections): fibers is a dict value -> sorted list of 4
    line indices (6 entries), sections a sorted list of 64 line indices.
    The remaining 24 lines are 2-sections; the class pairing with the
    fiber class decides the type, and the pointwise values cross-check it.
    """
    lines = enumerate_lines()
    by_value = {}
    for k, (_, pts) in enumerate(lines):
        values = sorted({_sigma_value(p) for p in pts})
        by_value[k] = values
    fibers = {}
    for k, values in by_value.items():
        if len(values) == 1:
            fibers.setdefault(values[0], []).append(k)
    for v, ls in fibers.items():
        assert len(ls) == 4, f"fiber over {v} has {len(ls)} lines"
    assert len(fibers) == 6
    # fiber class in the line lattice distinguishes sections from 2-sections
    ns = ns3_from_lines()
    one_fiber = next(iter(sorted(fibers.values())))
    fclass = [sum(ns.classes[l][j] for l in one_fiber) for j in range(22)]
    sections = []
    for k in range(len(lines)):
        d = ns.pairing(fclass, ns.classes[k])
        if d == 0:
            assert len(by_value[k]) == 1
        elif d == 1:
            assert len(by_value[k]) == 10, "section not bijective on points"
            sections.append(k)
        else:
            assert d == 2, f"unexpected fiber degree {d}"
    assert len(sections) == 64
    return {v: sorted(ls) for v, ls in fibers.items()}, sorted(sections)


def fiber_values():
    """The six critical values, normalized points of P^1(GF9)."""
    fibers, _ = fibration_classify()
    return sorted(fibers.keys())


@lru_cache(maxsize=None)
def torsion_sections():
    """The 16 sections whose classes lie in the primitive closure of the
    trivial sublattice (zero section + 24 fiber components)."""
    from .intlinalg import saturate

    ns = ns3_from_lines()
    fibers, sections = fibration_classify()
    z = zero_section_line()
    assert z in sections
    triv_rows = [ns.classes[z]] + [ns.classes[l] for ls in fibers.values()
                                   for l in ls]
    # basis of the span, then its primitive closure inside Z^22
    span = hnf_basis(triv_rows)
    # saturate: kernel-of-kernel in the ambient Z^22
    from .intlinalg import kernel_basis, transpose as tr

    k = kernel_basis(tr(span))
    if k:
        closure = kernel_basis(tr(k))
    else:
        closure = [[1 if i == j else 0 for j in range(22)] for i in range(22)]
    tors = []
    for s in sections:
        if solve_integer(closure, ns.classes[s]) is not None:
            tors.append(s)
    assert z in tors
    # structure of closure/span
    quot = []
    for row in span:
        quot.append(solve_integer(closure, row))
    divs = elementary_divisors(quot)
    torsion_group = [d for d in divs if d > 1]
    return tuple(tors), tuple(torsion_group)


@lru_cache(maxsize=None)
def build_l40():
    """The 40-line configuration: 24 fiber lines plus 16 torsion sections.

    Returns a dict with the index set, the rank-20 sublattice data, the
    embedding matrix rho (20x22), and the polarization h0.
    """
    ns = ns3_from_lines()
    fibers, _ = fibration_classify()
    tors, torsion_group = torsion_sections()
    fiber_lines = sorted(l for ls in fibers.values() for l in ls)
    l40 = sorted(fiber_lines + list(tors))
    assert len(l40) == 40

    g112 = dual_graph_112()
    adj = [[g112.adj[a][b] for b in l40] for a in l40]
    graph40 = WeightedGraph([f"l{k}" for k in l40], adj=adj)

    rows40 = [ns.classes[k] for k in l40]

    # 20 of the 40 classes forming a basis of their span
    picked = []

    def extendable(idx_rows):
        divs = elementary_divisors(idx_rows)
        return len(divs) == len(idx_rows) and all(d == 1 for d in divs)

    sat40 = _saturation(rows40)

    def coords_in_sat(row):
        sol = solve_integer(sat40, row)
        return sol

    rows40_sat = []
    for row in rows40:
        sol = coords_in_sat(row)
        assert sol is not None, "line class outside saturation?"
        rows40_sat.append(sol)

    def backtrack(start):
        if len(picked) == 20:
            return True
        for i in range(start, 40):
            picked.append(i)
            rows = [rows40_sat[j] for j in picked]
            if row_rank(rows) == len(rows) and extendable(rows):
                if backtrack(i + 1):
                    return True
            picked.pop()
        return False

    # the span of the 40 classes may a priori be non-saturated; work in
    # coordinates of its own HNF basis so "basis" means basis of the span
    span40 = hnf_basis(rows40)
    assert len(span40) == 20
    rows40_span = []
    for row in rows40:
        sol = solve_integer(span40, row)
        assert sol is not None
        rows40_span.append(sol)
    rows40_sat = rows40_span
    ok = backtrack(0)
    assert ok, "no 20-line basis of the span found"

    basis_idx = list(picked)            # positions within l40
    rho = [rows40[i] for i in basis_idx]  # 20 x 22 integer, the embedding
    gram0 = [[sum(rho[a][i] * ns.gram[i][j] * rho[b][j]
                  for i in range(22) for j in range(22))
              for b in range(20)] for a in range(20)]
    s0 = Lattice(gram0)

    classes40 = []
    for row in rows40:
        sol = solve_integer(rho, row)
        assert sol is not None
        classes40.append(sol)

    h0 = [Fraction(sum(c[j] for c in classes40), 2) for j in range(20)]
    assert all(x.denominator == 1 for x in h0)
    h0 = [int(x) for x in h0]

    return {
        "l40": l40,
        "graph": graph40,
        "rho": rho,
        "s0": s0,
        "classes40": classes40,
        "h0": h0,
        "fiber_lines": fiber_lines,
        "torsion_sections": list(tors),
        "torsion_group": list(torsion_group),
        "fibers": {v: ls for v, ls in fibers.items()},
    }


def _saturation(rows):
    from .intlinalg import kernel_basis, transpose as tr

    span = hnf_basis(rows)
    k = kernel_basis(tr(span))
    n = len(rows[0])
    if not k:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return kernel_basis(tr(k))


def rho_is_primitive():
    data = build_l40()
    divs = elementary_divisors(data["rho"])
    return len(divs) == 20 and all(d == 1 for d in divs)


# ---------------------------------------------------------------------------
# Counting the marked 5-tuples and the 40-line sub-configurations.


def line_counts_facts():
    """Per-line and per-pair incidence counts used by the tuple count."""
    masks = meet_masks()
    n = len(masks)
    full = (1 << n) - 1
    facts = {"meets": set(), "disjoint": set(), "transversals": set(),
             "point_lines": set()}
    psets = line_point_sets()
    for i in range(n):
        deg = bin(masks[i]).count("1")
        facts["meets"].add(deg)
        facts["disjoint"].add(n - 1 - deg)
        per_point = {}
        for j in range(n):
            if i != j and masks[i] >> j & 1:
                pt = next(iter(psets[i] & psets[j]))
                per_point[pt] = per_point.get(pt, 0) + 1
        facts["point_lines"].update(per_point.values())
        assert len(per_point) == 10
    for i in range(n):
        for j in range(i + 1, n):
            if not masks[i] >> j & 1:
                common = masks[i] & masks[j]
                facts["transversals"].add(bin(common).count("1"))
    return {k: sorted(v) for k, v in facts.items()}


def count_alpha_tuples():
    """Number of marked 5-tuples [z, l0..l3]: quadrangle plus a tail at l0.

    Counted combinatorially; also returns the count of quadrangles and the
    per-vertex tail count (which must be constant, 16).
    """
    masks = meet_masks()
    n = len(masks)
    total = 0
    quad_count = 0
    tail_counts = set()
    seen_pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            if masks[i] >> j & 1:
                continue
            common = masks[i] & masks[j]
            cl = [k for k in range(n) if common >> k & 1]
            assert len(cl) == 10
            seen_pairs += 1
            # transversals of a disjoint pair must be pairwise disjoint
            for a in range(10):
                for b in range(a + 1, 10):
                    assert not masks[cl[a]] >> cl[b] & 1
            # quadrangles with diagonal {i, j}: pick the other diagonal
            for a in range(10):
                for b in range(a + 1, 10):
                    la, lb = cl[a], cl[b]
                    # quadrangle i-la-j-lb; counted twice over diagonals
                    quad_count += 1
                    for v, others in ((i, (la, j, lb)), (j, (la, i, lb)),
                                      (la, (i, lb, j)), (lb, (i, la, j))):
                        vmask = masks[v]
                        for o in others:
                            vmask &= ~masks[o]
                        vmask &= ~(1 << v)
                        for o in others:
                            vmask &= ~(1 << o)
                        c = bin(vmask).count("1")
                        tail_counts.add(c)
                        total += 2 * c  # two orderings flip l1 <-> l3
    assert quad_count % 2 == 0
    quad_count //= 2
    total //= 2
    return {"alpha": total, "quadrangles": quad_count,
            "tails": sorted(tail_counts), "disjoint_pairs": seen_pairs}


def standard_alpha():
    """A marked 5-tuple from the distinguished fibration: [z, l0, l1, l2, l3]."""
    data = build_l40()
    masks = meet_masks()
    z = zero_section_line()
    fibers, _ = fibration_classify()
    quad = None
    for v, ls in sorted(fibers.items()):
        if any(masks[z] >> l & 1 for l in ls):
            quad = ls
            break
    l0 = next(l for l in quad if masks[z] >> l & 1)
    rest = [l for l in quad if l != l0]
    l1 = next(l for l in rest if masks[l0] >> l & 1)
    l3 = next(l for l in rest if masks[l0] >> l & 1 and l != l1)
    l2 = next(l for l in rest if l not in (l1, l3))
    assert masks[l0] >> l1 & 1 and masks[l0] >> l3 & 1
    assert not masks[l0] >> l2 & 1
    assert masks[l1] >> l2 & 1 and masks[l3] >> l2 & 1
    assert all(not (masks[z] >> l & 1) for l in (l1, l2, l3))
    return (z, l0, l1, l2, l3)


def l40_orbit_count():
    """Size of the orbit of the 40-line set under the unitary group."""
    g = pgu_line_group()
    data = build_l40()
    orb = g.set_orbit(frozenset(data["l40"]))
    return len(orb)
