"""Weighted graphs, graph lattices, and isomorphism search.

Vertices are indexed 0..n-1 internally; labels are kept alongside.
Isomorphism and automorphism search use iterated color refinement with
individualization backtracking, which is exact (refinement only prunes,
leaf mappings are verified edge-by-edge).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .intlinalg import (
    frac_matmul,
    hnf_basis,
    identity_matrix,
    kernel_basis,
    matmul,
    row_rank,
    smith_normal_form,
    transpose,
)
from .permgroup import PermGroup, compose, identity_perm, inverse_perm


class WeightedGraph:
    """Finite graph with nonnegative integer edge multiplicities."""

    def __init__(self, labels, edges=None, adj=None):
        self.labels = list(labels)
        n = len(self.labels)
        self.n = n
        if adj is not None:
            self.adj = [list(row) for row in adj]
        else:
            self.adj = [[0] * n for _ in range(n)]
            for i, j, *rest in edges or []:
                w = rest[0] if rest else 1
                if i == j:
                    raise ValueError("no self-pairs allowed")
                self.adj[i][j] = w
                self.adj[j][i] = w
        for i in range(n):
            if self.adj[i][i] != 0:
                raise ValueError("no self-pairs allowed")
            for j in range(n):
                if self.adj[i][j] != self.adj[j][i] or self.adj[i][j] < 0:
                    raise ValueError("multiplicities must be symmetric and >= 0")
        self._neighbors = [
            [(j, self.adj[i][j]) for j in range(n) if self.adj[i][j]]
            for i in range(n)
        ]

    def neighbors(self, i):
        return self._neighbors[i]

    def degree(self, i):
        return sum(w for _, w in self._neighbors[i])

    def edges(self):
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.adj[i][j]:
                    out.append((i, j, self.adj[i][j]))
        return out

    def edge_count(self):
        return len(self.edges())

    def is_simple(self):
        return all(w <= 1 for _, _, w in self.edges())

    def subgraph_adjacent(self, i, j):
        return self.adj[i][j] > 0

    def to_json_dict(self):
        return {
            "vertices": [str(x) for x in self.labels],
            "edges": [[i, j, w] for i, j, w in self.edges()],
        }

    def to_dot(self, name="G"):
        lines = [f"graph {name} {{"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  v{i} [label="{lab}"];')
        for i, j, w in self.edges():
            for _ in range(w):
                lines.append(f"  v{i} -- v{j};")
        lines.append("}")
        return "\n".join(lines)


@dataclass
class GraphMap:
    """Vertex map between graphs; edges are induced."""

    source: WeightedGraph
    target: WeightedGraph
    vertex_map: list  # vertex_map[i] = target index of source vertex i

    def is_graph_map(self):
        for i, j, w in self.source.edges():
            if w and not self.target.adj[self.vertex_map[i]][self.vertex_map[j]]:
                return False
        return True

    def fiber(self, target_vertex):
        return [i for i, t in enumerate(self.vertex_map) if t == target_vertex]


# ---------------------------------------------------------------------------
# Graph lattices.


def graph_gram(g: WeightedGraph):
    """Gram of Z^V with -2 diagonal and eta off-diagonal."""
    gram = [row[:] for row in g.adj]
    for i in range(g.n):
        gram[i][i] = -2
    return gram


def lattice_from_graph(g: WeightedGraph):
    """Even lattice Z^V / ker and the projection of the vertex classes.

    Returns (gram, classes) where gram is the quotient Gram (rank r)
    and classes[i] is the image of vertex i as a length-r integer row.
    """
    big = graph_gram(g)
    ker = kernel_basis(big)
    n = g.n
    if not ker:
        return [row[:] for row in big], identity_matrix(n)
    # complete the saturated kernel to a basis of Z^n via SNF
    _, d, v = smith_normal_form(ker)
    k = len(ker)
    assert all(d[i][i] == 1 for i in range(k)), "graph lattice kernel not saturated"
    # rows of v^{-1}: first k rows span ker; quotient coords = last n-k of x.v
    classes = [list(row[k:]) for row in v]  # e_i . v, truncated
    # quotient Gram: basis w_j = rows (k+j) of v^{-1}; G_quot = W B W^T
    from .intlinalg import frac_inverse

    w = frac_inverse(v)
    w_last = [w[i] for i in range(k, n)]
    gq = frac_matmul(frac_matmul(w_last, big), transpose(w_last))
    gram = [[int(x) for x in row] for row in gq]
    return gram, classes


# ---------------------------------------------------------------------------
# Quadrangles.


def quadrangles(g: WeightedGraph):
    """All induced 4-cycles, as sorted 4-tuples of vertices."""
    found = set()
    for u, v in combinations(range(g.n), 2):
        if g.adj[u][v]:
            continue
        common = [w for w in range(g.n)
                  if w != u and w != v and g.adj[u][w] and g.adj[v][w]]
        for a, b in combinations(common, 2):
            if not g.adj[a][b]:
                found.add(tuple(sorted((u, a, v, b))))
    return sorted(found)


def quadrangle_cycle_order(g: WeightedGraph, quad):
    """Order a quadrangle's vertices cyclically: (q0, q1, q2, q3) a 4-cycle."""
    a = quad[0]
    nb = [x for x in quad[1:] if g.adj[a][x]]
    opp = [x for x in quad[1:] if not g.adj[a][x]]
    assert len(nb) == 2 and len(opp) == 1
    return (a, nb[0], opp[0], nb[1])


# ---------------------------------------------------------------------------
# Color refinement and isomorphism backtracking.


def _refine(graphs, colorings):
    """Simultaneous stable refinement of colorings on a family of graphs.

    colorings: list of lists (one per graph), ints.  Signatures share an
    interning dict so equal signatures get equal new colors across graphs.
    Refinement only ever splits classes, so stability is reached when the
    total number of distinct colors stops growing.
    """
    n_colors = len({c for col in colorings for c in col})
    while True:
        intern = {}
        new = []
        for g, col in zip(graphs, colorings):
            nc = [0] * g.n
            for v in range(g.n):
                sig = (col[v],
                       tuple(sorted(Counter((col[u], w)
                                            for u, w in g.neighbors(v)).items())))
                nc[v] = intern.setdefault(sig, len(intern))
            new.append(nc)
        colorings = new
        if len(intern) == n_colors:
            return colorings
        n_colors = len(intern)


def _color_classes(coloring):
    cls = {}
    for v, c in enumerate(coloring):
        cls.setdefault(c, []).append(v)
    return cls


def _individualize(coloring, v):
    col = list(coloring)
    col[v] = max(col) + 1 + len(col)  # fresh color
    return col


def _check_iso(g1, g2, mapping):
    for i in range(g1.n):
        for j in range(i + 1, g1.n):
            if g1.adj[i][j] != g2.adj[mapping[i]][mapping[j]]:
                return False
    return True


def isomorphisms_iter(g1, g2, colors1=None, colors2=None):
    """Yield all isomorphisms g1 -> g2 respecting optional initial colors."""
    if g1.n != g2.n:
        return
    c1 = list(colors1) if colors1 is not None else [0] * g1.n
    c2 = list(colors2) if colors2 is not None else [0] * g2.n

    def rec(c1, c2):
        c1, c2 = _refine([g1, g2], [c1, c2])
        cls1, cls2 = _color_classes(c1), _color_classes(c2)
        if sorted((c, len(vs)) for c, vs in cls1.items()) != \
           sorted((c, len(vs)) for c, vs in cls2.items()):
            return
        if all(len(vs) == 1 for vs in cls1.values()):
            mapping = [0] * g1.n
            for c, vs in cls1.items():
                if c not in cls2:
                    return
                mapping[vs[0]] = cls2[c][0]
            if _check_iso(g1, g2, mapping):
                yield mapping
            return
        # branch on the smallest non-singleton class
        c = min((c for c, vs in cls1.items() if len(vs) > 1),
                key=lambda c: (len(cls1[c]), c))
        v = min(cls1[c])
        for u in sorted(cls2.get(c, [])):
            yield from rec(_individualize(c1, v), _individualize(c2, u))

    yield from rec(c1, c2)


def find_isomorphism(g1, g2, colors1=None, colors2=None):
    for m in isomorphisms_iter(g1, g2, colors1, colors2):
        return m
    return None


def all_isomorphisms(g1, g2, colors1=None, colors2=None):
    return sorted(isomorphisms_iter(g1, g2, colors1, colors2))


def automorphism_group(g, colors=None, known_generators=()):
    """Automorphism group of a weighted graph as a PermGroup.

    Uses a base-and-orbit partition backtrack: at each level of the base
    the candidates are pruned by the orbits of the already-found group,
    so only one explicit search per orbit representative is done.
    """
    base_colors = list(colors) if colors is not None else [0] * g.n
    group = PermGroup(list(known_generators) or [], degree=g.n)
    for gen in known_generators:
        assert _check_iso(g, g, list(gen)), "known generator is not an automorphism"

    fixed = []

    def stab_orbits(points):
        sub = group.pointwise_stabilizer(points) if points else group
        return sub

    def level(colors_now, points):
        c = _refine([g], [colors_now])[0]
        cls = _color_classes(c)
        nonsingleton = [vs for vs in cls.values() if len(vs) > 1]
        if not nonsingleton:
            return
        cell = min(nonsingleton, key=lambda vs: (len(vs), vs))
        v = min(cell)
        # left branch first: fix v, recurse deeper
        level(_individualize(c, v), points + [v])
        # now try to map v to every other candidate, modulo known orbits
        done = set()
        while True:
            sub = stab_orbits(points)
            targets = [u for u in cell if u != v and u not in done]
            targets = [u for u in targets if u not in sub.orbit(v)]
            if not targets:
                break
            u = min(targets)
            done.add(u)
            found = None
            for m in isomorphisms_iter(
                    g, g,
                    _individualize_many(c, [v]),
                    _individualize_many(c, [u])):
                found = m
                break
            if found is not None:
                group.add_generator(tuple(found))

    level(base_colors, [])
    return group


def _individualize_many(coloring, vs):
    col = list(coloring)
    bump = max(col) + 1
    for k, v in enumerate(vs):
        col[v] = bump + k + len(col)
    return col


# ---------------------------------------------------------------------------
# Petersen graph and QP-graphs.


def petersen():
    """The 3-regular 10-vertex Petersen graph."""
    labels = [f"o{i}" for i in range(5)] + [f"i{i}" for i in range(5)]
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((i + 5, 5 + (i + 2) % 5))
    return WeightedGraph(labels, edges=edges)


def _delta_set():
    """Ordered pairs of complementary unordered pairs of {1,2,3,4}."""
    pairs = [frozenset(p) for p in combinations(range(1, 5), 2)]
    out = []
    for p in pairs:
        q = frozenset(set(range(1, 5)) - p)
        out.append((p, q))
    return out  # six elements


def _triple_set(delta):
    """Ordered triples of Delta with pairwise first-pair intersections of size 1."""
    out = []
    for t in delta:
        for u in delta:
            for v in delta:
                trip = (t, u, v)
                good = True
                for a, b in combinations(range(3), 2):
                    if len(trip[a][0] & trip[b][0]) != 1:
                        good = False
                        break
                if good:
                    out.append(trip)
    return out


def _s4_orbits(triples):
    """Orbits of the natural S4-action on the triples."""
    from itertools import permutations

    def act(perm, trip):
        def img(pair):
            return frozenset(perm[i - 1] for i in pair)
        return tuple((img(p), img(q)) for p, q in trip)

    remaining = set(triples)
    orbits = []
    while remaining:
        seed = min(remaining, key=repr)
        orb = set()
        frontier = [seed]
        orb.add(seed)
        while frontier:
            t = frontier.pop()
            for perm in permutations(range(1, 5)):
                u = act(perm, t)
                if u not in orb:
                    orb.add(u)
                    frontier.append(u)
        orbits.append(orb)
        remaining -= orb
    return orbits


def qp_graph_from_assignment(psi_parities):
    """Build the 40-vertex cover of the Petersen graph for an orbit assignment.

    psi_parities: list of 10 values in {0, 1} choosing orbit o1 or o2 per
    Petersen vertex.  Vertex set is V_P x {1,2,3,4}.
    """
    p = petersen()
    delta = _delta_set()
    triples = _triple_set(delta)
    orbits = _s4_orbits(triples)
    assert len(orbits) == 2 and all(len(o) == 24 for o in orbits)
    orbits = sorted(orbits, key=lambda o: repr(min(o, key=repr)))
    reps = [min(o, key=repr) for o in orbits]

    # per Petersen vertex: ordered incident edges, and assigned triple
    incident = [sorted(j for j in range(10) if p.adj[v][j]) for v in range(10)]
    assignment = {}
    for v in range(10):
        trip = reps[psi_parities[v]]
        for slot, nb in enumerate(incident[v]):
            assignment[(v, nb)] = trip[slot]

    labels = [(v, i) for v in range(10) for i in range(1, 5)]
    index = {lab: k for k, lab in enumerate(labels)}
    edges = []
    for v, v2, _ in p.edges():
        d1, d2 = assignment[(v, v2)], assignment[(v2, v)]
        tops = [sorted(d1[0]), sorted(d2[0])]
        bots = [sorted(d1[1]), sorted(d2[1])]
        for i in tops[0]:
            for j in tops[1]:
                edges.append((index[(v, i)], index[(v2, j)]))
        for i in bots[0]:
            for j in bots[1]:
                edges.append((index[(v, i)], index[(v2, j)]))
    q = WeightedGraph(labels, edges=edges)
    gamma = GraphMap(q, p, [lab[0] for lab in labels])
    return q, gamma


def is_qp_covering(q: WeightedGraph, gamma: GraphMap):
    """Check the three covering conditions onto the Petersen graph."""
    p = gamma.target
    if p.n != 10 or q.n != 40:
        return False
    # (i) all fibers of size 4
    fibers = [gamma.fiber(v) for v in range(p.n)]
    if any(len(f) != 4 for f in fibers):
        return False
    # edges must map to edges
    if not gamma.is_graph_map():
        return False
    # (ii) edge fibers are two disjoint quadrangles
    vm = gamma.vertex_map
    for v, v2, _ in p.edges():
        cross = [(a, b) for a in fibers[v] for b in fibers[v2] if q.adj[a][b]]
        if len(cross) != 8:
            return False
        deg = Counter()
        for a, b in cross:
            deg[a] += 1
            deg[b] += 1
        if any(d != 2 for d in deg.values()):
            return False
        # two components of size 4: union-find over cross edges
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in cross:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        comps = Counter(find(x) for x in set(d for e in cross for d in e))
        if sorted(comps.values()) != [4, 4]:
            return False
    # also no edges inside a fiber
    for f in fibers:
        for a, b in combinations(f, 2):
            if q.adj[a][b]:
                return False
    # (iii) any two distinct quadrangles share at most one vertex
    quads = quadrangles(q)
    for q1, q2 in combinations(quads, 2):
        if len(set(q1) & set(q2)) > 1:
            return False
    return True


def qp_isomorphic(q1, gamma1, q2, gamma2):
    """Isomorphism of coverings: h with gamma2 . h = gamma1 (exact fibers)."""
    colors1 = list(gamma1.vertex_map)
    colors2 = list(gamma2.vertex_map)
    return find_isomorphism(q1, q2, colors1, colors2) is not None


def qp_enumerate():
    """The two covering isomorphism classes from all 1024 assignments.

    Returns ((q0, gamma0), (q1, gamma1), class_sizes) where q1 is the class
    with discriminant group (Z/4)^2.
    """
    rep_graphs = []
    sizes = []
    parities = []
    for mask in range(1024):
        psi = [(mask >> k) & 1 for k in range(10)]
        q, gamma = qp_graph_from_assignment(psi)
        assert is_qp_covering(q, gamma)
        placed = False
        par = sum(psi) % 2
        # try representatives with matching assignment parity first; this
        # is only a search-order heuristic, membership stays exact
        order = sorted(range(len(rep_graphs)), key=lambda i: parities[i] != par)
        for idx in order:
            rq, rg = rep_graphs[idx]
            if qp_isomorphic(q, gamma, rq, rg):
                sizes[idx] += 1
                placed = True
                break
        if not placed:
            rep_graphs.append((q, gamma))
            sizes.append(1)
            parities.append(par)
    assert len(rep_graphs) == 2, f"expected 2 classes, got {len(rep_graphs)}"
    assert not qp_isomorphic(*rep_graphs[0], *rep_graphs[1])
    # identify which class is which by discriminant group
    from .lattice import Lattice

    out = [None, None]
    for (q, gamma), s, par in zip(rep_graphs, sizes, parities):
        gram, _ = lattice_from_graph(q)
        lat = Lattice(gram)
        d = lat.discriminant_group_orders()
        if d == [2, 2]:
            out[0] = (q, gamma)
        elif d == [4, 4]:
            out[1] = (q, gamma)
        else:
            raise AssertionError(f"unexpected discriminant group {d}")
    assert out[0] is not None and out[1] is not None
    return out[0], out[1], sizes


def induced_covering(q: WeightedGraph):
    """Reconstruct the covering map to the Petersen graph intrinsically.

    Two vertices lie in one fiber iff they are non-adjacent and contained
    in a common quadrangle.  Raises ValueError if the result is not a
    valid covering (e.g. for the Petersen graph itself).
    """
    quads = quadrangles(q)
    parent = list(range(q.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for quad in quads:
        for a, b in combinations(quad, 2):
            if not q.adj[a][b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    classes = {}
    for v in range(q.n):
        classes.setdefault(find(v), []).append(v)
    fibers = sorted(classes.values())
    if len(fibers) != 10 or any(len(f) != 4 for f in fibers):
        raise ValueError("graph is not a quadruple cover of the Petersen graph")
    # quotient graph on the 10 fibers
    fiber_of = {}
    for k, f in enumerate(fibers):
        for v in f:
            fiber_of[v] = k
    qedges = set()
    for i, j, _ in q.edges():
        fi, fj = fiber_of[i], fiber_of[j]
        if fi == fj:
            raise ValueError("edge inside a fiber")
        qedges.add((min(fi, fj), max(fi, fj)))
    quotient = WeightedGraph([f"f{k}" for k in range(10)],
                             edges=[(i, j) for i, j in sorted(qedges)])
    p = petersen()
    iso = find_isomorphism(quotient, p)
    if iso is None:
        raise ValueError("quotient graph is not the Petersen graph")
    gamma = GraphMap(q, p, [iso[fiber_of[v]] for v in range(q.n)])
    if not is_qp_covering(q, gamma):
        raise ValueError("reconstructed map is not a covering")
    return gamma
