"""Deterministic permutation groups via incremental Schreier-Sims.

Permutations are tuples p of length n with p[i] = image of point i.
Composition is left-to-right: (p * q)[i] = q[p[i]], matching the
right-action convention used for isometries elsewhere.
"""

from __future__ import annotations


def identity_perm(n):
    return tuple(range(n))


def compose(p, q):
    """Apply p then q."""
    return tuple(q[x] for x in p)


def inverse_perm(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_order(p):
    n = len(p)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = order * length // _gcd(order, length)
    return order


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class PermGroup:
    """Permutation group with an incrementally maintained stabilizer chain.

    `base` may prescribe a prefix of the base, which makes the pointwise
    stabilizer of those points directly readable off the chain.
    """

    def __init__(self, generators, degree=None, base=()):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("need generators or an explicit degree")
            degree = len(gens[0])
        self.degree = degree
        self._id = identity_perm(degree)
        self.base = list(base)
        self.sgs = [[] for _ in self.base]       # sgs[k]: strong gens fixing base[:k]
        self.sgs.append([])                      # one spare level
        self.transversals = [{b: self._id} for b in self.base]
        self._checked = [set() for _ in self.base]
        self.gens = []
        for g in gens:
            self.add_generator(g)

    # -- chain maintenance ---------------------------------------------

    def _level_gens(self, level):
        out = []
        for lvl in range(level, len(self.sgs)):
            out.extend(self.sgs[lvl])
        return out

    def _grow_transversal(self, level):
        """Grow the orbit of base[level]; existing representatives kept."""
        t = self.transversals[level]
        gens = self._level_gens(level)
        frontier = list(t.keys())
        while frontier:
            nxt = []
            for point in frontier:
                rep = t[point]
                for g in gens:
                    image = g[point]
                    if image not in t:
                        t[image] = compose(rep, g)
                        nxt.append(image)
            frontier = nxt

    def sift(self, p):
        """Strip p through the chain; returns (residue, depth)."""
        p = tuple(p)
        for i, b in enumerate(self.base):
            image = p[b]
            t = self.transversals[i]
            if image not in t:
                return p, i
            p = compose(p, inverse_perm(t[image]))
        return p, len(self.base)

    def contains(self, p):
        residue, _ = self.sift(p)
        return residue == self._id

    def add_generator(self, g):
        """Add a generator; returns True if the group grew."""
        g = tuple(g)
        self.gens.append(g)
        if g == self._id:
            return False
        residue, depth = self.sift(g)
        if residue == self._id:
            return False
        self._install(residue, depth)
        self._close()
        return True

    def _install(self, h, depth):
        if depth == len(self.base):
            moved = next(i for i in range(self.degree) if h[i] != i)
            self.base.append(moved)
            self.transversals.append({moved: self._id})
            self._checked.append(set())
            self.sgs.append([])
        self.sgs[depth].append(h)
        for lvl in range(depth, -1, -1):
            self._grow_transversal(lvl)

    def _close(self):
        i = len(self.base) - 1
        while i >= 0:
            repaired = self._verify_level(i)
            if repaired:
                i = len(self.base) - 1
            else:
                i -= 1

    def _verify_level(self, i):
        """Check Schreier generators at level i; returns True if repaired."""
        t = self.transversals[i]
        gens = self._level_gens(i)
        checked = self._checked[i]
        for point in list(t.keys()):
            rep = t[point]
            for g in gens:
                key = (point, g)
                if key in checked:
                    continue
                image = g[point]
                schreier = compose(compose(rep, g), inverse_perm(t[image]))
                checked.add(key)
                if schreier == self._id:
                    continue
                residue, depth = self.sift(schreier)
                if residue != self._id:
                    self._install(residue, depth)
                    # generator sets at levels <= depth changed
                    for lvl in range(min(depth, len(self._checked) - 1) + 1):
                        self._invalidate_new_gens(lvl)
                    return True
        return False

    def _invalidate_new_gens(self, lvl):
        # nothing to do: _checked keys include the generator itself, so new
        # generators are automatically unchecked; transversal growth adds
        # new points which are likewise unchecked.
        return

    # -- queries ------------------------------------------------------

    def order(self):
        o = 1
        for t in self.transversals:
            o *= len(t)
        return o

    def orbit(self, point):
        orb = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens:
                    y = g[x]
                    if y not in orb:
                        orb.add(y)
                        nxt.append(y)
            frontier = nxt
        return orb

    def orbits(self):
        seen = set()
        out = []
        for i in range(self.degree):
            if i not in seen:
                orb = self.orbit(i)
                seen |= orb
                out.append(sorted(orb))
        return out

    def pointwise_stabilizer(self, points):
        """Subgroup fixing every point of `points`, as a new PermGroup."""
        points = list(points)
        g = PermGroup(self.gens, degree=self.degree, base=points)
        k = len(points)
        gens = [p for lvl in range(k, len(g.sgs)) for p in g.sgs[lvl]]
        gens = [p for p in gens if all(p[pt] == pt for pt in points)]
        return PermGroup(gens, degree=self.degree)

    def set_orbit(self, block):
        """Orbit of a frozenset of points under the group (BFS)."""
        block = frozenset(block)
        orbit = {block}
        frontier = [block]
        while frontier:
            nxt = []
            for s in frontier:
                for g in self.gens:
                    image = frozenset(g[x] for x in s)
                    if image not in orbit:
                        orbit.add(image)
                        nxt.append(image)
            frontier = nxt
        return orbit

    def set_stabilizer(self, block):
        """Set-wise stabilizer of `block` via Schreier generators."""
        block = frozenset(block)
        transversal = {block: self._id}
        order_queue = [block]
        while order_queue:
            nxt = []
            for s in order_queue:
                rep = transversal[s]
                for g in self.gens:
                    image = frozenset(g[x] for x in s)
                    if image not in transversal:
                        transversal[image] = compose(rep, g)
                        nxt.append(image)
            order_queue = nxt
        total = self.order()
        assert total % len(transversal) == 0
        target = total // len(transversal)
        sub = PermGroup([], degree=self.degree)
        for s, rep in transversal.items():
            for g in self.gens:
                image = frozenset(g[x] for x in s)
                schreier = compose(compose(rep, g),
                                   inverse_perm(transversal[image]))
                if schreier != self._id:
                    sub.add_generator(schreier)
                    if sub.order() == target:
                        return sub
        assert sub.order() == target
        return sub

    def elements(self, limit=None):
        """All elements (only for small groups); deterministic order."""
        out = [self._id]
        seen = {self._id}
        frontier = [self._id]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.gens:
                    q = compose(p, g)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
                        if limit is not None and len(seen) > limit:
                            raise ValueError("group larger than limit")
            frontier = nxt
            out.extend(nxt)
        return sorted(out)
