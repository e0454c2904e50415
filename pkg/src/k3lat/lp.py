"""Tiny exact rational LP used by the chamber facet test.

Only one problem shape is needed: given functionals, decide whether
there is a point with f_v . x = 0 and f_u . x >= 1 for all u in a set
(cone feasibility: ">= 1" and "> 0" are equivalent for finitely many
homogeneous constraints).  Phase-I simplex with Bland's rule, Fractions.
"""

from __future__ import annotations

from fractions import Fraction


def _simplex_phase1(a, b):
    """Feasibility of {y >= 0 : A y = b}; returns a solution or None.

    Standard Phase-I with artificial variables and Bland's rule (no
    cycling); everything exact.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    # make b >= 0
    a = [row[:] for row in a]
    b = list(b)
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]
    # tableau with artificials
    total = n + m
    tab = [a[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)]
           + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # objective: minimize sum of artificials -> reduced cost row
    cost = [Fraction(0)] * total
    for j in range(n, total):
        cost[j] = Fraction(1)
    # z_j - c_j row computed on demand
    while True:
        # reduced costs: for each nonbasic column j: c_j - sum over rows of
        # c_basis[i] * tab[i][j]
        cb = [cost[v] for v in basis]
        entering = None
        for j in range(total):
            if j in basis:
                continue
            red = cost[j] - sum(cb[i] * tab[i][j] for i in range(m))
            if red < 0:
                entering = j
                break  # Bland: smallest index
        if entering is None:
            break
        # ratio test, Bland tie-break on basis variable index
        leaving = None
        best = None
        for i in range(m):
            if tab[i][entering] > 0:
                ratio = tab[i][total] / tab[i][entering]
                key = (ratio, basis[i])
                if best is None or key < best:
                    best = key
                    leaving = i
        if leaving is None:
            return None  # unbounded phase-I cannot happen (cost >= 0)
        piv = tab[leaving][entering]
        tab[leaving] = [x / piv for x in tab[leaving]]
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leaving])]
        basis[leaving] = entering
    value = sum(cost[basis[i]] * tab[i][total] for i in range(m))
    if value != 0:
        return None
    y = [Fraction(0)] * total
    for i in range(m):
        y[basis[i]] = tab[i][total]
    return y[:n]


def cone_interior_point_on_hyperplane(f_zero, f_pos):
    """A rational x with f_zero.x = 0 and f.x >= 1 for all f in f_pos, or None.

    Soundness both ways for cones: None means no x with f_zero.x = 0 and
    f.x > 0 for all f exists (for this constraint subset).
    """
    n = len(f_zero)
    # variables: x = x+ - x-, slacks s_f (one per inequality)
    # rows: f_zero.x = 0 ; f.x - s = 1
    num_ineq = len(f_pos)
    cols = 2 * n + num_ineq
    a = []
    b = []
    row = [Fraction(v) for v in f_zero] + [Fraction(-v) for v in f_zero] \
        + [Fraction(0)] * num_ineq
    a.append(row)
    b.append(Fraction(0))
    for k, f in enumerate(f_pos):
        row = [Fraction(v) for v in f] + [Fraction(-v) for v in f] \
            + [Fraction(-1) if j == k else Fraction(0) for j in range(num_ineq)]
        a.append(row)
        b.append(Fraction(1))
    y = _simplex_phase1(a, b)
    if y is None:
        return None
    x = [y[i] - y[n + i] for i in range(n)]
    return x
