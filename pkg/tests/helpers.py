"""Independent oracles used across the tests.

Everything here recomputes group data from first principles (plain loops over
raw ids, permutation composition, hand-written tables) so that the package's
vectorized paths are checked against genuinely different code.
"""

import numpy as np

from frattini.groups import PGroup


def brute_center(G):
    return sorted(g for g in range(G.order)
                  if all(G.mul(g, h) == G.mul(h, g) for h in range(G.order)))


def brute_commutator_closure(G):
    comms = {G.commutator(g, h) for g in range(G.order) for h in range(G.order)}
    return brute_closure(G, comms)


def brute_closure(G, seed):
    elems = set(seed) | {0}
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for b in list(elems):
                c = G.mul(a, b)
                if c not in elems:
                    elems.add(c)
                    changed = True
    return sorted(elems)


def brute_element_order(G, g):
    k, x = 1, g
    while x != 0:
        x = G.mul(x, g)
        k += 1
    return k


def square_symmetry_group():
    """Dihedral group of the square, built from vertex permutations."""
    r = (1, 2, 3, 0)      # rotate vertices
    f = (1, 0, 3, 2)      # reflect
    def compose(a, b):
        return tuple(a[b[i]] for i in range(4))
    elems = [(0, 1, 2, 3)]
    frontier = [(0, 1, 2, 3)]
    while frontier:
        nxt = []
        for e in frontier:
            for g in (r, f):
                c = compose(e, g)
                if c not in elems:
                    elems.append(c)
                    nxt.append(c)
        frontier = nxt
    index = {e: i for i, e in enumerate(elems)}
    table = np.array([[index[compose(a, b)] for b in elems] for a in elems])
    gens = [index[r], index[f]]
    return PGroup(2, 8, gens, "square-symmetries", table=table)


def quaternion_unit_group():
    """The eight quaternion units with the hand-coded multiplication rule."""
    # elements (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
    labels = [(s, a) for s in (1, -1) for a in range(4)]
    eps = {}   # (axis, axis) -> (sign, axis)
    for a in range(4):
        eps[(0, a)] = (1, a)
        eps[(a, 0)] = (1, a)
        eps[(a, a)] = (1, 0) if a == 0 else (-1, 0)
    eps[(1, 2)] = (1, 3); eps[(2, 1)] = (-1, 3)
    eps[(2, 3)] = (1, 1); eps[(3, 2)] = (-1, 1)
    eps[(3, 1)] = (1, 2); eps[(1, 3)] = (-1, 2)
    def mul(x, y):
        (s1, a1), (s2, a2) = x, y
        s3, a3 = eps[(a1, a2)]
        return (s1 * s2 * s3, a3)
    index = {l: i for i, l in enumerate(labels)}
    table = np.array([[index[mul(a, b)] for b in labels] for a in labels])
    gens = [index[(1, 1)], index[(1, 2)]]
    return PGroup(2, 8, gens, "quaternion-units", table=table)


def minimal_generators(G):
    """Greedy small generating set (ascending ids)."""
    gens = []
    span = {0}
    for g in range(1, G.order):
        if g not in span:
            gens.append(g)
            span = set(brute_closure(G, gens))
        if len(span) == G.order:
            break
    return gens


def find_isomorphism(G, H):
    """Brute-force isomorphism by generator images; None when not isomorphic.

    Intended for tiny groups only (order <= 16 or so).
    """
    if G.order != H.order:
        return None
    gens = minimal_generators(G)
    # express every element of G as a word in the generators
    word = {0: ()}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = G.mul(x, g)
                if y not in word:
                    word[y] = word[x] + (i,)
                    nxt.append(y)
        frontier = nxt
    orders = [brute_element_order(G, g) for g in gens]
    candidates = [
        [h for h in range(H.order) if brute_element_order(H, h) == o]
        for o in orders
    ]

    def evaluate(images, w):
        out = 0
        for i in w:
            out = H.mul(out, images[i])
        return out

    def backtrack(chosen):
        if len(chosen) == len(gens):
            phi = {g: evaluate(chosen, w) for g, w in word.items()}
            if len(set(phi.values())) != G.order:
                return None
            for a in range(G.order):
                for b in range(G.order):
                    if phi[G.mul(a, b)] != H.mul(phi[a], phi[b]):
                        return None
            return phi
        for h in candidates[len(chosen)]:
            result = backtrack(chosen + [h])
            if result is not None:
                return result
        return None

    return backtrack([])
