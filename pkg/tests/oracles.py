"""Independent reference computations used by the test suite.

Nothing here calls into the code paths it is used to check.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction


def segre_matrix():
    """Configuration of P2 x P2 x P2, cells ordered (i, j, k) lexicographically."""
    cells = list(itertools.product(range(3), repeat=3))
    rows = [[1] * 27]
    for axis in range(3):
        for level in range(2):
            rows.append([int(c[axis] == level) for c in cells])
    return rows


def mat_vec(rows, u):
    return tuple(sum(a * b for a, b in zip(r, u)) for r in rows)


def brute_fiber_1row(a, t):
    """All u >= 0 with a.u = t over the full box u_i <= t, for a positive row ``a``."""
    n = len(a)
    out = []
    for head in itertools.product(range(t + 1), repeat=n - 1):
        rest = t - sum(x * y for x, y in zip(a, head))
        if rest >= 0 and rest % a[-1] == 0:
            out.append(tuple(head) + (rest // a[-1],))
    return sorted(out)


def bfs_components(elements, adjacent):
    """Components of the explicit graph, each a sorted index list, ordered by first index."""
    seen = [False] * len(elements)
    comps = []
    for s in range(len(elements)):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [], deque([s])
        while queue:
            i = queue.popleft()
            comp.append(i)
            for j in range(len(elements)):
                if not seen[j] and adjacent(elements[i], elements[j]):
                    seen[j] = True
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def shares_support(u, v):
    return any(a > 0 and b > 0 for a, b in zip(u, v))


def completion_oracle_1row(a, max_degree):
    """Greedy fiber completion for a positive 1-row matrix.

    Walks the fibers t = 1..max_degree in order, keeping a growing move set M.
    Whenever the graph of M on F_t is disconnected, its component sizes are
    recorded and bridging moves from the first component to every other are
    added. Returns {t: sorted component sizes} for the disconnected fibers.
    """
    moves = []
    structure = {}
    for t in range(1, max_degree + 1):
        fiber = brute_fiber_1row(a, t)
        if len(fiber) < 2:
            continue
        def linked(u, v):
            d = tuple(x - y for x, y in zip(u, v))
            neg = tuple(-x for x in d)
            return d in move_set or neg in move_set
        move_set = set(moves)
        comps = bfs_components(fiber, linked)
        if len(comps) > 1:
            structure[t] = sorted(len(c) for c in comps)
            base = fiber[comps[0][0]]
            for c in comps[1:]:
                other = fiber[c[0]]
                moves.append(tuple(x - y for x, y in zip(base, other)))
    return structure


def prufer_encode(edges, n):
    """Pruefer sequence of a labelled tree given as an edge list on 0..n-1."""
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seq = []
    for _ in range(n - 2):
        leaf = min(v for v in adj if len(adj[v]) == 1)
        (nbr,) = adj[leaf]
        seq.append(nbr)
        adj[nbr].discard(leaf)
        del adj[leaf]
    return seq


def all_labelled_trees(n):
    """Every spanning tree of K_n, found by filtering all (n-1)-edge subsets."""
    all_edges = list(itertools.combinations(range(n), 2))
    trees = []
    for subset in itertools.combinations(all_edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for a, b in subset:
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        if ok:
            trees.append(frozenset(subset))
    return trees


class ScriptedRng:
    """Replays a fixed prefix of ``randrange`` outcomes, recording branch widths."""

    def __init__(self, script):
        self.script = list(script)
        self.pos = 0
        self.widths = []

    def randrange(self, k):
        self.widths.append(k)
        if self.pos < len(self.script):
            v = self.script[self.pos]
        else:
            v = 0
            self.script.append(0)
        self.pos += 1
        return v


def exhaustive_distribution(sampler):
    """Exact output distribution of ``sampler(rng)`` over every randrange outcome.

    Each call ``randrange(k)`` is treated as a uniform branch of width ``k``;
    all leaves of the resulting decision tree are visited.
    """
    dist = {}
    stack = [[]]
    while stack:
        prefix = stack.pop()
        rng = ScriptedRng(prefix)
        out = sampler(rng)
        p = Fraction(1)
        for w in rng.widths:
            p /= w
        dist[out] = dist.get(out, 0) + p
        # branch on every position past the given prefix
        for pos in range(len(prefix), len(rng.script)):
            for v in range(1, rng.widths[pos]):
                stack.append(rng.script[:pos] + [v])
    return dist


def segre_quadric_moves():
    """All moves e_a + e_b - e_c - e_d of the 3x3x3 Segre configuration.

    Pairs of cells {a, b} and {c, d} qualify when, on every axis, they carry
    the same multiset of levels. Quadrics generate this toric ideal.
    """
    cells = list(itertools.product(range(3), repeat=3))
    pairs = list(itertools.combinations_with_replacement(range(27), 2))

    def profile(p):
        a, b = cells[p[0]], cells[p[1]]
        return tuple(tuple(sorted((a[k], b[k]))) for k in range(3))

    groups = {}
    for p in pairs:
        groups.setdefault(profile(p), []).append(p)
    moves = set()
    for group in groups.values():
        for p, q in itertools.combinations(group, 2):
            z = [0] * 27
            for i in p:
                z[i] += 1
            for i in q:
                z[i] -= 1
            moves.add(tuple(z))
    return sorted(moves)
