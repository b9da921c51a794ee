"""Exact maximum clique by branch and bound.

Vertices are ``0..n-1`` and ``adj[v]`` is the set of neighbours of ``v``.
Vertices are ordered by decreasing degree; the bound is a greedy colouring
of the candidate set, which is the classic Tomita-style pruning.
"""
from itertools import combinations


def _colour_bound(cands, adj):
    """Greedy colour classes; returns (vertex, colour) pairs in colour order."""
    colours = []
    for v in cands:
        for cls in colours:
            if not (adj[v] & cls):
                cls.add(v)
                break
        else:
            colours.append({v})
    out = []
    for c, cls in enumerate(colours, 1):
        out.extend((v, c) for v in sorted(cls))
    return out


def max_clique(n, adj):
    """Return one maximum clique as a sorted list of vertices."""
    if n == 0:
        return []
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    best = []

    def expand(clique, cands):
        nonlocal best
        coloured = _colour_bound(cands, adj)
        # walk from the highest colour down so the bound prunes early
        for i in range(len(coloured) - 1, -1, -1):
            v, c = coloured[i]
            if len(clique) + c <= len(best):
                return
            new = clique + [v]
            rest = [u for u, _ in coloured[:i] if u in adj[v]]
            if rest:
                expand(new, rest)
            elif len(new) > len(best):
                best = new

    expand([], order)
    return sorted(best)


def max_clique_brute(n, adj):
    """Exhaustive search over all subsets; test oracle for small graphs."""
    for size in range(n, 0, -1):
        for sub in combinations(range(n), size):
            if all(b in adj[a] for a, b in combinations(sub, 2)):
                return list(sub)
    return []
