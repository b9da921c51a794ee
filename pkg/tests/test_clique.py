from itertools import combinations

from hypothesis import given, settings, strategies as st

from bsarr._clique import max_clique, max_clique_brute


@st.composite
def graphs(draw):
    n = draw(st.integers(0, 11))
    p = draw(st.floats(0.1, 0.95))
    adj = [set() for _ in range(n)]
    for a, b in combinations(range(n), 2):
        if draw(st.floats(0, 1)) < p:
            adj[a].add(b)
            adj[b].add(a)
    return n, adj


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_branch_and_bound_matches_brute_force(g):
    n, adj = g
    best = max_clique(n, adj)
    assert len(best) == len(max_clique_brute(n, adj))
    assert all(b in adj[a] for a, b in combinations(best, 2))


def test_empty_and_complete():
    assert max_clique(0, []) == []
    adj = [set(range(5)) - {v} for v in range(5)]
    assert max_clique(5, adj) == [0, 1, 2, 3, 4]
    assert len(max_clique(3, [set(), set(), set()])) == 1
