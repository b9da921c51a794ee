from fractions import Fraction

import pytest

from bsarr.arrangement import intersection_lattice
from bsarr.errors import HypothesisError, InputError
from bsarr.vsubspace import (
    compute_VI,
    connectivity,
    defect_bound,
    find_admissible_I,
    full_image_check,
    full_image_failures,
    normal_crossing_check,
    vprime_dim,
    weights_for_I,
)

from conftest import corpus, random_lines


def test_weights_for_I_shape():
    ch = weights_for_I(6, 4, [0, 2, 4])
    q = Fraction(4, 6)
    assert ch.Ic == (1, 3)
    assert ch.alpha.alpha == (1 - q, -q, 1 - q, -q, 1 - q, 1 - q)
    with pytest.raises(InputError) as e:
        weights_for_I(6, 4, [0, 2])
    assert e.value.code == "BAD_CARDINALITY"
    with pytest.raises(InputError) as e:
        weights_for_I(6, 3, [0, 5])
    assert e.value.code == "BAD_INDEX"


def test_nine_lines_k6(nine_lines):
    # I^c = {y, x - y + 1, x + y + 2}
    ch = weights_for_I(9, 6, [0, 2, 3, 5, 7])
    assert ch.Ic == (1, 4, 6)
    r = compute_VI(nine_lines, ch)
    assert (r.dim_VIprime, r.dim_VI, r.dim_H) == (10, 10, 13)
    assert 0 < r.dim_VI < r.dim_H
    assert normal_crossing_check(nine_lines, ch.I, 6)
    assert not full_image_check(nine_lines, ch)
    assert full_image_failures(nine_lines, ch)[0] == "codegree"


def test_quadrangle_admissible_I_covers_triple_points(quadrangle):
    choices = find_admissible_I(quadrangle, 4)
    assert [c.Ic for c in choices[:2]] == [(0, 2), (1, 3)]
    triples = [set(e.containing) for e in intersection_lattice(quadrangle).of_rank(2) if e.m_L == 3]
    assert all(t & set(choices[0].Ic) for t in triples)
    r = compute_VI(quadrangle, choices[0])
    assert r.is_full and full_image_check(quadrangle, choices[0])


def test_triple6_k5(triple6):
    ch = find_admissible_I(triple6, 5)[0]
    r = compute_VI(triple6, ch)
    assert (r.dim_VIprime, r.dim_VI, r.dim_H) == (5, 4, 4)
    assert r.c == 1


@pytest.mark.parametrize("name, c, full, failures", [
    ("triple4-d7-a", 0, True, []),
    ("triple4-d7-b", 0, True, []),
    ("triple4-d7-c", 1, False, ["bad-component"]),
])
def test_triple4_families(name, c, full, failures):
    arr = corpus(name)
    ch = weights_for_I(7, 5, [2, 3, 4, 5])  # I^c = {x, y}
    r = compute_VI(arr, ch)
    assert connectivity(arr, ch).c == c
    assert r.dim_VIprime == 6
    assert r.is_full == full
    assert full_image_failures(arr, ch) == failures
    assert normal_crossing_check(arr, ch.I, 5)


def test_connectivity_needs_lines():
    arr = corpus("generic-n2-d4")
    with pytest.raises(InputError):
        connectivity(arr, weights_for_I(4, 2, [0]))


def test_defect_bound_weight_sum_hypothesis():
    # k/d = 1/3 never happens for d = 7; use a d = 9 example with a point on two I^c lines
    arr = corpus("nine-lines-d9")
    for ch in find_admissible_I(arr, 3):
        pts = [set(e.containing) for e in intersection_lattice(arr).of_rank(2) if 8 not in e.containing]
        bad = any(len(p & set(ch.Ic)) == 2 and p & set(ch.I) for p in pts)
        if bad:
            with pytest.raises(HypothesisError):
                defect_bound(arr, ch)
            return
    pytest.skip("no such choice")


@pytest.mark.parametrize("seed", range(6))
def test_defect_bound_property(seed):
    """dim V(I)' - c <= dim V(I) <= dim V(I)' whenever the bound applies."""
    checked = 0
    for arr in random_lines(300 + seed, 3, 5, 7):
        d = arr.d
        for k in range(3, d):
            for ch in find_admissible_I(arr, k)[:4]:
                r = compute_VI(arr, ch)
                assert r.dim_VI <= r.dim_VIprime
                if r.c is not None:
                    assert r.dim_VIprime - r.c <= r.dim_VI
                    checked += 1
                    if r.certified_equality:
                        assert r.dim_VI == r.dim_VIprime - r.c
    assert checked > 0


def test_vprime_normal_crossing_binomial():
    arr = corpus("generic-n3-d6")
    assert vprime_dim(arr, [0, 1, 2, 3]) == 6
