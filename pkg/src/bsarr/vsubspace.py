"""The subspaces V(I)' and V(I) and the combinatorial tests around them.

For 1 <= k <= d and a set I of k - 1 non-pivot hyperplanes the weights are
1 - k/d on I and the pivot and -k/d on the complement I^c.  V(I)' is spanned
by the top-degree monomials supported in I; V(I) is its image in top
cohomology of the Aomoto complex.

Connectivity of I through points lying on I^c, and the good/bad
classification of its components, is defined for line arrangements (n = 3)
and computed from the intersection lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

from bsarr.aomoto import WeightVector, build_os_algebra, cohomology_dims, resonance_check
from bsarr.arrangement import Arrangement, intersection_lattice, max_multiplicity
from bsarr.errors import HypothesisError, error
from bsarr.linalg import rank

__all__ = [
    "WeightChoice",
    "VIResult",
    "ConnectivityReport",
    "weights_for_I",
    "compute_VI",
    "connectivity",
    "defect_bound",
    "full_image_check",
    "full_image_failures",
    "normal_crossing_check",
    "find_admissible_I",
    "vprime_dim",
]

EXHAUSTIVE_LIMIT = 20_000


@dataclass(frozen=True)
class WeightChoice:
    k: int
    d: int
    pivot: int
    I: tuple
    Ic: tuple
    alpha: WeightVector

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "I": [i + 1 for i in self.I],
            "Ic": [i + 1 for i in self.Ic],
            "pivot": self.pivot + 1,
            "weights": self.alpha.to_json(),
        }


def weights_for_I(d: int, k: int, I: Iterable[int], pivot: int | None = None) -> WeightChoice:
    if pivot is None:
        pivot = d - 1
    I = tuple(sorted(set(I)))
    if len(I) != k - 1:
        raise error("BAD_CARDINALITY", f"|I| must be k - 1 = {k - 1}, got {len(I)}", k=k, size=len(I))
    bad = [i for i in I if i == pivot or not 0 <= i < d]
    if bad:
        raise error("BAD_INDEX", f"I must avoid the pivot and lie in range: {bad}")
    q = Fraction(k, d)
    hi = set(I) | {pivot}
    alpha = WeightVector(tuple(1 - q if i in hi else -q for i in range(d)))
    Ic = tuple(i for i in range(d) if i not in hi)
    return WeightChoice(k, d, pivot, I, Ic, alpha)


@dataclass(frozen=True)
class VIResult:
    dim_VIprime: int
    dim_VI: int
    dim_H: int
    dim_dA_cap_VIprime: int
    c: int | None = None
    certified_equality: bool = False

    @property
    def is_zero(self) -> bool:
        return self.dim_VI == 0

    @property
    def is_full(self) -> bool:
        return self.dim_VI == self.dim_H

    def to_json(self) -> dict:
        return {
            "dim_VIprime": self.dim_VIprime,
            "dim_VI": self.dim_VI,
            "dim_H_top": self.dim_H,
            "dim_dA_cap_VIprime": self.dim_dA_cap_VIprime,
            "c": self.c,
            "certified_equality": self.certified_equality,
        }


def _vprime_rows(alg, I: tuple) -> list:
    local = [alg.local(i) for i in I]
    top = alg.top
    return [alg.straighten(s) for s in combinations(sorted(local), top)]


def vprime_dim(arr: Arrangement, I: Iterable[int], pivot: int | None = None) -> int:
    """dim V(I)'; independent of the weights."""
    alg = build_os_algebra(arr, pivot)
    rows = _vprime_rows(alg, tuple(sorted(I)))
    return rank(rows) if rows else 0


def compute_VI(arr: Arrangement, choice: WeightChoice) -> VIResult:
    ok, bad = resonance_check(arr, choice.alpha)
    if not ok:
        raise error("RESONANT_WEIGHTS", "weights violate the resonance condition",
                    edges=[[i + 1 for i in e.containing] for e, _ in bad])
    alg = build_os_algebra(arr, choice.pivot)
    top = alg.top
    vrows = _vprime_rows(alg, choice.I)
    drows = alg.differential(alg.local_weights(choice.alpha), top - 1) if top >= 1 else []
    drows = [r for r in drows if any(r)]
    r_v = rank(vrows) if vrows else 0
    r_d = rank(drows) if drows else 0
    r_sum = rank(vrows + drows) if (vrows or drows) else 0
    dim_H = len(alg.basis[top]) - r_d
    c = None
    equal = False
    if arr.n == 3 and max_multiplicity(arr) <= 3:
        try:
            c, equal = defect_bound(arr, choice)
        except HypothesisError:
            pass
    return VIResult(r_v, r_sum - r_d, dim_H, r_v + r_d - r_sum, c, equal)


@dataclass(frozen=True)
class ConnectivityReport:
    components: tuple
    smooth_points: tuple
    good: tuple
    bad: tuple

    @property
    def c(self) -> int:
        return sum(self.good)

    @property
    def has_bad(self) -> bool:
        return any(self.bad)

    def to_json(self) -> dict:
        return {
            "components": [
                {"I": [i + 1 for i in comp], "smooth_points": s, "good": g, "bad": b}
                for comp, s, g, b in zip(self.components, self.smooth_points, self.good, self.bad)
            ],
            "c": self.c,
        }


def _require_lines(arr: Arrangement):
    if arr.n != 3:
        raise error("WRONG_DIMENSION", f"needs a line arrangement (n = 3), got n = {arr.n}")
    if max_multiplicity(arr) > 3:
        raise error("MULTIPLICITY_TOO_HIGH", "needs point multiplicities <= 3")


def _affine_points(arr: Arrangement, pivot: int) -> list[set]:
    return [set(e.containing) for e in intersection_lattice(arr).of_rank(2) if pivot not in e.containing]


def connectivity(arr: Arrangement, choice: WeightChoice) -> ConnectivityReport:
    _require_lines(arr)
    I, Ic = set(choice.I), set(choice.Ic)
    points = _affine_points(arr, choice.pivot)
    parent = {i: i for i in I}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pt in points:
        if pt & Ic:
            on = sorted(pt & I)
            for a, b in zip(on, on[1:]):
                parent[find(a)] = find(b)
    groups = {}
    for i in sorted(I):
        groups.setdefault(find(i), []).append(i)
    comps = sorted(tuple(g) for g in groups.values())
    smooth = []
    for comp in comps:
        cs = set(comp)
        smooth.append(sum(1 for pt in points if pt & Ic and len(pt & cs) == 1))
    return ConnectivityReport(
        tuple(comps), tuple(smooth), tuple(s == 0 for s in smooth), tuple(s >= 2 for s in smooth)
    )


def defect_bound(arr: Arrangement, choice: WeightChoice) -> tuple[int, bool]:
    """(c, equality applies) for dim V(I) >= dim V(I)' - c."""
    _require_lines(arr)
    ok, _ = resonance_check(arr, choice.alpha)
    if not ok:
        raise error("RESONANT_WEIGHTS", "weights violate the resonance condition")
    I, Ic = set(choice.I), set(choice.Ic)
    q = Fraction(choice.k, choice.d)
    points = _affine_points(arr, choice.pivot)
    if 1 - 3 * q == 0:
        for pt in points:
            if len(pt & Ic) == 2 and pt & I:
                raise error("HYPOTHESIS_FAILED",
                            "weight sum vanishes at a point on two lines of I^c and one of I",
                            point=[i + 1 for i in sorted(pt)])
    conn = connectivity(arr, choice)
    equal = cohomology_dims(build_os_algebra(arr, choice.pivot), choice.alpha)[1] == 0
    if equal and 2 - 3 * q == 0:
        for comp, good in zip(conn.components, conn.good):
            if not good:
                continue
            cs = set(comp)
            if any(len(pt & cs) == 2 and pt & Ic for pt in points):
                equal = False
                break
    return conn.c, equal


def full_image_failures(arr: Arrangement, choice: WeightChoice) -> list[str]:
    """Names of the unmet hypotheses of the full-image criterion (empty when all hold)."""
    _require_lines(arr)
    out = []
    if choice.d - choice.k != 2:
        out.append("codegree")
    if not resonance_check(arr, choice.alpha)[0]:
        out.append("resonance")
    if connectivity(arr, choice).has_bad:
        out.append("bad-component")
    q = Fraction(choice.k, choice.d)
    if 1 - 3 * q == 0 and len(choice.Ic) == 2:
        Ic = set(choice.Ic)
        if any(pt >= Ic and pt & set(choice.I) for pt in _affine_points(arr, choice.pivot)):
            out.append("weight-sum")
    return out


def full_image_check(arr: Arrangement, choice: WeightChoice) -> bool:
    """True when H^{top} = V(I) follows from the codegree-two connectivity criterion."""
    return not full_image_failures(arr, choice)


def _general_position(arr: Arrangement, idx: Iterable[int]) -> bool:
    lat = intersection_lattice(arr)
    idx = set(idx)
    for e in lat:
        if 0 < e.rank < arr.n and len(idx & set(e.containing)) > e.rank:
            return False
    return True


def normal_crossing_check(arr: Arrangement, I: Iterable[int], k: int, pivot: int | None = None) -> bool:
    """I plus the pivot in general position; then dim V(I)' = C(k-1, n-1), verified."""
    if pivot is None:
        pivot = arr.d - 1
    I = tuple(sorted(I))
    if k < arr.n or len(I) != k - 1:
        return False
    if not _general_position(arr, set(I) | {pivot}):
        return False
    expect = comb(k - 1, arr.n - 1)
    got = vprime_dim(arr, I, pivot)
    if got != expect:
        raise AssertionError(f"normal crossing I but dim V(I)' = {got} != {expect}")
    return True


def find_admissible_I(arr: Arrangement, k: int, pivot: int | None = None) -> list[WeightChoice]:
    """Non-resonant choices of I for this k, best-first and deterministic.

    Tier 0: I^c meets every triple point; tier 1: I plus pivot in general
    position; tier 2: the rest.  Lexicographic in I^c within a tier.
    """
    if arr.n != 3:
        raise error("WRONG_DIMENSION", f"needs a line arrangement (n = 3), got n = {arr.n}")
    d = arr.d
    if pivot is None:
        pivot = d - 1
    if not 1 <= k <= d:
        return []
    others = [i for i in range(d) if i != pivot]
    triples = [set(e.containing) for e in intersection_lattice(arr).of_rank(2) if e.m_L >= 3]
    tiers = ([], [], [])
    for count, Ic in enumerate(combinations(others, d - k)):
        if count >= EXHAUSTIVE_LIMIT:
            break
        I = [i for i in others if i not in Ic]
        choice = weights_for_I(d, k, I, pivot)
        if not resonance_check(arr, choice.alpha)[0]:
            continue
        Ics = set(Ic)
        if all(t & Ics for t in triples):
            tiers[0].append(choice)
        elif normal_crossing_check(arr, I, k, pivot):
            tiers[1].append(choice)
        else:
            tiers[2].append(choice)
    return tiers[0] + tiers[1] + tiers[2]
