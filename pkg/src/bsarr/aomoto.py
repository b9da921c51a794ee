"""The Aomoto complex of a deconed arrangement.

After sending one hyperplane to infinity the remaining forms g_i cut out an
affine arrangement in Q^{n-1}.  The algebra generated by the logarithmic
forms omega_i = dg_i/g_i is the affine Orlik-Solomon algebra: the exterior
algebra on the omega_i modulo

* omega_S for every minimal S whose affine intersection is empty, and
* the boundary of omega_C for every circuit C with nonempty intersection.

Each graded piece gets the broken-circuit basis (input order) and a
straightening map computed once by exact row reduction.  A weight vector
alpha then acts through omega = sum alpha_i omega_i, and cohomology
dimensions are exact ranks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from bsarr.arrangement import (
    AffineArrangement,
    Arrangement,
    decone,
    dense_edges,
    euler_complement,
    max_multiplicity,
    point_multiplicities,
)
from bsarr.errors import error
from bsarr.linalg import Subspace, rank, rref_rows, to_fraction

__all__ = [
    "WeightVector",
    "AomotoAlgebra",
    "CohomologyReport",
    "build_os_algebra",
    "betti_closed_form_n3",
    "resonance_check",
    "aomoto_cohomology",
    "milnor_eigenspace_dims",
    "shift_candidates",
]

DEFAULT_SHIFT_BUDGET = 10_000


@dataclass(frozen=True)
class WeightVector:
    """One rational weight per hyperplane; weights sum to zero."""

    alpha: tuple

    def __post_init__(self):
        a = tuple(to_fraction(x) for x in self.alpha)
        if sum(a) != 0:
            raise ValueError(f"weights must sum to 0, got {sum(a)}")
        object.__setattr__(self, "alpha", a)

    @classmethod
    def completing(cls, partial: Sequence, pivot: int, d: int) -> "WeightVector":
        """Weights for every hyperplane but ``pivot``; the pivot gets minus their sum."""
        vals = [to_fraction(x) for x in partial]
        if len(vals) != d - 1:
            raise ValueError(f"expected {d - 1} weights, got {len(vals)}")
        vals.insert(pivot, -sum(vals))
        return cls(tuple(vals))

    def __len__(self):
        return len(self.alpha)

    def __getitem__(self, i):
        return self.alpha[i]

    def to_json(self):
        return [str(x) for x in self.alpha]


def _sign_insert(t: int, mono: tuple) -> tuple[int, tuple]:
    """omega_t ^ omega_mono = sign * omega_(sorted)."""
    if t in mono:
        return 0, ()
    pos = sum(1 for x in mono if x < t)
    out = mono[:pos] + (t,) + mono[pos:]
    return (-1 if pos % 2 else 1), out


def _wedge(a: tuple, b: tuple) -> tuple[int, tuple]:
    """omega_a ^ omega_b for sorted disjoint-or-not index tuples."""
    if set(a) & set(b):
        return 0, ()
    return _perm_sign(a + b), tuple(sorted(a + b))


class _ConeMatroid:
    """Rank oracle on the central arrangement, used for affine combinatorics."""

    def __init__(self, arr: Arrangement, pivot: int, indices: tuple):
        self.arr = arr
        self.pivot = pivot
        self.indices = indices
        self._rank = {}

    def rank(self, orig: tuple) -> int:
        key = tuple(sorted(orig))
        r = self._rank.get(key)
        if r is None:
            r = Subspace.span([self.arr.forms[i] for i in key], self.arr.n).dim if key else 0
            self._rank[key] = r
        return r

    def meets(self, local: tuple) -> bool:
        """Affine intersection of the local lines is nonempty."""
        if not local:
            return True
        orig = tuple(self.indices[t] for t in local)
        return self.rank(orig + (self.pivot,)) == self.rank(orig) + 1

    def independent(self, local: tuple) -> bool:
        return self.rank(tuple(self.indices[t] for t in local)) == len(local)


@dataclass
class AomotoAlgebra:
    """Graded affine Orlik-Solomon algebra with straightening and products.

    Local generator ``t`` is ``omega_t`` for the original hyperplane
    ``affine.indices[t]``.  ``basis[p]`` lists the broken-circuit-free
    monomials of degree p; ``mult[p][t]`` is the matrix of omega_t ^ - from
    degree p to p + 1 (rows indexed by ``basis[p]``).
    """

    affine: AffineArrangement
    basis: list
    index: list
    straight: list = field(repr=False)
    mult: list = field(repr=False)
    circuits: tuple = field(repr=False)
    empty_sets: tuple = field(repr=False)

    @property
    def arrangement(self) -> Arrangement:
        return self.affine.source

    @property
    def pivot(self) -> int:
        return self.affine.pivot

    @property
    def top(self) -> int:
        return len(self.basis) - 1

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    @property
    def ngens(self) -> int:
        return len(self.affine.indices)

    def local(self, i: int) -> int:
        """Local generator index of original hyperplane ``i``."""
        return self.affine.indices.index(i)

    def straighten(self, mono: Sequence[int]) -> list:
        """Coordinates of omega_mono (local indices, any order) in the basis."""
        mono = tuple(mono)
        p = len(mono)
        if len(set(mono)) < p:
            return [Fraction(0)] * (len(self.basis[p]) if p <= self.top else 0)
        if p > self.top:
            return []
        srt = tuple(sorted(mono))
        sign = _perm_sign(mono)
        vec = self.straight[p][srt]
        return [sign * x for x in vec]

    def wedge_vec(self, t: int, vec: Sequence, p: int) -> list:
        """omega_t ^ v for v given in degree-p coordinates."""
        if p + 1 > self.top:
            return []
        out = [Fraction(0)] * len(self.basis[p + 1])
        m = self.mult[p][t]
        for coeff, row in zip(vec, m):
            if coeff:
                for j, x in enumerate(row):
                    if x:
                        out[j] += coeff * x
        return out

    def differential(self, weights: Sequence, p: int) -> list:
        """Rows of omega ^ - : A^p -> A^{p+1}, omega = sum_t weights[t] omega_t."""
        nrow = len(self.basis[p])
        ncol = len(self.basis[p + 1]) if p + 1 <= self.top else 0
        rows = [[Fraction(0)] * ncol for _ in range(nrow)]
        for t, a in enumerate(weights):
            if not a:
                continue
            for r, mrow in zip(rows, self.mult[p][t]):
                for j, x in enumerate(mrow):
                    if x:
                        r[j] += a * x
        return rows

    def local_weights(self, w: "WeightVector") -> list:
        return [w.alpha[i] for i in self.affine.indices]


def _perm_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _boundary(mono: tuple) -> dict:
    return {mono[:j] + mono[j + 1:]: (-1) ** j for j in range(len(mono))}


@lru_cache(maxsize=64)
def _build(arr: Arrangement, pivot: int) -> AomotoAlgebra:
    aff = decone(arr, pivot)
    m = len(aff.indices)
    top = arr.n - 1
    mat = _ConeMatroid(arr, pivot, aff.indices)

    empty_sets = []
    circuits = []
    for size in range(1, top + 2):
        for s in combinations(range(m), size):
            if not mat.meets(s):
                if all(mat.meets(s[:j] + s[j + 1:]) for j in range(size)):
                    empty_sets.append(s)
            elif not mat.independent(s):
                if all(mat.independent(s[:j] + s[j + 1:]) for j in range(size)):
                    circuits.append(s)
    broken = {c[1:] for c in circuits}

    def is_nbc(s):
        if not (mat.meets(s) and mat.independent(s)):
            return False
        ss = set(s)
        return not any(ss.issuperset(b) for b in broken)

    # generators of the ideal, as sparse dicts, by degree
    gens = {}
    for s in empty_sets:
        gens.setdefault(len(s), []).append({s: 1})
    for c in circuits:
        gens.setdefault(len(c) - 1, []).append(_boundary(c))

    basis, index, straight = [], [], []
    for p in range(top + 1):
        monos = list(combinations(range(m), p))
        nbc = [s for s in monos if is_nbc(s)]
        non = [s for s in monos if not is_nbc(s)]
        order = non + nbc
        col = {s: j for j, s in enumerate(order)}
        rows = []
        for q, glist in gens.items():
            if q > p:
                continue
            for tmono in combinations(range(m), p - q):
                for g in glist:
                    row = [0] * len(order)
                    nz = False
                    for gm, gc in g.items():
                        sign, prod = _wedge(tmono, gm)
                        if sign:
                            row[col[prod]] += sign * gc
                            nz = True
                    if nz and any(row):
                        rows.append(row)
        red, pivots = rref_rows(rows, len(order)) if rows else ((), ())
        if list(pivots) != list(range(len(non))):
            raise AssertionError("broken-circuit monomials do not form a basis in degree %d" % p)
        nb = len(non)
        table = {}
        for j, s in enumerate(nbc):
            v = [Fraction(0)] * len(nbc)
            v[j] = Fraction(1)
            table[s] = v
        for s, r in zip(non, red):
            table[s] = [-x for x in r[nb:]]
        basis.append(nbc)
        index.append({s: j for j, s in enumerate(nbc)})
        straight.append(table)

    mult = []
    for p in range(top):
        per_t = []
        for t in range(m):
            mrows = []
            for b in basis[p]:
                sign, prod = _sign_insert(t, b)
                if not sign:
                    mrows.append([Fraction(0)] * len(basis[p + 1]))
                else:
                    mrows.append([sign * x for x in straight[p + 1][prod]])
            per_t.append(mrows)
        mult.append(per_t)

    return AomotoAlgebra(aff, basis, index, straight, mult, tuple(circuits), tuple(empty_sets))


def build_os_algebra(deconed, pivot: int | None = None) -> AomotoAlgebra:
    """Aomoto algebra of a deconed arrangement.

    Accepts an :class:`AffineArrangement` or an :class:`Arrangement` plus an
    optional pivot (default: last hyperplane).
    """
    if isinstance(deconed, AffineArrangement):
        return _build(deconed.source, deconed.pivot)
    arr = deconed
    return _build(arr, arr.d - 1 if pivot is None else pivot)


def betti_closed_form_n3(arr: Arrangement, pivot: int | None = None) -> tuple[int, int, int]:
    """(1, d - 1, nu'_2 + 2 nu'_3) for line arrangements with points of multiplicity <= 3."""
    if arr.n != 3:
        raise error("WRONG_DIMENSION", f"closed form needs n = 3, got n = {arr.n}")
    if max_multiplicity(arr) > 3:
        raise error("MULTIPLICITY_TOO_HIGH", "closed form needs point multiplicities <= 3")
    _, nu_aff = point_multiplicities(arr, pivot)
    return 1, arr.d - 1, nu_aff.get(2, 0) + 2 * nu_aff.get(3, 0)


def resonance_check(arr: Arrangement, w: WeightVector) -> tuple[bool, list]:
    """Check alpha_L is not a positive integer on every dense edge L.

    Returns ``(ok, violations)`` with violations as (edge, alpha_L) pairs.
    """
    if len(w) != arr.d:
        raise error("DIMENSION_MISMATCH", f"{len(w)} weights for {arr.d} hyperplanes")
    bad = []
    for e in dense_edges(arr):
        a = sum((w.alpha[i] for i in e.containing), Fraction(0))
        if a > 0 and a.denominator == 1:
            bad.append((e, a))
    return not bad, bad


@dataclass(frozen=True)
class CohomologyReport:
    weight: WeightVector
    dims: tuple
    resonance_ok: bool
    algebra_dims: tuple
    violations: tuple = ()
    shift: tuple | None = None

    @property
    def euler(self) -> int:
        return sum((-1) ** p * x for p, x in enumerate(self.dims))

    def to_json(self) -> dict:
        out = {
            "weights": self.weight.to_json(),
            "dims": list(self.dims),
            "algebra_dims": list(self.algebra_dims),
            "resonance_ok": self.resonance_ok,
            "violations": [
                {"hyperplanes": [i + 1 for i in e.containing], "alpha_L": str(a)}
                for e, a in self.violations
            ],
        }
        if self.shift is not None:
            out["shift"] = list(self.shift)
        return out


def cohomology_dims(alg: AomotoAlgebra, w: WeightVector) -> tuple:
    lw = alg.local_weights(w)
    ranks = [0]
    for p in range(alg.top):
        rows = alg.differential(lw, p)
        ranks.append(rank(rows) if rows and rows[0] else 0)
    ranks.append(0)
    return tuple(len(alg.basis[p]) - ranks[p + 1] - ranks[p] for p in range(alg.top + 1))


def aomoto_cohomology(arr: Arrangement, w: WeightVector, pivot: int | None = None) -> CohomologyReport:
    """Cohomology of (A, omega ^ -) for weights ``w``, flagged with resonance status."""
    if len(w) != arr.d:
        raise error("DIMENSION_MISMATCH", f"{len(w)} weights for {arr.d} hyperplanes")
    alg = build_os_algebra(arr, pivot)
    ok, bad = resonance_check(arr, w)
    dims = cohomology_dims(alg, w)
    return CohomologyReport(w, dims, ok, tuple(alg.dims), tuple(bad))


def shift_candidates(d: int, k: int):
    """Integer shifts s with sum k: 0/1 patterns first, then +-1 moves on them."""
    seen = set()
    bases = []
    for ones in combinations(range(d), k):
        s = [0] * d
        for i in ones:
            s[i] = 1
        s = tuple(s)
        seen.add(s)
        bases.append(s)
        yield s
    for s in bases:
        for i in range(d):
            for j in range(d):
                if i == j:
                    continue
                t = list(s)
                t[i] += 1
                t[j] -= 1
                t = tuple(t)
                if t not in seen:
                    seen.add(t)
                    yield t


def milnor_eigenspace_dims(arr: Arrangement, k: int, pivot: int | None = None,
                           budget: int = DEFAULT_SHIFT_BUDGET) -> CohomologyReport:
    """Dimensions of the exp(-2 pi i k/d) eigenspaces of monodromy on H^j(F_0)."""
    d = arr.d
    if not 1 <= k <= d:
        raise error("BAD_INDEX", f"k must lie in [1, {d}], got {k}")
    if euler_complement(arr) == 0:
        raise error("DECOMPOSABLE_INPUT", "the complement has Euler characteristic 0")
    base = Fraction(-k, d)
    for count, s in enumerate(shift_candidates(d, k)):
        if count >= budget:
            break
        w = WeightVector(tuple(base + x for x in s))
        ok, _ = resonance_check(arr, w)
        if not ok:
            continue
        report = aomoto_cohomology(arr, w, pivot)
        report = CohomologyReport(w, report.dims, True, report.algebra_dims, (), s)
        _assert_concentration(arr, k, report)
        return report
    raise error("NO_ADMISSIBLE_SHIFT",
                f"no non-resonant shift for k = {k} within {budget} candidates", k=k, budget=budget)


def _assert_concentration(arr: Arrangement, k: int, report: CohomologyReport):
    from bsarr.bfunction import local_roots  # deferred: bfunction imports this module

    lr = local_roots(arr)
    if not lr.exact:
        return
    q = Fraction(k, arr.d)
    if any((q - r).denominator == 1 for r in lr.Rprime_f):
        return
    expect = [0] * (arr.n - 1) + [abs(euler_complement(arr))]
    if list(report.dims) != expect:
        raise AssertionError(f"eigenspace for k = {k} not concentrated in top degree: {report.dims}")
