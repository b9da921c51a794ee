"""Central hyperplane arrangements and their intersection lattices.

Hyperplanes are indexed from 0 in input order.  Edges (intersections of
hyperplanes) are handled through their matroid flats: an edge is identified
with the set of hyperplanes containing it, so the ambient space is the empty
flat and the common intersection of all hyperplanes is the top flat.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from bsarr._clique import max_clique
from bsarr.errors import error
from bsarr.linalg import Subspace, rref_rows, to_fraction

__all__ = [
    "Arrangement",
    "Edge",
    "IntersectionLattice",
    "UnityRoot",
    "AffineArrangement",
    "parse_arrangement",
    "intersection_lattice",
    "euler_complement",
    "is_indecomposable",
    "is_essential",
    "is_generic",
    "essentialize",
    "dense_edges",
    "de_lambda",
    "m_of_lambda",
    "decone",
    "point_multiplicities",
    "slice_at_edge",
    "betti_numbers",
    "characteristic_polynomial",
    "poincare_polynomial",
    "max_multiplicity",
]


@dataclass(frozen=True)
class Arrangement:
    """``d`` linear forms on Q^n defining a reduced central arrangement."""

    n: int
    forms: tuple
    name: str | None = field(default=None, compare=False)

    @property
    def d(self) -> int:
        return len(self.forms)

    def __len__(self):
        return len(self.forms)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Arrangement{label} n={self.n} d={self.d}>"

    def form_str(self, i: int, variables: str | None = None) -> str:
        names = variables or ("xyz" if self.n <= 3 else None)
        names = list(names) if names else [f"x{j}" for j in range(self.n)]
        return _linear_str(self.forms[i], names)

    def to_json(self) -> dict:
        out = {"n": self.n, "forms": [[str(x) for x in f] for f in self.forms]}
        if self.name:
            out["name"] = self.name
        return out


def _linear_str(coeffs, names, const=None) -> str:
    terms = []
    for c, v in zip(coeffs, names):
        if c:
            terms.append((c, v))
    if const:
        terms.append((const, ""))
    if not terms:
        return "0"
    out = ""
    for i, (c, v) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = v if (a == 1 and v) else (f"{a}{v}" if v else f"{a}")
        if "/" in str(a) and v:
            body = f"({a}){v}"
        out += (("-" if sign == "-" else "") if i == 0 else f" {sign} ") + body
    return out


def _projective_key(row) -> tuple:
    lead = next(x for x in row if x)
    return tuple(x / lead for x in row)


def parse_arrangement(n: int, coeff_rows: Iterable[Sequence], name: str | None = None) -> Arrangement:
    """Validate coefficient rows and build an :class:`Arrangement`."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise error("WRONG_DIMENSION", f"ambient dimension must be a positive integer, got {n!r}")
    rows = []
    seen = {}
    for i, raw in enumerate(coeff_rows):
        raw = list(raw)
        if len(raw) != n:
            raise error("DIMENSION_MISMATCH",
                        f"form {i} has {len(raw)} coefficients, expected {n}", index=i)
        row = tuple(to_fraction(x) for x in raw)
        if not any(row):
            raise error("ZERO_FORM", f"form {i} is identically zero", index=i)
        key = _projective_key(row)
        if key in seen:
            raise error("DUPLICATE_HYPERPLANE",
                        f"form {i} is proportional to form {seen[key]}",
                        index=i, duplicate_of=seen[key])
        seen[key] = i
        rows.append(row)
    if not rows:
        raise error("ZERO_FORM", "an arrangement needs at least one hyperplane")
    return Arrangement(n, tuple(rows), name)


@dataclass(frozen=True)
class UnityRoot:
    """lambda = exp(-2 pi i * residue) with residue a reduced fraction in (0, 1]."""

    residue: Fraction

    def __post_init__(self):
        r = Fraction(self.residue)
        if not 0 < r <= 1:
            raise ValueError("residue must lie in (0, 1]")
        object.__setattr__(self, "residue", r)

    @classmethod
    def from_root(cls, alpha) -> "UnityRoot":
        """lambda = exp(-2 pi i alpha)."""
        r = to_fraction(alpha) % 1
        return cls(r if r else Fraction(1))

    @classmethod
    def from_k(cls, k: int, d: int) -> "UnityRoot":
        return cls.from_root(Fraction(k, d))

    @property
    def order(self) -> int:
        return self.residue.denominator

    @property
    def is_one(self) -> bool:
        return self.residue == 1

    def power_is_one(self, m: int) -> bool:
        return m % self.order == 0

    def __str__(self):
        return f"e(-{self.residue})"


@dataclass(frozen=True)
class Edge:
    """An intersection of hyperplanes, keyed by the hyperplanes containing it."""

    containing: tuple
    rank: int
    subspace: Subspace = field(repr=False)
    mobius: int
    dense: bool

    @property
    def m_L(self) -> int:
        return len(self.containing)

    @property
    def codim(self) -> int:
        return self.rank

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def contains_hyperplane(self, i: int) -> bool:
        return i in self.containing

    def to_json(self, one_based: bool = True) -> dict:
        off = 1 if one_based else 0
        return {
            "hyperplanes": [i + off for i in self.containing],
            "codim": self.rank,
            "m_L": self.m_L,
            "mobius": self.mobius,
            "dense": self.dense,
        }


class IntersectionLattice:
    """Lattice of flats, ordered by reverse inclusion of edges.

    ``edges`` lists every edge sorted by (codimension, sorted index tuple);
    the first entry is the ambient space.
    """

    def __init__(self, arr: Arrangement, edges: Sequence[Edge]):
        self.arrangement = arr
        self.edges = tuple(edges)
        self._by_key = {e.containing: e for e in self.edges}
        self.rank = max(e.rank for e in self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)

    @property
    def ambient(self) -> Edge:
        return self.edges[0]

    @property
    def top(self) -> Edge:
        return self.edges[-1]

    def of_rank(self, r: int) -> list[Edge]:
        return [e for e in self.edges if e.rank == r]

    @property
    def by_rank(self) -> list[list[Edge]]:
        return [self.of_rank(r) for r in range(self.rank + 1)]

    def closure(self, indices: Iterable[int]) -> Edge:
        return self._by_key[_closure(self.arrangement, tuple(sorted(set(indices))))]

    def get(self, containing) -> Edge:
        return self._by_key[tuple(sorted(containing))]

    def meet(self, a: Edge, b: Edge) -> Edge:
        """The edge a ∩ b."""
        return self.closure(a.containing + b.containing)

    @staticmethod
    def leq(a: Edge, b: Edge) -> bool:
        """True when edge ``b`` is contained in edge ``a`` (a below b in the lattice)."""
        return set(a.containing) <= set(b.containing)

    @property
    def mobius(self) -> dict:
        return {e.containing: e.mobius for e in self.edges}

    def dense_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.dense]


@lru_cache(maxsize=4096)
def _span(arr: Arrangement, indices: tuple) -> Subspace:
    return Subspace.span([arr.forms[i] for i in indices], arr.n)


def _closure(arr: Arrangement, indices: tuple) -> tuple:
    if not indices:
        return ()
    sp = _span(arr, indices)
    return tuple(j for j in range(arr.d) if j in indices or sp.contains(arr.forms[j]))


@lru_cache(maxsize=256)
def intersection_lattice(arr: Arrangement) -> IntersectionLattice:
    """Enumerate all flats, their Möbius values and dense flags."""
    levels = [[()]]
    rank_of = {(): 0}
    while True:
        nxt = set()
        for flat in levels[-1]:
            fs = set(flat)
            for j in range(arr.d):
                if j not in fs:
                    nxt.add(_closure(arr, tuple(sorted(fs | {j}))))
        if not nxt:
            break
        r = len(levels)
        level = sorted(nxt)
        for f in level:
            rank_of[f] = r
        levels.append(level)

    flats = [f for level in levels for f in level]
    mu = {(): 1}
    for f in flats[1:]:
        fs = set(f)
        mu[f] = -sum(mu[g] for g in flats if rank_of[g] < rank_of[f] and fs.issuperset(g))

    edges = []
    for f in flats:
        r = rank_of[f]
        if f:
            fs = set(f)
            chi = sum(mu[g] * (r - rank_of[g]) for g in flats
                      if rank_of[g] < r and fs.issuperset(g))
            dense = chi != 0
            sub = _span(arr, f).annihilator()
        else:
            dense = False
            sub = Subspace.full(arr.n)
        edges.append(Edge(f, r, sub, mu[f], dense))
    return IntersectionLattice(arr, edges)


def characteristic_polynomial(arr: Arrangement) -> list[int]:
    """Coefficients c_j of t^j in sum over flats of mu(F) t^(n - rank F)."""
    coeffs = [0] * (arr.n + 1)
    for e in intersection_lattice(arr):
        coeffs[arr.n - e.rank] += e.mobius
    return coeffs


def poincare_polynomial(arr: Arrangement) -> list[int]:
    """Coefficients of sum |mu(F)| t^rank(F): the Betti numbers of the affine complement."""
    coeffs = [0] * (arr.n + 1)
    for e in intersection_lattice(arr):
        coeffs[e.rank] += abs(e.mobius)
    return coeffs


def betti_numbers(arr: Arrangement) -> list[int]:
    """Betti numbers b_0..b_{n-1} of the projective complement U."""
    pi = poincare_polynomial(arr)
    # divide by (1 + t)
    out = []
    carry = 0
    for c in pi[:-1]:
        carry = c - carry
        out.append(carry)
    return out


def euler_complement(arr: Arrangement) -> int:
    """Euler characteristic of U = P^{n-1} minus the projectivized arrangement."""
    return sum(e.mobius * (arr.n - e.rank) for e in intersection_lattice(arr))


def is_indecomposable(arr: Arrangement) -> bool:
    return euler_complement(arr) != 0


def is_essential(arr: Arrangement) -> bool:
    return intersection_lattice(arr).rank == arr.n


def is_generic(arr: Arrangement) -> bool:
    """Every subset of at most n forms is linearly independent."""
    lat = intersection_lattice(arr)
    if lat.rank < min(arr.n, arr.d):
        return False
    return all(e.m_L == e.rank for e in lat if e.rank < arr.n)


def max_multiplicity(arr: Arrangement) -> int:
    """Largest m_L over codimension-2 edges (1 when there are none)."""
    return max((e.m_L for e in intersection_lattice(arr).of_rank(2)), default=1)


def dense_edges(arr: Arrangement) -> list[Edge]:
    return intersection_lattice(arr).dense_edges()


def de_lambda(arr: Arrangement, lam: UnityRoot) -> list[Edge]:
    return [e for e in dense_edges(arr) if lam.power_is_one(e.m_L)]


def _strongly_adjacent(lat: IntersectionLattice, a: Edge, b: Edge) -> bool:
    if lat.leq(a, b) or lat.leq(b, a):
        return True
    return not lat.meet(a, b).dense


def strong_adjacency_graph(arr: Arrangement, lam: UnityRoot):
    """(vertices, adjacency sets) of the strong-adjacency graph on DE(D, lambda)."""
    lat = intersection_lattice(arr)
    verts = de_lambda(arr, lam)
    adj = [set() for _ in verts]
    for i, j in combinations(range(len(verts)), 2):
        if _strongly_adjacent(lat, verts[i], verts[j]):
            adj[i].add(j)
            adj[j].add(i)
    return verts, adj


def m_of_lambda(arr: Arrangement, lam: UnityRoot, witness: bool = False):
    """Largest set of pairwise strongly adjacent edges in DE(D, lambda)."""
    verts, adj = strong_adjacency_graph(arr, lam)
    best = max_clique(len(verts), adj)
    if witness:
        return len(best), [verts[i] for i in best]
    return len(best)


@dataclass(frozen=True)
class AffineArrangement:
    """The complement of the pivot hyperplane, written in affine coordinates.

    ``forms[t]`` is ``(linear, constant)`` so that
    g_t(y) = linear . y + constant on Q^{n-1}; ``indices[t]`` is the
    original index of that hyperplane.
    """

    source: Arrangement
    pivot: int
    indices: tuple
    forms: tuple

    @property
    def dim(self) -> int:
        return self.source.n - 1

    def __len__(self):
        return len(self.forms)

    def form_str(self, t: int) -> str:
        lin, const = self.forms[t]
        names = list("xy") if self.dim == 2 else (["x"] if self.dim == 1 else [f"y{j}" for j in range(self.dim)])
        return _linear_str(lin, names, const)

    def local_index(self, i: int) -> int:
        return self.indices.index(i)


def _solve_right(m_rows, n):
    """Inverse of an invertible n x n rational matrix."""
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m_rows)]
    rows, pivots = rref_rows(aug, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ValueError("matrix is singular")
    return [list(r[n:]) for r in rows]


def decone(arr: Arrangement, pivot: int | None = None) -> AffineArrangement:
    """Send hyperplane ``pivot`` (default: the last) to infinity."""
    if pivot is None:
        pivot = arr.d - 1
    if not 0 <= pivot < arr.d:
        raise error("BAD_INDEX", f"pivot {pivot} out of range for d = {arr.d}")
    n = arr.n
    p = arr.forms[pivot]
    c = max(j for j in range(n) if p[j])
    basis = [[Fraction(int(i == j)) for i in range(n)] for j in range(n) if j != c]
    m = basis + [list(p)]
    minv = _solve_right(m, n)
    out = []
    idx = []
    for i, f in enumerate(arr.forms):
        if i == pivot:
            continue
        w = [sum((f[a] * minv[a][b] for a in range(n)), Fraction(0)) for b in range(n)]
        out.append((tuple(w[:-1]), w[-1]))
        idx.append(i)
    return AffineArrangement(arr, pivot, tuple(idx), tuple(out))


def point_multiplicities(arr: Arrangement, pivot: int | None = None) -> tuple[dict, dict]:
    """(nu, nu') for a line arrangement in P^2: point counts by multiplicity,
    overall and off the pivot line."""
    if arr.n != 3:
        raise error("WRONG_DIMENSION", f"point multiplicities need n = 3, got n = {arr.n}")
    if pivot is None:
        pivot = arr.d - 1
    nu, nu_aff = {}, {}
    for e in intersection_lattice(arr).of_rank(2):
        nu[e.m_L] = nu.get(e.m_L, 0) + 1
        if pivot not in e.containing:
            nu_aff[e.m_L] = nu_aff.get(e.m_L, 0) + 1
    return nu, nu_aff


def slice_at_edge(arr: Arrangement, edge: Edge) -> Arrangement:
    """The hyperplanes through ``edge`` restricted to a transversal slice."""
    if not edge.containing:
        raise ValueError("cannot slice at the ambient space")
    rows, pivots = rref_rows([arr.forms[i] for i in edge.containing], arr.n)
    forms = [tuple(arr.forms[i][c] for c in pivots) for i in edge.containing]
    label = f"{arr.name}@{list(edge.containing)}" if arr.name else None
    return Arrangement(len(pivots), tuple(forms), label)


def essentialize(arr: Arrangement) -> Arrangement:
    """Quotient by the common intersection; identity on essential input."""
    lat = intersection_lattice(arr)
    if lat.rank == arr.n:
        return arr
    out = slice_at_edge(arr, lat.top)
    return Arrangement(out.n, out.forms, arr.name)

