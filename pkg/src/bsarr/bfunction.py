"""Certified roots and multiplicities of b-functions of arrangements.

Every candidate root gets a :class:`RootCertificate` with status IN, OUT or
UNKNOWN, multiplicity bounds, and the list of criteria that fired.  Criteria
are one-directional implications from the theory of arrangement b-functions;
the engine never guesses and treats contradictory evidence as a bug.

Roots are the roots of b_f(-s), so they are positive rationals.  A
:class:`Certifier` holds the per-arrangement caches (lattice, local roots,
eigenspace dimensions, admissible weight choices, V(I) results).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, gcd

from bsarr.aomoto import DEFAULT_SHIFT_BUDGET, milnor_eigenspace_dims
from bsarr.arrangement import (
    Arrangement,
    UnityRoot,
    dense_edges,
    essentialize,
    euler_complement,
    intersection_lattice,
    is_generic,
    max_multiplicity,
    m_of_lambda,
    point_multiplicities,
    slice_at_edge,
)
from bsarr.errors import BsarrError, error
from bsarr.linalg import to_fraction
from bsarr.vsubspace import (
    compute_VI,
    find_admissible_I,
    full_image_check,
    normal_crossing_check,
)

__all__ = [
    "IN",
    "OUT",
    "UNKNOWN",
    "LocalRootData",
    "Evidence",
    "RootCertificate",
    "BFunctionResult",
    "Certifier",
    "local_roots",
    "candidate_roots",
    "multiplicity_bound",
    "generic_bfunction",
    "root_criteria",
    "weight_jump_condition",
    "multiplicity_two_certificate",
    "assemble_bfunction",
    "spectrum_and_jumping",
    "certify_root",
    "format_factorization",
]

IN, OUT, UNKNOWN = "IN", "OUT", "UNKNOWN"

# criterion id -> citation, in the vocabulary of arrangement b-function theory
CITATIONS = {
    "window": "roots lie in [alpha_f, 2 - 1/d)",
    "denominator": "roots lie in the union of Z/m_L over dense edges L",
    "minimal-root": "alpha_f = min(n/d, alpha'_f) is the smallest root",
    "local-root": "local b-functions off the origin divide b_f",
    "origin-eigenvalue": "a root outside R'_f has exp(-2 pi i alpha)^d = 1",
    "top-roots": "1 - 1/d and 1 are roots; 2 - 1/d and 2 are not",
    "low-root": "below alpha'_f, k/d is a root iff k >= n",
    "spectrum-excess": "C(k-1, n-1) < dim H^{n-1}(F_0)_lambda gives root k/d + 1",
    "spectrum-match": "C(k-1, n-1) = |chi(U)| below alpha'_f excludes k/d + 1",
    "vi-nonzero": "V(I) != 0 gives root k/d",
    "vi-full": "V(I) = H^{n-1} excludes k/d + 1 outside R'_f",
    "vi-partial": "V(I) != H^{n-1} with dim V(I)' = C(k-1, n-1) gives root k/d + 1",
    "unipotent-multiplicity": "the root 1 has multiplicity n",
    "dense-clique-bound": "multiplicity <= min(n, m(lambda))",
    "coprime-simplicity": "pairwise coprime dense multiplicities force simple non-integral roots",
    "weight-jump": "the weight-jump inequality with alpha - 1 not a root gives multiplicity 2",
    "nnc-weight-jump": "the weight-jump inequality at a local root in (0, 1) gives multiplicity 2",
    "line-classification": "line arrangements with triple points and d <= 7 have J = {3, ..., r}",
    "generic-formula": "generic arrangements: (s+1)^(n-1) prod_{k=n}^{2d-2} (s + k/d)",
}


@dataclass(frozen=True)
class LocalRootData:
    Rprime_f: frozenset
    alpha_prime_f: Fraction | None
    alpha_f: Fraction
    exact: bool

    def to_json(self) -> dict:
        return {
            "Rprime_f": [str(x) for x in sorted(self.Rprime_f)],
            "alpha_prime_f": None if self.alpha_prime_f is None else str(self.alpha_prime_f),
            "alpha_f": str(self.alpha_f),
            "exact": self.exact,
        }


@dataclass
class Evidence:
    criterion: str
    status: str | None = None
    inputs: dict = field(default_factory=dict)
    mult: tuple | None = None

    @property
    def citation(self) -> str:
        return CITATIONS[self.criterion]

    def to_json(self) -> dict:
        out = {"criterion": self.criterion, "citation": self.citation, "inputs": _jsonable(self.inputs)}
        if self.status:
            out["status"] = self.status
        if self.mult:
            out["multiplicity"] = list(self.mult)
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    return x


@dataclass
class RootCertificate:
    root: Fraction
    status: str
    mult_lower: int
    mult_upper: int
    evidence: list

    @property
    def exact_multiplicity(self) -> int | None:
        if self.status == OUT:
            return 0
        if self.status == IN and self.mult_lower == self.mult_upper:
            return self.mult_lower
        return None

    def to_json(self) -> dict:
        return {
            "root": str(self.root),
            "status": self.status,
            "mult_lower": self.mult_lower,
            "mult_upper": self.mult_upper,
            "evidence": [e.to_json() for e in self.evidence],
        }


def format_factorization(mults: dict) -> str:
    """b_f(s) as a product of (s + alpha)^m, roots ascending."""
    parts = []
    for r in sorted(mults):
        m = mults[r]
        if m <= 0:
            continue
        base = f"(s+{r})"
        parts.append(base if m == 1 else f"{base}^{m}")
    return "".join(parts) if parts else "1"


@dataclass
class BFunctionResult:
    complete: bool
    branch: str
    factorization: dict | None
    divisor: dict
    multiple: dict
    certificates: list
    local: LocalRootData
    arrangement: Arrangement
    essentialized: bool = False
    conjecture: dict | None = None
    weight_jump_survey: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def roots(self) -> list:
        return sorted((self.factorization or self.divisor).keys())

    def certificate(self, root) -> RootCertificate | None:
        root = to_fraction(root)
        return next((c for c in self.certificates if c.root == root), None)

    def to_json(self) -> dict:
        def poly(m):
            return {"roots": [{"root": str(r), "multiplicity": m[r]} for r in sorted(m)],
                    "text": format_factorization(m)}

        out = {
            "complete": self.complete,
            "branch": self.branch,
            "essentialized": self.essentialized,
            "local": self.local.to_json(),
            "certificates": [c.to_json() for c in sorted(self.certificates, key=lambda c: c.root)],
            "divisor": poly(self.divisor),
            "multiple": poly(self.multiple),
            "factorization": poly(self.factorization) if self.factorization is not None else None,
            "conjecture": self.conjecture,
            "weight_jump_survey": self.weight_jump_survey,
            "notes": list(self.notes),
        }
        return out


def _slice_roots(m: int, r: int) -> set:
    """Roots for m hyperplanes in general position spanning C^r."""
    if r <= 1 or m <= r:
        return {Fraction(1)}
    return {Fraction(k, m) for k in range(r, 2 * m - 1)} | {Fraction(1)}


@lru_cache(maxsize=128)
def _local_roots(arr: Arrangement) -> LocalRootData:
    ess = essentialize(arr)
    exact = ess is arr or ess == arr
    n, d = ess.n, ess.d
    roots = set()
    if n >= 2:
        for e in dense_edges(ess):
            if e.rank >= n:
                continue
            if e.rank <= 2:
                roots |= _slice_roots(e.m_L, e.rank)
            else:
                sl = slice_at_edge(ess, e)
                if not is_generic(sl):
                    exact = False
                roots |= _slice_roots(e.m_L, e.rank)
    aprime = min(roots) if roots else None
    alpha_f = Fraction(n, d) if aprime is None else min(Fraction(n, d), aprime)
    return LocalRootData(frozenset(roots), aprime, alpha_f, exact)


def local_roots(arr: Arrangement) -> LocalRootData:
    """R'_f, alpha'_f and alpha_f; exact for n <= 3 and for generic slices."""
    return _local_roots(arr)


def candidate_roots(arr: Arrangement) -> list:
    """All j/m_L (L dense) in the window [alpha_f, 2 - 1/d), sorted."""
    ess = essentialize(arr)
    lr = local_roots(ess)
    hi = 2 - Fraction(1, ess.d)
    out = set()
    for e in dense_edges(ess):
        m = e.m_L
        j = -(-lr.alpha_f.numerator * m // lr.alpha_f.denominator)  # ceil(alpha_f * m)
        while Fraction(j, m) < hi:
            out.add(Fraction(j, m))
            j += 1
    return sorted(out)


def multiplicity_bound(arr: Arrangement, root) -> int:
    root = to_fraction(root)
    return min(arr.n, m_of_lambda(arr, UnityRoot.from_root(root)))


def generic_bfunction(n: int, d: int, arr: Arrangement | None = None) -> BFunctionResult:
    """Closed-form b-function of a generic arrangement of d hyperplanes in C^n."""
    if arr is not None:
        if (arr.n, arr.d) != (n, d):
            raise error("DIMENSION_MISMATCH", "n, d do not match the arrangement")
        if not is_generic(arr):
            raise error("NOT_GENERIC", "some n or fewer forms are linearly dependent")
    if not d > n >= 2:
        raise error("OUT_OF_SCOPE", f"the closed form needs d > n >= 2, got n = {n}, d = {d}")
    mults = {Fraction(1): n - 1}
    for k in range(n, 2 * d - 1):
        q = Fraction(k, d)
        mults[q] = mults.get(q, 0) + 1
    lr = LocalRootData(frozenset({Fraction(1)}), Fraction(1), Fraction(n, d), True)
    certs = [
        RootCertificate(r, IN, m, m, [Evidence("generic-formula", IN, {"n": n, "d": d}, (m, m))])
        for r, m in sorted(mults.items())
    ]
    if arr is None:
        arr = Arrangement(n, (), f"generic({n},{d})")
    return BFunctionResult(True, "generic", dict(mults), dict(mults), dict(mults), certs, lr, arr)


def _lambda_order_divides(q: Fraction, d: int) -> bool:
    return (q * d).denominator == 1


class Certifier:
    """Per-arrangement certification context with cached intermediate data.

    The input is essentialized first; indices (and ``pivot``) refer to the
    input order, which essentialization preserves.
    """

    def __init__(self, arr: Arrangement, pivot: int | None = None,
                 shift_budget: int = DEFAULT_SHIFT_BUDGET, max_choices: int = 500):
        chi = euler_complement(arr)
        if chi == 0:
            raise error("DECOMPOSABLE_INPUT",
                        "chi(U) = 0: the arrangement is decomposable", chi=0)
        self.original = arr
        self.arr = essentialize(arr)
        self.essentialized = self.arr.n != arr.n
        self.n, self.d = self.arr.n, self.arr.d
        self.pivot = self.d - 1 if pivot is None else pivot
        if not 0 <= self.pivot < self.d:
            raise error("BAD_INDEX", f"pivot {self.pivot} out of range for d = {self.d}")
        self.shift_budget = shift_budget
        self.max_choices = max_choices
        self.chi = chi
        self._eigen = {}
        self._criteria = {}
        self._certs = {}
        self._status = {}
        self._wj = {}

    # cached combinatorial data

    @cached_property
    def lattice(self):
        return intersection_lattice(self.arr)

    @cached_property
    def local(self) -> LocalRootData:
        return local_roots(self.arr)

    @cached_property
    def candidates(self) -> list:
        return candidate_roots(self.arr)

    @cached_property
    def max_mult(self) -> int:
        return max_multiplicity(self.arr)

    @cached_property
    def lines_le3(self) -> bool:
        """Line arrangement with points of multiplicity at most 3."""
        return self.n == 3 and self.max_mult <= 3

    @cached_property
    def coprime(self) -> bool:
        dense = dense_edges(self.arr)
        lat = self.lattice
        for i, a in enumerate(dense):
            for b in dense[i + 1:]:
                related = lat.leq(a, b) or lat.leq(b, a) or not lat.meet(a, b).dense
                if related and gcd(a.m_L, b.m_L) != 1:
                    return False
        return True

    def eigen(self, k: int):
        """Eigenspace dims for exp(-2 pi i k/d), or None if no admissible shift was found."""
        if k not in self._eigen:
            try:
                self._eigen[k] = milnor_eigenspace_dims(self.arr, k, self.pivot, self.shift_budget)
            except BsarrError as exc:
                if exc.code != "NO_ADMISSIBLE_SHIFT":
                    raise
                self._eigen[k] = None
        return self._eigen[k]

    # evidence

    def _basic(self, q: Fraction) -> list:
        lr, d, n = self.local, self.d, self.n
        ev = []
        hi = 2 - Fraction(1, d)
        if q < lr.alpha_f or q >= hi:
            ev.append(Evidence("window", OUT, {"alpha_f": lr.alpha_f, "upper": hi}))
        dense_m = sorted({e.m_L for e in dense_edges(self.arr)})
        if not any((q * m).denominator == 1 for m in dense_m):
            ev.append(Evidence("denominator", OUT, {"dense_multiplicities": dense_m}))
        if q == lr.alpha_f:
            ev.append(Evidence("minimal-root", IN, {"n": n, "d": d, "alpha_prime_f": lr.alpha_prime_f}))
        if lr.exact and q in lr.Rprime_f:
            ev.append(Evidence("local-root", IN, {"Rprime_f": lr.Rprime_f}))
        if lr.exact and not _lambda_order_divides(q, d) and q not in lr.Rprime_f:
            ev.append(Evidence("origin-eigenvalue", OUT, {"d": d, "Rprime_f": lr.Rprime_f}))
        return ev

    def _decided(self, q: Fraction, extra: list) -> bool:
        return any(e.status in (IN, OUT) for e in self._basic(q) + extra)

    def criteria(self, k: int) -> dict:
        """Evidence for k/d and k/d + 1 from the codegree criteria, cached per k."""
        if k in self._criteria:
            return self._criteria[k]
        n, d, lr = self.n, self.d, self.local
        q0, q1 = Fraction(k, d), Fraction(k, d) + 1
        ev = {q0: [], q1: []}
        b = comb(k - 1, n - 1)
        aprime = lr.alpha_prime_f
        below = aprime is not None and q0 < aprime
        if k in (d - 1, d):
            ev[q0].append(Evidence("top-roots", IN, {"k": k, "d": d}))
            ev[q1].append(Evidence("top-roots", OUT, {"k": k, "d": d}))
        if below and lr.exact:
            ev[q0].append(Evidence("low-root", IN if k >= n else OUT,
                                   {"k": k, "n": n, "alpha_prime_f": aprime}))
        if 1 <= k <= d - 1:
            eig = self.eigen(k)
            if eig is not None:
                top = eig.dims[n - 1]
                inputs = {"k": k, "binom": b, "dim_H_top": top, "dims": list(eig.dims),
                          "shift": list(eig.shift)}
                if b < top:
                    ev[q1].append(Evidence("spectrum-excess", IN, inputs))
            if below and lr.exact and not any((q0 - r).denominator == 1 for r in lr.Rprime_f) \
                    and b == abs(self.chi):
                ev[q1].append(Evidence("spectrum-match", OUT,
                                       {"k": k, "binom": b, "chi": self.chi}))
        if self.n == 3 and aprime is not None and aprime <= q0 < 1:
            self._vi_criteria(k, ev)
        self._criteria[k] = ev
        return ev

    def _vi_criteria(self, k: int, ev: dict):
        n, d, lr = self.n, self.d, self.local
        q0, q1 = Fraction(k, d), Fraction(k, d) + 1
        b = comb(k - 1, n - 1)
        choices = find_admissible_I(self.arr, k, self.pivot)
        for count, choice in enumerate(choices):
            if count >= self.max_choices:
                break
            r = compute_VI(self.arr, choice)
            inputs = {"I": [i + 1 for i in choice.I], "Ic": [i + 1 for i in choice.Ic],
                      "dim_VIprime": r.dim_VIprime, "dim_VI": r.dim_VI, "dim_H_top": r.dim_H}
            if self.lines_le3:
                inputs["c"] = r.c
                inputs["full_image_criterion"] = full_image_check(self.arr, choice)
                inputs["normal_crossing"] = normal_crossing_check(self.arr, choice.I, k, self.pivot)
            if r.dim_VI > 0:
                _add_once(ev[q0], Evidence("vi-nonzero", IN, inputs))
            if r.is_full and q1 not in lr.Rprime_f and lr.exact:
                _add_once(ev[q1], Evidence("vi-full", OUT, inputs))
            if not r.is_full and r.dim_VIprime == b:
                _add_once(ev[q1], Evidence("vi-partial", IN, dict(inputs, binom=b)))
            if self._decided(q0, ev[q0]) and self._decided(q1, ev[q1]):
                break

    def weight_jump(self, lam: UnityRoot) -> tuple[int, int, bool]:
        """(lhs, rhs, lhs < rhs) of the weight-jump inequality for lambda."""
        if lam not in self._wj:
            self._wj[lam] = weight_jump_condition(self.arr, lam, detail=True, certifier=self)
        return self._wj[lam]

    def _status_evidence(self, q: Fraction) -> list:
        ev = self._basic(q)
        if (q * self.d).denominator == 1:
            k = int(q * self.d)
            if 1 <= k <= self.d:
                ev += self.criteria(k)[q]
            elif self.d < k < 2 * self.d:
                ev += self.criteria(k - self.d)[q]
        return ev

    def status(self, q) -> str:
        """Root status from the status-bearing criteria (no multiplicity work)."""
        q = to_fraction(q)
        if q not in self._status:
            self._status[q] = _merge(q, self._status_evidence(q))
        return self._status[q]

    def _wj_applicable(self, q: Fraction):
        """lambda for the weight-jump route, when it is defined."""
        if self.n != 3 or self.max_mult < 3:
            return None
        lam = UnityRoot.from_root(q)
        if lam.is_one or not lam.power_is_one(self.d):
            return None
        return lam

    def certificate(self, q) -> RootCertificate:
        q = to_fraction(q)
        if q in self._certs:
            return self._certs[q]
        n = self.n
        ev = self._status_evidence(q)
        # weight jump for roots in (1, 2)
        lam = self._wj_applicable(q)
        if lam is not None and 1 < q < 2:
            lhs, rhs, holds = self.weight_jump(lam)
            if holds and self.status(q - 1) == OUT:
                ev.append(Evidence("weight-jump", IN, {"lambda": str(lam), "lhs": lhs, "rhs": rhs,
                                                       "alpha_minus_1": q - 1}, (2, 2)))
        status = _merge(q, ev)
        if status == OUT:
            cert = RootCertificate(q, OUT, 0, 0, ev)
            self._certs[q] = cert
            return cert
        clique, witness = m_of_lambda(self.arr, UnityRoot.from_root(q), witness=True)
        upper = min(n, clique)
        ev.append(Evidence("dense-clique-bound", None,
                           {"m_lambda": clique, "n": n,
                            "clique": [[i + 1 for i in e.containing] for e in witness]},
                           (1, upper)))
        if q == 1:
            ev.append(Evidence("unipotent-multiplicity", IN, {"n": n}, (n, n)))
        elif q.denominator != 1 and self.coprime:
            ev.append(Evidence("coprime-simplicity", None, {}, (1, 1)))
        if lam is not None and q < 1 and self.lines_le3 and q in self.local.Rprime_f:
            lhs, rhs, holds = self.weight_jump(lam)
            if holds:
                ev.append(Evidence("nnc-weight-jump", IN, {"lambda": str(lam), "lhs": lhs, "rhs": rhs},
                                   (2, 2)))
        status = _merge(q, ev)
        lower = 1 if status == IN else 0
        for e in ev:
            if e.mult:
                upper = min(upper, e.mult[1])
                if e.status == IN:
                    lower = max(lower, e.mult[0])
        if lower > upper:
            raise error("CONFLICTING_EVIDENCE", f"multiplicity bounds {lower} > {upper} for {q}",
                        root=str(q))
        cert = RootCertificate(q, status, lower, upper, ev)
        self._certs[q] = cert
        return cert

    def certificates(self) -> list:
        return [self.certificate(q) for q in self.candidates]

    # assembly

    def result(self) -> BFunctionResult:
        arr = self.arr
        if self.n == 1:
            lr = LocalRootData(frozenset(), None, Fraction(1), True)
            m = {Fraction(1): 1}
            cert = RootCertificate(Fraction(1), IN, 1, 1, [Evidence("unipotent-multiplicity", IN, {"n": 1}, (1, 1))])
            return BFunctionResult(True, "smooth", m, m, m, [cert], lr, arr, self.essentialized)
        certs = self.certificates()
        if is_generic(arr) and self.d > self.n:
            res = generic_bfunction(self.n, self.d, arr)
            _check_against(res.factorization, certs)
            res.certificates = _overlay(certs, res.factorization, "generic-formula",
                                        {"n": self.n, "d": self.d})
            res.local = self.local
            res.essentialized = self.essentialized
            return res
        if self.lines_le3 and self.max_mult == 3 and self.d <= 7:
            return self._line_branch(certs)
        return self._criteria_branch(certs)

    def _bounds(self, certs):
        divisor, multiple = {}, {}
        for c in certs:
            if c.status == IN:
                divisor[c.root] = c.mult_lower
            if c.status in (IN, UNKNOWN):
                multiple[c.root] = c.mult_upper
        return divisor, multiple

    def _criteria_branch(self, certs) -> BFunctionResult:
        divisor, multiple = self._bounds(certs)
        complete = all(c.exact_multiplicity is not None for c in certs)
        res = BFunctionResult(complete, "criteria", dict(divisor) if complete else None,
                              divisor, multiple, certs, self.local, self.arr, self.essentialized)
        if self.lines_le3 and self.max_mult == 3:
            res.conjecture = self._j_shape(certs)
        res.weight_jump_survey = self._survey()
        return res

    def _j_shape(self, certs) -> dict:
        """Whether the certified j/d roots are compatible with J = {3, ..., r}."""
        d = self.d
        special = {Fraction(2, 3), Fraction(1), Fraction(4, 3)}
        ins = [int(c.root * d) for c in certs
               if c.status == IN and (c.root * d).denominator == 1 and c.root not in special]
        outs = [int(c.root * d) for c in certs
                if c.status == OUT and (c.root * d).denominator == 1 and c.root not in special]
        first_out = min((o for o in outs if o >= 3), default=None)
        consistent = first_out is None or all(j < first_out for j in ins)
        return {"statement": "J = {3, ..., r}", "certified": False, "consistent": bool(consistent)}

    def _survey(self) -> list:
        if self.n != 3 or self.max_mult < 3:
            return []
        out = []
        seen = set()
        for k in range(1, self.d):
            lam = UnityRoot.from_k(k, self.d)
            if lam in seen:
                continue
            seen.add(lam)
            points = [e for e in self.lattice.of_rank(2) if e.m_L >= 3 and lam.power_is_one(e.m_L)]
            if not points:
                continue
            lhs, rhs, holds = self.weight_jump(lam)
            out.append({"lambda": str(lam), "points": len(points), "lhs": lhs, "rhs": rhs, "holds": holds})
        return out

    def line_family(self) -> str | None:
        """Projective class of a d = 7 line arrangement with four triple points."""
        nu, _ = point_multiplicities(self.arr, self.pivot)
        if self.d != 7 or nu.get(3, 0) != 4 or self.max_mult != 3:
            return None
        triples = [set(e.containing) for e in self.lattice.of_rank(2) if e.m_L == 3]
        per_line = [sum(1 for t in triples if i in t) for i in range(self.d)]
        if 3 in per_line:
            return "one line through three triple points"
        if 0 in per_line:
            return "a line through no triple point"
        return "every line through a triple point"

    def _line_branch(self, certs) -> BFunctionResult:
        d = self.d
        nu3 = point_multiplicities(self.arr, self.pivot)[0].get(3, 0)
        notes = []
        inputs = {"d": d, "nu_3": nu3}
        if d <= 6:
            r = 2 * d - 2 if nu3 < d - 3 else 2 * d - 3
        elif nu3 < 4:
            r = 2 * d - 2
        elif nu3 > 4:
            r = 2 * d - 3
        else:
            q = Fraction(2 * d - 2, d)
            st = self.certificate(q).status
            family = self.line_family()
            expect = 2 * d - 2 if family == "a line through no triple point" else 2 * d - 3
            inputs["family"] = family
            if st == UNKNOWN:
                r = expect
                notes.append("12/7 decided by the family classification only")
            else:
                r = 2 * d - 2 if st == IN else 2 * d - 3
                if r != expect:
                    raise error("CONFLICTING_EVIDENCE",
                                f"computed r = {r} but the family statistics give r = {expect}")
        inputs["r"] = r
        mults = {Fraction(1): 1}
        for q in (Fraction(2, 3), Fraction(1), Fraction(4, 3)):
            mults[q] = mults.get(q, 0) + 1
        for j in range(3, r + 1):
            q = Fraction(j, d)
            mults[q] = mults.get(q, 0) + 1
        _check_against(mults, certs)
        complete = True
        if d % 3 == 0:
            for q in (Fraction(2, 3), Fraction(4, 3)):
                if multiplicity_two_certificate(self.arr, q, certifier=self) != 2:
                    complete = False
                    notes.append(f"multiplicity of {q} not certified")
        certs = _overlay(certs, mults, "line-classification", inputs)
        divisor, multiple = self._bounds(certs)
        res = BFunctionResult(complete, "line-classification", dict(mults) if complete else None,
                              divisor if not complete else dict(mults),
                              multiple if not complete else dict(mults),
                              certs, self.local, self.arr, self.essentialized, notes=notes)
        res.weight_jump_survey = self._survey()
        return res


def _add_once(ev: list, item: Evidence):
    # first witness per criterion is enough
    if not any(e.criterion == item.criterion for e in ev):
        ev.append(item)


def _merge(q: Fraction, ev: list) -> str:
    ins = [e for e in ev if e.status == IN]
    outs = [e for e in ev if e.status == OUT]
    if ins and outs:
        raise error("CONFLICTING_EVIDENCE",
                    f"{q}: IN by {[e.criterion for e in ins]} but OUT by {[e.criterion for e in outs]}",
                    root=str(q))
    return IN if ins else OUT if outs else UNKNOWN


def _check_against(mults: dict, certs: list):
    """A closed-form factorization must agree with every certificate."""
    for c in certs:
        m = mults.get(c.root, 0)
        if c.status == IN and m == 0:
            raise error("CONFLICTING_EVIDENCE", f"{c.root} certified IN but absent from the formula")
        if c.status == OUT and m:
            raise error("CONFLICTING_EVIDENCE", f"{c.root} certified OUT but present in the formula")
        if m and not c.mult_lower <= m <= c.mult_upper and c.status != OUT:
            raise error("CONFLICTING_EVIDENCE",
                        f"{c.root}: formula multiplicity {m} outside [{c.mult_lower}, {c.mult_upper}]")
    roots = {c.root for c in certs}
    missing = [r for r in mults if r not in roots]
    if missing:
        raise error("CONFLICTING_EVIDENCE", f"formula roots outside the candidate set: {missing}")


def _overlay(certs: list, mults: dict, criterion: str, inputs: dict) -> list:
    out = []
    for c in certs:
        m = mults.get(c.root, 0)
        ev = list(c.evidence) + [Evidence(criterion, IN if m else OUT, dict(inputs), (m, m) if m else None)]
        out.append(RootCertificate(c.root, IN if m else OUT, m, m, ev))
    return out


def root_criteria(arr: Arrangement, k: int, pivot: int | None = None) -> dict:
    """Evidence lists for the roots k/d and k/d + 1."""
    return Certifier(arr, pivot).criteria(k)


def weight_jump_condition(arr: Arrangement, lam: UnityRoot, detail: bool = False, certifier=None):
    """Compare dim H^1(F_0)_lambda with the sum over multiple points of m_j - 2.

    Defined for line arrangements and lambda != 1 with lambda^d = 1.
    """
    if arr.n != 3:
        raise error("WRONG_DIMENSION", f"needs n = 3, got n = {arr.n}")
    if lam.is_one:
        raise error("LAMBDA_ONE", "the condition is stated for lambda != 1")
    if not lam.power_is_one(arr.d):
        raise error("LAMBDA_OFF_ORIGIN",
                    f"{lam} is not an eigenvalue at the origin (lambda^{arr.d} != 1)")
    k = int(lam.residue * arr.d)
    if certifier is not None:
        eig = certifier.eigen(k)
        if eig is None:
            raise error("NO_ADMISSIBLE_SHIFT", f"no admissible weights for k = {k}")
    else:
        eig = milnor_eigenspace_dims(arr, k)
    lhs = eig.dims[1]
    rhs = sum(e.m_L - 2 for e in intersection_lattice(arr).of_rank(2)
              if e.m_L >= 3 and lam.power_is_one(e.m_L))
    if detail:
        return lhs, rhs, lhs < rhs
    return lhs < rhs


def multiplicity_two_certificate(arr: Arrangement, root, certifier: Certifier | None = None):
    """2 when the weight-jump route certifies multiplicity 2 for 2/3 or 4/3, else None."""
    root = to_fraction(root)
    if root not in (Fraction(2, 3), Fraction(4, 3)):
        raise error("OUT_OF_SCOPE", f"only the roots 2/3 and 4/3 are covered, got {root}")
    if arr.n != 3 or max_multiplicity(arr) > 3:
        raise error("OUT_OF_SCOPE", "needs a line arrangement with points of multiplicity <= 3")
    if max_multiplicity(arr) < 3:
        raise error("OUT_OF_SCOPE", "no triple points, so 2/3 and 4/3 are not candidates")
    if arr.d % 3:
        raise error("OUT_OF_SCOPE",
                    f"3 does not divide d = {arr.d}; exp(-2 pi i {root}) is not an eigenvalue at the origin")
    cert = certifier or Certifier(arr)
    lhs, rhs, holds = cert.weight_jump(UnityRoot.from_root(root))
    if not holds:
        return None
    if root == Fraction(4, 3) and cert.status(Fraction(1, 3)) != OUT:
        return None
    return 2


def assemble_bfunction(arr: Arrangement, pivot: int | None = None,
                       shift_budget: int = DEFAULT_SHIFT_BUDGET) -> BFunctionResult:
    return Certifier(arr, pivot, shift_budget).result()


def certify_root(arr: Arrangement, root, pivot: int | None = None,
                 shift_budget: int = DEFAULT_SHIFT_BUDGET) -> RootCertificate:
    return Certifier(arr, pivot, shift_budget).certificate(to_fraction(root))


def spectrum_and_jumping(arr: Arrangement, certifier: Certifier | None = None) -> dict:
    """Spectrum coefficients and jumping coefficients below alpha'_f."""
    cert = certifier or Certifier(arr)
    lr, n, d = cert.local, cert.n, cert.d
    aprime = lr.alpha_prime_f
    spectrum = {}
    jumping = []
    for k in range(1, d):
        q = Fraction(k, d)
        if aprime is not None and q >= aprime:
            break
        spectrum[q] = comb(k - 1, n - 1)
        if k >= n:
            jumping.append(q)
    roots_below = [q for q in cert.candidates if aprime is not None and q < aprime
                   and cert.status(q) == IN]
    return {
        "alpha_prime_f": aprime,
        "spectrum": spectrum,
        "jumping": jumping,
        "roots_below": roots_below,
        "agree": roots_below == jumping,
        "exact": lr.exact,
    }
