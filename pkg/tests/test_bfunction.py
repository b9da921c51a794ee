from fractions import Fraction

import pytest

from bsarr.arrangement import UnityRoot, dense_edges, essentialize, m_of_lambda, parse_arrangement
from bsarr.bfunction import (
    IN,
    OUT,
    UNKNOWN,
    Certifier,
    Evidence,
    _merge,
    assemble_bfunction,
    candidate_roots,
    certify_root,
    format_factorization,
    generic_bfunction,
    local_roots,
    multiplicity_bound,
    multiplicity_two_certificate,
    root_criteria,
    spectrum_and_jumping,
    weight_jump_condition,
)
from bsarr.corpus import corpus_names
from bsarr.errors import BsarrError, EvidenceConflict, HypothesisError, InputError

from conftest import corpus

F = Fraction


def generic_formula(n, d):
    m = {F(1): n - 1}
    for k in range(n, 2 * d - 1):
        m[F(k, d)] = m.get(F(k, d), 0) + 1
    return m


def line_formula(d, r):
    m = {F(1): 2, F(2, 3): 1, F(4, 3): 1}
    for j in range(3, r + 1):
        m[F(j, d)] = m.get(F(j, d), 0) + 1
    return m


@pytest.mark.parametrize("n, d", [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (3, 6)])
def test_generic(n, d):
    arr = parse_arrangement(n, [[t ** j for j in range(n)] for t in range(d)])
    res = assemble_bfunction(arr)
    assert res.complete and res.branch == "generic"
    assert res.factorization == generic_formula(n, d)
    assert res.factorization[F(1)] == n


def test_generic_closed_form_errors(quadrangle):
    with pytest.raises(HypothesisError):
        generic_bfunction(3, 6, quadrangle)
    with pytest.raises(HypothesisError):
        generic_bfunction(3, 3)


def test_quadrangle(quadrangle):
    res = assemble_bfunction(quadrangle)
    assert res.complete
    assert res.factorization == {**line_formula(6, 9), F(2, 3): 2, F(4, 3): 2}
    assert res.certificate("5/3").status == OUT
    assert weight_jump_condition(quadrangle, UnityRoot.from_root(F(1, 3)), detail=True) == (1, 4, True)


def test_triple6(triple6):
    res = assemble_bfunction(triple6)
    assert res.complete and res.factorization == line_formula(7, 11)
    c = res.certificate("5/7")
    assert c.status == IN and any(e.criterion == "vi-nonzero" for e in c.evidence)
    assert res.certificate("12/7").status == OUT
    sj = spectrum_and_jumping(triple6)
    assert sj["jumping"] == [F(3, 7), F(4, 7)]
    assert F(5, 7) not in sj["jumping"]


def test_nine_lines(nine_lines):
    res = assemble_bfunction(nine_lines)
    assert not res.complete
    assert res.certificate("6/9").status == IN
    assert res.certificate("15/9").status == IN
    assert res.certificate("16/9").status == UNKNOWN
    assert res.conjecture["consistent"]


@pytest.mark.parametrize("name, r", [
    ("triple4-d7-a", 11), ("triple4-d7-b", 11), ("triple4-d7-c", 12),
    ("triple5-d7-a", 11), ("triple5-d7-b", 11),
])
def test_d7_families(name, r):
    res = assemble_bfunction(corpus(name))
    assert res.complete and res.factorization == line_formula(7, r)


def test_pivot_independence(quadrangle):
    ref = assemble_bfunction(quadrangle).factorization
    for p in range(quadrangle.d):
        assert assemble_bfunction(quadrangle, pivot=p).factorization == ref


def test_decomposable_rejected():
    with pytest.raises(InputError) as e:
        assemble_bfunction(parse_arrangement(2, [[1, 0], [0, 1]]))
    assert e.value.code == "DECOMPOSABLE_INPUT" and e.value.details["chi"] == 0
    with pytest.raises(InputError):
        assemble_bfunction(corpus("pull-back-product"))


def test_pull_back_is_essentialized():
    res = assemble_bfunction(corpus("pull-back-a2"))
    assert res.essentialized and res.factorization == generic_formula(2, 3)


def test_smooth():
    res = assemble_bfunction(parse_arrangement(1, [[1]]))
    assert res.factorization == {F(1): 1}


def test_local_roots_lines(quadrangle):
    lr = local_roots(quadrangle)
    assert lr.Rprime_f == {F(2, 3), F(1), F(4, 3)}
    assert lr.alpha_prime_f == F(2, 3) and lr.alpha_f == F(1, 2) and lr.exact


def test_multiplicity_bound(quadrangle):
    g = corpus("generic-n3-d5")
    assert multiplicity_bound(g, F(2, 5)) == 1
    assert multiplicity_bound(g, 1) == 3
    assert multiplicity_bound(quadrangle, F(2, 3)) == 2


def test_weight_jump_errors(quadrangle):
    with pytest.raises(HypothesisError) as e:
        weight_jump_condition(quadrangle, UnityRoot.from_root(1))
    assert e.value.code == "LAMBDA_ONE"
    with pytest.raises(HypothesisError) as e:
        weight_jump_condition(quadrangle, UnityRoot.from_root(F(1, 4)))
    assert e.value.code == "LAMBDA_OFF_ORIGIN"
    with pytest.raises(InputError):
        weight_jump_condition(corpus("generic-n2-d4"), UnityRoot.from_root(F(1, 2)))


def test_multiplicity_two(quadrangle, triple6):
    assert multiplicity_two_certificate(quadrangle, F(2, 3)) == 2
    assert multiplicity_two_certificate(quadrangle, F(4, 3)) == 2
    with pytest.raises(HypothesisError):
        multiplicity_two_certificate(triple6, F(2, 3))
    with pytest.raises(HypothesisError):
        multiplicity_two_certificate(quadrangle, F(1, 2))


def test_root_criteria_k6(nine_lines):
    ev = root_criteria(nine_lines, 6)
    assert _merge(F(6, 9), ev[F(6, 9)]) == IN
    assert _merge(F(15, 9), ev[F(15, 9)]) == IN


def test_certify_root_single(triple6):
    c = certify_root(triple6, "5/3")
    assert c.status == OUT and c.evidence[0].criterion in ("origin-eigenvalue", "denominator")
    assert certify_root(triple6, "1").mult_lower == 3


def test_conflicting_evidence_raises():
    with pytest.raises(EvidenceConflict):
        _merge(F(1, 2), [Evidence("low-root", IN), Evidence("window", OUT)])


def test_format_factorization():
    assert format_factorization({F(1): 2, F(1, 2): 1}) == "(s+1/2)(s+1)^2"
    assert format_factorization({}) == "1"


def _property_violations(arr):
    out = []
    res = assemble_bfunction(arr)
    ess = essentialize(arr)
    lr = local_roots(ess)
    lo, hi = min(F(ess.n, ess.d), lr.alpha_prime_f or F(ess.n, ess.d)), 2 - F(1, ess.d)
    dense_m = {e.m_L for e in dense_edges(ess)}
    for c in res.certificates:
        if c.status == IN:
            if not lo <= c.root < hi:
                out.append(f"{c.root} outside window")
            if not any((c.root * m).denominator == 1 for m in dense_m):
                out.append(f"{c.root} denominator")
            if c.mult_upper > min(ess.n, m_of_lambda(ess, UnityRoot.from_root(c.root))):
                out.append(f"{c.root} multiplicity bound")
            if not c.evidence or not any(e.status == IN for e in c.evidence):
                out.append(f"{c.root} has no IN evidence")
        if c.status == OUT and not any(e.status == OUT for e in c.evidence):
            out.append(f"{c.root} has no OUT evidence")
    assert set(candidate_roots(ess)) >= {c.root for c in res.certificates}
    return out


@pytest.mark.parametrize("name", [n for n in corpus_names() if not n.startswith("decomposable")
                                  and n != "pull-back-product"])
def test_corpus_properties(name):
    assert _property_violations(corpus(name)) == []


def test_certifier_caches(quadrangle):
    c = Certifier(quadrangle)
    assert c.criteria(2) is c.criteria(2)
    assert c.line_family() is None
    with pytest.raises(BsarrError):
        Certifier(quadrangle, pivot=10)
