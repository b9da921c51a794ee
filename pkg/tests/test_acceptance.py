"""Acceptance criteria, one test each.

Each test records a PASS/FAIL line (with timing) that the terminal summary
prints at the end of the run; ``python tests/test_acceptance.py`` prints the
same lines without pytest.
"""
import contextlib
import io
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bsarr.aomoto import (  # noqa: E402
    WeightVector,
    aomoto_cohomology,
    betti_closed_form_n3,
    build_os_algebra,
    milnor_eigenspace_dims,
)
from bsarr.arrangement import (  # noqa: E402
    UnityRoot,
    betti_numbers,
    dense_edges,
    essentialize,
    euler_complement,
    m_of_lambda,
    parse_arrangement,
    point_multiplicities,
)
from bsarr.bfunction import (  # noqa: E402
    IN,
    UNKNOWN,
    Certifier,
    assemble_bfunction,
    local_roots,
    spectrum_and_jumping,
    weight_jump_condition,
)
from bsarr.cli import main as cli_main  # noqa: E402
from bsarr.corpus import corpus_names, load_corpus  # noqa: E402
from bsarr.errors import InputError  # noqa: E402
from bsarr.vsubspace import (  # noqa: E402
    compute_VI,
    connectivity,
    find_admissible_I,
    full_image_check,
    normal_crossing_check,
    weights_for_I,
)

from conftest import random_lines  # noqa: E402

F = Fraction
RESULTS = {}


def corpus(name):
    return load_corpus(name).arrangement


def line_formula(d, r):
    m = {F(1): 2, F(2, 3): 1, F(4, 3): 1}
    for j in range(3, r + 1):
        m[F(j, d)] = m.get(F(j, d), 0) + 1
    return m


def record(num, title, checks, elapsed, limit):
    failed = [name for name, ok in checks if not ok]
    if elapsed >= limit:
        failed.append(f"runtime {elapsed:.1f}s >= {limit}s")
    status = "PASS" if not failed else "FAIL"
    line = f"ACCEPTANCE {num}: {status} {title} ({elapsed:.2f}s)"
    if failed:
        line += " failed: " + "; ".join(failed)
    RESULTS[num] = line
    print(line)
    return not failed


# 1

def criterion_1():
    checks = []
    worst = 0.0
    for n, d in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (3, 6)]:
        arr = parse_arrangement(n, [[t ** j for j in range(n)] for t in range(d)])
        t = time.perf_counter()
        res = assemble_bfunction(arr)
        worst = max(worst, time.perf_counter() - t)
        expect = {F(1): n - 1}
        for k in range(n, 2 * d - 1):
            expect[F(k, d)] = expect.get(F(k, d), 0) + 1
        checks.append((f"formula ({n},{d})", res.complete and res.factorization == expect))
        checks.append((f"m_1 = n ({n},{d})", res.factorization.get(F(1)) == n))
    return checks, worst


# 2

def criterion_2():
    arr = corpus("quadrangle-d6")
    res = assemble_bfunction(arr)
    lam = UnityRoot.from_root(F(1, 3))
    return [
        ("chi = 2", euler_complement(arr) == 2),
        ("dim H^1(F_0)_e(-1/3) = 1", milnor_eigenspace_dims(arr, 2).dims[1] == 1),
        ("m(e(-1/3)) = 2", m_of_lambda(arr, lam) == 2),
        ("weight-jump 1 < 4", weight_jump_condition(arr, lam, detail=True) == (1, 4, True)),
        ("factorization J = {3..9}, m_2/3 = m_4/3 = 2",
         res.complete and res.factorization == line_formula(6, 9)
         and res.factorization[F(2, 3)] == res.factorization[F(4, 3)] == 2),
        ("m_1 = 3", res.factorization[F(1)] == 3),
    ]


# 3

def criterion_3():
    arr = corpus("triple6-d7")
    nu, nu_aff = point_multiplicities(arr)
    res = assemble_bfunction(arr)
    sj = spectrum_and_jumping(arr)
    c57 = res.certificate(F(5, 7))
    return [
        ("chi = 4", euler_complement(arr) == 4),
        ("nu_3 = 6", nu.get(3) == 6),
        ("nu'_3 = 4", nu_aff.get(3) == 4),
        ("J = {3..11}", res.complete and res.factorization == line_formula(7, 11)),
        ("5/7 IN", c57.status == IN),
        ("jumping = {3/7, 4/7}", sj["jumping"] == [F(3, 7), F(4, 7)]),
        ("5/7 not jumping", F(5, 7) not in sj["jumping"]),
    ]


# 4

def criterion_4():
    arr = corpus("nine-lines-d9")
    ch = weights_for_I(9, 6, [0, 2, 3, 5, 7])  # I^c = {y, x - y + 1, x + y + 2}
    vi = compute_VI(arr, ch)
    cert = Certifier(arr)
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = cli_main(["bfunction", "nine-lines-d9", "--quiet"])
    return [
        ("b_1 = 8", betti_numbers(arr)[1] == 8),
        ("chi = 12", euler_complement(arr) == 12),
        ("I^c as given", ch.Ic == (1, 4, 6)),
        ("dim V(I)' = 10", vi.dim_VIprime == 10),
        ("normal crossing check true", normal_crossing_check(arr, ch.I, 6)),
        ("full image check false", not full_image_check(arr, ch)),
        ("0 < dim V(I) < dim H^2", 0 < vi.dim_VI < vi.dim_H),
        ("6/9 IN", cert.certificate(F(6, 9)).status == IN),
        ("15/9 IN", cert.certificate(F(15, 9)).status == IN),
        ("16/9 UNKNOWN", cert.certificate(F(16, 9)).status == UNKNOWN),
        ("exit code 10", code == 10),
    ]


# 5

def criterion_5():
    checks = []
    worst = 0.0
    for name, r, c in [("triple4-d7-a", 11, 0), ("triple4-d7-b", 11, 0), ("triple4-d7-c", 12, 1)]:
        arr = corpus(name)
        t = time.perf_counter()
        res = assemble_bfunction(arr)
        ch = weights_for_I(7, 5, [2, 3, 4, 5])  # I^c = {x, y}
        conn = connectivity(arr, ch)
        worst = max(worst, time.perf_counter() - t)
        checks.append((f"{name} r = {r}", res.complete and res.factorization == line_formula(7, r)))
        checks.append((f"{name} 12/7 {'IN' if r == 12 else 'OUT'}",
                       (F(12, 7) in res.factorization) == (r == 12)))
        checks.append((f"{name} c = {c}", conn.c == c))
    return checks, worst


# 6

def criterion_6():
    arrs = random_lines(2024, 24, 4, 8)
    checks = []
    for i, arr in enumerate(arrs):
        nu, _ = point_multiplicities(arr)
        d = arr.d
        checks.append((f"#{i} OS dims", tuple(build_os_algebra(arr).dims) == betti_closed_form_n3(arr)))
        checks.append((f"#{i} chi", euler_complement(arr) == (d - 2) * (d - 3) // 2 - nu.get(3, 0)))
    checks.append((">= 20 instances", len(arrs) >= 20))
    return checks


# 7

def _root_violations(arr):
    bad = []
    res = assemble_bfunction(arr)
    ess = essentialize(arr)
    lr = local_roots(ess)
    lo = min(F(ess.n, ess.d), lr.alpha_prime_f if lr.alpha_prime_f is not None else F(ess.n, ess.d))
    hi = 2 - F(1, ess.d)
    dense_m = {e.m_L for e in dense_edges(ess)}
    for c in res.certificates:
        if c.status != IN:
            continue
        if not lo <= c.root < hi:
            bad.append(f"{arr.name}: {c.root} outside window")
        if not any((c.root * m).denominator == 1 for m in dense_m):
            bad.append(f"{arr.name}: {c.root} denominator")
        if c.mult_upper > min(ess.n, m_of_lambda(ess, UnityRoot.from_root(c.root))):
            bad.append(f"{arr.name}: {c.root} multiplicity")
    return bad


def criterion_7():
    violations = []
    names = [n for n in corpus_names() if euler_complement(corpus(n)) != 0]
    lines = []
    for name in names:
        arr = corpus(name)
        violations += _root_violations(arr)
        if arr.n == 3 and max(m for m in point_multiplicities(arr)[0]) <= 3:
            lines.append(arr)
    rng = random.Random(7)
    pool = [corpus(n) for n in names]
    for _ in range(100):
        arr = rng.choice(pool)
        partial = [F(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(arr.d - 1)]
        w = WeightVector.completing(partial, arr.d - 1, arr.d)
        if aomoto_cohomology(arr, w).euler != euler_complement(arr):
            violations.append(f"{arr.name}: Euler characteristic for {w.to_json()}")
    checked = 0
    for arr in lines:
        for k in range(3, arr.d):
            for ch in find_admissible_I(arr, k)[:6]:
                vi = compute_VI(arr, ch)
                if vi.dim_VI > vi.dim_VIprime:
                    violations.append(f"{arr.name} k={k}: dim V(I) > dim V(I)'")
                if vi.c is not None:
                    checked += 1
                    if vi.dim_VIprime - vi.c > vi.dim_VI:
                        violations.append(f"{arr.name} k={k}: defect bound")
    return [("zero violations: " + "; ".join(violations[:3]), not violations),
            ("defect bound exercised", checked > 0)]


# 8

def criterion_8():
    checks = []
    for name in ("decomposable-xy", "pull-back-product"):
        arr = corpus(name)
        try:
            assemble_bfunction(arr)
            checks.append((f"{name} rejected", False))
        except InputError as exc:
            checks.append((f"{name} rejected", exc.code == "DECOMPOSABLE_INPUT" and exc.details.get("chi") == 0))
    return checks


def _run(num, title, fn, limit):
    t = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - t
    if isinstance(out, tuple):
        checks, measured = out
        elapsed = measured  # per-instance limit
    else:
        checks = out
    return record(num, title, checks, elapsed, limit)


CRITERIA = [
    (1, "generic formula", criterion_1, 10),
    (2, "six lines with four triple points", criterion_2, 30),
    (3, "seven lines with six triple points", criterion_3, 30),
    (4, "nine lines, 16/9 left undecided", criterion_4, 60),
    (5, "d = 7 families with four triple points", criterion_5, 60),
    (6, "oracle equivalence on random line arrangements", criterion_6, 600),
    (7, "property suite", criterion_7, 600),
    (8, "decomposable inputs rejected", criterion_8, 60),
]


@pytest.mark.parametrize("num, title, fn, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance(num, title, fn, limit):
    assert _run(num, title, fn, limit), RESULTS[num]


if __name__ == "__main__":
    ok = all([_run(*c) for c in CRITERIA])
    sys.exit(0 if ok else 1)
