import random
from fractions import Fraction

import pytest

from bsarr.arrangement import max_multiplicity, parse_arrangement
from bsarr.corpus import load_corpus
from bsarr.errors import BsarrError


def corpus(name):
    return load_corpus(name).arrangement


@pytest.fixture(scope="session")
def quadrangle():
    return corpus("quadrangle-d6")


@pytest.fixture(scope="session")
def triple6():
    return corpus("triple6-d7")


@pytest.fixture(scope="session")
def nine_lines():
    return corpus("nine-lines-d9")


def random_arrangement(rng, n, d, lo=-3, hi=3, max_mult=None, tries=2000):
    """Random essential central arrangement with small integer coefficients."""
    for _ in range(tries):
        rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(d)]
        try:
            arr = parse_arrangement(n, rows)
        except BsarrError:
            continue
        if max_mult is not None and n >= 3 and max_multiplicity(arr) > max_mult:
            continue
        from bsarr.arrangement import is_essential
        if not is_essential(arr):
            continue
        return arr
    raise RuntimeError("could not sample an arrangement")


def random_lines(seed, count, dmin=4, dmax=8):
    """n = 3 arrangements with point multiplicities at most 3."""
    rng = random.Random(seed)
    return [random_arrangement(rng, 3, rng.randint(dmin, dmax), max_mult=3) for _ in range(count)]


def frac(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
