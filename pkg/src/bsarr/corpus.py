"""Bundled regression corpus of arrangement files."""
from __future__ import annotations

from importlib import resources

from bsarr.arrangement import euler_complement, max_multiplicity, point_multiplicities, is_generic
from bsarr.errors import error
from bsarr.files import ArrangementFile, loads_arrangement

__all__ = ["corpus_names", "corpus_manifest", "load_corpus", "witness_failures"]


def _dir():
    return resources.files("bsarr") / "corpus"


def corpus_names() -> list[str]:
    return sorted(p.name[:-5] for p in _dir().iterdir() if p.name.endswith(".json"))


def load_corpus(name: str) -> ArrangementFile:
    path = _dir() / f"{name}.json"
    if not path.is_file():
        raise error("UNKNOWN_CORPUS", f"no bundled example named {name!r}", known=corpus_names())
    return loads_arrangement(path.read_text(encoding="utf-8"), f"corpus:{name}")


def corpus_manifest() -> list[dict]:
    out = []
    for name in corpus_names():
        f = load_corpus(name)
        arr = f.arrangement
        out.append({
            "name": name,
            "n": arr.n,
            "d": arr.d,
            "description": f.meta.get("description", ""),
            "expect": f.meta.get("expect", {}),
        })
    return out


def witness_failures(name: str) -> list[str]:
    """Check a corpus entry against its recorded invariants.

    For the one-parameter and two-parameter line families this is the
    genericity witness: the exact point-multiplicity census (so no extra
    concurrences) and chi(U).
    """
    f = load_corpus(name)
    arr, expect = f.arrangement, f.meta.get("expect", {})
    bad = []
    if "chi" in expect and euler_complement(arr) != expect["chi"]:
        bad.append(f"chi = {euler_complement(arr)}, expected {expect['chi']}")
    if "nu" in expect:
        nu, _ = point_multiplicities(arr)
        want = {int(k): v for k, v in expect["nu"].items()}
        if nu != want:
            bad.append(f"nu = {nu}, expected {want}")
        if max_multiplicity(arr) != max(want):
            bad.append("unexpected point multiplicity")
    if expect.get("generic") and not is_generic(arr):
        bad.append("not generic")
    return bad
