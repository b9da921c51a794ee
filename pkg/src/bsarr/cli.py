"""Command-line front end.

Every command reads one arrangement file (or the name of a bundled corpus
entry), writes a canonical JSON report to stdout and a short summary to
stderr.  Indices on the command line and in reports are 1-based.

Exit codes: 0 complete, 10 incomplete (undecided roots or an exhausted
search), 2 input or hypothesis error, 3 contradictory evidence.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from bsarr import __version__
from bsarr.aomoto import (
    DEFAULT_SHIFT_BUDGET,
    WeightVector,
    aomoto_cohomology,
    betti_closed_form_n3,
    milnor_eigenspace_dims,
)
from bsarr.arrangement import (
    UnityRoot,
    betti_numbers,
    characteristic_polynomial,
    dense_edges,
    essentialize,
    euler_complement,
    intersection_lattice,
    is_essential,
    m_of_lambda,
    max_multiplicity,
    point_multiplicities,
    poincare_polynomial,
)
from bsarr.bfunction import (
    IN,
    UNKNOWN,
    Certifier,
    _jsonable,
    candidate_roots,
    local_roots,
    multiplicity_bound,
    spectrum_and_jumping,
)
from bsarr.corpus import corpus_manifest, corpus_names, load_corpus
from bsarr.errors import BsarrError, EvidenceConflict, SearchError, error
from bsarr.files import load_arrangement, parse_rational
from bsarr.vsubspace import (
    compute_VI,
    connectivity,
    defect_bound,
    find_admissible_I,
    full_image_failures,
    normal_crossing_check,
    weights_for_I,
)

EXIT_OK, EXIT_INCOMPLETE, EXIT_INPUT, EXIT_CONFLICT = 0, 10, 2, 3

COMMANDS = {
    "lattice": "intersection lattice with Moebius values",
    "dense-edges": "dense edges and their multiplicities",
    "euler": "Euler characteristic of the projective complement",
    "betti": "Betti numbers of the complement",
    "multiplicities": "point multiplicity census (n = 3 only)",
    "cohomology": "Aomoto complex cohomology for a weight vector",
    "eigenspace": "Milnor fiber eigenspace dimensions for lambda = exp(-2 pi i k/d)",
    "vsubspace": "the subspace V(I) for a choice of I",
    "candidates": "candidate roots in the window",
    "certify": "certify one candidate root",
    "bfunction": "assemble the b-function with per-root certificates",
    "spectrum": "spectrum and jumping coefficients",
}


class Outcome:
    def __init__(self, result: dict, summary: str, complete: bool = True):
        self.result = result
        self.summary = summary
        self.complete = complete


def _index_list(text: str, d: int, what: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if not tok.isdigit() or not 1 <= int(tok) <= d:
            raise error("BAD_INDEX", f"{what}: {tok!r} is not an index in 1..{d}")
        out.append(int(tok) - 1)
    return out


def _require_k(args, d: int) -> int:
    if args.k is None:
        raise error("BAD_INDEX", f"{args.command} needs --k")
    if not 1 <= args.k <= d:
        raise error("BAD_INDEX", f"--k must lie in 1..{d}, got {args.k}")
    return args.k


def _cmd_lattice(arr, pivot, args):
    lat = intersection_lattice(arr)
    counts = [len(lat.of_rank(r)) for r in range(lat.rank + 1)]
    return Outcome({"rank": lat.rank, "counts_by_codim": counts,
                    "edges": [e.to_json() for e in lat.edges]},
                   f"{len(lat)} edges, counts by codimension {counts}")


def _cmd_dense(arr, pivot, args):
    dense = dense_edges(arr)
    return Outcome({"dense_edges": [e.to_json() for e in dense]},
                   f"{len(dense)} dense edges")


def _cmd_euler(arr, pivot, args):
    chi = euler_complement(arr)
    warnings = []
    if chi == 0:
        warnings.append("chi(U) = 0: the arrangement is decomposable")
    if not is_essential(arr):
        warnings.append("not essential: invariants of the b-function use the essential quotient")
    res = {"chi": chi, "indecomposable": chi != 0, "essential": is_essential(arr), "warnings": warnings}
    return Outcome(res, f"chi(U) = {chi}" + "".join(f"; {w}" for w in warnings))


def _cmd_betti(arr, pivot, args):
    res = {"betti": betti_numbers(arr), "poincare": poincare_polynomial(arr),
           "characteristic": characteristic_polynomial(arr)}
    if arr.n == 3 and max_multiplicity(arr) <= 3:
        res["closed_form"] = list(betti_closed_form_n3(arr, pivot))
    return Outcome(res, f"Betti numbers of U: {res['betti']}")


def _cmd_multiplicities(arr, pivot, args):
    nu, nu_aff = point_multiplicities(arr, pivot)
    lams = sorted({UnityRoot(Fraction(j, e.m_L)) for e in dense_edges(arr)
                   for j in range(1, e.m_L + 1)}, key=lambda u: u.residue)
    m_table = {str(u): m_of_lambda(arr, u) for u in lams}
    res = {"nu": {str(k): v for k, v in sorted(nu.items())},
           "nu_affine": {str(k): v for k, v in sorted(nu_aff.items())},
           "max_multiplicity": max_multiplicity(arr), "pivot": pivot + 1, "m_lambda": m_table}
    return Outcome(res, f"nu = {dict(sorted(nu.items()))}, nu' = {dict(sorted(nu_aff.items()))}")


def _cmd_cohomology(arr, pivot, args):
    if args.weights:
        w = WeightVector(tuple(parse_rational(t.strip()) for t in args.weights.split(",")))
        rep = aomoto_cohomology(arr, w, pivot)
    else:
        rep = milnor_eigenspace_dims(arr, _require_k(args, arr.d), pivot, args.shift_budget)
    res = rep.to_json()
    res["euler"] = rep.euler
    res["chi"] = euler_complement(arr)
    return Outcome(res, f"dim H^p = {list(rep.dims)}, resonance ok: {rep.resonance_ok}")


def _cmd_eigenspace(arr, pivot, args):
    k = _require_k(args, arr.d)
    rep = milnor_eigenspace_dims(arr, k, pivot, args.shift_budget)
    lam = UnityRoot.from_k(k, arr.d)
    res = {"k": k, "lambda": str(lam), "dims": list(rep.dims), "shift": list(rep.shift),
           "weights": rep.weight.to_json()}
    return Outcome(res, f"dim H^j(F_0)_{lam} = {list(rep.dims)}")


def _cmd_vsubspace(arr, pivot, args):
    k = _require_k(args, arr.d)
    if args.I is not None:
        choice = weights_for_I(arr.d, k, _index_list(args.I, arr.d, "--I"), pivot)
    else:
        choices = find_admissible_I(arr, k, pivot)
        if not choices:
            raise error("NO_ADMISSIBLE_I", f"no non-resonant choice of I for k = {k}")
        choice = choices[0]
    vi = compute_VI(arr, choice)
    res = {"choice": choice.to_json(), "V": vi.to_json(), "zero": vi.is_zero, "full": vi.is_full}
    if arr.n == 3 and max_multiplicity(arr) <= 3:
        res["connectivity"] = connectivity(arr, choice).to_json()
        res["full_image_failures"] = full_image_failures(arr, choice)
        res["full_image_criterion"] = not res["full_image_failures"]
        res["normal_crossing"] = normal_crossing_check(arr, choice.I, k, pivot)
        try:
            c, equal = defect_bound(arr, choice)
            res["defect_bound"] = {"c": c, "equality": equal}
        except BsarrError as exc:
            res["defect_bound"] = {"error": exc.to_json()}
    return Outcome(res, f"dim V(I)' = {vi.dim_VIprime}, dim V(I) = {vi.dim_VI}, "
                        f"dim H^top = {vi.dim_H}")


def _cmd_candidates(arr, pivot, args):
    ess = essentialize(arr)
    lr = local_roots(ess)
    cands = candidate_roots(ess)
    res = {"local": lr.to_json(),
           "candidates": [{"root": str(q), "multiplicity_bound": multiplicity_bound(ess, q)}
                          for q in cands]}
    return Outcome(res, f"{len(cands)} candidate roots in [{lr.alpha_f}, 2 - 1/{ess.d})")


def _certifier(arr, pivot, args):
    return Certifier(arr, pivot, args.shift_budget)


def _cmd_certify(arr, pivot, args):
    if args.root is None:
        raise error("BAD_RATIONAL", "certify needs --root p/q")
    q = parse_rational(args.root)
    if q <= 0:
        raise error("BAD_RATIONAL", f"roots of b_f(-s) are positive, got {q}")
    cert = _certifier(arr, pivot, args).certificate(q)
    mult = (f"multiplicity {cert.mult_lower}" if cert.mult_lower == cert.mult_upper
            else f"multiplicity in [{cert.mult_lower}, {cert.mult_upper}]")
    return Outcome(cert.to_json(), f"{q}: {cert.status}" + (f", {mult}" if cert.status == IN else ""),
                   cert.status != UNKNOWN)


def _cmd_bfunction(arr, pivot, args):
    res = _certifier(arr, pivot, args).result()
    if res.complete:
        from bsarr.bfunction import format_factorization
        summary = f"b_f(s) = {format_factorization(res.factorization)}"
    else:
        unknown = [str(c.root) for c in res.certificates if c.status == UNKNOWN]
        summary = f"incomplete; undecided roots: {', '.join(unknown) or 'none'}"
        open_mult = [str(c.root) for c in res.certificates
                     if c.status == IN and c.mult_lower != c.mult_upper]
        if open_mult:
            summary += f"; open multiplicities: {', '.join(open_mult)}"
    return Outcome(res.to_json(), summary, res.complete)


def _cmd_spectrum(arr, pivot, args):
    data = spectrum_and_jumping(arr, _certifier(arr, pivot, args))
    res = {
        "alpha_prime_f": None if data["alpha_prime_f"] is None else str(data["alpha_prime_f"]),
        "spectrum": {str(q): v for q, v in data["spectrum"].items()},
        "jumping": [str(q) for q in data["jumping"]],
        "roots_below": [str(q) for q in data["roots_below"]],
        "agree": data["agree"],
        "exact": data["exact"],
    }
    return Outcome(res, f"jumping coefficients below alpha'_f: {res['jumping']}")


_DISPATCH = {
    "lattice": _cmd_lattice,
    "dense-edges": _cmd_dense,
    "euler": _cmd_euler,
    "betti": _cmd_betti,
    "multiplicities": _cmd_multiplicities,
    "cohomology": _cmd_cohomology,
    "eigenspace": _cmd_eigenspace,
    "vsubspace": _cmd_vsubspace,
    "candidates": _cmd_candidates,
    "certify": _cmd_certify,
    "bfunction": _cmd_bfunction,
    "spectrum": _cmd_spectrum,
}


def _read_input(source: str):
    """(ArrangementFile, raw bytes); a non-existent path may name a corpus entry."""
    if os.path.exists(source):
        with open(source, "rb") as fh:
            raw = fh.read()
        return load_arrangement(source), raw
    if source in corpus_names():
        f = load_corpus(source)
        from importlib import resources
        raw = (resources.files("bsarr") / "corpus" / f"{source}.json").read_bytes()
        return f, raw
    raise error("UNKNOWN_CORPUS", f"{source}: no such file or bundled example")


def canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flags(args) -> dict:
    keys = ("pivot", "shift_budget", "k", "I", "root", "weights")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def run(args) -> tuple[dict, str, int]:
    """Execute a parsed command; returns (report, summary, exit code)."""
    report = {"command": args.command, "flags": _flags(args), "version": __version__}
    if args.command == "corpus":
        manifest = corpus_manifest()
        report.update(status="complete", result={"examples": manifest})
        return report, f"{len(manifest)} bundled examples", EXIT_OK
    try:
        f, raw = _read_input(args.file)
        report["input"] = {"sha256": hashlib.sha256(raw).hexdigest(),
                           "arrangement": f.arrangement.to_json()}
        arr = f.arrangement
        pivot = f.pivot if args.pivot is None else args.pivot - 1
        if pivot is None:
            pivot = arr.d - 1
        if not 0 <= pivot < arr.d:
            raise error("BAD_INDEX", f"--pivot must lie in 1..{arr.d}")
        out = _DISPATCH[args.command](arr, pivot, args)
    except EvidenceConflict as exc:
        report.update(status="error", error=exc.to_json())
        return report, f"error: {exc}", EXIT_CONFLICT
    except SearchError as exc:
        report.update(status="incomplete", error=exc.to_json())
        return report, f"incomplete: {exc}", EXIT_INCOMPLETE
    except BsarrError as exc:
        report.update(status="error", error=exc.to_json())
        return report, f"error [{exc.code}]: {exc}", EXIT_INPUT
    report["result"] = out.result
    report["status"] = "complete" if out.complete else "incomplete"
    return report, out.summary, EXIT_OK if out.complete else EXIT_INCOMPLETE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bsarr", description=(
        "Certify roots and multiplicities of b-functions of central hyperplane arrangements."))
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("corpus", help="list the bundled examples")
    c.add_argument("--quiet", action="store_true", help="no summary on stderr")
    for name, text in COMMANDS.items():
        s = sub.add_parser(name, help=text)
        s.add_argument("file", help="arrangement JSON file or bundled example name")
        s.add_argument("--pivot", type=int, help="1-based decone pivot (default: last form)")
        s.add_argument("--shift-budget", type=int, default=DEFAULT_SHIFT_BUDGET,
                       help="maximum number of weight shifts tried per eigenvalue")
        s.add_argument("--quiet", action="store_true", help="no summary on stderr")
        if name in ("cohomology", "eigenspace", "vsubspace"):
            s.add_argument("--k", type=int, required=name != "cohomology")
        if name == "cohomology":
            s.add_argument("--weights", help="comma-separated rational weights summing to 0")
        if name == "vsubspace":
            s.add_argument("--I", help="comma-separated 1-based indices of I (default: best choice)")
        if name == "certify":
            s.add_argument("--root", required=True, help="candidate root as p/q")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report, summary, code = run(args)
    sys.stdout.write(canonical_json(report))
    if not getattr(args, "quiet", False):
        print(f"bsarr {args.command}: {summary}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
