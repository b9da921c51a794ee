"""Exceptions raised by bsarr.

Every error carries a stable machine-readable ``code``; the CLI reports it
verbatim in the JSON output.
"""


class BsarrError(Exception):
    code = "ERROR"

    def __init__(self, message, code=None, **details):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.details = details

    def to_json(self):
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class InputError(BsarrError):
    """Malformed or unsupported input (CLI exit code 2)."""


class HypothesisError(BsarrError):
    """A criterion was applied outside the setting where it holds."""


class SearchError(BsarrError):
    """A bounded search ran out of budget."""


class EvidenceConflict(BsarrError):
    code = "CONFLICTING_EVIDENCE"


# code -> class; used by error() for consistency
_CLASSES = {
    "DUPLICATE_HYPERPLANE": InputError,
    "ZERO_FORM": InputError,
    "DIMENSION_MISMATCH": InputError,
    "WRONG_DIMENSION": InputError,
    "MULTIPLICITY_TOO_HIGH": InputError,
    "DECOMPOSABLE_INPUT": InputError,
    "BAD_CARDINALITY": InputError,
    "BAD_RATIONAL": InputError,
    "BAD_INDEX": InputError,
    "BAD_JSON": InputError,
    "UNKNOWN_CORPUS": InputError,
    "NOT_GENERIC": HypothesisError,
    "RESONANT_WEIGHTS": HypothesisError,
    "HYPOTHESIS_FAILED": HypothesisError,
    "WRONG_CODEGREE": HypothesisError,
    "LAMBDA_ONE": HypothesisError,
    "LAMBDA_OFF_ORIGIN": HypothesisError,
    "OUT_OF_SCOPE": HypothesisError,
    "NO_ADMISSIBLE_SHIFT": SearchError,
    "NO_ADMISSIBLE_I": SearchError,
    "CONFLICTING_EVIDENCE": EvidenceConflict,
}


def error(code, message, **details):
    """Build the exception instance matching ``code``."""
    cls = _CLASSES.get(code, BsarrError)
    return cls(message, code=code, **details)
