"""Exact certification of Bernstein-Sato roots for central hyperplane arrangements."""
from bsarr.errors import BsarrError
from bsarr.arrangement import Arrangement, parse_arrangement
from bsarr.bfunction import Certifier, assemble_bfunction, certify_root

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BsarrError",
    "Certifier",
    "assemble_bfunction",
    "certify_root",
    "parse_arrangement",
]
