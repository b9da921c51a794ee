"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries.  Elimination
clears denominators row by row and runs fraction-free on integers (see
``_kernel``); results are renormalized to reduced fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from bsarr._kernel import int_rref

Rational = Fraction

__all__ = [
    "Rational",
    "to_fraction",
    "RatMatrix",
    "Subspace",
    "rref",
    "rank",
    "rref_rows",
    "kernel_basis",
    "subspace_ops",
]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class RatMatrix:
    """Dense immutable matrix of rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(to_fraction(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix: every row needs %d entries" % ncols)
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.rows[i][j]
        return self.rows[idx]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"RatMatrix([{body}], ncols={self.ncols})"

    @property
    def shape(self):
        return self.nrows, self.ncols

    def tolist(self):
        return [list(r) for r in self.rows]

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                         self.nrows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)


def _integer_row(row) -> list[int]:
    den = 1
    for x in row:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def rref_rows(rows: Iterable[Sequence], ncols: int) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    """Nonzero rows of the reduced row-echelon form, plus pivot columns."""
    int_rows = [_integer_row([to_fraction(x) for x in r]) for r in rows]
    reduced, pivots = int_rref(int_rows, ncols)
    out = []
    for row, c in zip(reduced, pivots):
        p = row[c]
        out.append(tuple(Fraction(x, p) for x in row))
    return tuple(out), tuple(pivots)


def rref(m: RatMatrix) -> tuple[RatMatrix, int]:
    """Reduced row-echelon form of ``m`` (zero rows kept at the bottom) and its rank."""
    rows, pivots = rref_rows(m.rows, m.ncols)
    r = len(rows)
    padded = list(rows) + [(Fraction(0),) * m.ncols] * (m.nrows - r)
    return RatMatrix(padded, m.ncols), r


def rank(m) -> int:
    if isinstance(m, RatMatrix):
        rows, ncols = m.rows, m.ncols
    else:
        rows = list(m)
        if not rows:
            return 0
        ncols = len(rows[0])
    return len(rref_rows(rows, ncols)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its reduced echelon basis.

    The stored basis is canonical, so two subspaces are equal exactly when
    their dataclass fields are equal.
    """

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length %d does not match ambient dimension %d"
                                 % (len(v), ambient_dim))
        basis, pivots = rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, basis, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(RatMatrix.identity(ambient_dim).rows, ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> tuple:
        """Residue of ``v`` after clearing every pivot coordinate."""
        v = [to_fraction(x) for x in v]
        for row, c in zip(self.basis, self.pivots):
            a = v[c]
            if a:
                v = [x - a * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the stored basis; ValueError if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(to_fraction(v[c]) for c in self.pivots)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal to the subspace under the standard pairing."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return kernel_basis(RatMatrix(self.basis, self.ambient_dim))

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch: %d vs %d"
                             % (self.ambient_dim, other.ambient_dim))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)


def kernel_basis(m: RatMatrix) -> Subspace:
    """Null space {v : m v = 0} as a canonical subspace of Q^cols."""
    rows, pivots = rref_rows(m.rows, m.ncols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.ncols
        v[free] = Fraction(1)
        for row, c in zip(rows, pivots):
            v[c] = -row[free]
        vectors.append(v)
    return Subspace.span(vectors, m.ncols)


def subspace_ops(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace, int]:
    """Sum, intersection, and dim of the image of ``a`` in ambient/``b``."""
    a._check(b)
    total = a + b
    meet = a & b
    return total, meet, a.dim - meet.dim
