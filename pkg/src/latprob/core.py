"""Exact lattice fundamentals.

Everything here works on Python ints and :class:`fractions.Fraction`; floats
only show up in ``approx`` helpers used for display.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .errors import DegenerateBasisError, DimensionError


class NormKind(enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, value: "str | NormKind") -> "NormKind":
        if isinstance(value, NormKind):
            return value
        key = str(value).lower().replace("_", "").replace("ℓ", "l")
        aliases = {"l1": cls.L1, "1": cls.L1, "l2": cls.L2, "2": cls.L2,
                   "linf": cls.LINF, "inf": cls.LINF, "infinity": cls.LINF}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown norm {value!r}") from None


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted where exact values are required")
    return Fraction(x)


# ---------------------------------------------------------------------------
# norms
#
# A "norm value" is the exact comparable quantity for a norm kind: the squared
# length for l2, the length itself for l1/linf.  All of them are Fractions.

def vector_norm(v: Iterable, p: NormKind | str = NormKind.L2) -> Fraction:
    p = NormKind.parse(p)
    xs = [as_fraction(x) for x in v]
    if p is NormKind.L2:
        return sum((x * x for x in xs), Fraction(0))
    if p is NormKind.L1:
        return sum((abs(x) for x in xs), Fraction(0))
    return max((abs(x) for x in xs), default=Fraction(0))


def radius_value(r, p: NormKind | str) -> Fraction:
    """Convert a plain radius into the comparable form used for ``p``."""
    r = as_fraction(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return r * r if NormKind.parse(p) is NormKind.L2 else r


def scale_value(value: Fraction, factor, p: NormKind | str) -> Fraction:
    """Comparable value of ``factor * ||v||`` given the comparable value of ``||v||``."""
    factor = as_fraction(factor)
    if NormKind.parse(p) is NormKind.L2:
        return value * factor * factor
    return value * factor


def squared_value(value: Fraction, p: NormKind | str) -> Fraction:
    """Exact squared norm from a comparable value."""
    return value if NormKind.parse(p) is NormKind.L2 else value * value


def approx(value: Fraction, p: NormKind | str) -> float:
    """Decimal approximation of a norm value (display only)."""
    if NormKind.parse(p) is NormKind.L2:
        return float(value) ** 0.5
    return float(value)


def l2_radius_sq_for(value: Fraction, p: NormKind | str, dim: int) -> Fraction:
    """Squared l2 radius of a ball that contains the p-ball of comparable radius ``value``.

    ||v||_2 <= ||v||_1 and ||v||_2 <= sqrt(dim) * ||v||_inf.
    """
    p = NormKind.parse(p)
    if p is NormKind.L2:
        return value
    if p is NormKind.L1:
        return value * value
    return value * value * dim


def sqrt_floor(x: Fraction, scale: int = 10**12) -> Fraction:
    """Rational lower bound on sqrt(x), within 1/scale."""
    x = as_fraction(x)
    if x < 0:
        raise ValueError("negative")
    return Fraction(isqrt(x.numerator * scale * scale // x.denominator), scale)


def sqrt_ceil(x: Fraction, scale: int = 10**12) -> Fraction:
    """Rational upper bound on sqrt(x), within 1/scale."""
    lo = sqrt_floor(x, scale)
    return lo if lo * lo == x else lo + Fraction(1, scale)


# ---------------------------------------------------------------------------
# small exact linear algebra

def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def mat_vec(columns: Sequence[Sequence], x: Sequence) -> tuple:
    """sum_i x_i * columns[i]."""
    m = len(columns[0]) if columns else 0
    out = [0] * m
    for xi, col in zip(x, columns):
        if xi:
            for r in range(m):
                out[r] += xi * col[r]
    return tuple(out)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square system exactly; None when singular."""
    n = len(rows)
    a = [[as_fraction(x) for x in r] + [as_fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


# ---------------------------------------------------------------------------
# basis

@dataclass(frozen=True)
class Basis:
    """Integer lattice basis stored as a tuple of column vectors.

    ``m`` is the ambient dimension, ``n`` the rank.  Construction checks
    linear independence via the Gram determinant.
    """

    columns: tuple[tuple[int, ...], ...]
    _gram_det: int = field(default=0, repr=False, compare=False)

    def __init__(self, columns: Iterable[Iterable[int]]):
        cols = tuple(tuple(int(x) for x in c) for c in columns)
        if not cols:
            raise DegenerateBasisError("empty basis")
        m = len(cols[0])
        if any(len(c) != m for c in cols):
            raise DimensionError("columns have different lengths")
        object.__setattr__(self, "columns", cols)
        if len(cols) > m:
            raise DegenerateBasisError(f"rank {len(cols)} exceeds ambient dimension {m}")
        g = int_det(self.gram())
        if g == 0:
            raise DegenerateBasisError("basis columns are linearly dependent")
        object.__setattr__(self, "_gram_det", g)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "Basis":
        rows = [list(r) for r in rows]
        return cls(zip(*rows))

    @classmethod
    def identity(cls, n: int) -> "Basis":
        return cls(tuple(int(i == j) for i in range(n)) for j in range(n))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "Basis":
        n = len(entries)
        return cls(tuple(entries[j] if i == j else 0 for i in range(n)) for j in range(n))

    @property
    def m(self) -> int:
        return len(self.columns[0])

    @property
    def n(self) -> int:
        return len(self.columns)

    def rows(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(self.m)]

    def gram(self) -> list[list[int]]:
        return [[dot(a, b) for b in self.columns] for a in self.columns]

    def vector(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        if len(coeffs) != self.n:
            raise DimensionError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return mat_vec(self.columns, coeffs)

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.columns)


def as_basis(obj) -> Basis:
    return obj if isinstance(obj, Basis) else Basis(obj)


# ---------------------------------------------------------------------------
# determinant / GSO

@dataclass(frozen=True)
class Determinant:
    gram: int                 # det(B^T B) = det(L)^2
    absolute: int | None      # |det B| when B is square

    def approx(self) -> float:
        return float(self.gram) ** 0.5


def determinant(basis: Basis) -> Determinant:
    basis = as_basis(basis)
    g = basis._gram_det
    if basis.m == basis.n:
        return Determinant(g, abs(int_det(basis.rows())))
    return Determinant(g, None)


@dataclass(frozen=True)
class GsoResult:
    star: tuple[tuple[Fraction, ...], ...]
    mu: tuple[tuple[Fraction, ...], ...]    # mu[i][j] for j < i, zero elsewhere
    norms_sq: tuple[Fraction, ...]

    def product_sq(self) -> Fraction:
        out = Fraction(1)
        for b in self.norms_sq:
            out *= b
        return out


def gram_schmidt(basis: Basis) -> GsoResult:
    basis = as_basis(basis)
    n = basis.n
    star: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i, b in enumerate(basis.columns):
        v = [Fraction(x) for x in b]
        for j in range(i):
            mu[i][j] = dot(b, star[j]) / norms[j]
            v = [a - mu[i][j] * s for a, s in zip(v, star[j])]
        nv = dot(v, v)
        if nv == 0:
            raise DegenerateBasisError("basis columns are linearly dependent")
        star.append(v)
        norms.append(nv)
    return GsoResult(tuple(map(tuple, star)), tuple(map(tuple, mu)), tuple(norms))


def least_squares_coordinates(basis: Basis, v: Sequence) -> list[Fraction]:
    """Exact x minimising ||Bx - v||_2 (the coordinates of v's projection)."""
    basis = as_basis(basis)
    if len(v) != basis.m:
        raise DimensionError(f"vector has length {len(v)}, ambient dimension is {basis.m}")
    x = solve_rational(basis.gram(), [dot(c, v) for c in basis.columns])
    if x is None:  # pragma: no cover - basis is independent
        raise DegenerateBasisError("singular Gram matrix")
    return x


def coordinates(basis: Basis, v: Sequence) -> list[Fraction] | None:
    """Exact x with Bx = v, or None if v is outside the column span."""
    x = least_squares_coordinates(basis, v)
    if tuple(mat_vec(as_basis(basis).columns, x)) != tuple(as_fraction(t) for t in v):
        return None
    return x


def is_member(basis: Basis, v: Sequence) -> bool:
    x = coordinates(basis, v)
    return x is not None and all(c.denominator == 1 for c in x)


def integer_coordinates(basis: Basis, v: Sequence) -> tuple[int, ...]:
    x = coordinates(basis, v)
    if x is None or any(c.denominator != 1 for c in x):
        raise ValueError("vector is not in the lattice")
    return tuple(int(c) for c in x)


# ---------------------------------------------------------------------------
# Hermite normal form

def hnf_columns(generators: Iterable[Sequence[int]], m: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Column-style Hermite normal form of the lattice spanned by ``generators``.

    Generators may be dependent; zero columns are dropped.  Each pivot is
    positive and entries to the left of a pivot (in its row) lie in
    [0, pivot).  The result is a canonical basis of the generated lattice.
    """
    cols = [list(c) for c in generators]
    if not cols:
        return ()
    if m is None:
        m = len(cols[0])
    k = 0
    pivots: list[int] = []
    for r in range(m):
        if k >= len(cols):
            break
        while True:
            nz = [j for j in range(k, len(cols)) if cols[j][r] != 0]
            if len(nz) <= 1:
                break
            j_min = min(nz, key=lambda j: abs(cols[j][r]))
            piv = cols[j_min]
            for j in nz:
                if j != j_min:
                    qt = cols[j][r] // piv[r]
                    cols[j] = [a - qt * b for a, b in zip(cols[j], piv)]
        nz = [j for j in range(k, len(cols)) if cols[j][r] != 0]
        if not nz:
            continue
        j = nz[0]
        cols[k], cols[j] = cols[j], cols[k]
        if cols[k][r] < 0:
            cols[k] = [-a for a in cols[k]]
        p = cols[k][r]
        for j in range(k):
            qt = cols[j][r] // p
            if qt:
                cols[j] = [a - qt * b for a, b in zip(cols[j], cols[k])]
        pivots.append(r)
        k += 1
    return tuple(tuple(c) for c in cols[:k])


def hermite_normal_form(basis: Basis) -> Basis:
    basis = as_basis(basis)
    return Basis(hnf_columns(basis.columns, basis.m))


def lattice_equal(a: Basis, b: Basis) -> bool:
    a, b = as_basis(a), as_basis(b)
    if a.m != b.m:
        raise DimensionError("bases live in different ambient dimensions")
    if a.n != b.n:
        return False
    return hnf_columns(a.columns, a.m) == hnf_columns(b.columns, b.m)


# ---------------------------------------------------------------------------
# unimodular randomisation

def random_unimodular(n: int, seed: int) -> list[list[int]]:
    """n x n unimodular matrix (rows) built from 10*n elementary column operations."""
    rng = random.Random(seed)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(10 * n):
        op = rng.randrange(3) if n > 1 else 1
        if op == 0:
            i, j = rng.sample(range(n), 2)
            for row in u:
                row[i], row[j] = row[j], row[i]
        elif op == 1:
            i = rng.randrange(n)
            for row in u:
                row[i] = -row[i]
        else:
            i, j = rng.sample(range(n), 2)
            k = rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
            for row in u:
                row[i] += k * row[j]
    return u


def apply_transform(basis: Basis, u: Sequence[Sequence[int]]) -> Basis:
    """B * U, with U given as rows."""
    basis = as_basis(basis)
    n = basis.n
    cols = [basis.vector([u[i][j] for i in range(n)]) for j in range(n)]
    return Basis(cols)


def unimodular_randomize(basis: Basis, seed: int) -> Basis:
    basis = as_basis(basis)
    return apply_transform(basis, random_unimodular(basis.n, seed))


# ---------------------------------------------------------------------------
# LLL

def lll_with_transform(basis: Basis, delta: Fraction = Fraction(3, 4)) -> tuple[Basis, list[list[int]]]:
    """Exact LLL.  Returns the reduced basis and U (rows) with reduced = B * U."""
    basis = as_basis(basis)
    delta = as_fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    n = basis.n
    b = [list(c) for c in basis.columns]
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # u[col] = coefficient column

    gso = gram_schmidt(basis)
    mu = [list(r) for r in gso.mu]
    bs = list(gso.norms_sq)

    def size_reduce(k: int, j: int) -> None:
        q = round(mu[k][j])
        if q:
            b[k] = [x - q * y for x, y in zip(b[k], b[j])]
            u[k] = [x - q * y for x, y in zip(u[k], u[j])]
            for l in range(j):
                mu[k][l] -= q * mu[j][l]
            mu[k][j] -= q

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                size_reduce(k, j)
        if bs[k] >= (delta - mu[k][k - 1] ** 2) * bs[k - 1]:
            k += 1
            continue
        # swap k-1, k and update GSO data
        b[k - 1], b[k] = b[k], b[k - 1]
        u[k - 1], u[k] = u[k], u[k - 1]
        m_ = mu[k][k - 1]
        B = bs[k] + m_ * m_ * bs[k - 1]
        mu[k][k - 1] = m_ * bs[k - 1] / B
        bs[k] = bs[k - 1] * bs[k] / B
        bs[k - 1] = B
        for j in range(k - 1):
            mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
        for i in range(k + 1, n):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m_ * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
        k = max(k - 1, 1)
    rows_u = [[u[j][i] for j in range(n)] for i in range(n)]
    return Basis(b), rows_u


def lll_reduce(basis: Basis, delta: Fraction = Fraction(3, 4)) -> Basis:
    return lll_with_transform(basis, delta)[0]


def is_lll_reduced(basis: Basis, delta: Fraction = Fraction(3, 4)) -> bool:
    gso = gram_schmidt(basis)
    n = len(gso.norms_sq)
    for i in range(n):
        for j in range(i):
            if abs(gso.mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if gso.norms_sq[k] < (as_fraction(delta) - gso.mu[k][k - 1] ** 2) * gso.norms_sq[k - 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# matrix text format

def parse_matrix_text(text: str) -> Basis:
    """First line "m n", then m lines of n integers; columns are basis vectors."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("first line must be 'm n'")
    m, n = (int(t) for t in lines[0])
    body = lines[1:]
    if len(body) != m or any(len(r) != n for r in body):
        raise ValueError(f"expected {m} rows of {n} integers")
    return Basis.from_rows([[int(t) for t in r] for r in body])


def format_matrix_text(basis: Basis) -> str:
    basis = as_basis(basis)
    lines = [f"{basis.m} {basis.n}"]
    lines += [" ".join(str(x) for x in row) for row in basis.rows()]
    return "\n".join(lines) + "\n"
