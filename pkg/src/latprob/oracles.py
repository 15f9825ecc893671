"""Exhaustive-search oracles used to cross-check the enumeration solvers.

They share nothing with the Fincke-Pohst code except LLL, which only changes
the basis of the lattice.  Every coefficient of a vector of l2 length at most
R is bounded through the inverse Gram matrix: x_i^2 <= (G^-1)_ii R^2.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt, prod

import numpy as np

from . import _kernels
from .core import (
    Basis,
    NormKind,
    as_basis,
    as_fraction,
    int_det,
    l2_radius_sq_for,
    least_squares_coordinates,
    lll_reduce,
    solve_rational,
    vector_norm,
)
from .errors import ResourceLimitError

MAX_BOX = 10**8
_PCODE = {NormKind.L2: _kernels.P_L2, NormKind.L1: _kernels.P_L1, NormKind.LINF: _kernels.P_LINF}


def _inverse_gram_diagonal(basis: Basis) -> list[Fraction]:
    g = basis.gram()
    n = basis.n
    out = []
    for i in range(n):
        col = solve_rational(g, [int(j == i) for j in range(n)])
        out.append(col[i])
    return out


def coefficient_box(basis: Basis, radius_sq: Fraction) -> list[int]:
    """Per-coordinate bounds on x for every x with ||B x||_2^2 <= radius_sq."""
    radius_sq = as_fraction(radius_sq)
    bounds = [isqrt(int(d * radius_sq)) for d in _inverse_gram_diagonal(basis)]
    if prod(2 * k + 1 for k in bounds) > MAX_BOX:
        raise ResourceLimitError("coefficient box too large for exhaustive search")
    return bounds


def _prepare(basis, p, reduce):
    basis, p = as_basis(basis), NormKind.parse(p)
    return (lll_reduce(basis) if reduce else basis), p


def bruteforce_svp_value(basis: Basis, p: NormKind | str = NormKind.L2, *, reduce: bool = True) -> Fraction:
    """lambda1 as a comparable norm value, by scanning a whole coefficient box."""
    work, p = _prepare(basis, p, reduce)
    upper = min(vector_norm(c, p) for c in work.columns)
    bounds = coefficient_box(work, l2_radius_sq_for(upper, p, work.m))
    rows = np.array(work.rows(), dtype=np.int64)
    peak = max(sum(abs(int(b)) * k for b, k in zip(r, bounds)) for r in rows)
    _kernels.check_int64_safe(work.m * peak * peak)
    value, _ = _kernels.box_min_norm(rows, np.array(bounds, dtype=np.int64), _PCODE[p])
    return Fraction(value)


def bruteforce_cvp_value(basis: Basis, target, p: NormKind | str = NormKind.L2, *,
                         reduce: bool = True) -> Fraction:
    """Distance from ``target`` to the lattice as a comparable value (pure Python scan)."""
    work, p = _prepare(basis, p, reduce)
    t = [as_fraction(x) for x in target]
    a = least_squares_coordinates(work, t)
    start = work.vector([round(c) for c in a])
    upper = vector_norm([x - y for x, y in zip(t, start)], p)
    bounds = coefficient_box(work, l2_radius_sq_for(upper, p, work.m))
    centre = [int(c) for c in a]   # truncation; widen by one to cover the fractional part
    best = upper
    for off in itertools.product(*[range(-k - 1, k + 2) for k in bounds]):
        v = work.vector([c + o for c, o in zip(centre, off)])
        d = vector_norm([x - y for x, y in zip(t, v)], p)
        if d < best:
            best = d
    return best


def bruteforce_sbp_value(basis: Basis, p: NormKind | str = NormKind.L2) -> Fraction:
    """Smallest possible max-column norm over all bases of the lattice (rank <= 3)."""
    basis, p = as_basis(basis), NormKind.parse(p)
    if basis.n > 3:
        raise ResourceLimitError("bruteforce_sbp_value supports rank <= 3")
    work = lll_reduce(basis)
    upper = max(vector_norm(c, p) for c in work.columns)
    bounds = coefficient_box(work, l2_radius_sq_for(upper, p, work.m))
    short = []
    for x in itertools.product(*[range(-k, k + 1) for k in bounds]):
        if any(x):
            val = vector_norm(work.vector(x), p)
            if val <= upper:
                short.append((val, x))
    short.sort()
    best = upper
    for combo in itertools.combinations(short, basis.n):
        worst = max(v for v, _ in combo)
        if worst >= best:
            continue
        if abs(int_det([list(x) for _, x in combo])) == 1:
            best = worst
    return best
