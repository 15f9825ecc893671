"""Exact desk-scale solvers for the classical lattice problems.

All solvers reduce the input with LLL, enumerate on the reduced basis, and
report coefficient vectors relative to the *input* basis.  Every certificate
is re-checked (membership, norms, constraints) before ``verified`` is set.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (
    Basis,
    NormKind,
    approx,
    as_basis,
    as_fraction,
    determinant,
    dot,
    gram_schmidt,
    int_det,
    integer_coordinates,
    l2_radius_sq_for,
    least_squares_coordinates,
    lll_with_transform,
    mat_vec,
    radius_value,
    scale_value,
    sqrt_ceil,
    sqrt_floor,
    squared_value,
    vector_norm,
)
from .enumeration import Enumerator
from .errors import DimensionError, InvalidParameterError, ResourceLimitError

MAX_RANK_SVP = 12
MAX_RANK_CVP = 10
MAX_RANK_MINIMA = 8
MAX_RANK_SBP = 3
MAX_RANK_CRP = 3


class PromiseDecision(enum.Enum):
    YES = "yes"
    NO = "no"
    PROMISE_VIOLATED = "promise-violated"
    # covering radius only: the grid bounds do not settle the instance
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class SolutionCertificate:
    problem: str
    status: str                                   # solved | failed | promise-violated
    coefficients: tuple[tuple[int, ...], ...]
    vectors: tuple[tuple[int, ...], ...]
    norm: NormKind
    norm_value: Fraction | None                   # comparable value (squared for l2)
    verified: bool
    solver: str
    nodes: int = 0
    promise: bool | None = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def vector(self) -> tuple[int, ...]:
        return self.vectors[0]

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.coefficients[0]

    @property
    def norm_squared(self) -> Fraction | None:
        return None if self.norm_value is None else squared_value(self.norm_value, self.norm)

    def approx_norm(self) -> float | None:
        return None if self.norm_value is None else approx(self.norm_value, self.norm)


def check_rank(basis: Basis, limit: int, what: str) -> None:
    if basis.n > limit:
        raise ResourceLimitError(f"{what}: rank {basis.n} exceeds desk-scale limit {limit}")


def check_gamma(gamma) -> Fraction:
    gamma = as_fraction(gamma)
    if gamma < 1:
        raise InvalidParameterError("gamma must be >= 1")
    return gamma


def canonical_key(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Sort key for tie-breaking: lexicographically greatest coefficient vector first.

    Combined with sign normalisation this prefers vectors supported on the
    earliest basis columns, e.g. (1, 0) over (0, 1) in Z^2.
    """
    return tuple(-c for c in coeffs)


def sign_normalize(coeffs: Sequence[int]) -> tuple[int, ...]:
    for c in coeffs:
        if c:
            return tuple(coeffs) if c > 0 else tuple(-x for x in coeffs)
    return tuple(coeffs)


def rank_of(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    rank, width = 0, len(rows[0])
    for c in range(width):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [p[c] * a - f * b for a, b in zip(rows[r], p)]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# enumeration front-ends

class _Reduced:
    """LLL-reduced working copy of a basis plus the map back to input coefficients."""

    def __init__(self, basis: Basis):
        self.basis = basis
        self.red, self.u = lll_with_transform(basis)
        self.gso = gram_schmidt(self.red)

    def to_input(self, y: Sequence[int]) -> tuple[int, ...]:
        n = len(y)
        return tuple(sum(self.u[i][j] * y[j] for j in range(n)) for i in range(n))

    def ambient(self, y: Sequence[int]) -> tuple[int, ...]:
        return mat_vec(self.red.columns, y)

    def target_split(self, target: Sequence[Fraction]) -> tuple[list[Fraction], Fraction]:
        """GSO coordinates of the target and the squared length of its out-of-span part."""
        tau = [dot(target, s) / b for s, b in zip(self.gso.star, self.gso.norms_sq)]
        inside = sum((t * t * b for t, b in zip(tau, self.gso.norms_sq)), Fraction(0))
        return tau, vector_norm(target, NormKind.L2) - inside


def _target(basis: Basis, target) -> tuple[Fraction, ...]:
    t = tuple(as_fraction(x) for x in target)
    if len(t) != basis.m:
        raise DimensionError(f"target has length {len(t)}, ambient dimension is {basis.m}")
    return t


def _diff(t: Sequence[Fraction], v: Sequence[int]) -> tuple[Fraction, ...]:
    return tuple(a - b for a, b in zip(t, v))


def _closest(work: _Reduced, p: NormKind, target=None):
    """All optimal lattice points (nonzero when ``target`` is None).

    Returns (best value, list of input-basis coefficient vectors, nodes).
    """
    m = work.red.m
    if target is None:
        tau, perp = None, Fraction(0)
        best = min(vector_norm(c, p) for c in work.red.columns)
    else:
        tau, perp = work.target_split(target)
        # rounding the least-squares coordinates gives a valid starting radius
        start = tuple(round(c) for c in least_squares_coordinates(work.red, target))
        best = vector_norm(_diff(target, work.ambient(start)), p)
    found: list[tuple[int, ...]] = []
    state = {"best": best}

    def visit(y, d_in):
        if target is None:
            if not any(y):
                return None
            val = vector_norm(work.ambient(y), p)
        else:
            val = vector_norm(_diff(target, work.ambient(y)), p)
        if val < state["best"]:
            state["best"] = val
            found.clear()
        if val == state["best"]:
            found.append(y)
            return l2_radius_sq_for(val, p, m) - perp
        return None

    en = Enumerator(work.gso, tau)
    nodes = en.run(l2_radius_sq_for(best, p, m) - perp, visit)
    return state["best"], [work.to_input(y) for y in found], nodes


def short_vectors(basis: Basis, p: NormKind, bound: Fraction, *, strict: bool = False,
                  work: _Reduced | None = None) -> tuple[list[tuple[tuple[int, ...], tuple[int, ...], Fraction]], int]:
    """Every nonzero lattice vector with norm value <= bound (or < bound).

    Returns ``([(input coeffs, ambient vector, value), ...], nodes)``; both
    signs of each vector are included.
    """
    work = work or _Reduced(basis)
    out = []

    def visit(y, d):
        if not any(y):
            return None
        v = work.ambient(y)
        val = vector_norm(v, p)
        if val < bound or (val == bound and not strict):
            out.append((work.to_input(y), v, val))
        return None

    nodes = Enumerator(work.gso).run(l2_radius_sq_for(bound, p, work.red.m), visit)
    return out, nodes


def verify_lattice_vector(basis: Basis, coeffs: Sequence[int], vector: Sequence[int]) -> bool:
    """Independent check: ``vector`` is in L(B) with exactly these coefficients."""
    try:
        return integer_coordinates(basis, vector) == tuple(coeffs)
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# SVP / CVP

def svp_exact(basis: Basis, p: NormKind | str = NormKind.L2, gamma=1) -> SolutionCertificate:
    """Shortest nonzero vector, exactly.  ``gamma`` is accepted for SVP_gamma and only verified."""
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma = check_gamma(gamma)
    check_rank(basis, MAX_RANK_SVP, "svp_exact")
    work = _Reduced(basis)
    best, found, nodes = _closest(work, p)
    coeffs = min((sign_normalize(x) for x in found), key=canonical_key)
    v = basis.vector(coeffs)
    ok = verify_lattice_vector(basis, coeffs, v) and any(coeffs) and vector_norm(v, p) == best
    ok = ok and vector_norm(v, p) <= scale_value(best, gamma, p)
    return SolutionCertificate("svp", "solved", (coeffs,), (v,), p, best, ok, "fincke-pohst",
                               nodes, details={"lambda1": best, "ties": len(found)})


def cvp_exact(basis: Basis, target, p: NormKind | str = NormKind.L2, gamma=1) -> SolutionCertificate:
    """Lattice vector closest to ``target`` (rational, length m), exactly."""
    basis, p = as_basis(basis), NormKind.parse(p)
    check_gamma(gamma)
    check_rank(basis, MAX_RANK_CVP, "cvp_exact")
    t = _target(basis, target)
    work = _Reduced(basis)
    best, found, nodes = _closest(work, p, t)
    coeffs = min(found, key=canonical_key)
    v = basis.vector(coeffs)
    ok = verify_lattice_vector(basis, coeffs, v) and vector_norm(_diff(t, v), p) == best
    return SolutionCertificate("cvp", "solved", (coeffs,), (v,), p, best, ok, "fincke-pohst",
                               nodes, details={"distance": best, "ties": len(found)})


def svp_approx(basis: Basis, p: NormKind | str = NormKind.L2, gamma=2) -> SolutionCertificate:
    """SVP_gamma: the shortest LLL column when it is within gamma * lambda1, else exact SVP."""
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma = check_gamma(gamma)
    exact = svp_exact(basis, p)
    red, u = lll_with_transform(basis)
    j = min(range(basis.n), key=lambda k: vector_norm(red.columns[k], p))
    value = vector_norm(red.columns[j], p)
    if value > scale_value(exact.norm_value, gamma, p):
        return SolutionCertificate("svp-approx", "solved", exact.coefficients, exact.vectors, p,
                                   exact.norm_value, exact.verified, exact.solver, exact.nodes,
                                   details={"lambda1": exact.norm_value})
    coeffs = tuple(u[i][j] for i in range(basis.n))
    v = basis.vector(coeffs)
    ok = verify_lattice_vector(basis, coeffs, v) and any(coeffs)
    return SolutionCertificate("svp-approx", "solved", (coeffs,), (v,), p, value, ok, "lll",
                               details={"lambda1": exact.norm_value})


def shortest_value(basis: Basis, p: NormKind | str = NormKind.L2) -> Fraction:
    return svp_exact(basis, p).norm_value


def exists_within(basis: Basis, p: NormKind | str, bound: Fraction, target=None, *,
                  strict: bool = False) -> bool:
    """Is there a nonzero lattice vector (or, with a target, any lattice vector
    within distance) whose norm value is <= bound (< bound if strict)?

    Stops at the first hit.
    """
    basis, p = as_basis(basis), NormKind.parse(p)
    work = _Reduced(basis)
    if target is None:
        tau, perp = None, Fraction(0)
    else:
        tau, perp = work.target_split(target)
    hit = []

    class _Stop(Exception):
        pass

    def visit(y, d):
        if target is None:
            if not any(y):
                return None
            val = vector_norm(work.ambient(y), p)
        else:
            val = vector_norm(_diff(target, work.ambient(y)), p)
        if val < bound or (val == bound and not strict):
            hit.append(y)
            raise _Stop
        return None

    radius = l2_radius_sq_for(bound, p, basis.m) - perp
    if radius < 0:
        return False
    try:
        Enumerator(work.gso, tau).run(radius, visit)
    except _Stop:
        return True
    return False


# ---------------------------------------------------------------------------
# successive minima, SIVP, uSVP, BDD

@dataclass(frozen=True)
class SuccessiveMinima:
    norm: NormKind
    values: tuple[Fraction, ...]                 # comparable values
    coefficients: tuple[tuple[int, ...], ...]
    vectors: tuple[tuple[int, ...], ...]

    def approx(self) -> list[float]:
        return [approx(v, self.norm) for v in self.values]


def successive_minima(basis: Basis, p: NormKind | str = NormKind.L2, k: int | None = None) -> SuccessiveMinima:
    basis, p = as_basis(basis), NormKind.parse(p)
    k = basis.n if k is None else k
    if not 1 <= k <= basis.n:
        raise InvalidParameterError(f"k must lie in 1..{basis.n}")
    check_rank(basis, MAX_RANK_MINIMA, "successive_minima")
    work = _Reduced(basis)
    # the reduced columns are n independent vectors, so lambda_n <= their max norm
    bound = max(vector_norm(c, p) for c in work.red.columns)
    cands, _ = short_vectors(basis, p, bound, work=work)
    seen = set()
    uniq = []
    for x, v, val in cands:
        x = sign_normalize(x)
        if x not in seen:
            seen.add(x)
            uniq.append((val, canonical_key(x), x))
    uniq.sort()
    chosen: list[tuple[int, ...]] = []
    values: list[Fraction] = []
    for val, _, x in uniq:
        if rank_of(chosen + [x]) > len(chosen):
            chosen.append(x)
            values.append(val)
            if len(chosen) == k:
                break
    vecs = tuple(basis.vector(x) for x in chosen)
    return SuccessiveMinima(p, tuple(values), tuple(chosen), vecs)


def sivp_solve(basis: Basis, p: NormKind | str = NormKind.L2, gamma=1) -> SolutionCertificate:
    """n independent vectors with max norm <= gamma * lambda_n.

    When the LLL basis already meets the bound it is returned; otherwise the
    successive-minima witnesses.
    """
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma = check_gamma(gamma)
    sm = successive_minima(basis, p)
    lam_n = sm.values[-1]
    limit = scale_value(lam_n, gamma, p)
    red, u = lll_with_transform(basis)
    if gamma > 1 and max(vector_norm(c, p) for c in red.columns) <= limit:
        coeffs = tuple(tuple(u[i][j] for i in range(basis.n)) for j in range(basis.n))
        solver = "lll"
    else:
        coeffs, solver = sm.coefficients, "successive-minima"
    vecs = tuple(basis.vector(c) for c in coeffs)
    worst = max(vector_norm(v, p) for v in vecs)
    ok = (all(verify_lattice_vector(basis, c, v) for c, v in zip(coeffs, vecs))
          and rank_of(coeffs) == basis.n and worst <= limit)
    return SolutionCertificate("sivp", "solved", coeffs, vecs, p, worst, ok, solver,
                               details={"lambda_n": lam_n, "minima": sm.values})


def usvp_solve(basis: Basis, p: NormKind | str = NormKind.L2, gamma=1) -> SolutionCertificate:
    """Shortest vector plus an exhaustive check of the gamma-uniqueness promise."""
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma = check_gamma(gamma)
    check_rank(basis, MAX_RANK_MINIMA, "usvp_solve")
    sv = svp_exact(basis, p)
    u = sv.coeffs
    cands, nodes = short_vectors(basis, p, scale_value(sv.norm_value, gamma, p))
    offenders = [x for x, _, _ in cands if rank_of([u, x]) > 1]
    holds = not offenders
    return SolutionCertificate(
        "usvp", "solved" if holds else "promise-violated", sv.coefficients, sv.vectors, p,
        sv.norm_value, sv.verified, "fincke-pohst", sv.nodes + nodes, promise=holds,
        details={"lambda1": sv.norm_value, "checked": len(cands),
                 "witness": sign_normalize(offenders[0]) if offenders else None})


def bdd_solve(basis: Basis, target, p: NormKind | str = NormKind.L2, alpha=1) -> SolutionCertificate:
    """Exact decoding plus a report of whether dist < alpha * lambda1 held."""
    basis, p = as_basis(basis), NormKind.parse(p)
    alpha = as_fraction(alpha)
    if alpha <= 0:
        raise InvalidParameterError("alpha must be positive")
    check_rank(basis, MAX_RANK_MINIMA, "bdd_solve")
    cv = cvp_exact(basis, target, p)
    lam = shortest_value(basis, p)
    holds = cv.norm_value < scale_value(lam, alpha, p)
    return SolutionCertificate("bdd", "solved", cv.coefficients, cv.vectors, p, cv.norm_value,
                               cv.verified, "fincke-pohst", cv.nodes, promise=holds,
                               details={"distance": cv.norm_value, "lambda1": lam, "alpha": alpha})


# ---------------------------------------------------------------------------
# SBP, SLP

def sbp_bruteforce(basis: Basis, p: NormKind | str = NormKind.L2, gamma=1) -> SolutionCertificate:
    """A basis whose longest column is within gamma of the best possible."""
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma = check_gamma(gamma)
    check_rank(basis, MAX_RANK_SBP, "sbp_bruteforce")
    n = basis.n
    red, u = lll_with_transform(basis)
    red_max = max(vector_norm(c, p) for c in red.columns)
    cands, nodes = short_vectors(basis, p, red_max)
    by_x = {}
    for x, v, val in cands:
        by_x.setdefault(sign_normalize(x), val)
    pool = sorted(by_x.items(), key=lambda kv: (kv[1], canonical_key(kv[0])))
    levels = sorted(set(by_x.values()))
    best = None
    for level in levels:
        usable = [x for x, val in pool if val <= level]
        top = [x for x in usable if by_x[x] == level]
        for t in top:
            others = [x for x in usable if x != t]
            for combo in itertools.combinations(others, n - 1):
                if abs(int_det([t, *combo])) == 1:
                    best = (level, tuple(sorted((t, *combo), key=lambda x: (by_x[x], canonical_key(x)))))
                    break
            if best:
                break
        if best:
            break
    if best is None:  # pragma: no cover - the reduced basis itself is a candidate
        raise AssertionError("no basis found among short vectors")
    opt, coeffs = best
    if gamma > 1 and red_max <= scale_value(opt, gamma, p):
        coeffs = tuple(tuple(u[i][j] for i in range(n)) for j in range(n))
        solver = "lll"
    else:
        solver = "exhaustive"
    vecs = tuple(basis.vector(c) for c in coeffs)
    worst = max(vector_norm(v, p) for v in vecs)
    ok = (abs(int_det(coeffs)) == 1 and worst <= scale_value(opt, gamma, p)
          and all(verify_lattice_vector(basis, c, v) for c, v in zip(coeffs, vecs)))
    return SolutionCertificate("sbp", "solved", coeffs, vecs, p, worst, ok, solver, nodes,
                               details={"optimal": opt})


@dataclass(frozen=True)
class SlpBounds:
    norm: NormKind
    lower: Fraction      # comparable values
    upper: Fraction

    def approx(self) -> tuple[float, float]:
        return approx(self.lower, self.norm), approx(self.upper, self.norm)


def slp_bounds(basis: Basis, p: NormKind | str = NormKind.L2) -> SlpBounds:
    """lower <= lambda1 <= upper from GSO lengths and column lengths.

    For l1 and linf the l2 lower bound is converted (||v||_1 >= ||v||_2,
    ||v||_inf >= ||v||_2 / sqrt(m)) and rounded down to a rational.
    """
    basis, p = as_basis(basis), NormKind.parse(p)
    gso = gram_schmidt(basis)
    low_sq = min(gso.norms_sq)
    upper = min(vector_norm(c, p) for c in basis.columns)
    if p is NormKind.L2:
        lower = low_sq
    elif p is NormKind.L1:
        lower = sqrt_floor(low_sq)
    else:
        lower = sqrt_floor(low_sq / basis.m)
    return SlpBounds(p, lower, upper)


# ---------------------------------------------------------------------------
# covering radius

@dataclass(frozen=True)
class CoveringBounds:
    """Squared l2 bounds on the covering radius."""
    lower_sq: Fraction
    upper_sq: Fraction
    deep_hole: tuple[Fraction, ...]

    def approx(self) -> tuple[float, float]:
        return float(self.lower_sq) ** 0.5, float(self.upper_sq) ** 0.5


def covering_radius_estimate(basis: Basis, resolution: int = 8) -> CoveringBounds:
    """Bracket the l2 covering radius with a grid over the fundamental parallelepiped.

    Every point of a grid cell is within half the sum of the cell's edge
    lengths of a grid corner, which gives the upper slack.
    """
    basis = as_basis(basis)
    check_rank(basis, MAX_RANK_CRP, "covering_radius_estimate")
    if resolution < 2:
        raise InvalidParameterError("resolution must be >= 2")
    work = _Reduced(basis)
    best, hole = Fraction(-1), None
    for ks in itertools.product(range(resolution + 1), repeat=basis.n):
        t = mat_vec(basis.columns, [Fraction(k, resolution) for k in ks])
        d, _, _ = _closest(work, NormKind.L2, t)
        if d > best:
            best, hole = d, t
    slack = sum((sqrt_ceil(vector_norm(c, NormKind.L2)) for c in basis.columns), Fraction(0))
    slack /= 2 * resolution
    upper = (sqrt_ceil(best) + slack) ** 2
    return CoveringBounds(best, upper, tuple(hole))


# ---------------------------------------------------------------------------
# promise problems

def _threshold(value: Fraction, d, gamma, p: NormKind) -> PromiseDecision:
    if value <= radius_value(d, p):
        return PromiseDecision.YES
    if value > scale_value(radius_value(d, p), gamma, p):
        return PromiseDecision.NO
    return PromiseDecision.PROMISE_VIOLATED


def decide_gap_svp(basis: Basis, p: NormKind | str, d, gamma) -> PromiseDecision:
    """GapSVP via two bounded existence queries (no search)."""
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma, d = check_gamma(gamma), as_fraction(d)
    check_rank(basis, MAX_RANK_SVP, "decide_gap_svp")
    if d <= 0:
        raise InvalidParameterError("d must be positive")
    if exists_within(basis, p, radius_value(d, p)):
        return PromiseDecision.YES
    if exists_within(basis, p, scale_value(radius_value(d, p), gamma, p)):
        return PromiseDecision.PROMISE_VIOLATED
    return PromiseDecision.NO


def decide_gap_cvp(basis: Basis, target, p: NormKind | str, d, gamma) -> PromiseDecision:
    """GapCVP via two bounded existence queries (no search)."""
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma, d = check_gamma(gamma), as_fraction(d)
    check_rank(basis, MAX_RANK_CVP, "decide_gap_cvp")
    if d <= 0:
        raise InvalidParameterError("d must be positive")
    t = _target(basis, target)
    if exists_within(basis, p, radius_value(d, p), t):
        return PromiseDecision.YES
    if exists_within(basis, p, scale_value(radius_value(d, p), gamma, p), t):
        return PromiseDecision.PROMISE_VIOLATED
    return PromiseDecision.NO


def decide_crp(basis: Basis, r, gamma, resolution: int = 8) -> PromiseDecision:
    """CRP from grid bounds; UNRESOLVED when the bounds straddle a threshold."""
    gamma, r = check_gamma(gamma), as_fraction(r)
    if r <= 0:
        raise InvalidParameterError("r must be positive")
    cb = covering_radius_estimate(basis, resolution)
    r_sq, gr_sq = r * r, gamma * gamma * r * r
    if cb.upper_sq <= r_sq:
        return PromiseDecision.YES
    if gr_sq < cb.lower_sq:
        return PromiseDecision.NO
    if r_sq < cb.lower_sq and cb.upper_sq <= gr_sq:
        return PromiseDecision.PROMISE_VIOLATED
    return PromiseDecision.UNRESOLVED


def minkowski_holds(basis: Basis, lambda1_sq: Fraction) -> bool:
    """lambda1 <= sqrt(n) det^(1/n), compared as 2n-th powers: lambda1^2n <= n^n det^2."""
    basis = as_basis(basis)
    n = basis.n
    return lambda1_sq ** n <= Fraction(n) ** n * determinant(basis).gram
