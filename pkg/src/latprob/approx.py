"""Rounding-based approximate CVP, SVP through a CVP oracle, and Hermite-SVP."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .core import (
    Basis,
    NormKind,
    approx,
    as_basis,
    as_fraction,
    coordinates,
    determinant,
    integer_coordinates,
    lll_with_transform,
    scale_value,
    squared_value,
    vector_norm,
)
from .errors import DegenerateBasisError, DimensionError, OracleError
from .exact import (
    MAX_RANK_SVP,
    SolutionCertificate,
    canonical_key,
    check_gamma,
    check_rank,
    cvp_exact,
    sign_normalize,
    svp_exact,
    verify_lattice_vector,
)

CvpOracle = Callable[[Basis, Sequence[int], NormKind], Sequence[int]]


def babai_round_cvp(basis: Basis, target, p: NormKind | str = NormKind.L2) -> SolutionCertificate:
    """Solve B a = y exactly, round a coordinatewise (half to even), return B z.

    No optimality is claimed; ``details["a"]`` keeps the unrounded solution.
    """
    basis, p = as_basis(basis), NormKind.parse(p)
    y = tuple(as_fraction(t) for t in target)
    if len(y) != basis.m:
        raise DimensionError(f"target has length {len(y)}, ambient dimension is {basis.m}")
    a = coordinates(basis, y)
    if a is None:
        raise DegenerateBasisError("target lies outside the column span of the basis")
    z = tuple(round(c) for c in a)   # Fraction.__round__ rounds half to even
    v = basis.vector(z)
    err = vector_norm([t - x for t, x in zip(y, v)], p)
    return SolutionCertificate("cvp-approx", "solved", (z,), (v,), p, err,
                               verify_lattice_vector(basis, z, v), "babai-rounding",
                               details={"a": tuple(a), "error": err})


def cvp_approx(basis: Basis, target, p: NormKind | str = NormKind.L2, gamma=2) -> SolutionCertificate:
    """CVP_gamma: the rounding answer when it is within gamma of the optimum, else exact CVP.

    The target must lie in the column span (rounding needs exact coordinates).
    """
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma = check_gamma(gamma)
    best = cvp_exact(basis, target, p)
    rounded = babai_round_cvp(basis, target, p)
    pick = rounded if rounded.norm_value <= scale_value(best.norm_value, gamma, p) else best
    return SolutionCertificate("cvp-approx", "solved", pick.coefficients, pick.vectors, p,
                               pick.norm_value, pick.verified, pick.solver, best.nodes,
                               details={"distance": best.norm_value})


@dataclass(frozen=True)
class ErrorBoundReport:
    norm: NormKind
    sum_bound: Fraction          # comparable value of ||sum_i b_i||
    half_sum_bound: Fraction     # comparable value of ||sum_i b_i|| / 2
    fingerprint: str

    def approx(self) -> tuple[float, float]:
        return approx(self.sum_bound, self.norm), approx(self.half_sum_bound, self.norm)


def basis_fingerprint(basis: Basis) -> str:
    text = ";".join(",".join(map(str, c)) for c in as_basis(basis).columns)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def babai_error_bound(basis: Basis, p: NormKind | str = NormKind.L2) -> ErrorBoundReport:
    """||sum b_i|| and half of it, as exact comparable values.

    The worked values 1.4 and 199 for the identity and {(100,1),(99,1)} match
    the full sum; the half-sum is the textbook form of the bound.
    """
    basis, p = as_basis(basis), NormKind.parse(p)
    s = [sum(col[r] for col in basis.columns) for r in range(basis.m)]
    full = vector_norm(s, p)
    return ErrorBoundReport(p, full, scale_value(full, Fraction(1, 2), p), basis_fingerprint(basis))


@dataclass
class ReductionTranscript:
    preprocessing: str
    reduced_basis: Basis | None
    oracle_calls: list[tuple[Basis, tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    candidates: list[tuple[int, ...]] = field(default_factory=list)
    chosen: int = -1

    def as_dict(self) -> dict:
        return {
            "preprocessing": self.preprocessing,
            "reduced_basis": None if self.reduced_basis is None else [list(c) for c in self.reduced_basis],
            "oracle_calls": [{"basis": [list(c) for c in b], "target": list(t), "answer": list(v)}
                             for b, t, v in self.oracle_calls],
            "candidates": [list(s) for s in self.candidates],
            "chosen": self.chosen,
        }


def exact_cvp_oracle(basis: Basis, target: Sequence[int], p: NormKind) -> tuple[int, ...]:
    return cvp_exact(basis, target, p).vector


def svp_via_cvp_oracle(basis: Basis, p: NormKind | str = NormKind.L2,
                       oracle: CvpOracle = exact_cvp_oracle, *, preprocess: bool = True
                       ) -> tuple[SolutionCertificate, ReductionTranscript]:
    """Shortest vector from n CVP queries on the lattices with one column doubled.

    For column i the oracle is asked for the point of L(b_1, .., 2 b_i, .., b_n)
    closest to b_i; s_i = v - b_i then has an odd i-th coefficient.  A
    shortest vector has some odd coefficient, so the shortest s_i is one.
    """
    basis, p = as_basis(basis), NormKind.parse(p)
    if preprocess:
        work, _ = lll_with_transform(basis)
        tr = ReductionTranscript("lll(delta=3/4)", work)
    else:
        work = basis
        tr = ReductionTranscript("none", None)
    cols = work.columns
    for i, b in enumerate(cols):
        doubled = Basis(tuple(2 * x for x in c) if j == i else c for j, c in enumerate(cols))
        try:
            v = tuple(int(x) for x in oracle(doubled, b, p))
        except OracleError:
            raise
        except Exception as exc:
            raise OracleError(f"oracle failed on column {i}: {exc}") from exc
        if len(v) != basis.m:
            raise OracleError(f"oracle returned a vector of length {len(v)}")
        tr.oracle_calls.append((doubled, b, v))
        tr.candidates.append(tuple(a - c for a, c in zip(v, b)))

    def key(k):
        s = tr.candidates[k]
        try:
            x = sign_normalize(integer_coordinates(basis, s))
        except ValueError:
            x = ()
        return vector_norm(s, p), canonical_key(x)

    tr.chosen = min(range(len(tr.candidates)), key=key)
    s = tr.candidates[tr.chosen]
    try:
        coeffs = integer_coordinates(basis, s)
        ok = any(coeffs)
    except ValueError:
        coeffs, ok = (), False
    cert = SolutionCertificate("svp", "solved" if ok else "failed", (coeffs,), (s,), p,
                               vector_norm(s, p), ok and verify_lattice_vector(basis, coeffs, s),
                               "cvp-oracle-doubling", details={"oracle_calls": len(tr.oracle_calls)})
    return cert, tr


def hermite_factor_ok(value: Fraction, p: NormKind, n: int, gram_det: int, gamma: Fraction) -> bool:
    """||v|| <= gamma det^(1/n), compared as 2n-th powers: ||v||^2n <= gamma^2n det^2."""
    sq = squared_value(value, p)
    return sq ** n <= gamma ** (2 * n) * gram_det


def hermite_svp(basis: Basis, p: NormKind | str = NormKind.L2, gamma=1) -> SolutionCertificate:
    """Nonzero vector with ||v|| <= gamma * det(L)^(1/n).

    Tries the shortest LLL column first and falls back to exact SVP; if even
    the shortest vector misses the bound the certificate has status failed.
    """
    basis, p = as_basis(basis), NormKind.parse(p)
    gamma = check_gamma(gamma)
    check_rank(basis, MAX_RANK_SVP, "hermite_svp")
    n = basis.n
    g = determinant(basis).gram
    red, u = lll_with_transform(basis)
    j = min(range(n), key=lambda k: vector_norm(red.columns[k], p))
    coeffs = tuple(u[i][j] for i in range(n))
    solver = "lll"
    value = vector_norm(red.columns[j], p)
    if not hermite_factor_ok(value, p, n, g, gamma):
        sv = svp_exact(basis, p)
        coeffs, value, solver = sv.coeffs, sv.norm_value, "fincke-pohst"
    v = basis.vector(coeffs)
    met = hermite_factor_ok(value, p, n, g, gamma)
    factor = (float(squared_value(value, p)) ** 0.5) / (float(g) ** (1 / (2 * n)))
    ok = met and any(coeffs) and verify_lattice_vector(basis, coeffs, v)
    return SolutionCertificate("hermite-svp", "solved" if met else "failed", (coeffs,), (v,), p,
                               value, ok, solver,
                               details={"hermite_factor": factor, "gamma": gamma, "gram_det": g})
