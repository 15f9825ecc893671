"""q-ary lattices, LWE, SIS/ISIS, the Ajtai hash and ideal lattices over Z[x]/f(x)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import isprime

from . import _kernels
from .core import (
    Basis,
    NormKind,
    as_fraction,
    hnf_columns,
    radius_value,
    vector_norm,
)
from .errors import DimensionError, InvalidParameterError, ResourceLimitError
from .exact import SolutionCertificate, cvp_exact, rank_of, svp_exact


def centered(x: int, q: int) -> int:
    """Representative of x mod q in (-q/2, q/2]."""
    r = x % q
    return r - q if r > q // 2 else r


def _check_prime(q: int) -> None:
    if not isprime(int(q)):
        raise InvalidParameterError(f"modulus {q} is not prime")


# ---------------------------------------------------------------------------
# q-ary matrices and lattices

@dataclass(frozen=True)
class QaryMatrix:
    rows: tuple[tuple[int, ...], ...]   # n x m, entries in [0, q)
    q: int

    def __init__(self, rows: Sequence[Sequence[int]], q: int):
        q = int(q)
        _check_prime(q)
        rs = tuple(tuple(int(x) % q for x in r) for r in rows)
        if not rs or any(len(r) != len(rs[0]) for r in rs):
            raise DimensionError("matrix rows must be nonempty and of equal length")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    @classmethod
    def random(cls, n: int, m: int, q: int, rng: np.random.Generator) -> "QaryMatrix":
        return cls(rng.integers(0, q, size=(n, m)).tolist(), q)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """A x mod q."""
        if len(x) != self.m:
            raise DimensionError(f"expected a vector of length {self.m}")
        return tuple(sum(a * b for a, b in zip(r, x)) % self.q for r in self.rows)

    def rank_mod_q(self) -> int:
        return len(_rref_mod(self.rows, self.q)[1])

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)


def _rref_mod(rows, q):
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    width = len(a[0]) if a else 0
    for c in range(width):
        piv = next((i for i in range(r, len(a)) if a[i][c] % q), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, q)
        a[r] = [(x * inv) % q for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] % q:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def qary_primal_basis(a: QaryMatrix) -> Basis:
    """Basis of L_q(A) = {A^T s + q z}: HNF of [A^T | q I]."""
    q, m = a.q, a.m
    gens = [tuple(r) for r in a.rows]
    gens += [tuple(q if i == j else 0 for i in range(m)) for j in range(m)]
    return Basis(hnf_columns(gens, m))


def qary_dual_basis(a: QaryMatrix) -> Basis:
    """Basis of L_q^perp(A) = {x : A x = 0 mod q}."""
    q, m = a.q, a.m
    red, pivots = _rref_mod(a.rows, q)
    gens = []
    for f in (c for c in range(m) if c not in pivots):
        v = [0] * m
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % q
        gens.append(tuple(v))
    gens += [tuple(q if i == pc else 0 for i in range(m)) for pc in pivots]
    return Basis(hnf_columns(gens, m))


# ---------------------------------------------------------------------------
# LWE

@dataclass(frozen=True)
class NoiseSpec:
    kind: str              # rounded-gaussian | uniform-bounded
    parameter: Fraction    # sigma or the bound B

    def __post_init__(self):
        if self.kind not in ("rounded-gaussian", "uniform-bounded"):
            raise InvalidParameterError(f"unknown noise kind {self.kind!r}")
        object.__setattr__(self, "parameter", as_fraction(self.parameter))
        if self.parameter < 0:
            raise InvalidParameterError("noise parameter must be nonnegative")

    def sample(self, rng: np.random.Generator, size: int) -> list[int]:
        if self.parameter == 0:
            return [0] * size
        if self.kind == "rounded-gaussian":
            return [int(x) for x in np.rint(rng.normal(0.0, float(self.parameter), size))]
        bound = int(self.parameter)
        return rng.integers(-bound, bound + 1, size=size).tolist()


@dataclass(frozen=True)
class LweInstance:
    matrix: QaryMatrix          # m samples x n
    b_values: tuple[int, ...]
    noise: NoiseSpec
    seed: int | None = None

    @property
    def q(self) -> int:
        return self.matrix.q

    @property
    def n(self) -> int:
        return self.matrix.m

    @property
    def m(self) -> int:
        return self.matrix.n

    @property
    def problem(self) -> str:
        return "lwe"


def lwe_gen(n: int, m: int, q: int, noise: NoiseSpec, seed: int) -> tuple[LweInstance, tuple[int, ...]]:
    """Uniform A (m x n), uniform secret, b = A s + e mod q.  Returns (instance, secret)."""
    _check_prime(q)
    if n < 1 or m < n:
        raise InvalidParameterError("need 1 <= n <= m")
    rng = np.random.default_rng(seed)
    a = QaryMatrix.random(m, n, q, rng)
    s = tuple(int(x) for x in rng.integers(0, q, size=n))
    e = noise.sample(rng, m)
    b = tuple((sum(x * y for x, y in zip(row, s)) + ei) % q for row, ei in zip(a.rows, e))
    return LweInstance(a, b, noise, seed), s


@dataclass(frozen=True)
class LweSolution:
    secret: tuple[int, ...]
    residual_sq: int        # squared l2 norm of the centered residual
    runner_up_sq: int
    ambiguous: bool

    @property
    def margin(self) -> int:
        return self.runner_up_sq - self.residual_sq


def lwe_residual(inst: LweInstance, s: Sequence[int]) -> tuple[int, ...]:
    q = inst.q
    return tuple(centered(b - sum(x * y for x, y in zip(row, s)), q)
                 for row, b in zip(inst.matrix.rows, inst.b_values))


def lwe_solve_bruteforce(inst: LweInstance) -> LweSolution:
    """Try every s in Z_q^n and keep the one with the smallest centered residual."""
    q, n = inst.q, inst.n
    if q ** n > 10**6:
        raise ResourceLimitError(f"q^n = {q ** n} exceeds the brute-force limit 10^6")
    _kernels.check_int64_safe(inst.m * q * q)
    idx, best, second = _kernels.lwe_scan(inst.matrix.as_array(), np.array(inst.b_values), q)
    s = _kernels.decode_index(idx, n, q)
    if second < 0:   # q^n == 1
        second = best + 1
    return LweSolution(s, best, second, best == second)


# ---------------------------------------------------------------------------
# SIS / ISIS

@dataclass(frozen=True)
class SisInstance:
    matrix: QaryMatrix
    beta: Fraction
    norm: NormKind
    target: tuple[int, ...] | None = None     # ISIS when set
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "beta", as_fraction(self.beta))
        object.__setattr__(self, "norm", NormKind.parse(self.norm))
        if not 0 < self.beta < self.matrix.q:
            raise InvalidParameterError("beta must satisfy 0 < beta < q")
        if self.target is not None:
            if len(self.target) != self.matrix.n:
                raise DimensionError(f"target must have length {self.matrix.n}")
            object.__setattr__(self, "target", tuple(int(t) % self.matrix.q for t in self.target))

    @property
    def problem(self) -> str:
        return "sis" if self.target is None else "isis"


def sis_gen(n: int, m: int, q: int, beta, p: NormKind | str = NormKind.L2, seed: int = 0,
            inhomogeneous: bool = False) -> SisInstance:
    _check_prime(q)
    if m <= n:
        raise InvalidParameterError("need m > n")
    beta = as_fraction(beta)
    if not 0 < beta < q:
        raise InvalidParameterError("beta must satisfy 0 < beta < q")
    rng = np.random.default_rng(seed)
    a = QaryMatrix.random(n, m, q, rng)
    y = tuple(int(x) for x in rng.integers(0, q, size=n)) if inhomogeneous else None
    return SisInstance(a, beta, NormKind.parse(p), y, seed)


def sis_verify(inst: SisInstance, v: Sequence[int]) -> tuple[bool, str]:
    if len(v) != inst.matrix.m:
        raise DimensionError(f"expected a vector of length {inst.matrix.m}")
    v = tuple(int(x) for x in v)
    image = inst.matrix.apply(v)
    if inst.target is None:
        if not any(v):
            return False, "zero vector"
        if any(image):
            return False, "A v is not 0 mod q"
    elif image != inst.target:
        return False, "A v is not y mod q"
    if vector_norm(v, inst.norm) > radius_value(inst.beta, inst.norm):
        return False, "norm exceeds β"
    return True, "ok"


def _particular_solution(a: QaryMatrix, y: Sequence[int]) -> tuple[int, ...] | None:
    q, m = a.q, a.m
    aug = [list(r) + [t] for r, t in zip(a.rows, y)]
    red, pivots = _rref_mod(aug, q)
    if m in pivots:
        return None
    x = [0] * m
    for row, pc in zip(red, pivots):
        x[pc] = row[m] % q
    return tuple(x)


def sis_solve(inst: SisInstance) -> SolutionCertificate:
    """Shortest kernel vector (SIS) or shortest preimage of y (ISIS), then the beta check."""
    a, p = inst.matrix, inst.norm
    if a.m > 10:
        raise ResourceLimitError("sis_solve supports m <= 10")
    dual = qary_dual_basis(a)
    if inst.target is None:
        cert = svp_exact(dual, p)
        v = cert.vector
    else:
        x0 = _particular_solution(a, inst.target)
        if x0 is None:
            return SolutionCertificate(inst.problem, "failed", (), (), p, None, False, "cvp",
                                       details={"reason": "A x = y has no solution mod q"})
        cert = cvp_exact(dual, x0, p)
        v = tuple(s - c for s, c in zip(x0, cert.vector))
    ok, reason = sis_verify(inst, v)
    status = "solved" if ok else "failed"
    coeffs = cert.coefficients if inst.target is None else ((),)
    return SolutionCertificate(inst.problem, status, coeffs, (v,), p, vector_norm(v, p),
                               ok, "svp-on-dual" if inst.target is None else "cvp-on-dual",
                               cert.nodes, details={"reason": reason})


# ---------------------------------------------------------------------------
# Ajtai hash

def ajtai_hash(a: QaryMatrix, x: Sequence[int]) -> tuple[int, ...]:
    if any(b not in (0, 1) for b in x):
        raise InvalidParameterError("hash input must be binary")
    return a.apply(x)


def collision_to_short_vector(a: QaryMatrix, x1: Sequence[int], x2: Sequence[int]) -> tuple[int, ...]:
    """x1 - x2 for a genuine collision: a nonzero kernel vector with entries in {-1, 0, 1}."""
    if tuple(x1) == tuple(x2):
        raise InvalidParameterError("inputs are identical, not a collision")
    if ajtai_hash(a, x1) != ajtai_hash(a, x2):
        raise InvalidParameterError("inputs do not collide")
    return tuple(int(u) - int(w) for u, w in zip(x1, x2))


def birthday_collision(a: QaryMatrix, seed: int, batch: int = 256, max_batches: int = 4096):
    """Hash random binary inputs until two distinct ones collide.

    Returns (x1, x2, number of inputs hashed), or None if the budget runs out.
    """
    rng = np.random.default_rng(seed)
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    arr = a.as_array()
    tried = 0
    for _ in range(max_batches):
        xs = rng.integers(0, 2, size=(batch, a.m))
        hs = _kernels.hash_rows(arr, xs, a.q)
        for x, h in zip(xs.tolist(), hs.tolist()):
            tried += 1
            x, h = tuple(x), tuple(h)
            prev = seen.get(h)
            if prev is not None and prev != x:
                return prev, x, tried
            seen[h] = x
    return None


# ---------------------------------------------------------------------------
# ideal lattices

def _poly_trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IdealRing:
    """Z[x]/f(x); ``f_coeffs`` lists coefficients from x^0 up to the leading 1."""
    f_coeffs: tuple[int, ...]

    def __post_init__(self):
        f = tuple(int(x) for x in self.f_coeffs)
        if len(f) < 2 or f[-1] != 1:
            raise InvalidParameterError("f must be monic of degree >= 1")
        object.__setattr__(self, "f_coeffs", f)

    @property
    def n(self) -> int:
        return len(self.f_coeffs) - 1

    @classmethod
    def cyclic(cls, n: int) -> "IdealRing":
        return cls((-1,) + (0,) * (n - 1) + (1,))

    def reduce(self, g: Sequence[int]) -> tuple[int, ...]:
        """Coefficient vector (length n) of g mod f."""
        n, f = self.n, self.f_coeffs
        c = list(g) + [0] * max(0, n - len(g))
        for d in range(len(c) - 1, n - 1, -1):
            lead = c[d]
            if lead:
                for k in range(n + 1):
                    c[d - n + k] -= lead * f[k]
        return tuple(c[:n])

    def mul(self, g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
        prod = [0] * (len(g) + len(h) - 1) if g and h else [0]
        for i, a in enumerate(g):
            if a:
                for j, b in enumerate(h):
                    prod[i + j] += a * b
        return self.reduce(prod)

    def rotations(self, g: Sequence[int]) -> list[tuple[int, ...]]:
        """g * x^i mod f for i = 0..n-1."""
        out = [self.reduce(g)]
        for _ in range(self.n - 1):
            out.append(self.reduce((0,) + out[-1]))
        return out


def ideal_basis_from_generator(ring: IdealRing, g: Sequence[int]) -> Basis:
    """Lattice of the principal ideal (g).

    Columns are g * x^i mod f.  When those are dependent (g a zero divisor mod
    f) the ideal has lower rank and its HNF basis is returned instead.
    """
    if len(g) > ring.n:
        raise DimensionError(f"generator must have degree < {ring.n}")
    if not any(g):
        raise InvalidParameterError("zero generator")
    rots = ring.rotations(g)
    if rank_of(rots) == ring.n:
        return Basis(rots)
    return Basis(hnf_columns(rots, ring.n))


def ideal_svp_solve(ring: IdealRing, g: Sequence[int], p: NormKind | str = NormKind.L2,
                    gamma=1) -> SolutionCertificate:
    """Shortest nonzero polynomial of the ideal (g); the vector is its coefficient list."""
    if ring.n > 8:
        raise ResourceLimitError("ideal_svp_solve supports n <= 8")
    basis = ideal_basis_from_generator(ring, g)
    cert = svp_exact(basis, p, gamma)
    return SolutionCertificate("ideal-svp", cert.status, cert.coefficients, cert.vectors, cert.norm,
                               cert.norm_value, cert.verified, cert.solver, cert.nodes,
                               details=dict(cert.details, polynomial=_poly_trim(cert.vector)))


@dataclass(frozen=True)
class IdealSisInstance:
    ring: IdealRing
    generators: tuple[tuple[int, ...], ...]
    q: int
    beta: Fraction
    norm: NormKind
    seed: int | None = None

    def __post_init__(self):
        _check_prime(self.q)
        object.__setattr__(self, "beta", as_fraction(self.beta))
        object.__setattr__(self, "norm", NormKind.parse(self.norm))
        gens = tuple(tuple(int(x) % self.q for x in g) for g in self.generators)
        if any(len(g) != self.ring.n for g in gens):
            raise DimensionError(f"generators need exactly {self.ring.n} coefficients")
        object.__setattr__(self, "generators", gens)

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def problem(self) -> str:
        return "ideal-sis"

    def linear_map(self) -> QaryMatrix:
        """The n x (n m) matrix of e -> sum e_i g_i mod (f, q)."""
        cols = []
        for g in self.generators:
            cols += self.ring.rotations(g)
        return QaryMatrix([[c[r] for c in cols] for r in range(self.ring.n)], self.q)


def ideal_sis_gen(ring: IdealRing, m: int, q: int, beta, p: NormKind | str = NormKind.L2,
                  seed: int = 0) -> IdealSisInstance:
    rng = np.random.default_rng(seed)
    gens = tuple(tuple(int(x) for x in rng.integers(0, q, size=ring.n)) for _ in range(m))
    return IdealSisInstance(ring, gens, q, beta, NormKind.parse(p), seed)


def ideal_sis_verify(inst: IdealSisInstance, es: Sequence[Sequence[int]]) -> tuple[bool, str]:
    n = inst.ring.n
    if len(es) != inst.m or any(len(e) > n for e in es):
        raise DimensionError(f"expected {inst.m} polynomials of degree < {n}")
    es = [tuple(e) + (0,) * (n - len(e)) for e in es]
    flat = [c for e in es for c in e]
    if not any(flat):
        return False, "zero vector"
    total = [0] * n
    for e, g in zip(es, inst.generators):
        for k, c in enumerate(inst.ring.mul(e, g)):
            total[k] += c
    if any(t % inst.q for t in total):
        return False, "sum e_i g_i is not 0 mod (f, q)"
    if vector_norm(flat, inst.norm) > radius_value(inst.beta, inst.norm):
        return False, "norm exceeds β"
    return True, "ok"


def ideal_sis_solve(inst: IdealSisInstance) -> SolutionCertificate:
    """Shortest (e_1, .., e_m) in the kernel lattice of the linear map, then the beta check."""
    if inst.ring.n * inst.m > 10:
        raise ResourceLimitError("ideal_sis_solve supports n * m <= 10")
    cert = svp_exact(qary_dual_basis(inst.linear_map()), inst.norm)
    v = cert.vector
    n = inst.ring.n
    es = [v[i * n:(i + 1) * n] for i in range(inst.m)]
    ok, reason = ideal_sis_verify(inst, es)
    return SolutionCertificate("ideal-sis", "solved" if ok else "failed", ((),), (v,), inst.norm,
                               cert.norm_value, ok, "svp-on-dual", cert.nodes,
                               details={"reason": reason, "polynomials": [tuple(e) for e in es]})


def is_kernel_vector(basis: Basis, a: QaryMatrix) -> bool:
    return all(not any(a.apply(c)) for c in basis.columns)

