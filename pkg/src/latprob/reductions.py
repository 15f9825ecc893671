"""Executable checks of the inter-problem relations plus the Ajtai parameter table.

None of these build new reductions; each checker generates desk-scale
instances and confirms the value-level consequence of a stated relation with
the exact solvers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .approx import svp_via_cvp_oracle
from .core import Basis, NormKind, as_basis, as_fraction, radius_value, scale_value, unimodular_randomize, vector_norm
from .errors import DegenerateBasisError, InvalidParameterError
from .exact import (
    PromiseDecision,
    bdd_solve,
    check_gamma,
    cvp_exact,
    sbp_bruteforce,
    successive_minima,
    svp_exact,
    usvp_solve,
)


# ---------------------------------------------------------------------------
# worst-case / average-case constants

# exponent c per problem; (value, is_lower_bound).  None = not stated numerically.
_PROFILES: dict[str, dict[str, tuple[Fraction, bool] | None]] = {
    "ajtai-original": {"svp": None, "sivp": None, "sbp": None},
    "cai-nerurkar": {
        "sivp": (Fraction(3), True),        # c0 > 3
        "sbp": (Fraction(7, 2), True),      # c1 > 3.5
        "svp": (Fraction(4), True),         # c2 > 4
    },
    "micciancio-regev": {
        "sivp": (Fraction(3), True),        # not improved; inherited
        "sbp": (Fraction(7, 2), True),
        "svp": (Fraction(1), False),        # c2 = 1
    },
}

PROFILES = tuple(_PROFILES)


@dataclass(frozen=True)
class GammaEntry:
    exponent: Fraction | None
    value: float | None
    lower_bound: bool

    def describe(self, label: str) -> str:
        if self.exponent is None:
            return f"{label}: constant not stated"
        rel = ">" if self.lower_bound else "="
        return f"{label} = n^c, c {rel} {self.exponent} -> {self.value:.6g}"


@dataclass(frozen=True)
class AjtaiRegime:
    n: int
    profile: str
    gamma_svp: GammaEntry
    gamma_sivp: GammaEntry
    gamma_sbp: GammaEntry

    @property
    def c0(self):
        return self.gamma_sivp.exponent

    @property
    def c1(self):
        return self.gamma_sbp.exponent

    @property
    def c2(self):
        return self.gamma_svp.exponent


def ajtai_regime(n: int, profile: str = "micciancio-regev") -> AjtaiRegime:
    """Approximation factors n^c reachable from an average-case short-vector finder."""
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    try:
        table = _PROFILES[profile]
    except KeyError:
        raise InvalidParameterError(f"unknown profile {profile!r}; expected one of {PROFILES}") from None

    def entry(key):
        spec = table[key]
        if spec is None:
            # n^c = 1 at n = 1 whatever c is
            return GammaEntry(None, 1.0 if n == 1 else None, False)
        c, lower = spec
        return GammaEntry(c, float(n) ** float(c), lower)

    return AjtaiRegime(n, profile, entry("svp"), entry("sivp"), entry("sbp"))


# ---------------------------------------------------------------------------
# reports

@dataclass
class RelationReport:
    relation: str
    instances: int = 0
    results: list[bool] = field(default_factory=list)
    skipped: int = 0                     # promise not satisfied, not a failure
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.results)

    def add(self, ok: bool, note: str | None = None) -> None:
        self.instances += 1
        self.results.append(bool(ok))
        if note and not ok:
            self.notes.append(note)

    def as_dict(self) -> dict:
        return {"relation": self.relation, "instances": self.instances,
                "passed": sum(self.results), "skipped_promise_unsatisfied": self.skipped,
                "results": self.results, "summary": self.passed, "notes": self.notes}


def random_basis(rng: random.Random, n: int, m: int | None = None, bound: int = 10) -> Basis:
    m = n if m is None else m
    while True:
        try:
            return Basis([[rng.randint(-bound, bound) for _ in range(m)] for _ in range(n)])
        except DegenerateBasisError:
            continue


def planted_usvp_lattice(rng: random.Random, n: int) -> Basis:
    """A short first column above a much longer orthogonal block, then scrambled."""
    short = rng.randint(1, 3)
    cols = [[short if i == 0 else 0 for i in range(n)]]
    for j in range(1, n):
        col = [0] * n
        col[0] = rng.randint(-short, short)
        for i in range(1, n):
            col[i] = rng.randint(-3, 3)
        col[j] = rng.choice([-1, 1]) * rng.randint(12, 20) * short
        cols.append(col)
    try:
        b = Basis(cols)
    except DegenerateBasisError:
        return planted_usvp_lattice(rng, n)
    return unimodular_randomize(b, rng.randrange(10**6))


# ---------------------------------------------------------------------------
# uSVP_gamma <= BDD_{1/gamma}

def check_usvp_bdd_instance(basis: Basis, gamma: Fraction, target, planted: tuple[int, ...],
                            p: NormKind = NormKind.L2) -> tuple[bool | None, str]:
    """One chain check.  Returns (None, reason) when the uSVP promise fails.

    Under the uSVP_gamma promise with gamma >= 2, a target within
    lambda1/gamma of a lattice point decodes to that point: the BDD_{1/gamma}
    promise must hold and bdd_solve must return ``planted``.
    """
    us = usvp_solve(basis, p, gamma)
    if not us.promise:
        return None, "uSVP promise not satisfied"
    alpha = 1 / gamma
    bd = bdd_solve(basis, target, p, alpha)
    if not bd.promise:
        return False, "BDD promise with alpha = 1/gamma failed"
    if bd.vector != tuple(planted):
        return False, f"decoded {bd.vector}, planted {tuple(planted)}"
    if not bd.verified or not us.verified:
        return False, "certificate verification failed"
    return True, "ok"


def verify_usvp_bdd_chain(trials: int = 50, seed: int = 0, p: NormKind | str = NormKind.L2) -> RelationReport:
    p = NormKind.parse(p)
    rng = random.Random(seed)
    rep = RelationReport("usvp-bdd")
    for t in range(trials):
        n = rng.randint(2, 4)
        b = planted_usvp_lattice(rng, n)
        gamma = rng.choice([Fraction(2), Fraction(5, 2), Fraction(3)])
        lam = svp_exact(b, p).norm_value
        planted = b.vector([rng.randint(-3, 3) for _ in range(n)])
        # noise strictly inside lambda1 / gamma
        while True:
            e = [Fraction(rng.randint(-20, 20), 20 * n) for _ in range(b.m)]
            if vector_norm(e, p) < scale_value(lam, 1 / gamma, p):
                break
        target = tuple(x + y for x, y in zip(planted, e))
        ok, why = check_usvp_bdd_instance(b, gamma, target, planted, p)
        if ok is None:
            rep.skipped += 1
            continue
        rep.add(ok, f"trial {t}: {why}")
    return rep


# ---------------------------------------------------------------------------
# SBP <= SIVP

def check_sbp_sivp_instance(basis: Basis, p: NormKind = NormKind.L2) -> tuple[bool, Fraction, Fraction]:
    lam_n = successive_minima(basis, p).values[-1]
    opt = sbp_bruteforce(basis, p).details["optimal"]
    return lam_n <= opt, lam_n, opt


def verify_sbp_sivp_relation(trials: int = 50, seed: int = 0, p: NormKind | str = NormKind.L2) -> RelationReport:
    p = NormKind.parse(p)
    rng = random.Random(seed)
    rep = RelationReport("sbp-sivp")
    for t in range(trials):
        b = random_basis(rng, rng.randint(2, 3))
        ok, lam_n, opt = check_sbp_sivp_instance(b, p)
        rep.add(ok, f"trial {t}: lambda_n {lam_n} > optimal basis {opt}")
    return rep


# ---------------------------------------------------------------------------
# SVP <= CVP

def verify_svp_cvp_relation(trials: int = 50, seed: int = 0, p: NormKind | str = NormKind.L2) -> RelationReport:
    p = NormKind.parse(p)
    rng = random.Random(seed)
    rep = RelationReport("svp-cvp")
    for t in range(trials):
        b = random_basis(rng, rng.randint(2, 4))
        via, tr = svp_via_cvp_oracle(b, p)
        direct = svp_exact(b, p)
        ok = via.verified and via.norm_value == direct.norm_value and len(tr.oracle_calls) == b.n
        rep.add(ok, f"trial {t}: oracle route {via.norm_value}, direct {direct.norm_value}")
    return rep


# ---------------------------------------------------------------------------
# GapCVP from search CVP

def gap_cvp_from_search(basis: Basis, target, p: NormKind | str, d, gamma) -> PromiseDecision:
    """Decide GapCVP by solving the search problem and thresholding its distance."""
    p = NormKind.parse(p)
    dist = cvp_exact(as_basis(basis), target, p).norm_value
    d, gamma = as_fraction(d), check_gamma(gamma)
    if dist <= radius_value(d, p):
        return PromiseDecision.YES
    if dist > scale_value(radius_value(d, p), gamma, p):
        return PromiseDecision.NO
    return PromiseDecision.PROMISE_VIOLATED


RELATIONS: dict[str, Callable[..., RelationReport]] = {
    "svp-cvp": verify_svp_cvp_relation,
    "sbp-sivp": verify_sbp_sivp_relation,
    "usvp-bdd": verify_usvp_bdd_chain,
}
