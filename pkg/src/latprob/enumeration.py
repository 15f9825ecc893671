"""Exact Fincke-Pohst style enumeration over rational GSO data."""
from __future__ import annotations

from fractions import Fraction
from math import ceil, floor
from typing import Callable, Sequence

from .core import GsoResult, sqrt_ceil


def integer_interval(center: Fraction, t: Fraction) -> tuple[int, int]:
    """Integers x with (x - center)^2 <= t, as an inclusive range (may be empty)."""
    if t < 0:
        return 1, 0
    s = sqrt_ceil(t, 10**6)
    lo, hi = ceil(center - s), floor(center + s)
    while lo <= hi and (lo - center) ** 2 > t:
        lo += 1
    while hi >= lo and (hi - center) ** 2 > t:
        hi -= 1
    return lo, hi


def _zigzag(center: Fraction, lo: int, hi: int):
    start = min(max(round(center), lo), hi)
    yield start
    up, down = start + 1, start - 1
    while up <= hi or down >= lo:
        # nearer side first so squared offsets are nondecreasing
        if up <= hi and (down < lo or (up - center) <= (center - down)):
            yield up
            up += 1
        else:
            yield down
            down -= 1


class Enumerator:
    """Visit every integer x with ``||sum x_i b_i - t||^2 <= radius_sq``.

    Works with the in-span part of the target: ``tau[i]`` are the GSO
    coordinates of t.  ``visit(x, dist_sq)`` may return a new (smaller)
    radius; returning ``None`` keeps the current one.  Points on the
    boundary are visited, so ties survive shrinking.
    """

    def __init__(self, gso: GsoResult, tau: Sequence[Fraction] | None = None):
        self.n = len(gso.norms_sq)
        self.bs = gso.norms_sq
        self.mu = gso.mu
        self.tau = list(tau) if tau is not None else [Fraction(0)] * self.n
        self.nodes = 0

    def run(self, radius_sq: Fraction, visit: Callable[[tuple, Fraction], Fraction | None]) -> int:
        n = self.n
        x = [0] * n
        bs, mu, tau = self.bs, self.mu, self.tau
        state = {"r": Fraction(radius_sq)}

        def rec(i: int, partial: Fraction) -> None:
            self.nodes += 1
            c = tau[i] - sum((mu[j][i] * x[j] for j in range(i + 1, n)), Fraction(0))
            lo, hi = integer_interval(c, (state["r"] - partial) / bs[i])
            for xi in _zigzag(c, lo, hi):
                d = partial + bs[i] * (xi - c) ** 2
                if d > state["r"]:
                    break
                x[i] = xi
                if i == 0:
                    new = visit(tuple(x), d)
                    if new is not None:
                        state["r"] = new
                else:
                    rec(i - 1, d)
            x[i] = 0

        if n:
            rec(n - 1, Fraction(0))
        return self.nodes
