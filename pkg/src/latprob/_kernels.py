"""Integer brute-force kernels.

Each kernel has a numba ``@njit`` body and a chunked numpy body computing the
same thing.  The numba path is used when numba imports and the environment
variable ``LATPROB_DISABLE_NUMBA`` is unset or ``0``.  All arithmetic is int64;
callers guard magnitudes with :func:`check_int64_safe`.
"""
from __future__ import annotations

import os

import numpy as np

from .errors import ResourceLimitError

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("LATPROB_DISABLE_NUMBA", "0") in ("", "0")


_CHUNK = 1 << 16
_SAFE = 1 << 62

P_L2, P_L1, P_LINF = 0, 1, 2


def check_int64_safe(bound: int) -> None:
    if bound >= _SAFE:
        raise ResourceLimitError("values too large for the int64 brute-force kernels")


def _decode(idx, radices, offsets):
    """Mixed-radix digits of ``idx`` (last digit fastest), shifted by ``offsets``."""
    out = np.empty((idx.shape[0], radices.shape[0]), dtype=np.int64)
    rest = idx.copy()
    for k in range(radices.shape[0] - 1, -1, -1):
        out[:, k] = rest % radices[k] + offsets[k]
        rest //= radices[k]
    return out


# --------------------------------------------------------------------------
# shortest nonzero vector over a coefficient box

@njit(cache=True)
def _box_min_nb(rows, bounds, pcode):
    m, n = rows.shape
    x = -bounds.copy()
    best = -1
    arg = np.zeros(n, dtype=np.int64)
    v = np.zeros(m, dtype=np.int64)
    while True:
        nonzero = False
        for k in range(n):
            if x[k] != 0:
                nonzero = True
                break
        if nonzero:
            for r in range(m):
                s = 0
                for k in range(n):
                    s += rows[r, k] * x[k]
                v[r] = s
            val = 0
            for r in range(m):
                a = v[r]
                if pcode == 0:
                    val += a * a
                elif pcode == 1:
                    val += abs(a)
                elif abs(a) > val:
                    val = abs(a)
            if best < 0 or val < best:
                best = val
                for k in range(n):
                    arg[k] = x[k]
        k = n - 1
        while k >= 0:
            x[k] += 1
            if x[k] <= bounds[k]:
                break
            x[k] = -bounds[k]
            k -= 1
        if k < 0:
            break
    return best, arg


def _box_min_np(rows, bounds, pcode):
    n = rows.shape[1]
    radices = 2 * bounds + 1
    total = int(np.prod(radices))
    best, arg = -1, np.zeros(n, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        xs = _decode(idx, radices, -bounds)
        xs = xs[np.any(xs != 0, axis=1)]
        if xs.shape[0] == 0:
            continue
        vs = xs @ rows.T
        if pcode == P_L2:
            vals = np.einsum("ij,ij->i", vs, vs)
        elif pcode == P_L1:
            vals = np.abs(vs).sum(axis=1)
        else:
            vals = np.abs(vs).max(axis=1)
        i = int(np.argmin(vals))
        if best < 0 or vals[i] < best:
            best, arg = int(vals[i]), xs[i].copy()
    return best, arg


def box_min_norm(rows, bounds, pcode: int = P_L2):
    """Minimum norm value of B x over nonzero integer x with |x_k| <= bounds[k].

    ``rows`` is B as an (m, n) int64 array.  Returns ``(value, argmin)`` with
    the l2 value squared.
    """
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    bounds = np.ascontiguousarray(bounds, dtype=np.int64)
    if numba_enabled():
        best, arg = _box_min_nb(rows, bounds, pcode)
        return int(best), arg
    return _box_min_np(rows, bounds, pcode)


# --------------------------------------------------------------------------
# LWE exhaustive secret scan

@njit(cache=True)
def _lwe_scan_nb(a, b, q):
    m, n = a.shape
    total = 1
    for _ in range(n):
        total *= q
    s = np.zeros(n, dtype=np.int64)
    best, second, best_idx = -1, -1, -1
    half = q // 2
    for idx in range(total):
        rest = idx
        for k in range(n - 1, -1, -1):
            s[k] = rest % q
            rest //= q
        val = 0
        for r in range(m):
            acc = b[r]
            for k in range(n):
                acc -= a[r, k] * s[k]
            acc %= q
            if acc > half:
                acc -= q
            val += acc * acc
        if best < 0 or val < best:
            second = best
            best = val
            best_idx = idx
        elif second < 0 or val < second:
            second = val
    return best_idx, best, second


def _lwe_scan_np(a, b, q):
    m, n = a.shape
    total = q ** n
    radices = np.full(n, q, dtype=np.int64)
    zeros = np.zeros(n, dtype=np.int64)
    half = q // 2
    best, second, best_idx = -1, -1, -1
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        s = _decode(idx, radices, zeros)
        res = (b[None, :] - s @ a.T) % q
        res = np.where(res > half, res - q, res)
        vals = np.einsum("ij,ij->i", res, res)
        order = np.argsort(vals, kind="stable")[:2]
        for j in order:
            v = int(vals[j])
            if best < 0 or v < best:
                second, best, best_idx = best, v, int(idx[j])
            elif second < 0 or v < second:
                second = v
    return best_idx, best, second


def lwe_scan(a, b, q: int):
    """Scan every secret in Z_q^n; return (index of best, best residual, runner-up).

    Residual is the squared l2 norm of the centered b - A s mod q.  Secrets
    are indexed in base q with the last coordinate fastest.
    """
    a = np.ascontiguousarray(a, dtype=np.int64) % q
    b = np.ascontiguousarray(b, dtype=np.int64) % q
    if numba_enabled():
        i, best, second = _lwe_scan_nb(a, b, q)
        return int(i), int(best), int(second)
    return _lwe_scan_np(a, b, q)


def decode_index(idx: int, n: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(idx % q)
        idx //= q
    return tuple(reversed(out))


# --------------------------------------------------------------------------
# Ajtai hash of many binary inputs

@njit(cache=True)
def _hash_rows_nb(a, xs, q):
    n, m = a.shape
    k = xs.shape[0]
    out = np.zeros((k, n), dtype=np.int64)
    for t in range(k):
        for r in range(n):
            s = 0
            for c in range(m):
                if xs[t, c]:
                    s += a[r, c]
            out[t, r] = s % q
    return out


def hash_rows(a, xs, q: int):
    """Row t of the result is A @ xs[t] mod q."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    if numba_enabled():
        return _hash_rows_nb(a, xs, q)
    return (xs @ a.T) % q
