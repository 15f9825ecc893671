"""JSON instance/certificate files.

Rationals travel as "p/q" strings so nothing is truncated to a float.
Bases are stored as lists of column vectors; q-ary matrices as lists of rows.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import Basis, NormKind, as_fraction
from .modular import IdealRing, IdealSisInstance, LweInstance, NoiseSpec, QaryMatrix, SisInstance

BASIS_PROBLEMS = (
    "svp", "svp-approx", "cvp", "cvp-approx", "sivp", "usvp", "hermite-svp", "sbp", "slp",
    "crp", "bdd", "gap-svp", "gap-cvp",
)
PROBLEMS = BASIS_PROBLEMS[:6] + ("lwe", "sis", "isis") + BASIS_PROBLEMS[6:] + ("ideal-svp", "ideal-sis")
TARGET_PROBLEMS = ("cvp", "cvp-approx", "bdd", "gap-cvp")


class FormatError(ValueError):
    pass


def frac_str(x) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, bool):
        raise FormatError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except ValueError:
            pass
    raise FormatError(f"not a rational: {s!r}")


@dataclass(frozen=True)
class LatticeInstance:
    """Any of the basis-driven problems; unused parameters stay None."""
    problem: str
    basis: Basis
    norm: NormKind = NormKind.L2
    target: tuple[Fraction, ...] | None = None
    gamma: Fraction | None = None
    d: Fraction | None = None
    alpha: Fraction | None = None
    r: Fraction | None = None
    resolution: int | None = None
    seed: int | None = None


@dataclass(frozen=True)
class IdealSvpInstance:
    ring: IdealRing
    g: tuple[int, ...]
    norm: NormKind = NormKind.L2
    gamma: Fraction = Fraction(1)
    seed: int | None = None
    problem: str = "ideal-svp"


_RATIONAL_FIELDS = ("gamma", "d", "alpha", "r")


def instance_to_json(inst) -> dict[str, Any]:
    if isinstance(inst, LatticeInstance):
        out: dict[str, Any] = {"problem": inst.problem,
                               "basis": [list(c) for c in inst.basis.columns],
                               "norm": inst.norm.value}
        if inst.target is not None:
            out["target"] = [frac_str(t) for t in inst.target]
        for k in _RATIONAL_FIELDS:
            v = getattr(inst, k)
            if v is not None:
                out[k] = frac_str(v)
        if inst.resolution is not None:
            out["resolution"] = inst.resolution
    elif isinstance(inst, LweInstance):
        out = {"problem": "lwe", "q": inst.q, "n": inst.n, "m": inst.m,
               "a": [list(r) for r in inst.matrix.rows], "b": list(inst.b_values),
               "noise": {"kind": inst.noise.kind, "parameter": frac_str(inst.noise.parameter)}}
    elif isinstance(inst, SisInstance):
        out = {"problem": inst.problem, "q": inst.matrix.q, "a": [list(r) for r in inst.matrix.rows],
               "beta": frac_str(inst.beta), "norm": inst.norm.value}
        if inst.target is not None:
            out["target"] = list(inst.target)
    elif isinstance(inst, IdealSvpInstance):
        out = {"problem": "ideal-svp", "f": list(inst.ring.f_coeffs), "g": list(inst.g),
               "norm": inst.norm.value, "gamma": frac_str(inst.gamma)}
    elif isinstance(inst, IdealSisInstance):
        out = {"problem": "ideal-sis", "f": list(inst.ring.f_coeffs), "q": inst.q,
               "generators": [list(g) for g in inst.generators], "beta": frac_str(inst.beta),
               "norm": inst.norm.value}
    else:
        raise TypeError(f"cannot serialise {type(inst).__name__}")
    seed = getattr(inst, "seed", None)
    if seed is not None:
        out["seed"] = seed
    return out


def _req(d: dict, key: str):
    if key not in d:
        raise FormatError(f"missing field {key!r}")
    return d[key]


def instance_from_json(d: dict):
    try:
        problem = _req(d, "problem")
        if problem not in PROBLEMS:
            raise FormatError(f"unknown problem {problem!r}")
        seed = d.get("seed")
        norm = NormKind.parse(d.get("norm", "l2"))
        if problem in BASIS_PROBLEMS:
            kw = {k: parse_frac(d[k]) for k in _RATIONAL_FIELDS if k in d}
            target = d.get("target")
            return LatticeInstance(
                problem, Basis(_req(d, "basis")), norm,
                tuple(parse_frac(t) for t in target) if target is not None else None,
                resolution=d.get("resolution"), seed=seed, **kw)
        if problem == "lwe":
            noise = _req(d, "noise")
            q = int(_req(d, "q"))
            return LweInstance(QaryMatrix(_req(d, "a"), q), tuple(int(x) for x in _req(d, "b")),
                               NoiseSpec(noise["kind"], parse_frac(noise["parameter"])), seed)
        if problem in ("sis", "isis"):
            target = d.get("target")
            if (problem == "isis") != (target is not None):
                raise FormatError("isis needs a target, sis must not have one")
            return SisInstance(QaryMatrix(_req(d, "a"), int(_req(d, "q"))), parse_frac(_req(d, "beta")),
                               norm, tuple(target) if target is not None else None, seed)
        if problem == "ideal-svp":
            return IdealSvpInstance(IdealRing(tuple(_req(d, "f"))), tuple(_req(d, "g")), norm,
                                    parse_frac(d.get("gamma", "1")), seed)
        return IdealSisInstance(IdealRing(tuple(_req(d, "f"))), tuple(tuple(g) for g in _req(d, "generators")),
                                int(_req(d, "q")), parse_frac(_req(d, "beta")), norm, seed)
    except FormatError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise FormatError(str(exc)) from exc


@dataclass(frozen=True)
class CertificateFile:
    problem: str
    status: str
    vectors: tuple[tuple[int, ...], ...] = ()
    coefficients: tuple[tuple[int, ...], ...] = ()
    norm: str = "l2"
    norm_squared: Fraction | None = None
    verified: bool = False
    verdict: str | None = None
    secret: tuple[int, ...] | None = None
    transcript: dict | None = None
    details: dict = field(default_factory=dict)


def certificate_to_json(c: CertificateFile) -> dict[str, Any]:
    out: dict[str, Any] = {"problem": c.problem, "status": c.status,
                           "vectors": [list(v) for v in c.vectors],
                           "coefficients": [list(v) for v in c.coefficients],
                           "norm": c.norm,
                           "norm_squared": None if c.norm_squared is None else frac_str(c.norm_squared),
                           "verified": c.verified}
    if c.verdict is not None:
        out["verdict"] = c.verdict
    if c.secret is not None:
        out["secret"] = list(c.secret)
    if c.transcript is not None:
        out["transcript"] = c.transcript
    if c.details:
        out["details"] = c.details
    return out


def certificate_from_json(d: dict) -> CertificateFile:
    try:
        ns = d.get("norm_squared")
        secret = d.get("secret")
        return CertificateFile(
            problem=_req(d, "problem"), status=_req(d, "status"),
            vectors=tuple(tuple(int(x) for x in v) for v in d.get("vectors", [])),
            coefficients=tuple(tuple(int(x) for x in v) for v in d.get("coefficients", [])),
            norm=d.get("norm", "l2"),
            norm_squared=None if ns is None else parse_frac(ns),
            verified=bool(d.get("verified", False)),
            verdict=d.get("verdict"),
            secret=None if secret is None else tuple(int(x) for x in secret),
            transcript=d.get("transcript"),
            details=d.get("details", {}),
        )
    except FormatError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise FormatError(str(exc)) from exc


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return data
