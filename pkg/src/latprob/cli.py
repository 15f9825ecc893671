"""Command-line interface: ``latprob gen | solve | verify | relations | paper-examples | ajtai``.

Exit codes: 0 solved / yes / valid, 1 no / failed / invalid, 2 usage error,
3 promise violated.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import approx as ap
from . import exact as ex
from . import modular as md
from .core import (
    Basis,
    NormKind,
    determinant,
    is_member,
    lattice_equal,
    parse_matrix_text,
    scale_value,
    squared_value,
    vector_norm,
)
from .errors import LatticeError
from .io import (
    PROBLEMS,
    TARGET_PROBLEMS,
    CertificateFile,
    FormatError,
    IdealSvpInstance,
    LatticeInstance,
    certificate_from_json,
    certificate_to_json,
    dumps,
    instance_from_json,
    instance_to_json,
    load_json,
    parse_frac,
    write_atomic,
)
from .reductions import PROFILES, RELATIONS, ajtai_regime, planted_usvp_lattice, random_basis

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_PROMISE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# gen

_DEFAULT_GAMMA = {"svp-approx": "2", "cvp-approx": "2", "usvp": "2", "hermite-svp": "2",
                  "gap-svp": "2", "gap-cvp": "2", "crp": "2"}
_MAX_DIM = {"sbp": 3, "crp": 3}


def _random_target(rng: random.Random, basis: Basis) -> tuple[Fraction, ...]:
    coeffs = [Fraction(rng.randint(-20, 20), 10) for _ in range(basis.n)]
    return tuple(sum((c * col[i] for c, col in zip(coeffs, basis.columns)), Fraction(0))
                 for i in range(basis.m))


def _bdd_target(rng: random.Random, basis: Basis, p: NormKind, alpha: Fraction) -> tuple[Fraction, ...]:
    """A lattice point plus noise strictly inside alpha * lambda1, so the promise holds."""
    lam = ex.shortest_value(basis, p)
    point = basis.vector([rng.randint(-3, 3) for _ in range(basis.n)])
    for scale in range(2, 64):
        e = [Fraction(rng.randint(-10, 10), 10 * scale) for _ in range(basis.m)]
        if vector_norm(e, p) < scale_value(lam, alpha, p):
            break
    else:  # pragma: no cover - tiny alpha
        e = [Fraction(0)] * basis.m
    return tuple(x + y for x, y in zip(point, e))


def generate(args) -> object:
    problem, seed = args.problem, args.seed
    rng = random.Random(seed)
    norm = NormKind.parse(args.norm)
    try:
        if problem == "lwe":
            noise = md.NoiseSpec(args.noise, parse_frac(args.sigma))
            inst, _ = md.lwe_gen(args.n or 2, args.m or 20, args.q or 17, noise, seed)
            return inst
        if problem in ("sis", "isis"):
            return md.sis_gen(args.n or 2, args.m or 6, args.q or 17, parse_frac(args.beta or "5"),
                              norm, seed, inhomogeneous=problem == "isis")
        if problem in ("ideal-svp", "ideal-sis"):
            dim = args.dim
            f = tuple(int(x) for x in args.f.split(",")) if args.f else (1,) + (0,) * (dim - 1) + (1,)
            ring = md.IdealRing(f)
            if problem == "ideal-svp":
                g = tuple(rng.randint(-5, 5) for _ in range(ring.n))
                if not any(g):
                    g = (1,) + g[1:]
                return IdealSvpInstance(ring, g, norm, parse_frac(args.gamma or "1"), seed)
            return md.ideal_sis_gen(ring, args.m or 2, args.q or 5, parse_frac(args.beta or "3"), norm, seed)

        if args.basis:
            with open(args.basis) as fh:
                basis = parse_matrix_text(fh.read())
        else:
            dim = args.dim
            if dim < 1:
                raise UsageError("--dim must be positive")
            if dim > _MAX_DIM.get(problem, ex.MAX_RANK_SVP):
                raise UsageError(f"--dim {dim} exceeds the limit for {problem}")
            basis = (planted_usvp_lattice(rng, dim) if problem == "usvp"
                     else random_basis(rng, dim, bound=args.entries))
        target = None
        if problem == "bdd" and not args.target:
            target = _bdd_target(rng, basis, norm, parse_frac(args.alpha or "1/2"))
        elif problem in TARGET_PROBLEMS:
            target = (tuple(parse_frac(t) for t in args.target.split(",")) if args.target
                      else _random_target(rng, basis))
        gamma = args.gamma or _DEFAULT_GAMMA.get(problem, "1")
        kw = dict(gamma=parse_frac(gamma))
        if problem in ("gap-svp", "gap-cvp"):
            kw["d"] = parse_frac(args.d or ("3" if problem == "gap-svp" else "1"))
        if problem == "bdd":
            kw["alpha"] = parse_frac(args.alpha or "1/2")
            kw.pop("gamma")
        if problem == "crp":
            kw["r"] = parse_frac(args.r or "1")
            kw["resolution"] = args.resolution
        if problem == "slp":
            kw.pop("gamma")
        inst = LatticeInstance(problem, basis, norm, target, seed=seed, **kw)
        _validate(inst)
        return inst
    except (FormatError, LatticeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _validate(inst: LatticeInstance) -> None:
    if inst.gamma is not None and inst.gamma < 1:
        raise UsageError("gamma must be >= 1")
    for name in ("d", "alpha", "r"):
        v = getattr(inst, name)
        if v is not None and v <= 0:
            raise UsageError(f"{name} must be positive")
    if inst.target is not None and len(inst.target) != inst.basis.m:
        raise UsageError("target length does not match the ambient dimension")
    if inst.problem in TARGET_PROBLEMS and inst.target is None:
        raise UsageError(f"{inst.problem} needs a target")


# ---------------------------------------------------------------------------
# solve

def _from_solution(problem: str, c: ex.SolutionCertificate, **extra) -> CertificateFile:
    return CertificateFile(problem, c.status, tuple(c.vectors), tuple(c.coefficients), c.norm.value,
                           c.norm_squared, c.verified, **extra)


def _status_exit(status: str) -> int:
    return {"solved": EXIT_OK, "failed": EXIT_NO, "promise-violated": EXIT_PROMISE}[status]


def _verdict_exit(v: ex.PromiseDecision) -> int:
    return {ex.PromiseDecision.YES: EXIT_OK, ex.PromiseDecision.NO: EXIT_NO}.get(v, EXIT_PROMISE)


def solve(inst) -> tuple[CertificateFile, int]:
    if isinstance(inst, md.LweInstance):
        sol = md.lwe_solve_bruteforce(inst)
        status = "failed" if sol.ambiguous else "solved"
        cert = CertificateFile("lwe", status, secret=sol.secret, norm_squared=Fraction(sol.residual_sq),
                               verified=not sol.ambiguous,
                               details={"runner_up_squared": str(sol.runner_up_sq), "ambiguous": sol.ambiguous})
        return cert, _status_exit(status)
    if isinstance(inst, md.SisInstance):
        c = md.sis_solve(inst)
        return _from_solution(inst.problem, c, details={"reason": c.details.get("reason", "")}), _status_exit(c.status)
    if isinstance(inst, IdealSvpInstance):
        c = md.ideal_svp_solve(inst.ring, inst.g, inst.norm, inst.gamma)
        return _from_solution("ideal-svp", c), _status_exit(c.status)
    if isinstance(inst, md.IdealSisInstance):
        c = md.ideal_sis_solve(inst)
        return _from_solution("ideal-sis", c, details={"reason": c.details["reason"]}), _status_exit(c.status)

    b, p, pr = inst.basis, inst.norm, inst.problem
    if pr == "svp":
        c = ex.svp_exact(b, p)
    elif pr == "svp-approx":
        c = ex.svp_approx(b, p, inst.gamma)
    elif pr == "cvp":
        c = ex.cvp_exact(b, inst.target, p)
    elif pr == "cvp-approx":
        c = ap.cvp_approx(b, inst.target, p, inst.gamma)
    elif pr == "sivp":
        c = ex.sivp_solve(b, p, inst.gamma)
    elif pr == "usvp":
        c = ex.usvp_solve(b, p, inst.gamma)
    elif pr == "hermite-svp":
        c = ap.hermite_svp(b, p, inst.gamma)
    elif pr == "sbp":
        c = ex.sbp_bruteforce(b, p, inst.gamma)
    elif pr == "bdd":
        c = ex.bdd_solve(b, inst.target, p, inst.alpha)
        cert = _from_solution(pr, c, details={"promise": c.promise})
        return cert, EXIT_OK if c.promise else EXIT_PROMISE
    elif pr == "slp":
        s = ex.slp_bounds(b, p)
        cert = CertificateFile(pr, "solved", norm=p.value, verified=True,
                               details={"lower": str(s.lower), "upper": str(s.upper),
                                        "lower_squared": str(squared_value(s.lower, p)),
                                        "upper_squared": str(squared_value(s.upper, p))})
        return cert, EXIT_OK
    elif pr in ("gap-svp", "gap-cvp", "crp"):
        if pr == "gap-svp":
            v = ex.decide_gap_svp(b, p, inst.d, inst.gamma)
        elif pr == "gap-cvp":
            v = ex.decide_gap_cvp(b, inst.target, p, inst.d, inst.gamma)
        else:
            v = ex.decide_crp(b, inst.r, inst.gamma, inst.resolution or 8)
        status = "promise-violated" if v in (ex.PromiseDecision.PROMISE_VIOLATED,
                                             ex.PromiseDecision.UNRESOLVED) else "solved"
        return CertificateFile(pr, status, norm=p.value, verified=True, verdict=v.value), _verdict_exit(v)
    else:  # pragma: no cover - PROBLEMS is closed
        raise UsageError(f"unsupported problem {pr}")
    return _from_solution(pr, c), _status_exit(c.status)


# ---------------------------------------------------------------------------
# verify

def verify(inst, cert: CertificateFile) -> tuple[bool, str]:
    """Re-check a certificate against its instance without trusting the solver."""
    problem = getattr(inst, "problem", None)
    if cert.problem != problem:
        raise UsageError(f"certificate is for {cert.problem!r}, instance is {problem!r}")
    if isinstance(inst, md.LweInstance):
        if cert.secret is None or len(cert.secret) != inst.n:
            return False, "missing or malformed secret"
        res = vector_norm(md.lwe_residual(inst, cert.secret), NormKind.L2)
        if cert.norm_squared is not None and res != cert.norm_squared:
            return False, "residual does not match"
        best = md.lwe_solve_bruteforce(inst)
        return (res == best.residual_sq, "ok" if res == best.residual_sq else "a smaller residual exists")
    if isinstance(inst, md.SisInstance):
        if len(cert.vectors) != 1:
            return False, "expected one vector"
        try:
            return md.sis_verify(inst, cert.vectors[0])
        except LatticeError as exc:
            return False, str(exc)
    if isinstance(inst, md.IdealSisInstance):
        if len(cert.vectors) != 1 or len(cert.vectors[0]) != inst.ring.n * inst.m:
            return False, "expected one concatenated coefficient vector"
        v, n = cert.vectors[0], inst.ring.n
        return md.ideal_sis_verify(inst, [v[i * n:(i + 1) * n] for i in range(inst.m)])
    if isinstance(inst, IdealSvpInstance):
        basis = md.ideal_basis_from_generator(inst.ring, inst.g)
        return _verify_short(basis, inst.norm, cert, inst.gamma)

    b, p, pr = inst.basis, inst.norm, inst.problem
    if pr in ("svp", "svp-approx", "usvp"):
        gamma = inst.gamma if pr == "svp-approx" else 1
        return _verify_short(b, p, cert, gamma)
    if pr in ("cvp", "cvp-approx", "bdd"):
        if len(cert.vectors) != 1 or not is_member(b, cert.vectors[0]):
            return False, "vector is not in the lattice"
        dist = vector_norm([t - x for t, x in zip(inst.target, cert.vectors[0])], p)
        if cert.norm_squared is not None and squared_value(dist, p) != cert.norm_squared:
            return False, "reported distance does not match"
        gamma = inst.gamma if pr == "cvp-approx" else 1
        if gamma == 1 and ex.exists_within(b, p, dist, inst.target, strict=True):
            return False, "a closer lattice vector exists"
        if gamma > 1 and ex.exists_within(b, p, dist, inst.target, strict=True):
            best = ex.cvp_exact(b, inst.target, p).norm_value
            if dist > scale_value(best, gamma, p):
                return False, "distance exceeds gamma times the optimum"
        return True, "ok"
    if pr in ("sivp", "sbp"):
        vecs = cert.vectors
        if len(vecs) != b.n or not all(is_member(b, v) for v in vecs):
            return False, "vectors are not lattice vectors"
        if ex.rank_of(vecs) != b.n:
            return False, "vectors are linearly dependent"
        worst = max(vector_norm(v, p) for v in vecs)
        if pr == "sbp":
            if not lattice_equal(Basis(vecs), b):
                return False, "vectors do not form a basis of the lattice"
            opt = ex.sbp_bruteforce(b, p).details["optimal"]
            return (worst <= scale_value(opt, inst.gamma, p), "ok")
        lam_n = ex.successive_minima(b, p).values[-1]
        return (worst <= scale_value(lam_n, inst.gamma, p), "ok")
    if pr == "hermite-svp":
        if len(cert.vectors) != 1 or not any(cert.vectors[0]) or not is_member(b, cert.vectors[0]):
            return False, "not a nonzero lattice vector"
        val = vector_norm(cert.vectors[0], p)
        ok = ap.hermite_factor_ok(val, p, b.n, determinant(b).gram, inst.gamma)
        return ok, "ok" if ok else "Hermite bound not met"
    if pr == "slp":
        try:
            lo, hi = parse_frac(cert.details["lower"]), parse_frac(cert.details["upper"])
        except (KeyError, FormatError):
            return False, "missing bounds"
        lam = ex.shortest_value(b, p)
        return (lo <= lam <= hi, "ok" if lo <= lam <= hi else "bounds do not bracket lambda1")
    # decision problems: recompute through the search route
    if pr == "gap-svp":
        lam = ex.shortest_value(b, p)
        expected = ex._threshold(lam, inst.d, inst.gamma, p)
    elif pr == "gap-cvp":
        from .reductions import gap_cvp_from_search
        expected = gap_cvp_from_search(b, inst.target, p, inst.d, inst.gamma)
    else:
        expected = ex.decide_crp(b, inst.r, inst.gamma, inst.resolution or 8)
    ok = cert.verdict == expected.value
    return ok, "ok" if ok else f"expected verdict {expected.value}"


def _verify_short(basis: Basis, p: NormKind, cert: CertificateFile, gamma) -> tuple[bool, str]:
    if len(cert.vectors) != 1:
        return False, "expected one vector"
    v = cert.vectors[0]
    if len(v) != basis.m:
        return False, "vector has the wrong length"
    if not any(v):
        return False, "zero vector"
    if not is_member(basis, v):
        return False, "vector is not in the lattice"
    val = vector_norm(v, p)
    if cert.norm_squared is not None and squared_value(val, p) != cert.norm_squared:
        return False, "reported norm does not match"
    lam = ex.shortest_value(basis, p)
    if val > scale_value(lam, gamma, p):
        return False, "vector is longer than allowed"
    return True, "ok"


# ---------------------------------------------------------------------------
# worked two-basis example

def worked_examples() -> list[dict]:
    b1 = Basis.identity(2)
    b2 = Basis([(100, 1), (99, 1)])
    checks = []

    def claim(name, ok, detail):
        checks.append({"claim": name, "pass": bool(ok), "detail": detail})

    claim("L(B1) == L(B2)", lattice_equal(b1, b2), "Hermite normal forms coincide")
    d1, d2 = determinant(b1).absolute, determinant(b2).absolute
    claim("|det B1| == |det B2| == 1", d1 == d2 == 1, f"|det B1| = {d1}, |det B2| = {d2}")
    e1, e2 = ap.babai_error_bound(b1), ap.babai_error_bound(b2)
    s1, h1 = e1.approx()
    s2, h2 = e2.approx()
    claim("eps1 = 1.4", abs(s1 - 1.4) <= 0.02,
          f"||b1 + b2|| = sqrt({e1.sum_bound}) = {s1:.4f}; half-sum form {h1:.4f}")
    claim("eps2 ~ 199", abs(s2 - 199) <= 0.1,
          f"||b1 + b2|| = sqrt({e2.sum_bound}) = {s2:.4f}; half-sum form {h2:.4f}")
    sv1, sv2 = ex.svp_exact(b1), ex.svp_exact(b2)
    claim("lambda1(L1) == lambda1(L2) == 1", sv1.norm_value == sv2.norm_value == 1,
          f"shortest vectors {sv1.vector} and {sv2.vector}")
    t = (Fraction(0), Fraction(1, 2))
    r1, r2 = ap.babai_round_cvp(b1, t), ap.babai_round_cvp(b2, t)
    opt = ex.cvp_exact(b2, t).norm_value
    claim("rounding quality depends on the basis",
          r1.norm_value == opt and r2.norm_value > opt and r2.norm_value <= e2.sum_bound,
          f"target (0, 1/2): B1 error^2 = {r1.norm_value}, B2 error^2 = {r2.norm_value} "
          f"(~{float(r2.norm_value) ** 0.5:.4f}), optimum^2 = {opt}")
    return checks


# ---------------------------------------------------------------------------
# argparse plumbing

def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _cmd_gen(args) -> int:
    if args.problem not in PROBLEMS:
        raise UsageError(f"unknown problem {args.problem!r}")
    inst = generate(args)
    _emit(dumps(instance_to_json(inst)), args.out)
    return EXIT_OK


def _load_instance(path):
    return instance_from_json(load_json(path))


def _cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    cert, code = solve(inst)
    _emit(dumps(certificate_to_json(cert)), args.out)
    return code


def _cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    cert = certificate_from_json(load_json(args.certificate))
    ok, reason = verify(inst, cert)
    if args.json:
        sys.stdout.write(dumps({"valid": ok, "reason": reason}))
    else:
        print(("valid" if ok else "invalid") + f": {reason}")
    return EXIT_OK if ok else EXIT_NO


def _cmd_relations(args) -> int:
    if args.name not in RELATIONS:
        raise UsageError(f"unknown relation {args.name!r}; choose from {sorted(RELATIONS)}")
    rep = RELATIONS[args.name](args.trials, args.seed, args.norm)
    sys.stdout.write(dumps(rep.as_dict()))
    return EXIT_OK if rep.passed else EXIT_NO


def _cmd_examples(args) -> int:
    checks = worked_examples()
    if args.json:
        sys.stdout.write(dumps({"checks": checks, "all_pass": all(c["pass"] for c in checks)}))
    else:
        for c in checks:
            print(f"[{'PASS' if c['pass'] else 'FAIL'}] {c['claim']}: {c['detail']}")
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_NO


def _cmd_ajtai(args) -> int:
    reg = ajtai_regime(args.n, args.profile)
    rows = {"svp (c2)": reg.gamma_svp, "sivp (c0)": reg.gamma_sivp, "sbp (c1)": reg.gamma_sbp}
    if args.json:
        sys.stdout.write(dumps({"n": reg.n, "profile": reg.profile, "gammas": {
            k: {"exponent": None if e.exponent is None else str(e.exponent), "value": e.value,
                "lower_bound": e.lower_bound} for k, e in rows.items()}}))
    else:
        for k, e in rows.items():
            print(e.describe(k))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latprob", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a problem instance")
    g.add_argument("problem", help=", ".join(PROBLEMS))
    g.add_argument("--dim", type=int, default=3)
    g.add_argument("--entries", type=int, default=10, help="random basis entries in [-E, E]")
    g.add_argument("--basis", help="matrix text file (first line 'm n', columns are vectors)")
    g.add_argument("--target", help="comma-separated rationals, e.g. 1/2,0")
    g.add_argument("--norm", default="l2", choices=["l1", "l2", "linf"])
    for name in ("gamma", "d", "alpha", "r", "beta", "sigma"):
        g.add_argument(f"--{name}")
    g.add_argument("--resolution", type=int, default=8)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--f", help="monic polynomial coefficients from x^0 upward, e.g. 1,0,1")
    g.add_argument("--noise", default="rounded-gaussian", choices=["rounded-gaussian", "uniform-bounded"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen, sigma="1")

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance")
    s.add_argument("--out")
    s.set_defaults(func=_cmd_solve)

    v = sub.add_parser("verify", help="re-verify a certificate against its instance")
    v.add_argument("instance")
    v.add_argument("certificate")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_cmd_verify)

    for name in ("relations", "reduce"):
        r = sub.add_parser(name, help="run an empirical relation check")
        r.add_argument("name", help=", ".join(sorted(RELATIONS)))
        r.add_argument("--trials", type=int, default=50)
        r.add_argument("--seed", type=int, default=0)
        r.add_argument("--norm", default="l2", choices=["l1", "l2", "linf"])
        r.set_defaults(func=_cmd_relations)

    pe = sub.add_parser("paper-examples", help="reproduce the worked two-basis example")
    pe.add_argument("--json", action="store_true")
    pe.set_defaults(func=_cmd_examples)

    a = sub.add_parser("ajtai", help="approximation factors n^c per constants profile")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--profile", default="micciancio-regev", choices=list(PROFILES))
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=_cmd_ajtai)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"latprob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, LatticeError) as exc:
        print(f"latprob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
