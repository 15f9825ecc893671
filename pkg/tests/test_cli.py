import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bases, rationals
from latprob.cli import main
from latprob.core import NormKind
from latprob.io import (
    PROBLEMS,
    CertificateFile,
    FormatError,
    IdealSvpInstance,
    LatticeInstance,
    certificate_from_json,
    certificate_to_json,
    frac_str,
    instance_from_json,
    instance_to_json,
    parse_frac,
)
from latprob.modular import IdealRing, NoiseSpec, ideal_sis_gen, lwe_gen, sis_gen


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestFormats:
    def test_eighteen_problems(self):
        assert len(PROBLEMS) == 18 and len(set(PROBLEMS)) == 18

    def test_fraction_strings(self):
        assert frac_str(1) == "1/1" and frac_str(Fraction(-3, 6)) == "-1/2"
        assert parse_frac("7/3") == Fraction(7, 3) and parse_frac(4) == 4
        for bad in ("x", 0.5, True, None):
            with pytest.raises(FormatError):
                parse_frac(bad)

    @given(bases(max_rank=3, extra_ambient=1), st.data())
    def test_lattice_instance_roundtrip(self, b, data):
        t = tuple(data.draw(st.lists(rationals(), min_size=b.m, max_size=b.m)))
        inst = LatticeInstance("gap-cvp", b, NormKind.L1, t, gamma=data.draw(rationals(1, 3)),
                               d=Fraction(2, 3), seed=5)
        doc = json.loads(json.dumps(instance_to_json(inst)))
        assert instance_from_json(doc) == inst

    @pytest.mark.parametrize("inst", [
        lwe_gen(2, 8, 17, NoiseSpec("rounded-gaussian", Fraction(3, 2)), 1)[0],
        sis_gen(2, 6, 17, Fraction(9, 2), "linf", 2),
        sis_gen(2, 6, 17, 5, "l2", 2, inhomogeneous=True),
        IdealSvpInstance(IdealRing((1, 0, 1)), (2, 1), NormKind.L2, Fraction(3, 2), 4),
        ideal_sis_gen(IdealRing.cyclic(3), 2, 5, 2, "l1", 0),
    ])
    def test_other_instance_roundtrip(self, inst):
        assert instance_from_json(json.loads(json.dumps(instance_to_json(inst)))) == inst

    @given(st.lists(st.lists(st.integers(-99, 99), min_size=2, max_size=2), max_size=3),
           st.one_of(st.none(), rationals()), st.booleans())
    def test_certificate_roundtrip(self, vecs, ns, ok):
        c = CertificateFile("svp", "solved", tuple(map(tuple, vecs)), (), "l2", ns, ok,
                            verdict="yes", details={"k": "v"})
        assert certificate_from_json(json.loads(json.dumps(certificate_to_json(c)))) == c

    def test_malformed(self):
        with pytest.raises(FormatError):
            instance_from_json({"problem": "svp"})
        with pytest.raises(FormatError):
            instance_from_json({"problem": "bogus"})
        with pytest.raises(FormatError):
            instance_from_json({"problem": "isis", "a": [[1, 2]], "q": 5, "beta": "1/1"})


ALL = ["svp", "svp-approx", "cvp", "cvp-approx", "sivp", "usvp", "lwe", "sis", "isis",
       "hermite-svp", "sbp", "slp", "bdd", "ideal-svp", "ideal-sis"]


class TestPipeline:
    @pytest.mark.parametrize("problem", ALL)
    def test_gen_solve_verify(self, problem, tmp_path, capsys):
        inst, cert = tmp_path / "i.json", tmp_path / "c.json"
        assert run(capsys, "gen", problem, "--dim", 3, "--seed", 1, "--out", inst)[0] == 0
        assert run(capsys, "solve", inst, "--out", cert)[0] == 0
        data = json.loads(cert.read_text())
        assert data["verified"] is True
        code, out, _ = run(capsys, "verify", inst, cert)
        assert code == 0 and out.startswith("valid")

    @pytest.mark.parametrize("problem", ["gap-svp", "gap-cvp", "crp"])
    def test_decision_pipeline(self, problem, tmp_path, capsys):
        inst, cert = tmp_path / "i.json", tmp_path / "c.json"
        run(capsys, "gen", problem, "--dim", 2, "--seed", 3, "--out", inst)
        assert run(capsys, "solve", inst, "--out", cert)[0] in (0, 1, 3)
        assert run(capsys, "verify", inst, cert)[0] == 0

    def test_gen_is_deterministic(self, capsys):
        a = run(capsys, "gen", "svp", "--dim", 3, "--seed", 1)[1]
        b = run(capsys, "gen", "svp", "--dim", 3, "--seed", 1)[1]
        c = run(capsys, "gen", "svp", "--dim", 3, "--seed", 2)[1]
        assert a == b != c

    def test_gen_sis_example(self, tmp_path, capsys):
        path = tmp_path / "s.json"
        assert run(capsys, "gen", "sis", "--n", 2, "--m", 6, "--q", 17, "--beta", 5, "--seed", 3,
                   "--out", path)[0] == 0
        inst = instance_from_json(json.loads(path.read_text()))
        assert inst.matrix.q == 17 and (inst.matrix.n, inst.matrix.m) == (2, 6)

    def test_beta_at_least_q(self, capsys):
        code, out, err = run(capsys, "gen", "sis", "--beta", 20, "--q", 17)
        assert code == 2 and out == "" and "beta" in err


@pytest.fixture
def z2file(tmp_path):
    p = tmp_path / "z2.txt"
    p.write_text("2 2\n1 0\n0 1\n")
    return p


class TestSolve:
    def test_z2_svp(self, tmp_path, capsys, z2file):
        inst = tmp_path / "i.json"
        run(capsys, "gen", "svp", "--basis", z2file, "--out", inst)
        code, out, _ = run(capsys, "solve", inst)
        d = json.loads(out)
        assert code == 0 and d["status"] == "solved" and d["norm_squared"] == "1/1"
        assert d["vectors"] == [[1, 0]]

    @pytest.mark.parametrize("d,code", [("1", 0), ("3/5", 3), ("2/5", 1)])
    def test_gap_svp_exit_codes(self, tmp_path, capsys, z2file, d, code):
        inst = tmp_path / "g.json"
        run(capsys, "gen", "gap-svp", "--basis", z2file, "--d", d, "--gamma", 2, "--out", inst)
        assert run(capsys, "solve", inst)[0] == code

    def test_unparseable(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(capsys, "solve", bad)[0] == 2
        assert run(capsys, "solve", tmp_path / "missing.json")[0] == 2

    def test_usvp_promise_violation(self, tmp_path, capsys, z2file):
        inst = tmp_path / "u.json"
        run(capsys, "gen", "usvp", "--basis", z2file, "--gamma", "3/2", "--out", inst)
        assert run(capsys, "solve", inst)[0] == 3


class TestVerify:
    def _solved(self, tmp_path, capsys, problem, *extra):
        inst, cert = tmp_path / "i.json", tmp_path / "c.json"
        run(capsys, "gen", problem, *extra, "--out", inst)
        run(capsys, "solve", inst, "--out", cert)
        return inst, cert

    def test_tampered_vector(self, tmp_path, capsys):
        inst, cert = self._solved(tmp_path, capsys, "svp", "--dim", 3, "--seed", 1)
        d = json.loads(cert.read_text())
        d["vectors"][0][0] += 1
        cert.write_text(json.dumps(d))
        assert run(capsys, "verify", inst, cert)[0] == 1

    def test_non_shortest_rejected(self, tmp_path, capsys):
        inst, cert = self._solved(tmp_path, capsys, "svp", "--dim", 3, "--seed", 1)
        d = json.loads(cert.read_text())
        d["vectors"][0] = [2 * x for x in d["vectors"][0]]
        d["norm_squared"] = None
        cert.write_text(json.dumps(d))
        code, out, _ = run(capsys, "verify", inst, cert)
        assert code == 1 and "longer" in out

    def test_sis_zero_vector(self, tmp_path, capsys):
        inst, cert = self._solved(tmp_path, capsys, "sis", "--seed", 3)
        d = json.loads(cert.read_text())
        d["vectors"] = [[0] * 6]
        cert.write_text(json.dumps(d))
        code, out, _ = run(capsys, "verify", inst, cert, "--json")
        assert code == 1 and json.loads(out) == {"valid": False, "reason": "zero vector"}

    def test_wrong_decision(self, tmp_path, capsys, z2file):
        inst, cert = self._solved(tmp_path, capsys, "gap-svp", "--basis", z2file, "--d", "1")
        d = json.loads(cert.read_text())
        d["verdict"] = "no"
        cert.write_text(json.dumps(d))
        assert run(capsys, "verify", inst, cert)[0] == 1

    def test_lwe_wrong_secret(self, tmp_path, capsys):
        inst, cert = self._solved(tmp_path, capsys, "lwe", "--seed", 2)
        d = json.loads(cert.read_text())
        d["secret"] = [(d["secret"][0] + 1) % 17, d["secret"][1]]
        d["norm_squared"] = None
        cert.write_text(json.dumps(d))
        assert run(capsys, "verify", inst, cert)[0] == 1

    def test_mismatched_problem(self, tmp_path, capsys):
        inst, _ = self._solved(tmp_path, capsys, "svp", "--seed", 1)
        other = tmp_path / "o.json"
        run(capsys, "gen", "sis", "--seed", 1, "--out", tmp_path / "s.json")
        run(capsys, "solve", tmp_path / "s.json", "--out", other)
        assert run(capsys, "verify", inst, other)[0] == 2


class TestRelationsAndExamples:
    @pytest.mark.parametrize("name,seed", [("svp-cvp", 2), ("sbp-sivp", 4), ("usvp-bdd", 9)])
    def test_relations(self, capsys, name, seed):
        code, out, _ = run(capsys, "relations", name, "--trials", 50, "--seed", seed)
        assert code == 0 and json.loads(out)["summary"] is True

    def test_reduce_alias_and_unknown(self, capsys):
        assert run(capsys, "reduce", "svp-cvp", "--trials", 3)[0] == 0
        assert run(capsys, "relations", "bogus")[0] == 2

    def test_paper_examples(self, capsys):
        code, first, _ = run(capsys, "paper-examples")
        assert code == 0 and "FAIL" not in first
        assert run(capsys, "paper-examples")[1] == first
        code, out, _ = run(capsys, "paper-examples", "--json")
        d = json.loads(out)
        assert d["all_pass"] and len(d["checks"]) == 6

    def test_ajtai(self, capsys):
        code, out, _ = run(capsys, "ajtai", "--n", 100, "--json")
        assert code == 0 and json.loads(out)["gammas"]["svp (c2)"]["value"] == pytest.approx(100)

    def test_usage_errors(self, capsys):
        assert run(capsys, "gen", "nonsense")[0] == 2
        assert run(capsys, "gen", "svp", "--dim", 0)[0] == 2
        assert run(capsys, "gen", "svp", "--gamma", "1/2")[0] == 2
        assert run(capsys)[0] == 2
