from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import Z2, bases, rationals
from latprob.core import Basis
from latprob.errors import InvalidParameterError
from latprob.exact import decide_gap_cvp
from latprob.reductions import (
    PROFILES,
    RELATIONS,
    ajtai_regime,
    check_sbp_sivp_instance,
    check_usvp_bdd_instance,
    gap_cvp_from_search,
    verify_sbp_sivp_relation,
    verify_svp_cvp_relation,
    verify_usvp_bdd_chain,
)


class TestAjtaiRegime:
    def test_micciancio_regev_svp(self):
        r = ajtai_regime(100, "micciancio-regev")
        assert r.c2 == 1 and r.gamma_svp.value == pytest.approx(100)
        assert not r.gamma_svp.lower_bound

    def test_cai_nerurkar(self):
        r = ajtai_regime(2, "cai-nerurkar")
        assert (r.c0, r.c1, r.c2) == (3, Fraction(7, 2), 4)
        assert r.gamma_sbp.value == pytest.approx(2 ** 3.5)
        assert r.gamma_sbp.lower_bound
        assert "c > 7/2" in r.gamma_sbp.describe("sbp")

    def test_original_unstated(self):
        r = ajtai_regime(5, "ajtai-original")
        assert r.c0 is None and r.gamma_svp.value is None
        assert "not stated" in r.gamma_svp.describe("svp")

    @pytest.mark.parametrize("profile", PROFILES)
    def test_n1_is_one(self, profile):
        r = ajtai_regime(1, profile)
        assert r.gamma_svp.value == r.gamma_sivp.value == r.gamma_sbp.value == 1

    @pytest.mark.parametrize("profile", ["cai-nerurkar", "micciancio-regev"])
    @given(n=st.integers(1, 500))
    def test_monotone(self, profile, n):
        a, b = ajtai_regime(n, profile), ajtai_regime(n + 1, profile)
        for k in ("gamma_svp", "gamma_sivp", "gamma_sbp"):
            assert getattr(a, k).value <= getattr(b, k).value

    @given(st.integers(2, 500))
    def test_mr_dominates_cn(self, n):
        assert ajtai_regime(n, "micciancio-regev").gamma_svp.value < ajtai_regime(n, "cai-nerurkar").gamma_svp.value

    def test_bad_inputs(self):
        with pytest.raises(InvalidParameterError):
            ajtai_regime(0)
        with pytest.raises(InvalidParameterError):
            ajtai_regime(3, "nope")


class TestUsvpBdd:
    def test_constructed(self):
        b = Basis.diagonal([1, 10])
        ok, _ = check_usvp_bdd_instance(b, Fraction(2), (Fraction(3, 10) + 4, 20), (4, 20))
        assert ok

    def test_promise_failure_is_skipped(self):
        ok, why = check_usvp_bdd_instance(Z2, Fraction(2), (0, 0), (0, 0))
        assert ok is None and "promise" in why

    def test_chain_seed9(self):
        rep = verify_usvp_bdd_chain(50, 9)
        assert rep.passed and rep.instances + rep.skipped == 50 and rep.instances > 0


class TestSbpSivp:
    def test_examples(self):
        assert check_sbp_sivp_instance(Z2) == (True, 1, 1)
        assert check_sbp_sivp_instance(Basis.diagonal([1, 3])) == (True, 9, 9)

    def test_seed4(self):
        rep = verify_sbp_sivp_relation(50, 4)
        assert rep.passed and rep.instances == 50


class TestSvpCvp:
    def test_seed2(self):
        rep = verify_svp_cvp_relation(50, 2)
        assert rep.passed and rep.instances == 50

    @pytest.mark.parametrize("p", ["l1", "linf"])
    def test_other_norms(self, p):
        assert verify_svp_cvp_relation(15, 1, p).passed

    def test_report_dict(self):
        d = verify_svp_cvp_relation(3, 0).as_dict()
        assert d["summary"] is True and d["instances"] == 3 and d["passed"] == 3


class TestGapCvpFromSearch:
    def test_example(self):
        h = Fraction(1, 2)
        assert gap_cvp_from_search(Z2, (h, 0), "l2", h, 2).value == "yes"

    @given(bases(max_rank=3), st.data(), st.sampled_from(["l1", "l2", "linf"]))
    def test_agrees_with_decision(self, b, data, p):
        t = data.draw(st.lists(rationals(-10, 10), min_size=b.m, max_size=b.m))
        d = data.draw(rationals(0, 5).filter(lambda x: x > 0))
        gamma = data.draw(st.sampled_from([1, Fraction(3, 2), 2, 3]))
        assert gap_cvp_from_search(b, t, p, d, gamma) is decide_gap_cvp(b, t, p, d, gamma)


def test_registry():
    assert set(RELATIONS) == {"svp-cvp", "sbp-sivp", "usvp-bdd"}
