import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import B2, Z2, bases, random_basis, rationals
from latprob.core import Basis, determinant, is_member, lll_reduce, unimodular_randomize, vector_norm
from latprob.errors import InvalidParameterError, ResourceLimitError
from latprob.exact import (
    PromiseDecision,
    bdd_solve,
    covering_radius_estimate,
    cvp_exact,
    decide_crp,
    decide_gap_cvp,
    decide_gap_svp,
    exists_within,
    minkowski_holds,
    rank_of,
    sbp_bruteforce,
    shortest_value,
    sivp_solve,
    slp_bounds,
    successive_minima,
    svp_approx,
    svp_exact,
    usvp_solve,
)
from latprob.oracles import bruteforce_cvp_value, bruteforce_sbp_value, bruteforce_svp_value

NORMS = ["l2", "l1", "linf"]
YES, NO, VIOL = PromiseDecision.YES, PromiseDecision.NO, PromiseDecision.PROMISE_VIOLATED


class TestSvp:
    def test_z2_tie_break(self):
        c = svp_exact(Z2)
        assert c.vector == (1, 0) and c.norm_value == 1 and c.verified

    def test_worked_basis(self):
        assert svp_exact(B2).norm_value == 1

    def test_random_seed42_matches_box_search(self):
        b = random_basis(random.Random(42), 3)
        assert svp_exact(b).norm_value == bruteforce_svp_value(b)

    @pytest.mark.parametrize("p", NORMS)
    @given(b=bases(max_rank=4, extra_ambient=1))
    def test_matches_oracle(self, p, b):
        c = svp_exact(b, p)
        assert c.verified and any(c.vector) and is_member(b, c.vector)
        assert c.norm_value == bruteforce_svp_value(b, p)

    @given(bases(max_rank=4), st.integers(0, 10**6))
    def test_unimodular_invariance(self, b, seed):
        assert svp_exact(unimodular_randomize(b, seed)).norm_value == svp_exact(b).norm_value

    def test_rank_limit(self):
        with pytest.raises(ResourceLimitError):
            svp_exact(Basis.identity(13))

    def test_gamma_below_one_rejected(self):
        with pytest.raises(InvalidParameterError):
            svp_exact(Z2, gamma=Fraction(1, 2))

    def test_approx_within_gamma(self):
        b = random_basis(random.Random(3), 3)
        c = svp_approx(b, "l2", 2)
        assert c.norm_value <= 4 * shortest_value(b)


class TestCvp:
    def test_z2(self):
        c = cvp_exact(Z2, (Fraction(2, 5), Fraction(3, 5)))
        assert c.vector == (0, 1) and c.norm_value == Fraction(8, 25)

    def test_lattice_point(self):
        c = cvp_exact(B2, (199, 2))
        assert c.vector == (199, 2) and c.norm_value == 0

    def test_worked_basis_half(self):
        c = cvp_exact(B2, (0, Fraction(1, 2)))
        assert c.norm_value == Fraction(1, 4)
        assert c.vector in ((0, 0), (0, 1))

    @pytest.mark.parametrize("p", NORMS)
    @given(b=bases(max_rank=3, extra_ambient=1), data=st.data())
    def test_matches_oracle(self, p, b, data):
        t = data.draw(st.lists(rationals(-15, 15), min_size=b.m, max_size=b.m))
        c = cvp_exact(b, t, p)
        assert c.verified
        assert c.norm_value == vector_norm([x - y for x, y in zip(t, c.vector)], p)
        assert c.norm_value == bruteforce_cvp_value(b, t, p)

    @given(bases(max_rank=3, extra_ambient=1), st.data())
    def test_zero_iff_member(self, b, data):
        t = data.draw(st.lists(st.integers(-20, 20), min_size=b.m, max_size=b.m))
        assert (cvp_exact(b, t).norm_value == 0) == is_member(b, t)


class TestSuccessiveMinima:
    def test_z3(self):
        assert successive_minima(Basis.identity(3)).values == (1, 1, 1)

    def test_diag(self):
        assert successive_minima(Basis.diagonal([1, 3])).values == (1, 9)

    def test_seed7_against_box_search(self):
        b = random_basis(random.Random(7), 3)
        sm = successive_minima(b)
        assert sm.values[0] == bruteforce_svp_value(b)
        # lambda_n is at most the best basis max-norm, and at least lambda1
        assert sm.values[0] <= sm.values[-1] <= bruteforce_sbp_value(b)

    @given(bases(max_rank=3, extra_ambient=1))
    def test_properties(self, b):
        sm = successive_minima(b)
        assert list(sm.values) == sorted(sm.values)
        assert sm.values[0] == svp_exact(b).norm_value
        assert rank_of(sm.vectors) == b.n
        assert all(vector_norm(v) == x for v, x in zip(sm.vectors, sm.values))

    @given(bases(max_rank=3))
    def test_minkowski(self, b):
        assert minkowski_holds(b, svp_exact(b).norm_value)


class TestSivpSbp:
    def test_sivp_z2(self):
        c = sivp_solve(Z2)
        assert set(c.vectors) == {(1, 0), (0, 1)} and c.norm_value == 1

    def test_sivp_diag(self):
        assert sivp_solve(Basis.diagonal([1, 3])).norm_value == 9

    def test_sivp_gamma2(self):
        b = random_basis(random.Random(11), 3)
        c = sivp_solve(b, "l2", 2)
        assert c.norm_value <= 4 * successive_minima(b).values[-1]
        assert rank_of(c.vectors) == 3

    def test_sbp_examples(self):
        assert sbp_bruteforce(Z2).norm_value == 1
        c = sbp_bruteforce(B2)
        assert c.norm_value == 1
        from latprob.core import lattice_equal
        assert lattice_equal(Basis(c.vectors), B2)

    def test_sbp_seed5(self):
        b = random_basis(random.Random(5), 2)
        assert sbp_bruteforce(b).details["optimal"] == bruteforce_sbp_value(b)

    @given(bases(min_rank=2, max_rank=2))
    def test_sbp_matches_exhaustive(self, b):
        assert sbp_bruteforce(b).details["optimal"] == bruteforce_sbp_value(b)


class TestUniqueAndBdd:
    def test_usvp_holds(self):
        c = usvp_solve(Basis.diagonal([1, 10]), "l2", 2)
        assert c.status == "solved" and c.promise and c.vector in ((1, 0), (-1, 0))

    def test_usvp_violated(self):
        c = usvp_solve(Z2, "l2", Fraction(3, 2))
        assert c.status == "promise-violated" and not c.promise

    def test_usvp_planted_seed3(self):
        from latprob.reductions import planted_usvp_lattice
        b = planted_usvp_lattice(random.Random(3), 3)
        c = usvp_solve(b, "l2", 2)
        sm = successive_minima(b)
        assert c.promise == (sm.values[1] > 4 * sm.values[0])

    def test_bdd_example(self):
        c = bdd_solve(Basis.diagonal([1, 10]), (Fraction(3, 10), 0), "l2", Fraction(2, 5))
        assert c.vector == (0, 0) and c.promise

    def test_bdd_lattice_point(self):
        c = bdd_solve(B2, (100, 1), "l2", Fraction(1, 10))
        assert c.vector == (100, 1) and c.norm_value == 0

    def test_bdd_recovers_planted(self):
        rng = random.Random(8)
        b = random_basis(rng, 3)
        lam = shortest_value(b)
        v = b.vector([2, -1, 3])
        e = (Fraction(1, 10), 0, Fraction(-1, 10))
        assert vector_norm(e) < lam / 4
        c = bdd_solve(b, tuple(x + y for x, y in zip(v, e)), "l2", Fraction(1, 2))
        assert c.vector == v and c.promise


class TestSlp:
    def test_z2(self):
        s = slp_bounds(Z2)
        assert s.lower == s.upper == 1

    def test_worked_basis(self):
        s = slp_bounds(B2)
        assert s.lower == Fraction(1, 10001) and s.upper == 9802

    def test_after_lll(self):
        s = slp_bounds(lll_reduce(B2))
        assert s.lower == s.upper == 1

    @pytest.mark.parametrize("p", NORMS)
    @given(b=bases(max_rank=3))
    def test_brackets_lambda1(self, p, b):
        s = slp_bounds(b, p)
        assert s.lower <= shortest_value(b, p) <= s.upper


class TestCoveringRadius:
    @pytest.mark.parametrize("basis,exact_sq", [
        (Basis.identity(1), Fraction(1, 4)),
        (Basis.identity(2), Fraction(1, 2)),
        (Basis.diagonal([1, 3]), Fraction(5, 2)),
    ])
    def test_known_values(self, basis, exact_sq):
        cb = covering_radius_estimate(basis)
        assert cb.lower_sq == exact_sq
        assert cb.lower_sq <= exact_sq <= cb.upper_sq

    def test_deep_hole_of_z2(self):
        assert covering_radius_estimate(Z2).deep_hole == (Fraction(1, 2), Fraction(1, 2))

    def test_crp_examples(self):
        assert decide_crp(Z2, 1, 1) is YES
        assert decide_crp(Z2, Fraction(3, 10), 2) is NO
        assert decide_crp(Z2, Fraction(1, 2), 2) is VIOL


def _threshold(value, d, gamma):
    if value <= d * d:
        return YES
    if value > gamma * gamma * d * d:
        return NO
    return VIOL


class TestDecisions:
    def test_gap_svp_examples(self):
        assert decide_gap_svp(Z2, "l2", 1, 2) is YES
        assert decide_gap_svp(Z2, "l2", Fraction(2, 5), 2) is NO
        assert decide_gap_svp(Z2, "l2", Fraction(3, 5), 2) is VIOL

    def test_gap_cvp_examples(self):
        h = Fraction(1, 2)
        assert decide_gap_cvp(Z2, (h, 0), "l2", h, 2) is YES
        assert decide_gap_cvp(Z2, (h, h), "l2", Fraction(1, 4), 2) is NO
        assert decide_gap_cvp(Z2, (h, 0), "l2", Fraction(2, 5), 2) is VIOL

    @given(bases(max_rank=3), rationals(0, 6).filter(lambda x: x > 0), st.sampled_from([1, 2, 3]))
    def test_gap_svp_consistent(self, b, d, gamma):
        assert decide_gap_svp(b, "l2", d, gamma) is _threshold(svp_exact(b).norm_value, d, gamma)

    @given(bases(max_rank=3), st.data())
    def test_gap_cvp_consistent(self, b, data):
        t = data.draw(st.lists(rationals(-10, 10), min_size=b.m, max_size=b.m))
        d = data.draw(rationals(0, 4).filter(lambda x: x > 0))
        assert decide_gap_cvp(b, t, "l2", d, 2) is _threshold(cvp_exact(b, t).norm_value, d, 2)

    def test_nonpositive_d_rejected(self):
        with pytest.raises(InvalidParameterError):
            decide_gap_svp(Z2, "l2", 0, 2)


class TestExistsWithin:
    def test_strict_boundary(self):
        assert exists_within(Z2, "l2", Fraction(1))
        assert not exists_within(Z2, "l2", Fraction(1), strict=True)

    def test_det_of_worked_basis(self):
        assert determinant(B2).gram == 1
