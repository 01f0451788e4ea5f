from fractions import Fraction

import pytest

from heightbounds.bounds import optimal_b, rho
from heightbounds.forms import ExceptionalSet, MultihomogeneousPolynomial, weight_scheme
from heightbounds.spotcheck import SpotcheckError, polydisk_spotcheck
from heightbounds.verify import build_sum_form


@pytest.fixture
def corollary_setup(golden):
    F, E = build_sum_form(golden, 1)
    b = Fraction(optimal_b(1, 1, bits=48).b).limit_denominator(10**9)
    scheme = weight_scheme(F, E, b)
    _, log_rho = rho(1, 1, 64)
    return F, E, scheme, -float(log_rho.mid)


class TestSpotcheck:
    def test_corollary_consistent_and_tight(self, corollary_setup):
        F, E, scheme, neg_log_rho = corollary_setup
        rep = polydisk_spotcheck(F, E, scheme, trials=40, reference=neg_log_rho, seed=1)
        assert rep.feasible
        assert rep.structure_ok
        assert rep.consistent
        # for this form the polydisk supremum equals -log rho; the search
        # should get close from below
        assert rep.best_phi <= neg_log_rho + 1e-4
        assert rep.best_phi >= neg_log_rho - 5e-2

    def test_forced_unit_moduli(self):
        F = MultihomogeneousPolynomial((1,), (1,), {((1, 0),): 1, ((0, 1),): -1})
        E = ExceptionalSet([])
        scheme = weight_scheme(F, E, 0)
        rep = polydisk_spotcheck(F, E, scheme, trials=8, seed=2)
        assert rep.feasible and rep.structure_ok
        assert all(abs(m - 1) < 1e-9 for m in rep.best_moduli)

    def test_empty_polydisk_zero_set(self):
        # every zero of x10*x11 has a vanishing coordinate: no feasible point
        F = MultihomogeneousPolynomial((1,), (2,), {((1, 1),): 1})
        scheme = weight_scheme(F, ExceptionalSet([]), 0)
        rep = polydisk_spotcheck(F, ExceptionalSet([]), scheme, trials=5, seed=3)
        assert not rep.feasible

    def test_unsupported_shape(self):
        F = MultihomogeneousPolynomial((2,), (1,), {((1, 0, 0),): 1, ((0, 0, 1),): 1})
        scheme_b = Fraction(0)
        with pytest.raises(SpotcheckError):
            polydisk_spotcheck(F, ExceptionalSet([]),
                               weight_scheme(F, ExceptionalSet([]), scheme_b),
                               trials=1)

    def test_trials_validated(self, corollary_setup):
        F, E, scheme, _ = corollary_setup
        with pytest.raises(SpotcheckError):
            polydisk_spotcheck(F, E, scheme, trials=0)

    def test_deterministic_given_seed(self, corollary_setup):
        F, E, scheme, ref = corollary_setup
        a = polydisk_spotcheck(F, E, scheme, trials=10, reference=ref, seed=7)
        b = polydisk_spotcheck(F, E, scheme, trials=10, reference=ref, seed=7)
        assert a.best_phi == b.best_phi and a.best_moduli == b.best_moduli
