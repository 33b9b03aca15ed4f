import math

import numpy as np
import pytest

from bsratio import (
    check_dusart,
    check_envelope,
    log_ratio_fft,
    prime_power_sum,
    refined_bound,
    sieve_primes,
    simple_bound,
)
from bsratio.bounds import (
    envelope_interval,
    normalized_in_band,
    report_for,
    siegel_zero_envelope,
    siegel_zero_factor,
)
from bsratio.specfun import power_sum_constant


class TestSimpleBound:
    def test_below_1608_from_7(self):
        for q in sieve_primes(1000)[3:]:
            assert simple_bound(int(q)) <= 1.608

    def test_limit(self):
        assert simple_bound(10**9 + 7) == pytest.approx(power_sum_constant(), abs=1e-8)

    def test_q3_formula(self):
        a = power_sum_constant()
        assert simple_bound(3) == a + (math.pi**2 / 6 - a) / 3

    def test_monotone_decreasing(self):
        qs = [int(q) for q in sieve_primes(10**4)[1:]]
        vals = [simple_bound(q) for q in qs]
        assert all(b < a for a, b in zip(vals, vals[1:]))


class TestRefinedBound:
    def test_peak_values(self):
        # peak region values pinned against a 30-digit evaluation and a
        # direct summation of the defining double series
        assert refined_bound(229) == pytest.approx(1.600184966176142, abs=1e-12)
        assert refined_bound(233) == pytest.approx(1.600184966208130, abs=1e-12)

    def test_max_location(self):
        qs = [int(q) for q in sieve_primes(10**4)[1:]]
        vals = np.array([refined_bound(q) for q in qs])
        assert float(vals.max()) < 1.600186
        assert qs[int(np.argmax(vals))] == 233

    def test_never_exceeds_simple(self):
        for q in sieve_primes(10**4)[1:]:
            q = int(q)
            assert refined_bound(q) <= simple_bound(q) + 1e-12

    def test_asymptotic(self):
        assert abs(refined_bound(10**6 + 3) - power_sum_constant()) < 0.01


class TestEnvelope:
    def test_interval_shape(self):
        lo, hi = envelope_interval(1009)
        assert 0 < lo < hi

    def test_scan_above_threshold(self, field):
        for q in (1009, 2003, 5003):
            assert check_envelope(log_ratio_fft(field(q)))

    def test_q3_reported_only(self, field):
        rec = log_ratio_fft(field(3))
        # below the reporting threshold the value is informational
        assert isinstance(check_envelope(rec), bool)

    def test_normalized_band(self, field):
        assert normalized_in_band(log_ratio_fft(field(1009)))


class TestDusart:
    def test_at_threshold(self):
        assert check_dusart(2278383)

    def test_domain(self):
        with pytest.raises(ValueError):
            check_dusart(10**6)


class TestSiegelEvaluator:
    def test_factor_decreases_toward_one(self):
        betas = [0.5, 0.9, 0.99, 0.999]
        vals = [siegel_zero_factor(b) for b in betas]
        assert all(b < a for a, b in zip(vals, vals[1:]))  # E1 grows as beta -> 1
        assert all(0 < v < 1.0 for v in vals[1:])

    def test_envelope_ordering(self):
        lo, hi = siegel_zero_envelope(1009, 0.999, ell=2.0)
        assert 0 < lo < hi

    def test_domain(self):
        with pytest.raises(ValueError):
            siegel_zero_factor(1.0)
        with pytest.raises(ValueError):
            siegel_zero_envelope(101, 0.9, ell=0.0)


class TestReportRow:
    def test_sigma2_connection(self, field):
        rec = log_ratio_fft(field(101))
        s2 = prime_power_sum(101, delta=6)
        rep = report_for(rec, sigma2=s2)
        assert rep.sigma2_ok is True
        assert abs(s2) <= simple_bound(101)

    def test_without_sigma2(self, field):
        rep = report_for(log_ratio_fft(field(101)))
        assert rep.sigma2_ok is None
        assert rep.simple_bound == simple_bound(101)
