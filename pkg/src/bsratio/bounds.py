"""Explicit bounds: the prime-power sum bounds, the R(q) envelopes, and
the prime-reciprocal inequality check."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ratio import RatioRecord
from .specfun import constants_table, digamma, exp_integral_E1
from .ntheory import prime_reciprocal_sum

DUSART_MIN_X = 2278383

ENVELOPE_MIN_Q = 1000
_ENV_LO = math.exp(-1.87)
_ENV_HI = math.exp(0.51)

NORMALIZED_BAND = (0.19, 0.68)


@dataclass(frozen=True)
class BoundReport:
    q: int
    simple_bound: float
    refined_bound: float
    envelope_ok: bool
    normalized_ok: bool
    sigma2_ok: bool | None = None


def simple_bound(q: int) -> float:
    """Uniform bound on (q-1) S_q(b): A + (pi^2/6 - A)/q.

    Decreases monotonically to A along growing q; below 1.608 from q = 7 on.
    """
    if q < 3:
        raise ValueError("q must be an odd prime >= 3")
    a = constants_table().power_sum_constant
    return a + (math.pi**2 / 6 - a) / q


def refined_bound(q: int) -> float:
    """Sharper digamma form: ((q-1)/q)(A + psi(2/q) - psi(1/q)) - (q-1)/2.

    Its maximum over primes is below 1.600177, attained at q = 229.
    """
    if q < 3:
        raise ValueError("q must be an odd prime >= 3")
    a = constants_table().power_sum_constant
    return ((q - 1) / q) * (a + digamma(2.0 / q) - digamma(1.0 / q)) - (q - 1) / 2


def envelope_interval(q: int) -> tuple[float, float]:
    """(e^-1.87 / log q, e^0.51 log q): the no-exceptional-zero envelope
    evaluated at exponent offset 0."""
    lq = math.log(q)
    return _ENV_LO / lq, _ENV_HI * lq


def check_envelope(record: RatioRecord) -> bool:
    """True iff R(q) sits inside the envelope.

    The theoretical statement only holds above an unspecified effective
    threshold; callers treat results below ENVELOPE_MIN_Q as reports, not
    assertions.
    """
    lo, hi = envelope_interval(record.q)
    return lo < record.R < hi


def normalized_in_band(record: RatioRecord) -> bool:
    """True iff R(q) (log q)^(3/4) lies in the empirical band (0.19, 0.68)."""
    v = record.R * math.log(record.q) ** 0.75
    return NORMALIZED_BAND[0] < v < NORMALIZED_BAND[1]


def siegel_zero_factor(beta0: float) -> float:
    """exp(-E1(1 - beta0)) for a hypothetical real zero beta0 < 1.

    Pure formula evaluator for exploring the exceptional-zero envelope;
    no zero search is performed anywhere in this package.
    """
    if not 0.0 < beta0 < 1.0:
        raise ValueError("beta0 must lie in (0, 1)")
    return math.exp(-exp_integral_E1(1.0 - beta0))


def siegel_zero_envelope(q: int, beta0: float, ell: float = 1.0) -> tuple[float, float]:
    """Two-sided envelope for R(q) when a zero at beta0 is hypothesized:
    (e^-1.87 f / ((log q)^2 ell), e^0.51 f (log q)^2 ell) with
    f = exp(-E1(1-beta0))."""
    if ell <= 0:
        raise ValueError("ell must be positive")
    f = siegel_zero_factor(beta0)
    lq2 = math.log(q) ** 2
    return _ENV_LO * f / (lq2 * ell), _ENV_HI * f * lq2 * ell


def check_dusart(x: float) -> bool:
    """|sum_{p<=x} 1/p - log log x - M| <= 0.2/(log x)^3, valid from
    x = 2278383 on."""
    if x < DUSART_MIN_X:
        raise ValueError(f"check_dusart requires x >= {DUSART_MIN_X}")
    s = prime_reciprocal_sum(x)
    m = constants_table().meissel_mertens
    return abs(s - math.log(math.log(x)) - m) <= 0.2 / math.log(x) ** 3


def report_for(record: RatioRecord, sigma2: float | None = None) -> BoundReport:
    """Assemble the per-q bound report row."""
    s2_ok = None
    if sigma2 is not None:
        s2_ok = abs(sigma2) <= simple_bound(record.q)
    return BoundReport(
        q=record.q,
        simple_bound=simple_bound(record.q),
        refined_bound=refined_bound(record.q),
        envelope_ok=check_envelope(record),
        normalized_ok=normalized_in_band(record),
        sigma2_ok=s2_ok,
    )
