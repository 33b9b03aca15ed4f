"""Special functions and the numeric constants used throughout.

The classical special functions (log Gamma, digamma, E1, Hurwitz zeta) are
thin domain-checked wrappers over math/scipy.special; the constants are
computed here from scratch with explicit truncation control so repeated
evaluation is bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy import special as sp

EULER_GAMMA = float(np.euler_gamma)


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if x <= 0:
        raise ValueError("log_gamma requires x > 0")
    return math.lgamma(x)


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    if x <= 0:
        raise ValueError("digamma requires x > 0")
    return float(sp.psi(x))


def exp_integral_E1(x: float) -> float:
    """E1(x) = integral of e^(-t)/t from x to infinity, x > 0."""
    if x <= 0:
        raise ValueError("exp_integral_E1 requires x > 0")
    return float(sp.exp1(x))


def hurwitz_zeta(n: int, x: float) -> float:
    """zeta(n, x) = sum_{k>=0} (k+x)^(-n) for integer n >= 2, 0 < x <= 1."""
    if n < 2:
        raise ValueError("hurwitz_zeta requires n >= 2")
    if not 0 < x <= 1:
        raise ValueError("hurwitz_zeta requires 0 < x <= 1")
    return float(sp.zeta(n, x))


def prime_zeta(s: int) -> float:
    """P(s) = sum over primes of p^(-s), integer s >= 2.

    Moebius inversion of log zeta: P(s) = sum_k mu(k)/k * log zeta(ks).
    Terms decay like 2^(-ks); the loop stops once they underflow.
    """
    if s < 2:
        raise ValueError("prime_zeta requires s >= 2")
    from .ntheory import moebius

    total = 0.0
    k = 1
    while True:
        zc = float(sp.zetac(k * s))  # zeta(ks) - 1, accurate near 0
        if zc == 0.0:
            break
        m = moebius(k)
        if m:
            total += m * math.log1p(zc) / k
        k += 1
        if k * s > 1100:
            break
    return total


# --- constants -------------------------------------------------------------

_A_HEAD_CUTOFF = 10**6


def _a_tail_density(x: np.ndarray | float):
    # asymptotic psi(a)/a with a = x(x-1)/2; error O(a^-4)/a per point
    a = 0.5 * (x * x - x)
    pa = np.log(a) - 1.0 / (2.0 * a) - 1.0 / (12.0 * a * a)
    return pa / a


@lru_cache(maxsize=1)
def power_sum_constant() -> float:
    """Limit constant of the prime-power congruence-sum bound.

    A = sum_{m>=2} (1/m) sum_{k=m(m-1)/2}^{m(m+1)/2 - 1} 1/k, evaluated via
    the equivalent series  gamma/2 + (1/2) sum_{j>=3} psi(a(j))/a(j)  with
    a(j) = j(j-1)/2: exact digamma head to j = 1e6, then an Euler-Maclaurin
    tail on the asymptotic digamma expansion (quadrature in log space plus
    h/2 - h'/12 corrections).  Good to ~1e-13 absolute.
    """
    head = 0.0
    comp = 0.0
    for lo in range(3, _A_HEAD_CUTOFF + 1, 500_000):
        hi = min(lo + 500_000 - 1, _A_HEAD_CUTOFF)
        j = np.arange(lo, hi + 1, dtype=np.float64)
        a = 0.5 * (j * j - j)
        s = float(np.sum(sp.psi(a) / a))
        y = s - comp
        t = head + y
        comp = (t - head) - y
        head = t

    a0 = float(_A_HEAD_CUTOFF + 1)
    integrand = lambda u: float(_a_tail_density(math.exp(u)) * math.exp(u))
    integral, _ = integrate.quad(
        integrand, math.log(a0), math.log(a0) + 60.0, epsabs=1e-18, epsrel=1e-13, limit=400
    )
    h0 = float(_a_tail_density(a0))
    eps = a0 * 1e-5
    hp = (float(_a_tail_density(a0 + eps)) - float(_a_tail_density(a0 - eps))) / (2 * eps)
    tail = integral + h0 / 2.0 - hp / 12.0
    return EULER_GAMMA / 2.0 + 0.5 * (head + tail)


@lru_cache(maxsize=1)
def minimize_harmonic_loglog() -> tuple[int, float]:
    """Minimize c(k) = (1/4) H_((k-1)/2) - log log k over odd k in [3, 1e4]."""
    ks = np.arange(3, 10_001, 2)
    half = (ks - 1) // 2
    harm = np.cumsum(1.0 / np.arange(1, half[-1] + 1, dtype=np.float64))
    c = 0.25 * harm[half - 1] - np.log(np.log(ks))
    i = int(np.argmin(c))
    return int(ks[i]), float(c[i])


@lru_cache(maxsize=1)
def meissel_mertens() -> float:
    """Meissel-Mertens constant via the prime-power form.

    M = gamma - sum_{m>=2} P(m)/m; the dropped tail beyond the last
    nonzero P(m) is below 2^-55.
    """
    total = 0.0
    for m in range(2, 60):
        pm = prime_zeta(m)
        if pm == 0.0:
            break
        total += pm / m
    return EULER_GAMMA - total


@dataclass(frozen=True)
class ConstantsTable:
    euler_gamma: float
    meissel_mertens: float
    power_sum_constant: float
    harmonic_loglog_min: float
    k_opt: int


@lru_cache(maxsize=1)
def constants_table() -> ConstantsTable:
    """All constants, computed once; repeated calls are bit-identical."""
    k_opt, c_min = minimize_harmonic_loglog()
    return ConstantsTable(
        euler_gamma=EULER_GAMMA,
        meissel_mertens=meissel_mertens(),
        power_sum_constant=power_sum_constant(),
        harmonic_loglog_min=c_min,
        k_opt=k_opt,
    )
