"""Independent verification of log R(q) through truncated Euler products.

The Euler product over primes is split at P = A*q.  The head (p <= P) is
a finite sum evaluated exactly; the tail collapses, via Moebius inversion,
to values of truncated L-functions L_P(s, chi) = prod_{p>P} (1-chi(p)p^-s)^-1
at integer s = km >= 2 (plus the single km=1 term, which reuses L(1, chi)
magnitudes from the direct per-character route, never the FFT).  Both
truncation remainders have closed-form bounds

    |E1(q,P,M)|   <= P(q-1) / (M(M-1)(P-1)P^M)          (depth in m)
    |E2(q,P,M,K)| <= 2P(q-1) / (K^2 (P-1)(P^K - 1))     (depth in k)

so M and K can be chosen to push E1+E2 below any requested 10^-delta.

Character-indexed sums are evaluated over root-of-unity orbits: as j runs
over all characters, chi_{ju}(p) = e(ju*dlog(p)/n) sweeps the (n/g)-th
roots of unity g = gcd(u*dlog(p), n) times each, and
prod_{t<m} (1 - e(t/m) x) = 1 - x^m collapses every inner product to a
real log.  That keeps the whole verifier O(#distinct km * (q log q + pi(P))).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from math import fsum, gcd

import numpy as np
from scipy import special as sp

from .errors import CostGuardError, VerificationError
from .fft import char_spectrum
from .ntheory import PrimeField, build_field, moebius, sieve_primes
from .specfun import constants_table, prime_zeta

DEFAULT_A = 20
VERIFY_MAX_Q = 5000

_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class TruncationPlan:
    """Truncation depths with their certified remainder bounds."""

    A: int
    P: int
    M: int
    K: int
    delta: int
    e1_bound: float
    e2_bound: float


@dataclass(frozen=True)
class SigmaSplit:
    """log R(q) split into its prime part and prime-power part.

    prime_sum + power_sum == total bit-exactly as stored.
    """

    q: int
    prime_sum: float
    power_sum: float
    total: float
    plan: TruncationPlan


def _log_e1(q: int, P: int, M: int) -> float:
    return (
        math.log(P)
        + math.log(q - 1)
        - math.log(M)
        - math.log(M - 1)
        - math.log(P - 1)
        - M * math.log(P)
    )


def _log_e2(q: int, P: int, K: int) -> float:
    lpk = K * math.log(P)
    log_pk_m1 = lpk + math.log1p(-math.exp(-lpk)) if lpk < 700 else lpk
    return math.log(2) + math.log(P) + math.log(q - 1) - 2 * math.log(K) - math.log(P - 1) - log_pk_m1


def choose_plan(q: int, A: int = DEFAULT_A, delta: int = 8) -> TruncationPlan:
    """Minimal M, then minimal K, putting each remainder below 10^-delta / 2.

    Both bounds decay geometrically, so the loops terminate for any delta.
    """
    if A < 1 or delta < 1:
        raise ValueError("choose_plan requires A >= 1 and delta >= 1")
    P = A * q
    target = math.log(0.5) - delta * math.log(10.0)
    M = 2
    while _log_e1(q, P, M) >= target:
        M += 1
    K = 1
    while _log_e2(q, P, K) >= target:
        K += 1
    return TruncationPlan(
        A=A,
        P=P,
        M=M,
        K=K,
        delta=delta,
        e1_bound=math.exp(_log_e1(q, P, M)),
        e2_bound=math.exp(_log_e2(q, P, K)),
    )


class _EulerContext:
    """Per-(field, P) scratch: sieved primes, their discrete logs, and one
    cached L(s, .) spectrum per distinct exponent s."""

    def __init__(self, field: PrimeField, P: int):
        if P < field.q:
            raise ValueError("P must be at least q")
        self.field = field
        self.P = int(P)
        primes = sieve_primes(self.P)
        primes = primes[primes != field.q]
        self.primes = primes
        self.pfloat = primes.astype(np.float64)
        self.dlogs = field.dlog[primes % field.q]
        self._spectra: dict[int, np.ndarray] = {}

    def l_values(self, s: int) -> np.ndarray:
        """L(s, chi_j) for every j (principal included at j=0) via
        L(s,chi) = q^-s sum_a chi(a) zeta(s, a/q)."""
        spec = self._spectra.get(s)
        if spec is None:
            q = self.field.q
            f = np.zeros(q)
            f[1:] = sp.zeta(s, np.arange(1, q) / q)
            spec = char_spectrum(self.field, f).sums * float(q) ** (-s)
            self._spectra[s] = spec
        return spec


def head_sum(field: PrimeField, P: int) -> float:
    """r(q,P) = -sum_{chi != chi0} sum_{p<=P} log(1 - chi(p)/p).

    For each prime the character orbit closes up:
    sum_{j != 0} log|1 - chi_j(p)/p| = g log(1 - p^(-n/g)) - log(1 - 1/p)
    with g = gcd(dlog p, n); imaginary parts cancel in conjugate pairs, so
    the total is real exactly.
    """
    ctx = _EulerContext(field, P)
    return _head_sum(ctx)


def _head_sum(ctx: _EulerContext) -> float:
    n = ctx.field.n
    g = np.gcd(ctx.dlogs, n)
    mexp = (n // g).astype(np.float64)
    with np.errstate(under="ignore"):
        terms = g * np.log1p(-ctx.pfloat**-mexp) - np.log1p(-1.0 / ctx.pfloat)
    return -fsum(terms)


def truncated_log_L(s: int, j: int, field: PrimeField, P: int) -> complex:
    """log L_P(s, chi_j) for integer s >= 2 and a nonprincipal character.

    Computed as log L(s, chi_j) + sum_{p<=P} log(1 - chi_j(p) p^-s); every
    factor sits in the unit disc around 1 and the accumulated argument
    stays below pi, so principal-branch logs land on the Euler branch.
    The result must respect |log L_P| <= P^(1-s)/(s-1); violating that is
    an internal error, asserted here.
    """
    if s < 2:
        raise ValueError("truncated_log_L requires s >= 2")
    n = field.n
    j = int(j) % n
    if j == 0:
        raise ValueError("principal character not allowed; use the zeta closed form")
    ctx = _EulerContext(field, P)
    return _truncated_log_L(ctx, s, j)


def _truncated_log_L(ctx: _EulerContext, s: int, j: int) -> complex:
    field = ctx.field
    n = field.n
    lval = ctx.l_values(s)[j]
    ang = (2.0 * np.pi / n) * ((j * ctx.dlogs) % n).astype(np.float64)
    with np.errstate(under="ignore"):
        z = np.exp(1j * ang) * ctx.pfloat ** (-float(s))
        corr = np.log(1.0 - z)
    total = complex(np.log(lval) + complex(fsum(corr.real), fsum(corr.imag)))
    bound = float(ctx.P) ** (1 - s) / (s - 1)
    slack = 1e-11 + 16 * _EPS * math.log2(max(n, 2)) * len(ctx.primes) ** 0.5
    if abs(total) > bound * (1 + 1e-6) + slack:
        raise VerificationError(
            f"|log L_P({s}, chi_{j})| = {abs(total):.3e} exceeds bound {bound:.3e}"
        )
    return total


def _orbit_log_sum(ctx: _EulerContext, u: int) -> float:
    """T(u) = sum_{j=1}^{n-1} Re log L_P(u, chi_(ju mod n)).

    L-part over the orbit of multiples of gcd(u, n); head corrections over
    root-of-unity orbits per prime; the j=0 (principal) term, for which
    L_P(u, chi0) = zeta(u) prod_{p<=P}(1 - p^-u), is subtracted at the end.
    """
    field = ctx.field
    n = field.n
    gs = gcd(u, n)
    idx = gs * np.arange(n // gs)
    lsum = gs * fsum(np.log(np.abs(ctx.l_values(u)[idx])))
    princ = math.log1p(float(sp.zetac(u))) + math.log1p(-float(field.q) ** (-u))

    g2 = np.gcd(u * ctx.dlogs, n)
    with np.errstate(under="ignore"):
        orbit = g2 * np.log1p(-ctx.pfloat ** (-(u * (n // g2)).astype(np.float64)))
        plain = np.log1p(-ctx.pfloat ** (-float(u)))
    total = lsum - princ + fsum(orbit) - fsum(plain)

    bound = (n - 1) * float(ctx.P) ** (1 - u) / (u - 1)
    slack = 1e-10 + 16 * _EPS * math.log2(max(n, 2)) * n
    if abs(total) > bound * (1 + 1e-6) + slack:
        raise VerificationError(f"orbit sum T({u}) = {total:.3e} exceeds bound {bound:.3e}")
    return total


def _tail_coefficients(M: int, K: int, m_start: int) -> dict[int, float]:
    """Net coefficient of Re log L_P(u, chi^u) per u = km, k <= K, m in
    [m_start, M], mu(k) != 0 and (k,m) != (1,1).  For u <= min(M,K) the
    divisor sums cancel to an IEEE-exact zero."""
    coeff: dict[int, float] = defaultdict(float)
    for m in range(m_start, M + 1):
        for k in range(1, K + 1):
            if k == 1 and m == 1:
                continue
            mk = moebius(k)
            if mk:
                coeff[k * m] += mk / (k * m)
    return {u: c for u, c in coeff.items() if c != 0.0}


def moebius_tail(field: PrimeField, plan: TruncationPlan, l1_values) -> float:
    """S(q,P,M,K): the Moebius-inverted tail of the split Euler product.

    The unique km=1 term is sum_chi Re log[L(1,chi) prod_{p<=P}(1-chi(p)/p)]
    = sum_chi log|L(1,chi)| - r(q,P); only magnitudes of the supplied
    L(1,chi) values enter (Re log is branch-independent).
    """
    l1 = np.abs(np.asarray(l1_values))
    if l1.shape[0] != field.n - 1:
        raise ValueError(f"need {field.n - 1} L(1,chi) values, got {l1.shape[0]}")
    if float(np.min(l1)) <= 0.0:
        raise ValueError("L(1,chi) magnitudes must be positive")
    ctx = _EulerContext(field, plan.P)
    log_r_direct = fsum(np.log(l1))
    total = log_r_direct - _head_sum(ctx)
    for u, c in sorted(_tail_coefficients(plan.M, plan.K, m_start=1).items()):
        total += c * _orbit_log_sum(ctx, u)
    return total


def verify_ratio(q: int, A: int = DEFAULT_A, delta: int = 8, max_q: int = VERIFY_MAX_Q) -> SigmaSplit:
    """Recompute log R(q) from prime sums, certified to 10^-delta.

    log_R_check = head_sum + moebius_tail; the returned split carries the
    prime-power part computed by the same machinery, with the prime part
    as the difference (re-rounded so the stored identity is bit-exact).
    """
    if q > max_q:
        raise CostGuardError(f"verifier refused for q={q} > {max_q}")
    field = build_field(q)
    plan = choose_plan(q, A, delta)
    from .ratio import naive_l1_magnitudes

    l1 = naive_l1_magnitudes(field)
    ctx = _EulerContext(field, plan.P)
    total = _head_sum(ctx) + _moebius_tail_ctx(ctx, plan, l1)
    power = _power_sum_ctx(ctx, plan)
    prime = total - power
    return SigmaSplit(q=q, prime_sum=prime, power_sum=power, total=prime + power, plan=plan)


def _moebius_tail_ctx(ctx: _EulerContext, plan: TruncationPlan, l1: np.ndarray) -> float:
    total = fsum(np.log(np.abs(l1))) - _head_sum(ctx)
    for u, c in sorted(_tail_coefficients(plan.M, plan.K, m_start=1).items()):
        total += c * _orbit_log_sum(ctx, u)
    return total


def _power_sum_ctx(ctx: _EulerContext, plan: TruncationPlan) -> float:
    """Prime-power part: exact head over p <= P (geometric closed forms via
    the multiplicative order e_p of p mod q), plus the m >= 2 Moebius tail."""
    field = ctx.field
    n = field.n
    e = (n // np.gcd(ctx.dlogs, n)).astype(np.float64)
    p = ctx.pfloat
    with np.errstate(under="ignore"):
        # sum_{m>=2} 1/(m p^m) and its restriction to e_p | m
        all_m = -np.log1p(-1.0 / p) - 1.0 / p
        on_orbit = np.where(e >= 2, -np.log1p(-(p**-e)) / e, all_m)
    head = fsum(n * on_orbit - all_m)
    tail = 0.0
    for u, c in sorted(_tail_coefficients(plan.M, plan.K, m_start=2).items()):
        tail += c * _orbit_log_sum(ctx, u)

    value = head + tail
    consts = constants_table()
    bound = consts.power_sum_constant + (math.pi**2 / 6 - consts.power_sum_constant) / field.q
    if abs(value) > bound + 10.0 ** (-plan.delta):
        raise VerificationError(
            f"q={field.q}: |prime-power sum| = {abs(value):.6f} violates bound {bound:.6f}"
        )
    return value


def prime_power_sum(q: int, A: int = DEFAULT_A, delta: int = 8, max_q: int = VERIFY_MAX_Q) -> float:
    """The prime-power part of log R(q), certified to 10^-delta."""
    if q > max_q:
        raise CostGuardError(f"verifier refused for q={q} > {max_q}")
    field = build_field(q)
    plan = choose_plan(q, A, delta)
    ctx = _EulerContext(field, plan.P)
    return _power_sum_ctx(ctx, plan)


def prime_sum_split(
    q: int, log_R: float, A: int = DEFAULT_A, delta: int = 8, max_q: int = VERIFY_MAX_Q
) -> SigmaSplit:
    """Prime part of log R(q), computed two independent ways.

    Direct: exact head sum_{p<=P} (sum over chi of chi(p))/p plus the
    m=1-only Moebius tail.  Indirect: log_R minus the certified prime-power
    part.  Disagreement beyond 2*10^-delta (plus rounding headroom) raises.
    """
    if q > max_q:
        raise CostGuardError(f"verifier refused for q={q} > {max_q}")
    field = build_field(q)
    plan = choose_plan(q, A, delta)
    from .ratio import naive_l1_magnitudes

    l1 = naive_l1_magnitudes(field)
    ctx = _EulerContext(field, plan.P)
    n = field.n

    e = n // np.gcd(ctx.dlogs, n)
    head1 = fsum(np.where(e == 1, n - 1, -1) / ctx.pfloat)
    direct = head1 + fsum(np.log(l1)) - _head_sum(ctx)
    for u, c in sorted(_tail_coefficients(1, plan.K, m_start=1).items()):
        direct += c * _orbit_log_sum(ctx, u)

    power = _power_sum_ctx(ctx, plan)
    indirect = log_R - power
    tol = 2.0 * 10.0 ** (-delta) + 1e-10
    if abs(direct - indirect) > tol:
        raise VerificationError(
            f"q={q}: prime-part routes disagree by {abs(direct - indirect):.3e} > {tol:.3e}"
        )
    return SigmaSplit(q=q, prime_sum=direct, power_sum=power, total=direct + power, plan=plan)


def mertens_constant_q1(split: SigmaSplit) -> float:
    """Mertens constant M(q,1) of the progression 1 mod q.

    Inverts prime_sum = (q-1) M(q,1) - M + 1/q  (q prime, so the sum of
    1/p over p | q is 1/q).
    """
    consts = constants_table()
    return (split.prime_sum + consts.meissel_mertens - 1.0 / split.q) / (split.q - 1)


def mertens_power_constant(q: int) -> float:
    """B(q) = -sum_{m>=2} (1/m) sum_{p != q} p^-m for an odd prime q.

    Evaluated both from prime-zeta differences and from the closed form
    M - gamma - (log(1-1/q) + 1/q); the two must agree to 1e-10.
    """
    if q < 3 or q % 2 == 0:
        raise ValueError("q must be an odd prime")
    series = 0.0
    for m in range(2, 60):
        pm = prime_zeta(m) - float(q) ** (-m)
        if pm == 0.0 and m > 4:
            break
        series -= pm / m
    consts = constants_table()
    closed = consts.meissel_mertens - consts.euler_gamma - (math.log1p(-1.0 / q) + 1.0 / q)
    if abs(series - closed) > 1e-10:
        raise VerificationError(
            f"B({q}) forms disagree: series {series!r} vs closed {closed!r}"
        )
    return closed
