"""log R(q) = sum over nonprincipal characters of log L(1, chi).

Three routes to the same number:

* FFT      -- odd characters through the linear-weight sum
              sum_a (a/q) chi(a), even characters through
              sum_a conj(chi)(a) log Gamma(a/q); both reindexed by a
              primitive root and evaluated as one spectrum each.
* DIGAMMA  -- every character through sum_a chi(a) psi(a/q); used as a
              cross-check of the FFT route.
* NAIVE    -- the same per-character sums evaluated by direct O(q^2)
              summation, no FFT code shared; the oracle for both.

All assembly sums go through math.fsum: the parity prefactors grow like
q log q while log R stays O(1), so the final additions cancel massively
and plain accumulation would lose the 1e-10 cross-method target.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .errors import CostGuardError, DegenerateSpectrumError
from .fft import char_spectrum, parity_split
from .ntheory import PrimeField

LOG_2PI = math.log(2.0 * math.pi)
_EPS = np.finfo(np.float64).eps
_DEGENERATE = 1e-30

NAIVE_MAX_Q = 100_000


class Method(enum.Enum):
    FFT = "fft"
    DIGAMMA = "digamma"
    NAIVE = "naive"


@dataclass(frozen=True)
class RatioRecord:
    q: int
    log_R: float
    R: float
    odd_part: float
    even_part: float
    method: Method
    err_est: float


def _linear_weights(q: int) -> np.ndarray:
    return np.arange(q, dtype=np.float64) / q


def _loggamma_weights(q: int) -> np.ndarray:
    f = np.zeros(q)
    f[1:] = sp.gammaln(np.arange(1, q) / q)
    return f


def _digamma_weights(q: int) -> np.ndarray:
    f = np.zeros(q)
    f[1:] = sp.psi(np.arange(1, q) / q)
    return f


def _guard_bins(mag: np.ndarray, q: int, what: str) -> None:
    if mag.size and float(np.min(mag)) < _DEGENERATE:
        raise DegenerateSpectrumError(
            f"q={q}: {what} character sum below {_DEGENERATE:g}; "
            "L(1,chi) cannot vanish, so this is a precision failure"
        )


def _log_abs(mag: np.ndarray) -> list[float]:
    return list(np.log(mag))


def odd_log_sum(field: PrimeField) -> float:
    """Sum of log L(1, chi) over odd characters mod q.

    Equals ((q-1)/2)(log pi - (log q)/2) + sum over odd j of
    log |sum_a (a/q) chi_j(a)|.
    """
    q = field.q
    spec = char_spectrum(field, _linear_weights(q))
    odd, _ = parity_split(spec)
    mag = np.abs(spec.sums[odd])
    _guard_bins(mag, q, "odd")
    pref = ((q - 1) / 2) * (math.log(math.pi) - math.log(q) / 2)
    return math.fsum([pref] + _log_abs(mag))


def even_log_sum(field: PrimeField) -> float:
    """Sum of log L(1, chi) over even nonprincipal characters mod q.

    Equals ((q-3)/2)(log 2 - (log q)/2) + sum over even j != 0 of
    log |sum_a conj(chi_j)(a) log Gamma(a/q)|; conjugation only permutes
    the (conjugate-closed) even class, so chi_j works in place of its
    conjugate.  Empty for q = 3.
    """
    q = field.q
    if q == 3:
        return 0.0
    spec = char_spectrum(field, _loggamma_weights(q))
    _, even = parity_split(spec)
    mag = np.abs(spec.sums[even])
    _guard_bins(mag, q, "even")
    pref = ((q - 3) / 2) * (math.log(2.0) - math.log(q) / 2)
    return math.fsum([pref] + _log_abs(mag))


def _err_estimate(q: int, contributions: list[tuple[float, np.ndarray]]) -> float:
    # forward budget: per-bin FFT error ~ eps log2(n) sum|x|, relative to
    # each consumed bin; heuristic, not certified
    n = q - 1
    total = 0.0
    for sum_abs_x, mags in contributions:
        if mags.size:
            total += sum_abs_x * float(np.sum(1.0 / mags))
    return float(4.0 * _EPS * math.log2(max(n, 2)) * total)


def log_ratio_fft(field: PrimeField) -> RatioRecord:
    """Production route: both parity classes from one packed transform.

    The two real reindexed sequences (linear weights for odd characters,
    log Gamma weights for even ones) ride in the real and imaginary parts
    of a single complex sequence; conjugate symmetry separates the two
    spectra exactly:  A[j] = (S[j] + conj(S[n-j]))/2,
    G[j] = (S[j] - conj(S[n-j]))/(2i).
    """
    q = field.q
    n = field.n
    fa = _linear_weights(q)
    fg = _loggamma_weights(q)
    xa = fa[field.pow_table]
    xg = fg[field.pow_table]
    from .fft import dft_fast

    z = xa + 1j * xg
    s = np.conj(dft_fast(np.conj(z)))  # S[j] = sum_k z[k] e(+jk/n)
    odd = np.arange(1, n, 2)
    even = np.arange(2, n, 2)
    rev = lambda idx: np.conj(s[(n - idx) % n])
    mag_odd = np.abs(0.5 * (s[odd] + rev(odd)))
    _guard_bins(mag_odd, q, "odd")
    odd_part = math.fsum(
        [((q - 1) / 2) * (math.log(math.pi) - math.log(q) / 2)] + _log_abs(mag_odd)
    )

    sum_abs_z = float(np.sum(np.abs(z)))
    contributions = [(sum_abs_z, mag_odd)]
    if q == 3:
        even_part = 0.0
    else:
        mag_even = np.abs(-0.5j * (s[even] - rev(even)))
        _guard_bins(mag_even, q, "even")
        even_part = math.fsum(
            [((q - 3) / 2) * (math.log(2.0) - math.log(q) / 2)] + _log_abs(mag_even)
        )
        contributions.append((sum_abs_z, mag_even))

    log_R = odd_part + even_part
    return RatioRecord(
        q=q,
        log_R=log_R,
        R=math.exp(log_R),
        odd_part=odd_part,
        even_part=even_part,
        method=Method.FFT,
        err_est=_err_estimate(q, contributions),
    )


def log_ratio_digamma(field: PrimeField) -> RatioRecord:
    """Cross-check route: log R = -(q-2) log q + sum_j log|sum_a chi_j(a) psi(a/q)|."""
    q = field.q
    f = _digamma_weights(q)
    spec = char_spectrum(field, f)
    odd, even = parity_split(spec)
    mag_odd = np.abs(spec.sums[odd])
    mag_even = np.abs(spec.sums[even])
    _guard_bins(mag_odd, q, "odd")
    _guard_bins(mag_even, q, "even")
    # log|L(1,chi_j)| = -log q + log|S_j|, split by parity class
    odd_part = math.fsum([-((q - 1) / 2) * math.log(q)] + _log_abs(mag_odd))
    even_part = math.fsum([-((q - 3) / 2) * math.log(q)] + _log_abs(mag_even)) if q > 3 else 0.0
    log_R = odd_part + even_part
    err = _err_estimate(q, [(float(np.sum(np.abs(f))), mag_odd), (float(np.sum(np.abs(f))), mag_even)])
    return RatioRecord(
        q=q,
        log_R=log_R,
        R=math.exp(log_R),
        odd_part=odd_part,
        even_part=even_part,
        method=Method.DIGAMMA,
        err_est=err,
    )


def _naive_abs_sums(field: PrimeField, f_res: np.ndarray) -> np.ndarray:
    """|sum_k f(g^k) e(jk/n)| for every j, by direct summation (no FFT)."""
    q, n = field.q, field.n
    x = f_res[field.pow_table].astype(np.float64)
    omega = np.exp((2j * np.pi / n) * np.arange(n))
    k = np.arange(n, dtype=np.int64)
    out = np.empty(n)
    block = max(1, (1 << 22) // n)
    for j0 in range(0, n, block):
        js = np.arange(j0, min(j0 + block, n), dtype=np.int64)
        idx = (js[:, None] * k[None, :]) % n
        out[j0 : j0 + js.size] = np.abs(omega[idx] @ x)
    return out


def log_ratio_naive(field: PrimeField) -> RatioRecord:
    """Oracle route: direct per-character sums, O(q^2)."""
    q = field.q
    if q > NAIVE_MAX_Q:
        raise CostGuardError(f"naive method refused for q={q} > {NAIVE_MAX_Q}")
    abs_a = _naive_abs_sums(field, _linear_weights(q))
    odd = np.arange(1, q - 1, 2)
    even = np.arange(2, q - 1, 2)
    mag_odd = abs_a[odd]
    _guard_bins(mag_odd, q, "odd")
    odd_part = math.fsum(
        [((q - 1) / 2) * (math.log(math.pi) - math.log(q) / 2)] + _log_abs(mag_odd)
    )
    if q == 3:
        even_part = 0.0
    else:
        abs_g = _naive_abs_sums(field, _loggamma_weights(q))
        mag_even = abs_g[even]
        _guard_bins(mag_even, q, "even")
        even_part = math.fsum(
            [((q - 3) / 2) * (math.log(2.0) - math.log(q) / 2)] + _log_abs(mag_even)
        )
    log_R = odd_part + even_part
    return RatioRecord(
        q=q,
        log_R=log_R,
        R=math.exp(log_R),
        odd_part=odd_part,
        even_part=even_part,
        method=Method.NAIVE,
        err_est=0.0,
    )


def naive_l1_magnitudes(field: PrimeField) -> np.ndarray:
    """|L(1, chi_j)| for j = 1..q-2, from the direct per-character sums.

    Odd j: (pi/sqrt q) |sum_a (a/q) chi_j(a)|; even j:
    (2/sqrt q) |sum_a chi_j(a) log Gamma(a/q)|.  Shares no FFT code, so
    the prime-sum verifier built on these is independent of dft_fast.
    """
    q = field.q
    if q > NAIVE_MAX_Q:
        raise CostGuardError(f"naive method refused for q={q} > {NAIVE_MAX_Q}")
    abs_a = _naive_abs_sums(field, _linear_weights(q))
    rootq = math.sqrt(q)
    mags = np.empty(q - 1)
    mags[1::2] = (math.pi / rootq) * abs_a[1::2]
    if q > 3:
        abs_g = _naive_abs_sums(field, _loggamma_weights(q))
        mags[2::2] = (2.0 / rootq) * abs_g[2::2]
    _guard_bins(mags[1:], q, "per-character")
    return mags[1:]


def log_H(q: int) -> float:
    """log of the normalization H(q) = 2 sqrt(q) (q/(2 pi))^((q-1)/2).

    Evaluated in log space; H itself overflows doubles near q ~ 400.
    """
    if q < 3:
        raise ValueError("log_H requires q >= 3")
    lq = math.log(q)
    return math.fsum([math.log(2.0), 0.5 * lq, ((q - 1) / 2) * (lq - LOG_2PI)])


def log_hreg(record: RatioRecord) -> float:
    """log(h(q) Reg(q)) = log R(q) + log H(q)."""
    return record.log_R + log_H(record.q)
