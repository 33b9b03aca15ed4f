"""Arbitrary-length DFTs and character-sum spectra.

A character sum over all residues, sum_a chi_j(a) f(a), becomes a plain
length-(q-1) DFT once the residues are reindexed by the discrete log of a
primitive root g: with x[k] = f(g^k) the j-th spectrum entry is
sum_k x[k] e(jk/(q-1)), where e(t) = exp(2 pi i t).

Arbitrary lengths are handled by Bluestein's chirp-z reduction to a
power-of-two convolution (the inner power-of-two transforms come from
numpy.fft).  The chirp twiddles use the exact integer reduction
k^2 mod 2n before any trigonometric call, so accuracy is uniform up to
lengths around 1e7.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.fft as _sfft

from .ntheory import PrimeField


def _fft(x: np.ndarray) -> np.ndarray:
    # workers pinned to 1: output must not depend on ambient thread counts
    return _sfft.fft(x, workers=1)


def _ifft(x: np.ndarray) -> np.ndarray:
    return _sfft.ifft(x, workers=1)


def _check_finite(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] < 1:
        raise ValueError("input must be a nonempty 1-d sequence")
    if not np.isfinite(x).all():
        raise ValueError("input contains NaN or Inf")
    return np.ascontiguousarray(x, dtype=np.complex128)


def dft_naive(x: np.ndarray) -> np.ndarray:
    """Direct O(n^2) DFT with compensated per-bin accumulation.

    X[j] = sum_k x[k] e(-jk/n).  This is the oracle dft_fast is tested
    against; keep it free of any FFT machinery.
    """
    x = _check_finite(x)
    n = x.shape[0]
    out = np.empty(n, dtype=np.complex128)
    k = np.arange(n, dtype=np.int64)
    for j in range(n):
        ang = -2.0 * np.pi * ((j * k) % n).astype(np.float64) / n
        terms = x * (np.cos(ang) + 1j * np.sin(ang))
        out[j] = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return out


@lru_cache(maxsize=8)
def _chirp_kernel(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Chirp w[k] = e(-k^2/(2n)) and the transformed convolution kernel.

    k^2 is reduced mod 2n in integer arithmetic before the trig call, so
    the argument never exceeds 2*pi and the twiddles stay accurate at any
    length.  Cached per length (both parity spectra of one q share it);
    callers must treat the arrays as read-only.
    """
    k = np.arange(n, dtype=np.int64)
    k2 = (k * k) % (2 * n)
    w = np.exp((-1j * np.pi / n) * k2.astype(np.float64))
    size = _sfft.next_fast_len(2 * n - 1, real=False)
    b = np.zeros(size, dtype=np.complex128)
    wc = np.conj(w)
    b[:n] = wc
    b[size - n + 1 :] = wc[1:][::-1]
    return w, _fft(b)


def _bluestein(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    w, bhat = _chirp_kernel(n)
    size = bhat.shape[0]
    a = np.zeros(size, dtype=np.complex128)
    a[:n] = x * w
    conv = _ifft(_fft(a) * bhat)
    return w * conv[:n]


def dft_fast(x: np.ndarray) -> np.ndarray:
    """DFT with the same contract as dft_naive, in O(n log n).

    Power-of-two lengths go straight to the library transform; everything
    else through Bluestein.
    """
    x = _check_finite(x)
    n = x.shape[0]
    if n == 1:
        return x.copy()
    if n & (n - 1) == 0:
        return _fft(x)
    return _bluestein(x)


def idft_fast(x: np.ndarray) -> np.ndarray:
    """Inverse of dft_fast (unitary up to the 1/n factor)."""
    x = _check_finite(x)
    return np.conj(dft_fast(np.conj(x))) / x.shape[0]


@dataclass(frozen=True)
class CharSpectrum:
    """All character sums mod q at once.

    sums[j] = sum_{a=1}^{q-1} chi_j(a) f(a) under chi_j(g^k) = e(jk/(q-1));
    sums[0] is the plain sum of f over the residues.  For real-valued f the
    spectrum has conjugate symmetry sums[q-1-j] = conj(sums[j]).
    """

    q: int
    sums: np.ndarray


def _reindexed(field: PrimeField, f) -> np.ndarray:
    if callable(f):
        vals = np.array([f(int(a)) for a in field.pow_table], dtype=np.float64)
    else:
        vals = np.asarray(f, dtype=np.float64)
        if vals.shape[0] != field.q:
            raise ValueError("array f must have length q, indexed by residue")
        vals = vals[field.pow_table]
    if not np.isfinite(vals).all():
        raise ValueError("f produced NaN or Inf")
    return vals


def char_spectrum(field: PrimeField, f, decimate: bool = False) -> CharSpectrum:
    """Spectrum of a real-valued map on {1,..,q-1}.

    f is either a callable a -> f(a) or an array of length q indexed by
    residue (entry 0 unused).  With decimate=True the even/odd output
    halves are computed by two half-length transforms
    (decimation-in-frequency); the result is identical up to rounding.
    """
    x = _reindexed(field, f)
    n = field.n
    if not decimate or n % 2 != 0 or n < 4:
        # sum_k x[k] e(+jk/n) = conj(DFT x) for real x
        sums = np.conj(dft_fast(x))
    else:
        half = n // 2
        even = np.conj(dft_fast(x[:half] + x[half:]))
        tw = np.exp((2j * np.pi / n) * np.arange(half))
        d = (x[:half] - x[half:]) * tw
        odd = np.conj(dft_fast(np.conj(d)))
        sums = np.empty(n, dtype=np.complex128)
        sums[0::2] = even
        sums[1::2] = odd
    return CharSpectrum(q=field.q, sums=sums)


def parity_split(spec: CharSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """Indices of odd characters and of even nonprincipal characters.

    chi_j(-1) = (-1)^j, so parity of the character is parity of j.
    """
    n = spec.q - 1
    odd = np.arange(1, n, 2, dtype=np.int64)
    even = np.arange(2, n, 2, dtype=np.int64)
    return odd, even
