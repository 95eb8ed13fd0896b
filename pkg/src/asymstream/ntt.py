"""Exact integer cross-correlation via number-theoretic transforms.

Transforms run in numpy over NTT-friendly primes below 2**30, so every
butterfly product fits in an unsigned 64-bit word. Callers that need exact
zero tests over larger values evaluate the same expression modulo several
primes: a nonnegative value below their product is zero iff it is zero
modulo each of them.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# (prime, primitive root); each prime is c * 2**k + 1 with k >= 23
PRIMES = ((998244353, 3), (469762049, 3), (167772161, 3))
MAX_LOG = 23


def next_pow2(n: int) -> int:
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


@lru_cache(maxsize=64)
def _bitrev(size: int) -> np.ndarray:
    bits = size.bit_length() - 1
    idx = np.arange(size, dtype=np.int64)
    rev = np.zeros(size, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


@lru_cache(maxsize=128)
def _twiddles(p: int, g: int, size: int, inverse: bool) -> np.ndarray:
    """Powers ``w**0 .. w**(size/2 - 1)`` of a primitive ``size``-th root of unity."""
    w = pow(g, (p - 1) // size, p)
    if inverse:
        w = pow(w, p - 2, p)
    half = max(size // 2, 1)
    tw = np.ones(1, dtype=np.uint64)
    while len(tw) < half:
        step = np.uint64(pow(w, len(tw), p))
        tw = np.concatenate([tw, tw * step % np.uint64(p)])
    return tw[:half]


DIRECT_MAX = 64  # at or below this length a matrix product beats the butterfly loop


@lru_cache(maxsize=64)
def _dft_matrix(p: int, g: int, size: int, inverse: bool) -> np.ndarray:
    w = pow(g, (p - 1) // size, p)
    if inverse:
        w = pow(w, p - 2, p)
    powers = [pow(w, e, p) for e in range(size)]
    idx = np.outer(np.arange(size), np.arange(size)) % size
    return np.array(powers, dtype=np.uint64)[idx]


def _direct(a: np.ndarray, p: int, g: int, inverse: bool) -> np.ndarray:
    # split a into 15-bit halves so each row sum stays below 2**64
    pp = np.uint64(p)
    mat = _dft_matrix(p, g, a.shape[-1], inverse)
    lo = a & np.uint64(0x7FFF)
    hi = a >> np.uint64(15)
    out = (hi @ mat % pp * np.uint64(1 << 15) + lo @ mat) % pp
    if inverse:
        out = out * np.uint64(pow(a.shape[-1], p - 2, p)) % pp
    return out


def ntt(a: np.ndarray, p: int, g: int, inverse: bool = False) -> np.ndarray:
    """Iterative radix-2 transform modulo ``p`` along the last axis (a power of two).

    Leading axes are a batch: each row is transformed independently.
    """
    size = a.shape[-1]
    if size.bit_length() - 1 > MAX_LOG:
        raise ValueError("transform length exceeds the primes' 2-adic order")
    pp = np.uint64(p)
    if size <= DIRECT_MAX:
        return _direct(a.astype(np.uint64) % pp, p, g, inverse)
    lead = a.shape[:-1]
    out = (a.astype(np.uint64) % pp)[..., _bitrev(size)].reshape(-1, size)
    rows = out.shape[0]
    tw_all = _twiddles(p, g, size, inverse)
    length = 2
    while length <= size:
        half = length // 2
        tw = tw_all[:: size // length][:half]
        blocks = out.reshape(rows, -1, length)
        u = blocks[..., :half].copy()
        v = blocks[..., half:] * tw % pp
        blocks[..., :half] = (u + v) % pp
        blocks[..., half:] = (u + pp - v) % pp
        out = blocks.reshape(rows, size)
        length <<= 1
    if inverse:
        out = out * np.uint64(pow(size, p - 2, p)) % pp
    return out.reshape(*lead, size)


def correlate_mod(pairs, n_text: int, n_pat: int, p: int, g: int) -> np.ndarray:
    """``sum_k coeff_k * corr(pat_k, text_k)`` modulo ``p`` at alignments ``0..n_text-n_pat``.

    ``pairs`` is a sequence of ``(coeff, pat, text)``; ``corr(x, y)[j] =
    sum_i x[i] * y[j + i]``. All inputs go through one batched forward
    transform and the weighted sum through one inverse.
    """
    size = next_pow2(n_text + n_pat - 1)
    pp = np.uint64(p)
    k = len(pairs)
    buf = np.zeros((2 * k, size), dtype=np.uint64)
    for row, (_, pat, text) in enumerate(pairs):
        buf[row, :n_pat] = pat[::-1]
        buf[k + row, :n_text] = text
    f = ntt(buf, p, g)
    coeffs = np.array([c % p for c, _, _ in pairs], dtype=np.uint64)[:, None]
    prod = f[:k] * f[k:] % pp * coeffs % pp
    acc = prod.sum(axis=0) % pp  # k < 2**4 terms below 2**30 each: no overflow
    full = ntt(acc, p, g, inverse=True)
    return full[n_pat - 1 : n_text]


def work_words(n_text: int, n_pat: int, pairs: int = 3) -> int:
    """Words of scratch one correlation round holds: the batched inputs plus the accumulator."""
    return (2 * pairs + 1) * next_pow2(n_text + n_pat - 1)
