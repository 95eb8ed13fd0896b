"""Wildcard pattern matching in O(s) space by residue-class sampling.

Alignments ``p`` with ``p = offset (mod k)`` are checked together: for every
pattern residue class ``shift`` the stride-``k`` subsequences of pattern and
text are handed to an exact full-scan oracle, and the per-class bitmaps are
AND-ed. With ``k = n // s`` every buffer has O(n/k) = O(s) entries and the
work is O(k**2) oracle calls of size O(n/k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import ntt
from .core import DomainError, SpaceMeter, as_bytes

WILD = None
DEFAULT_WILDCARD = ord("?")

Symbols = Sequence  # of int | None


@dataclass(frozen=True)
class WildcardPattern:
    symbols: tuple  # int byte values, or WILD

    @classmethod
    def parse(cls, data, wildcard: int = DEFAULT_WILDCARD) -> "WildcardPattern":
        return cls(tuple(WILD if c == wildcard else c for c in as_bytes(data)))

    def __len__(self) -> int:
        return len(self.symbols)

    def to_bytes(self, wildcard: int = DEFAULT_WILDCARD) -> bytes:
        return bytes(wildcard if c is WILD else c for c in self.symbols)


@dataclass
class MatchBitmap:
    """``bits[j-1]`` is True iff the pattern matches at alignment ``start + j - 1``."""

    start: int
    bits: np.ndarray

    def positions(self) -> list[int]:
        return [self.start + int(j) for j in np.flatnonzero(self.bits)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatchBitmap)
            and self.start == other.start
            and np.array_equal(self.bits, other.bits)
        )


def _symbols(pattern) -> tuple:
    if isinstance(pattern, WildcardPattern):
        return pattern.symbols
    if isinstance(pattern, (bytes, bytearray, str)):
        return WildcardPattern.parse(pattern).symbols
    return tuple(pattern)


def naive_wildcard_oracle(pattern, text) -> MatchBitmap:
    pat = _symbols(pattern)
    txt = as_bytes(text) if not isinstance(text, (list, tuple)) else text
    n, m = len(txt), len(pat)
    if m > n:
        return MatchBitmap(1, np.zeros(0, dtype=bool))
    fixed = [(i, c) for i, c in enumerate(pat) if c is not WILD]
    bits = np.zeros(n - m + 1, dtype=bool)
    for j in range(n - m + 1):
        for i, c in fixed:
            if txt[j + i] != c:
                break
        else:
            bits[j] = True
    return MatchBitmap(1, bits)


def convolution_wildcard_oracle(pattern, text) -> MatchBitmap:
    """Same bitmap as the naive oracle from three exact cross-correlations.

    With wildcards coded 0 and characters coded 1..sigma, the score
    ``sum_i p_i t_{j+i} (p_i - t_{j+i})**2`` is nonnegative and is zero
    exactly at matching alignments. It expands into correlations of
    ``p**3, t``, ``p**2, t**2`` and ``p, t**3``.
    """
    pat = _symbols(pattern)
    txt = as_bytes(text) if not isinstance(text, (list, tuple)) else bytes(text)
    n, m = len(txt), len(pat)
    if m > n:
        return MatchBitmap(1, np.zeros(0, dtype=bool))
    if m == 0:
        return MatchBitmap(1, np.ones(n + 1, dtype=bool))
    alphabet = sorted(set(txt) | {c for c in pat if c is not WILD})
    code = np.zeros(256, dtype=np.uint64)
    code[alphabet] = np.arange(1, len(alphabet) + 1, dtype=np.uint64)
    sigma = len(alphabet)
    # scores are below m * sigma**4; use just enough primes to exceed that
    primes, bound = [], 1
    for prime in ntt.PRIMES:
        if bound > m * sigma**4:
            break
        primes.append(prime)
        bound *= prime[0]
    if bound <= m * sigma**4:
        raise DomainError("alphabet too large for exact correlation")
    t1 = code[np.frombuffer(txt, dtype=np.uint8)]
    p1 = np.array([0 if c is WILD else int(code[c]) for c in pat], dtype=np.uint64)
    t2, t3 = t1 * t1, t1 * t1 * t1
    p2, p3 = p1 * p1, p1 * p1 * p1
    zero = np.ones(n - m + 1, dtype=bool)
    for prime, g in primes:
        score = ntt.correlate_mod(((1, p3, t1), (-2, p2, t2), (1, p1, t3)), n, m, prime, g)
        zero &= score == 0
    return MatchBitmap(1, zero)


NAIVE_BUDGET = 1 << 14  # character comparisons below which the scan beats transforms


def _prefer_naive(pat: tuple, n: int) -> bool:
    fixed = sum(c is not WILD for c in pat)
    return max(n - len(pat) + 1, 0) * fixed <= NAIVE_BUDGET


def auto_wildcard_oracle(pattern, text) -> MatchBitmap:
    """Naive scan when its comparison count is small, convolution otherwise."""
    pat = _symbols(pattern)
    if _prefer_naive(pat, len(text)):
        return naive_wildcard_oracle(pat, text)
    return convolution_wildcard_oracle(pat, text)


def _auto_words(pat: tuple, n: int) -> int:
    return 2 if _prefer_naive(pat, n) else ntt.work_words(n, len(pat))


naive_wildcard_oracle.work_words = lambda pat, n: 2  # type: ignore[attr-defined]
convolution_wildcard_oracle.work_words = (  # type: ignore[attr-defined]
    lambda pat, n: ntt.work_words(n, len(pat))
)
auto_wildcard_oracle.work_words = _auto_words  # type: ignore[attr-defined]

ORACLES: dict[str, Callable] = {
    "naive": naive_wildcard_oracle,
    "ntt": convolution_wildcard_oracle,
    "auto": auto_wildcard_oracle,
}


def sample(t, offset: int, k: int):
    """Characters of ``t`` at 1-based indices ``offset, offset + k, offset + 2k, ...``."""
    if offset < 1 or k < 1:
        raise DomainError("sample needs offset >= 1 and k >= 1")
    return t[offset - 1 :: k]


def _matches_at(pat: tuple, text: bytes, p: int) -> bool:
    return all(c is WILD or text[p - 1 + i] == c for i, c in enumerate(pat))


def sampled_wildcard_match(
    text,
    pattern,
    s: int,
    oracle: Callable | str = "auto",
    meter: SpaceMeter | None = None,
) -> int | None:
    """1-based position of some occurrence of ``pattern`` in ``text``, or ``None``.

    ``s`` is the space budget; ``s > n`` is treated as ``n``. Any returned
    position has been checked character by character.
    """
    txt = as_bytes(text)
    pat = _symbols(pattern)
    n, m = len(txt), len(pat)
    if s < 1:
        raise DomainError("space budget must be at least 1")
    if isinstance(oracle, str):
        oracle = ORACLES[oracle]
    oracle_words = getattr(oracle, "work_words", lambda a, b: 0)
    meter = meter if meter is not None else SpaceMeter()
    if m > n:
        return None
    if m == 0:
        return 1
    s = min(s, n)
    k = n // s
    last = n - m + 1  # last valid alignment
    meter.register(6)  # k, offset, shift, candidate count, loop cursors
    try:
        for offset in range(1, min(k, last) + 1):
            count = (last - offset) // k + 1
            res = np.ones(count, dtype=bool)
            meter.register(count)
            # classes with shift > m are empty and constrain nothing
            for shift in range(1, min(k, m) + 1):
                sp = sample(pat, shift, k)
                st = sample(txt, offset + shift - 1, k)
                held = len(sp) + len(st) + oracle_words(sp, len(st))
                meter.register(held)
                bits = oracle(sp, st).bits
                meter.register(len(bits))
                upto = min(len(bits), count)
                res[:upto] &= bits[:upto]
                res[upto:] = False
                meter.register(-held - len(bits))
                if not res.any():
                    break  # AND with zeros cannot recover
            hits = np.flatnonzero(res)
            meter.register(-count)
            for i in hits:
                p = offset + int(i) * k
                if _matches_at(pat, txt, p):
                    return p
        return None
    finally:
        meter.register(-6)


def adversarial_instance(kk: int, i: int, wild_positions) -> tuple[bytes, WildcardPattern]:
    """Text ``1^kk 0 1^kk 0`` and pattern ``a_1..a_kk 1^i 0`` with ``a_j = ?`` on ``wild_positions``.

    The pattern matches iff ``i`` is one of the wildcard positions, so a
    one-pass reader of the pattern must remember all of its first ``kk``
    symbols.
    """
    wild = set(wild_positions)
    if not 1 <= i <= kk:
        raise DomainError("probe index must lie in 1..kk")
    if not wild <= set(range(1, kk + 1)):
        raise DomainError("wildcard positions must lie in 1..kk")
    text = b"1" * kk + b"0" + b"1" * kk + b"0"
    head = tuple(WILD if j in wild else ord("1") for j in range(1, kk + 1))
    pattern = WildcardPattern(head + (ord("1"),) * i + (ord("0"),))
    return text, pattern
