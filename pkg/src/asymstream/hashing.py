"""Karp-Rabin style fingerprints over a random prime modulus.

The fingerprint of ``S`` is ``sum(base**(i-1) * f(S[i])) mod q`` with
``base = |alphabet|``; the first character carries the lowest power. This
makes appending on the right cost one multiply-add, and prepending on the
left a multiply by ``base``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple

from .core import AlphabetMap, ContractError, DomainError, TextOracle, as_bytes

# Deterministic Miller-Rabin: these bases are exact for n < 3.3e24 (covers 64 bits).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _random_prime(lo: int, hi: int, rng: random.Random) -> int:
    """Uniform prime in ``(lo, hi]`` by rejection sampling."""
    while True:
        q = rng.randint(lo + 1, hi)
        if is_prime(q):
            return q


def select_modulus(n: int, base: int, seed=None, modulus_bits: int | None = None) -> int:
    """Random prime ``q`` with ``M**2 < q <= 2 * M**2`` where ``M = max(n, base)``.

    With ``modulus_bits=b`` the prime is drawn from ``(2**(b-1), 2**b]``
    instead, which must still lie above ``M**2``. Deterministic given ``seed``.
    """
    if n < 1:
        raise DomainError("text length must be at least 1")
    rng = random.Random(seed)
    m2 = max(n, base) ** 2
    if modulus_bits is None:
        return _random_prime(m2, 2 * m2, rng)
    if not 2 <= modulus_bits <= 62:
        raise DomainError("modulus_bits must lie in 2..62")
    lo, hi = 1 << (modulus_bits - 1), 1 << modulus_bits
    if hi <= m2:
        raise DomainError(
            f"2**{modulus_bits} does not exceed max(n, base)**2 = {m2}"
        )
    return _random_prime(max(lo, m2), hi, rng)


class Fingerprint(NamedTuple):
    value: int
    length: int
    base_pow: int  # base**length mod q


@dataclass(frozen=True)
class FingerprintContext:
    q: int
    base: int
    inv_base: int
    sigma_map: AlphabetMap

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise DomainError(f"modulus {self.q} is not prime")
        if not self.base < self.q:
            raise DomainError("alphabet size must be below the modulus")
        if self.base * self.inv_base % self.q != 1:
            raise DomainError("inv_base is not the inverse of base")

    @classmethod
    def build(
        cls,
        sigma_map: AlphabetMap,
        n: int,
        seed=None,
        modulus_bits: int | None = None,
        q: int | None = None,
    ) -> "FingerprintContext":
        # base 1 is legal for a one-letter alphabet (all codes are 0)
        base = max(sigma_map.sigma, 1)
        if q is None:
            q = select_modulus(max(n, 1), base, seed, modulus_bits)
        return cls(q=q, base=base, inv_base=pow(base, -1, q), sigma_map=sigma_map)

    @classmethod
    def for_text(cls, text: TextOracle, seed=None, modulus_bits=None, q=None):
        return cls.build(text.alphabet(), text.length, seed, modulus_bits, q)

    @property
    def words(self) -> int:
        return 3  # q, base, inv_base

    def empty(self) -> Fingerprint:
        return Fingerprint(0, 0, 1)


def hash_of_string(s, ctx: FingerprintContext) -> Fingerprint:
    f, q, base = ctx.sigma_map.f, ctx.q, ctx.base
    value, pw = 0, 1
    data = as_bytes(s)
    for c in data:
        value = (value + pw * f(c)) % q
        pw = pw * base % q
    return Fingerprint(value, len(data), pw)


def append_right(fp: Fingerprint, c: int, ctx: FingerprintContext) -> Fingerprint:
    q = ctx.q
    return Fingerprint(
        (fp.value + fp.base_pow * ctx.sigma_map.f(c)) % q,
        fp.length + 1,
        fp.base_pow * ctx.base % q,
    )


def prepend_left(c: int, fp: Fingerprint, ctx: FingerprintContext) -> Fingerprint:
    q = ctx.q
    return Fingerprint(
        (ctx.sigma_map.f(c) + ctx.base * fp.value) % q,
        fp.length + 1,
        fp.base_pow * ctx.base % q,
    )


def slide_window(fp: Fingerprint, out_char: int, in_char: int, ctx: FingerprintContext) -> Fingerprint:
    """Drop ``out_char`` from the left end and append ``in_char`` on the right."""
    if fp.length < 1:
        raise ContractError("cannot slide an empty window")
    q, f = ctx.q, ctx.sigma_map.f
    top = fp.base_pow * ctx.inv_base % q  # base**(length-1)
    value = ((fp.value - f(out_char)) * ctx.inv_base + top * f(in_char)) % q
    return Fingerprint(value, fp.length, fp.base_pow)


def substring_hash(text: TextOracle, i: int, j: int, ctx: FingerprintContext) -> Fingerprint:
    """Fingerprint of ``T[i..j]`` (1-based, inclusive); ``j == i - 1`` is empty."""
    if i < 1 or j > text.length or j < i - 1:
        raise DomainError(f"bad interval [{i}, {j}] for text of length {text.length}")
    fp = ctx.empty()
    for pos in range(i, j + 1):
        fp = append_right(fp, text.read(pos), ctx)
    return fp
