import random

import pytest
from hypothesis import strategies as st

from asymstream.core import AlphabetMap
from asymstream.hashing import FingerprintContext


def binary_ctx(q=7):
    """f(a)=0, f(b)=1, base 2, modulus q: the context used by the worked examples."""
    return FingerprintContext.build(AlphabetMap(b"ab"), n=2, q=q)


@pytest.fixture
def ab_ctx():
    return binary_ctx()


def words(alphabet=b"ab", min_size=0, max_size=30):
    return st.binary(min_size=min_size, max_size=max_size).map(
        lambda raw: bytes(alphabet[b % len(alphabet)] for b in raw)
    )


def rand_bytes(rng: random.Random, n: int, sigma: int) -> bytes:
    return bytes(rng.randrange(97, 97 + sigma) for _ in range(n))
