import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from asymstream.core import DomainError, SpaceMeter, open_stream, open_text
from asymstream.hashing import FingerprintContext
from asymstream.ntt import PRIMES, correlate_mod, ntt
from asymstream.pattern_match import match_run
from asymstream.wildcard import (
    WILD,
    WildcardPattern,
    adversarial_instance,
    auto_wildcard_oracle,
    convolution_wildcard_oracle,
    naive_wildcard_oracle,
    sample,
    sampled_wildcard_match,
)


def truth(text, pat):
    pat = pat.symbols if isinstance(pat, WildcardPattern) else pat
    return [
        j + 1
        for j in range(len(text) - len(pat) + 1)
        if all(c is WILD or text[j + i] == c for i, c in enumerate(pat))
    ]


def random_wild(rng, m, alphabet, density):
    return WildcardPattern(tuple(WILD if rng.random() < density else rng.choice(alphabet) for _ in range(m)))


def test_parse_roundtrip():
    p = WildcardPattern.parse(b"a?b")
    assert p.symbols == (ord("a"), WILD, ord("b"))
    assert p.to_bytes() == b"a?b"
    assert WildcardPattern.parse(b"a*b", wildcard=ord("*")).to_bytes(ord("*")) == b"a*b"


@pytest.mark.parametrize("oracle", [naive_wildcard_oracle, convolution_wildcard_oracle])
def test_oracle_examples(oracle):
    assert oracle(b"a?b", b"aabab").bits.tolist() == [True, False, False]
    assert oracle(b"??", b"abcd").bits.tolist() == [True] * 3
    assert oracle(b"b", b"aaa").bits.tolist() == [False] * 3
    assert len(oracle(b"abcd", b"ab").bits) == 0


def test_ntt_roundtrip():
    rng = np.random.default_rng(0)
    for p, g in PRIMES:
        a = rng.integers(0, p, size=64, dtype=np.int64).astype(np.uint64)
        back = ntt(ntt(a, p, g), p, g, inverse=True)
        assert np.array_equal(back, a)


def test_small_transform_paths_agree(monkeypatch):
    import asymstream.ntt as ntt_mod

    rng = np.random.default_rng(2)
    for p, g in PRIMES:
        for size in (1, 2, 8, 64):
            a = rng.integers(0, p, size=(3, size)).astype(np.uint64)
            direct = ntt(a, p, g)
            monkeypatch.setattr(ntt_mod, "DIRECT_MAX", 0)
            assert np.array_equal(ntt(a, p, g), direct)
            monkeypatch.undo()


def test_correlate_against_direct():
    rng = np.random.default_rng(1)
    t = rng.integers(0, 50, size=40).astype(np.uint64)
    q = rng.integers(0, 50, size=7).astype(np.uint64)
    p, g = PRIMES[0]
    got = correlate_mod(((1, q, t),), 40, 7, p, g)
    direct = [sum(int(q[i]) * int(t[j + i]) for i in range(7)) % p for j in range(34)]
    assert got.tolist() == direct


def test_exact_pattern_agrees_with_matcher():
    rng = random.Random(4)
    for _ in range(100):
        text = bytes(rng.choice(b"ab") for _ in range(30))
        pat = bytes(rng.choice(b"ab") for _ in range(rng.randint(1, 5)))
        t = open_text(text)
        ctx = FingerprintContext.for_text(t, seed=0)
        first = match_run(t, open_stream(pat), mode="verified", ctx=ctx)
        pos = convolution_wildcard_oracle(pat, text).positions()
        assert (pos[0] if pos else None) == (first[0] if first else None)


def test_oracle_equivalence_exhaustive():
    for n in range(0, 13, 3):
        texts = [bytes(t) for t in itertools.product(b"01", repeat=n)][:: max(1, 2**n // 64)]
        for m in range(1, 5):
            for pat in itertools.product((ord("0"), ord("1"), WILD), repeat=m):
                for text in texts:
                    assert convolution_wildcard_oracle(pat, text) == naive_wildcard_oracle(pat, text)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 256), st.floats(0, 0.5))
def test_oracle_equivalence_random(seed, n, density):
    rng = random.Random(seed)
    alphabet = b"abcdefghij"[: rng.randint(1, 10)]
    text = bytes(rng.choice(alphabet) for _ in range(n))
    pat = random_wild(rng, rng.randint(1, n), alphabet, density)
    naive = naive_wildcard_oracle(pat, text)
    assert convolution_wildcard_oracle(pat, text) == naive
    assert auto_wildcard_oracle(pat, text) == naive
    assert naive.positions() == truth(text, pat)


def test_large_alphabet_convolution():
    rng = random.Random(6)
    text = bytes(rng.randrange(256) for _ in range(300))
    pat = WildcardPattern(tuple(WILD if i % 3 else text[100 + i] for i in range(20)))
    assert convolution_wildcard_oracle(pat, text) == naive_wildcard_oracle(pat, text)


def test_sample_examples():
    assert sample(b"abcdef", 2, 2) == b"bdf"
    assert sample(b"abcdef", 1, 1) == b"abcdef"
    assert sample(b"abc", 5, 2) == b""
    with pytest.raises(DomainError):
        sample(b"abc", 0, 1)


@given(st.binary(max_size=30), st.integers(1, 35), st.integers(1, 10))
def test_sample_size(t, offset, k):
    assert len(sample(t, offset, k)) == max(0, math.ceil((len(t) - offset + 1) / k))


def test_sampled_examples():
    assert sampled_wildcard_match(b"ababab", WildcardPattern.parse(b"a?a"), 3) in (1, 3)
    assert sampled_wildcard_match(b"ababab", b"a?a", 6) == 1
    assert sampled_wildcard_match(b"110110", b"?110", 3) == 3
    assert sampled_wildcard_match(b"110110", b"1110", 3) is None
    with pytest.raises(DomainError):
        sampled_wildcard_match(b"abc", b"a", 0)


@pytest.mark.parametrize("oracle", ["naive", "ntt", "auto"])
def test_sampled_sound_and_complete(oracle):
    rng = random.Random(oracle)
    for _ in range(150):
        n = rng.randint(1, 120)
        alphabet = b"ab" if rng.random() < 0.5 else b"abcd"
        text = bytes(rng.choice(alphabet) for _ in range(n))
        m = rng.randint(1, n)
        if rng.random() < 0.5:
            j = rng.randint(0, n - m)
            pat = WildcardPattern(tuple(WILD if rng.random() < 0.3 else c for c in text[j : j + m]))
        else:
            pat = random_wild(rng, m, alphabet, 0.3)
        expected = truth(text, pat)
        for s in sorted({1, math.isqrt(n - 1) + 1, n, rng.randint(1, n)}):
            got = sampled_wildcard_match(text, pat, s, oracle=oracle)
            assert (got is not None) == bool(expected)
            if got is not None:
                assert got in expected


def test_budget_above_n_is_clamped():
    assert sampled_wildcard_match(b"abc", b"c", 10**6) == 3


def test_space_grows_with_budget():
    rng = random.Random(1)
    n = 2**12
    text = bytes(rng.choice(b"ab") for _ in range(n))
    pat = WildcardPattern(tuple(WILD if i % 2 else ord("a") for i in range(n // 8)) + (ord("c"),))
    peaks = []
    for s in (2**4, 2**6, 2**8):
        meter = SpaceMeter()
        assert sampled_wildcard_match(text, pat, s, meter=meter) is None
        assert meter.current_words == 0
        peaks.append(meter.peak_words)
    assert peaks[0] < peaks[1] < peaks[2]


@pytest.mark.parametrize(
    "kk, i, wild, found",
    [(2, 1, {1}, True), (2, 1, set(), False), (5, 3, {3}, True), (5, 3, {2}, False)],
)
def test_adversarial_examples(kk, i, wild, found):
    text, pat = adversarial_instance(kk, i, wild)
    assert bool(truth(text, pat)) is found
    assert (sampled_wildcard_match(text, pat, 2) is not None) is found


def test_adversarial_shape():
    text, pat = adversarial_instance(2, 1, {1})
    assert (text, pat.to_bytes()) == (b"110110", b"?110")
    text, pat = adversarial_instance(3, 2, {2})
    assert (text, pat.to_bytes()) == (b"11101110", b"1?1110")
    with pytest.raises(DomainError):
        adversarial_instance(3, 4, set())
    with pytest.raises(DomainError):
        adversarial_instance(3, 1, {5})


def test_adversarial_family_random_large():
    rng = random.Random(16)
    for _ in range(300):
        kk = rng.randint(9, 16)
        i = rng.randint(1, kk)
        wild = {j for j in range(1, kk + 1) if rng.random() < 0.5}
        text, pat = adversarial_instance(kk, i, wild)
        assert bool(naive_wildcard_oracle(pat, text).positions()) == (i in wild)
