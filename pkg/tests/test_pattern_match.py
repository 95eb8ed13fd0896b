import random

import pytest
from hypothesis import given, settings, strategies as st

from asymstream.core import AlphabetMap, ContractError, SpaceMeter, open_stream, open_text
from asymstream.hashing import FingerprintContext
from asymstream.oracles import leftmost_occurrence, leftmost_occurrence_scan
from asymstream.pattern_match import (
    MatchSession,
    fixed_pattern_stream_search,
    match_new_session,
    match_push,
    match_push_verified,
    match_run,
)

from conftest import rand_bytes, words


def ctx_for(text, seed=0, q=None):
    t = open_text(text)
    if q is None:
        return t, FingerprintContext.for_text(t, seed=seed)
    return t, FingerprintContext.build(t.alphabet(), n=t.length, q=q)


def pushes(text, pattern, verified=False, q=None):
    t, ctx = ctx_for(text, q=q)
    s = match_new_session(t, ctx)
    push = match_push_verified if verified else match_push
    out = []
    for c in pattern:
        w = push(s, c)
        out.append(w)
        if w is None:
            break
    return out


def test_new_session():
    t, ctx = ctx_for(b"abc")
    s = match_new_session(t, ctx)
    assert (s.ell, s.r) == (1, 0)
    assert s.pattern_fp.length == 0 and s.window_fp.value == 0


def test_empty_text_first_push_fails():
    t = open_text(b"")
    ctx = FingerprintContext.build(AlphabetMap(b"a"), n=1, q=5)
    assert match_push(match_new_session(t, ctx), ord("a")) is None


def test_sessions_are_independent():
    t, ctx = ctx_for(b"abab")
    s1, s2 = match_new_session(t, ctx), match_new_session(t, ctx)
    assert match_push(s1, ord("b")) == (2, 2)
    assert match_push(s2, ord("a")) == (1, 1)
    assert match_push(s1, ord("a")) == (2, 3)
    assert match_push(s2, ord("b")) == (1, 2)


@pytest.mark.parametrize("verified", [False, True])
@pytest.mark.parametrize(
    "text, pattern, expected",
    [
        (b"aab", b"ab", [(1, 1), (2, 3)]),
        (b"abab", b"ba", [(2, 2), (2, 3)]),
        (b"aa", b"b", [None]),
    ],
)
def test_push_examples(text, pattern, expected, verified):
    assert pushes(text, pattern, verified) == expected


def test_push_after_no_match_is_contract_error():
    t, ctx = ctx_for(b"aa")
    s = match_new_session(t, ctx)
    assert match_push(s, ord("b")) is None
    with pytest.raises(ContractError):
        match_push(s, ord("a"))


def test_verified_periodic_adversary():
    text = b"a" * 1000
    pattern = b"a" * 999 + b"b"
    t, ctx = ctx_for(text)
    assert match_run(t, open_stream(pattern), mode="verified", ctx=ctx) is None


def test_verified_survives_tiny_modulus():
    rng = random.Random(2024)
    for _ in range(1000):
        sigma = rng.choice((2, 3))
        text = rand_bytes(rng, rng.randint(1, 40), sigma)
        pattern = rand_bytes(rng, rng.randint(0, 8), sigma)
        t = open_text(text)
        ctx = FingerprintContext.build(AlphabetMap(b"abc"[:sigma]), n=40, q=5)
        got = match_run(t, open_stream(pattern), mode="verified", ctx=ctx)
        assert got == leftmost_occurrence(text, pattern), (text, pattern)


def test_tiny_modulus_does_fool_randomized_mode():
    # sanity check that the verified stress above is not vacuous
    rng = random.Random(7)
    wrong = 0
    for _ in range(300):
        text = rand_bytes(rng, 40, 2)
        pattern = rand_bytes(rng, 6, 2)
        t = open_text(text)
        ctx = FingerprintContext.build(AlphabetMap(b"ab"), n=40, q=5)
        if match_run(t, open_stream(pattern), ctx=ctx) != leftmost_occurrence(text, pattern):
            wrong += 1
    assert wrong > 0


@pytest.mark.parametrize(
    "text, pattern, expected",
    [(b"abcabd", b"abd", (4, 6)), (b"abc", b"", (1, 0)), (b"ab", b"abc", None)],
)
def test_run_examples(text, pattern, expected):
    for mode in ("randomized", "verified"):
        stream = open_stream(pattern)
        t, ctx = ctx_for(text)
        assert match_run(t, stream, mode=mode, ctx=ctx) == expected
        assert stream.passes_started == 1


def test_run_drains_stream_after_no_match():
    stream = open_stream(b"zzzz")
    t, ctx = ctx_for(b"ab")
    assert match_run(t, stream, ctx=ctx) is None
    assert stream.next() is None


@settings(max_examples=300)
@given(words(b"ab", max_size=40), words(b"ab", max_size=12), st.booleans())
def test_run_agrees_with_scan_oracle(text, pattern, verified):
    t, ctx = ctx_for(text)
    got = match_run(t, open_stream(pattern), mode="verified" if verified else "randomized", ctx=ctx)
    expected = leftmost_occurrence_scan(text, pattern)
    if not text:
        expected = (1, 0) if not pattern else None
    assert got == expected


@given(words(b"abc", min_size=1, max_size=60), words(b"abc", max_size=20))
def test_pointer_monotonicity(text, pattern):
    t, ctx = ctx_for(text)
    s = MatchSession(t, ctx, verified=True)
    prev = (s.ell, s.r)
    for c in pattern:
        w = s.push(c)
        if w is None:
            break
        assert w[0] >= prev[0] and w[1] >= prev[1]
        assert w[1] - w[0] + 1 == s.length
        prev = w
    # each read advances a pointer, so total reads are bounded by 2 (n + m)
    assert t.reads_performed <= 2 * (len(text) + len(pattern))


def test_constant_state():
    rng = random.Random(3)
    peaks = set()
    for n in (10**2, 10**3, 10**4, 10**5):
        text = rand_bytes(rng, n, 2)
        pattern = text[n // 2 : n // 2 + 50]
        meter = SpaceMeter()
        t, ctx = ctx_for(text)
        assert match_run(t, open_stream(pattern), ctx=ctx, meter=meter) is not None
        peaks.add(meter.peak_words)
        assert meter.current_words == 0
    assert len(peaks) == 1 and peaks.pop() <= 32


@pytest.mark.parametrize(
    "text, p, w, stream, expected",
    [
        (b"xaby", 2, 2, b"aab", [3]),
        (b"aa", 1, 2, b"aaa", [2, 3]),
        (b"ab", 1, 2, b"ba", []),
    ],
)
def test_fixed_pattern_examples(text, p, w, stream, expected):
    assert list(fixed_pattern_stream_search(open_text(text), p, w, open_stream(stream))) == expected


@settings(max_examples=400)
@given(words(b"ab", min_size=1, max_size=12), words(b"ab", max_size=40), st.data())
def test_fixed_pattern_against_brute_force(text, stream, data):
    p = data.draw(st.integers(1, len(text)))
    w = data.draw(st.integers(1, len(text) - p + 1))
    target = text[p - 1 : p - 1 + w]
    expected = [e for e in range(w, len(stream) + 1) if stream[e - w : e] == target]
    got = list(fixed_pattern_stream_search(open_text(text), p, w, open_stream(stream)))
    assert got == expected
