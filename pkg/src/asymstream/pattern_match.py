"""One-pass pattern matching with O(1) words of state.

The streamed pattern is never stored. A session keeps only the leftmost
occurrence ``T[ell..r]`` of the pattern seen so far, the fingerprint of the
pattern and the fingerprint of that window. On each new pattern character
the window grows by one; while the fingerprints disagree the window slides
right. Pointers never move left, so a whole run costs O(n + m).
"""

from __future__ import annotations

from typing import Iterator

from .core import CharStream, ContractError, DomainError, SpaceMeter, TextOracle
from .hashing import Fingerprint, FingerprintContext

# ell, r, length, pattern value, window value, base**length, alive flag
SESSION_FIELDS = 7


class MatchSession:
    """Leftmost-occurrence tracker for a pattern arriving one character at a time."""

    def __init__(
        self,
        text,
        ctx: FingerprintContext,
        meter: SpaceMeter | None = None,
        verified: bool = False,
    ) -> None:
        self.text = text
        self.ctx = ctx
        self.verified = verified
        self.meter = meter if meter is not None else SpaceMeter()
        self.ell = 1
        self.r = 0
        self.length = 0
        self._pval = 0
        self._wval = 0
        self._pow = 1
        self.alive = True
        self.words = SESSION_FIELDS + ctx.words + text.state_words
        self.meter.register(self.words)
        self._open = True

    @property
    def pattern_fp(self) -> Fingerprint:
        return Fingerprint(self._pval, self.length, self._pow)

    @property
    def window_fp(self) -> Fingerprint:
        return Fingerprint(self._wval, self.length, self._pow)

    def close(self) -> None:
        """Release the session's words from the meter."""
        if self._open:
            self.meter.register(-self.words)
            self._open = False

    def _die(self) -> None:
        self.alive = False
        return None

    def push(self, c: int) -> tuple[int, int] | None:
        """Extend the pattern by ``c``; return the new window or ``None`` for no match."""
        if not self.alive:
            raise ContractError("push after the session reported no match")
        ctx = self.ctx
        code = ctx.sigma_map.codes
        fc = code[c] if 0 <= c < 256 else -1
        if fc < 0:
            return self._die()  # character absent from the text
        q, base, inv = ctx.q, ctx.base, ctx.inv_base
        read = self.text.read
        n = self.text.length
        top = self._pow  # base**(new_length - 1)
        pval = (self._pval + top * fc) % q
        ell, r = self.ell, self.r + 1
        if r > n:
            return self._die()
        wval = (self._wval + top * code[read(r)]) % q
        verified = self.verified
        ell0, r0 = self.ell, self.r
        while wval != pval or (verified and not self._confirm(ell, r, ell0, r0, c)):
            ell += 1
            r += 1
            if r > n:
                return self._die()
            wval = ((wval - code[read(ell - 1)]) * inv + top * code[read(r)]) % q
        self.ell, self.r = ell, r
        self.length += 1
        self._pval, self._wval = pval, wval
        self._pow = top * base % q
        return ell, r

    def push_verified(self, c: int) -> tuple[int, int] | None:
        """As :meth:`push`, confirming every fingerprint hit character by character."""
        saved, self.verified = self.verified, True
        try:
            return self.push(c)
        finally:
            self.verified = saved

    def _confirm(self, ell: int, r: int, ell0: int, r0: int, c: int) -> bool:
        # the previous window T[ell0..r0] is the pattern so far; no copy needed
        read = self.text.read
        if read(r) != c:
            return False
        if ell == ell0:
            return True
        for j in range(r0 - ell0 + 1):
            if read(ell + j) != read(ell0 + j):
                return False
        return True


class PrependMatchSession(MatchSession):
    """Leftmost occurrence of a pattern that grows on its left end.

    Any occurrence of ``c + Y`` ends where an occurrence of ``Y`` ends, so
    the leftmost end position only moves right and the same one-way scan
    applies. Fingerprints are extended with a left prepend.
    """

    def push(self, c: int) -> tuple[int, int] | None:
        if not self.alive:
            raise ContractError("push after the session reported no match")
        ctx = self.ctx
        code = ctx.sigma_map.codes
        fc = code[c] if 0 <= c < 256 else -1
        if fc < 0:
            return self._die()
        q, base, inv = ctx.q, ctx.base, ctx.inv_base
        read = self.text.read
        n = self.text.length
        top = self._pow  # base**(new_length - 1)
        pval = (fc + base * self._pval) % q
        ell0, r0 = self.ell, self.r
        if ell0 >= 2:
            ell, r = ell0 - 1, r0
            wval = (code[read(ell)] + base * self._wval) % q
        else:
            ell, r = 1, r0 + 1
            if r > n:
                return self._die()
            wval = (self._wval + top * code[read(r)]) % q
        verified = self.verified
        while wval != pval or (verified and not self._confirm(ell, r, ell0, r0, c)):
            ell += 1
            r += 1
            if r > n:
                return self._die()
            wval = ((wval - code[read(ell - 1)]) * inv + top * code[read(r)]) % q
        self.ell, self.r = ell, r
        self.length += 1
        self._pval, self._wval = pval, wval
        self._pow = top * base % q
        return ell, r

    def _confirm(self, ell: int, r: int, ell0: int, r0: int, c: int) -> bool:
        read = self.text.read
        if read(ell) != c:
            return False
        if ell + 1 == ell0 or r0 < ell0:
            return True
        for j in range(r0 - ell0 + 1):
            if read(ell + 1 + j) != read(ell0 + j):
                return False
        return True


def match_new_session(text, ctx, meter=None, verified=False) -> MatchSession:
    return MatchSession(text, ctx, meter=meter, verified=verified)


def match_push(session: MatchSession, c: int):
    return session.push(c)


def match_push_verified(session: MatchSession, c: int):
    return session.push_verified(c)


def match_run(
    text: TextOracle,
    stream: CharStream,
    mode: str = "randomized",
    ctx: FingerprintContext | None = None,
    seed=None,
    meter: SpaceMeter | None = None,
    modulus_bits: int | None = None,
) -> tuple[int, int] | None:
    """Leftmost occurrence ``(ell, r)`` of the streamed pattern in ``text``, or ``None``.

    An empty pattern yields ``(1, 0)``. The stream is consumed to its end in
    one pass even after the answer is settled.
    """
    if mode not in ("randomized", "verified"):
        raise DomainError(f"unknown mode {mode!r}")
    if ctx is None:
        ctx = FingerprintContext.for_text(text, seed=seed, modulus_bits=modulus_bits)
    session = MatchSession(text, ctx, meter=meter, verified=mode == "verified")
    window: tuple[int, int] | None = (1, 0)
    push = session.push
    for c in stream:
        window = push(c)
        if window is None:
            stream.drain()
            break
    session.close()
    return window


def fixed_pattern_stream_search(text, p: int, w: int, stream) -> Iterator[int]:
    """Yield stream end positions ``e`` where the last ``w`` characters equal ``T[p..p+w-1]``.

    State is the length ``k`` of the longest stream suffix that is a prefix
    of the target. On a mismatch ``k`` is recomputed by direct comparison
    against the text, so no failure table is kept.
    """
    if w < 1 or p < 1 or p + w - 1 > text.length:
        raise DomainError(f"bad target T[{p}..{p + w - 1}] for length {text.length}")
    read = text.read
    k = 0
    e = 0
    for c in stream:
        e += 1
        if k < w and read(p + k) == c:
            k += 1
        else:
            # longest suffix of T[p..p+k-1] + c that is a prefix of the target
            new_k = 0
            for length in range(min(k + 1, w), 0, -1):
                if read(p + length - 1) != c:
                    continue
                shift = k - length + 1
                if all(read(p + shift + j) == read(p + j) for j in range(length - 1)):
                    new_k = length
                    break
            k = new_k
        if k == w:
            yield e
