"""Longest common substring between a random-access text and a stream.

Exact: keep the window ``T[ell..r]`` equal to the longest suffix of the
stream that occurs in ``T``. A new stream character can lengthen that suffix
by at most one, so the next window is the longest suffix of
``T[ell..r] + c`` found in ``T``; it is located by running the one-pass
matcher with the candidate fed from its right end, growing leftwards.

Approximate: for a guess ``d``, probes of length ``ceil((1-eps) d)`` start at
stream positions spaced ``ceil(eps d)`` apart, each an independent matcher
session. Guesses come from a geometric ladder, processed either in groups
(one pass per group) or one per pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .core import CharStream, ContractError, DomainError, SpaceMeter, TextOracle
from .hashing import FingerprintContext
from .pattern_match import MatchSession, PrependMatchSession

LCS_FIELDS = 6  # ell, r, mx, best_ell, best_r, pending character


def _frac(x) -> Fraction:
    # via str so that 0.1 means 1/10 and ceil(0.1 * 30) is 3, not 4
    return x if isinstance(x, Fraction) else Fraction(str(x))


def longest_suffix_in_text(
    text,
    ell: int,
    r: int,
    c: int,
    ctx: FingerprintContext,
    verified: bool = False,
    meter: SpaceMeter | None = None,
) -> tuple[int, int] | None:
    """Leftmost interval of the longest suffix of ``T[ell..r] + c`` occurring in ``T``.

    ``ell < 1`` denotes an empty window. Returns ``None`` when ``c`` itself
    does not occur. The candidate is fed right to left: ``c`` first, then
    ``T[r], T[r-1], ..., T[ell]``.
    """
    session = PrependMatchSession(text, ctx, meter=meter, verified=verified)
    try:
        win = session.push(c)
        if win is None:
            return None
        if ell >= 1:
            read = text.read
            for pos in range(r, ell - 1, -1):
                nxt = session.push(read(pos))
                if nxt is None:
                    break
                win = nxt
        return win
    finally:
        session.close()


class LcsSession:
    def __init__(
        self,
        text: TextOracle,
        ctx: FingerprintContext,
        meter: SpaceMeter | None = None,
        verified: bool = False,
    ) -> None:
        self.text = text
        self.ctx = ctx
        self.verified = verified
        self.meter = meter if meter is not None else SpaceMeter()
        self.ell = -1
        self.r = -1
        self.mx = 0
        self.best: tuple[int, int] | None = None
        self.words = LCS_FIELDS + ctx.words
        self.meter.register(self.words)

    @property
    def window_length(self) -> int:
        return 0 if self.ell < 1 else self.r - self.ell + 1

    def push(self, c: int) -> tuple[tuple[int, int] | None, int]:
        """Consume one stream character; return ``(window or None, mx)``."""
        win = longest_suffix_in_text(
            self.text, self.ell, self.r, c, self.ctx,
            verified=self.verified, meter=self.meter,
        )
        if win is None:
            self.ell = self.r = -1
        else:
            self.ell, self.r = win
            if win[1] - win[0] + 1 > self.mx:
                self.mx = win[1] - win[0] + 1
                self.best = win
        return win, self.mx

    def close(self) -> None:
        self.meter.register(-self.words)


def lcs_push(session: LcsSession, c: int):
    return session.push(c)


class LcsResult(NamedTuple):
    length: int
    interval: tuple[int, int] | None  # an occurrence in the text, when length > 0


def lcs_exact(
    text: TextOracle,
    stream: CharStream,
    mode: str = "verified",
    ctx: FingerprintContext | None = None,
    seed=None,
    meter: SpaceMeter | None = None,
    modulus_bits: int | None = 61,
) -> LcsResult:
    """One-pass longest common substring length.

    ``modulus_bits`` defaults to 61 because a run makes O(nm) fingerprint
    comparisons; a modulus near ``n**2`` would make collisions likely.
    """
    if mode not in ("randomized", "verified"):
        raise DomainError(f"unknown mode {mode!r}")
    if text.length == 0:
        stream.drain()
        return LcsResult(0, None)
    if ctx is None:
        bits = modulus_bits
        if bits is not None and (1 << bits) <= max(text.length, text.alphabet().sigma) ** 2:
            bits = None
        ctx = FingerprintContext.for_text(text, seed=seed, modulus_bits=bits)
    session = LcsSession(text, ctx, meter=meter, verified=mode == "verified")
    for c in stream:
        session.push(c)
    session.close()
    return LcsResult(session.mx, session.best)


@dataclass(frozen=True)
class ApproxConfig:
    epsilon: Fraction
    d: int
    kappa: Fraction = Fraction(1)
    mark_spacing: int = field(init=False)
    probe_length: int = field(init=False)

    def __post_init__(self) -> None:
        eps, kappa = _frac(self.epsilon), _frac(self.kappa)
        if not 0 < eps < 1:
            raise DomainError("epsilon must lie in (0, 1)")
        if not 0 < kappa <= 1:
            raise DomainError("kappa must lie in (0, 1]")
        if self.d < 1:
            raise DomainError("guess d must be positive")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "mark_spacing", math.ceil(eps * self.d))
        object.__setattr__(self, "probe_length", math.ceil((1 - eps) * self.d))

    @property
    def max_instances(self) -> int:
        return -(-self.probe_length // self.mark_spacing) + 1


class _GuessRunner:
    """Probe instances for one guess ``d``, fed the stream in lockstep."""

    FIELDS = 5  # d, spacing, probe length, instance count, found flag

    def __init__(self, text, cfg: ApproxConfig, ctx, meter: SpaceMeter, verified: bool,
                 stats: dict | None = None):
        self.text = text
        self.stats = stats
        self.cfg = cfg
        self.ctx = ctx
        self.meter = meter
        self.verified = verified
        self.instances: list[MatchSession] = []
        self.peak_alive = 0
        self.found = False
        meter.register(self.FIELDS)

    def feed(self, pos: int, c: int) -> bool:
        """Deliver stream character ``c`` at 1-based ``pos``; True once a probe completes."""
        cfg = self.cfg
        if (pos - 1) % cfg.mark_spacing == 0:
            self.instances.append(
                MatchSession(self.text, self.ctx, meter=self.meter, verified=self.verified)
            )
            if len(self.instances) > self.peak_alive:
                self.peak_alive = len(self.instances)
        survivors = []
        for inst in self.instances:
            if inst.push(c) is None:
                inst.close()
            elif inst.length >= cfg.probe_length:
                inst.close()
                self.found = True
            else:
                survivors.append(inst)
        self.instances = survivors
        return self.found

    def close(self) -> None:
        for inst in self.instances:
            inst.close()
        self.instances = []
        self.meter.register(-self.FIELDS)
        if self.stats is not None:
            self.stats["peak_alive"] = max(self.stats.get("peak_alive", 0), self.peak_alive)


def _context(text, ctx, seed, modulus_bits):
    if ctx is not None:
        return ctx
    return FingerprintContext.for_text(text, seed=seed, modulus_bits=modulus_bits)


def lcs_approx_decide(
    text: TextOracle,
    stream: CharStream,
    cfg: ApproxConfig,
    verified: bool = True,
    ctx: FingerprintContext | None = None,
    seed=None,
    meter: SpaceMeter | None = None,
    stats: dict | None = None,
) -> int | None:
    """One pass: ``cfg.probe_length`` if some probe of that length occurs in ``text``, else ``None``.

    Guaranteed to succeed when the longest common substring is at least ``cfg.d``.
    """
    if text.length == 0:
        return None
    ctx = _context(text, ctx, seed, None)
    meter = meter if meter is not None else SpaceMeter()
    runner = _GuessRunner(text, cfg, ctx, meter, verified, stats)
    try:
        for pos, c in enumerate(stream, 1):
            if runner.feed(pos, c):
                return cfg.probe_length
        return None
    finally:
        runner.close()


def guess_ladder(n: int, epsilon) -> list[int]:
    """Distinct guesses ``ceil(n (1-eps)**j)``, from ``n`` down to 1."""
    eps = _frac(epsilon)
    out: list[int] = []
    x = Fraction(n)
    while n >= 1:
        d = math.ceil(x)
        if not out or d < out[-1]:
            out.append(d)
        if d == 1:
            break
        x *= 1 - eps
    return out


def ladder_categories(n: int, epsilon, kappa) -> list[list[int]]:
    """Split the ladder into groups spanning a factor of at most ``n**kappa`` each."""
    ladder = guess_ladder(n, epsilon)
    kappa = float(_frac(kappa))
    if n <= 1:
        return [ladder] if ladder else []
    top = int(1 / kappa + 1e-9)
    groups: dict[int, list[int]] = {}
    log_n = math.log(n)
    for d in ladder:
        idx = int((log_n - math.log(d)) / (kappa * log_n) + 1e-12)
        groups.setdefault(min(max(idx, 0), top), []).append(d)
    return [groups[i] for i in sorted(groups)]


def lcs_approx_multipass(
    text: TextOracle,
    stream: CharStream,
    epsilon,
    kappa,
    verified: bool = True,
    ctx: FingerprintContext | None = None,
    seed=None,
    meter: SpaceMeter | None = None,
    stats: dict | None = None,
) -> int:
    """(1-eps)**2-approximate LCS length in at most ``ceil(1/kappa) + 1`` passes."""
    if not stream.replayable:
        raise ContractError("replayable source required")
    eps, kap = _frac(epsilon), _frac(kappa)
    meter = meter if meter is not None else SpaceMeter()
    n = text.length
    if n == 0:
        stream.drain()
        return 0
    ctx = _context(text, ctx, seed, None)
    for k, group in enumerate(ladder_categories(n, eps, kap)):
        if k:
            stream.rewind()
        runners = [
            _GuessRunner(text, ApproxConfig(eps, d, kap), ctx, meter, verified, stats)
            for d in group  # descending d
        ]
        best = 0
        for pos, c in enumerate(stream, 1):
            for i, runner in enumerate(runners):
                if runner.feed(pos, c):
                    best = runner.cfg.probe_length
                    # smaller guesses cannot beat this one
                    for rest in runners[i:]:
                        rest.close()
                    runners = runners[:i]
                    break
            if not runners:
                break
        for runner in runners:
            runner.close()
        if best:
            return best
    return 0


def lcs_approx_logrounds(
    text: TextOracle,
    stream: CharStream,
    epsilon,
    verified: bool = True,
    ctx: FingerprintContext | None = None,
    seed=None,
    meter: SpaceMeter | None = None,
    stats: dict | None = None,
) -> int:
    """Walk the ladder one guess per pass and stop at the first success."""
    if not stream.replayable:
        raise ContractError("replayable source required")
    eps = _frac(epsilon)
    meter = meter if meter is not None else SpaceMeter()
    n = text.length
    if n == 0:
        stream.drain()
        return 0
    ctx = _context(text, ctx, seed, None)
    for k, d in enumerate(guess_ladder(n, eps)):
        if k:
            stream.rewind()
        found = lcs_approx_decide(
            text, stream, ApproxConfig(eps, d), verified=verified,
            ctx=ctx, meter=meter, stats=stats,
        )
        if found:
            return found
    return 0
