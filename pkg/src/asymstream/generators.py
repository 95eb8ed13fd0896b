"""Seeded instance generators and truth sidecars."""

from __future__ import annotations

import json
import random
from pathlib import Path

from . import oracles
from .wildcard import DEFAULT_WILDCARD, adversarial_instance, naive_wildcard_oracle

KINDS = ("random", "periodic", "planted-lcs", "thm2-adversarial")
TRUTH_LIMIT = 4096  # brute-force truth only at or below this size


def alphabet(sigma: int) -> bytes:
    if not 1 <= sigma <= 26:
        raise ValueError("sigma must lie in 1..26")
    return bytes(range(ord("a"), ord("a") + sigma))


def random_string(rng: random.Random, length: int, sigma: int) -> bytes:
    al = alphabet(sigma)
    return bytes(rng.choice(al) for _ in range(length))


def random_instance(n: int, m: int, sigma: int = 2, seed=0) -> tuple[bytes, bytes]:
    rng = random.Random(seed)
    return random_string(rng, n, sigma), random_string(rng, m, sigma)


def periodic_instance(n: int, m: int, period: int = 3, seed=0) -> tuple[bytes, bytes]:
    """Periodic text; the pattern follows the period but its last symbol breaks it."""
    rng = random.Random(seed)
    unit = random_string(rng, period, 2)
    text = (unit * (n // period + 1))[:n]
    pattern = bytearray((unit * (m // period + 1))[:m])
    if pattern:
        pattern[-1] = ord("z")
    return text, bytes(pattern)


def planted_lcs(n: int, m: int, length: int, sigma: int = 26, seed=0) -> tuple[bytes, bytes]:
    """Random ``text`` and ``stream`` sharing a copied block of ``length`` characters."""
    if length > min(n, m):
        raise ValueError("planted length exceeds a string length")
    rng = random.Random(seed)
    text = random_string(rng, n, sigma)
    stream = bytearray(random_string(rng, m, sigma))
    a = rng.randint(0, n - length)
    b = rng.randint(0, m - length)
    stream[b : b + length] = text[a : a + length]
    return text, bytes(stream)


def truth_for(kind: str, text: bytes, pattern: bytes, wildcard: int = DEFAULT_WILDCARD) -> dict | None:
    if max(len(text), len(pattern)) > TRUTH_LIMIT:
        return None
    if kind == "thm2-adversarial":
        positions = naive_wildcard_oracle(
            tuple(None if c == wildcard else c for c in pattern), text
        ).positions()
        return {"wildcard_match": bool(positions), "positions": positions}
    occ = oracles.leftmost_occurrence(text, pattern)
    return {
        "match": None if occ is None else list(occ),
        "lcs": oracles.lcs_length(text, pattern),
    }


def generate(kind: str, params: dict, seed=0) -> tuple[bytes, bytes]:
    if kind == "random":
        return random_instance(params["n"], params["m"], params.get("sigma", 2), seed)
    if kind == "periodic":
        return periodic_instance(params["n"], params["m"], params.get("period", 3), seed)
    if kind == "planted-lcs":
        return planted_lcs(
            params["n"], params.get("m", params["n"]), params["L"], params.get("sigma", 26), seed
        )
    if kind == "thm2-adversarial":
        text, pattern = adversarial_instance(params["kk"], params["i"], params.get("wild", ()))
        return text, pattern.to_bytes()
    raise ValueError(f"unknown kind {kind!r}")


def write_instance(outdir, kind: str, params: dict, seed=0) -> dict:
    """Write ``text.bin``, ``pattern.bin`` and ``truth.json`` into ``outdir``."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    text, pattern = generate(kind, params, seed)
    (out / "text.bin").write_bytes(text)
    (out / "pattern.bin").write_bytes(pattern)
    sidecar = {
        "kind": kind,
        "params": {k: sorted(v) if isinstance(v, (set, tuple)) else v for k, v in params.items()},
        "seed": seed,
        "n": len(text),
        "m": len(pattern),
        "truth": truth_for(kind, text, pattern),
    }
    (out / "truth.json").write_text(json.dumps(sidecar, sort_keys=True, indent=1) + "\n")
    return sidecar
