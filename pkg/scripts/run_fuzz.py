"""Seeded fuzzing of every algorithm against the brute-force oracles.

Prints one line per family with the number of cases and disagreements.

    python3 scripts/run_fuzz.py --cases 2000 --seed 0
"""

import argparse
import math
import random

from asymstream.core import open_stream, open_text
from asymstream.lcs import lcs_approx_logrounds, lcs_approx_multipass, lcs_exact
from asymstream.oracles import lcs_length, leftmost_occurrence
from asymstream.pattern_match import match_run
from asymstream.wildcard import WILD, WildcardPattern, naive_wildcard_oracle, sampled_wildcard_match


def word(rng, n, sigma):
    return bytes(rng.randrange(97, 97 + sigma) for _ in range(n))


def fuzz_match(rng, cases):
    bad = 0
    for case in range(cases):
        sigma = rng.choice((2, 4, 26))
        text = word(rng, rng.randint(1, 300), sigma)
        pattern = word(rng, rng.randint(0, 6), sigma)
        for mode in ("verified", "randomized"):
            got = match_run(open_text(text), open_stream(pattern), mode=mode, seed=case)
            bad += got != leftmost_occurrence(text, pattern)
    return bad


def fuzz_lcs(rng, cases):
    bad = 0
    for case in range(cases):
        sigma = rng.choice((2, 4, 26))
        a, b = word(rng, rng.randint(1, 120), sigma), word(rng, rng.randint(1, 120), sigma)
        opt = lcs_length(a, b)
        bad += lcs_exact(open_text(a), open_stream(b), seed=case).length != opt
        eps = rng.choice((0.1, 0.25, 0.5))
        lo = (1 - eps) ** 2 * opt
        got = lcs_approx_multipass(open_text(a), open_stream(b), eps, 0.5, seed=case)
        bad += not lo <= got <= opt
        got = lcs_approx_logrounds(open_text(a), open_stream(b), eps, seed=case)
        bad += not lo <= got <= opt
    return bad


def fuzz_wildcard(rng, cases):
    bad = 0
    for _ in range(cases):
        sigma = rng.choice((2, 3))
        text = word(rng, rng.randint(1, 200), sigma)
        m = rng.randint(1, len(text))
        pat = WildcardPattern(tuple(WILD if rng.random() < 0.4 else rng.randrange(97, 97 + sigma)
                                    for _ in range(m)))
        truth = set(naive_wildcard_oracle(pat, text).positions())
        for s in (1, math.isqrt(len(text)), len(text)):
            got = sampled_wildcard_match(text, pat, max(s, 1))
            bad += (got is None) == bool(truth) or (got is not None and got not in truth)
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name, fn in (("match", fuzz_match), ("lcs", fuzz_lcs), ("wildcard", fuzz_wildcard)):
        bad = fn(random.Random(f"{name}-{args.seed}"), args.cases)
        print(f"{name:9s} cases={args.cases} disagreements={bad}")


if __name__ == "__main__":
    main()
