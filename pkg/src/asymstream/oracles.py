"""Reference answers computed by unrelated means, for fuzzing and truth sidecars.

None of these respect the streaming model; they hold whole strings in memory.
"""

from __future__ import annotations

from .core import as_bytes


def leftmost_occurrence(text, pattern) -> tuple[int, int] | None:
    t, p = as_bytes(text), as_bytes(pattern)
    i = t.find(p)
    return None if i < 0 else (i + 1, i + len(p))


def leftmost_occurrence_scan(text, pattern) -> tuple[int, int] | None:
    """Quadratic double loop, for cross-checking ``bytes.find`` on small inputs."""
    t, p = as_bytes(text), as_bytes(pattern)
    for i in range(len(t) - len(p) + 1):
        if all(t[i + j] == p[j] for j in range(len(p))):
            return i + 1, i + len(p)
    return None


class SuffixAutomaton:
    """Suffix automaton of a byte string (Blumer et al. construction)."""

    def __init__(self, s) -> None:
        self.link = [-1]
        self.length = [0]
        self.next: list[dict[int, int]] = [{}]
        last = 0
        for c in as_bytes(s):
            cur = len(self.length)
            self.length.append(self.length[last] + 1)
            self.link.append(-1)
            self.next.append({})
            p = last
            while p != -1 and c not in self.next[p]:
                self.next[p][c] = cur
                p = self.link[p]
            if p == -1:
                self.link[cur] = 0
            else:
                q = self.next[p][c]
                if self.length[p] + 1 == self.length[q]:
                    self.link[cur] = q
                else:
                    clone = len(self.length)
                    self.length.append(self.length[p] + 1)
                    self.link.append(self.link[q])
                    self.next.append(dict(self.next[q]))
                    while p != -1 and self.next[p].get(c) == q:
                        self.next[p][c] = clone
                        p = self.link[p]
                    self.link[q] = self.link[cur] = clone
            last = cur

    def suffix_match_lengths(self, s) -> list[int]:
        """For each prefix of ``s``, the length of its longest suffix occurring in the source."""
        out = []
        state, cur = 0, 0
        for c in as_bytes(s):
            while state and c not in self.next[state]:
                state = self.link[state]
                cur = self.length[state]
            if c in self.next[state]:
                state = self.next[state][c]
                cur += 1
            else:
                cur = 0
            out.append(cur)
        return out


def lcs_length(a, b) -> int:
    """Longest common substring length via a suffix automaton of ``a``."""
    if not a or not b:
        return 0
    return max(SuffixAutomaton(a).suffix_match_lengths(b), default=0)


def lcs_length_dp(a, b) -> int:
    """O(nm) dynamic program; slow, used only to validate :func:`lcs_length`."""
    a, b = as_bytes(a), as_bytes(b)
    best = 0
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best


def longest_suffix_lengths(text, stream) -> list[int]:
    """Per stream prefix, the longest suffix occurring in ``text``, by substring tests."""
    t, s = as_bytes(text), as_bytes(stream)
    out = []
    for i in range(1, len(s) + 1):
        length = 0
        for cand in range(i, 0, -1):
            if s[i - cand : i] in t:
                length = cand
                break
        out.append(length)
    return out
