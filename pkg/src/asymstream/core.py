"""Asymmetric streaming model: random-access text, one-way streams, and metering.

Characters are bytes and are handled as ``int`` values in ``range(256)``.
All text positions are 1-based.
"""

from __future__ import annotations

import io
import os
import threading
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, Union

Source = Union[bytes, bytearray, memoryview, str, os.PathLike]


class ContractError(RuntimeError):
    """A caller broke a documented precondition."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


def as_bytes(s) -> bytes:
    """Coerce test-friendly inputs (str, bytes, iterables of ints) to bytes."""
    if isinstance(s, bytes):
        return s
    if isinstance(s, (bytearray, memoryview)):
        return bytes(s)
    if isinstance(s, str):
        return s.encode("latin-1")
    return bytes(s)


class SpaceMeter:
    """Cooperative accounting of persistent algorithm state, in machine words."""

    def __init__(self) -> None:
        self.current_words = 0
        self.peak_words = 0

    def register(self, delta: int) -> None:
        current = self.current_words + delta
        if current < 0:
            raise ContractError(
                f"meter would go negative ({self.current_words} {delta:+d})"
            )
        self.current_words = current
        if current > self.peak_words:
            self.peak_words = current

    def __repr__(self) -> str:
        return f"SpaceMeter(current={self.current_words}, peak={self.peak_words})"


def meter_register(meter: SpaceMeter, delta: int) -> None:
    meter.register(delta)


class AlphabetMap:
    """Injective map from byte values onto ``0 .. sigma-1``.

    Codes are assigned in increasing byte order, so two maps over the same
    symbol set are identical.
    """

    __slots__ = ("symbols", "codes", "sigma")

    def __init__(self, symbols: Iterable[int]) -> None:
        syms = sorted(set(int(c) for c in symbols))
        for c in syms:
            if not 0 <= c < 256:
                raise DomainError(f"symbol {c} is not a byte")
        self.symbols = tuple(syms)
        # -1 marks bytes outside the alphabet; lookups stay O(1) without hashing
        self.codes = [-1] * 256
        for code, c in enumerate(syms):
            self.codes[c] = code
        self.sigma = len(syms)

    @classmethod
    def from_bytes(cls, data) -> "AlphabetMap":
        return cls(set(as_bytes(data)))

    def __contains__(self, c: int) -> bool:
        return 0 <= c < 256 and self.codes[c] >= 0

    def f(self, c: int) -> int:
        code = self.codes[c] if 0 <= c < 256 else -1
        if code < 0:
            raise DomainError(f"character {c!r} is not in the alphabet")
        return code

    def __eq__(self, other) -> bool:
        return isinstance(other, AlphabetMap) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"AlphabetMap(sigma={self.sigma})"


class TextOracle:
    """Random-access view of the offline string. Every ``read`` is counted."""

    # words of buffer state an algorithm must charge when it holds this oracle
    state_words = 0

    def __init__(self, data: bytes) -> None:
        self._data = bytes(data)
        self.length = len(self._data)
        self.reads_performed = 0
        self._alphabet: AlphabetMap | None = None

    def __len__(self) -> int:
        return self.length

    def read(self, i: int) -> int:
        if i < 1 or i > self.length:
            raise IndexError(f"text position {i} outside 1..{self.length}")
        self.reads_performed += 1
        return self._data[i - 1]

    def iter_chunks(self, size: int = 1 << 16) -> Iterator[bytes]:
        """Uncounted raw scan, used only at load time (alphabet building)."""
        for k in range(0, self.length, size):
            yield self._data[k : k + size]

    def alphabet(self) -> AlphabetMap:
        if self._alphabet is None:
            seen: set[int] = set()
            for chunk in self.iter_chunks():
                seen.update(chunk)
            self._alphabet = AlphabetMap(seen)
        return self._alphabet

    def __repr__(self) -> str:
        return f"{type(self).__name__}(length={self.length})"


class FileTextOracle(TextOracle):
    """Text served by seeking into a file through a small fixed block cache."""

    BLOCK = 64
    state_words = BLOCK // 8 + 2  # cache bytes plus its start offset and fill

    def __init__(self, path: str | os.PathLike) -> None:
        self.path = Path(path)
        self._fh: BinaryIO = open(self.path, "rb", buffering=0)
        self.length = os.fstat(self._fh.fileno()).st_size
        self.reads_performed = 0
        self._alphabet = None
        self._block_start = -1
        self._block = b""
        self._lock = threading.Lock()

    def read(self, i: int) -> int:
        if i < 1 or i > self.length:
            raise IndexError(f"text position {i} outside 1..{self.length}")
        with self._lock:
            self.reads_performed += 1
            off = i - 1
            start = self._block_start
            if start < 0 or not start <= off < start + len(self._block):
                start = off - off % self.BLOCK
                self._fh.seek(start)
                self._block = self._fh.read(self.BLOCK)
                self._block_start = start
            return self._block[off - start]

    def iter_chunks(self, size: int = 1 << 16) -> Iterator[bytes]:
        with open(self.path, "rb") as fh:
            while chunk := fh.read(size):
                yield chunk

    def close(self) -> None:
        self._fh.close()


def open_text(source: Source) -> TextOracle:
    """Open a text oracle: in memory for bytes, seeking for a path (str or PathLike)."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        return TextOracle(bytes(source))
    if isinstance(source, (str, os.PathLike)):
        return FileTextOracle(source)
    raise TypeError(f"cannot open text from {type(source).__name__}")


class CharStream:
    """One-way character source with pass accounting.

    A stream over bytes or a file path can be rewound; a stream over an
    already-open binary handle (standard input) is single-pass.
    """

    CHUNK = 4096

    def __init__(self, source, replayable: bool | None = None) -> None:
        self._data: bytes | None = None
        self._path: Path | None = None
        self._fh: BinaryIO | None = None
        if isinstance(source, (bytes, bytearray, memoryview)):
            self._data = bytes(source)
        elif isinstance(source, (str, os.PathLike)):
            self._path = Path(source)  # str is a path, never literal text
        elif isinstance(source, io.IOBase) or hasattr(source, "read"):
            self._fh = source
        else:
            self._data = as_bytes(source)
        self.replayable = (self._fh is None) if replayable is None else replayable
        self.position = 0
        self.passes_started = 0
        self._start_pass()

    def _start_pass(self) -> None:
        self.passes_started += 1
        self.position = 0
        self._buf = b""
        self._bufpos = 0
        if self._path is not None:
            if self._fh is not None:
                self._fh.close()
            self._fh = open(self._path, "rb")

    def next(self) -> int | None:
        """Next character, or ``None`` at end of stream."""
        if self._data is not None:
            if self.position >= len(self._data):
                return None
            c = self._data[self.position]
            self.position += 1
            return c
        if self._bufpos >= len(self._buf):
            self._buf = self._fh.read(self.CHUNK) if self._fh is not None else b""
            self._bufpos = 0
            if not self._buf:
                return None
        c = self._buf[self._bufpos]
        self._bufpos += 1
        self.position += 1
        return c

    def __iter__(self) -> Iterator[int]:
        while (c := self.next()) is not None:
            yield c

    def drain(self) -> None:
        while self.next() is not None:
            pass

    def rewind(self) -> None:
        if not self.replayable:
            raise ContractError("stream is not replayable")
        self._start_pass()

    def close(self) -> None:
        if self._path is not None and self._fh is not None:
            self._fh.close()
            self._fh = None


def open_stream(source) -> CharStream:
    """Open a stream over bytes, a file path, or an open binary handle.

    ``"-"`` means standard input, which is not replayable.
    """
    if isinstance(source, str) and source == "-":
        import sys

        return CharStream(sys.stdin.buffer, replayable=False)
    if isinstance(source, (str, os.PathLike)):
        path = Path(source)
        with open(path, "rb"):  # surface I/O errors at open time
            pass
        return CharStream(path)
    return CharStream(source)
