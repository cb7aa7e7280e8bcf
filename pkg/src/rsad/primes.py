"""Segmented sieve of Eratosthenes and exact prime-counting queries.

A built PrimeTable holds every prime up to its limit as a sorted uint64
array.  pi(n) queries are answered by binary search, so a table sized to
sqrt(r*x) is enough to drive the identity-based semiprime counters.  Tables
are immutable once built and safe to share between threads.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

U64_MAX = 2**64 - 1

# Segment buffer size in bytes; one byte tracks one odd candidate.
DEFAULT_SEGMENT_BYTES = 2**18

# Refuse builds whose prime storage estimate (8 bytes per prime,
# pi(limit) ~ limit/log(limit)) would exceed this.
DEFAULT_MEMORY_BUDGET_BYTES = 8 * 2**30

CACHE_MAGIC = b"RSAD1"
_CACHE_HEADER = struct.Struct("<5sQQ")


class MemoryBudgetError(Exception):
    """Requested sieve limit would blow the configured memory budget."""


class TableLimitError(Exception):
    """Query argument exceeds the table limit (never silently clamped)."""


class CacheFormatError(Exception):
    """Prime cache file is missing, truncated, or inconsistent."""


def _storage_estimate_bytes(limit: int) -> int:
    if limit < 3:
        return 0
    return int(8 * limit / math.log(limit))


def _odd_primes_upto(n: int) -> list[int]:
    """Odd primes <= n by a plain byte sieve (used for the base primes)."""
    if n < 3:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            start = p * p
            flags[start :: p] = b"\x00" * ((n - start) // p + 1)
    return [i for i in range(3, n + 1, 2) if flags[i]]


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to `limit`, sorted ascending, with O(log) pi queries."""

    limit: int
    primes: np.ndarray  # uint64, strictly increasing, read-only

    @property
    def count(self) -> int:
        """pi(limit): number of primes stored."""
        return int(self.primes.size)

    def _check_range(self, n: int) -> None:
        if n < 0:
            raise ValueError(f"query argument must be nonnegative, got {n}")
        if n > self.limit:
            raise TableLimitError(
                f"query for {n} exceeds table limit {self.limit}; "
                f"build a larger table"
            )

    def prime_count(self, n: int) -> int:
        """pi(n): number of primes <= n.  Requires n <= limit."""
        self._check_range(n)
        return int(np.searchsorted(self.primes, np.uint64(n), side="right"))

    def is_prime(self, n: int) -> bool:
        """Exact membership test for n <= limit."""
        self._check_range(n)
        i = int(np.searchsorted(self.primes, np.uint64(n), side="left"))
        return i < self.primes.size and int(self.primes[i]) == n

    def primes_between(self, lo_exclusive: int, hi_inclusive: int) -> np.ndarray:
        """Primes p with lo_exclusive < p <= hi_inclusive, ascending.

        Returns a read-only view into the table; empty when the interval is.
        """
        self._check_range(hi_inclusive)
        if lo_exclusive >= hi_inclusive:
            return self.primes[:0]
        lo = max(lo_exclusive, 0)
        i = int(np.searchsorted(self.primes, np.uint64(lo), side="right"))
        j = int(np.searchsorted(self.primes, np.uint64(hi_inclusive), side="right"))
        return self.primes[i:j]

    def save(self, path) -> None:
        """Write the binary cache: magic, limit, count, then u64 primes."""
        header = _CACHE_HEADER.pack(CACHE_MAGIC, self.limit, self.count)
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(self.primes.astype("<u8", copy=False).tobytes())


def build_table(
    limit: int,
    *,
    segment_bytes: int = DEFAULT_SEGMENT_BYTES,
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES,
) -> PrimeTable:
    """Sieve all primes <= limit into an immutable PrimeTable.

    Odd candidates are sieved in cache-sized segments; the merge order is
    fixed, so two builds with the same limit produce identical tables.
    Raises MemoryBudgetError before sieving if the table would not fit the
    configured budget.
    """
    if not isinstance(limit, int) or isinstance(limit, bool):
        raise ValueError(f"limit must be an integer, got {limit!r}")
    if limit < 0 or limit > U64_MAX:
        raise ValueError(f"limit must be in [0, 2^64), got {limit}")
    if segment_bytes < 1:
        raise ValueError("segment_bytes must be positive")
    if memory_budget_bytes < 1:
        raise ValueError("memory_budget_bytes must be positive")

    estimate = _storage_estimate_bytes(limit)
    if estimate > memory_budget_bytes:
        raise MemoryBudgetError(
            f"limit {limit} needs ~{estimate} bytes of prime storage, "
            f"over the {memory_budget_bytes}-byte budget; raise "
            f"memory_budget_bytes to override"
        )

    if limit < 2:
        empty = np.empty(0, dtype=np.uint64)
        empty.setflags(write=False)
        return PrimeTable(limit=limit, primes=empty)

    base_odd = _odd_primes_upto(math.isqrt(limit))
    chunks = [np.array([2], dtype=np.uint64)]

    # Odd n = 2i + 1 lives at index i; indices start at 1 (the value 3).
    i0 = 1
    i_end = (limit - 1) // 2 + 1
    while i0 < i_end:
        i1 = min(i0 + segment_bytes, i_end)
        buf = np.ones(i1 - i0, dtype=bool)
        lo_val = 2 * i0 + 1
        hi_val = 2 * (i1 - 1) + 1
        for p in base_odd:
            start = p * p
            if start > hi_val:
                break
            if start < lo_val:
                start = ((lo_val + p - 1) // p) * p
                if start % 2 == 0:
                    start += p
            # odd multiples of p sit p apart in odd-index space
            buf[(start - 1) // 2 - i0 :: p] = False
        idx = np.flatnonzero(buf)
        if idx.size:
            chunks.append(((idx + i0) * 2 + 1).astype(np.uint64))
        i0 = i1

    primes = np.concatenate(chunks)
    primes.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes)


def load_table(path) -> PrimeTable:
    """Load a table from the binary cache format, validating its contents."""
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise CacheFormatError(f"cannot read cache {path}: {exc}") from exc

    if len(blob) < _CACHE_HEADER.size:
        raise CacheFormatError(f"cache {path} is truncated (no header)")
    magic, limit, count = _CACHE_HEADER.unpack_from(blob)
    if magic != CACHE_MAGIC:
        raise CacheFormatError(f"cache {path} has bad magic {magic!r}")
    expected = _CACHE_HEADER.size + 8 * count
    if len(blob) != expected:
        raise CacheFormatError(
            f"cache {path} has {len(blob)} bytes, expected {expected}"
        )
    primes = np.frombuffer(blob, dtype="<u8", offset=_CACHE_HEADER.size).astype(
        np.uint64, copy=True
    )
    if primes.size != count:
        raise CacheFormatError(f"cache {path} count mismatch")
    if primes.size:
        if int(primes[0]) < 2 or int(primes[-1]) > limit:
            raise CacheFormatError(f"cache {path} primes out of range")
        if primes.size > 1 and not bool(np.all(primes[1:] > primes[:-1])):
            raise CacheFormatError(f"cache {path} primes not strictly increasing")
    primes.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes)
