"""Prime number infrastructure backed by a segmented sieve.

A :class:`PrimeTable` bundles everything the rest of the library asks of
the integers up to a fixed limit: the primes themselves (1-based indexing
with ``p_1 = 2`` and the convention ``p_0 = 1``), a pi(x) prefix array,
and Omega(x), the number of prime factors counted with multiplicity.
Tables are immutable after construction and safe to share across threads.
"""
from __future__ import annotations

import math
import struct
from pathlib import Path

import numpy as np

from .errors import CacheFormatError, DomainError, RangeError, ResourceLimitError

CACHE_MAGIC = b"PPM1"
DEFAULT_SEGMENT_SIZE = 1 << 20
DEFAULT_MEMORY_BUDGET = 2 << 30  # bytes


def _flat_sieve(limit: int) -> np.ndarray:
    """Boolean primality flags for 0..limit in one array."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def _sieve_flags(limit: int, segment_size: int) -> np.ndarray:
    """Primality flags for 0..limit, striking one segment at a time."""
    if limit <= segment_size:
        return _flat_sieve(limit)
    base = np.flatnonzero(_flat_sieve(math.isqrt(limit)))
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for lo in range(0, limit + 1, segment_size):
        hi = min(lo + segment_size, limit + 1)
        seg = flags[lo:hi]
        for p in base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start < hi:
                seg[start - lo :: p] = False
    return flags


def _omega_sieve(limit: int, base_primes: np.ndarray, segment_size: int) -> np.ndarray:
    """Omega(x) for 0..limit via segmented accumulation of prime powers.

    Every power ``p**a <= limit`` of a base prime (p <= sqrt(limit))
    contributes 1 to each of its multiples in the segment; whatever part
    of x is still unaccounted for afterwards is a single prime factor
    above sqrt(limit).
    """
    omega = np.zeros(limit + 1, dtype=np.uint8)
    for lo in range(0, limit + 1, segment_size):
        hi = min(lo + segment_size, limit + 1)
        seg = omega[lo:hi]
        part = np.ones(hi - lo, dtype=np.int64)
        for p in base_primes:
            p = int(p)
            pk = p
            while pk < hi:
                start = max(pk, ((lo + pk - 1) // pk) * pk)
                if start < hi:
                    seg[start - lo :: pk] += 1
                    part[start - lo :: pk] *= p
                pk *= p
        rest = np.arange(lo, hi, dtype=np.int64)
        seg += (part < rest).view(np.uint8)
    return omega


def _estimate_bytes(limit: int) -> int:
    # flags (transient) + pi_prefix int32 + omega uint8 + primes int64
    primes_guess = int(1.3 * limit / max(math.log(max(limit, 3)), 1.0)) + 16
    return 6 * (limit + 1) + 8 * primes_guess


class PrimeTable:
    """Immutable sieve products for the integers up to ``limit``.

    Attributes
    ----------
    limit : int
        Inclusive sieve bound.
    primes : np.ndarray
        Sorted primes up to ``limit``. Storage is 0-based; use
        :meth:`nth_prime` for the 1-based view with ``p_0 = 1``.
    pi_prefix : np.ndarray
        ``pi_prefix[x]`` is the number of primes <= x, for 0 <= x <= limit.
    omega_big : np.ndarray
        ``omega_big[x]`` counts the prime factors of x with multiplicity;
        ``omega_big[0] == omega_big[1] == 0``.
    """

    def __init__(self, limit: int, primes: np.ndarray, pi_prefix: np.ndarray,
                 omega_big: np.ndarray):
        self.limit = limit
        self.primes = primes
        self.pi_prefix = pi_prefix
        self.omega_big = omega_big
        for arr in (primes, pi_prefix, omega_big):
            arr.setflags(write=False)
        self._max_omega = max(limit.bit_length(), 1)
        self._pik_cache: dict[int, np.ndarray] = {}
        self._primes_list: list[int] | None = None

    # ------------------------------------------------------------------
    # basic queries

    @property
    def prime_count(self) -> int:
        """Number of sieved primes, i.e. the largest valid prime index."""
        return len(self.primes)

    def pi(self, x: int) -> int:
        """Count primes <= x."""
        self._check_range(x)
        return int(self.pi_prefix[x])

    def is_prime(self, x: int) -> bool:
        self._check_range(x)
        if x < 2:
            return False
        return bool(self.pi_prefix[x] > self.pi_prefix[x - 1])

    def nth_prime(self, n: int) -> int:
        """The n-th prime (1-based); n = 0 returns the sentinel value 1."""
        if n < 0:
            raise DomainError(f"prime index must be >= 0, got {n}")
        if n == 0:
            return 1
        if n > len(self.primes):
            raise RangeError(
                f"prime index {n} not sieved; largest valid index is {len(self.primes)}"
            )
        return int(self.primes[n - 1])

    def prime_index(self, p: int) -> int:
        """Index n with p_n == p; domain error if p is not prime."""
        if p > self.limit:
            raise RangeError(f"{p} is beyond the sieve limit {self.limit}")
        if p < 2 or not self.is_prime(p):
            raise DomainError(f"{p} is not prime")
        return int(self.pi_prefix[p])

    def prime_gap(self, n: int) -> int:
        """p_{n+1} - p_n for n >= 1."""
        if n < 1:
            raise DomainError(f"gap index must be >= 1, got {n}")
        if n + 1 > len(self.primes):
            raise RangeError(
                f"gap at index {n} needs prime {n + 1}; largest valid index is {len(self.primes)}"
            )
        return int(self.primes[n] - self.primes[n - 1])

    def is_twin_start(self, p: int) -> bool:
        """True iff p and p + 2 are both prime."""
        if p + 2 > self.limit:
            raise RangeError(f"need {p + 2} <= sieve limit {self.limit} to test p + 2")
        return self.is_prime(p) and self.is_prime(p + 2)

    # ------------------------------------------------------------------
    # almost-prime counting

    def omega(self, x: int) -> int:
        """Prime factors of x counted with multiplicity."""
        self._check_range(x)
        return int(self.omega_big[x])

    def pi_k(self, k: int, x: int) -> int:
        """Count integers m <= x with exactly k prime factors (multiplicity).

        ``pi_k(0, x)`` is 1 for every x >= 1 (the integer 1 alone) and
        ``pi_k(1, x)`` equals ``pi(x)``.
        """
        if k < 0:
            raise DomainError(f"k must be >= 0, got {k}")
        self._check_range(x)
        if k == 0:
            return 1 if x >= 1 else 0
        if k > self._max_omega:
            return 0
        return int(self.pi_k_prefix(k)[x])

    def pi_k_prefix(self, k: int) -> np.ndarray:
        """Cumulative pi_k values for all x <= limit (cached per k)."""
        if k < 1:
            raise DomainError("prefix arrays exist for k >= 1 only")
        cached = self._pik_cache.get(k)
        if cached is None:
            if k == 1:
                cached = self.pi_prefix
            else:
                cached = np.cumsum(self.omega_big == k, dtype=np.int32)
                cached.setflags(write=False)
            self._pik_cache[k] = cached
        return cached

    # ------------------------------------------------------------------
    # factorization within the sieved range

    def factorize(self, m: int) -> dict[int, int]:
        """Prime factorization of m as a prime -> exponent map.

        Every prime factor must lie within the sieve limit; a leftover
        cofactor above the limit raises a range error. ``factorize(1)``
        is the empty map.
        """
        if m < 1:
            raise DomainError(f"can only factor positive integers, got {m}")
        if self._primes_list is None:
            self._primes_list = [int(p) for p in self.primes]
        factors: dict[int, int] = {}
        rem = m
        for p in self._primes_list:
            if p * p > rem:
                break
            if rem % p == 0:
                e = 0
                while rem % p == 0:
                    rem //= p
                    e += 1
                factors[p] = e
        if rem > 1:
            if rem > self.limit:
                raise RangeError(
                    f"prime factor {rem} of {m} is beyond the sieve limit {self.limit}"
                )
            factors[rem] = factors.get(rem, 0) + 1
        return factors

    # ------------------------------------------------------------------
    # cache file

    def save_cache(self, path: str | Path) -> None:
        """Write the primality bitset so later runs can skip the sieve.

        Layout: magic ``PPM1``, the limit as 8 little-endian bytes, then
        the flags for 0..limit packed 8 per byte (big-endian bit order).
        """
        flags = np.zeros(self.limit + 1, dtype=bool)
        flags[self.primes] = True
        payload = np.packbits(flags)
        with open(path, "wb") as fh:
            fh.write(CACHE_MAGIC)
            fh.write(struct.pack("<Q", self.limit))
            fh.write(payload.tobytes())

    # ------------------------------------------------------------------

    def _check_range(self, x: int) -> None:
        if x < 0:
            raise DomainError(f"queries are defined for x >= 0, got {x}")
        if x > self.limit:
            raise RangeError(f"{x} is beyond the sieve limit {self.limit}")

    def __repr__(self) -> str:  # pragma: no cover
        return f"PrimeTable(limit={self.limit}, primes={len(self.primes)})"


def _table_from_flags(limit: int, flags: np.ndarray, segment_size: int) -> PrimeTable:
    primes = np.flatnonzero(flags).astype(np.int64)
    pi_prefix = np.cumsum(flags, dtype=np.int32)
    base = primes[primes <= math.isqrt(limit)]
    omega = _omega_sieve(limit, base, segment_size)
    return PrimeTable(limit, primes, pi_prefix, omega)


def build_prime_table(limit: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                      memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PrimeTable:
    """Sieve primes and Omega values up to ``limit`` (inclusive).

    Parameters
    ----------
    limit : int
        Inclusive sieve bound, at least 2.
    segment_size : int
        Integers per sieve segment; limits above it are processed in
        segments whose concatenation equals the flat-sieve result.
    memory_budget : int
        Upper bound in bytes for the table and its transient buffers.
    """
    if limit < 2:
        raise DomainError(f"sieve limit must be at least 2, got {limit}")
    if segment_size < 1 << 10:
        raise DomainError("segment size below 1024 is not supported")
    needed = _estimate_bytes(limit)
    if needed > memory_budget:
        raise ResourceLimitError(
            f"limit {limit} needs about {needed // (1 << 20)} MiB, exceeding the "
            f"{memory_budget // (1 << 20)} MiB memory budget"
        )
    flags = _sieve_flags(limit, segment_size)
    return _table_from_flags(limit, flags, segment_size)


def load_prime_table(path: str | Path, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                     memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PrimeTable:
    """Rebuild a PrimeTable from a bitset cache written by ``save_cache``."""
    data = Path(path).read_bytes()
    if len(data) < 12 or data[:4] != CACHE_MAGIC:
        raise CacheFormatError(f"{path} is not a sieve cache (bad header)")
    limit = struct.unpack("<Q", data[4:12])[0]
    expected = (limit + 1 + 7) // 8
    if len(data) - 12 != expected:
        raise CacheFormatError(
            f"{path} is truncated: expected {expected} bitset bytes, found {len(data) - 12}"
        )
    needed = _estimate_bytes(limit)
    if needed > memory_budget:
        raise ResourceLimitError(
            f"cached limit {limit} needs about {needed // (1 << 20)} MiB, exceeding the "
            f"{memory_budget // (1 << 20)} MiB memory budget"
        )
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8, offset=12),
                         count=limit + 1)
    flags = bits.view(bool)
    return _table_from_flags(int(limit), flags, segment_size)
