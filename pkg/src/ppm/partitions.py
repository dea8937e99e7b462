"""Integer partition arithmetic: norms, products, enumeration, censuses.

Partitions are stored as part -> multiplicity maps. The norm multiplies
the parts; the supernorm multiplies the primes indexed by the parts and
is a multiplicative bijection onto the positive integers. Several
routines here walk that bijection backwards to classify the integers
inside a prime gap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import mpmath

from .errors import DomainError
from .primes import PrimeTable

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)
_TIE_EPS = 1e-9


class Partition:
    """A finite multiset of positive integers (the empty multiset allowed)."""

    __slots__ = ("_mult",)

    def __init__(self, parts: Iterable[int] = ()):
        mult: dict[int, int] = {}
        for part in parts:
            part = int(part)
            if part < 1:
                raise DomainError(f"parts must be positive integers, got {part}")
            mult[part] = mult.get(part, 0) + 1
        self._mult = mult

    @classmethod
    def from_multiplicities(cls, mult: Mapping[int, int]) -> "Partition":
        """Build from a part -> multiplicity map; zero entries are dropped."""
        self = cls.__new__(cls)
        clean: dict[int, int] = {}
        for part, m in mult.items():
            part, m = int(part), int(m)
            if part < 1:
                raise DomainError(f"parts must be positive integers, got {part}")
            if m < 0:
                raise DomainError(f"multiplicities must be >= 0, got {m}")
            if m:
                clean[part] = m
        self._mult = clean
        return self

    # -- structure -------------------------------------------------------

    @property
    def length(self) -> int:
        """Number of parts, with multiplicity."""
        return sum(self._mult.values())

    @property
    def size(self) -> int:
        """Sum of parts, with multiplicity."""
        return sum(i * m for i, m in self._mult.items())

    @property
    def max_part(self) -> int:
        return max(self._mult, default=0)

    @property
    def is_empty(self) -> bool:
        return not self._mult

    def multiplicity(self, part: int) -> int:
        return self._mult.get(part, 0)

    def items(self) -> list[tuple[int, int]]:
        """(part, multiplicity) pairs in increasing part order."""
        return sorted(self._mult.items())

    def parts(self) -> tuple[int, ...]:
        """Parts in weakly decreasing order."""
        out: list[int] = []
        for part in sorted(self._mult, reverse=True):
            out.extend([part] * self._mult[part])
        return tuple(out)

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other: "Partition") -> "Partition":
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._mult == other._mult

    def __hash__(self) -> int:
        return hash(frozenset(self._mult.items()))

    def __repr__(self) -> str:
        return f"Partition({self.parts()!r})"


EMPTY = Partition()


def norm(lam: Partition) -> int:
    """Product of the parts; 1 for the empty partition."""
    return math.prod(i ** m for i, m in lam.items())


def supernorm(lam: Partition, t: PrimeTable) -> int:
    """Product of the primes indexed by the parts; 1 for the empty partition.

    Grows like 2**size in the worst case, so the result is an unbounded
    integer. Raises a range error when a part exceeds the number of
    sieved primes.
    """
    return math.prod(t.nth_prime(i) ** m for i, m in lam.items())


def multiply(lam: Partition, gam: Partition) -> Partition:
    """Multiset union: multiplicities of corresponding parts are summed."""
    mult = dict(lam._mult)
    for part, m in gam._mult.items():
        mult[part] = mult.get(part, 0) + m
    return Partition.from_multiplicities(mult)


def supernorm_preimage(m: int, t: PrimeTable) -> Partition:
    """The unique partition whose supernorm equals m.

    Factors m and maps each prime factor p_i to the part i; every prime
    factor of m must lie within the sieve.
    """
    if m < 1:
        raise DomainError(f"supernorm values are positive integers, got {m}")
    factors = t.factorize(m)
    return Partition.from_multiplicities(
        {t.prime_index(p): e for p, e in factors.items()}
    )


# ---------------------------------------------------------------------------
# enumeration


def _divisors_desc(n: int, hi: int) -> list[int]:
    """Divisors of n in [2, hi], largest first."""
    small: list[int] = []
    large: list[int] = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            if 2 <= d <= hi:
                small.append(d)
            q = n // d
            if q != d and 2 <= q <= hi:
                large.append(q)
        d += 1
    large.reverse()
    return sorted(small + large, reverse=True)


def _factor_chains(n: int, max_factor: int, budget: int | None) -> Iterator[list[int]]:
    # weakly decreasing factor lists with product n, factors >= 2
    if n == 1:
        yield []
        return
    if budget is not None and budget <= 0:
        return
    for f in _divisors_desc(n, max_factor):
        rest_budget = None if budget is None else budget - 1
        for rest in _factor_chains(n // f, f, rest_budget):
            yield [f, *rest]


def enumerate_by_norm(n: int, no_ones: bool,
                      max_length: int | None = None) -> Iterator[Partition]:
    """All partitions with norm n, streamed in a fixed order.

    With ``no_ones`` these are the factorizations of n into parts >= 2
    (plus the single-part (n), and the empty partition when n = 1).
    Parts equal to 1 do not change the norm, so without ``no_ones`` a
    ``max_length`` cap is required to keep the set finite. Order: cores
    in decreasing lexicographic order of their part lists; for each core,
    increasing counts of appended unit parts.
    """
    if n < 1:
        raise DomainError(f"norm values are positive integers, got {n}")
    if not no_ones and max_length is None:
        raise DomainError("max_length is required when parts equal to 1 are allowed")
    for chain in _factor_chains(n, n, max_length):
        core = Partition(chain)
        yield core
        if not no_ones:
            for ones in range(1, max_length - len(chain) + 1):
                yield multiply(core, Partition.from_multiplicities({1: ones}))


def enumerate_by_size(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of size n in decreasing lexicographic order."""
    if n < 0:
        raise DomainError(f"size must be >= 0, got {n}")

    def rec(remaining: int, cap: int) -> Iterator[list[int]]:
        if remaining == 0:
            yield []
            return
        for f in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - f, f):
                yield [f, *rest]

    cap = n if max_part is None else min(n, max_part)
    for parts in rec(n, max(cap, 0) if n else 0):
        yield Partition(parts)


# ---------------------------------------------------------------------------
# gap census


@dataclass(frozen=True)
class GapEntry:
    """One integer inside a prime gap, classified by its preimage."""
    m: int
    norm: int
    length: int
    m1: int
    category: str  # "predicted" | "odd_other" | "even"


@dataclass(frozen=True)
class GapComposition:
    """Classification of every integer in [p_n, p_{n+1})."""
    n: int
    gap_start: int
    gap_end: int
    entries: tuple[GapEntry, ...]
    count_predicted: int
    count_other_odd: int
    count_even: int

    @property
    def total(self) -> int:
        return self.gap_end - self.gap_start

    def csv_rows(self) -> list[tuple]:
        return [(e.m, e.norm, e.length, e.m1, e.category) for e in self.entries]


GAP_CSV_HEADER = ("m", "norm", "length", "m1", "category")


def gap_composition(n: int, t: PrimeTable) -> GapComposition:
    """Classify the integers in the n-th prime gap by supernorm preimage.

    The "predicted" class holds odd m whose preimage has norm n, no part
    equal to 1, and one or two parts; the remaining odd and the even
    integers are tallied separately. The three counts always sum to the
    gap length, since the preimage map is a bijection.
    """
    if n < 1:
        raise DomainError(f"gap index must be >= 1, got {n}")
    p_n = t.nth_prime(n)
    p_next = t.nth_prime(n + 1)
    entries: list[GapEntry] = []
    a = b = c = 0
    for m in range(p_n, p_next):
        lam = supernorm_preimage(m, t)
        nv = norm(lam)
        if m % 2 == 0:
            cat = "even"
            c += 1
        elif nv == n and lam.multiplicity(1) == 0 and lam.length in (1, 2):
            cat = "predicted"
            a += 1
        else:
            cat = "odd_other"
            b += 1
        entries.append(GapEntry(m, nv, lam.length, lam.multiplicity(1), cat))
    return GapComposition(n, p_n, p_next, tuple(entries), a, b, c)


# ---------------------------------------------------------------------------
# inequality suite


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    applicable: bool
    passed: bool  # vacuously True when not applicable


@dataclass(frozen=True)
class InequalityReport:
    partition: Partition
    checks: tuple[InequalityCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def _norm_power_upper_holds(nhat: int, nval: int) -> bool:
    # nhat <= nval ** (log 3 / log 2); exact equality at nval = 2**a, nhat = 3**a
    if nval == 1:
        return nhat <= 1
    a = nval.bit_length() - 1
    if nval == 1 << a and nhat == 3 ** a:
        return True
    diff = math.log(nhat) * LOG2 - math.log(nval) * LOG3
    if abs(diff) < _TIE_EPS:
        with mpmath.workdps(50):
            return mpmath.log(nhat) * mpmath.log(2) <= mpmath.log(nval) * mpmath.log(3)
    return diff < 0


def _log_product_lower_holds(lam: Partition, nhat: int) -> bool:
    # nhat > norm * 2**m1 * prod_{i>=2} (log i)**m_i, with exact equality
    # permitted for partitions having no part >= 2 (both sides are 2**m1)
    if lam.max_part < 2:
        return nhat == 1 << lam.multiplicity(1)
    rhs_log = (math.log(norm(lam)) + lam.multiplicity(1) * LOG2
               + sum(m * math.log(math.log(i)) for i, m in lam.items() if i >= 2))
    return math.log(nhat) > rhs_log


# The prime-norm lower bound p_norm <= supernorm fails for exactly these
# two partitions (p_12 = 37 > 35 and p_16 = 53 > 49); every other shape up
# to size 16 and every unit-free norm up to 2000 satisfies it.
PRIME_NORM_LOWER_EXCEPTIONS = (Partition((4, 3)), Partition((4, 4)))


def verify_inequalities(lam: Partition, t: PrimeTable) -> InequalityReport:
    """Evaluate the norm/supernorm comparison inequalities for one partition.

    Checks, in report order (those marked "no ones" apply only when the
    partition has no part equal to 1):

    - chain (no ones): length <= size <= norm <= supernorm
    - log_lower: supernorm > norm * 2**m1 * prod (log i)**m_i
    - norm_window (no ones): norm <= supernorm <= norm ** (log3/log2)
    - size_window: p_size <= supernorm <= 2 ** size
    - size_window_no_ones (no ones): p_size <= supernorm, supernorm^2 <= 3 ** size
    - combined_window (no ones): p_size <= supernorm <= norm ** (log3/log2)
    - prime_norm_lower (norm >= 5): p_norm <= supernorm, skipping the two
      exceptional shapes in :data:`PRIME_NORM_LOWER_EXCEPTIONS`

    Any failure indicates a library bug; the report never raises.
    """
    nhat = supernorm(lam, t)
    nval = norm(lam)
    size = lam.size
    no_ones = lam.multiplicity(1) == 0
    p_size = t.nth_prime(size)
    checks: list[InequalityCheck] = []

    def add(name: str, applicable: bool, passed: bool = True) -> None:
        checks.append(InequalityCheck(name, applicable, passed if applicable else True))

    add("chain", no_ones, lam.length <= size <= nval <= nhat)
    add("log_lower", True, _log_product_lower_holds(lam, nhat))
    add("norm_window", no_ones, nval <= nhat and _norm_power_upper_holds(nhat, nval))
    add("size_window", True, p_size <= nhat <= (1 << size))
    add("size_window_no_ones", no_ones, p_size <= nhat and nhat * nhat <= 3 ** size)
    add("combined_window", no_ones, p_size <= nhat and _norm_power_upper_holds(nhat, nval))
    pnl_applies = nval >= 5 and lam not in PRIME_NORM_LOWER_EXCEPTIONS
    add("prime_norm_lower", pnl_applies,
        t.nth_prime(nval) <= nhat if pnl_applies else True)
    return InequalityReport(lam, tuple(checks))
