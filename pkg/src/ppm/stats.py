"""Gap-merit and twin-prime statistics over a sieved range.

Censuses keep integer counts internally and divide only when a fraction
is read, so merged or re-run censuses compare exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RangeError, UndefinedRatioError
from .models import divisor_counts_up_to, prime_upper_bound
from .primes import PrimeTable


def merit(n: int, t: PrimeTable) -> float:
    """Gap merit (p_{n+1} - p_n) / log p_n."""
    gap = t.prime_gap(n)
    return gap / math.log(t.nth_prime(n))


def model1_merit(n: int) -> float:
    """Modeled merit d(n) / log n (the ceiling is dropped; see merit_census)."""
    if n < 2:
        raise DomainError(f"log n must be positive, got n = {n}")
    from .models import divisor_count

    return divisor_count(n) / math.log(n)


@dataclass(frozen=True)
class MeritCensus:
    """Greater/less-than-one tallies for actual and modeled merits.

    Counts are exact integers sharing one denominator, so
    ``m_gt + m_lt + m_tie == total`` holds exactly (same for the modeled
    side); fractions divide only when read.
    """
    range_description: str
    total: int
    m_gt: int
    m_lt: int
    m_tie: int
    m1_gt: int
    m1_lt: int
    m1_tie: int
    agree: int

    @property
    def tie_count(self) -> int:
        return self.m_tie + self.m1_tie

    def _frac(self, count: int) -> float:
        return count / self.total if self.total else float("nan")

    @property
    def frac_M_gt1(self) -> float:
        return self._frac(self.m_gt)

    @property
    def frac_M_lt1(self) -> float:
        return self._frac(self.m_lt)

    @property
    def frac_M1_gt1(self) -> float:
        return self._frac(self.m1_gt)

    @property
    def frac_M1_lt1(self) -> float:
        return self._frac(self.m1_lt)

    @property
    def frac_agree(self) -> float:
        return self._frac(self.agree)

    def csv_header(self) -> tuple[str, ...]:
        return ("range", "total", "frac_M_gt1", "frac_M_lt1", "frac_M1_gt1",
                "frac_M1_lt1", "frac_agree", "tie_count")

    def csv_row(self) -> tuple:
        return (self.range_description, self.total, self.frac_M_gt1, self.frac_M_lt1,
                self.frac_M1_gt1, self.frac_M1_lt1, self.frac_agree, self.tie_count)


def _is_prime_vec(t: PrimeTable, values: np.ndarray) -> np.ndarray:
    # values must be >= 1 and <= limit
    return t.pi_prefix[values] > t.pi_prefix[values - 1]


def merit_census(n_max: int, t: PrimeTable, index_filter: str = "all") -> MeritCensus:
    """Tally M(n) and M1(n) against 1 for indices 2..n_max.

    With ``index_filter="primes_only"`` the census is restricted to prime
    n. Exact ties (a merit equal to 1) are tracked separately and belong
    to neither the greater nor the less bucket; all fractions divide by
    the full index count.
    """
    if index_filter not in ("all", "primes_only"):
        raise DomainError(f"index_filter must be 'all' or 'primes_only', got {index_filter!r}")
    if n_max < 2:
        raise DomainError(f"the census needs n_max >= 2, got {n_max}")
    if t.prime_count < n_max + 1:
        raise RangeError(
            f"need primes through index {n_max + 1}; sieve to ~{prime_upper_bound(n_max + 1)}"
        )
    idx = np.arange(2, n_max + 1, dtype=np.int64)
    if index_filter == "primes_only":
        idx = idx[_is_prime_vec(t, idx)]
    p_n = t.primes[idx - 1]
    gaps = (t.primes[idx] - p_n).astype(np.float64)
    log_p = np.log(p_n.astype(np.float64))
    d = divisor_counts_up_to(n_max)
    dn = d[idx].astype(np.float64)
    log_n = np.log(idx.astype(np.float64))

    m_gt = gaps > log_p
    m_lt = gaps < log_p
    m1_gt = dn > log_n
    m1_lt = dn < log_n
    agree = int(np.count_nonzero((m_gt & m1_gt) | (m_lt & m1_lt)))
    label = "prime indices" if index_filter == "primes_only" else "indices"
    total = int(len(idx))
    return MeritCensus(
        range_description=f"{label} 2..{n_max}",
        total=total,
        m_gt=int(np.count_nonzero(m_gt)),
        m_lt=int(np.count_nonzero(m_lt)),
        m_tie=int(np.count_nonzero(~(m_gt | m_lt))),
        m1_gt=int(np.count_nonzero(m1_gt)),
        m1_lt=int(np.count_nonzero(m1_lt)),
        m1_tie=int(np.count_nonzero(~(m1_gt | m1_lt))),
        agree=agree,
    )


# ---------------------------------------------------------------------------
# twin-prime statistics


@dataclass(frozen=True)
class TwinCensus:
    """Twin-pair counts up to a bound, split by prime-indexed starts."""
    bound: int
    twin_pairs: int
    prime_indexed_twin_pairs: int
    pi_bound: int
    prime_indexed_primes: int
    prob1: float
    prob2: float
    ratio_P: float

    def csv_header(self) -> tuple[str, ...]:
        return ("bound", "twin_pairs", "prime_indexed_twin_pairs", "pi",
                "prime_indexed_primes", "prob1", "prob2", "ratio_P")

    def csv_row(self) -> tuple:
        return (self.bound, self.twin_pairs, self.prime_indexed_twin_pairs,
                self.pi_bound, self.prime_indexed_primes, self.prob1, self.prob2,
                self.ratio_P)


def _twin_masks(bound: int, t: PrimeTable):
    if bound < 1:
        raise DomainError(f"bound must be >= 1, got {bound}")
    if bound + 2 > t.limit:
        raise RangeError(
            f"twin tests at {bound} read up to {bound + 2}; sieve limit is {t.limit}"
        )
    count = t.pi(bound)
    pl = t.primes[:count]
    twin = _is_prime_vec(t, pl + 2)
    indices = np.arange(1, count + 1, dtype=np.int64)
    prime_indexed = _is_prime_vec(t, indices)
    return pl, twin, prime_indexed


def twin_census(bound: int, t: PrimeTable) -> TwinCensus:
    """Count twin pairs by smaller member <= bound and the prime-indexed subset.

    prob1 is the twin-start share among prime-indexed primes, prob2 the
    share among all primes; ratio_P divides them. Ratios with an empty
    denominator come back as nan.
    """
    pl, twin, prime_indexed = _twin_masks(bound, t)
    twins = int(np.count_nonzero(twin))
    pip = int(np.count_nonzero(prime_indexed))
    pip_twin = int(np.count_nonzero(twin & prime_indexed))
    prob1 = pip_twin / pip if pip else float("nan")
    prob2 = twins / len(pl) if len(pl) else float("nan")
    ratio = prob1 / prob2 if prob2 and not math.isnan(prob1) else float("nan")
    return TwinCensus(bound, twins, pip_twin, len(pl), pip, prob1, prob2, ratio)


@dataclass(frozen=True)
class CoOccurrence:
    """How often prime-indexed gaps and twin pairs coincide up to a bound."""
    bound: int
    prime_indexed_primes: int
    twin_pairs: int
    prime_indexed_twin_pairs: int
    frac_prime_indexed_gaps_twin: float
    frac_twins_prime_indexed: float

    def csv_header(self) -> tuple[str, ...]:
        return ("bound", "prime_indexed_primes", "twin_pairs",
                "prime_indexed_twin_pairs", "frac_prime_indexed_gaps_twin",
                "frac_twins_prime_indexed")

    def csv_row(self) -> tuple:
        return (self.bound, self.prime_indexed_primes, self.twin_pairs,
                self.prime_indexed_twin_pairs, self.frac_prime_indexed_gaps_twin,
                self.frac_twins_prime_indexed)


def co_occurrence(bound: int, t: PrimeTable) -> CoOccurrence:
    """Fractions shared between prime-indexed gaps and twin pairs up to bound."""
    pl, twin, prime_indexed = _twin_masks(bound, t)
    twins = int(np.count_nonzero(twin))
    pip = int(np.count_nonzero(prime_indexed))
    pip_twin = int(np.count_nonzero(twin & prime_indexed))
    return CoOccurrence(
        bound=bound,
        prime_indexed_primes=pip,
        twin_pairs=twins,
        prime_indexed_twin_pairs=pip_twin,
        frac_prime_indexed_gaps_twin=pip_twin / pip if pip else float("nan"),
        frac_twins_prime_indexed=pip_twin / twins if twins else float("nan"),
    )


def q_ratio(n: int, t: PrimeTable) -> float:
    """The twin-likelihood ratio evaluated on the window [n, 2n).

    Numerator: twin-start share among prime-indexed primes in the window;
    denominator: twin-start share among all primes there. Raises when the
    window holds no prime-indexed prime or no twin start.
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if 2 * n + 1 > t.limit:
        raise RangeError(
            f"the window [n, 2n) tests twins up to {2 * n + 1}; sieve limit is {t.limit}"
        )
    lo = int(np.searchsorted(t.primes, n, side="left"))
    hi = int(np.searchsorted(t.primes, 2 * n, side="left"))
    if hi == lo:
        raise UndefinedRatioError(f"no primes in [{n}, {2 * n})")
    pw = t.primes[lo:hi]
    twin = _is_prime_vec(t, pw + 2)
    indices = np.arange(lo + 1, hi + 1, dtype=np.int64)
    prime_indexed = _is_prime_vec(t, indices)
    pip = int(np.count_nonzero(prime_indexed))
    twins = int(np.count_nonzero(twin))
    if pip == 0:
        raise UndefinedRatioError(f"no prime-indexed primes in [{n}, {2 * n})")
    if twins == 0:
        raise UndefinedRatioError(f"no twin starts in [{n}, {2 * n})")
    prob1 = int(np.count_nonzero(twin & prime_indexed)) / pip
    prob2 = twins / len(pw)
    return prob1 / prob2


def p_ratio_series(bound: int, stride: int, t: PrimeTable) -> list[tuple[int, float]]:
    """The cumulative twin-likelihood ratio P, sampled every stride.

    One pass builds running counts over the primes up to ``bound``;
    samples sit at multiples of the stride with ``bound`` appended when
    unaligned (a stride beyond the bound therefore yields the single
    sample at the bound). Samples whose ratio is undefined are skipped.
    """
    if stride < 1:
        raise DomainError(f"stride must be >= 1, got {stride}")
    pl, twin, prime_indexed = _twin_masks(bound, t)
    cum_twin = np.cumsum(twin)
    cum_pip = np.cumsum(prime_indexed)
    cum_both = np.cumsum(twin & prime_indexed)
    points = list(range(stride, bound + 1, stride))
    if not points or points[-1] != bound:
        points.append(bound)
    out: list[tuple[int, float]] = []
    for x in points:
        i = int(np.searchsorted(pl, x, side="right"))
        if i == 0:
            continue
        pip = int(cum_pip[i - 1])
        twins = int(cum_twin[i - 1])
        if pip == 0 or twins == 0:
            continue
        prob1 = int(cum_both[i - 1]) / pip
        prob2 = twins / i
        out.append((x, prob1 / prob2))
    return out
