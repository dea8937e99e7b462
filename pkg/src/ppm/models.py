"""Deterministic prime-distribution models built on divisor sums.

All three models share the main term ``1 + 2*sum_{k<n} ceil(d(k)/2)`` and
differ in the correction added on top: none (model 1), a semiprime-count
correction using the actual primes (model 2), or its doubly-logarithmic
approximation (model 2*). Besides the sequences themselves the module
provides the classical comparison baselines and the summatory-function
machinery the main term rests on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import mpmath
import numpy as np
from scipy.integrate import quad

from .errors import DomainError, RangeError, ResourceLimitError, SequenceTooShortError
from .primes import PrimeTable

EULER_GAMMA = 0.57721566490153286
MEISSEL_MERTENS = 0.26149721
LI_ABS_TOL = 1e-6
LI_AT_2 = 1.0451637801174927  # classical li(2); shifts the integral from 2
FLOOR_TIE_EPS = 1e-9
_DIRECT_SUM_CAP = 500_000_000  # d-sieve memory guard for the direct path


class ModelKind(Enum):
    MODEL1 = "model1"
    MODEL2 = "model2"
    MODEL2_STAR = "model2star"


@dataclass(frozen=True)
class ModelSpec:
    """Which model to run, plus its variant flags and constants."""
    kind: ModelKind
    parity_floor: bool = False
    gamma: float = EULER_GAMMA

    def __post_init__(self):
        if not 0.5772 < self.gamma < 0.5773:
            raise DomainError(f"gamma must lie in (0.5772, 0.5773), got {self.gamma}")


# ---------------------------------------------------------------------------
# divisor machinery


def divisor_count(k: int) -> int:
    """Number of positive divisors of k, with d(0) = 0."""
    if k < 0:
        raise DomainError(f"divisor_count is defined for k >= 0, got {k}")
    if k == 0:
        return 0
    count = 1
    rem = k
    p = 2
    while p * p <= rem:
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            count *= e + 1
        p += 1 if p == 2 else 2
    if rem > 1:
        count *= 2
    return count


def divisor_counts_up_to(n: int) -> np.ndarray:
    """d(k) for k = 0..n as an int32 array (d(0) = 0), via a pair sieve."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    d = np.zeros(n + 1, dtype=np.int32)
    j = 1
    while j * j <= n:
        d[j * j] += 1
        if j * j + j <= n:
            d[j * j + j :: j] += 2
        j += 1
    return d


def _chs_direct(n: int) -> int:
    if n > _DIRECT_SUM_CAP:
        raise ResourceLimitError(
            f"direct divisor-sum path sieves all of 1..{n}; cap is {_DIRECT_SUM_CAP}"
        )
    d = divisor_counts_up_to(n)
    return int(np.sum(d, dtype=np.int64)) + math.isqrt(n)


def _chs_floor_sum(n: int, chunk: int = 1 << 22) -> int:
    total = 0
    k = 1
    while k <= n:
        hi = min(n + 1, k + chunk)
        ks = np.arange(k, hi, dtype=np.int64)
        total += int(np.sum(n // ks, dtype=np.int64))
        k = hi
    return total + math.isqrt(n)


def _chs_hyperbola(n: int) -> int:
    s = math.isqrt(n)
    if s == 0:
        return 0
    ks = np.arange(1, s + 1, dtype=np.int64)
    return 2 * int(np.sum(n // ks, dtype=np.int64)) - s * s + s


def _chs_blocks(n: int) -> int:
    # group k by the constant value of n // k
    total = 0
    k = 1
    while k <= n:
        q = n // k
        k_end = n // q
        total += q * (k_end - k + 1)
        k = k_end + 1
    return total + math.isqrt(n)


_CHS_METHODS = {
    "direct": _chs_direct,
    "floor_sum": _chs_floor_sum,
    "hyperbola": _chs_hyperbola,
    "blocks": _chs_blocks,
}


def ceil_half_divisor_sum(n: int, method: str = "hyperbola") -> int:
    """2 * sum_{k=1..n} ceil(d(k)/2), selectable evaluation strategy.

    The sum equals ``sum d(k) + isqrt(n)`` and also ``sum floor(n/k) +
    isqrt(n)``; the available methods evaluate it four independent ways:

    - ``direct``: sieve d(k) over 1..n and add them up (O(n) memory);
    - ``floor_sum``: literal sum of floor(n/k) over every k (O(n) time);
    - ``hyperbola``: fold the divisor hyperbola across sqrt(n) (O(sqrt n));
    - ``blocks``: group k into runs of equal quotient (O(sqrt n)).
    """
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    try:
        fn = _CHS_METHODS[method]
    except KeyError:
        raise DomainError(f"unknown method {method!r}; choose from {sorted(_CHS_METHODS)}")
    return fn(n) if n else 0


def model1_value(n: int) -> int:
    """Main-term value at index n: 1 + 2*sum_{k<=n-1} ceil(d(k)/2); n=1 gives 2."""
    if n < 1:
        raise DomainError(f"indices start at 1, got {n}")
    if n == 1:
        return 2
    return 1 + ceil_half_divisor_sum(n - 1)


# ---------------------------------------------------------------------------
# correction terms


def _epsilon2_exact(pi2: int, n: int, gamma: float) -> int:
    # exact nearest-integer via rationals; gamma enters as its binary value
    arg = Fraction(pi2) - 2 * Fraction(gamma) * (n - 1)
    return math.floor(arg + Fraction(1, 2))


def _epsilon2star_exact(n: int, gamma: float) -> int:
    with mpmath.workdps(40):
        x = mpmath.mpf(n - 1)
        arg = x * (mpmath.log(mpmath.log(x)) - 2 * mpmath.mpf(gamma))
        return int(mpmath.floor(arg))


def epsilon_model2(n: int, t: PrimeTable, gamma: float = EULER_GAMMA) -> int:
    """Semiprime-count correction at index n, never negative.

    The correction is the integer nearest to ``pi_2(p_{n-1}) - 2*gamma*(n-1)``
    (halves round up), clamped at zero. It uses the actual primes, not the
    modeled sequence. Arguments within 1e-9 of the rounding boundary are
    re-evaluated in exact rational arithmetic.
    """
    if n < 2:
        raise DomainError(f"the correction is defined for n >= 2, got {n}")
    p_prev = t.nth_prime(n - 1)
    pi2 = t.pi_k(2, p_prev)
    arg = pi2 - 2.0 * gamma * (n - 1)
    if abs(arg - (math.floor(arg) + 0.5)) < FLOOR_TIE_EPS:
        e = _epsilon2_exact(pi2, n, gamma)
    else:
        e = math.floor(arg + 0.5)
    return max(0, e)


def epsilon_model2star(n: int, gamma: float = EULER_GAMMA) -> int:
    """Asymptotic correction floor((n-1)(loglog(n-1) - 2*gamma)), never negative.

    Natural logarithms throughout. Arguments within 1e-9 of an integer are
    re-evaluated at 40 decimal digits before taking the floor.
    """
    if n < 3:
        raise DomainError(f"loglog needs n - 1 >= 2, got n = {n}")
    arg = (n - 1) * (math.log(math.log(n - 1)) - 2.0 * gamma)
    if abs(arg - round(arg)) < FLOOR_TIE_EPS:
        e = _epsilon2star_exact(n, gamma)
    else:
        e = math.floor(arg)
    return max(0, e)


# ---------------------------------------------------------------------------
# sequence construction


@dataclass
class ModeledSequence:
    """Modeled values p-hat_1..p-hat_{n_max} for one ModelSpec.

    ``values[n]`` holds the n-th modeled value (index 0 is unused),
    ``epsilons[n]`` the correction that went into it. ``flagged``
    records indices whose correction argument sat within 1e-9 of a floor
    discontinuity and was resolved in extended precision.
    """
    spec: ModelSpec
    n_max: int
    values: np.ndarray
    epsilons: np.ndarray
    flagged: tuple[int, ...] = ()

    def __post_init__(self):
        self.values.setflags(write=False)
        self.epsilons.setflags(write=False)

    def value(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise RangeError(f"index {n} outside the built range 1..{self.n_max}")
        return int(self.values[n])

    def epsilon(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise RangeError(f"index {n} outside the built range 1..{self.n_max}")
        return int(self.epsilons[n])

    def pi_estimate(self, x: int) -> int:
        """Count indices n with value <= x; every index counts."""
        if int(self.values[self.n_max]) <= x:
            raise SequenceTooShortError(
                f"last modeled value {int(self.values[self.n_max])} <= {x}; "
                f"rebuild with a larger n_max"
            )
        return int(np.count_nonzero(self.values[1:] <= x))

    def gap(self, n: int) -> int:
        if not 1 <= n < self.n_max:
            raise RangeError(f"gap at {n} needs indices {n} and {n + 1} <= {self.n_max}")
        return int(self.values[n + 1] - self.values[n])

    def decreasing_indices(self) -> tuple[int, ...]:
        """Indices n with value(n+1) < value(n); reported, never asserted away."""
        drops = np.flatnonzero(np.diff(self.values[1:]) < 0) + 1
        return tuple(int(i) for i in drops)

    def csv_rows(self, t: PrimeTable | None = None) -> list[tuple]:
        rows = []
        for n in range(1, self.n_max + 1):
            v = int(self.values[n])
            if t is not None and n <= t.prime_count:
                actual = t.nth_prime(n)
                rel = abs(v - actual) / actual
                rows.append((n, v, actual, int(self.epsilons[n]), rel))
            else:
                rows.append((n, v, "", int(self.epsilons[n]), ""))
        return rows


SEQUENCE_CSV_HEADER = ("n", "p_hat", "p_actual", "epsilon", "relative_error")


def _main_terms(n_max: int) -> np.ndarray:
    """values[n] = 1 + 2*sum_{k<=n-1} ceil(d(k)/2) for n >= 2; values[1] = 2."""
    vals = np.zeros(n_max + 1, dtype=np.int64)
    vals[1] = 2
    if n_max < 2:
        return vals
    top = n_max - 1
    steps = divisor_counts_up_to(top).astype(np.int64)
    squares = np.arange(1, math.isqrt(top) + 1, dtype=np.int64) ** 2
    steps[squares] += 1  # 2*ceil(d/2) = d(k) + [k is a square]
    vals[2:] = 1 + np.cumsum(steps[1:])
    return vals


def model_sequence(spec: ModelSpec, n_max: int, t: PrimeTable | None = None) -> ModeledSequence:
    """Build the modeled sequence for one ModelSpec.

    The main term is accumulated from a divisor sieve over 1..n_max-1,
    so the whole build is O(n_max log n_max). Model 2 needs a PrimeTable
    holding the first n_max - 1 primes for its correction; the other
    models ignore ``t``. With ``parity_floor`` set, odd corrections are
    raised by one so every value from index 2 on is odd.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    main = _main_terms(n_max)
    eps = np.zeros(n_max + 1, dtype=np.int64)
    flagged: list[int] = []

    if spec.kind is ModelKind.MODEL2 and n_max >= 2:
        if t is None:
            raise DomainError("model 2 needs a PrimeTable for its correction term")
        if t.prime_count < n_max - 1:
            raise RangeError(
                f"model 2 at n_max={n_max} needs the first {n_max - 1} primes; "
                f"the table holds {t.prime_count} (sieve to ~{prime_upper_bound(n_max - 1)})"
            )
        prev = t.primes[: n_max - 1]  # p_1 .. p_{n_max-1} for n = 2..n_max
        pi2_prefix = t.pi_k_prefix(2)
        pi2 = pi2_prefix[prev].astype(np.float64)
        arg = pi2 - 2.0 * spec.gamma * np.arange(1, n_max, dtype=np.float64)
        e = np.floor(arg + 0.5).astype(np.int64)
        near = np.abs(arg - (np.floor(arg) + 0.5)) < FLOOR_TIE_EPS
        for i in np.flatnonzero(near):
            n = int(i) + 2
            e[i] = _epsilon2_exact(int(pi2_prefix[prev[i]]), n, spec.gamma)
            flagged.append(n)
        eps[2:] = np.maximum(e, 0)
    elif spec.kind is ModelKind.MODEL2_STAR and n_max >= 3:
        x = np.arange(2, n_max, dtype=np.float64)  # n - 1 for n = 3..n_max
        arg = x * (np.log(np.log(x)) - 2.0 * spec.gamma)
        e = np.floor(arg).astype(np.int64)
        near = np.abs(arg - np.rint(arg)) < FLOOR_TIE_EPS
        for i in np.flatnonzero(near):
            n = int(i) + 3
            e[i] = _epsilon2star_exact(n, spec.gamma)
            flagged.append(n)
        eps[3:] = np.maximum(e, 0)

    if spec.parity_floor:
        eps += eps & 1  # odd corrections move up; main term is odd for n >= 2

    values = main + eps
    if spec.kind is ModelKind.MODEL2_STAR and n_max >= 2:
        values[2] = 3  # fixed initial value
    return ModeledSequence(spec, n_max, values, eps, tuple(flagged))


def modeled_gap(spec: ModelSpec, n: int, t: PrimeTable | None = None) -> int:
    """Modeled gap value(n+1) - value(n); equals 2*ceil(d(n)/2) for model 1, n >= 2."""
    if n < 1:
        raise DomainError(f"gap index must be >= 1, got {n}")
    seq = model_sequence(spec, n + 1, t)
    return seq.gap(n)


# ---------------------------------------------------------------------------
# baselines and analysis helpers


@dataclass(frozen=True)
class BaselineEstimates:
    pnt: float
    li: float


def baseline_estimates(x: float) -> BaselineEstimates:
    """x/log x and the classical logarithmic integral li(x).

    The integral part from 2 to x is evaluated by adaptive quadrature to
    1e-6 absolute tolerance; adding the constant li(2) then yields the
    classical li, which is what published prime-count comparison tables
    use for this column.
    """
    if x < 2:
        raise DomainError(f"baselines are defined for x >= 2, got {x}")
    tail, _err = quad(lambda u: 1.0 / math.log(u), 2.0, float(x),
                      epsabs=LI_ABS_TOL, limit=200)
    return BaselineEstimates(pnt=float(x) / math.log(x), li=tail + LI_AT_2)


def landau_pik_approx(k: int, x: float) -> float:
    """x * (loglog x)**(k-1) / (log x * (k-1)!), the k-almost-prime estimate."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if x <= math.e:
        raise DomainError(f"need x > e so loglog x is positive, got {x}")
    return x * math.log(math.log(x)) ** (k - 1) / (math.log(x) * math.factorial(k - 1))


def tenenbaum_semiprime_gap(n: int) -> float:
    """Leading-constant drift C0 * n of the semiprime count past n*loglog n."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    return MEISSEL_MERTENS * n


def relative_error_series(spec: ModelSpec, n_max: int, t: PrimeTable,
                          stride: int) -> list[tuple[int, float]]:
    """(n, |value(n) - p_n| / p_n) at every stride-th index.

    Samples sit at multiples of the stride; n_max itself is appended when
    it is not already a sample point.
    """
    if stride < 1:
        raise DomainError(f"stride must be >= 1, got {stride}")
    if t.prime_count < n_max:
        raise RangeError(
            f"need the first {n_max} primes for actual values; the table holds "
            f"{t.prime_count} (sieve to ~{prime_upper_bound(n_max)})"
        )
    seq = model_sequence(spec, n_max, t)
    points = list(range(stride, n_max + 1, stride))
    if not points or points[-1] != n_max:
        points.append(n_max)
    out = []
    for n in points:
        actual = t.nth_prime(n)
        out.append((n, abs(seq.value(n) - actual) / actual))
    return out


# ---------------------------------------------------------------------------
# pi estimates and the ordering check


def pi_upper_hint(x: int) -> int:
    """Heuristic index bound: enough sequence terms to pass the value x."""
    if x < 10:
        return 16
    return int(1.35 * x / math.log(x)) + 64


def prime_upper_bound(n: int) -> int:
    """An upper bound for the n-th prime (exact theorem bound for n >= 6)."""
    if n < 6:
        return 14
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1


def estimate_pi(spec: ModelSpec, x: int, t: PrimeTable | None = None) -> int:
    """Model estimate of the prime count up to x, sizing the sequence itself."""
    if x < 1:
        raise DomainError(f"need x >= 1, got {x}")
    n_max = pi_upper_hint(x)
    while True:
        seq = model_sequence(spec, n_max, t)
        try:
            return seq.pi_estimate(x)
        except SequenceTooShortError:
            n_max *= 2


@dataclass(frozen=True)
class ConjectureOrderingReport:
    """Truth values of the estimate ordering chain at one checkpoint."""
    x: int
    pi_exact: int
    model1: int
    model2: int
    model2_star: int

    @property
    def model2_le_exact(self) -> bool:
        return self.model2 <= self.pi_exact

    @property
    def exact_le_star(self) -> bool:
        return self.pi_exact <= self.model2_star

    @property
    def star_le_model1(self) -> bool:
        return self.model2_star <= self.model1

    @property
    def all_hold(self) -> bool:
        return self.model2_le_exact and self.exact_le_star and self.star_le_model1


def conjecture_ordering_check(x: int, t: PrimeTable) -> ConjectureOrderingReport:
    """Evaluate model2 <= pi(x) <= model2* <= model1 and report each comparison.

    This is a check, not an assertion: the ordering is only claimed in
    the limit, so callers decide what to do with violations.
    """
    return ConjectureOrderingReport(
        x=x,
        pi_exact=t.pi(x),
        model1=estimate_pi(ModelSpec(ModelKind.MODEL1), x),
        model2=estimate_pi(ModelSpec(ModelKind.MODEL2), x, t),
        model2_star=estimate_pi(ModelSpec(ModelKind.MODEL2_STAR), x),
    )
