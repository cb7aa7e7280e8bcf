"""Exact counting of RSA integers, by enumeration and by identity.

An RSA integer for the bound r >= 1 is a semiprime n = p*q with
p < q <= r*p.  C_r(x) counts them up to x.  Two independent routes are
implemented:

  * count_brute: walk primes p <= sqrt(x) and count admissible cofactors
    q in (p, min(r*p, x/p)] directly on the prime table.
  * count_identity: the prime-counting decomposition

        C_r(x) = -sum_{p<=sqrt(x)} pi(p)
                 + sum_{p<=sqrt(x/r)} pi(r*p)
                 + sum_{sqrt(x/r) < p <= sqrt(x)} pi(x/p)

    whose three partial sums are reported as (s1, s2, s3).

All boundary tests are integer-exact: r is an exact rational num/den, the
range split p <= sqrt(x/r) is decided as p^2*num <= x*den, and pi(r*p),
pi(x/p) mean pi at the floored argument.  Python integers make every
intermediate product exact regardless of width.  The cofactor bound is
inclusive (q <= r*p counts q = r*p when that value is a prime), which only
matters when r*p lands exactly on an integer.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .primes import U64_MAX, PrimeTable

DEFAULT_BRUTE_BUDGET = 10**8

# int64 is safe for scaled-prime arithmetic only below this product bound
_NP_SAFE = 2**62


class TableTooSmallError(Exception):
    """The prime table cannot answer a pi query this count needs."""

    def __init__(self, required: int, limit: int):
        self.required = required
        self.limit = limit
        super().__init__(
            f"prime table limit {limit} too small; need at least {required}"
        )


class BruteBudgetError(Exception):
    """x exceeds the configured brute-force budget."""


@dataclass(frozen=True)
class Ratio:
    """The bound r as an exact rational num/den >= 1, in lowest terms.

    Keeps every comparison against primes integer-exact: q <= r*p is
    evaluated as q*den <= num*p, never in floating point.
    """

    num: int
    den: int = 1

    def __post_init__(self):
        if not isinstance(self.num, int) or not isinstance(self.den, int):
            raise ValueError(f"ratio parts must be integers, got {self.num!r}/{self.den!r}")
        if self.den < 1:
            raise ValueError(f"ratio denominator must be >= 1, got {self.den}")
        if self.num < self.den:
            raise ValueError(f"ratio must be >= 1, got {self.num}/{self.den}")
        if self.num > U64_MAX or self.den > U64_MAX:
            raise ValueError("ratio parts must fit in 64 bits")
        g = math.gcd(self.num, self.den)
        if g > 1:
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def parse(cls, text: str) -> "Ratio":
        """Parse "2", "1.5", or "3/2" into an exact ratio >= 1."""
        s = text.strip()
        try:
            if "/" in s:
                a, b = s.split("/")
                return cls(int(a), int(b))
            if "." in s:
                whole, frac = s.split(".")
                scale = 10 ** len(frac)
                return cls(int(whole or "0") * scale + int(frac or "0"), scale)
            return cls(int(s))
        except ValueError as exc:
            raise ValueError(f"cannot parse ratio {text!r}: {exc}") from exc

    def floor_mul(self, n: int) -> int:
        """floor(r * n), exact."""
        return self.num * n // self.den

    def log(self) -> float:
        """log(num/den), stable for full-width parts."""
        return math.log(self.num) - math.log(self.den)

    def __float__(self) -> float:
        return self.num / self.den

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"

    def __mul__(self, other: "Ratio") -> "Ratio":
        return Ratio(self.num * other.num, self.den * other.den)

    def __le__(self, other: "Ratio") -> bool:
        return self.num * other.den <= other.num * self.den

    def __lt__(self, other: "Ratio") -> bool:
        return self.num * other.den < other.num * self.den


@dataclass(frozen=True)
class Decomposition:
    """The three partial sums of the identity counter and their total."""

    s1: int  # sum of pi(p) over p <= sqrt(x)
    s2: int  # sum of pi(floor(r*p)) over p <= sqrt(x/r)
    s3: int  # sum of pi(floor(x/p)) over sqrt(x/r) < p <= sqrt(x)
    total: int

    def __post_init__(self):
        if self.total != self.s2 + self.s3 - self.s1:
            raise ValueError("decomposition total does not match s2 + s3 - s1")


@dataclass(frozen=True)
class CountReport:
    """One (x, r) evaluation: exact count, estimate, errors, timing."""

    x: int
    r: Ratio
    exact: int
    estimate: float
    abs_error: float
    rel_error: float
    method: str  # "brute" or "identity"
    elapsed: float


def _validate_x(x: int) -> None:
    if not isinstance(x, int) or isinstance(x, bool):
        raise ValueError(f"x must be an integer, got {x!r}")
    if x < 0 or x > U64_MAX:
        raise ValueError(f"x must be in [0, 2^64), got {x}")


def _required_limit(x: int, r: Ratio) -> int:
    """floor(sqrt(r*x)), the largest pi argument either counter can issue."""
    return math.isqrt(r.num * x // r.den)


def _split_indices(table: PrimeTable, x: int, r: Ratio) -> tuple[int, int]:
    """(k1, k2): counts of primes <= sqrt(x) and <= sqrt(x/r).

    Both square-root bounds are taken with integer arithmetic only:
    p <= sqrt(x) iff p <= isqrt(x), and p <= sqrt(x/r) iff
    p^2 * num <= x * den iff p <= isqrt(x*den // num).
    """
    k1 = table.prime_count(math.isqrt(x))
    k2 = table.prime_count(math.isqrt(x * r.den // r.num))
    return k1, k2


def _pi_many(table: PrimeTable, values: np.ndarray) -> int:
    """Sum of pi over an array of query values already <= table.limit."""
    if values.size == 0:
        return 0
    return int(np.searchsorted(table.primes, values, side="right").sum(dtype=np.int64))


def _pi_scaled_sum(table: PrimeTable, ps: np.ndarray, r: Ratio) -> int:
    """sum of pi(floor(r*p)) over the prime slice ps."""
    if ps.size == 0:
        return 0
    if r.num * int(ps[-1]) < _NP_SAFE:
        targets = ps * np.uint64(r.num) // np.uint64(r.den)
        return _pi_many(table, targets)
    return sum(table.prime_count(r.floor_mul(int(p))) for p in ps)


def cofactor_count(table: PrimeTable, p: int, x: int, r: Ratio) -> int:
    """Number of primes q with p < q <= min(r*p, x/p), for prime p.

    Piecewise in p: pi(floor(r*p)) - pi(p) while p <= sqrt(x/r), then
    pi(floor(x/p)) - pi(p) up to sqrt(x), then 0.
    """
    _validate_x(x)
    if p > table.limit:
        raise TableTooSmallError(p, table.limit)
    if not table.is_prime(p):
        raise ValueError(f"cofactor_count requires a prime p, got {p}")
    if p * p > x:
        return 0
    if p * p * r.num <= x * r.den:
        hi = r.floor_mul(p)
    else:
        hi = x // p
    if hi > table.limit:
        raise TableTooSmallError(hi, table.limit)
    return table.prime_count(hi) - table.prime_count(p)


def count_brute(
    x: int,
    r: Ratio,
    table: PrimeTable,
    budget: int = DEFAULT_BRUTE_BUDGET,
) -> int:
    """C_r(x) by direct pair enumeration over the prime table.

    Outer loop over primes p <= sqrt(x); the admissible q sit in
    (p, min(r*p, x/p)] and are located by binary search.  Both bounds are
    exact: q <= floor(r*p) iff q*den <= num*p, and q <= floor(x/p) iff
    p*q <= x.  Never touches the identity's partial sums, so it serves as
    the independent oracle for count_identity.
    """
    _validate_x(x)
    if x > budget:
        raise BruteBudgetError(f"x={x} exceeds brute-force budget {budget}")
    need = _required_limit(x, r)
    if table.limit < need:
        raise TableTooSmallError(need, table.limit)
    primes = table.primes
    total = 0
    for i in range(table.prime_count(math.isqrt(x))):
        p = int(primes[i])
        hi = min(r.floor_mul(p), x // p)
        if hi <= p:
            continue
        j = int(np.searchsorted(primes, np.uint64(hi), side="right"))
        total += j - (i + 1)
    return total


def brute_counts_upto(
    table: PrimeTable,
    max_x: int,
    r: Ratio,
    budget: int = DEFAULT_BRUTE_BUDGET,
) -> np.ndarray:
    """Incremental-sweep form of the brute counter.

    Materializes every product p*q <= max_x with p < q <= r*p, sorts them,
    and returns counts[n] = C_r(n) for all 0 <= n <= max_x.  Same
    enumeration as count_brute, amortized over a whole sweep.
    """
    _validate_x(max_x)
    if max_x > budget:
        raise BruteBudgetError(f"max_x={max_x} exceeds brute-force budget {budget}")
    need = _required_limit(max_x, r)
    if table.limit < need:
        raise TableTooSmallError(need, table.limit)
    primes = table.primes
    pieces = []
    for i in range(table.prime_count(math.isqrt(max_x))):
        p = int(primes[i])
        hi = min(r.floor_mul(p), max_x // p)
        if hi <= p:
            continue
        j = int(np.searchsorted(primes, np.uint64(hi), side="right"))
        if j > i + 1:
            pieces.append(primes[i + 1 : j] * np.uint64(p))
    if pieces:
        products = np.sort(np.concatenate(pieces))
    else:
        products = np.empty(0, dtype=np.uint64)
    grid = np.arange(max_x + 1, dtype=np.uint64)
    return np.searchsorted(products, grid, side="right").astype(np.int64)


def count_identity(table: PrimeTable, x: int, r: Ratio) -> Decomposition:
    """C_r(x) via the decomposition into three pi sums.

    s1 sums pi(p) over p <= sqrt(x); on the table's own primes pi runs
    over 1..k1, so s1 = k1*(k1+1)/2 (the summation identity checked
    independently by diagnostics.sum_pi_p).  s2 and s3 issue real pi
    queries at floor(r*p) and floor(x/p).  Requires
    table.limit >= floor(sqrt(r*x)).
    """
    _validate_x(x)
    need = _required_limit(x, r)
    if table.limit < need:
        raise TableTooSmallError(need, table.limit)
    k1, k2 = _split_indices(table, x, r)
    s1 = k1 * (k1 + 1) // 2
    s2 = _pi_scaled_sum(table, table.primes[:k2], r)
    band = table.primes[k2:k1]
    if band.size:
        s3 = _pi_many(table, np.uint64(x) // band)
    else:
        s3 = 0
    return Decomposition(s1=s1, s2=s2, s3=s3, total=s2 + s3 - s1)


def count_pi2(table: PrimeTable, x: int) -> int:
    """pi_2(x): squarefree semiprimes p*q <= x with p < q.

    Evaluates sum_{p<=sqrt(x)} (pi(x/p) - pi(p)); the largest query is
    pi(x/2), so the table must reach floor(x/2) once x >= 4.
    """
    _validate_x(x)
    if x >= 4 and table.limit < x // 2:
        raise TableTooSmallError(x // 2, table.limit)
    k = table.prime_count(math.isqrt(x))
    if k == 0:
        return 0
    ps = table.primes[:k]
    return _pi_many(table, np.uint64(x) // ps) - k * (k + 1) // 2


def count_report(
    table: PrimeTable,
    x: int,
    r: Ratio,
    method: str = "identity",
    budget: int = DEFAULT_BRUTE_BUDGET,
) -> CountReport:
    """Run one counter, time it, and attach the asymptotic estimate."""
    from .analytic import rsa_count_estimate

    t0 = time.perf_counter()
    if method == "identity":
        exact = count_identity(table, x, r).total
    elif method == "brute":
        exact = count_brute(x, r, table, budget=budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    elapsed = time.perf_counter() - t0
    estimate = rsa_count_estimate(x, r) if x >= 2 else 0.0
    abs_error = abs(exact - estimate)
    return CountReport(
        x=x,
        r=r,
        exact=exact,
        estimate=estimate,
        abs_error=abs_error,
        rel_error=abs_error / max(exact, 1),
        method=method,
        elapsed=elapsed,
    )
