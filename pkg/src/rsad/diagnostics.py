"""Empirical probes: exact sums against their asymptotic main terms.

Each probe returns a ProbeRow pairing an exactly computed quantity with
its closed-form main term, the ratio of the two, and the deviation scaled
by the expected size of the error term.  A bounded err_normalized across a
grid is the empirical signature that the error term has the right shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic
from .counting import (
    Ratio,
    TableTooSmallError,
    _pi_many,
    _pi_scaled_sum,
    _split_indices,
    count_identity,
)
from .primes import PrimeTable


class IdentityViolationError(Exception):
    """An exact summation identity failed; the prime table is corrupt."""


@dataclass(frozen=True)
class ProbeRow:
    scale: int  # the z or x the probe was run at
    r: Ratio
    exact: float  # exact sum (integral-valued probes store an int)
    main_term: float
    ratio: float  # exact / main_term; 1.0 when both are zero
    err_normalized: float  # |exact - main_term| / expected error size


def _ratio_of(exact: float, main_term: float) -> float:
    if main_term == 0.0:
        return 1.0 if exact == 0 else math.inf
    return exact / main_term


def sum_pi_p(table: PrimeTable, z: int) -> int:
    """sum_{p<=z} pi(p), asserting the closed form pi(z)*(pi(z)+1)/2.

    As p walks the primes up to z, pi(p) walks 1..pi(z), so the sum is a
    triangular number.  The summation here issues a real pi query per
    prime; disagreement with the closed form means the table is corrupt
    and raises IdentityViolationError.
    """
    k = table.prime_count(z)
    total = _pi_many(table, table.primes[:k])
    expected = k * (k + 1) // 2
    if total != expected:
        raise IdentityViolationError(
            f"sum of pi(p) for p <= {z} gave {total}, closed form {expected}"
        )
    return total


def probe_pi_rp(table: PrimeTable, z: int, r: Ratio) -> ProbeRow:
    """Exact sum_{p<=z} pi(floor(r*p)) against r*z^2/(2*log(z)^2).

    err_normalized scales the deviation by r*log(e*r)*z^2/log(z)^3.
    Requires floor(r*z) <= table.limit.
    """
    if z < 2:
        raise ValueError(f"probe requires z >= 2, got {z}")
    need = r.floor_mul(z)
    if table.limit < need:
        raise TableTooSmallError(need, table.limit)
    k = table.prime_count(z)
    exact = _pi_scaled_sum(table, table.primes[:k], r)
    main = analytic.pi_rp_sum_main(z, r)
    rf = r.num / r.den
    zf = float(z)
    err_scale = rf * (1.0 + r.log()) * zf * zf / math.log(zf) ** 3
    return ProbeRow(
        scale=z,
        r=r,
        exact=exact,
        main_term=main,
        ratio=_ratio_of(exact, main),
        err_normalized=abs(exact - main) / err_scale,
    )


def probe_band_pi(table: PrimeTable, x: int, r: Ratio) -> ProbeRow:
    """Exact sum of pi(floor(x/p)) over sqrt(x/r) < p <= sqrt(x).

    This is the s3 sum of the identity counter.  Its main term is the
    full count's main term 2*x*log(r)/log(x)^2; err_normalized scales by
    x*log(e*r)^2/log(x)^3.  Requires r <= sqrt(x) (exactly:
    num^2 <= x*den^2) and table.limit >= floor(sqrt(r*x)).
    """
    if x < 2:
        raise ValueError(f"probe requires x >= 2, got {x}")
    if r.num * r.num > x * r.den * r.den:
        raise ValueError(f"probe requires r <= sqrt(x), got r={r}, x={x}")
    need = math.isqrt(r.num * x // r.den)
    if table.limit < need:
        raise TableTooSmallError(need, table.limit)
    k1, k2 = _split_indices(table, x, r)
    band = table.primes[k2:k1]
    exact = _pi_many(table, np.uint64(x) // band) if band.size else 0
    main = analytic.rsa_count_estimate(x, r)
    xf = float(x)
    err_scale = xf * (1.0 + r.log()) ** 2 / math.log(xf) ** 3
    return ProbeRow(
        scale=x,
        r=r,
        exact=exact,
        main_term=main,
        ratio=_ratio_of(exact, main),
        err_normalized=abs(exact - main) / err_scale,
    )


def band_recip_sum(table: PrimeTable, x: int, r: Ratio) -> float:
    """Exact sum of 1/p over sqrt(x/r) < p <= sqrt(x).

    Comparable against analytic.band_recip_estimate(x, r); same domain
    checks as probe_band_pi.
    """
    if x < 2:
        raise ValueError(f"band_recip_sum requires x >= 2, got {x}")
    if r.num * r.num > x * r.den * r.den:
        raise ValueError(f"band_recip_sum requires r <= sqrt(x), got r={r}, x={x}")
    if table.limit < math.isqrt(x):
        raise TableTooSmallError(math.isqrt(x), table.limit)
    k1, k2 = _split_indices(table, x, r)
    band = table.primes[k2:k1]
    if band.size == 0:
        return 0.0
    return math.fsum((1.0 / band.astype(np.float64)).tolist())


def convergence_table(
    table: PrimeTable, x_values: list[int], r: Ratio
) -> list[ProbeRow]:
    """One row per x: exact C_r(x) against the 2*x*log(r)/log(x)^2 estimate.

    err_normalized divides the deviation by r*log(e*r)*x/log(x)^3, the
    expected error size; the ratio column approaching 1 along a growing
    grid is the convergence the estimate asserts.
    """
    rows = []
    rf = r.num / r.den
    for x in x_values:
        if x < 2:
            raise ValueError(f"convergence_table requires x >= 2, got {x}")
        exact = count_identity(table, x, r).total
        main = analytic.rsa_count_estimate(x, r)
        xf = float(x)
        err_scale = rf * (1.0 + r.log()) * xf / math.log(xf) ** 3
        rows.append(
            ProbeRow(
                scale=x,
                r=r,
                exact=exact,
                main_term=main,
                ratio=_ratio_of(exact, main),
                err_normalized=abs(exact - main) / err_scale,
            )
        )
    return rows
