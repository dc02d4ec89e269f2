"""Exact counts and upper bounds for the combinatorial factors.

Three families of quantities enter the degree bounds:

* the number N(d, n) of index-d subgroups of a free group of rank n,
  computed exactly by M. Hall's recursion
      N(d, n) = d*(d!)^(n-1) - sum_{i=1}^{d-1} ((d-i)!)^(n-1) * N(i, n),
  together with the coarse bound d*(d!)^(n-1);

* the order of GL(m, F_2) = Aut((Z/2)^m), the automorphism group of an
  elementary abelian 2-group of rank m,
      |GL(m, F_2)| = prod_{i=1}^{m} (2^m - 2^(i-1)),
  computed exactly while m^2 bits fit the budget and bounded by 2^(m^2)
  beyond it (every factor is < 2^m);

* the number of complements/splittings counted by homomorphisms from a free
  abelian group of rank 2g into A, which is at most |A|^(2g).

A related product that appears written with the *order* of the group as the
number of factors, prod_{i=1}^{q} (q - 2^(i-1)) with q = 2^m, is zero at
i = m+1 and negative past it; ``literal_out_product_report`` documents that
degenerate reading (its positive prefix is exactly |GL(m, F_2)|) and refuses
to evaluate it as a count.
"""

from __future__ import annotations

import math
import threading

import gmpy2

from .bignum import (
    BoundValue,
    DomainError,
    bit_budget,
    bv_factorial,
    bv_log2_upper,
    bv_mul,
    bv_pow,
    format_fraction_up,
)
from .groups import FiniteAbelianGroup

_out_order_memo: dict[tuple[int, int], BoundValue] = {}
_out_order_lock = threading.Lock()


def hall_count(d: int, n: int) -> BoundValue:
    """Exact number of index-d subgroups of a free group of rank n."""
    if d < 1:
        raise DomainError(f"index must be >= 1, got {d}")
    if n < 1:
        raise DomainError(f"free rank must be >= 1, got {n}")
    counts = [0] * (d + 1)
    for k in range(1, d + 1):
        total = k * math.factorial(k) ** (n - 1)
        for i in range(1, k):
            total -= math.factorial(k - i) ** (n - 1) * counts[i]
        counts[k] = total
    if counts[d] < 1:
        raise AssertionError(f"subgroup count recursion went nonpositive at d={d}, n={n}")
    return BoundValue.exact(counts[d])


def hall_upper(d: int, n: int) -> BoundValue:
    """Upper bound d*(d!)^(n-1) on the index-d subgroup count."""
    if d < 1:
        raise DomainError(f"index must be >= 1, got {d}")
    if n < 1:
        raise DomainError(f"free rank must be >= 1, got {n}")
    return bv_mul(d, bv_pow(bv_factorial(d), n - 1))


def out_order_elementary_2(m: int) -> BoundValue:
    """|GL(m, F_2)|: exact product while m^2 bits fit the budget, else 2^(m^2).

    This is the order of the outer automorphism group of (Z/2)^m (the group
    is abelian, so Out = Aut).  Results are memoized per (budget, m).
    """
    if m < 0:
        raise DomainError(f"rank must be >= 0, got {m}")
    if m == 0:
        return BoundValue.exact(1)
    budget = bit_budget()
    key = (budget, m)
    hit = _out_order_memo.get(key)
    if hit is not None:
        return hit
    if m * m <= budget:
        factors = [gmpy2.mpz((1 << m) - (1 << (i - 1))) for i in range(1, m + 1)]
        while len(factors) > 1:
            nxt = [factors[i] * factors[i + 1] for i in range(0, len(factors) - 1, 2)]
            if len(factors) % 2:
                nxt.append(factors[-1])
            factors = nxt
        result = BoundValue.exact(int(factors[0]))
    else:
        result = BoundValue.tower(1, m * m)
    with _out_order_lock:
        _out_order_memo.setdefault(key, result)
    return result


def complement_count_bound(group: FiniteAbelianGroup, rank2g: int) -> BoundValue:
    """Bound |A|^rank2g on splittings: one image per free generator."""
    if rank2g < 0:
        raise DomainError(f"free rank must be >= 0, got {rank2g}")
    return bv_pow(group.order, rank2g)


def literal_out_product_report(rank: int) -> dict:
    """Analyze prod_{i=1}^{q}(q - 2^(i-1)) with q = 2^rank factors, without evaluating.

    The product over the group *order* rather than its rank hits a zero
    factor at i = rank+1 and negative factors after; only the prefix of the
    first `rank` factors is positive, and that prefix equals |GL(rank, F_2)|.
    Exact evaluation is refused.
    """
    if rank < 1:
        raise DomainError(f"rank must be >= 1, got {rank}")
    q = bv_pow(2, rank)
    prefix = out_order_elementary_2(rank)
    return {
        "order": q.to_json(),
        "rank": rank,
        "factor_count": q.to_json(),
        "positive_factors": rank,
        "zero_factor_index": rank + 1,
        "negative_factors_from": rank + 2,
        "positive_prefix_product": prefix.to_json(),
        "positive_prefix_log2_upper": format_fraction_up(bv_log2_upper(prefix)),
        "exact_evaluation": (
            "refused: the literal product over all 2^rank indices contains a zero "
            "factor at i = rank+1 and negative factors beyond; the evaluating form "
            "uses the rank as the number of factors"
        ),
    }
