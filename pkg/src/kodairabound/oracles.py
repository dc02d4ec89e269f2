"""Independent brute-force oracles for the counting and genus formulas.

Everything here recomputes a quantity from first principles, sharing no code
with the formula implementations it is meant to check:

* ``count_free_subgroups_bruteforce`` counts index-d subgroups of a free
  group of rank n through the classical correspondence with n-tuples of
  permutations generating a transitive action on d points, divided by
  (d-1)!.  The tuple enumeration is aggregated by orbit-partition classes
  (an exact bucketing of the same sum); ``count_free_subgroups_rawproduct``
  is the unaggregated version for cross-checking the bucketing itself.

* ``count_gl2_bruteforce`` enumerates all m-by-m matrices over F_2 and
  counts the invertible ones by Gaussian elimination on row bitmasks.

* ``count_sections_bruteforce`` counts complements of A inside A + Z^t by
  generating, for every assignment of A-parts to the free basis, the
  corresponding subgroup modulo the exponent and deduplicating through a
  Howell normal form over Z/M (the canonical echelon form for modules over
  Z/M, so equal spans collapse to equal keys).

* ``euler_char_cover_oracle`` recomputes the covered-surface genus from
  Euler characteristic multiplicativity instead of the closed formula.

* ``abelian_invariants_bruteforce`` / ``minimal_generators_bruteforce``
  recover order, exponent, and rank of a finite abelian group by element
  enumeration.

Budgets are deliberately small; out-of-budget requests raise
``OracleBudgetError`` rather than running unbounded searches.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter


class OracleBudgetError(ValueError):
    """Requested parameters exceed the oracle's enumeration budget."""


# --------------------------------------------------------------------------
# free-group subgroup counts


def _cycle_partition(perm: tuple[int, ...]) -> frozenset[frozenset[int]]:
    d = len(perm)
    seen = [False] * d
    blocks = []
    for start in range(d):
        if seen[start]:
            continue
        orbit = []
        x = start
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = perm[x]
        blocks.append(frozenset(orbit))
    return frozenset(blocks)


def _join_partitions(p, q) -> frozenset[frozenset[int]]:
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in itertools.chain(p, q):
        it = iter(block)
        first = next(it)
        parent.setdefault(first, first)
        for other in it:
            parent.setdefault(other, other)
            ra, rb = find(first), find(other)
            if ra != rb:
                parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    return frozenset(frozenset(v) for v in groups.values())


def count_free_subgroups_bruteforce(d: int, n: int) -> int:
    """Index-d subgroups of a rank-n free group by transitive-tuple counting."""
    if not 1 <= d <= 6:
        raise OracleBudgetError(f"subgroup oracle budget is 1 <= d <= 6, got d={d}")
    if not 1 <= n <= 3:
        raise OracleBudgetError(f"subgroup oracle budget is 1 <= n <= 3, got n={n}")
    perms = list(itertools.permutations(range(d)))
    single = Counter(_cycle_partition(p) for p in perms)
    dist = single
    for _ in range(n - 1):
        folded: Counter = Counter()
        for part_a, count_a in dist.items():
            for part_b, count_b in single.items():
                folded[_join_partitions(part_a, part_b)] += count_a * count_b
        dist = folded
    transitive = dist[frozenset([frozenset(range(d))])]
    count, rem = divmod(transitive, math.factorial(d - 1))
    if rem:
        raise AssertionError("transitive tuple count not divisible by (d-1)!")
    return count


def count_free_subgroups_rawproduct(d: int, n: int) -> int:
    """Same count by raw tuple enumeration (cross-check for the bucketing)."""
    if not 1 <= d <= 4 or not 1 <= n <= 3:
        raise OracleBudgetError(f"raw enumeration budget is d <= 4, n <= 3, got {d}, {n}")
    perms = list(itertools.permutations(range(d)))
    transitive = 0
    for tup in itertools.product(perms, repeat=n):
        reached = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for perm in tup:
                y = perm[x]
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
        if len(reached) == d:
            transitive += 1
    count, rem = divmod(transitive, math.factorial(d - 1))
    if rem:
        raise AssertionError("transitive tuple count not divisible by (d-1)!")
    return count


# --------------------------------------------------------------------------
# GL(m, F_2) by matrix enumeration


def count_gl2_bruteforce(m: int) -> int:
    """Number of invertible m-by-m matrices over F_2, by full enumeration."""
    if not 1 <= m <= 4:
        raise OracleBudgetError(f"GL oracle budget is 1 <= m <= 4, got {m}")
    mask = (1 << m) - 1
    count = 0
    for bits in range(1 << (m * m)):
        rows = [(bits >> (m * i)) & mask for i in range(m)]
        rank = 0
        for col in range(m):
            bit = 1 << col
            pivot = None
            for i in range(rank, m):
                if rows[i] & bit:
                    pivot = i
                    break
            if pivot is None:
                break
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for i in range(m):
                if i != rank and rows[i] & bit:
                    rows[i] ^= rows[rank]
            rank += 1
        if rank == m:
            count += 1
    return count


# --------------------------------------------------------------------------
# sections / complements via Howell canonical forms over Z/M

_SECTION_ASSIGNMENT_CAP = 1 << 15


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _unit_lift(a: int, n: int) -> int:
    # unit u mod n with u*a == gcd(a, n) (mod n)
    g = math.gcd(a, n)
    quot = n // g
    base = 1 if quot == 1 else pow(a // g, -1, quot)
    u = base
    while math.gcd(u, n) != 1:
        u += quot
    return u % n


def _howell(rows, modulus: int, width: int) -> tuple:
    """Canonical Howell basis of the span of `rows` in (Z/modulus)^width."""
    work = [tuple(x % modulus for x in r) for r in rows]
    work = [r for r in work if any(r)]
    basis = []
    for col in range(width):
        cur = None
        rest = []
        for row in work:
            if row[col] == 0:
                rest.append(row)
                continue
            if cur is None:
                cur = row
                continue
            a, b = cur[col], row[col]
            g, s, t = _xgcd(a, b)
            # unimodular combine: det [[s, t], [-b/g, a/g]] = 1, so the span
            # is preserved exactly even over Z/N with zero divisors
            comb = tuple((s * x + t * y) % modulus for x, y in zip(cur, row))
            red = tuple(((a // g) * y - (b // g) * x) % modulus for x, y in zip(cur, row))
            cur = comb
            if any(red):
                rest.append(red)
        if cur is not None:
            u = _unit_lift(cur[col], modulus)
            cur = tuple((u * x) % modulus for x in cur)
            basis.append(cur)
            ann = modulus // cur[col]
            extra = tuple((ann * x) % modulus for x in cur)
            if any(extra):
                rest.append(extra)
        work = rest
    for i in range(len(basis)):
        row = basis[i]
        col = next(c for c in range(width) if row[c])
        piv = row[col]
        for j in range(i):
            q = basis[j][col] // piv
            if q:
                basis[j] = tuple((x - q * y) % modulus for x, y in zip(basis[j], row))
    return tuple(basis)


def count_sections_bruteforce(group, rank2g: int) -> int:
    """Complements of A inside A + Z^rank2g, deduplicated by Howell forms.

    `group` may be a FiniteAbelianGroup or a bare invariant-factor sequence.
    Working modulo the exponent M is faithful: a complement is the graph of a
    homomorphism Z^t -> A, and the A-part over a fixed residue class of the
    free coordinates is constant mod M, so distinct graphs stay distinct.
    """
    factors = tuple(getattr(group, "invariant_factors", group))
    if not factors or any(d < 2 for d in factors):
        raise OracleBudgetError(f"invalid invariant factors {factors}")
    order = math.prod(factors)
    if order > 8:
        raise OracleBudgetError(f"sections oracle budget is |A| <= 8, got {order}")
    if not 0 <= rank2g <= 6:
        raise OracleBudgetError(f"sections oracle budget is rank2g <= 6, got {rank2g}")
    if order**rank2g > _SECTION_ASSIGNMENT_CAP:
        raise OracleBudgetError(
            f"sections oracle caps |A|^rank2g at {_SECTION_ASSIGNMENT_CAP}, "
            f"got {order}^{rank2g}"
        )
    if rank2g == 0:
        return 1
    modulus = math.lcm(*factors)
    k = len(factors)
    width = k + rank2g
    scale = [modulus // d for d in factors]
    elements = list(itertools.product(*[range(d) for d in factors]))
    seen = set()
    for assignment in itertools.product(elements, repeat=rank2g):
        rows = []
        for j, elem in enumerate(assignment):
            row = [scale[i] * elem[i] % modulus for i in range(k)] + [0] * rank2g
            row[k + j] = 1
            rows.append(row)
        # redundant combinations so canonicalization is genuinely exercised
        rows.append([sum(r[c] for r in rows) % modulus for c in range(width)])
        if rank2g >= 2:
            rows.append([(rows[0][c] + rows[1][c]) % modulus for c in range(width)])
        seen.add(_howell(rows, modulus, width))
    return len(seen)


# --------------------------------------------------------------------------
# covered-surface genus via Euler characteristics


def euler_char_cover_oracle(g: int, d: int) -> int:
    """Genus of a degree-d unbranched cover of a genus-g surface via chi."""
    if not 2 <= g <= 10:
        raise OracleBudgetError(f"euler oracle budget is 2 <= g <= 10, got {g}")
    if not 1 <= d <= 100:
        raise OracleBudgetError(f"euler oracle budget is 1 <= d <= 100, got {d}")
    chi = 2 - 2 * g
    chi_cover = d * chi
    if chi_cover % 2:
        raise AssertionError("cover Euler characteristic must be even")
    return (2 - chi_cover) // 2


# --------------------------------------------------------------------------
# abelian group invariants by element enumeration


def abelian_invariants_bruteforce(factors) -> dict:
    """Order, exponent, and rank of prod Z/d_i by element enumeration (order <= 64)."""
    factors = tuple(getattr(factors, "invariant_factors", factors))
    if not factors or any(d < 2 for d in factors):
        raise OracleBudgetError(f"invalid invariant factors {factors}")
    order = math.prod(factors)
    if order > 64:
        raise OracleBudgetError(f"invariant oracle budget is order <= 64, got {order}")
    elements = list(itertools.product(*[range(d) for d in factors]))

    def elem_order(e):
        cur = e
        k = 1
        while any(cur):
            cur = tuple((c + x) % d for c, x, d in zip(cur, e, factors))
            k += 1
        return k

    exponent = 1
    for e in elements:
        exponent = math.lcm(exponent, elem_order(e))

    primes = []
    rem = order
    p = 2
    while rem > 1:
        if rem % p == 0:
            primes.append(p)
            while rem % p == 0:
                rem //= p
        p += 1
    rank = 0
    for p in primes:
        image = {tuple((p * x) % d for x, d in zip(e, factors)) for e in elements}
        quot = order // len(image)
        k = 0
        while quot % p == 0:
            quot //= p
            k += 1
        if quot != 1:
            raise AssertionError("quotient by p-multiples has non-p-power size")
        rank = max(rank, k)
    return {"order": len(elements), "exponent": exponent, "rank": rank}


def minimal_generators_bruteforce(factors) -> int:
    """Smallest generating-set size by exhaustive subset search (order <= 16)."""
    factors = tuple(getattr(factors, "invariant_factors", factors))
    order = math.prod(factors)
    if order > 16:
        raise OracleBudgetError(f"generator oracle budget is order <= 16, got {order}")
    elements = list(itertools.product(*[range(d) for d in factors]))
    zero = tuple(0 for _ in factors)

    def generates(subset) -> bool:
        span = {zero}
        frontier = [zero]
        while frontier:
            cur = frontier.pop()
            for gen in subset:
                nxt = tuple((c + x) % d for c, x, d in zip(cur, gen, factors))
                if nxt not in span:
                    span.add(nxt)
                    frontier.append(nxt)
        return len(span) == order

    for size in range(len(factors) + 1):
        for subset in itertools.combinations(elements, size):
            if generates(subset):
                return size
    raise AssertionError("standard basis failed to generate")
