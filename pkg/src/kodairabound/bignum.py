"""Budgeted exact integers with rigorous power-tower overflow.

Every quantity in this package is a nonnegative upper bound, and the bounds
grow fast enough (iterated exponentials) that plain integers stop being a
usable representation.  A ``BoundValue`` is one of

* ``Exact(n)``     -- an arbitrary-precision integer whose bit length fits the
  active *bit budget* (a thread-local cap, default ``2**20`` bits);
* ``Tower(k, m)``  -- the real number ``2^2^...^m`` with ``k`` twos, where the
  top magnitude ``m`` is a nonnegative rational with denominator dividing
  ``2**32`` (one *granule* = ``2**-32``); levels run 1..4;
* ``beyond``       -- a saturated marker for anything past a level-4 tower.

All rounding is UP: an operation on upper bounds returns an upper bound on
the true product/power/sum, never an approximation.  Directed rounding for
the transcendental steps (log2, exp2) comes from MPFR via gmpy2, with the
result snapped outward to the granule grid.  Exact arithmetic escalates to a
tower only when a result would overflow the budget, and towers renormalize
downward (eventually to ``Exact``) whenever their full expansion fits.

Values are immutable and hashable; operations are pure functions of their
operands and the ambient bit budget.  Comparisons do not consult the budget
at all, so values produced under different budgets compare consistently.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

GRANULE_BITS = 32
GRANULE_DEN = 1 << GRANULE_BITS
GRANULE = Fraction(1, GRANULE_DEN)

DEFAULT_BIT_BUDGET = 1 << 20
MAX_TOWER_LEVEL = 4

# Exact n! is computed outright for n up to this limit (cheap with gmpy2's
# binary-splitting factorial); only larger or tower-valued arguments fall
# back to the n^n log-space bound.  Independent of the value bit budget.
FACTORIAL_EXACT_LIMIT = 1 << 20

# Above this combined bit length integer products route through gmpy2.
_GMP_MUL_BITS = 1 << 15

# Tower magnitudes at or below this expand exactly during comparisons
# (budget-independent so comparisons are globally consistent).
_CMP_EXPAND = 1 << 16

_ZERO = Fraction(0)
_ONE = Fraction(1)


class BudgetError(ValueError):
    """Raised for invalid bit-budget configuration."""


class DomainError(ValueError):
    """Raised when an operation's argument is outside its domain."""


# --------------------------------------------------------------------------
# bit budget (thread-local ambient configuration)

_local = threading.local()


def bit_budget() -> int:
    return getattr(_local, "budget", DEFAULT_BIT_BUDGET)


def set_bit_budget(bits: int) -> None:
    if not isinstance(bits, int) or bits < 8:
        raise BudgetError(f"bit budget must be an integer >= 8, got {bits!r}")
    _local.budget = bits


@contextmanager
def local_bit_budget(bits: int):
    """Temporarily override the bit budget on the current thread."""
    old = bit_budget()
    set_bit_budget(bits)
    try:
        yield
    finally:
        _local.budget = old


# --------------------------------------------------------------------------
# directed rounding primitives (all granule-snapped outward)


def _ceil_granule(x: Fraction) -> Fraction:
    num = x.numerator << GRANULE_BITS
    den = x.denominator
    return Fraction(-((-num) // den), GRANULE_DEN)


def _floor_granule(x: Fraction) -> Fraction:
    num = x.numerator << GRANULE_BITS
    den = x.denominator
    return Fraction(num // den, GRANULE_DEN)


def _frac_from_mpfr(v) -> Fraction:
    q = gmpy2.mpq(v)
    return Fraction(int(q.numerator), int(q.denominator))


def int_log2_upper(n: int) -> Fraction:
    """Upper bound on log2(n) for n >= 1, within one granule, granule-aligned.

    Exact for powers of two.
    """
    if n < 1:
        raise DomainError(f"log2 requires a positive integer, got {n}")
    if n & (n - 1) == 0:
        return Fraction(n.bit_length() - 1)
    with gmpy2.context(precision=96, round=gmpy2.RoundUp):
        v = gmpy2.log2(gmpy2.mpfr(n))
    return _ceil_granule(_frac_from_mpfr(v))


def int_log2_lower(n: int) -> Fraction:
    """Lower bound on log2(n) for n >= 1, within one granule, granule-aligned."""
    if n < 1:
        raise DomainError(f"log2 requires a positive integer, got {n}")
    if n & (n - 1) == 0:
        return Fraction(n.bit_length() - 1)
    with gmpy2.context(precision=96, round=gmpy2.RoundDown):
        v = gmpy2.log2(gmpy2.mpfr(n))
    return _floor_granule(_frac_from_mpfr(v))


def frac_log2_upper(f: Fraction) -> Fraction:
    """Granule-aligned upper bound on log2(f) for rational f >= 1."""
    if f < 1:
        raise DomainError(f"log2 upper bound requires f >= 1, got {f}")
    if f.denominator == 1:
        return int_log2_upper(f.numerator)
    up = int_log2_upper(f.numerator)
    down = int_log2_lower(f.denominator)
    return up - down


def _frac_log2_bounds(f: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    # raw two-sided bounds at a chosen precision, not granule-snapped
    with gmpy2.context(precision=prec, round=gmpy2.RoundDown):
        lo = gmpy2.log2(gmpy2.mpfr(gmpy2.mpq(f)))
    with gmpy2.context(precision=prec, round=gmpy2.RoundUp):
        hi = gmpy2.log2(gmpy2.mpfr(gmpy2.mpq(f)))
    return _frac_from_mpfr(lo), _frac_from_mpfr(hi)


def pow2_ceil_int(x: Fraction) -> int:
    """Smallest convenient integer >= 2**x for rational x >= 0; exact if x is integral."""
    if x < 0:
        raise DomainError(f"pow2_ceil_int requires x >= 0, got {x}")
    if x.denominator == 1:
        return 1 << x.numerator
    prec = max(64, int(x) + 48)
    with gmpy2.context(precision=prec, round=gmpy2.RoundUp):
        v = gmpy2.exp2(gmpy2.mpfr(gmpy2.mpq(x)))
        c = gmpy2.ceil(v)
    return int(gmpy2.mpz(c))


def _pow2_frac_up(x: Fraction) -> Fraction:
    # granule-aligned rational >= 2**x
    if x.denominator == 1:
        return Fraction(1 << x.numerator)
    return Fraction(pow2_ceil_int(x + GRANULE_BITS), GRANULE_DEN)


def _log2_1p_pow2_up(d: Fraction) -> Fraction:
    # granule-aligned upper bound on log2(1 + 2**-d) for d >= 0
    if d == 0:
        return _ONE
    if d >= GRANULE_BITS + 1:
        # log2(1+2^-d) <= 2^-d / ln 2 < 2^-32 for d >= 33
        return GRANULE
    with gmpy2.context(precision=96, round=gmpy2.RoundUp):
        y = gmpy2.exp2(gmpy2.mpfr(gmpy2.mpq(-d)))
        r = gmpy2.log2(1 + y)
    return _ceil_granule(_frac_from_mpfr(r))


def _imul(a: int, b: int) -> int:
    if a.bit_length() + b.bit_length() > _GMP_MUL_BITS:
        return int(gmpy2.mpz(a) * gmpy2.mpz(b))
    return a * b


def _ipow(b: int, e: int) -> int:
    if b.bit_length() * e > _GMP_MUL_BITS:
        return int(gmpy2.mpz(b) ** e)
    return b**e


def _int_str(n: int) -> str:
    # CPython caps int->str at sys.int_max_str_digits; mpz conversion has no
    # cap and is subquadratic, which matters for budget-sized exact values
    if n.bit_length() > 10000:
        return str(gmpy2.mpz(n))
    return str(n)


def format_fraction_up(x: Fraction, decimals: int = 6) -> str:
    """Decimal string of x rounded UP at the given number of decimals."""
    scale = 10**decimals
    num = x.numerator * scale
    q = -((-num) // x.denominator)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{_int_str(q // scale)}.{q % scale:0{decimals}d}"


# --------------------------------------------------------------------------
# quantities: (level, magnitude) chains used for log-space arithmetic.
# Quantity (0, f) is the rational f itself; (k, m) with k >= 1 is 2^2^...^m
# with k twos.  All helpers return sound upper bounds, except _q_cmp which
# is an exact trichotomy.


def _q_exp2(q: tuple[int, Fraction]) -> tuple[int, Fraction]:
    return (q[0] + 1, q[1])


def _q_log2_up(q: tuple[int, Fraction]) -> tuple[int, Fraction]:
    lvl, mag = q
    if lvl >= 1:
        return (lvl - 1, mag)
    if mag <= 1:
        # sound upper for factors in [0, 1]: treat log2 as 0
        return (0, _ZERO)
    return (0, frac_log2_upper(mag))


def _q_add(q1: tuple[int, Fraction], q2: tuple[int, Fraction]) -> tuple[int, Fraction]:
    l1, m1 = q1
    l2, m2 = q2
    if l1 == 0 and l2 == 0:
        return (0, m1 + m2)
    if l1 < l2:
        (l1, m1), (l2, m2) = (l2, m2), (l1, m1)
    if l2 == 0:
        if m2 == 0:
            return (l1, m1)
        if l1 == 1:
            t_up = frac_log2_upper(m2) if m2 >= 1 else _ZERO
            if t_up <= m1:
                return (1, m1 + _log2_1p_pow2_up(m1 - t_up))
            # the rational side dominates: lift it to level 1 and retry
            return _q_add((1, m1), (1, t_up))
        t_up = frac_log2_upper(m2) if m2 >= 1 else _ZERO
        return _q_add((l1, m1), (1, max(_ZERO, t_up)))
    if l1 == l2 == 1:
        if m1 < m2:
            m1, m2 = m2, m1
        return (1, m1 + _log2_1p_pow2_up(m1 - m2))
    # some level >= 2: a + b <= 2 * max(a, b) = 2^(1 + log2 max)
    if l1 == l2:
        big = (l1, m1) if m1 >= m2 else (l2, m2)
    else:
        big = (l1, m1) if _q_cmp((l1, m1), (l2, m2)) >= 0 else (l2, m2)
    return _q_exp2(_q_add((big[0] - 1, big[1]), (0, _ONE)))


def _q_mul(q1: tuple[int, Fraction], q2: tuple[int, Fraction]) -> tuple[int, Fraction]:
    l1, m1 = q1
    l2, m2 = q2
    if (l1 == 0 and m1 == 0) or (l2 == 0 and m2 == 0):
        return (0, _ZERO)
    if l1 == 0 and l2 == 0:
        return (0, _ceil_granule(m1 * m2))
    return _q_exp2(_q_add(_q_log2_up(q1), _q_log2_up(q2)))


def _q_scale(q: tuple[int, Fraction], e: int) -> tuple[int, Fraction]:
    # q * e for an exact integer e >= 1 (tight at level 0)
    if e == 1:
        return q
    lvl, mag = q
    if lvl == 0:
        return (0, mag * e)
    return _q_exp2(_q_add((lvl - 1, mag), (0, int_log2_upper(e))))


def _is_pow2_frac(f: Fraction) -> int | None:
    # exact exponent j with f == 2**j, else None (denominators are powers of 2
    # whenever magnitudes are granule-aligned, but handle the general case)
    num, den = f.numerator, f.denominator
    if num <= 0 or num & (num - 1) or den & (den - 1):
        return None
    return (num.bit_length() - 1) - (den.bit_length() - 1)


def _q_cmp_norm(q: tuple[int, Fraction]) -> tuple[int, Fraction]:
    lvl, mag = q
    while lvl >= 1 and mag.denominator == 1 and mag <= _CMP_EXPAND:
        mag = Fraction(1 << mag.numerator)
        lvl -= 1
    return (lvl, mag)


def _q_cmp(q1: tuple[int, Fraction], q2: tuple[int, Fraction]) -> int:
    """Exact trichotomy on quantity values (budget-independent)."""
    l1, m1 = _q_cmp_norm(q1)
    l2, m2 = _q_cmp_norm(q2)
    if l1 == l2:
        # at equal level the chain is strictly monotone in the magnitude
        return (m1 > m2) - (m1 < m2)
    if l1 > l2:
        return -_q_cmp((l2, m2), (l1, m1))
    # now l1 < l2
    if l1 >= 1:
        return _q_cmp((l1 - 1, m1), (l2 - 1, m2))
    # rational vs tower of level >= 1: compare through log2
    if m1 <= 0:
        return -1
    j = _is_pow2_frac(m1)
    if j is not None:
        if j < 0:
            return -1
        return _q_cmp((0, Fraction(j)), (l2 - 1, m2))
    for prec in (96, 256, 1024, 4096, 16384, 65536, 1 << 18):
        lo, hi = _frac_log2_bounds(m1, prec)
        if _q_cmp((0, hi), (l2 - 1, m2)) <= 0:
            return -1
        if _q_cmp((0, lo), (l2 - 1, m2)) >= 0:
            return 1
    raise AssertionError("escalating comparison failed to separate values")


# --------------------------------------------------------------------------
# BoundValue


@dataclass(frozen=True)
class BoundValue:
    """Immutable upper-bound scalar: exact integer, power tower, or saturated.

    Construct through :meth:`exact`, :meth:`tower`, :meth:`from_int`, or
    :meth:`saturated`; the constructors normalize so that equal budgets give
    canonical representations (no tower survives whose expansion fits the
    budget, no level exceeds ``MAX_TOWER_LEVEL``).
    """

    kind: str
    value: int = 0
    level: int = 0
    magnitude: Fraction = field(default=_ZERO)

    # -- constructors

    @staticmethod
    def exact(n: int) -> "BoundValue":
        if n < 0:
            raise DomainError(f"bound values are nonnegative, got {n}")
        if n.bit_length() > bit_budget():
            return BoundValue.tower(1, int_log2_upper(n))
        return BoundValue("exact", value=int(n))

    @staticmethod
    def from_int(n: int) -> "BoundValue":
        return BoundValue.exact(n)

    @staticmethod
    def tower(level: int, magnitude: Fraction | int) -> "BoundValue":
        mag = Fraction(magnitude)
        if mag < 0:
            raise DomainError(f"tower magnitude must be nonnegative, got {mag}")
        if level < 1:
            raise DomainError(f"tower level must be >= 1, got {level}")
        if GRANULE_DEN % mag.denominator:
            mag = _ceil_granule(mag)
        budget = bit_budget()
        while True:
            if level > MAX_TOWER_LEVEL:
                return _BEYOND
            if level >= 2 and mag <= budget:
                mag = _pow2_frac_up(mag)
                level -= 1
                continue
            if level == 1 and mag < budget:
                return BoundValue("exact", value=pow2_ceil_int(mag))
            return BoundValue("tower", level=level, magnitude=mag)

    @staticmethod
    def saturated() -> "BoundValue":
        return _BEYOND

    # -- predicates / accessors

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def is_tower(self) -> bool:
        return self.kind == "tower"

    @property
    def is_beyond(self) -> bool:
        return self.kind == "beyond"

    def exact_int(self) -> int:
        if not self.is_exact:
            raise DomainError(f"not an exact value: {self}")
        return self.value

    # -- serialization / display

    def to_json(self) -> dict:
        if self.is_exact:
            return {"kind": "exact", "decimal": _int_str(self.value)}
        if self.is_tower:
            m = self.magnitude
            return {
                "kind": "tower",
                "level": self.level,
                "log2_magnitude": f"{_int_str(m.numerator)}/{_int_str(m.denominator)}",
            }
        return {"kind": "beyond", "min_level": MAX_TOWER_LEVEL + 1}

    def __str__(self) -> str:
        if self.is_exact:
            return _int_str(self.value)
        if self.is_tower:
            m = self.magnitude
            return (
                f"tower(level={self.level}, "
                f"log2_magnitude={_int_str(m.numerator)}/{_int_str(m.denominator)})"
            )
        return f"beyond(level>{MAX_TOWER_LEVEL})"

    def __repr__(self) -> str:
        # the dataclass default renders huge ints through int.__repr__, which
        # CPython caps; abbreviate anything past 256 bits instead
        def _short(n: int) -> str:
            return str(n) if n.bit_length() <= 256 else f"<{n.bit_length()}-bit int>"

        if self.is_exact:
            return f"BoundValue.exact({_short(self.value)})"
        if self.is_tower:
            m = self.magnitude
            mag = _short(m.numerator) if m.denominator == 1 else (
                f"{_short(m.numerator)}/{_short(m.denominator)}"
            )
            return f"BoundValue.tower({self.level}, {mag})"
        return "BoundValue.saturated()"

    # -- operators

    def __mul__(self, other):
        return bv_mul(self, other)

    __rmul__ = __mul__

    def __add__(self, other):
        return bv_add(self, other)

    __radd__ = __add__

    def __pow__(self, other):
        return bv_pow(self, other)

    def __lt__(self, other):
        return bv_cmp(self, as_bound(other)) < 0

    def __le__(self, other):
        return bv_cmp(self, as_bound(other)) <= 0

    def __gt__(self, other):
        return bv_cmp(self, as_bound(other)) > 0

    def __ge__(self, other):
        return bv_cmp(self, as_bound(other)) >= 0


_BEYOND = BoundValue("beyond")
_EXACT_ZERO = BoundValue("exact", value=0)
_EXACT_ONE = BoundValue("exact", value=1)


def as_bound(x) -> BoundValue:
    """Coerce an int (or pass through a BoundValue) to a BoundValue."""
    if isinstance(x, BoundValue):
        return x
    if isinstance(x, bool) or not isinstance(x, int):
        raise DomainError(f"cannot interpret {x!r} as a bound value")
    return BoundValue.exact(x)


def _value_q(a: BoundValue) -> tuple[int, Fraction]:
    if a.is_exact:
        return (0, Fraction(a.value))
    return (a.level, a.magnitude)


def _log2_q(a: BoundValue) -> tuple[int, Fraction]:
    if a.is_exact:
        return (0, int_log2_upper(a.value))
    return (a.level - 1, a.magnitude)


def _bound_from_log_q(q: tuple[int, Fraction]) -> BoundValue:
    return BoundValue.tower(q[0] + 1, q[1])


def _bound_from_value_q(q: tuple[int, Fraction]) -> BoundValue:
    lvl, mag = q
    if lvl == 0:
        return BoundValue.exact(-((-mag.numerator) // mag.denominator))
    return BoundValue.tower(lvl, mag)


# --------------------------------------------------------------------------
# operations


def bv_mul(a, b) -> BoundValue:
    """Upper bound on a*b."""
    a, b = as_bound(a), as_bound(b)
    if (a.is_exact and a.value == 0) or (b.is_exact and b.value == 0):
        return _EXACT_ZERO
    if a.is_beyond or b.is_beyond:
        return _BEYOND
    if a.is_exact and b.is_exact:
        if a.value == 1:
            return b
        if b.value == 1:
            return a
        if a.value.bit_length() + b.value.bit_length() <= bit_budget() + 1:
            return BoundValue.exact(_imul(a.value, b.value))
        return BoundValue.tower(1, int_log2_upper(a.value) + int_log2_upper(b.value))
    return _bound_from_log_q(_q_add(_log2_q(a), _log2_q(b)))


def bv_add(a, b) -> BoundValue:
    """Upper bound on a+b."""
    a, b = as_bound(a), as_bound(b)
    if a.is_exact and a.value == 0:
        return b
    if b.is_exact and b.value == 0:
        return a
    if a.is_beyond or b.is_beyond:
        return _BEYOND
    if a.is_exact and b.is_exact:
        return BoundValue.exact(a.value + b.value)
    return _bound_from_value_q(_q_add(_value_q(a), _value_q(b)))


def bv_pow(base, exp) -> BoundValue:
    """Upper bound on base**exp (exp a nonnegative bound value)."""
    base, exp = as_bound(base), as_bound(exp)
    if exp.is_exact and exp.value == 0:
        return _EXACT_ONE
    if base.is_exact and base.value in (0, 1):
        return base
    if base.is_beyond or exp.is_beyond:
        return _BEYOND
    if exp.is_exact:
        e = exp.value
        if e == 1:
            return base
        if base.is_exact:
            if base.value.bit_length() * e <= bit_budget() + 64:
                return BoundValue.exact(_ipow(base.value, e))
        return _bound_from_log_q(_q_scale(_log2_q(base), e))
    return _bound_from_log_q(_q_mul(_value_q(exp), _log2_q(base)))


def bv_factorial(n) -> BoundValue:
    """Upper bound on n! (exact for exact n up to FACTORIAL_EXACT_LIMIT)."""
    n = as_bound(n)
    if n.is_beyond:
        return _BEYOND
    if n.is_exact:
        if n.value <= 1:
            return _EXACT_ONE
        if n.value <= FACTORIAL_EXACT_LIMIT:
            return BoundValue.exact(int(gmpy2.fac(n.value)))
        # n! <= n^n
        return _bound_from_log_q((0, n.value * int_log2_upper(n.value)))
    return _bound_from_log_q(_q_mul(_value_q(n), _q_log2_up(_value_q(n))))


def bv_log2_upper(a) -> Fraction:
    """Upper bound on log2(a) as an exact rational.

    Tight within one granule for exact values and level-1 towers; raises
    DomainError for zero, saturated, or level>=2 values (whose log2 does not
    fit in a rational of any feasible size).
    """
    a = as_bound(a)
    if a.is_beyond:
        raise DomainError("log2 of a saturated value is not representable")
    if a.is_exact:
        if a.value == 0:
            raise DomainError("log2 of zero is undefined")
        return int_log2_upper(a.value)
    if a.level == 1:
        return a.magnitude
    raise DomainError(
        f"log2 of a level-{a.level} tower does not fit in a rational; "
        "use iterated_log2_view"
    )


def bv_cmp(a, b) -> int:
    """Exact trichotomy (-1, 0, 1); saturated values compare above all towers."""
    a, b = as_bound(a), as_bound(b)
    if a.is_beyond or b.is_beyond:
        return (not b.is_beyond) - (not a.is_beyond)
    if a.is_exact and b.is_exact:
        return (a.value > b.value) - (a.value < b.value)
    return _q_cmp(_value_q(a), _value_q(b))


def bv_max(a, b) -> BoundValue:
    a, b = as_bound(a), as_bound(b)
    return a if bv_cmp(a, b) >= 0 else b


def iterated_log2_view(a) -> tuple[int, Fraction]:
    """(depth, x): applying log2 `depth` times lands at a rational < 10**18.

    The returned x is an upper approximation of the iterated log (exact in
    the tower levels, one granule per rational log step).  Requires a >= 1
    and not saturated.
    """
    a = as_bound(a)
    if a.is_beyond:
        raise DomainError("saturated values have no finite iterated log")
    q = _value_q(a)
    if q[0] == 0 and q[1] < 1:
        raise DomainError("iterated log view requires a value >= 1")
    depth = 0
    while not (q[0] == 0 and q[1] < 10**18):
        q = _q_log2_up(q)
        depth += 1
    return depth, q[1]


def iterated_log2_at_depth(a, depth: int) -> Fraction:
    """Upper approximation of log2 applied `depth` times to a (a >= 1)."""
    a = as_bound(a)
    if a.is_beyond:
        raise DomainError("saturated values have no finite iterated log")
    q = _value_q(a)
    for _ in range(depth):
        q = _q_log2_up(q)
    if q[0] != 0:
        raise DomainError(f"value still a tower after {depth} log2 steps")
    return q[1]


def format_log2(a, decimals: int = 6) -> str:
    """log2 of a bound value as text: a decimal when it fits in a rational,
    an iterated form ``2^^k(...)`` for deep towers, ``beyond(...)`` else.

    Depth follows the iterated-log view rather than the stored level, so a
    tower whose magnitude is itself astronomically large prints as a short
    ``2^^k(...)`` line instead of thousands of digits.
    """
    a = as_bound(a)
    if a.is_beyond:
        return f"beyond(level>{MAX_TOWER_LEVEL})"
    if a.is_exact and a.value == 0:
        return "-inf"
    depth, x = iterated_log2_view(a)
    if depth <= 1:
        return format_fraction_up(bv_log2_upper(a), decimals)
    return f"2^^{depth - 1}({format_fraction_up(x, decimals)})"


def format_exact(a) -> str:
    """Value as text: full decimal digits when exact, tower/saturated form else."""
    return str(as_bound(a))


def describe(a) -> dict:
    """JSON-friendly description: serialized value plus display conveniences."""
    a = as_bound(a)
    out: dict = {"value": a.to_json()}
    if a.is_beyond:
        out["display"] = str(a)
        return out
    if a.is_exact and a.value == 0:
        out["display"] = "0"
        return out
    depth, x = iterated_log2_view(a)
    if depth <= 1:
        out["log2"] = format_log2(a)
    else:
        out["iterated_log2"] = {"depth": depth, "value": format_fraction_up(x)}
    out["display"] = format_log2(a)
    return out
