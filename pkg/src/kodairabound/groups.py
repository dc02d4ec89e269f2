"""Finite abelian coefficient groups and genus profiles.

The bounded quantities downstream depend on a finite abelian group A only
through three invariants: its order, its exponent, and its minimal number of
generators.  ``FiniteAbelianGroup`` records A by its invariant-factor chain
d_1 | d_2 | ... | d_k (each >= 2), from which

    order    = d_1 * ... * d_k,
    exponent = d_k,
    rank     = k   (minimal size of a generating set).

A ``GenusProfile`` is the list of fiber genera [g_1, ..., g_n] of an
iterated surface-bundle group, every entry an integer >= 2.  Passing to a
finite-index subgroup multiplies Euler characteristics, so a genus-g surface
pulls back to genus at most d(g-1)+1 under a degree-d cover; ``genus_bound``
computes that worst case and ``subgroup_profile`` applies it entrywise.
Propagated profiles may contain tower-valued degrees, hence entries are
``BoundValue``s once propagation starts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bignum import BoundValue, DomainError, as_bound, bv_add, bv_mul


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group given by its invariant-factor chain."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if not fs:
            raise DomainError("the trivial group is not a valid coefficient group")
        for d in fs:
            if d < 2:
                raise DomainError(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise DomainError(
                    f"invariant factors must form a divisibility chain, {a} does not divide {b}"
                )

    @staticmethod
    def parse(text: str) -> "FiniteAbelianGroup":
        """Parse a comma-separated invariant-factor chain, e.g. '2,2,4'."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise DomainError(f"empty invariant-factor list: {text!r}")
        try:
            factors = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise DomainError(f"invalid invariant factor in {text!r}: {exc}") from None
        return FiniteAbelianGroup(factors)

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __str__(self) -> str:
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class GenusProfile:
    """Fiber genera [g_1, ..., g_n] of an iterated surface-bundle group."""

    genera: tuple[int, ...]

    def __post_init__(self):
        gs = tuple(int(g) for g in self.genera)
        object.__setattr__(self, "genera", gs)
        if not gs:
            raise DomainError("a genus profile needs at least one fiber")
        for g in gs:
            if g < 2:
                raise DomainError(f"fiber genera must be >= 2, got {g}")

    @staticmethod
    def parse(text: str) -> "GenusProfile":
        """Parse comma-separated genera, e.g. '2,3,4'."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise DomainError(f"empty genus profile: {text!r}")
        try:
            gs = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise DomainError(f"invalid genus in {text!r}: {exc}") from None
        return GenusProfile(gs)

    @property
    def length(self) -> int:
        return len(self.genera)

    def __iter__(self):
        return iter(self.genera)


def genus_bound(g, d) -> BoundValue:
    """Worst-case genus of a degree-d cover of a genus-g surface: d(g-1)+1.

    Multiplicativity of the Euler characteristic gives chi' = d*(2-2g), i.e.
    genus exactly d(g-1)+1 for a connected unbranched cover; any cover has at
    most that.  Exact when both inputs are exact; for a tower-valued g the
    bound relaxes soundly to d*g + 1 >= d(g-1)+1.  Requires g >= 2, d >= 1.
    """
    g = as_bound(g)
    d = as_bound(d)
    if g.is_exact and g.value < 2:
        raise DomainError(f"base genus must be >= 2, got {g.value}")
    if d.is_exact and d.value < 1:
        raise DomainError(f"cover degree must be >= 1, got {d.value}")
    if g.is_exact:
        if d.is_exact:
            return BoundValue.exact(d.value * (g.value - 1) + 1)
        return bv_add(bv_mul(d, g.value - 1), 1)
    return bv_add(bv_mul(d, g), 1)


def subgroup_profile(profile, d) -> tuple[BoundValue, ...]:
    """Worst-case genus profile of a finite-index subgroup of index d.

    Every fiber of the chain is covered with degree at most d, so each genus
    propagates by genus_bound with the same index.
    """
    genera = profile.genera if isinstance(profile, GenusProfile) else tuple(profile)
    if not genera:
        raise DomainError("cannot propagate an empty profile")
    return tuple(genus_bound(g, d) for g in genera)


def quotient_profile(profile):
    """Profile of the length-(n-1) quotient: drop the first fiber genus."""
    if isinstance(profile, GenusProfile):
        if profile.length < 2:
            raise DomainError("quotient of a length-1 profile is empty")
        return GenusProfile(profile.genera[1:])
    genera = tuple(profile)
    if len(genera) < 2:
        raise DomainError("quotient of a length-1 profile is empty")
    return genera[1:]
