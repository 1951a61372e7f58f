"""Finitely generated abelian groups in invariant-factor normal form.

The normal form is the divisibility chain coming straight out of Smith
reduction, so isomorphism testing is component-wise equality.  Values are
immutable and operations pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = ["AbGroup", "normal_form", "direct_sum", "is_isomorphic", "is_torsion_free"]


@dataclass(frozen=True)
class AbGroup:
    """``Z^free_rank + Z/t1 + ... + Z/tk`` with ``t1 | t2 | ... | tk``.

    The constructor does not normalize; use :func:`normal_form` to build a
    group from an arbitrary factor list.  Operations that rely on the
    normal form reject values that violate it.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    def is_normal_form(self) -> bool:
        if any(t < 2 for t in self.torsion):
            return False
        return all(b % a == 0 for a, b in zip(self.torsion, self.torsion[1:]))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts: list[str] = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def _factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; inputs here are tiny."""
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def normal_form(free_rank: int, factors: Sequence[int]) -> AbGroup:
    """Normalize an arbitrary list of cyclic orders into a divisibility chain.

    Goes through the primary decomposition: collect prime powers, then
    rebuild invariant factors by pairing the largest powers of each prime.
    Factors equal to 1 are dropped; a factor of 0 contributes a Z summand.
    """
    by_prime: dict[int, list[int]] = {}
    rank = free_rank
    for f in factors:
        f = abs(int(f))
        if f == 0:
            rank += 1
            continue
        if f == 1:
            continue
        for p, e in _factorize(f).items():
            by_prime.setdefault(p, []).append(e)
    length = max((len(v) for v in by_prime.values()), default=0)
    chain = [1] * length
    for p, exps in by_prime.items():
        exps.sort(reverse=True)
        for idx, e in enumerate(exps):
            chain[length - 1 - idx] *= p**e
    return AbGroup(rank, tuple(c for c in chain if c > 1))


def direct_sum(G: AbGroup, H: AbGroup) -> AbGroup:
    """Normal form of ``G + H``: ranks add, torsion chains are re-merged."""
    return normal_form(G.free_rank + H.free_rank, G.torsion + H.torsion)


def is_isomorphic(G: AbGroup, H: AbGroup) -> bool:
    """Component-wise equality; both operands must be in normal form."""
    for name, grp in (("first", G), ("second", H)):
        if not grp.is_normal_form():
            raise ValueError(f"{name} operand not in normal form: {grp}")
    return G.free_rank == H.free_rank and G.torsion == H.torsion


def is_torsion_free(G: AbGroup) -> bool:
    return not G.torsion
