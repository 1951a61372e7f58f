"""Homology-level computations for a fibre-sum problem.

Everything here reduces to exact kernel/cokernel computations over Z:
the Betti numbers of the sum, its first homology as the cokernel of the
combined embedding-plus-gluing map, the rim-tori and split-class groups,
the action of the gluing diffeomorphism on the homology of the boundary
three-manifold, and the invariants of a single complement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import abgroups, intlat, model
from .abgroups import AbGroup
from .intlat import IntBasis, IntMatrix
from .model import BettiNumbers, FibreSumProblem, ManifoldSide

__all__ = [
    "KernelData",
    "ComplementInvariants",
    "SplitClass",
    "SplitClassBasis",
    "kernel_data",
    "betti_numbers",
    "first_homology",
    "first_cohomology_rank",
    "rim_tori_group",
    "split_class_basis",
    "phi_action_h1",
    "phi_action_h2",
    "complement_invariants",
]


@dataclass(frozen=True)
class KernelData:
    """The kernel of the stacked embedding map on the surface homology.

    ``alpha_basis`` lives in gamma coordinates (ambient dimension 2g) and
    is the canonical saturated basis; every t-vector and the adapted
    gluing vector ``a_adapted`` (pairings of the gluing class with the
    basis vectors) are expressed in its ordering.
    """

    d: int
    alpha_basis: IntBasis
    a_adapted: tuple[int, ...]


@dataclass(frozen=True)
class ComplementInvariants:
    """Homology of the complement of the surface in one closed side."""

    h1: AbGroup
    h1_cohom_rank: int
    h2_rank: int
    h2_torsion: tuple[int, ...]
    ker_i_rank: int


@dataclass(frozen=True)
class SplitClass:
    """An element ``b_m*B_M + b_n*B_N + sum(alpha_i * alpha-basis)``."""

    b_m: int
    b_n: int
    alpha: tuple[int, ...]

    def label(self) -> str:
        terms: list[str] = []
        for coeff, symbol in [(self.b_m, "B_M"), (self.b_n, "B_N")] + [
            (c, f"alpha_{i + 1}") for i, c in enumerate(self.alpha)
        ]:
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            body = symbol if mag == 1 else f"{mag}*{symbol}"
            if not terms:
                terms.append(body if sign == "+" else f"-{body}")
            else:
                terms.append(f"{sign} {body}")
        return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class SplitClassBasis:
    """Basis of the split-class group, of rank d + 1."""

    classes: tuple[SplitClass, ...]

    def __len__(self) -> int:
        return len(self.classes)


def kernel_data(problem: FibreSumProblem) -> KernelData:
    stacked = model.stacked_free_embedding(problem)
    basis = intlat.kernel_basis(stacked)
    a = problem.gluing.a
    adapted = tuple(sum(ai * vi for ai, vi in zip(a, vec)) for vec in basis.vectors)
    return KernelData(d=len(basis), alpha_basis=basis, a_adapted=adapted)


def betti_numbers(problem: FibreSumProblem) -> BettiNumbers:
    """Betti numbers of the sum from the kernel dimension d.

    The Euler characteristic and signature are recomputed from their own
    additivity rules and cross-checked against the b-number formulas.
    """
    M, N, g = problem.M, problem.N, problem.genus
    d = kernel_data(problem).d
    b1 = M.b1 + N.b1 - 2 * g + d
    b2 = M.b2 + N.b2 - 2 + 2 * d
    b2_plus = M.b2_plus + N.b2_plus - 1 + d
    b2_minus = M.b2_minus + N.b2_minus - 1 + d
    e = M.euler + N.euler + 4 * g - 4
    sigma = M.signature + N.signature
    if e != 2 - 2 * b1 + b2 or sigma != b2_plus - b2_minus:
        raise AssertionError("Euler/signature additivity disagrees with the b-number formulas")
    return BettiNumbers(
        b0=1, b1=b1, b2=b2, b3=b1, b4=1,
        b2_plus=b2_plus, b2_minus=b2_minus, e=e, sigma=sigma, d=d,
    )


def _torsion_rows(side: ManifoldSide) -> list[tuple[int, tuple[int, ...]]]:
    return list(side.embedding_torsion)


def first_homology(problem: FibreSumProblem) -> AbGroup:
    """H_1 of the sum as a cokernel.

    Present H_1(M) + H_1(N) + Z/n (n = gcd(k_M, k_N)) by generators and
    relations, then stack one extra relation per surface basis curve:
    its image under both embeddings together with its pairing against
    the gluing class.
    """
    M, N = problem.M, problem.N
    two_g = 2 * problem.genus
    a = problem.gluing.a
    n_mn = math.gcd(M.k, N.k)

    tors_m = _torsion_rows(M)
    tors_n = _torsion_rows(N)
    n_gens = M.b1 + len(tors_m) + N.b1 + len(tors_n) + 1
    off_tm = M.b1
    off_fn = off_tm + len(tors_m)
    off_tn = off_fn + N.b1
    off_r = off_tn + len(tors_n)

    columns: list[list[int]] = []

    def zero_col() -> list[int]:
        return [0] * n_gens

    for j, (modulus, _) in enumerate(tors_m):
        col = zero_col()
        col[off_tm + j] = modulus
        columns.append(col)
    for j, (modulus, _) in enumerate(tors_n):
        col = zero_col()
        col[off_tn + j] = modulus
        columns.append(col)
    col = zero_col()
    col[off_r] = n_mn
    columns.append(col)

    for l in range(two_g):
        col = zero_col()
        for i in range(M.b1):
            col[i] = M.embedding_free.entry(i, l)
        for j, (_, row) in enumerate(tors_m):
            col[off_tm + j] = row[l]
        for i in range(N.b1):
            col[off_fn + i] = N.embedding_free.entry(i, l)
        for j, (_, row) in enumerate(tors_n):
            col[off_tn + j] = row[l]
        col[off_r] = a[l]
        columns.append(col)

    presentation = IntMatrix.from_rows(
        [[columns[c][r] for c in range(len(columns))] for r in range(n_gens)],
        cols=len(columns),
    )
    return intlat.cokernel_presentation(presentation)


def first_cohomology_rank(problem: FibreSumProblem) -> int:
    """Rank of H^1 of the sum: the kernel of the transposed embeddings
    added together, mapping Z^(b1(M)+b1(N)) into Z^2g."""
    transposed = model.stacked_free_embedding(problem).transpose()
    return transposed.cols - intlat.rank(transposed)


def rim_tori_group(problem: FibreSumProblem) -> AbGroup:
    """The rim-tori group: cokernel of the transposed embeddings added
    together.  Its free rank equals d."""
    return intlat.cokernel_presentation(model.stacked_free_embedding(problem).transpose())


def split_class_basis(problem: FibreSumProblem) -> SplitClassBasis:
    """Basis of the rank d+1 group of split classes.

    A class x_M*B_M + x_N*B_N + alpha splits exactly when
    x_M*k_M + x_N*k_N - <C, alpha> = 0.  With both surfaces indivisible
    the basis takes the explicit normal form B_M - B_N followed by
    S_i = <C, alpha_i>*B_N + alpha_i; for general divisibilities it is
    the canonical kernel basis of the 1 x (2+d) defining equation.
    """
    kd = kernel_data(problem)
    k_m, k_n = problem.M.k, problem.N.k
    if k_m == 1 and k_n == 1:
        classes = [SplitClass(1, -1, (0,) * kd.d)]
        for i, ai in enumerate(kd.a_adapted):
            unit = tuple(1 if j == i else 0 for j in range(kd.d))
            classes.append(SplitClass(0, ai, unit))
    else:
        defining = IntMatrix.from_rows([[k_m, k_n, *(-x for x in kd.a_adapted)]], cols=2 + kd.d)
        classes = [SplitClass(v[0], v[1], tuple(v[2:])) for v in intlat.kernel_basis(defining).vectors]
    for c in classes:
        value = c.b_m * k_m + c.b_n * k_n - sum(x * y for x, y in zip(kd.a_adapted, c.alpha))
        if value != 0:
            raise AssertionError(f"split class {c} does not satisfy the defining equation")
    if len(classes) != kd.d + 1:
        raise AssertionError("split-class basis must have rank d + 1")
    return SplitClassBasis(tuple(classes))


def phi_action_h1(g: int, a: Sequence[int]) -> IntMatrix:
    """Action of the gluing diffeomorphism on H_1 of the boundary, in the
    basis (gamma_1, ..., gamma_2g, sigma): each gamma_i picks up a_i
    meridians and the meridian reverses sign."""
    a = tuple(int(x) for x in a)
    if len(a) != 2 * g:
        raise ValueError(f"expected a vector of length 2g = {2 * g}, got {len(a)}")
    n = 2 * g + 1
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(2 * g)]
    rows.append([*a, -1])
    return IntMatrix.from_rows(rows, cols=n)


def phi_action_h2(g: int, a: Sequence[int]) -> IntMatrix:
    """Action on H_2 of the boundary in the basis (Gamma_1, ...,
    Gamma_2g, Sigma): the rim classes reverse sign and the surface class
    picks up -a_i rim classes."""
    a = tuple(int(x) for x in a)
    if len(a) != 2 * g:
        raise ValueError(f"expected a vector of length 2g = {2 * g}, got {len(a)}")
    n = 2 * g + 1
    rows = [[-1 if i == j else 0 for j in range(n)] for i in range(2 * g)]
    for i in range(2 * g):
        rows[i][n - 1] = -a[i]
    rows.append([0] * (2 * g) + [1])
    return IntMatrix.from_rows(rows, cols=n)


def complement_invariants(side: ManifoldSide) -> ComplementInvariants:
    """Homology of the complement of the surface in the closed side.

    H_1 gains a Z/k summand generated by the meridian; H^1 keeps the rank
    b1; H^2 splits off the curves on the push-off that bound in the
    complement (rank 2g - rank of the embedding) on top of the quotient
    of H^2 by the surface class.
    """
    h1 = abgroups.normal_form(side.b1, side.h1_torsion + (side.k,))
    ker_i_rank = 2 * side.genus - intlat.rank(side.embedding_free)
    h2_rank = (side.b2 - 1) + ker_i_rank
    h2_torsion = abgroups.normal_form(0, side.h1_torsion + (side.k,)).torsion
    return ComplementInvariants(
        h1=h1,
        h1_cohom_rank=side.b1,
        h2_rank=h2_rank,
        h2_torsion=h2_torsion,
        ker_i_rank=ker_i_rank,
    )
