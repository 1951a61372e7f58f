"""Intersection form and canonical class of the fibre sum.

Valid only when both surfaces are indivisible (k = 1 on both sides) and
the integral cohomology of both sides and of the sum is torsion free;
:func:`scope_gate` checks exactly that.  Under those hypotheses the second
cohomology of the sum splits into the two perpendicular blocks, d
hyperbolic-like pair blocks spanned by a split class and a rim torus, and
the nucleus spanned by the sewn dual surface and the surface push-off.

The canonical class is stored as its coefficient vector in this basis,
in both the push-off basis (coefficients r_i, sigma on Sigma_X) and the
symmetric basis (coefficients t_i, eta on Sigma_X, eta' on Sigma_X').
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import abgroups, engine, model
from .engine import KernelData
from .model import FibreSumProblem

__all__ = [
    "ScopeError",
    "InputDataError",
    "InternalCheckError",
    "CanonicalClass",
    "PBlock",
    "PairBlock",
    "NucleusBlock",
    "BlockForm",
    "FormClass",
    "Divisibility",
    "CheckLine",
    "KSquareCheck",
    "EmbeddedClass",
    "scope_gate",
    "canonical_class",
    "canonical_square",
    "assemble_intersection_form",
    "classify_form",
    "divisibility",
    "ionel_parker_checks",
    "embed_h2",
]


class ScopeError(Exception):
    """The problem is outside the torsion-free, indivisible-class scope."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InputDataError(ValueError):
    """Numerically inconsistent input discovered during assembly."""


class InternalCheckError(RuntimeError):
    """An identity that holds for every validated input failed."""


@dataclass(frozen=True)
class CanonicalClass:
    """Coefficients of the canonical class of the sum.

    ``s_coeffs`` vanish identically (split surfaces satisfy adjunction);
    ``r_coeffs`` are the rim coefficients in the push-off basis and
    ``t_coeffs`` the rim coefficients in the symmetric basis, related by
    r_i = t_i - a_i * eta_prime.  ``sigma_coeff = eta + eta_prime`` is the
    push-off coefficient and ``b_coeff = 2g - 2`` the coefficient on the
    sewn dual surface.  Divisibility data for the perpendicular parts is
    carried through from the sides (None = unknown).
    """

    kbar_m_sq: int
    kbar_m_div: int | None
    kbar_n_sq: int
    kbar_n_div: int | None
    s_coeffs: tuple[int, ...]
    r_coeffs: tuple[int, ...]
    t_coeffs: tuple[int, ...]
    b_coeff: int
    sigma_coeff: int
    eta: int
    eta_prime: int


@dataclass(frozen=True)
class PBlock:
    """Perpendicular block of one side: rank b2 - 2, the side's full
    signature, and the parity supplied with the side data."""

    rank: int
    signature: int
    parity: str


@dataclass(frozen=True)
class PairBlock:
    """One block [[S_i^2, 1], [1, 0]] on a split class and its dual rim
    torus.  Only the parity of S_i^2 is determined by the algebraic input
    (it must match the rim coefficient of the canonical class mod 2, and
    rim shifts move S_i^2 in even steps); the absolute value is not."""

    s_sq_parity: int


@dataclass(frozen=True)
class NucleusBlock:
    """The block [[b_sq, 1], [1, 0]] on the sewn dual surface and the
    push-off, with b_sq the sum of the two dual-surface squares."""

    b_sq: int


@dataclass(frozen=True)
class BlockForm:
    pm_block: PBlock
    pn_block: PBlock
    pair_blocks: tuple[PairBlock, ...]
    nucleus_block: NucleusBlock

    @property
    def rank(self) -> int:
        return self.pm_block.rank + self.pn_block.rank + 2 * len(self.pair_blocks) + 2

    @property
    def signature(self) -> int:
        # Every rank-2 block [[x, 1], [1, 0]] has determinant -1, hence
        # signature 0; only the perpendicular blocks contribute.
        return self.pm_block.signature + self.pn_block.signature


@dataclass(frozen=True)
class FormClass:
    """Isomorphism class of a unimodular form by rank, signature, parity."""

    rank: int
    signature: int
    parity: str
    summands: tuple[tuple[str, int], ...]
    decomposition: str


@dataclass(frozen=True)
class Divisibility:
    """gcd of the canonical-class coefficients.

    ``exact`` is True when both perpendicular divisibilities are known, in
    which case the gcd is the divisibility of the canonical class itself;
    otherwise it is only an upper bound (a necessary condition).
    """

    value: int
    exact: bool


@dataclass(frozen=True)
class CheckLine:
    name: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class KSquareCheck:
    value: int
    target: int

    @property
    def ok(self) -> bool:
        return self.value == self.target


@dataclass(frozen=True)
class EmbeddedClass:
    """A second-cohomology class of one side written in the basis of the
    sum: perpendicular part passed through, then the coefficients on the
    sewn dual surface and on the push-off (the N-side push-off differs
    from the M-side one by the gluing rim torus)."""

    perp: object
    b_x: int
    sigma: int
    sigma_basis: str


def scope_gate(problem: FibreSumProblem) -> list[str]:
    """Violations of the forms-module hypotheses; empty means in scope."""
    violations: list[str] = []
    for label, side in (("M", problem.M), ("N", problem.N)):
        if side.k != 1:
            violations.append(f"surface class of {label} is divisible (k = {side.k})")
        if side.h1_torsion:
            violations.append(f"H_1({label}) has torsion {list(side.h1_torsion)}")
    h1 = engine.first_homology(problem)
    if not abgroups.is_torsion_free(h1):
        violations.append(f"H_1 of the sum has torsion: {h1}")
    return violations


def _require_scope(problem: FibreSumProblem) -> None:
    violations = scope_gate(problem)
    if violations:
        raise ScopeError(violations)


def _effective_t(problem: FibreSumProblem, kd: KernelData) -> tuple[int, ...]:
    if problem.t is None:
        return (0,) * kd.d
    if len(problem.t) != kd.d:
        raise InputDataError(f"t must have length d = {kd.d}, got {len(problem.t)}")
    return problem.t


def canonical_class(problem: FibreSumProblem) -> CanonicalClass:
    """All coefficients of the canonical class of the sum."""
    _require_scope(problem)
    M, N, g = problem.M, problem.N, problem.genus
    kd = engine.kernel_data(problem)
    t = _effective_t(problem, kd)

    b = 2 * g - 2
    eta = M.K_dot_B + 1 - b * M.B_squared
    eta_prime = N.K_dot_B + 1 - b * N.B_squared
    sigma = eta + eta_prime
    r = tuple(ti - ai * eta_prime for ti, ai in zip(t, kd.a_adapted))

    # The square of the perpendicular part of K on each side.
    kbar_m_sq = M.K_squared - 2 * b * M.K_dot_B + b * b * M.B_squared
    kbar_n_sq = N.K_squared - 2 * b * N.K_dot_B + b * b * N.B_squared

    cc = CanonicalClass(
        kbar_m_sq=kbar_m_sq,
        kbar_m_div=M.kbar_divisibility,
        kbar_n_sq=kbar_n_sq,
        kbar_n_div=N.kbar_divisibility,
        s_coeffs=(0,) * kd.d,
        r_coeffs=r,
        t_coeffs=t,
        b_coeff=b,
        sigma_coeff=sigma,
        eta=eta,
        eta_prime=eta_prime,
    )
    if cc.sigma_coeff != cc.eta + cc.eta_prime:
        raise InternalCheckError("sigma coefficient must equal eta + eta'")
    for ri, ti, ai in zip(cc.r_coeffs, cc.t_coeffs, kd.a_adapted):
        if ri != ti - ai * cc.eta_prime:
            raise InternalCheckError("basis change between rim coefficients violated")
    return cc


def canonical_square(cc: CanonicalClass, problem: FibreSumProblem) -> KSquareCheck:
    """Square of the canonical class by block evaluation, checked against
    the closed formula K_M^2 + K_N^2 + (8g - 8).

    The rim and split coefficients contribute nothing: rim tori have
    square zero and pair off only against split classes, whose
    coefficients vanish.
    """
    M, N, g = problem.M, problem.N, problem.genus
    b_sq = M.B_squared + N.B_squared
    value = (
        cc.kbar_m_sq
        + cc.kbar_n_sq
        + cc.b_coeff * cc.b_coeff * b_sq
        + 2 * cc.b_coeff * cc.sigma_coeff
    )
    target = M.K_squared + N.K_squared + 8 * g - 8
    check = KSquareCheck(value=value, target=target)
    if not check.ok:
        raise InternalCheckError(
            f"canonical-class square {value} disagrees with the closed formula {target}"
        )
    return check


def assemble_intersection_form(problem: FibreSumProblem, cc: CanonicalClass) -> BlockForm:
    """The block intersection form of the sum.

    The parity of each pair block is forced by the characteristic
    property of the canonical class: S_i^2 = K.S_i = r_i (mod 2).
    """
    _require_scope(problem)
    M, N = problem.M, problem.N
    bf = BlockForm(
        pm_block=PBlock(rank=M.b2 - 2, signature=M.signature, parity=M.p_parity),
        pn_block=PBlock(rank=N.b2 - 2, signature=N.signature, parity=N.p_parity),
        pair_blocks=tuple(PairBlock(s_sq_parity=ri % 2) for ri in cc.r_coeffs),
        nucleus_block=NucleusBlock(b_sq=M.B_squared + N.B_squared),
    )
    betti = engine.betti_numbers(problem)
    if bf.rank != betti.b2 or bf.signature != betti.sigma:
        raise InternalCheckError(
            f"block form totals (rank {bf.rank}, signature {bf.signature}) disagree "
            f"with the Betti numbers (b2 {betti.b2}, sigma {betti.sigma})"
        )
    return bf


def classify_form(bf: BlockForm, cc: CanonicalClass) -> FormClass:
    """Unimodular classification of the assembled form.

    Indefinite forms are classified by rank, signature and parity: odd
    ones are diagonal, even ones split into hyperbolic planes and copies
    of the rank-8 even definite form.  Definite forms are refused.
    """
    for block, label in ((bf.pm_block, "M"), (bf.pn_block, "N")):
        if block.parity == "unknown":
            raise InputDataError(
                f"p_parity of side {label} is unknown; classification needs it"
            )
    b_sq = bf.nucleus_block.b_sq
    k_dot_b = cc.b_coeff * b_sq + cc.sigma_coeff
    if (k_dot_b - b_sq) % 2 != 0:
        raise InternalCheckError(
            "characteristic property violated on the nucleus: K.B_X != B_X^2 (mod 2)"
        )
    even = (
        bf.pm_block.parity == "even"
        and bf.pn_block.parity == "even"
        and all(p.s_sq_parity == 0 for p in bf.pair_blocks)
        and b_sq % 2 == 0
    )
    rank, signature = bf.rank, bf.signature
    if (rank + signature) % 2 != 0 or abs(signature) > rank:
        raise InputDataError(f"impossible rank/signature pair ({rank}, {signature})")
    b2_plus = (rank + signature) // 2
    b2_minus = (rank - signature) // 2

    if b2_plus == 0 or b2_minus == 0:
        text = "definite: classification out of scope"
        return FormClass(rank, signature, "even" if even else "odd", ((text, 1),), text)

    if not even:
        summands = ((f"<+1>", b2_plus), (f"<-1>", b2_minus))
        text = f"{b2_plus}<+1> + {b2_minus}<-1>"
        return FormClass(rank, signature, "odd", summands, text)

    if signature % 8 != 0:
        raise InputDataError(
            f"even form with signature {signature} not divisible by 8: inconsistent input"
        )
    e8_count = abs(signature) // 8
    e8_sign = "-1" if signature < 0 else "+1"
    h_count = b2_plus if signature <= 0 else b2_minus
    parts: list[tuple[str, int]] = []
    bits: list[str] = []
    if h_count:
        parts.append(("H", h_count))
        bits.append(f"{h_count}H")
    if e8_count:
        parts.append((f"E8({e8_sign})", e8_count))
        bits.append(f"{e8_count}E8({e8_sign})")
    text = " + ".join(bits) if bits else "0"
    return FormClass(rank, signature, "even", tuple(parts), text)


def divisibility(cc: CanonicalClass) -> Divisibility:
    """gcd of all coefficients of the canonical class.

    A coefficient of 0 is the zero class and constrains nothing
    (gcd(0, x) = x).  When either perpendicular divisibility is unknown
    the result is only a necessary-condition bound.
    """
    values = [cc.b_coeff, cc.sigma_coeff, *cc.r_coeffs]
    exact = cc.kbar_m_div is not None and cc.kbar_n_div is not None
    if cc.kbar_m_div is not None:
        values.append(cc.kbar_m_div)
    if cc.kbar_n_div is not None:
        values.append(cc.kbar_n_div)
    return Divisibility(value=math.gcd(*values), exact=exact)


def ionel_parker_checks(problem: FibreSumProblem, cc: CanonicalClass) -> tuple[CheckLine, ...]:
    """Cross-checks of the canonical class against the known pairings:
    with the sewn dual surface, the push-off, and the rim tori."""
    M, N, g = problem.M, problem.N, problem.genus
    b_sq = M.B_squared + N.B_squared
    lines = (
        CheckLine(
            name="K_X.B_X == K_M.B_M + K_N.B_N + 2",
            lhs=cc.b_coeff * b_sq + cc.sigma_coeff,
            rhs=M.K_dot_B + N.K_dot_B + 2,
        ),
        CheckLine(name="K_X.Sigma_X == 2g - 2", lhs=cc.b_coeff, rhs=2 * g - 2),
        CheckLine(
            name="K_X.R == 0 on all rim tori",
            lhs=sum(abs(s) for s in cc.s_coeffs),
            rhs=0,
        ),
    )
    for line in lines:
        if not line.ok:
            raise InternalCheckError(f"cross-check failed: {line.name} ({line.lhs} vs {line.rhs})")
    return lines


def embed_h2(
    problem: FibreSumProblem,
    cls: tuple[object, int, int],
    side: str,
) -> EmbeddedClass:
    """Image of a second-cohomology class of one side inside the sum.

    ``cls`` is the triple (perpendicular part or tag, pairing with the
    surface class, pairing with the dual class).  The perpendicular part
    passes through unchanged; the dual-class coefficient becomes the
    coefficient on the sewn surface, and the push-off coefficient is the
    dual pairing corrected by the dual square.  The N side lands on the
    other push-off, which differs by the gluing rim torus.
    """
    _require_scope(problem)
    if side not in ("M", "N"):
        raise ValueError(f"side must be 'M' or 'N', got {side!r}")
    perp, c_sigma, c_b = cls
    b_squared = problem.M.B_squared if side == "M" else problem.N.B_squared
    return EmbeddedClass(
        perp=perp,
        b_x=c_sigma,
        sigma=c_b - b_squared * c_sigma,
        sigma_basis="Sigma_X" if side == "M" else "Sigma_X_prime",
    )
