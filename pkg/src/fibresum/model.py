"""Data model for fibre-sum problems.

A problem is two manifold sides glued along a genus-g surface, plus the
gluing vector a (pairings of the gluing class with a basis of the surface's
first homology) and an optional t-vector of rim coefficients.  Sides are
described purely algebraically: Betti data, the torsion of H_1, pairing
numbers of the canonical class, and the matrix of the embedding on first
homology.

K.Sigma is deliberately not an input: the adjunction formula forces it to
2g-2 for symplectic surfaces, and storing it would invite inconsistent
documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any, Sequence

from . import intlat
from .intlat import IntMatrix

__all__ = [
    "ManifoldSide",
    "GluingClass",
    "FibreSumProblem",
    "BettiNumbers",
    "DocumentError",
    "validate_side",
    "validate_problem",
    "elliptic_surface",
    "parse_problem",
    "parse_side",
    "side_to_dict",
    "problem_to_dict",
]

PARITIES = ("even", "odd", "unknown")


class DocumentError(ValueError):
    """A problem document violates the schema or the model invariants."""

    def __init__(self, messages: Sequence[str]):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


@dataclass(frozen=True)
class ManifoldSide:
    """One summand of the fibre sum.

    ``k`` is the divisibility of the surface class, ``embedding_free`` the
    ``b1 x 2g`` matrix of the embedding on the free part of first homology
    (columns indexed by the surface basis gamma_1..gamma_2g), and
    ``embedding_torsion`` one (modulus, row) pair per torsion factor of
    H_1.  ``kbar_divisibility`` is the divisibility of the perpendicular
    part of the canonical class, with 0 meaning the zero class (gcd(0, x)
    = x semantics) and None meaning unknown.
    """

    name: str
    b1: int
    h1_torsion: tuple[int, ...]
    b2_plus: int
    b2_minus: int
    K_squared: int
    K_dot_B: int
    B_squared: int
    genus: int
    k: int
    embedding_free: IntMatrix
    embedding_torsion: tuple[tuple[int, tuple[int, ...]], ...] = ()
    p_parity: str = "unknown"
    kbar_divisibility: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "h1_torsion", tuple(int(t) for t in self.h1_torsion))
        object.__setattr__(
            self,
            "embedding_torsion",
            tuple((int(m), tuple(int(x) for x in row)) for m, row in self.embedding_torsion),
        )

    @property
    def b2(self) -> int:
        return self.b2_plus + self.b2_minus

    @property
    def euler(self) -> int:
        return 2 - 2 * self.b1 + self.b2

    @property
    def signature(self) -> int:
        return self.b2_plus - self.b2_minus


@dataclass(frozen=True)
class GluingClass:
    """The integer vector a with a_i the pairing of the gluing class with
    the i-th surface basis curve; it determines the gluing diffeomorphism
    up to isotopy."""

    a: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))


@dataclass(frozen=True)
class FibreSumProblem:
    """Two sides, a gluing vector, and an optional t-vector.

    ``t`` is the vector of symmetric-basis rim coefficients (pairings of
    the two canonical classes with matched bounding surfaces); ``None``
    means "default to zero", which is only correct under geometric
    hypotheses such as vanishing-cycle disks in cusp neighbourhoods.  The
    reports carry an explicit warning when the default is used.
    """

    M: ManifoldSide
    N: ManifoldSide
    gluing: GluingClass
    t: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.t is not None:
            object.__setattr__(self, "t", tuple(int(x) for x in self.t))

    @property
    def genus(self) -> int:
        return self.M.genus


@dataclass(frozen=True)
class BettiNumbers:
    b0: int
    b1: int
    b2: int
    b3: int
    b4: int
    b2_plus: int
    b2_minus: int
    e: int
    sigma: int
    d: int

    def __post_init__(self) -> None:
        ok = (
            self.b0 == 1
            and self.b4 == 1
            and self.b1 == self.b3
            and self.b2 == self.b2_plus + self.b2_minus
            and self.e == 2 - 2 * self.b1 + self.b2
            and self.sigma == self.b2_plus - self.b2_minus
        )
        if not ok:
            raise ValueError(f"inconsistent Betti data: {self}")


def _is_divisibility_chain(factors: Sequence[int]) -> bool:
    if any(t < 2 for t in factors):
        return False
    return all(b % a == 0 for a, b in zip(factors, factors[1:]))


def validate_side(side: ManifoldSide) -> list[str]:
    """All violated invariants of one side; empty means valid."""
    v: list[str] = []
    if side.b1 < 0:
        v.append("b1 must be nonnegative")
    if side.genus < 0:
        v.append("genus must be nonnegative")
    if side.k < 1:
        v.append("k must be a positive integer")
    if side.b2 < 2:
        v.append(f"b2 >= 2 required (the surface and its dual section must exist), got b2 = {side.b2}")
    if side.b2_plus < 1 or side.b2_minus < 1:
        v.append(
            "b2_plus >= 1 and b2_minus >= 1 required "
            "(the nucleus block [[B^2,1],[1,0]] has signature zero)"
        )
    expected_k2 = 2 * side.euler + 3 * side.signature
    if side.K_squared != expected_k2:
        v.append(f"K_squared != 2e+3*sigma (needs {expected_k2}, got {side.K_squared})")
    if (side.K_dot_B - side.B_squared) % 2 != 0:
        v.append(
            f"K_dot_B = B_squared (mod 2) required since K is characteristic "
            f"(got {side.K_dot_B} vs {side.B_squared})"
        )
    if not _is_divisibility_chain(side.h1_torsion):
        v.append(f"h1_torsion must be a divisibility chain of factors >= 2, got {list(side.h1_torsion)}")
    two_g = 2 * side.genus
    if side.embedding_free.rows != side.b1 or side.embedding_free.cols != two_g:
        v.append(
            f"embedding_free must be {side.b1} x {two_g}, "
            f"got {side.embedding_free.rows} x {side.embedding_free.cols}"
        )
    moduli = tuple(m for m, _ in side.embedding_torsion)
    if moduli != side.h1_torsion:
        v.append(
            f"embedding_torsion moduli must match h1_torsion exactly "
            f"(got {list(moduli)} vs {list(side.h1_torsion)})"
        )
    for idx, (_, row) in enumerate(side.embedding_torsion):
        if len(row) != two_g:
            v.append(f"embedding_torsion[{idx}].row must have length {two_g}, got {len(row)}")
    if side.p_parity not in PARITIES:
        v.append(f"p_parity must be one of {PARITIES}, got {side.p_parity!r}")
    if side.kbar_divisibility is not None and side.kbar_divisibility < 0:
        v.append("kbar_divisibility must be nonnegative or unknown")
    return v


def stacked_free_embedding(problem: FibreSumProblem) -> IntMatrix:
    """The (b1(M)+b1(N)) x 2g matrix of both free-part embeddings."""
    return IntMatrix.vstack([problem.M.embedding_free, problem.N.embedding_free])


def kernel_dimension(problem: FibreSumProblem) -> int:
    """d = 2g - rank of the stacked free embedding matrix.

    Torsion rows are deliberately excluded: d is defined over the reals.
    """
    return 2 * problem.genus - intlat.rank(stacked_free_embedding(problem))


def validate_problem(problem: FibreSumProblem) -> list[str]:
    """Side violations plus the cross-side invariants of the problem."""
    v = [f"M: {msg}" for msg in validate_side(problem.M)]
    v += [f"N: {msg}" for msg in validate_side(problem.N)]
    if problem.M.genus != problem.N.genus:
        v.append(f"genus mismatch: M has g={problem.M.genus}, N has g={problem.N.genus}")
        return v
    two_g = 2 * problem.genus
    if len(problem.gluing.a) != two_g:
        v.append(f"gluing.a must have length 2g = {two_g}, got {len(problem.gluing.a)}")
    if v:
        return v
    if problem.t is not None:
        d = kernel_dimension(problem)
        if len(problem.t) != d:
            v.append(f"t must have length d = {d}, got {len(problem.t)}")
    return v


def elliptic_surface(n: int) -> ManifoldSide:
    """Catalog side E(n): the simply connected elliptic surface without
    multiple fibres, with the general fibre as the gluing surface.

    The section sphere plays the role of the dual class B: it has square
    -n and pairs with the canonical class as n-2.  The perpendicular part
    of the canonical class vanishes, hence kbar_divisibility = 0.
    """
    if n < 1:
        raise ValueError(f"elliptic_surface requires n >= 1, got {n}")
    return ManifoldSide(
        name=f"E({n})",
        b1=0,
        h1_torsion=(),
        b2_plus=2 * n - 1,
        b2_minus=10 * n - 1,
        K_squared=0,
        K_dot_B=n - 2,
        B_squared=-n,
        genus=1,
        k=1,
        embedding_free=IntMatrix.zeros(0, 2),
        embedding_torsion=(),
        p_parity="even",
        kbar_divisibility=0,
    )


# -- document schema ---------------------------------------------------------

_SIDE_REQUIRED = ("b1", "b2_plus", "b2_minus", "K_squared", "K_dot_B", "B_squared", "genus", "k")
_SIDE_OPTIONAL = (
    "name",
    "h1_torsion",
    "embedding_free",
    "embedding_torsion",
    "p_parity",
    "kbar_divisibility",
)


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError([f"{where}: expected an integer, got {value!r}"])
    return value


def _as_int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list):
        raise DocumentError([f"{where}: expected a list of integers, got {value!r}"])
    return [_as_int(x, where) for x in value]


def parse_side(doc: Any, where: str) -> ManifoldSide:
    """One side from its document; either full data or a catalog reference."""
    if not isinstance(doc, dict):
        raise DocumentError([f"{where}: expected an object, got {doc!r}"])
    if "catalog" in doc:
        extra = set(doc) - {"catalog", "n"}
        if extra:
            raise DocumentError([f"{where}: unknown field(s) with catalog reference: {sorted(extra)}"])
        if doc["catalog"] != "E":
            raise DocumentError([f"{where}.catalog: unknown catalog {doc['catalog']!r} (supported: 'E')"])
        n = _as_int(doc.get("n"), f"{where}.n")
        try:
            return elliptic_surface(n)
        except ValueError as exc:
            raise DocumentError([f"{where}.n: {exc}"]) from exc

    unknown = set(doc) - set(_SIDE_REQUIRED) - set(_SIDE_OPTIONAL)
    if unknown:
        raise DocumentError([f"{where}: unknown field(s) {sorted(unknown)}"])
    missing = [key for key in _SIDE_REQUIRED if key not in doc]
    if missing:
        raise DocumentError([f"{where}: missing required field(s) {missing}"])

    b1 = _as_int(doc["b1"], f"{where}.b1")
    genus = _as_int(doc["genus"], f"{where}.genus")
    two_g = 2 * genus

    free_rows = doc.get("embedding_free")
    if free_rows is None:
        embedding_free = IntMatrix.zeros(b1, two_g)
    else:
        if not isinstance(free_rows, list):
            raise DocumentError([f"{where}.embedding_free: expected an array of rows"])
        rows = [_as_int_list(r, f"{where}.embedding_free") for r in free_rows]
        if len(rows) != b1 or any(len(r) != two_g for r in rows):
            raise DocumentError([f"{where}.embedding_free: expected {b1} rows of length {two_g}"])
        embedding_free = IntMatrix.from_rows(rows, cols=two_g)

    h1_torsion = tuple(_as_int_list(doc.get("h1_torsion", []), f"{where}.h1_torsion"))

    torsion_doc = doc.get("embedding_torsion")
    if torsion_doc is None:
        embedding_torsion = tuple((m, (0,) * two_g) for m in h1_torsion)
    else:
        if not isinstance(torsion_doc, list):
            raise DocumentError([f"{where}.embedding_torsion: expected an array of objects"])
        pairs = []
        for idx, item in enumerate(torsion_doc):
            spot = f"{where}.embedding_torsion[{idx}]"
            if not isinstance(item, dict) or set(item) != {"modulus", "row"}:
                raise DocumentError([f"{spot}: expected an object with fields 'modulus' and 'row'"])
            pairs.append(
                (_as_int(item["modulus"], f"{spot}.modulus"), tuple(_as_int_list(item["row"], f"{spot}.row")))
            )
        embedding_torsion = tuple(pairs)

    parity = doc.get("p_parity", "unknown")
    if parity not in PARITIES:
        raise DocumentError([f"{where}.p_parity: expected one of {PARITIES}, got {parity!r}"])

    kbar = doc.get("kbar_divisibility")
    if kbar == "unknown":
        kbar = None
    if kbar is not None:
        kbar = _as_int(kbar, f"{where}.kbar_divisibility")

    name = doc.get("name", where)
    if not isinstance(name, str):
        raise DocumentError([f"{where}.name: expected a string"])

    return ManifoldSide(
        name=name,
        b1=b1,
        h1_torsion=h1_torsion,
        b2_plus=_as_int(doc["b2_plus"], f"{where}.b2_plus"),
        b2_minus=_as_int(doc["b2_minus"], f"{where}.b2_minus"),
        K_squared=_as_int(doc["K_squared"], f"{where}.K_squared"),
        K_dot_B=_as_int(doc["K_dot_B"], f"{where}.K_dot_B"),
        B_squared=_as_int(doc["B_squared"], f"{where}.B_squared"),
        genus=genus,
        k=_as_int(doc["k"], f"{where}.k"),
        embedding_free=embedding_free,
        embedding_torsion=embedding_torsion,
        p_parity=parity,
        kbar_divisibility=kbar,
    )


def parse_problem(document: Any) -> FibreSumProblem:
    """A fully validated problem from a document (dict or JSON text)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise DocumentError([f"not valid JSON: {exc}"]) from exc
    if not isinstance(document, dict):
        raise DocumentError(["top level: expected an object"])
    unknown = set(document) - {"M", "N", "gluing", "t"}
    if unknown:
        raise DocumentError([f"top level: unknown field(s) {sorted(unknown)}"])
    for key in ("M", "N", "gluing"):
        if key not in document:
            raise DocumentError([f"top level: missing required field '{key}'"])

    side_m = parse_side(document["M"], "M")
    side_n = parse_side(document["N"], "N")

    gluing_doc = document["gluing"]
    if not isinstance(gluing_doc, dict) or set(gluing_doc) != {"a"}:
        raise DocumentError(["gluing: expected an object with the single field 'a'"])
    gluing = GluingClass(tuple(_as_int_list(gluing_doc["a"], "gluing.a")))

    t_doc = document.get("t")
    t = None if t_doc is None else tuple(_as_int_list(t_doc, "t"))

    problem = FibreSumProblem(M=side_m, N=side_n, gluing=gluing, t=t)
    violations = validate_problem(problem)
    if violations:
        raise DocumentError(violations)
    return problem


def side_to_dict(side: ManifoldSide) -> dict[str, Any]:
    return {
        "name": side.name,
        "b1": side.b1,
        "h1_torsion": list(side.h1_torsion),
        "b2_plus": side.b2_plus,
        "b2_minus": side.b2_minus,
        "K_squared": side.K_squared,
        "K_dot_B": side.K_dot_B,
        "B_squared": side.B_squared,
        "genus": side.genus,
        "k": side.k,
        "embedding_free": side.embedding_free.to_rows(),
        "embedding_torsion": [
            {"modulus": m, "row": list(row)} for m, row in side.embedding_torsion
        ],
        "p_parity": side.p_parity,
        "kbar_divisibility": side.kbar_divisibility,
    }


def problem_to_dict(problem: FibreSumProblem) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "M": side_to_dict(problem.M),
        "N": side_to_dict(problem.N),
        "gluing": {"a": list(problem.gluing.a)},
    }
    if problem.t is not None:
        doc["t"] = list(problem.t)
    return doc


def with_t(problem: FibreSumProblem, t: Sequence[int] | None) -> FibreSumProblem:
    """A copy of the problem with the t-vector replaced (validated)."""
    updated = replace(problem, t=None if t is None else tuple(int(x) for x in t))
    violations = validate_problem(updated)
    if violations:
        raise DocumentError(violations)
    return updated
