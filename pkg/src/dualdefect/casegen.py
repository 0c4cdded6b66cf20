"""Arithmetic constraints on admissible cases and candidate Chern numbers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConstraintError, PreconditionError

PLAIN = "plain"
CHAINED = "chained"
BOUND_VARIANTS = (PLAIN, CHAINED)


@dataclass(frozen=True)
class CaseSpec:
    """A codimension-m subvariety of P^N, of dimension n = N - m."""

    N: int
    m: int

    @property
    def n(self) -> int:
        return self.N - self.m


@dataclass(frozen=True)
class DefectBranch:
    r: int
    c1: int


@dataclass(frozen=True)
class BoundsVector:
    """Upper bounds for c_2..c_m.

    ``B`` always holds the static bounds ``c1**j``. Under the chained
    variant enumeration additionally enforces ``c_j <= c1 * c_{j-1}``.
    """

    c1: int
    B: tuple[int, ...]
    variant: str = CHAINED

    @property
    def m(self) -> int:
        return len(self.B) + 1

    def upper(self, j: int, previous: int) -> int:
        """Largest admissible c_j given c_{j-1} = ``previous`` (j >= 2)."""
        if self.variant == CHAINED:
            return min(self.B[j - 2], self.c1 * previous)
        return self.B[j - 2]

    def admits(self, c: Sequence[int]) -> bool:
        if len(c) != self.m or c[0] != self.c1:
            return False
        return all(0 <= c[j - 1] <= self.upper(j, c[j - 2]) for j in range(2, self.m + 1))


@dataclass(frozen=True)
class ChernTuple:
    case: CaseSpec
    branch: DefectBranch
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) != self.case.m:
            raise PreconditionError(f"expected {self.case.m} Chern numbers, got {len(self.c)}")
        if self.c[0] != self.branch.c1:
            raise PreconditionError("c_1 must equal the branch's forced value")
        if any(x < 0 for x in self.c):
            raise PreconditionError("Chern numbers must be nonnegative")


def admissible_case(N: int, m: int) -> CaseSpec:
    """Validate an (N, m) target.

    Raises ConstraintError naming the first failed inequality among
    ``m >= 3``, ``N >= 10`` and ``N >= 4m - 2`` (the last is
    ``N - m >= (3N - 2)/4`` cleared of denominators).
    """
    if m < 3:
        raise ConstraintError("m >= 3", f"codimension m={m} is below 3")
    if N < 10:
        raise ConstraintError("N >= 10", f"N={N} is below 10")
    if N < 4 * m - 2:
        raise ConstraintError(
            "N >= 4m - 2", f"N={N} < 4m - 2 = {4 * m - 2}: dimension {N - m} < (3N - 2)/4"
        )
    return CaseSpec(N, m)


def defect_branches(case: CaseSpec) -> list[DefectBranch]:
    """All positive defects r <= m - 1 with the parity of n, and their c_1."""
    n = case.n
    return [DefectBranch(r, (n - r) // 2) for r in range(1, case.m) if (n - r) % 2 == 0]


def chern_bounds(c1: int, m: int, variant: str = CHAINED) -> BoundsVector:
    if c1 < 1 or m < 3:
        raise PreconditionError(f"need c1 >= 1 and m >= 3, got c1={c1}, m={m}")
    if variant not in BOUND_VARIANTS:
        raise PreconditionError(f"unknown bound variant {variant!r}")
    return BoundsVector(c1, tuple(c1**j for j in range(2, m + 1)), variant)


def log_concavity_ok(c: ChernTuple | Sequence[int]) -> bool:
    """Log-concavity with no internal zeros of (1, c_1, ..., c_m)."""
    seq = (1,) + tuple(c.c if isinstance(c, ChernTuple) else c)
    for j in range(1, len(seq) - 1):
        if seq[j] * seq[j] < seq[j - 1] * seq[j + 1]:
            return False
    seen_zero = False
    for x in seq:
        if x == 0:
            seen_zero = True
        elif seen_zero:
            return False
    return True


def degree_bound(N: int, m: int, r: int) -> int:
    """Largest possible degree of a positive-defect X with defect r."""
    case = admissible_case(N, m)
    if r not in {b.r for b in defect_branches(case)}:
        raise PreconditionError(f"r={r} is not a valid defect for N={N}, m={m}")
    c1 = (N - m - r) // 2
    return sum(c1**j for j in range(m + 1))


def degree_of(c: ChernTuple | Sequence[int]) -> int:
    """deg X = 1 + c_1 + ... + c_m."""
    return 1 + sum(c.c if isinstance(c, ChernTuple) else c)
