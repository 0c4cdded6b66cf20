"""Order-3 recurrences with a double zero, and the odd-N deduction.

The u-sequence starts 0, 0, 1 and obeys u_j = c1 u_{j-1} - c2 u_{j-2} + c3 u_{j-3};
it is the Segre sequence shifted by two places. A positive run u_2..u_{m-1}
followed by u_m = u_{m+1} = 0 forces m in {4, 6}, and the characteristic
polynomial t^3 - c1 t^2 + c2 t - c3 then divides t^m - d with
d = c3 u_{m-1} a perfect m-th power. This module checks those facts
numerically and builds the certificate that settles odd N in codimension 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .casegen import admissible_case
from .errors import LemmaAnomaly, PreconditionError

ALLOWED_PATTERN_INDICES = (4, 6)
DEFAULT_HORIZON = 60


def _check_positive(c1: int, c2: int, c3: int) -> None:
    if min(c1, c2, c3) < 1:
        raise PreconditionError(f"coefficients must be positive, got ({c1}, {c2}, {c3})")


def u_sequence(c1: int, c2: int, c3: int, L: int) -> tuple[int, ...]:
    """Return u_0..u_L."""
    _check_positive(c1, c2, c3)
    if L < 2:
        raise PreconditionError(f"L must be at least 2, got {L}")
    u = [0, 0, 1]
    for _ in range(3, L + 1):
        u.append(c1 * u[-1] - c2 * u[-2] + c3 * u[-3])
    return tuple(u)


def char_poly(c1: int, c2: int, c3: int) -> tuple[int, ...]:
    """Coefficients of t^3 - c1 t^2 + c2 t - c3, highest degree first."""
    return (1, -c1, c2, -c3)


def find_double_zero(c1: int, c2: int, c3: int, horizon: int = DEFAULT_HORIZON) -> Optional[int]:
    """Smallest m > 2 with u_2..u_{m-1} > 0 and u_m = u_{m+1} = 0.

    Returns None if the positive run breaks any other way or if u_horizon
    is reached without a double zero.
    """
    _check_positive(c1, c2, c3)
    if horizon <= 3:
        raise PreconditionError(f"horizon must exceed 3, got {horizon}")
    a, b, u = 0, 0, 1  # u_{j-2}, u_{j-1}, u_j at j = 2
    for j in range(3, horizon + 1):
        a, b, u = b, u, c1 * u - c2 * b + c3 * a
        if u > 0:
            continue
        if u < 0 or j + 1 > horizon:
            return None
        nxt = c1 * u - c2 * b + c3 * a
        return j if nxt == 0 else None
    return None


def integer_nth_root(d: int, m: int) -> Optional[int]:
    """k with k**m == d, or None when d is not a perfect m-th power."""
    if d < 1 or m < 1:
        raise PreconditionError(f"need d >= 1 and m >= 1, got d={d}, m={m}")
    if m == 1:
        return d
    # Newton's method from above converges to floor(d ** (1/m)).
    x = 1 << -(-d.bit_length() // m)
    while True:
        y = ((m - 1) * x + d // x ** (m - 1)) // m
        if y >= x:
            break
        x = y
    return x if x**m == d else None


def _trim(p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(p)
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def poly_divide(dividend: Sequence[int], divisor: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Long division by a monic integer polynomial.

    Polynomials are coefficient sequences, highest degree first. Returns
    (quotient, remainder) with ``deg remainder < deg divisor``.

    >>> poly_divide((1, 0, 0, 1), (1, -1))
    ((1, 1, 1), (2,))
    """
    num = list(_trim(dividend))
    den = _trim(divisor)
    if len(den) < 2:
        raise PreconditionError("divisor must have degree at least 1")
    if den[0] != 1:
        raise PreconditionError("divisor must be monic")
    if len(num) < len(den):
        return (0,), tuple(num)
    quot = []
    for i in range(len(num) - len(den) + 1):
        coef = num[i]
        quot.append(coef)
        if coef:
            for k in range(1, len(den)):
                num[i + k] -= coef * den[k]
    rem = _trim(num[len(num) - len(den) + 1 :])
    return tuple(quot), rem


@dataclass(frozen=True)
class LemmaReport:
    c: tuple[int, int, int]
    m: int
    d: int
    root: Optional[int]
    divides: bool
    classified: bool
    anomaly: Optional[str] = None


def verify_lemma_structure(c1: int, c2: int, c3: int, m: int) -> LemmaReport:
    """Check the consequences of a double zero at index m.

    Computes d = c3 * u_{m-1}, its integer m-th root, whether the
    characteristic polynomial divides t^m - d, and whether m is 4 or 6.
    Any failure is reported in ``anomaly``.
    """
    found = find_double_zero(c1, c2, c3, horizon=m + 1)
    if found != m:
        raise PreconditionError(f"({c1}, {c2}, {c3}) has no double zero at index {m}")
    u = u_sequence(c1, c2, c3, m + 1)
    d = c3 * u[m - 1]
    root = integer_nth_root(d, m)
    _, rem = poly_divide((1,) + (0,) * (m - 1) + (-d,), char_poly(c1, c2, c3))
    divides = rem == (0,)
    classified = m in ALLOWED_PATTERN_INDICES
    problems = []
    if root is None:
        problems.append(f"d={d} is not a perfect {m}-th power")
    if not divides:
        problems.append(f"characteristic polynomial does not divide t^{m} - {d} (remainder {rem})")
    if not classified:
        problems.append(f"pattern index {m} is not 4 or 6")
    return LemmaReport((c1, c2, c3), m, d, root, divides, classified, "; ".join(problems) or None)


def brute_force_classify(cmax: int, horizon: int = DEFAULT_HORIZON) -> dict[tuple[int, int, int], int]:
    """Map every triple in [1, cmax]^3 that has a double zero to its index."""
    found = {}
    for c1 in range(1, cmax + 1):
        for c2 in range(1, cmax + 1):
            for c3 in range(1, cmax + 1):
                m = find_double_zero(c1, c2, c3, horizon)
                if m is not None:
                    found[(c1, c2, c3)] = m
    return found


def classification_reports(found: dict[tuple[int, int, int], int], strict: bool = False) -> list[LemmaReport]:
    """Run the structural checks on a classification.

    With ``strict`` the first anomaly raises LemmaAnomaly.
    """
    reports = []
    for (c1, c2, c3), m in sorted(found.items()):
        rep = verify_lemma_structure(c1, c2, c3, m)
        if strict and rep.anomaly:
            raise LemmaAnomaly(f"({c1}, {c2}, {c3}), m={m}: {rep.anomaly}")
        reports.append(rep)
    return reports


@dataclass(frozen=True)
class DeductionRecord:
    """Why codimension 3 in P^N, N odd, admits no positive-defect candidate."""

    N: int
    n: int
    forced_defect: int
    pattern_index: int
    allowed_indices: tuple[int, ...]
    steps: tuple[str, ...]
    verdict: bool = True

    def as_dict(self) -> dict:
        return {
            "N": str(self.N),
            "n": str(self.n),
            "forced_defect": str(self.forced_defect),
            "pattern_index": str(self.pattern_index),
            "allowed_indices": [str(x) for x in self.allowed_indices],
            "steps": list(self.steps),
            "verdict": self.verdict,
        }


def theorem51_certificate(N: int) -> DeductionRecord:
    """Deduce the odd-N codimension-3 case without any search."""
    if N % 2 == 0:
        raise PreconditionError(f"N={N} is even; the deduction needs odd N")
    if N < 11:
        raise PreconditionError(f"N={N} is below 11")
    case = admissible_case(N, 3)
    n = case.n
    r = 2
    pattern_index = n + 1
    if pattern_index in ALLOWED_PATTERN_INDICES:  # pragma: no cover - n >= 8 here
        raise AssertionError("deduction does not apply")
    steps = (
        f"n = N - 3 = {n} is even, so a positive defect is even; with 0 < r <= 2 this forces r = 2",
        f"r = 2 requires s_{n - 1} = s_{n} = 0 and s_0..s_{n - 2} > 0, hence c1, c2, c3 > 0",
        f"with u_(j+2) = s_j the u-sequence has a positive run up to u_{n} and u_{n + 1} = u_{n + 2} = 0",
        f"so its double-zero index is {pattern_index}",
        f"a double-zero index must be 4 or 6, and {pattern_index} is neither",
        "no Chern numbers satisfy the positive-defect pattern; verdict True",
    )
    return DeductionRecord(N, n, r, pattern_index, ALLOWED_PATTERN_INDICES, steps)
