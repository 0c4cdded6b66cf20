"""Exact evaluation of the Segre recurrence driven by Chern numbers.

Given nonnegative integers ``c = (c_1, ..., c_m)`` the sequence is

    s_0 = 1,    s_j = sum_{q=1}^{min(j, m)} (-1)^(q+1) c_q s_{j-q}.

Everything is computed with Python integers; terms grow roughly like
``c_1**j`` and a zero test on a rounded value would be meaningless.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Optional, Sequence

from .errors import PreconditionError

NONPOSITIVE_IN_PREFIX = "nonpositive-in-prefix"
NONZERO_IN_TAIL = "nonzero-in-tail"


def _validate_coefficients(c: Sequence[int]) -> tuple[int, ...]:
    c = tuple(c)
    if len(c) < 1:
        raise PreconditionError("need at least one coefficient")
    for x in c:
        if not isinstance(x, int) or isinstance(x, bool):
            raise PreconditionError(f"coefficients must be integers, got {x!r}")
        if x < 0:
            raise PreconditionError(f"coefficients must be nonnegative, got {x}")
    return c


def signed_coefficients(c: Sequence[int]) -> tuple[int, ...]:
    """Return ``((-1)**(q+1) * c_q for q = 1..m)``."""
    return tuple(x if q % 2 == 0 else -x for q, x in enumerate(c))


def iter_segre(c: Sequence[int]) -> Iterator[int]:
    """Yield s_0, s_1, ... forever, keeping only the last m terms.

    Missing coefficients in the first m - 1 steps are treated as zero,
    which reproduces the truncated sums for j < m.
    """
    c = _validate_coefficients(c)
    sc = signed_coefficients(c)
    m = len(sc)
    # window[0] is the newest term; zeros stand in for s_{-1}, s_{-2}, ...
    window = deque([0] * m, maxlen=m)
    window.appendleft(1)
    yield 1
    while True:
        nxt = 0
        for coef, term in zip(sc, window):
            if coef:
                nxt += coef * term
        window.appendleft(nxt)
        yield nxt


def segre_sequence(c: Sequence[int], L: int) -> tuple[int, ...]:
    """Return ``(s_0, ..., s_L)``.

    >>> segre_sequence((4, 8, 8), 7)
    (1, 4, 8, 8, 0, 0, 64, 256)
    """
    if L < 0:
        raise PreconditionError(f"L must be nonnegative, got {L}")
    return tuple(islice(iter_segre(c), L + 1))


@dataclass(frozen=True)
class PatternVerdict:
    """Outcome of testing the positive-prefix / zero-tail pattern.

    ``terms`` holds ``s_0..s_n`` when the pattern is accepted and evidence
    was requested; on rejection it holds the terms up to the violation.
    """

    accepted: bool
    violation_index: Optional[int] = None
    violation_kind: Optional[str] = None
    terms: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.accepted != (self.violation_index is None):
            raise ValueError("accepted must hold exactly when there is no violation")


def check_pattern(c: Sequence[int], n: int, r: int, evidence: bool = True) -> PatternVerdict:
    """Test ``s_j > 0`` for ``0 <= j <= n - r`` and ``s_j = 0`` for ``n - r < j <= n``.

    Terms are generated one at a time and the scan stops at the first
    violated constraint.
    """
    if not (1 <= r <= n):
        raise PreconditionError(f"need 1 <= r <= n, got n={n}, r={r}")
    last_positive = n - r
    seen: Optional[list[int]] = [] if evidence else None
    for j, s in enumerate(iter_segre(c)):
        if seen is not None:
            seen.append(s)
        if j <= last_positive:
            if s <= 0:
                return PatternVerdict(False, j, NONPOSITIVE_IN_PREFIX, _freeze(seen))
        elif s != 0:
            return PatternVerdict(False, j, NONZERO_IN_TAIL, _freeze(seen))
        if j == n:
            return PatternVerdict(True, terms=_freeze(seen))
    raise AssertionError("unreachable")  # pragma: no cover


def _freeze(seen):
    return None if seen is None else tuple(seen)
