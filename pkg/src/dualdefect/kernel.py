"""Enumeration engine for one defect branch over a slice of c_2 values.

Tuples are visited lexicographically with c_2 outermost. The terms
s_0..s_{m-1} depend only on (c_1, ..., c_{m-1}) and are shared by the whole
innermost loop; s_m is affine in c_m, so the innermost values that fail at
index m form an interval and are counted without being visited. Survivors
are split in two. Positivity of s_0..s_J is monotone in c_m: with
S(x) = sum s_j x^j = 1 / (1 - c_1 x + c_2 x^2 - ...), one has
dS/dc_q = (-1)^(q+1) x^q S(x)^2, so while s_0..s_{J-1} > 0 the term s_J moves
in the direction (-1)^(m+1) as c_m grows. The values whose terms stay
positive into the tail therefore form a block at one end of the range,
located by bisection and rejected in bulk; the rest are stepped one term
at a time with early exit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .casegen import CHAINED

# Innermost ranges at most this long are stepped value by value, which is
# cheaper than bisection when most values die within a few terms.
_BLOCK_THRESHOLD = 16


@dataclass
class ScanResult:
    enumerated: int = 0
    pruned_early: int = 0
    accepted: list = field(default_factory=list)

    def merge(self, other: "ScanResult") -> None:
        self.enumerated += other.enumerated
        self.pruned_early += other.pruned_early
        self.accepted.extend(other.accepted)


def completions(c1: int, m: int, variant: str, k: int, value: int) -> int:
    """Number of (c_{k+1}, ..., c_m) completing a prefix ending in c_k = ``value``."""
    if variant == CHAINED:
        return _chained_completions(c1, m, k, value)
    total = 1
    for j in range(k + 1, m + 1):
        total *= c1**j + 1
    return total


@lru_cache(maxsize=None)
def _chained_completions(c1: int, m: int, k: int, value: int) -> int:
    if k == m:
        return 1
    hi = c1 * value
    if k == m - 1:
        return hi + 1
    return sum(_chained_completions(c1, m, k + 1, v) for v in range(hi + 1))


def _upper(c1: int, j: int, previous: int, variant: str) -> int:
    if variant == CHAINED:
        return c1 * previous
    return c1**j


class BranchScanner:
    """Scan all tuples (c_1, c_2, ..., c_m) of one branch with c_2 in a slice.

    Every tuple inside the active bounds is accounted for exactly once:
    either accepted, or rejected with the index of its first pattern
    violation (``pruned_early`` counts violations before index n).
    """

    def __init__(
        self, m: int, c1: int, n: int, r: int, variant: str, block_threshold: int = _BLOCK_THRESHOLD
    ):
        self.m = m
        self.c1 = c1
        self.n = n
        self.r = r
        self.last_positive = n - r
        self.variant = variant
        self.block_threshold = block_threshold

    def _ok(self, j: int, s: int) -> bool:
        if j <= self.last_positive:
            return s > 0
        if j <= self.n:
            return s == 0
        return True

    def _reject_count(self, res: ScanResult, j: int, count: int) -> None:
        res.enumerated += count
        if j < self.n:
            res.pruned_early += count

    def _record(self, res: ScanResult, c: tuple, violation) -> None:
        if violation is None:
            res.enumerated += 1
            res.accepted.append(c)
        else:
            self._reject_count(res, violation, 1)

    def scan(self, c2_lo: int, c2_hi: int) -> ScanResult:
        res = ScanResult()
        m, c1 = self.m, self.c1
        c2_lo, c2_hi = max(c2_lo, 0), min(c2_hi, c1 * c1)
        if c2_lo > c2_hi:
            return res
        for j, s in ((0, 1), (1, c1)):
            if not self._ok(j, s):
                count = sum(completions(c1, m, self.variant, 2, v) for v in range(c2_lo, c2_hi + 1))
                self._reject_count(res, j, count)
                return res
        coeffs = [c1]
        terms = [1, c1]
        for c2 in range(c2_lo, c2_hi + 1):
            coeffs.append(c2)
            self._descend(2, coeffs, terms, res)
            coeffs.pop()
        return res

    def _descend(self, k: int, coeffs: list, terms: list, res: ScanResult) -> None:
        # coeffs holds c_1..c_k; terms holds s_0..s_{k-1}.
        m = self.m
        s_k = 0
        for q in range(1, k + 1):
            s_k += (coeffs[q - 1] if q % 2 else -coeffs[q - 1]) * terms[k - q]
        if not self._ok(k, s_k):
            self._reject_count(res, k, completions(self.c1, m, self.variant, k, coeffs[-1]))
            return
        terms.append(s_k)
        if k + 1 == m:
            self._innermost(coeffs, terms, res)
        else:
            hi = _upper(self.c1, k + 1, coeffs[-1], self.variant)
            for v in range(hi + 1):
                coeffs.append(v)
                self._descend(k + 1, coeffs, terms, res)
                coeffs.pop()
        terms.pop()

    def _innermost(self, coeffs: list, terms: list, res: ScanResult) -> None:
        # coeffs = c_1..c_{m-1}; terms = s_0..s_{m-1}.
        m, n = self.m, self.n
        hi = _upper(self.c1, m, coeffs[m - 2], self.variant)
        base = 0
        for q in range(1, m):
            base += (coeffs[q - 1] if q % 2 else -coeffs[q - 1]) * terms[m - q]
        sign = 1 if m % 2 else -1
        # s_m = base + sign * c_m, so the constraint at index m cuts an interval.
        if m > n:
            lo_ok, hi_ok = 0, hi
        elif m <= self.last_positive:
            if sign > 0:
                lo_ok, hi_ok = max(0, 1 - base), hi
            else:
                lo_ok, hi_ok = 0, min(hi, base - 1)
        else:
            zero = -base if sign > 0 else base
            lo_ok, hi_ok = (zero, zero) if 0 <= zero <= hi else (1, 0)
        survivors = max(0, hi_ok - lo_ok + 1)
        self._reject_count(res, m, hi + 1 - survivors)
        if survivors == 0:
            return
        prefix = tuple(coeffs[: m - 1])
        if m >= n:
            res.enumerated += survivors
            res.accepted.extend(prefix + (v,) for v in range(lo_ok, hi_ok + 1))
            return
        if m <= self.last_positive and survivors > self.block_threshold:
            self._scan_blocks(prefix, terms, base, sign, lo_ok, hi_ok, res)
            return
        for v in range(lo_ok, hi_ok + 1):
            c = prefix + (v,)
            self._record(res, c, self._first_violation(c, terms, base + sign * v))

    def _scan_blocks(self, prefix, terms, base, sign, lo, hi, res) -> None:
        """Split [lo, hi] into maximal runs of c_m sharing the same fate.

        The fate of c_m is (first j > m with s_j <= 0, whether that s_j is
        zero), with j = None if s_m..s_{n-r+1} are all positive. By the
        monotonicity above the fate is monotone in c_m, so each level set
        is an interval whose right end is found by bisection. Inside a
        level set s_j is strictly monotone in c_m, so it has at most one zero.
        """
        first_tail = self.last_positive + 1
        cache = {}

        def fate(v):
            f = cache.get(v)
            if f is None:
                f = cache[v] = self._fate(prefix + (v,), terms, base + sign * v, first_tail)
            return f

        v = lo
        while v <= hi:
            f = fate(v)
            if fate(hi) == f:
                u = hi
            else:
                a, b = v, hi
                while b - a > 1:
                    mid = (a + b) // 2
                    if fate(mid) == f:
                        a = mid
                    else:
                        b = mid
                u = a
            j, is_zero = f
            if j is None:
                # positive all the way to the first tail index
                self._reject_count(res, first_tail, u - v + 1)
            elif j == first_tail and is_zero:
                for w in range(v, u + 1):
                    c = prefix + (w,)
                    self._record(res, c, self._first_violation(c, terms, base + sign * w))
            else:
                self._reject_count(res, j, u - v + 1)
            v = u + 1

    def _fate(self, c, terms, s_m, stop: int):
        """(first j in (m, stop] with s_j <= 0, s_j == 0), or (None, False)."""
        m = self.m
        if m == 3:
            c1, c2, c3 = c
            a, b, s = terms[1], terms[2], s_m
            for j in range(4, stop + 1):
                a, b, s = b, s, c1 * s - c2 * b + c3 * a
                if s <= 0:
                    return j, s == 0
            return None, False
        scs = tuple(x if q % 2 == 0 else -x for q, x in enumerate(c))
        window = list(terms[1:]) + [s_m]
        for j in range(m + 1, stop + 1):
            s = 0
            for q in range(m):
                s += scs[q] * window[-1 - q]
            if s <= 0:
                return j, s == 0
            del window[0]
            window.append(s)
        return None, False

    def _first_violation(self, c, terms, s_m):
        """Index of the first pattern violation after index m, or None."""
        m, n, last = self.m, self.n, self.last_positive
        scs = tuple(x if q % 2 == 0 else -x for q, x in enumerate(c))
        window = list(terms[1:]) + [s_m]
        for j in range(m + 1, n + 1):
            s = 0
            for q in range(m):
                s += scs[q] * window[-1 - q]
            if j <= last:
                if s <= 0:
                    return j
            elif s != 0:
                return j
            del window[0]
            window.append(s)
        return None
