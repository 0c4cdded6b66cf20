"""Exhaustive search over Chern tuples, one certificate per case."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .casegen import (
    BOUND_VARIANTS,
    CHAINED,
    BoundsVector,
    CaseSpec,
    DefectBranch,
    chern_bounds,
    defect_branches,
    degree_of,
    log_concavity_ok,
)
from .errors import PreconditionError, SearchResourceError
from .kernel import BranchScanner, ScanResult
from .recurrence import check_pattern

log = logging.getLogger(__name__)

HEARTBEAT_SECONDS = 10.0
# Chunks handed to each worker; more chunks balance the chained bounds,
# whose cost grows with c_2.
CHUNKS_PER_WORKER = 8


@dataclass(frozen=True)
class SearchOptions:
    """Search configuration. ``worker_count`` never changes results, so it
    is left out of comparisons and of serialized certificates."""

    bound_variant: str = CHAINED
    huh_filter: bool = False
    worker_count: int = field(default=1, compare=False)
    evidence: bool = True

    def __post_init__(self):
        if self.worker_count < 1:
            raise PreconditionError("worker_count must be at least 1")
        if self.bound_variant not in BOUND_VARIANTS:
            raise PreconditionError(f"unknown bound variant {self.bound_variant!r}")


@dataclass(frozen=True)
class Candidate:
    """A tuple whose sequence has the positive-defect sign pattern.

    ``huh_rejected`` is None when the log-concavity filter is off.
    """

    r: int
    c: tuple[int, ...]
    degree: int
    s_evidence: Optional[tuple[int, ...]] = None
    delta_evidence: Optional[tuple[int, ...]] = None
    huh_rejected: Optional[bool] = None

    @property
    def sort_key(self):
        return (self.r,) + self.c[1:]


@dataclass(frozen=True)
class BranchResult:
    branch: DefectBranch
    enumerated: int
    pruned_early: int
    candidates: tuple[Candidate, ...] = ()


@dataclass(frozen=True)
class Certificate:
    """Record of one resolved case.

    ``resolution`` is ``"searched"``, ``"propagated-from(N-1)"`` or
    ``"deduced-theorem51"``; ``provenance`` carries the source case or the
    deduction chain for the latter two.
    """

    case: CaseSpec
    resolution: str
    branches: tuple[BranchResult, ...]
    options: Optional[SearchOptions]
    verdict: bool
    wall_time: float = 0.0
    tool_version: str = __version__
    provenance: Optional[dict] = None

    @property
    def candidates(self) -> list[Candidate]:
        return [c for b in self.branches for c in b.candidates]

    @property
    def enumerated(self) -> int:
        return sum(b.enumerated for b in self.branches)

    @property
    def verdict_with_log_concavity(self) -> Optional[bool]:
        """Verdict once log-concavity-rejected candidates are discounted.

        None unless the search ran with the log-concavity annotation on.
        ``verdict`` itself never takes the annotation into account.
        """
        if self.options is None or not self.options.huh_filter:
            return None
        return all(c.huh_rejected for c in self.candidates)


@dataclass(frozen=True)
class EnumRange:
    """Inclusive range of c_2 values; empty when ``c2_lo > c2_hi``."""

    c2_lo: int
    c2_hi: int

    @property
    def empty(self) -> bool:
        return self.c2_lo > self.c2_hi


def partition_space(branch: DefectBranch, bounds: BoundsVector, k: int) -> list[EnumRange]:
    """Split the tuple space into k ranges of the outermost coordinate c_2."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    total = bounds.B[0] + 1
    return [EnumRange(i * total // k, (i + 1) * total // k - 1) for i in range(k)]


def _scan_chunk(args) -> ScanResult:
    m, c1, n, r, variant, lo, hi = args
    return BranchScanner(m, c1, n, r, variant).scan(lo, hi)


def _make_candidate(c: tuple[int, ...], n: int, r: int, options: SearchOptions) -> Candidate:
    verdict = check_pattern(c, n, r)
    if not verdict.accepted:
        raise AssertionError(f"scanner accepted {c} but the direct check rejects it")
    degree = degree_of(c)
    s = verdict.terms if options.evidence else None
    delta = tuple(degree * verdict.terms[n - j] for j in range(n + 1)) if options.evidence else None
    huh = (not log_concavity_ok(c)) if options.huh_filter else None
    return Candidate(r, c, degree, s, delta, huh)


class _Runner:
    """Owns the worker pool (if any) for the lifetime of one search."""

    def __init__(self, workers: int):
        self.workers = workers
        self.pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        if self.pool is not None:
            self.pool.shutdown(cancel_futures=True)

    def scan(self, m, c1, n, r, variant, label: str) -> ScanResult:
        bounds = chern_bounds(c1, m, variant)
        k = 1 if self.pool is None else self.workers * CHUNKS_PER_WORKER
        ranges = partition_space(DefectBranch(r, c1), bounds, k)
        jobs = [(m, c1, n, r, variant, rg.c2_lo, rg.c2_hi) for rg in ranges if not rg.empty]
        total = ScanResult()
        last_beat = time.monotonic()
        try:
            results = self.pool.map(_scan_chunk, jobs) if self.pool else map(_scan_chunk, jobs)
            for done, part in enumerate(results, 1):
                total.merge(part)
                now = time.monotonic()
                if now - last_beat >= HEARTBEAT_SECONDS:
                    log.info("%s: %d/%d chunks, %d tuples", label, done, len(jobs), total.enumerated)
                    last_beat = now
        except MemoryError as exc:
            raise SearchResourceError(f"{label}: out of memory") from exc
        except BrokenProcessPool as exc:
            raise SearchResourceError(f"{label}: worker process died") from exc
        return total


def search_raw(m: int, c1: int, n: int, r: int, options: SearchOptions = SearchOptions()) -> list[Candidate]:
    """All tuples (c1, c_2, ..., c_m) within bounds whose sequence fits the (n, r) pattern.

    No geometric admissibility is imposed on (m, c1, n, r).
    """
    if c1 < 1 or not (1 <= r <= n) or m < 3:
        raise PreconditionError(f"need c1 >= 1, 1 <= r <= n, m >= 3; got m={m}, c1={c1}, n={n}, r={r}")
    with _Runner(options.worker_count) as runner:
        res = runner.scan(m, c1, n, r, options.bound_variant, f"raw m={m} c1={c1}")
    cands = [_make_candidate(c, n, r, options) for c in res.accepted]
    return sorted(cands, key=lambda cd: cd.sort_key)


def run_case(case: CaseSpec, options: SearchOptions = SearchOptions()) -> Certificate:
    """Run the exhaustive search for every positive-defect branch of ``case``."""
    start = time.perf_counter()
    branches = []
    with _Runner(options.worker_count) as runner:
        for br in defect_branches(case):
            label = f"N={case.N} m={case.m} r={br.r} c1={br.c1}"
            res = runner.scan(case.m, br.c1, case.n, br.r, options.bound_variant, label)
            cands = sorted(
                (_make_candidate(c, case.n, br.r, options) for c in res.accepted),
                key=lambda cd: cd.sort_key,
            )
            log.info("%s: done, %d tuples, %d candidates", label, res.enumerated, len(cands))
            branches.append(BranchResult(br, res.enumerated, res.pruned_early, tuple(cands)))
    verdict = all(not b.candidates for b in branches)
    return Certificate(
        case=case,
        resolution="searched",
        branches=tuple(branches),
        options=options,
        verdict=verdict,
        wall_time=time.perf_counter() - start,
    )
