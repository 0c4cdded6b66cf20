"""Command-line driver: ``dualdefect verify|bound|seq|classify``.

Exit codes: 0 every verdict True, 1 candidates found, 2 usage or
constraint error, 3 internal inconsistency in ``classify``, 4 the search
ran out of resources.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .casegen import BOUND_VARIANTS, CHAINED, admissible_case, defect_branches, degree_bound
from .certificate import dumps, loads, summary_csv, summary_row
from .codim3 import brute_force_classify, classification_reports, theorem51_certificate, u_sequence
from .errors import PreconditionError, SearchResourceError
from .recurrence import segre_sequence
from .search import Certificate, SearchOptions, run_case

EXIT_OK = 0
EXIT_CANDIDATES = 1
EXIT_USAGE = 2
EXIT_ANOMALY = 3
EXIT_RESOURCES = 4

SEARCHED = "searched"
PROPAGATED = "propagated-from(N-1)"
DEDUCED = "deduced-theorem51"

log = logging.getLogger("dualdefect")


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"12"`` or ``"10..60"`` (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad N range {text!r}; expected N or A..B") from None
    if lo > hi:
        raise UsageError(f"empty N range {text!r}")
    return list(range(lo, hi + 1))


def parse_coeffs(text: str) -> tuple[int, ...]:
    try:
        c = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad coefficient list {text!r}") from None
    if not c or any(x < 0 for x in c):
        raise UsageError("coefficients must be a nonempty list of nonnegative integers")
    return c


def cert_filename(N: int, m: int) -> str:
    return f"codim{m}_N{N}.json"


@dataclass
class RunManifest:
    """What a ``verify`` run resolved, how, and where it wrote it."""

    m: int
    requested: list[int]
    resolutions: dict[int, str] = field(default_factory=dict)
    paths: dict[int, Path] = field(default_factory=dict)
    certificates: dict[int, Certificate] = field(default_factory=dict)


def _propagation_source(N: int, m: int, args) -> bool:
    """Whether a True certificate for (N - 1, m) may resolve (N, m)."""
    if m == 3 and args.propagate:
        return N % 2 == 1
    if args.propagate_general:
        return (N - m) % 2 == 0
    return False


def _lookup_true(N: int, m: int, manifest: RunManifest, out: Path) -> Optional[tuple[Certificate, str]]:
    cert = manifest.certificates.get(N)
    if cert is not None:
        return (cert, cert_filename(N, m)) if cert.verdict and cert.resolution == SEARCHED else None
    path = out / cert_filename(N, m)
    if path.exists():
        prior = loads(path.read_text(encoding="utf-8"))
        if prior.verdict and prior.resolution == SEARCHED and prior.case.m == m:
            return prior, path.name
    return None


def _propagated(N: int, m: int, source: Certificate, source_file: str) -> Certificate:
    return Certificate(
        case=admissible_case(N, m),
        resolution=PROPAGATED,
        branches=(),
        options=None,
        verdict=True,
        provenance={
            "source_N": str(source.case.N),
            "source_m": str(source.case.m),
            "source_file": source_file,
            "source_resolution": source.resolution,
            "rule": f"a positive-defect X in P^{N} of even dimension {N - m} has defect >= 2, "
            f"so a general hyperplane section is a positive-defect subvariety of P^{N - 1}",
        },
    )


def _deduced(N: int) -> Certificate:
    record = theorem51_certificate(N)
    return Certificate(
        case=admissible_case(N, 3),
        resolution=DEDUCED,
        branches=(),
        options=None,
        verdict=True,
        provenance=record.as_dict(),
    )


def _write(manifest: RunManifest, cert: Certificate, out: Path, written: list[Path]) -> None:
    N = cert.case.N
    path = out / cert_filename(N, cert.case.m)
    existed = path.exists()
    path.write_text(dumps(cert), encoding="utf-8")
    if not existed:
        written.append(path)
    manifest.resolutions[N] = cert.resolution
    manifest.paths[N] = path
    manifest.certificates[N] = cert
    log.info("N=%d m=%d: %s, verdict %s", N, cert.case.m, cert.resolution, cert.verdict)


def cmd_verify(args) -> int:
    m = args.codim
    targets = parse_range(args.N)
    if args.even_only and args.odd_only:
        raise UsageError("--even-only and --odd-only are mutually exclusive")
    if args.even_only:
        targets = [N for N in targets if N % 2 == 0]
    if args.odd_only:
        targets = [N for N in targets if N % 2 == 1]
    if args.theorem51 and m != 3:
        raise UsageError("--theorem51 applies to codimension 3 only")
    for N in targets:
        admissible_case(N, m)  # fail before any output is written
    options = SearchOptions(
        bound_variant=args.bound_variant,
        huh_filter=args.huh_filter,
        worker_count=args.threads,
        evidence=args.evidence,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(m, list(targets))
    written: list[Path] = []
    target_set = set(targets)
    try:
        for N in targets:
            if N in manifest.certificates:
                continue
            if args.theorem51 and N % 2 == 1:
                _write(manifest, _deduced(N), out, written)
                continue
            if _propagation_source(N, m, args):
                found = _lookup_true(N - 1, m, manifest, out)
                if found is not None:
                    _write(manifest, _propagated(N, m, *found), out, written)
                    continue
            cert = run_case(admissible_case(N, m), options)
            _write(manifest, cert, out, written)
            nxt = N + 1
            if cert.verdict and nxt not in target_set and _propagation_source(nxt, m, args):
                _write(manifest, _propagated(nxt, m, cert, cert_filename(N, m)), out, written)
    except SearchResourceError as exc:
        _cleanup(written)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCES
    except BaseException:
        _cleanup(written)
        raise
    certs = [manifest.certificates[N] for N in sorted(manifest.certificates)]
    summary = summary_csv(certs)
    (out / "summary.csv").write_text(summary, encoding="utf-8")
    if args.format == "csv":
        sys.stdout.write(summary)
    else:
        print(json.dumps([summary_row(c) for c in certs], indent=2))
    return EXIT_OK if all(c.verdict for c in certs) else EXIT_CANDIDATES


def _cleanup(paths: list[Path]) -> None:
    for p in paths:
        p.unlink(missing_ok=True)


def cmd_bound(args) -> int:
    case = admissible_case(args.N, args.codim)
    branches = defect_branches(case)
    if args.r is not None:
        branches = [b for b in branches if b.r == args.r]
        if not branches:
            raise UsageError(f"r={args.r} is not a positive defect allowed for N={args.N}, m={args.codim}")
    for b in branches:
        print(f"r={b.r}: {degree_bound(case.N, case.m, b.r)}")
    return EXIT_OK


def cmd_seq(args) -> int:
    c = parse_coeffs(args.coeffs)
    if args.len < 0:
        raise UsageError("--len must be nonnegative")
    s = segre_sequence(c, args.len)
    print("s: " + " ".join(str(x) for x in s))
    if len(c) == 3 and min(c) > 0:
        u = u_sequence(*c, args.len + 2)
        print("u: " + " ".join(str(x) for x in u))
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.cmax < 0:
        raise UsageError("--cmax must be nonnegative")
    if args.horizon < 10:
        raise UsageError("--horizon must be at least 10")
    found = brute_force_classify(args.cmax, args.horizon)
    reports = classification_reports(found)
    hist = Counter(found.values())
    print(f"triples with a double zero: {len(found)} of {args.cmax ** 3}")
    for m in sorted(hist):
        print(f"m={m}: {hist[m]}")
    if args.list:
        for (c1, c2, c3), m in sorted(found.items()):
            print(f"({c1},{c2},{c3}) -> {m}")
    anomalies = [rep for rep in reports if rep.anomaly]
    for rep in anomalies:
        print(f"ANOMALY {rep.c} m={rep.m}: {rep.anomaly}", file=sys.stderr)
    print(f"anomalies: {len(anomalies)}")
    return EXIT_ANOMALY if anomalies else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualdefect", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="search (or deduce) cases and write certificates")
    v.add_argument("--codim", type=int, required=True)
    v.add_argument("--N", required=True, help="N or A..B")
    v.add_argument("--even-only", action="store_true")
    v.add_argument("--odd-only", action="store_true")
    v.add_argument("--propagate", action="store_true", help="codim 3: resolve odd N from a verified N - 1")
    v.add_argument(
        "--propagate-general",
        action="store_true",
        help="any codim: verified (N, m) resolves (N + 1, m) when N + 1 - m is even",
    )
    v.add_argument("--theorem51", action="store_true", help="codim 3: deduce odd N without search")
    v.add_argument("--huh-filter", action="store_true", help="annotate candidates failing log-concavity")
    v.add_argument("--bound-variant", choices=BOUND_VARIANTS, default=CHAINED)
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--out", default="certificates")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--evidence", action="store_true", help="store sequence and delta evidence")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bound", help="degree bound for each positive-defect branch")
    b.add_argument("--codim", type=int, required=True)
    b.add_argument("--N", type=int, required=True)
    b.add_argument("--r", type=int)
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("seq", help="print the Segre sequence (and u-sequence for order 3)")
    s.add_argument("--coeffs", required=True, help="comma-separated c_1,...,c_m")
    s.add_argument("--len", type=int, default=11)
    s.set_defaults(func=cmd_seq)

    c = sub.add_parser("classify", help="brute-force double-zero classification")
    c.add_argument("--cmax", type=int, required=True)
    c.add_argument("--horizon", type=int, default=60)
    c.add_argument("--list", action="store_true", help="list every classified triple")
    c.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
