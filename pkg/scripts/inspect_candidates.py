"""Summarize every candidate stored in a directory of certificates.

For each candidate prints the Chern numbers, the sequence up to a few
terms past n, and two log-concavity checks: on (1, c_1, ..., c_m) and on
the nonzero part of s_0..s_n (the delta invariants are a positive
multiple of the reversed sequence).

    python scripts/inspect_candidates.py runs/codim4
"""

from __future__ import annotations

import argparse
from pathlib import Path

from dualdefect import log_concavity_ok, segre_sequence
from dualdefect.certificate import loads


def is_log_concave(seq) -> bool:
    return all(seq[j] ** 2 >= seq[j - 1] * seq[j + 1] for j in range(1, len(seq) - 1))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory", type=Path)
    ap.add_argument("--extra", type=int, default=3, help="terms to show past s_n")
    args = ap.parse_args(argv)
    found = 0
    for path in sorted(args.directory.glob("codim*_N*.json"), key=lambda p: (len(p.name), p.name)):
        cert = loads(path.read_text(encoding="utf-8"))
        n = cert.case.n
        for cand in cert.candidates:
            found += 1
            s = segre_sequence(cand.c, n + args.extra)
            print(f"N={cert.case.N} m={cert.case.m} r={cand.r} c={cand.c} degree={cand.degree}")
            print(f"  s_0..s_{n + args.extra}: {' '.join(map(str, s))}")
            print(f"  log-concave c: {log_concavity_ok(cand.c)}")
            print(f"  log-concave s_0..s_{n - cand.r}: {is_log_concave(s[: n - cand.r + 1])}")
    print(f"{found} candidate(s)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
