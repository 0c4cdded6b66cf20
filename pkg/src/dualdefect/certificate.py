"""JSON and CSV forms of certificates.

Every integer is written as a decimal string so that sequence terms far
beyond 64 bits survive any JSON reader unchanged.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .casegen import CaseSpec, DefectBranch
from .search import BranchResult, Candidate, Certificate, SearchOptions

SCHEMA_VERSION = "1"
CSV_COLUMNS = ("N", "m", "resolution", "verdict", "candidates", "enumerated", "seconds")


def _ints(xs):
    return None if xs is None else [str(x) for x in xs]


def _parse_ints(xs):
    return None if xs is None else tuple(int(x) for x in xs)


def to_dict(cert: Certificate) -> dict:
    opts = cert.options
    return {
        "schema_version": SCHEMA_VERSION,
        "N": str(cert.case.N),
        "m": str(cert.case.m),
        "n": str(cert.case.n),
        "resolution": cert.resolution,
        "options": None
        if opts is None
        else {
            "bound_variant": opts.bound_variant,
            "huh_filter": opts.huh_filter,
            "evidence": opts.evidence,
        },
        "branches": [
            {
                "r": str(b.branch.r),
                "c1": str(b.branch.c1),
                "enumerated": str(b.enumerated),
                "pruned_early": str(b.pruned_early),
                "candidates": [
                    {
                        "c": _ints(cd.c),
                        "s_evidence": _ints(cd.s_evidence),
                        "degree": str(cd.degree),
                        "delta_evidence": _ints(cd.delta_evidence),
                        "huh_rejected": cd.huh_rejected,
                    }
                    for cd in b.candidates
                ],
            }
            for b in cert.branches
        ],
        "provenance": cert.provenance,
        "verdict": cert.verdict,
        "verdict_with_log_concavity": cert.verdict_with_log_concavity,
        "wall_time_seconds": repr(float(cert.wall_time)),
        "tool_version": cert.tool_version,
    }


def from_dict(d: dict) -> Certificate:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
    opts = d["options"]
    branches = []
    for b in d["branches"]:
        r = int(b["r"])
        cands = tuple(
            Candidate(
                r=r,
                c=_parse_ints(cd["c"]),
                degree=int(cd["degree"]),
                s_evidence=_parse_ints(cd["s_evidence"]),
                delta_evidence=_parse_ints(cd["delta_evidence"]),
                huh_rejected=cd["huh_rejected"],
            )
            for cd in b["candidates"]
        )
        branches.append(
            BranchResult(DefectBranch(r, int(b["c1"])), int(b["enumerated"]), int(b["pruned_early"]), cands)
        )
    return Certificate(
        case=CaseSpec(int(d["N"]), int(d["m"])),
        resolution=d["resolution"],
        branches=tuple(branches),
        options=None
        if opts is None
        else SearchOptions(
            bound_variant=opts["bound_variant"], huh_filter=opts["huh_filter"], evidence=opts["evidence"]
        ),
        verdict=d["verdict"],
        wall_time=float(d["wall_time_seconds"]),
        tool_version=d["tool_version"],
        provenance=d["provenance"],
    )


def dumps(cert: Certificate) -> str:
    return json.dumps(to_dict(cert), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Certificate:
    return from_dict(json.loads(text))


def summary_row(cert: Certificate) -> dict:
    return {
        "N": str(cert.case.N),
        "m": str(cert.case.m),
        "resolution": cert.resolution,
        "verdict": "True" if cert.verdict else "False",
        "candidates": str(len(cert.candidates)),
        "enumerated": str(cert.enumerated),
        "seconds": f"{cert.wall_time:.3f}",
    }


def summary_csv(certs: Iterable[Certificate]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for cert in certs:
        writer.writerow(summary_row(cert))
    return buf.getvalue()
