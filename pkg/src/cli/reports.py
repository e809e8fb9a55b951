"""Report rendering: tab-separated text and JSON lines.

Every renderer returns the complete output as one string ending in a
newline, so identical inputs give byte-identical output.

Text violation lines follow :data:`VIOLATION_LINE`::

    VIOLATION <tab> KIND <tab> subject <tab> object|- <tab> a > b > c <tab> REPAIR <tab> explanation
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List

import ujson

from ..core.annotations import Suggestion
from ..ingest.corpus import CorpusStats
from ..modules.constraint_checker import CheckReport, Violation
from ..modules.restructure import MappingReport

TEXT = "text"
JSON_LINES = "jsonl"
REPORT_FORMATS = (TEXT, JSON_LINES)

PATH_SEPARATOR = " > "
NO_OBJECT = "-"

VIOLATION_LINE = re.compile(
    r"^VIOLATION\t(?P<kind>[A-Z_]+)\t(?P<subject>[^\t]+)\t(?P<object>[^\t]+)"
    r"\t(?P<path>[^\t]+)\t(?P<repair>[A-Z_]+)\t(?P<explanation>[^\t]*)$"
)

LEGEND = (
    "# legend: ~U conflicts with both +U and *U",
    "# legend: CONCRETENESS applies 'anti-F cannot subsume F' to concreteness (extension)",
    "# legend: -R under ~R is not a violation; only anti-rigid subsumers conflict",
    "# legend: CATEGORY_INCOMPATIBLE compares dependence, unity, extensionality and concreteness;"
    " rigidity is never compared, so roles may sit under rigid categories",
)


def _json(obj: object) -> str:
    return ujson.dumps(obj, sort_keys=True, ensure_ascii=False, escape_forward_slashes=False)


def _lines(lines: Iterable[str]) -> str:
    return "".join(f"{line}\n" for line in lines)


def _violation_line(v: Violation) -> str:
    return "\t".join(
        [
            "VIOLATION",
            v.kind.value,
            v.subject,
            v.object or NO_OBJECT,
            PATH_SEPARATOR.join(v.path),
            v.suggested_repair.value,
            v.explanation.replace("\t", " "),
        ]
    )


def render_check(report: CheckReport, fmt: str = TEXT) -> str:
    summary = {"violations": len(report.violations), "skipped": report.skipped, "counts": report.stats}
    if fmt == JSON_LINES:
        return _lines([_json(v.to_dict()) for v in report.violations] + [_json({"summary": summary})])

    out: List[str] = list(LEGEND)
    out.extend(_violation_line(v) for v in report.violations)
    out.append(f"SUMMARY\tviolations={summary['violations']}\tskipped={summary['skipped']}")
    out.extend(f"COUNT\t{kind}\t{n}" for kind, n in report.stats.items())
    return _lines(out)


def render_stats(stats: CorpusStats, fmt: str = TEXT) -> str:
    data: Dict[str, int] = stats.as_dict()
    if fmt == JSON_LINES:
        return _lines([_json(data)])
    return _lines(f"{key}\t{value}" for key, value in data.items())


def _suggestion_dict(s: Suggestion) -> Dict[str, object]:
    return {
        "concept": s.concept,
        "slot": s.slot,
        "forbidden": s.forbidden,
        "witnesses": list(s.witnesses),
        "conflicts_with_annotation": s.conflicts_with_annotation,
        "message": s.message,
    }


def render_suggestions(suggestions: List[Suggestion], fmt: str = TEXT) -> str:
    if fmt == JSON_LINES:
        return _lines(_json(_suggestion_dict(s)) for s in suggestions)
    return _lines(
        "\t".join(
            [
                "SUGGEST",
                s.concept,
                s.slot,
                s.forbidden,
                ",".join(s.witnesses),
                "CONFLICT" if s.conflicts_with_annotation else "-",
                s.message,
            ]
        )
        for s in suggestions
    )


def render_mapping(report: MappingReport, fmt: str = TEXT) -> str:
    counts = report.bucket_counts()
    if fmt == JSON_LINES:
        out = [
            _json(
                {
                    "target": row.target,
                    "covered": row.covered,
                    "rejected": [{"name": n, "reason": r} for n, r in row.rejected],
                    "imported": [{"name": n, "original_parents": list(p)} for n, p in row.imported],
                }
            )
            for row in report.rows
        ]
        out.extend(_json(v.to_dict()) for v in report.incompatibilities)
        out.append(_json({"untouched": report.untouched}))
        out.append(_json({"summary": counts}))
        return _lines(out)

    lines: List[str] = []
    for row in report.rows:
        lines.append(f"ROW\t{row.target}")
        lines.extend(f"COVERED\t{row.target}\t{name}" for name in row.covered)
        lines.extend(f"REJECTED\t{row.target}\t{name}\t{reason}" for name, reason in row.rejected)
        lines.extend(
            f"IMPORTED\t{row.target}\t{name}\t{','.join(parents) or NO_OBJECT}" for name, parents in row.imported
        )
    lines.extend(_violation_line(v) for v in report.incompatibilities)
    lines.extend(f"UNTOUCHED\t{name}" for name in report.untouched)
    lines.append("SUMMARY\t" + "\t".join(f"{key}={value}" for key, value in counts.items()))
    return _lines(lines)
