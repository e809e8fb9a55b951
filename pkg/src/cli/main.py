"""TaxoClean command line.

Commands: ``ingest``, ``stats``, ``check``, ``suggest``, ``backbone``, ``map``.

Exit status: 0 on a clean run, 1 when ``check`` finds violations, 2 on input
errors (or on warnings under ``--strict``).  Reports go to ``--out`` or
standard output; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from configs.settings import Config, get_config

from ..core.annotations import (
    AnnotationSet,
    effective_profiles,
    parse_annotations,
    resolve_annotations,
    suggest_from_children,
)
from ..core.errors import TaxoCleanError
from ..core.taxonomy import Taxonomy
from ..ingest.corpus import CorpusStats, parse_quasi_synonyms, stats_for_taxonomy
from ..modules.constraint_checker import run_checks
from ..modules.restructure import apply_mapping, extract_backbone
from ..storage.native_store import NativeTaxonomyStore, dump_native
from ..storage.prolog_store import PrologWordNetStore
from . import reports


class Command(Enum):
    INGEST = "ingest"
    STATS = "stats"
    CHECK = "check"
    SUGGEST = "suggest"
    BACKBONE = "backbone"
    MAP = "map"


class InputFormat(Enum):
    PROLOG = "prolog"
    NATIVE = "native"


class ReportFormat(Enum):
    TEXT = reports.TEXT
    JSON_LINES = reports.JSON_LINES


@dataclass
class RunConfig:
    command: Command
    source: str
    annotations: Optional[str] = None
    input_format: InputFormat = InputFormat.NATIVE
    out: Optional[str] = None
    report_format: ReportFormat = ReportFormat.TEXT
    keep_unknown_rigidity: bool = True
    strict: bool = False
    quasi_synonyms: Optional[str] = None
    concepts: Tuple[str, ...] = ()
    tree_out: Optional[str] = None
    encoding: str = "utf-8"


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser(defaults: Optional[Dict[str, object]] = None) -> argparse.ArgumentParser:
    defaults = defaults or Config.as_defaults()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("source", help="native taxonomy file, or WordNet Prolog directory")
    common.add_argument("--format", dest="input_format", choices=[f.value for f in InputFormat],
                        default=defaults["input_format"], help="input format of SOURCE")
    common.add_argument("--annotations", help="annotation file (P/I/A/M lines)")
    common.add_argument("--out", help="write the report here instead of standard output")
    common.add_argument("--report", dest="report_format", choices=list(reports.REPORT_FORMATS),
                        default=defaults["report_format"], help="report format")
    common.add_argument("--keep-unknown-rigidity", type=_parse_bool, metavar="BOOL",
                        default=defaults["keep_unknown_rigidity"],
                        help="keep concepts of unknown rigidity in the backbone")
    common.add_argument("--strict", action="store_true", default=defaults["strict"],
                        help="treat warnings as errors (exit 2)")
    common.add_argument("--encoding", default=defaults["encoding"], help="input and output encoding")

    parser = argparse.ArgumentParser(prog="taxoclean", description="OntoClean taxonomy validation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("ingest", "load a taxonomy and export it in the native format"),
        ("stats", "corpus statistics"),
        ("check", "constraint check (exit 1 on violations)"),
        ("suggest", "meta-property constraints implied by descendants"),
        ("backbone", "rigid-only backbone taxonomy"),
        ("map", "map onto the top-level category catalog"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("ingest", "stats"):
            cmd.add_argument("--quasi-synonyms", help="quasi-synonym groups, one per line, '|'-separated")
        if name == "suggest":
            cmd.add_argument("--concept", action="append", default=[], help="concept name (repeatable)")
        if name == "map":
            cmd.add_argument("--tree-out", help="write the cleaned taxonomy (native format) here")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None, defaults: Optional[Dict[str, object]] = None) -> RunConfig:
    args = build_parser(defaults).parse_args(argv)
    return RunConfig(
        command=Command(args.command),
        source=args.source,
        annotations=args.annotations,
        input_format=InputFormat(args.input_format),
        out=args.out,
        report_format=ReportFormat(args.report_format),
        keep_unknown_rigidity=args.keep_unknown_rigidity,
        strict=args.strict,
        quasi_synonyms=getattr(args, "quasi_synonyms", None),
        concepts=tuple(getattr(args, "concept", ()) or ()),
        tree_out=getattr(args, "tree_out", None),
        encoding=args.encoding,
    )


def configure_logging(config: Config) -> None:
    """stderr sink with a one-line format, plus an optional rotating file sink."""
    logger.remove()
    logger.add(sys.stderr, level=config.LOGGING['level'], format="{level}: {message}")
    if config.LOGGING['file']:
        logger.add(
            config.LOGGING['file'],
            level=config.LOGGING['level'],
            rotation=config.LOGGING['max_bytes'],
            retention=config.LOGGING['backup_count'],
            format=config.LOGGING['format']
        )


# Pipeline -------------------------------------------------------------------------

class _Session:
    """Loaded inputs shared by the command handlers."""

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.warnings: List[str] = []
        self.stats: Optional[CorpusStats] = None
        self.taxonomy = self._load_taxonomy()
        self.annotations = self._load_annotations()

    def _read_lines(self, path: str) -> List[str]:
        with open(path, encoding=self.config.encoding) as handle:
            return handle.readlines()

    def _load_taxonomy(self) -> Taxonomy:
        config = self.config
        quasi = parse_quasi_synonyms(self._read_lines(config.quasi_synonyms)) if config.quasi_synonyms else None
        if config.input_format is InputFormat.PROLOG:
            store = PrologWordNetStore(config.source, config.encoding, quasi_synonyms=quasi)
            taxonomy = store.load()
            self.warnings.extend(store.warnings)
            self.stats = store.stats
        else:
            taxonomy = NativeTaxonomyStore(config.source, config.encoding).load()
            self.stats = stats_for_taxonomy(taxonomy, quasi)
        return taxonomy

    def _load_annotations(self) -> AnnotationSet:
        if not self.config.annotations:
            return AnnotationSet()
        annotations = parse_annotations(self._read_lines(self.config.annotations), source=self.config.annotations)
        self.warnings.extend(annotations.warnings)
        self.warnings.extend(resolve_annotations(self.taxonomy, annotations))
        return annotations


def _ingest(session: _Session) -> Tuple[str, int]:
    return dump_native(session.taxonomy), 0


def _stats(session: _Session) -> Tuple[str, int]:
    return reports.render_stats(session.stats or CorpusStats(), session.config.report_format.value), 0


def _check(session: _Session) -> Tuple[str, int]:
    report = run_checks(session.taxonomy, session.annotations, resolve=False)
    return reports.render_check(report, session.config.report_format.value), 1 if report.violations else 0


def _suggest(session: _Session) -> Tuple[str, int]:
    taxonomy = session.taxonomy
    if session.config.concepts:
        ids = [taxonomy.id_of(name) for name in session.config.concepts]
    else:
        ids = [c.id for c in taxonomy.concepts()]
    profiles = effective_profiles(taxonomy, session.annotations)
    suggestions = []
    for cid in ids:
        suggestions.extend(suggest_from_children(cid, taxonomy, session.annotations, profiles))
    return reports.render_suggestions(suggestions, session.config.report_format.value), 0


def _backbone(session: _Session) -> Tuple[str, int]:
    result = extract_backbone(session.taxonomy, session.annotations, session.config.keep_unknown_rigidity)
    return dump_native(result.taxonomy, header=result.audit_lines()), 0


def _map(session: _Session) -> Tuple[str, int]:
    cleaned, report = apply_mapping(session.taxonomy, session.annotations)
    if session.config.tree_out:
        _write(session.config.tree_out, dump_native(cleaned), session.config.encoding)
    return reports.render_mapping(report, session.config.report_format.value), 0


_HANDLERS: Dict[Command, Callable[[_Session], Tuple[str, int]]] = {
    Command.INGEST: _ingest,
    Command.STATS: _stats,
    Command.CHECK: _check,
    Command.SUGGEST: _suggest,
    Command.BACKBONE: _backbone,
    Command.MAP: _map,
}


def _write(path: str, text: str, encoding: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding=encoding, newline="\n") as handle:
        handle.write(text)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        session = _Session(config)
        if config.strict and session.warnings:
            return _fail(f"{len(session.warnings)} warning(s) in strict mode; first: {session.warnings[0]}")
        text, status = _HANDLERS[config.command](session)
        if config.out:
            _write(config.out, text, config.encoding)
        else:
            sys.stdout.write(text)
    except TaxoCleanError as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(f"{exc.filename or config.source}: {exc.strerror or exc}")
    except UnicodeDecodeError as exc:
        return _fail(f"{config.source}: not valid {config.encoding} ({exc.reason})")
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = get_config()
    try:
        config.validate_config()
    except ValueError as exc:
        return _fail(f"configuration: {exc}")
    configure_logging(config)
    return run(parse_args(argv, config.as_defaults()))
