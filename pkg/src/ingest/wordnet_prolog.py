"""Reader for the Prolog-clause WordNet noun database.

Handles the three clause shapes of the distribution::

    s(ID,WNum,'word',Type,Sense[,TagCount]).
    hyp(ID1,ID2).
    g(ID,'gloss').

Only noun synsets (type ``n``) are kept.  Hypernym pairs among non-noun
synsets are skipped silently; pairs naming unknown ids are collected as
warnings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from loguru import logger

from ..core.errors import ParseError


def _atom(group: str) -> str:
    """Quoted atom pattern; doubled single quotes stand for one quote."""
    return r"'(?P<" + group + r">(?:[^']|'')*)'"


S_CLAUSE = re.compile(
    r"^s\(\s*(?P<id>\d+)\s*,\s*(?P<wnum>\d+)\s*,\s*" + _atom("word")
    + r"\s*,\s*(?P<type>[a-z])\s*,\s*(?P<sense>\d+)\s*(?:,\s*(?P<tag>\d+)\s*)?\)\s*\.$"
)
HYP_CLAUSE = re.compile(r"^hyp\(\s*(?P<child>\d+)\s*,\s*(?P<parent>\d+)\s*\)\s*\.$")
G_CLAUSE = re.compile(r"^g\(\s*(?P<id>\d+)\s*,\s*" + _atom("gloss") + r"\s*\)\s*\.$")

NOUN = "n"


@dataclass
class SynsetRecord:
    synset_id: str
    lemmas: List[str]
    gloss: Optional[str] = None
    topic: Optional[str] = None


@dataclass
class PrologDatabase:
    records: List[SynsetRecord] = field(default_factory=list)
    hypernyms: List[Tuple[str, str]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def unquote_atom(body: str) -> str:
    return body.replace("''", "'")


def _clause_lines(lines: Iterable[str]) -> Iterable[Tuple[int, str]]:
    for line_no, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        yield line_no, line


def parse_synsets(lines: Iterable[str], source: str = "wn_s.pl") -> Tuple[List[SynsetRecord], Set[str]]:
    """Noun records in source order, plus the ids of skipped non-noun synsets."""
    order: List[str] = []
    words: Dict[str, List[Tuple[int, str]]] = {}
    other_ids: Set[str] = set()

    for line_no, line in _clause_lines(lines):
        match = S_CLAUSE.match(line)
        if not match:
            raise ParseError("malformed s/6 clause", line_no=line_no, text=line, source=source)
        sid = match.group("id")
        if match.group("type") != NOUN:
            other_ids.add(sid)
            continue
        if sid not in words:
            order.append(sid)
            words[sid] = []
        words[sid].append((int(match.group("wnum")), unquote_atom(match.group("word"))))

    records = []
    for sid in order:
        ordered = sorted(words[sid], key=lambda pair: pair[0])
        records.append(SynsetRecord(synset_id=sid, lemmas=[word for _, word in ordered]))
    return records, other_ids


def parse_hypernyms(lines: Iterable[str], source: str = "wn_hyp.pl") -> List[Tuple[str, str]]:
    pairs = []
    for line_no, line in _clause_lines(lines):
        match = HYP_CLAUSE.match(line)
        if not match:
            raise ParseError("malformed hyp/2 clause", line_no=line_no, text=line, source=source)
        pairs.append((match.group("child"), match.group("parent")))
    return pairs


def parse_glosses(lines: Iterable[str], source: str = "wn_g.pl") -> Dict[str, str]:
    glosses = {}
    for line_no, line in _clause_lines(lines):
        match = G_CLAUSE.match(line)
        if not match:
            raise ParseError("malformed g/2 clause", line_no=line_no, text=line, source=source)
        glosses[match.group("id")] = unquote_atom(match.group("gloss"))
    return glosses


def parse_prolog_db(
    synset_lines: Iterable[str],
    hypernym_lines: Iterable[str],
    gloss_lines: Iterable[str] = (),
) -> PrologDatabase:
    """Parse the three streams and join them into noun records and IS_A pairs."""
    records, other_ids = parse_synsets(synset_lines)
    hypernyms = parse_hypernyms(hypernym_lines)
    glosses = parse_glosses(gloss_lines)

    known = {r.synset_id for r in records}
    for record in records:
        record.gloss = glosses.get(record.synset_id)

    db = PrologDatabase(records=records)
    for child, parent in hypernyms:
        if child in known and parent in known:
            db.hypernyms.append((child, parent))
        elif child in other_ids or parent in other_ids:
            continue
        else:
            missing = child if child not in known else parent
            msg = f"dangling hypernym pair ({child}, {parent}): unknown synset {missing}"
            logger.warning(msg)
            db.warnings.append(msg)

    logger.info(f"parsed {len(records)} noun synsets and {len(db.hypernyms)} hypernym pairs")
    return db
