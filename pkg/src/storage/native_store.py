"""Native tab-separated taxonomy format.

::

    C <tab> name <tab> lemma1|lemma2|... <tab> gloss <tab> topic <tab> external_id
    E <tab> child_name <tab> parent_name <tab> ISA|INST

Lines starting with ``#`` are comments.  Gloss, topic and external id may be
empty or missing.  Concept and edge lines may come in any order.
"""

from __future__ import annotations

import os
from typing import Iterable, List, Optional, Tuple

from loguru import logger

from ..core.errors import ParseError, TaxonomyError
from ..core.taxonomy import EdgeKind, Taxonomy
from .base import TaxonomyStore

CONCEPT_FIELDS = 6
LEMMA_SEPARATOR = "|"


def _clean(value: Optional[str]) -> str:
    if not value:
        return ""
    return value.replace("\t", " ").replace("\r", " ").replace("\n", " ")


def parse_native(lines: Iterable[str], source: Optional[str] = None) -> Taxonomy:
    """Build a taxonomy from native-format lines."""
    taxonomy = Taxonomy()
    pending_edges: List[Tuple[int, str, List[str]]] = []

    for line_no, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        tag = fields[0].strip()

        if tag == "C":
            if len(fields) < 3 or len(fields) > CONCEPT_FIELDS:
                raise ParseError("concept line needs 3 to 6 tab-separated fields", line_no=line_no, text=line, source=source)
            fields += [""] * (CONCEPT_FIELDS - len(fields))
            _, name, lemma_field, gloss, topic, external_id = fields
            lemmas = [lemma for lemma in lemma_field.split(LEMMA_SEPARATOR) if lemma]
            try:
                taxonomy.add_concept(name.strip(), lemmas, gloss=gloss, topic=topic, external_id=external_id.strip())
            except TaxonomyError as exc:
                raise ParseError(str(exc), line_no=line_no, text=line, source=source) from None
        elif tag == "E":
            if len(fields) != 4:
                raise ParseError("edge line needs 4 tab-separated fields", line_no=line_no, text=line, source=source)
            pending_edges.append((line_no, line, fields))
        else:
            raise ParseError(f"unknown record type {tag!r}", line_no=line_no, text=line, source=source)

    for line_no, line, fields in pending_edges:
        _, child, parent, kind_token = (f.strip() for f in fields)
        try:
            kind = EdgeKind(kind_token)
        except ValueError:
            raise ParseError(f"unknown edge kind {kind_token!r}", line_no=line_no, text=line, source=source) from None
        try:
            taxonomy.add_edge(taxonomy.id_of(child), taxonomy.id_of(parent), kind)
        except TaxonomyError as exc:
            raise ParseError(str(exc), line_no=line_no, text=line, source=source) from None

    logger.debug(f"loaded {len(taxonomy)} concepts from {source or '<input>'}")
    return taxonomy


def dump_native(taxonomy: Taxonomy, header: Optional[Iterable[str]] = None) -> str:
    """Serialize ``taxonomy``: comment header, concepts by name, then edges."""
    out = [f"# {_clean(line)}" for line in (header or ())]
    for concept in taxonomy.concepts():
        lemmas = LEMMA_SEPARATOR.join(_clean(lemma) for lemma in concept.lemmas)
        out.append(
            "\t".join(
                ["C", concept.name, lemmas, _clean(concept.gloss), _clean(concept.topic), _clean(concept.external_id)]
            )
        )
    for edge in taxonomy.edges():
        out.append("\t".join(["E", taxonomy.name_of(edge.child), taxonomy.name_of(edge.parent), edge.kind.value]))
    return "".join(line + "\n" for line in out)


class NativeTaxonomyStore(TaxonomyStore):
    """Read and write the native format at ``path``."""

    def __init__(self, path: str, encoding: str = "utf-8") -> None:
        super().__init__()
        self.path = path
        self.encoding = encoding

    def load(self) -> Taxonomy:
        with open(self.path, encoding=self.encoding) as handle:
            return parse_native(handle, source=self.path)

    def dump(self, taxonomy: Taxonomy, header: Optional[List[str]] = None) -> str:
        return dump_native(taxonomy, header)

    def save(self, taxonomy: Taxonomy, header: Optional[List[str]] = None) -> None:
        directory = os.path.dirname(self.path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(self.path, "w", encoding=self.encoding, newline="\n") as handle:
            handle.write(self.dump(taxonomy, header))
