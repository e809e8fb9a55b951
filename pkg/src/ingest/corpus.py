"""Taxonomy assembly and corpus statistics for an ingested noun database."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ..core.errors import CycleError, TaxonomyError
from ..core.taxonomy import EdgeKind, Taxonomy
from .wordnet_prolog import SynsetRecord


@dataclass
class CorpusStats:
    """Table-style counts over the noun lemmas of a corpus.

    ``equivalence_classes`` stays ``None`` unless a quasi-synonym source was
    supplied; it is then left out of rendered output.
    """

    noun_entries: int = 0
    noun_synsets: int = 0
    nouns: int = 0
    monosemous_nouns: int = 0
    polysemous_nouns: int = 0
    one_word_nouns: int = 0
    noun_phrases: int = 0
    equivalence_classes: Optional[int] = None

    def as_dict(self) -> Dict[str, int]:
        data = asdict(self)
        if data["equivalence_classes"] is None:
            del data["equivalence_classes"]
        return data


class _UnionFind:
    def __init__(self) -> None:
        self._parent: Dict[str, str] = {}
        self._size: Dict[str, int] = {}

    def add(self, item: str) -> None:
        if item not in self._parent:
            self._parent[item] = item
            self._size[item] = 1

    def find(self, item: str) -> str:
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]

    def component_sizes(self) -> List[int]:
        return [self._size[item] for item in self._parent if self._parent[item] == item]


def parse_quasi_synonyms(lines: Iterable[str]) -> List[List[str]]:
    """One group per line, lemmas separated by ``|``; ``#`` lines are comments."""
    groups = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        group = [lemma.strip() for lemma in line.split("|") if lemma.strip()]
        if group:
            groups.append(group)
    return groups


def compute_stats(
    lemma_lists: Sequence[Sequence[str]],
    quasi_synonyms: Optional[Sequence[Sequence[str]]] = None,
) -> CorpusStats:
    """Counts over one lemma list per synset."""
    senses: Dict[str, int] = {}
    entries = 0
    for lemmas in lemma_lists:
        for lemma in dict.fromkeys(lemmas):
            senses[lemma] = senses.get(lemma, 0) + 1
            entries += 1

    stats = CorpusStats(
        noun_entries=entries,
        noun_synsets=len(lemma_lists),
        nouns=len(senses),
        monosemous_nouns=sum(1 for n in senses.values() if n == 1),
        one_word_nouns=sum(1 for lemma in senses if len(lemma.split()) == 1),
    )
    stats.polysemous_nouns = stats.nouns - stats.monosemous_nouns
    stats.noun_phrases = stats.nouns - stats.one_word_nouns

    if quasi_synonyms is not None:
        classes = _UnionFind()
        for group in list(lemma_lists) + list(quasi_synonyms):
            members = list(dict.fromkeys(group))
            for lemma in members:
                classes.add(lemma)
            for lemma in members[1:]:
                classes.union(members[0], lemma)
        stats.equivalence_classes = sum(1 for size in classes.component_sizes() if size >= 2)
    return stats


def build_taxonomy(
    records: Sequence[SynsetRecord],
    edges: Iterable[Tuple[str, str]],
    names: Dict[str, str],
    warnings: Optional[List[str]] = None,
    quasi_synonyms: Optional[Sequence[Sequence[str]]] = None,
) -> Tuple[Taxonomy, CorpusStats]:
    """One concept per record and one IS_A edge per hypernym pair.

    Pairs that would close a cycle are dropped and reported, in input order.
    Individuals are never detected here.
    """
    taxonomy = Taxonomy()
    ids: Dict[str, str] = {}
    for record in records:
        if record.synset_id not in names:
            raise TaxonomyError(f"no concept name for synset {record.synset_id}")
        ids[record.synset_id] = taxonomy.add_concept(
            names[record.synset_id],
            record.lemmas,
            gloss=record.gloss,
            topic=record.topic,
            external_id=record.synset_id,
        )

    for child, parent in edges:
        try:
            taxonomy.add_edge(ids[child], ids[parent], EdgeKind.IS_A)
        except CycleError as exc:
            msg = f"dropped hypernym pair ({child}, {parent}): {exc}"
            logger.warning(msg)
            if warnings is not None:
                warnings.append(msg)

    stats = compute_stats([r.lemmas for r in records], quasi_synonyms)
    logger.info(f"built taxonomy with {len(taxonomy)} concepts")
    return taxonomy, stats


def stats_for_taxonomy(
    taxonomy: Taxonomy, quasi_synonyms: Optional[Sequence[Sequence[str]]] = None
) -> CorpusStats:
    """Statistics of an already built taxonomy (e.g. loaded from the native format)."""
    return compute_stats([c.lemmas for c in taxonomy.concepts()], quasi_synonyms)
