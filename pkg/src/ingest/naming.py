"""Synset naming: one distinct concept name per synset.

Rules, applied in order:

1. each word of a lemma gets an upper-case first letter, spaces become ``_``;
2. several lemmas are joined with ``$`` (``Equine$Equid``);
3. a single polysemous lemma gets ``_N``, N being the synset's 1-based
   position, in source order, among the synsets holding that lemma
   (``Window_1``);
4. a single monosemous lemma is used bare.

Sense numbers follow the source order, not WordNet's own numbering.
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Dict, List, Optional, Sequence

from loguru import logger

from .wordnet_prolog import SynsetRecord

LEMMA_JOINER = "$"
_WORD_SPLIT = re.compile(r"([ \-])")


def normalize_lemma(lemma: str) -> str:
    """``'Equus caballus'`` -> ``'Equus_Caballus'``; hyphens also start a word."""
    collapsed = " ".join(lemma.split())
    pieces = _WORD_SPLIT.split(collapsed)
    capitalized = "".join(p if p in (" ", "-") else p[:1].upper() + p[1:] for p in pieces)
    return capitalized.replace(" ", "_")


def _distinct(lemmas: Sequence[str]) -> List[str]:
    return list(dict.fromkeys(lemmas))


def normalize_names(records: Sequence[SynsetRecord], warnings: Optional[List[str]] = None) -> Dict[str, str]:
    """Map synset id -> unique concept name for a complete corpus.

    Names that still collide after the four rules get a further ``_K``
    suffix (K >= 2) in source order; each such rename is reported.
    """
    positions: Dict[str, Dict[str, int]] = defaultdict(dict)
    for record in records:
        for lemma in _distinct(record.lemmas):
            holders = positions[lemma]
            holders.setdefault(record.synset_id, len(holders) + 1)

    base: Dict[str, str] = {}
    for record in records:
        lemmas = _distinct(record.lemmas)
        if len(lemmas) > 1:
            base[record.synset_id] = LEMMA_JOINER.join(normalize_lemma(l) for l in lemmas)
            continue
        lemma = lemmas[0]
        name = normalize_lemma(lemma)
        if len(positions[lemma]) >= 2:
            name = f"{name}_{positions[lemma][record.synset_id]}"
        base[record.synset_id] = name

    reserved = set(base.values())
    taken = set()
    names: Dict[str, str] = {}
    for record in records:
        name = base[record.synset_id]
        if name in taken:
            k = 2
            while f"{name}_{k}" in taken or f"{name}_{k}" in reserved:
                k += 1
            renamed = f"{name}_{k}"
            msg = f"name collision on {name}: synset {record.synset_id} renamed to {renamed}"
            logger.warning(msg)
            if warnings is not None:
                warnings.append(msg)
            name = renamed
        taken.add(name)
        names[record.synset_id] = name
    return names
