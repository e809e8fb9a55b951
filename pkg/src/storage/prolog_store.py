"""WordNet Prolog distribution directory as a taxonomy source."""

from __future__ import annotations

import os
from typing import List, Optional, Sequence

from loguru import logger

from ..core.errors import ParseError
from ..core.taxonomy import Taxonomy
from ..ingest.corpus import CorpusStats, build_taxonomy
from ..ingest.naming import normalize_names
from ..ingest.wordnet_prolog import parse_prolog_db
from .base import TaxonomyStore

SYNSET_FILE = "wn_s.pl"
HYPERNYM_FILE = "wn_hyp.pl"
GLOSS_FILE = "wn_g.pl"


class PrologWordNetStore(TaxonomyStore):
    """Parse, normalize and build from ``wn_s.pl``, ``wn_hyp.pl`` and ``wn_g.pl``.

    The gloss file is optional.  After :meth:`load`, ``stats`` holds the
    corpus statistics and ``warnings`` every non-fatal problem found.
    """

    def __init__(
        self,
        directory: str,
        encoding: str = "utf-8",
        quasi_synonyms: Optional[Sequence[Sequence[str]]] = None,
    ) -> None:
        super().__init__()
        self.directory = directory
        self.encoding = encoding
        self.quasi_synonyms = quasi_synonyms
        self.stats: Optional[CorpusStats] = None

    def _read(self, filename: str, required: bool = True) -> List[str]:
        path = os.path.join(self.directory, filename)
        if not required and not os.path.exists(path):
            logger.info(f"{path} not found, glosses left empty")
            return []
        with open(path, encoding=self.encoding) as handle:
            return handle.readlines()

    def load(self) -> Taxonomy:
        synsets = self._read(SYNSET_FILE)
        hypernyms = self._read(HYPERNYM_FILE)
        glosses = self._read(GLOSS_FILE, required=False)
        try:
            db = parse_prolog_db(synsets, hypernyms, glosses)
        except ParseError as exc:
            raise exc.with_source(os.path.join(self.directory, exc.source or SYNSET_FILE))

        self.warnings.extend(db.warnings)
        names = normalize_names(db.records, self.warnings)
        taxonomy, self.stats = build_taxonomy(
            db.records, db.hypernyms, names, self.warnings, quasi_synonyms=self.quasi_synonyms
        )
        return taxonomy
