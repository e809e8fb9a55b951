"""WordNet ingestion: Prolog clause parsing, concept naming, taxonomy assembly."""

from .corpus import CorpusStats, build_taxonomy, compute_stats, parse_quasi_synonyms, stats_for_taxonomy
from .naming import normalize_lemma, normalize_names
from .wordnet_prolog import PrologDatabase, SynsetRecord, parse_prolog_db

__all__ = [
    "CorpusStats",
    "PrologDatabase",
    "SynsetRecord",
    "build_taxonomy",
    "compute_stats",
    "normalize_lemma",
    "normalize_names",
    "parse_prolog_db",
    "parse_quasi_synonyms",
    "stats_for_taxonomy",
]
