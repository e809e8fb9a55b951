"""Taxonomy storage backends.

The native tab-separated format is both the fixture and the export format;
the Prolog backend reads a WordNet distribution directory.
"""

from .base import TaxonomyStore
from .native_store import NativeTaxonomyStore, dump_native, parse_native
from .prolog_store import PrologWordNetStore

__all__ = [
    "TaxonomyStore",
    "NativeTaxonomyStore",
    "PrologWordNetStore",
    "dump_native",
    "parse_native",
]
