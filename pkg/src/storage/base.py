"""Abstract interface for taxonomy storage backends."""

from __future__ import annotations

from typing import List, Optional

from ..core.taxonomy import Taxonomy


class TaxonomyStore:
    """Interface for on-disk taxonomy formats.

    Concrete backends implement:

    * ``load`` - build a :class:`Taxonomy` from the backing source
    * ``dump`` - write a taxonomy back (formats that support export)

    Non-fatal problems met while loading are appended to ``warnings``.
    """

    def __init__(self) -> None:
        self.warnings: List[str] = []

    def load(self) -> Taxonomy:
        raise NotImplementedError

    def dump(self, taxonomy: Taxonomy, header: Optional[List[str]] = None) -> str:
        raise NotImplementedError(f"{type(self).__name__} is read-only")
