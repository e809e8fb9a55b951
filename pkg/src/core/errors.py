"""Exception hierarchy shared by every TaxoClean module."""

from __future__ import annotations

from typing import Optional


class TaxoCleanError(Exception):
    """Base class for all errors raised by TaxoClean."""


class TaxonomyError(TaxoCleanError):
    """Structural problem with a taxonomy graph."""


class DuplicateNameError(TaxonomyError):
    def __init__(self, name: str) -> None:
        super().__init__(f"concept name already present: {name}")
        self.name = name


class UnknownConceptError(TaxonomyError, KeyError):
    def __init__(self, ref: str) -> None:
        super().__init__(f"unknown concept: {ref}")
        self.ref = ref

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return self.args[0]


class InvalidEdgeError(TaxonomyError):
    """Edge that is malformed regardless of the graph (e.g. a self edge)."""


class CycleError(TaxonomyError):
    def __init__(self, child: str, parent: str) -> None:
        super().__init__(f"IS_A edge {child} -> {parent} would create a cycle")
        self.child = child
        self.parent = parent


class InstanceAsClassError(TaxonomyError):
    """An individual (INSTANCE_OF child) was used as a class."""


class ParseError(TaxoCleanError):
    """Malformed input line; keeps enough context for a one-line diagnostic."""

    def __init__(
        self,
        reason: str,
        *,
        line_no: Optional[int] = None,
        text: Optional[str] = None,
        source: Optional[str] = None,
    ) -> None:
        self.reason = reason
        self.line_no = line_no
        self.text = text
        self.source = source
        super().__init__(self._format())

    def _format(self) -> str:
        where = self.source or "<input>"
        if self.line_no is not None:
            where = f"{where}:{self.line_no}"
        msg = f"{where}: {self.reason}"
        if self.text is not None:
            msg += f" [{self.text.strip()}]"
        return msg

    def with_source(self, source: str) -> "ParseError":
        self.source = source
        self.args = (self._format(),)
        return self


class AnnotationConflictError(ParseError):
    """A name is declared both as an individual and with a supplied rigidity."""


class UnknownCategoryError(TaxoCleanError, ValueError):
    def __init__(self, category: str) -> None:
        super().__init__(f"unknown top-level category: {category}")
        self.category = category


class UnknownDirectiveTargetError(TaxoCleanError):
    def __init__(self, name: str) -> None:
        super().__init__(f"mapping directive names an absent concept: {name}")
        self.name = name
