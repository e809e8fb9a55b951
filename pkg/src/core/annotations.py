"""Meta-property annotations: file parsing, effective profiles, suggestions.

Annotation file records (one per line, ``#`` starts a comment line)::

    P <name> <tokens...>                 profile
    I <name>                             individual
    A <name> <CATEGORY>                  category assignment
    M <name> COVER|REJECT|IMPORT <TARGET>  mapping directive

Names are stored verbatim; resolving them against a taxonomy happens later
(see :func:`resolve_annotations`).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from loguru import logger

from .catalog import Category, MappingTarget, parse_category, parse_target
from .errors import AnnotationConflictError, ParseError, UnknownCategoryError
from .meta_properties import (
    Concreteness,
    Dependence,
    Extensionality,
    Identity,
    MetaProfile,
    NotionalDependence,
    Rigidity,
    UNKNOWN_PROFILE,
    Unity,
)
from .taxonomy import Taxonomy


class Directive(Enum):
    COVER = "COVER"
    REJECT = "REJECT"
    IMPORT = "IMPORT"


@dataclass(frozen=True)
class MappingDirective:
    name: str
    directive: Directive
    target: MappingTarget


@dataclass(frozen=True)
class AnnotationSet:
    """Declarative user annotations; treated as read-only once parsed."""

    profiles: Dict[str, MetaProfile] = field(default_factory=dict)
    individuals: FrozenSet[str] = frozenset()
    category_assignments: Dict[str, Category] = field(default_factory=dict)
    mapping_directives: Tuple[MappingDirective, ...] = ()
    warnings: Tuple[str, ...] = ()

    def profile(self, name: str) -> MetaProfile:
        return self.profiles.get(name, UNKNOWN_PROFILE)

    def with_profiles(self, extra: Dict[str, MetaProfile]) -> "AnnotationSet":
        merged = dict(self.profiles)
        merged.update(extra)
        return replace(self, profiles=merged)

    def referenced_names(self) -> List[str]:
        names = set(self.profiles) | set(self.individuals) | set(self.category_assignments)
        names.update(d.name for d in self.mapping_directives)
        return sorted(names)


# Profile tokens -------------------------------------------------------------------

_SLOT_TOKENS = {
    "+R": ("rigidity", Rigidity.RIGID),
    "-R": ("rigidity", Rigidity.NON_RIGID),
    "~R": ("rigidity", Rigidity.ANTI_RIGID),
    "+I:supplies": ("identity", Identity.SUPPLIES_IC),
    "+I:carries": ("identity", Identity.CARRIES_IC),
    "-I": ("identity", Identity.NO_IC),
    "+D": ("dependence", Dependence.DEPENDENT),
    "-D": ("dependence", Dependence.INDEPENDENT),
    "-ND": ("notional_dependence", NotionalDependence.NOT_ND),
    "+U": ("unity", Unity.UNITY),
    "~U": ("unity", Unity.ANTI_UNITY),
    "*U": ("unity", Unity.WHOLE_NO_COMMON_RELATION),
    "+E": ("extensionality", Extensionality.EXTENSIONAL),
    "~E": ("extensionality", Extensionality.ANTI_EXTENSIONAL),
    "+C": ("concreteness", Concreteness.CONCRETE),
    "~C": ("concreteness", Concreteness.NON_CONCRETE),
}


def parse_profile_tokens(tokens: Iterable[str]) -> MetaProfile:
    """Build a profile from annotation tokens; raises ``ValueError`` on bad input."""
    slots: Dict[str, object] = {}
    for token in tokens:
        if token == "META":
            key, value = "meta_level", True
        elif token == "+ND" or token.startswith("+ND:"):
            key, value = "notional_dependence", NotionalDependence.ND
            target = token[4:] if token.startswith("+ND:") else ""
            if target:
                slots["nd_target"] = target
        elif token in _SLOT_TOKENS:
            key, value = _SLOT_TOKENS[token]
        else:
            raise ValueError(f"unknown meta-property token {token!r}")
        if key in slots:
            raise ValueError(f"slot {key} given twice")
        slots[key] = value
    return MetaProfile(**slots)  # type: ignore[arg-type]


def parse_annotations(lines: Iterable[str], source: Optional[str] = None) -> AnnotationSet:
    """Parse an annotation stream (any iterable of text lines)."""
    profiles: Dict[str, MetaProfile] = {}
    profile_lines: Dict[str, int] = {}
    individuals: Dict[str, int] = {}
    assignments: Dict[str, Category] = {}
    directives: List[MappingDirective] = []
    warnings: List[str] = []

    def fail(reason: str, line_no: int, raw: str) -> ParseError:
        return ParseError(reason, line_no=line_no, text=raw, source=source)

    for line_no, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]

        if tag == "P":
            if len(fields) < 2:
                raise fail("profile line needs a concept name", line_no, raw)
            name = fields[1]
            try:
                profile = parse_profile_tokens(fields[2:])
            except ValueError as exc:
                raise fail(str(exc), line_no, raw) from None
            if name in profiles:
                msg = f"line {line_no}: duplicate profile for {name}, last one wins"
                logger.warning(msg)
                warnings.append(msg)
            profiles[name] = profile
            profile_lines[name] = line_no

        elif tag == "I":
            if len(fields) != 2:
                raise fail("individual line takes exactly one name", line_no, raw)
            individuals.setdefault(fields[1], line_no)

        elif tag == "A":
            if len(fields) != 3:
                raise fail("assignment line takes a name and a category", line_no, raw)
            try:
                category = parse_category(fields[2])
            except UnknownCategoryError as exc:
                raise fail(str(exc), line_no, raw) from None
            if fields[1] in assignments:
                msg = f"line {line_no}: duplicate category assignment for {fields[1]}, last one wins"
                logger.warning(msg)
                warnings.append(msg)
            assignments[fields[1]] = category

        elif tag == "M":
            if len(fields) != 4:
                raise fail("mapping line takes a name, a directive and a target", line_no, raw)
            try:
                directive = Directive(fields[2].upper())
            except ValueError:
                raise fail(f"unknown mapping directive {fields[2]!r}", line_no, raw) from None
            try:
                target = parse_target(fields[3])
            except UnknownCategoryError as exc:
                raise fail(str(exc), line_no, raw) from None
            directives.append(MappingDirective(fields[1], directive, target))

        else:
            raise fail(f"unknown record type {tag!r}", line_no, raw)

    for name, line_no in sorted(individuals.items()):
        profile = profiles.get(name)
        if profile is not None and profile.rigidity is not Rigidity.UNKNOWN:
            later = max(line_no, profile_lines[name])
            raise AnnotationConflictError(
                f"{name} is declared an individual and also given rigidity {profile.rigidity.value}",
                line_no=later,
                source=source,
            )

    return AnnotationSet(
        profiles=profiles,
        individuals=frozenset(individuals),
        category_assignments=assignments,
        mapping_directives=tuple(directives),
        warnings=tuple(warnings),
    )


def resolve_annotations(taxonomy: Taxonomy, annotations: AnnotationSet) -> List[str]:
    """Warnings for annotated names that the taxonomy does not contain."""
    warnings = [
        f"annotation names unknown concept {name}"
        for name in annotations.referenced_names()
        if not taxonomy.has_name(name)
    ]
    for msg in warnings:
        logger.warning(msg)
    return warnings


# Effective profiles ---------------------------------------------------------------

def _upgrade(own: MetaProfile, has_supplier_ancestor: bool) -> MetaProfile:
    if has_supplier_ancestor and own.identity in (Identity.NO_IC, Identity.UNKNOWN):
        return own.with_identity(Identity.CARRIES_IC)
    return own


def _supplier_ids(taxonomy: Taxonomy, annotations: AnnotationSet) -> FrozenSet[str]:
    return frozenset(
        taxonomy.id_of(name)
        for name, profile in annotations.profiles.items()
        if profile.identity is Identity.SUPPLIES_IC and taxonomy.has_name(name)
    )


def effective_profile(cid: str, taxonomy: Taxonomy, annotations: AnnotationSet) -> MetaProfile:
    """Own profile, with the identity criterion inherited from any supplying ancestor.

    Only identity is inherited; the other slots stay as annotated.
    """
    concept = taxonomy.concept(cid)
    own = annotations.profile(concept.name)
    suppliers = _supplier_ids(taxonomy, annotations)
    return _upgrade(own, bool(taxonomy.ancestor_set(cid) & suppliers))


def effective_profiles(taxonomy: Taxonomy, annotations: AnnotationSet) -> Dict[str, MetaProfile]:
    """Effective profile of every concept, keyed by concept id."""
    suppliers = _supplier_ids(taxonomy, annotations)
    return {
        c.id: _upgrade(annotations.profile(c.name), bool(taxonomy.ancestor_set(c.id) & suppliers))
        for c in taxonomy.concepts()
    }


# Suggestions from children --------------------------------------------------------

# slot -> (values counted as "+F", values counted as "anti-F", +F glyph, anti-F glyph)
POLAR_SLOTS = (
    ("rigidity", (Rigidity.RIGID,), (Rigidity.ANTI_RIGID,), "+R", "~R"),
    ("unity", (Unity.UNITY, Unity.WHOLE_NO_COMMON_RELATION), (Unity.ANTI_UNITY,), "+U", "~U"),
    ("extensionality", (Extensionality.EXTENSIONAL,), (Extensionality.ANTI_EXTENSIONAL,), "+E", "~E"),
    ("concreteness", (Concreteness.CONCRETE,), (Concreteness.NON_CONCRETE,), "+C", "~C"),
)


@dataclass(frozen=True)
class Suggestion:
    """A value the concept must not take, given what its descendants carry."""

    concept: str
    slot: str
    forbidden: str
    witnesses: Tuple[str, ...]
    conflicts_with_annotation: bool = False

    @property
    def message(self) -> str:
        return f"cannot be {self.forbidden} (witness: {', '.join(self.witnesses)})"


def suggest_from_children(
    cid: str,
    taxonomy: Taxonomy,
    annotations: AnnotationSet,
    profiles: Optional[Dict[str, MetaProfile]] = None,
) -> List[Suggestion]:
    """Scan every descendant and list the polar values the concept cannot take.

    A descendant carrying +F rules out anti-F for the concept; a descendant
    carrying anti-F rules out +F. Callers looping over many concepts should
    pass ``profiles`` from one ``effective_profiles`` call.
    """
    name = taxonomy.name_of(cid)
    descendants = taxonomy.descendants(cid)
    if not descendants:
        return []
    if profiles is None:
        profiles = effective_profiles(taxonomy, annotations)
    own = profiles[cid]

    suggestions: List[Suggestion] = []
    for slot, positive, anti, plus_glyph, anti_glyph in POLAR_SLOTS:
        pos_witnesses = tuple(taxonomy.name_of(d) for d in descendants if getattr(profiles[d], slot) in positive)
        anti_witnesses = tuple(taxonomy.name_of(d) for d in descendants if getattr(profiles[d], slot) in anti)
        own_value = getattr(own, slot)
        if pos_witnesses:
            suggestions.append(
                Suggestion(name, slot, anti_glyph, pos_witnesses, own_value in anti)
            )
        if anti_witnesses:
            suggestions.append(
                Suggestion(name, slot, plus_glyph, anti_witnesses, own_value.value == plus_glyph)
            )
    return suggestions
