"""Built-in top-level category catalog.

Ten rigid categories with fixed meta-property signatures, plus the niches
used as finer mapping targets (relevant parts, dependent regions, quality
spaces ...).  A niche shares its category's profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Union

from .errors import UnknownCategoryError
from .meta_properties import (
    Concreteness,
    Dependence,
    Extensionality,
    MetaProfile,
    Rigidity,
    Unity,
)


class Category(Enum):
    AGGREGATE = "Aggregate"
    AMOUNT_OF_MATTER = "Amount_of_Matter"
    PLURALITY = "Plurality"
    OBJECT = "Object"
    PHYSICAL_BODY = "Physical_Body"
    ORDINARY_OBJECT = "Ordinary_Object"
    EVENT = "Event"
    FEATURE = "Feature"
    QUALITY = "Quality"
    ABSTRACTION = "Abstraction"


class Niche(Enum):
    RELEVANT_PART = "Relevant_Part"
    PLURAL_FEATURE = "Plural_Feature"
    DEPENDENT_REGION = "Dependent_Region"
    ABSTRACT_ENTITY = "Abstract_Entity"
    QUALITY_SPACE = "Quality_Space"
    COGNITIVE_EVENT = "Cognitive_Event"


NICHE_CATEGORY: Dict[Niche, Category] = {
    Niche.RELEVANT_PART: Category.FEATURE,
    Niche.PLURAL_FEATURE: Category.FEATURE,
    Niche.DEPENDENT_REGION: Category.FEATURE,
    Niche.ABSTRACT_ENTITY: Category.ABSTRACTION,
    Niche.QUALITY_SPACE: Category.ABSTRACTION,
    Niche.COGNITIVE_EVENT: Category.EVENT,
}

MappingTarget = Union[Category, Niche]


@dataclass(frozen=True)
class CategoryProfile:
    category: Category
    profile: MetaProfile
    broader: Optional[Category] = None  # report grouping only
    no_proper_parts: bool = False
    niches: List[Niche] = field(default_factory=list)


def _rigid(**slots) -> MetaProfile:
    return MetaProfile(rigidity=Rigidity.RIGID, **slots)


# The header glyph for aggregates and objects reads "~D"; the prose says they
# are independent entities, so both carry -D.
CATALOG: Dict[Category, CategoryProfile] = {
    Category.AGGREGATE: CategoryProfile(
        Category.AGGREGATE,
        _rigid(dependence=Dependence.INDEPENDENT, unity=Unity.ANTI_UNITY),
    ),
    Category.AMOUNT_OF_MATTER: CategoryProfile(
        Category.AMOUNT_OF_MATTER,
        _rigid(
            dependence=Dependence.INDEPENDENT,
            unity=Unity.ANTI_UNITY,
            extensionality=Extensionality.EXTENSIONAL,
        ),
        broader=Category.AGGREGATE,
    ),
    Category.PLURALITY: CategoryProfile(
        Category.PLURALITY,
        _rigid(dependence=Dependence.INDEPENDENT, unity=Unity.ANTI_UNITY),
        broader=Category.AGGREGATE,
    ),
    Category.OBJECT: CategoryProfile(
        Category.OBJECT,
        _rigid(dependence=Dependence.INDEPENDENT, unity=Unity.WHOLE_NO_COMMON_RELATION),
    ),
    Category.PHYSICAL_BODY: CategoryProfile(
        Category.PHYSICAL_BODY,
        _rigid(
            dependence=Dependence.INDEPENDENT,
            unity=Unity.WHOLE_NO_COMMON_RELATION,
            extensionality=Extensionality.EXTENSIONAL,
        ),
        broader=Category.OBJECT,
    ),
    Category.ORDINARY_OBJECT: CategoryProfile(
        Category.ORDINARY_OBJECT,
        _rigid(
            dependence=Dependence.INDEPENDENT,
            unity=Unity.WHOLE_NO_COMMON_RELATION,
            extensionality=Extensionality.ANTI_EXTENSIONAL,
        ),
        broader=Category.OBJECT,
    ),
    Category.EVENT: CategoryProfile(
        Category.EVENT,
        _rigid(dependence=Dependence.DEPENDENT, extensionality=Extensionality.EXTENSIONAL),
        niches=[Niche.COGNITIVE_EVENT],
    ),
    Category.FEATURE: CategoryProfile(
        Category.FEATURE,
        _rigid(
            dependence=Dependence.DEPENDENT,
            extensionality=Extensionality.ANTI_EXTENSIONAL,
            unity=Unity.WHOLE_NO_COMMON_RELATION,
        ),
        niches=[Niche.RELEVANT_PART, Niche.PLURAL_FEATURE, Niche.DEPENDENT_REGION],
    ),
    Category.QUALITY: CategoryProfile(
        Category.QUALITY,
        _rigid(
            dependence=Dependence.DEPENDENT,
            extensionality=Extensionality.EXTENSIONAL,
            unity=Unity.UNITY,
        ),
        no_proper_parts=True,
    ),
    Category.ABSTRACTION: CategoryProfile(
        Category.ABSTRACTION,
        _rigid(concreteness=Concreteness.NON_CONCRETE),
        niches=[Niche.ABSTRACT_ENTITY, Niche.QUALITY_SPACE],
    ),
}


def _token(text: str) -> str:
    return text.strip().upper().replace("-", "_").replace(" ", "_")


def parse_category(text: str) -> Category:
    """Top-level category from a token such as ``FEATURE`` or ``Amount_of_matter``."""
    token = _token(text)
    try:
        return Category[token]
    except KeyError:
        raise UnknownCategoryError(text) from None


def parse_target(text: str) -> MappingTarget:
    """Category or niche named by a mapping directive."""
    token = _token(text)
    if token in Category.__members__:
        return Category[token]
    if token in Niche.__members__:
        return Niche[token]
    raise UnknownCategoryError(text)


def category_of(target: MappingTarget) -> Category:
    if isinstance(target, Niche):
        return NICHE_CATEGORY[target]
    return target


def profile_for(target: MappingTarget) -> CategoryProfile:
    try:
        return CATALOG[category_of(target)]
    except KeyError:
        raise UnknownCategoryError(str(target)) from None


def target_label(target: MappingTarget) -> str:
    """Concept name used for the category or niche in a cleaned taxonomy."""
    return target.value


def report_order(target: MappingTarget) -> tuple:
    """Sort key that lists a category's niches right after it."""
    categories = list(Category)
    if isinstance(target, Niche):
        parent = NICHE_CATEGORY[target]
        return (categories.index(parent), 1, list(Niche).index(target))
    return (categories.index(target), 0, 0)
