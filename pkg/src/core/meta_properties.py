"""OntoClean meta-properties and the type/role classification.

Each slot of :class:`MetaProfile` is an enum whose values are the glyphs
used in annotation files (``+R``, ``~U`` ...).  ``UNKNOWN`` means the
annotator said nothing; checks never guess it away.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional


class Rigidity(Enum):
    RIGID = "+R"
    NON_RIGID = "-R"
    ANTI_RIGID = "~R"
    UNKNOWN = "?R"


class Identity(Enum):
    SUPPLIES_IC = "+I:supplies"
    CARRIES_IC = "+I:carries"
    NO_IC = "-I"
    UNKNOWN = "?I"


class Dependence(Enum):
    DEPENDENT = "+D"
    INDEPENDENT = "-D"
    UNKNOWN = "?D"


class NotionalDependence(Enum):
    ND = "+ND"
    NOT_ND = "-ND"
    UNKNOWN = "?ND"


class Unity(Enum):
    UNITY = "+U"
    ANTI_UNITY = "~U"
    WHOLE_NO_COMMON_RELATION = "*U"
    UNKNOWN = "?U"


class Extensionality(Enum):
    EXTENSIONAL = "+E"
    ANTI_EXTENSIONAL = "~E"
    UNKNOWN = "?E"


class Concreteness(Enum):
    CONCRETE = "+C"
    NON_CONCRETE = "~C"
    UNKNOWN = "?C"


class MetaCategory(Enum):
    TYPE = "type"
    MATERIAL_ROLE = "material role"
    FORMAL_ROLE = "formal role"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class MetaProfile:
    """Meta-property assignment of one concept."""

    rigidity: Rigidity = Rigidity.UNKNOWN
    identity: Identity = Identity.UNKNOWN
    dependence: Dependence = Dependence.UNKNOWN
    notional_dependence: NotionalDependence = NotionalDependence.UNKNOWN
    nd_target: Optional[str] = None  # free text, never checked
    unity: Unity = Unity.UNKNOWN
    extensionality: Extensionality = Extensionality.UNKNOWN
    concreteness: Concreteness = Concreteness.UNKNOWN
    meta_level: bool = False

    @property
    def carries_ic(self) -> bool:
        return self.identity in (Identity.SUPPLIES_IC, Identity.CARRIES_IC)

    def with_identity(self, identity: Identity) -> "MetaProfile":
        return replace(self, identity=identity)

    def tokens(self) -> str:
        """Known slots rendered in annotation-file syntax."""
        parts = []
        for value in (
            self.rigidity,
            self.identity,
            self.dependence,
            self.notional_dependence,
            self.unity,
            self.extensionality,
            self.concreteness,
        ):
            if value.name == "UNKNOWN":
                continue
            token = value.value
            if value is NotionalDependence.ND and self.nd_target:
                token = f"{token}:{self.nd_target}"
            parts.append(token)
        if self.meta_level:
            parts.append("META")
        return " ".join(parts)


UNKNOWN_PROFILE = MetaProfile()


def classify_meta_category(profile: MetaProfile) -> MetaCategory:
    """Type / material role / formal role, or UNCLASSIFIED.

    Any UNKNOWN among rigidity, identity and notional dependence leaves the
    profile unclassified.
    """
    if profile.rigidity is Rigidity.RIGID:
        if profile.identity is Identity.SUPPLIES_IC and profile.notional_dependence is NotionalDependence.NOT_ND:
            return MetaCategory.TYPE
        return MetaCategory.UNCLASSIFIED

    if profile.rigidity is Rigidity.ANTI_RIGID and profile.notional_dependence is NotionalDependence.ND:
        if profile.identity is Identity.CARRIES_IC:
            return MetaCategory.MATERIAL_ROLE
        if profile.identity is Identity.NO_IC:
            return MetaCategory.FORMAL_ROLE
    return MetaCategory.UNCLASSIFIED


def is_role(category: MetaCategory) -> bool:
    return category in (MetaCategory.MATERIAL_ROLE, MetaCategory.FORMAL_ROLE)
