"""Constraint checking over an annotated taxonomy.

Four defect families are detected:

* formal-property subsumption ("anti-F cannot subsume F") for rigidity,
  unity, extensionality and concreteness, plus roles subsuming types;
  checked over every (descendant, ancestor) pair of the IS_A closure;
* declared individuals placed as classes;
* object-level concepts mixed with meta-level ones;
* category assignments that contradict the catalog profile.

Rules whose deciding slots are UNKNOWN are suppressed and counted, never
guessed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from loguru import logger

from ..core.annotations import AnnotationSet, effective_profile, effective_profiles, resolve_annotations
from ..core.catalog import CATALOG, MappingTarget, category_of, parse_target, target_label
from ..core.meta_properties import (
    Concreteness,
    Extensionality,
    MetaCategory,
    MetaProfile,
    Rigidity,
    Unity,
    classify_meta_category,
    is_role,
)
from ..core.taxonomy import EdgeKind, Taxonomy


class ViolationKind(Enum):
    RIGIDITY = "RIGIDITY"
    UNITY = "UNITY"
    EXTENSIONALITY = "EXTENSIONALITY"
    CONCRETENESS = "CONCRETENESS"
    ROLE_OVER_TYPE = "ROLE_OVER_TYPE"
    INSTANCE_MIXING = "INSTANCE_MIXING"
    META_LEVEL_MIXING = "META_LEVEL_MIXING"
    CATEGORY_INCOMPATIBLE = "CATEGORY_INCOMPATIBLE"


class Repair(Enum):
    DROP_EDGE = "DROP_EDGE"
    REANNOTATE = "REANNOTATE"
    CONVERT_TO_INSTANCE_OF = "CONVERT_TO_INSTANCE_OF"
    MOVE_CONCEPT = "MOVE_CONCEPT"


_KIND_ORDER = {kind: index for index, kind in enumerate(ViolationKind)}


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    subject: str
    object: Optional[str]
    path: Tuple[str, ...]
    explanation: str
    suggested_repair: Repair

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.subject, self.object or "", self.explanation)

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "subject": self.subject,
            "object": self.object,
            "path": list(self.path),
            "explanation": self.explanation,
            "suggested_repair": self.suggested_repair.value,
        }


@dataclass
class CheckReport:
    """Sorted violations plus the number of pairs nothing could be decided on."""

    violations: List[Violation] = field(default_factory=list)
    skipped: int = 0
    warnings: List[str] = field(default_factory=list)

    @property
    def stats(self) -> Dict[str, int]:
        counts = Counter(v.kind for v in self.violations)
        return {kind.value: counts.get(kind, 0) for kind in ViolationKind}

    def extend(self, violations: List[Violation], skipped: int = 0) -> None:
        self.violations.extend(violations)
        self.violations.sort(key=Violation.sort_key)
        self.skipped += skipped


# Pair rules -----------------------------------------------------------------------

# kind, slot, upper value that forbids, lower values it forbids
_POLAR_RULES = (
    (ViolationKind.RIGIDITY, "rigidity", Rigidity.ANTI_RIGID, (Rigidity.RIGID,)),
    (ViolationKind.UNITY, "unity", Unity.ANTI_UNITY, (Unity.UNITY, Unity.WHOLE_NO_COMMON_RELATION)),
    (
        ViolationKind.EXTENSIONALITY,
        "extensionality",
        Extensionality.ANTI_EXTENSIONAL,
        (Extensionality.EXTENSIONAL,),
    ),
    (ViolationKind.CONCRETENESS, "concreteness", Concreteness.NON_CONCRETE, (Concreteness.CONCRETE,)),
)


def _is_unknown(value: Enum) -> bool:
    return value.name == "UNKNOWN"


_CLASSIFYING_SLOTS = ("rigidity", "identity", "notional_dependence")


@dataclass(frozen=True)
class PairOutcome:
    kinds: Tuple[ViolationKind, ...]
    suppressed: int

    @property
    def skipped(self) -> bool:
        return self.suppressed > 0 and not self.kinds


def evaluate_pair(lower: MetaProfile, upper: MetaProfile) -> PairOutcome:
    """Apply every subsumption rule to ``lower`` IS_A ``upper``."""
    kinds: List[ViolationKind] = []
    suppressed = 0
    for kind, slot, anti, forbidden in _POLAR_RULES:
        upper_value = getattr(upper, slot)
        lower_value = getattr(lower, slot)
        if _is_unknown(upper_value) or _is_unknown(lower_value):
            suppressed += 1
            continue
        if upper_value is anti and lower_value in forbidden:
            kinds.append(kind)

    deciding = [getattr(p, slot) for p in (lower, upper) for slot in _CLASSIFYING_SLOTS]
    if any(_is_unknown(value) for value in deciding):
        suppressed += 1
    elif is_role(classify_meta_category(upper)) and classify_meta_category(lower) is MetaCategory.TYPE:
        kinds.append(ViolationKind.ROLE_OVER_TYPE)
    return PairOutcome(tuple(kinds), suppressed)


def check_pair(lower: MetaProfile, upper: MetaProfile) -> List[ViolationKind]:
    return list(evaluate_pair(lower, upper).kinds)


def _explain(kind: ViolationKind, lower_name: str, upper_name: str, lower: MetaProfile, upper: MetaProfile) -> str:
    if kind is ViolationKind.RIGIDITY:
        return f"{upper_name} is anti-rigid (~R) and cannot subsume the rigid {lower_name} (+R)"
    if kind is ViolationKind.UNITY:
        return f"{upper_name} carries anti-unity (~U) and cannot subsume {lower_name} ({lower.unity.value})"
    if kind is ViolationKind.EXTENSIONALITY:
        return f"{upper_name} is anti-extensional (~E) and cannot subsume the extensional {lower_name} (+E)"
    if kind is ViolationKind.CONCRETENESS:
        return (
            f"{upper_name} is non-concrete (~C) and cannot subsume the concrete {lower_name} (+C)"
            " [concreteness rule is an extension]"
        )
    return (
        f"{upper_name} is a {classify_meta_category(upper).value} and cannot subsume "
        f"the type {lower_name}"
    )


def check_taxonomy(taxonomy: Taxonomy, annotations: AnnotationSet) -> CheckReport:
    """Subsumption rules over every (descendant, ancestor) pair of the closure."""
    profiles = effective_profiles(taxonomy, annotations)
    violations: List[Violation] = []
    skipped = 0

    for concept in taxonomy.concepts():
        ancestors = taxonomy.ancestors(concept.id)
        if not ancestors:
            continue
        direct = set(taxonomy.parents(concept.id))
        paths: Optional[Dict[str, List[str]]] = None
        lower = profiles[concept.id]
        for ancestor in ancestors:
            upper = profiles[ancestor]
            outcome = evaluate_pair(lower, upper)
            if outcome.skipped:
                skipped += 1
            if not outcome.kinds:
                continue
            if paths is None:
                paths = taxonomy.witness_paths(concept.id)
            path = tuple(taxonomy.name_of(cid) for cid in paths[ancestor])
            upper_name = taxonomy.name_of(ancestor)
            repair = Repair.DROP_EDGE if ancestor in direct else Repair.MOVE_CONCEPT
            for kind in outcome.kinds:
                violations.append(
                    Violation(
                        kind=kind,
                        subject=concept.name,
                        object=upper_name,
                        path=path,
                        explanation=_explain(kind, concept.name, upper_name, lower, upper),
                        suggested_repair=repair,
                    )
                )

    violations.sort(key=Violation.sort_key)
    logger.debug(f"subsumption check: {len(violations)} violations, {skipped} pairs skipped")
    return CheckReport(violations=violations, skipped=skipped)


def check_instances(taxonomy: Taxonomy, annotations: AnnotationSet) -> List[Violation]:
    """Declared individuals that sit in the taxonomy as classes."""
    violations = []
    for name in sorted(annotations.individuals):
        if not taxonomy.has_name(name):
            continue
        cid = taxonomy.id_of(name)
        for parent in taxonomy.parents(cid, EdgeKind.IS_A):
            parent_name = taxonomy.name_of(parent)
            violations.append(
                Violation(
                    kind=ViolationKind.INSTANCE_MIXING,
                    subject=name,
                    object=parent_name,
                    path=(name, parent_name),
                    explanation=f"{name} is an individual but is subsumed by {parent_name}; it is an instance of it",
                    suggested_repair=Repair.CONVERT_TO_INSTANCE_OF,
                )
            )
        children = taxonomy.children(cid, EdgeKind.IS_A)
        if children:
            listed = ", ".join(taxonomy.name_of(c) for c in children)
            violations.append(
                Violation(
                    kind=ViolationKind.INSTANCE_MIXING,
                    subject=name,
                    object=None,
                    path=(name,),
                    explanation=f"{name} is an individual but subsumes {listed}",
                    suggested_repair=Repair.REANNOTATE,
                )
            )
    violations.sort(key=Violation.sort_key)
    return violations


def check_meta_levels(taxonomy: Taxonomy, annotations: AnnotationSet) -> List[Violation]:
    """Pairs of the closure where exactly one side is a meta-level concept."""
    violations = []
    for concept in taxonomy.concepts():
        lower_meta = annotations.profile(concept.name).meta_level
        mixed = [
            a for a in taxonomy.ancestors(concept.id)
            if annotations.profile(taxonomy.name_of(a)).meta_level != lower_meta
        ]
        if not mixed:
            continue
        paths = taxonomy.witness_paths(concept.id)
        for ancestor in mixed:
            upper_name = taxonomy.name_of(ancestor)
            if lower_meta:
                explanation = f"{concept.name} is a meta-level concept under the object-level {upper_name}"
            else:
                explanation = f"{concept.name} is an object-level concept under the meta-level {upper_name}"
            violations.append(
                Violation(
                    kind=ViolationKind.META_LEVEL_MIXING,
                    subject=concept.name,
                    object=upper_name,
                    path=tuple(taxonomy.name_of(cid) for cid in paths[ancestor]),
                    explanation=explanation,
                    suggested_repair=Repair.MOVE_CONCEPT,
                )
            )
    violations.sort(key=Violation.sort_key)
    return violations


# Category assignment ----------------------------------------------------------

# category unity -> concept unity values that conflict with it
_UNITY_CONFLICTS = {
    Unity.UNITY: (Unity.ANTI_UNITY, Unity.WHOLE_NO_COMMON_RELATION),
    Unity.ANTI_UNITY: (Unity.UNITY, Unity.WHOLE_NO_COMMON_RELATION),
    Unity.WHOLE_NO_COMMON_RELATION: (Unity.ANTI_UNITY,),
}

_ASSIGNMENT_SLOTS = ("dependence", "unity", "extensionality", "concreteness")


def profile_conflicts(
    name: str, profile: MetaProfile, target: MappingTarget
) -> Tuple[List[Violation], int]:
    """Conflicting slots, and how many slots could be compared at all."""
    required = CATALOG[category_of(target)].profile
    label = target_label(target)
    violations = []
    compared = 0
    for slot in _ASSIGNMENT_SLOTS:
        wanted = getattr(required, slot)
        actual = getattr(profile, slot)
        if _is_unknown(wanted) or _is_unknown(actual):
            continue
        compared += 1
        if slot == "unity":
            conflict = actual in _UNITY_CONFLICTS[wanted]
        else:
            conflict = actual is not wanted
        if conflict:
            violations.append(
                Violation(
                    kind=ViolationKind.CATEGORY_INCOMPATIBLE,
                    subject=name,
                    object=None,
                    path=(name,),
                    explanation=f"{name} is {actual.value} but {label} requires {wanted.value} ({slot})",
                    suggested_repair=Repair.REANNOTATE,
                )
            )
    return violations, compared


def check_category_assignment(
    cid: str,
    category: Union[MappingTarget, str],
    taxonomy: Taxonomy,
    annotations: AnnotationSet,
) -> List[Violation]:
    """Slot-by-slot comparison of a concept's effective profile with a catalog entry.

    Rigidity is not compared, so roles may be placed under rigid categories.
    """
    target = parse_target(category) if isinstance(category, str) else category
    profile = effective_profile(cid, taxonomy, annotations)
    violations, _ = profile_conflicts(taxonomy.name_of(cid), profile, target)
    return violations


def check_assignments(taxonomy: Taxonomy, annotations: AnnotationSet) -> Tuple[List[Violation], int]:
    """Every ``A`` line of the annotations; all-UNKNOWN comparisons count as skipped."""
    profiles = effective_profiles(taxonomy, annotations)
    violations: List[Violation] = []
    skipped = 0
    for name, category in sorted(annotations.category_assignments.items()):
        if not taxonomy.has_name(name):
            continue
        found, compared = profile_conflicts(name, profiles[taxonomy.id_of(name)], category)
        violations.extend(found)
        if compared == 0:
            skipped += 1
    return violations, skipped


def run_checks(taxonomy: Taxonomy, annotations: AnnotationSet, resolve: bool = True) -> CheckReport:
    """All checks, merged into one canonically sorted report.

    With ``resolve`` off, annotation warnings are left to the caller.
    """
    warnings = list(annotations.warnings)
    if resolve:
        warnings.extend(resolve_annotations(taxonomy, annotations))

    report = check_taxonomy(taxonomy, annotations)
    report.warnings = warnings
    report.extend(check_instances(taxonomy, annotations))
    report.extend(check_meta_levels(taxonomy, annotations))
    assignment_violations, assignment_skipped = check_assignments(taxonomy, annotations)
    report.extend(assignment_violations, assignment_skipped)
    logger.info(f"check finished: {len(report.violations)} violations, {report.skipped} skipped")
    return report


def violations_by_subject(violations: List[Violation]) -> Dict[str, List[Violation]]:
    grouped: Dict[str, List[Violation]] = {}
    for violation in violations:
        grouped.setdefault(violation.subject, []).append(violation)
    return grouped


__all__ = [
    "CheckReport",
    "PairOutcome",
    "Repair",
    "Violation",
    "ViolationKind",
    "check_assignments",
    "profile_conflicts",
    "check_category_assignment",
    "check_instances",
    "check_meta_levels",
    "check_pair",
    "check_taxonomy",
    "evaluate_pair",
    "run_checks",
    "violations_by_subject",
]
