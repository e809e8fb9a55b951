"""Backbone extraction and top-level category mapping.

Both operations build fresh taxonomies and leave their input untouched.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from loguru import logger

from ..core.annotations import AnnotationSet, Directive, MappingDirective, effective_profiles
from ..core.catalog import CATALOG, Category, MappingTarget, Niche, NICHE_CATEGORY, report_order, target_label
from ..core.errors import UnknownDirectiveTargetError
from ..core.meta_properties import MetaCategory, MetaProfile, Rigidity, classify_meta_category
from ..core.taxonomy import EdgeKind, Taxonomy
from .constraint_checker import Violation, profile_conflicts, run_checks, violations_by_subject


def _copy_concept(source: Taxonomy, cid: str, target: Taxonomy) -> str:
    concept = source.concept(cid)
    return target.add_concept(
        concept.name,
        concept.lemmas,
        gloss=concept.gloss,
        topic=concept.topic,
        external_id=concept.external_id,
    )


# Backbone -------------------------------------------------------------------------

def _ids(taxonomy: Taxonomy) -> List[str]:
    return [c.id for c in taxonomy.concepts()]


@dataclass
class BackboneResult:
    taxonomy: Taxonomy
    removed: List[Tuple[str, str]] = field(default_factory=list)  # (name, rigidity glyph)

    def audit_lines(self) -> List[str]:
        return [f"removed {name} {glyph}" for name, glyph in self.removed]


def _retained(profile: MetaProfile, keep_unknown: bool) -> bool:
    if profile.rigidity is Rigidity.RIGID:
        return True
    return keep_unknown and profile.rigidity is Rigidity.UNKNOWN


def extract_backbone(taxonomy: Taxonomy, annotations: AnnotationSet, keep_unknown: bool = True) -> BackboneResult:
    """Keep rigid concepts (and UNKNOWN ones when ``keep_unknown``).

    Children of removed concepts are linked to every nearest retained
    ancestor, so reachability among retained concepts is unchanged.
    Individuals are always kept and re-attached with INSTANCE_OF.
    """
    profiles = effective_profiles(taxonomy, annotations)
    keep = {
        c.id for c in taxonomy.concepts()
        if taxonomy.is_individual(c.id) or _retained(profiles[c.id], keep_unknown)
    }

    nearest_cache: Dict[str, Set[str]] = {}

    def nearest(cid: str) -> Set[str]:
        """Nearest retained concepts at or above ``cid``."""
        if cid in keep:
            return {cid}
        if cid not in nearest_cache:
            found: Set[str] = set()
            for parent in taxonomy.parents(cid):
                found |= nearest(parent)
            nearest_cache[cid] = found
        return nearest_cache[cid]

    # shallow concepts first, so deeper lookups hit the cache
    for cid in sorted(set(_ids(taxonomy)) - keep, key=lambda c: len(taxonomy.ancestor_set(c))):
        nearest(cid)

    backbone = Taxonomy()
    new_ids = {cid: _copy_concept(taxonomy, cid, backbone) for cid in _ids(taxonomy) if cid in keep}
    for cid in new_ids:
        kind = EdgeKind.INSTANCE_OF if taxonomy.is_individual(cid) else EdgeKind.IS_A
        targets: Set[str] = set()
        for parent in taxonomy.parents(cid, kind):
            targets |= nearest(parent)
        for parent in sorted(targets, key=taxonomy.name_of):
            backbone.add_edge(new_ids[cid], new_ids[parent], kind)

    removed = [
        (c.name, profiles[c.id].rigidity.value) for c in taxonomy.concepts() if c.id not in keep
    ]
    logger.info(f"backbone keeps {len(backbone)} of {len(taxonomy)} concepts")
    return BackboneResult(backbone, removed)


# Category mapping -----------------------------------------------------------------

@dataclass
class MappingRow:
    """Table-style row for one category or niche."""

    target: str
    covered: List[str] = field(default_factory=list)
    rejected: List[Tuple[str, str]] = field(default_factory=list)  # (name, reason)
    imported: List[Tuple[str, Tuple[str, ...]]] = field(default_factory=list)  # (name, original parents)


@dataclass
class MappingReport:
    rows: List[MappingRow] = field(default_factory=list)
    incompatibilities: List[Violation] = field(default_factory=list)
    untouched: List[str] = field(default_factory=list)

    def row(self, target: str) -> Optional[MappingRow]:
        for row in self.rows:
            if row.target == target:
                return row
        return None

    def bucket_counts(self) -> Dict[str, int]:
        """Distinct names per bucket."""
        return {
            "covered": len({n for row in self.rows for n in row.covered}),
            "rejected": len({n for row in self.rows for n, _ in row.rejected}),
            "imported": len({n for row in self.rows for n, _ in row.imported}),
            "untouched": len(set(self.untouched)),
        }

    @property
    def is_empty(self) -> bool:
        return not (self.rows or self.incompatibilities or self.untouched)


def _subtree(taxonomy: Taxonomy, root: str) -> Set[str]:
    """``root`` plus everything below it through IS_A and INSTANCE_OF edges."""
    seen = {root}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for child in taxonomy.children(node, kind=None):
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return seen


def _targets_in_use(directives: Iterable[MappingDirective]) -> List[MappingTarget]:
    return sorted({d.target for d in directives}, key=report_order)


def cleaned_annotations(annotations: AnnotationSet) -> AnnotationSet:
    """Annotations extended with the catalog profile of every category and niche node."""
    extra = {category.value: CATALOG[category].profile for category in Category}
    extra.update({niche.value: CATALOG[NICHE_CATEGORY[niche]].profile for niche in Niche})
    return annotations.with_profiles(extra)


def _rejection_reason(
    name: str,
    profile: MetaProfile,
    source_violations: Dict[str, List[Violation]],
) -> str:
    found = source_violations.get(name)
    if found:
        return f"{found[0].kind.value}: {found[0].explanation}"
    meta = classify_meta_category(profile)
    if meta is not MetaCategory.UNCLASSIFIED:
        return f"classified as {meta.value}"
    return "rejected by directive"


def apply_mapping(taxonomy: Taxonomy, annotations: AnnotationSet) -> Tuple[Taxonomy, MappingReport]:
    """Place directive-named concepts under the catalog categories.

    The cleaned taxonomy is rooted at the ten categories; niches appear
    under their category only when some directive targets them.
    """
    directives = list(annotations.mapping_directives)
    for directive in directives:
        if not taxonomy.has_name(directive.name):
            raise UnknownDirectiveTargetError(directive.name)

    cleaned = Taxonomy()
    target_ids: Dict[MappingTarget, str] = {}
    for category in Category:
        label = target_label(category)
        target_ids[category] = cleaned.add_concept(label, [label], topic="top-level category")
    for target in _targets_in_use(directives):
        if isinstance(target, Niche):
            label = target_label(target)
            target_ids[target] = cleaned.add_concept(label, [label], topic="top-level niche")
            cleaned.add_edge(target_ids[target], target_ids[NICHE_CATEGORY[target]])

    by_target: Dict[MappingTarget, Dict[Directive, List[str]]] = {}
    for d in directives:
        by_target.setdefault(d.target, {kind: [] for kind in Directive})[d.directive].append(taxonomy.id_of(d.name))

    # region of every target after pruning; roots are linked straight to the target
    regions: Dict[MappingTarget, Set[str]] = {}
    region_roots: Dict[MappingTarget, List[str]] = {}
    pruning: Dict[Tuple[str, MappingTarget], bool] = {}
    for target in _targets_in_use(directives):
        lists = by_target[target]
        roots = lists[Directive.COVER] + lists[Directive.IMPORT]
        region: Set[str] = set()
        for root in roots:
            region |= _subtree(taxonomy, root)
        for rejected in lists[Directive.REJECT]:
            pruning[(rejected, target)] = rejected in region
            if rejected in region:
                region -= _subtree(taxonomy, rejected)
        regions[target] = region

    # imported concepts keep only their new parents
    import_roots = {
        root for target in regions for root in by_target[target][Directive.IMPORT] if root in regions[target]
    }

    # an imported subtree leaves every other region; explicit roots of that region stay
    for target, region in regions.items():
        lists = by_target[target]
        strip: Set[str] = set()
        for root in import_roots - set(lists[Directive.IMPORT]):
            if root in region:
                strip |= _subtree(taxonomy, root)
        if not strip:
            continue
        kept: Set[str] = set()
        for root in lists[Directive.COVER] + lists[Directive.IMPORT]:
            if root in strip and root in region:
                kept |= _subtree(taxonomy, root) & region
        regions[target] = (region - strip) | kept

    for target in regions:
        lists = by_target[target]
        region_roots[target] = [
            root for root in lists[Directive.COVER] + lists[Directive.IMPORT] if root in regions[target]
        ]

    placed: Set[str] = set().union(*regions.values()) if regions else set()
    new_ids = {cid: _copy_concept(taxonomy, cid, cleaned) for cid in sorted(placed, key=taxonomy.name_of)}

    for target in _targets_in_use(directives):
        for root in sorted(set(region_roots[target]), key=taxonomy.name_of):
            kind = EdgeKind.INSTANCE_OF if taxonomy.is_individual(root) else EdgeKind.IS_A
            cleaned.add_edge(new_ids[root], target_ids[target], kind)
    for edge in taxonomy.edges():
        if edge.child in import_roots:
            continue
        if edge.child in new_ids and edge.parent in new_ids:
            cleaned.add_edge(new_ids[edge.child], new_ids[edge.parent], edge.kind)

    report = _build_report(taxonomy, annotations, directives, by_target, regions, pruning)
    logger.info(
        f"mapping placed {len(placed)} concepts; "
        f"{len(report.incompatibilities)} category incompatibilities"
    )
    return cleaned, report


def _build_report(
    taxonomy: Taxonomy,
    annotations: AnnotationSet,
    directives: List[MappingDirective],
    by_target: Dict[MappingTarget, Dict[Directive, List[str]]],
    regions: Dict[MappingTarget, Set[str]],
    pruning: Dict[Tuple[str, MappingTarget], bool],
) -> MappingReport:
    report = MappingReport()
    if not directives:
        return report

    kinds_by_name: Dict[str, Set[Directive]] = {}
    for d in directives:
        kinds_by_name.setdefault(d.name, set()).add(d.directive)

    def bucket(name: str) -> str:
        kinds = kinds_by_name[name]
        if Directive.IMPORT in kinds:
            return "imported"
        if Directive.COVER in kinds:
            return "covered"
        cid = taxonomy.id_of(name)
        if any(pruning.get((cid, d.target)) for d in directives if d.name == name):
            return "rejected"
        return "untouched"

    profiles = effective_profiles(taxonomy, annotations)
    needs_reasons = any(bucket(name) == "rejected" for name in kinds_by_name)
    source_violations: Dict[str, List[Violation]] = {}
    if needs_reasons:
        source_violations = violations_by_subject(run_checks(taxonomy, annotations, resolve=False).violations)

    for target in _targets_in_use(directives):
        row = MappingRow(target_label(target))
        lists = by_target[target]
        for cid in lists[Directive.IMPORT]:
            name = taxonomy.name_of(cid)
            parents = tuple(taxonomy.name_of(p) for p in taxonomy.parents(cid, kind=None))
            row.imported.append((name, parents))
        for cid in lists[Directive.COVER]:
            name = taxonomy.name_of(cid)
            if bucket(name) == "covered":
                row.covered.append(name)
        for cid in lists[Directive.REJECT]:
            name = taxonomy.name_of(cid)
            if bucket(name) == "rejected" and pruning[(cid, target)]:
                row.rejected.append((name, _rejection_reason(name, profiles[cid], source_violations)))
        row.covered = sorted(set(row.covered))
        row.imported = sorted(set(row.imported))
        row.rejected = sorted(set(row.rejected))
        report.rows.append(row)

        for cid in sorted(regions[target], key=taxonomy.name_of):
            found, _ = profile_conflicts(taxonomy.name_of(cid), profiles[cid], target)
            report.incompatibilities.extend(found)

    report.untouched = sorted(name for name in kinds_by_name if bucket(name) == "untouched")
    report.incompatibilities.sort(key=Violation.sort_key)
    return report
