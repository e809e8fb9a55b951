"""
TaxoClean core
Taxonomy graph, meta-properties, category catalog and annotations
"""

from .taxonomy import Concept, Edge, EdgeKind, Taxonomy
from .meta_properties import MetaCategory, MetaProfile, classify_meta_category
from .catalog import CATALOG, Category, Niche
from .annotations import (
    AnnotationSet,
    effective_profile,
    effective_profiles,
    parse_annotations,
    suggest_from_children,
)

__all__ = [
    'Concept',
    'Edge',
    'EdgeKind',
    'Taxonomy',
    'MetaCategory',
    'MetaProfile',
    'classify_meta_category',
    'CATALOG',
    'Category',
    'Niche',
    'AnnotationSet',
    'effective_profile',
    'effective_profiles',
    'parse_annotations',
    'suggest_from_children',
]
