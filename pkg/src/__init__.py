"""
TaxoClean
OntoClean validation and clean-up of WordNet-style noun taxonomies
"""

__version__ = "0.1.0"
__author__ = "TaxoClean Team"

from .core.taxonomy import Taxonomy, EdgeKind
from .core.annotations import AnnotationSet, parse_annotations

__all__ = [
    'Taxonomy',
    'EdgeKind',
    'AnnotationSet',
    'parse_annotations',
]
