"""Classify service: canonical forms, named types, face scans and exclusion audits."""

from .canonical import CanonicalForm, canonical_form, incidence_graph, incidences_isomorphic
from .catalog import (
    BASE_TYPES,
    EXCLUDED_TYPES,
    TABLE_TYPES,
    CatalogEntry,
    entry_for,
    excluded_matches,
    format_facet_counts,
    name_for,
)
from .scan import (
    Classification,
    CombinatorialType,
    ExclusionReport,
    FaceScan,
    TypeCount,
    b3_absence_audit,
    classify_all_faces,
    excluded_two_level_audit,
    fingerprint,
    is_neighborly,
    is_symmetry_invariant,
    iter_faces,
    scan_faces,
    symmetric_image,
)

__all__ = [
    "CanonicalForm",
    "canonical_form",
    "incidence_graph",
    "incidences_isomorphic",
    "BASE_TYPES",
    "EXCLUDED_TYPES",
    "TABLE_TYPES",
    "CatalogEntry",
    "entry_for",
    "excluded_matches",
    "format_facet_counts",
    "name_for",
    "Classification",
    "CombinatorialType",
    "ExclusionReport",
    "FaceScan",
    "TypeCount",
    "b3_absence_audit",
    "classify_all_faces",
    "excluded_two_level_audit",
    "fingerprint",
    "is_neighborly",
    "is_symmetry_invariant",
    "iter_faces",
    "scan_faces",
    "symmetric_image",
]
