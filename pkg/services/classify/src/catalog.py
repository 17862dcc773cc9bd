"""Named combinatorial types of low-dimensional faces.

Facet multisets use the short codes P (point), LS (segment), T (triangle),
Sq (square), S (tetrahedron), Py (square pyramid), Pr (triangular prism),
O (octahedron) and C (3-cube).
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple


@dataclass(frozen=True)
class CatalogEntry:
    """One named type: dimension, vertex and facet counts, and facet multiset."""

    name: str
    dimension: int
    num_vertices: int
    num_facets: int
    facets_label: str
    code: Optional[str] = None
    line: Optional[int] = None
    neighborly: bool = False

    @property
    def facet_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for part in self.facets_label.split():
            digits = len(part) - len(part.lstrip("0123456789"))
            counts[part[digits:]] = int(part[:digits])
        return counts

    @property
    def signature(self) -> Tuple[int, int, int, Tuple[Tuple[str, int], ...]]:
        return (
            self.dimension,
            self.num_vertices,
            self.num_facets,
            tuple(sorted(self.facet_counts.items())),
        )


BASE_TYPES: Tuple[CatalogEntry, ...] = (
    CatalogEntry("point", 0, 1, 0, "", code="P"),
    CatalogEntry("segment", 1, 2, 2, "2P", code="LS"),
)

# Faces of dimension 2 to 4, with the line of the reference list of
# 4-dimensional 2-level polytopes where one exists.
TABLE_TYPES: Tuple[CatalogEntry, ...] = (
    CatalogEntry("square", 2, 4, 4, "4LS", code="Sq"),
    CatalogEntry("triangle", 2, 3, 3, "3LS", code="T"),
    CatalogEntry("pyramid with a square base", 3, 5, 5, "1Sq 4T", code="Py"),
    CatalogEntry("tetrahedron", 3, 4, 4, "4T", code="S"),
    CatalogEntry("3-cube", 3, 8, 6, "6Sq", code="C"),
    CatalogEntry("octahedron", 3, 6, 8, "8T", code="O"),
    CatalogEntry("triangular prism", 3, 6, 5, "3Sq 2T", code="Pr"),
    CatalogEntry("4-simplex", 4, 5, 5, "5S", line=1),
    CatalogEntry("square pyramid pyramid", 4, 6, 6, "4S 2Py", line=2),
    CatalogEntry("pyramid over a triangular prism", 4, 7, 6, "2S 3Py 1Pr", line=8),
    CatalogEntry("ASM_3", 4, 7, 8, "4S 4Py", line=11),
    CatalogEntry("tetrahedron prism", 4, 8, 6, "2S 4Pr", line=4),
    CatalogEntry("polytope Y", 4, 8, 7, "1S 4Py 2Pr", line=10),
    CatalogEntry("polytope X", 4, 8, 9, "4S 4Py 1O", line=19),
    CatalogEntry("3-3 duoprism", 4, 9, 6, "6Pr", line=6),
    CatalogEntry("cubic pyramid", 4, 9, 7, "6Py 1C", line=16),
    CatalogEntry("polytope Z", 4, 9, 9, "3S 3Py 1Pr 2O", line=23),
    CatalogEntry("square pyramid prism", 4, 10, 7, "2Py 4Pr 1C", line=20),
    CatalogEntry("cubical bipyramid", 4, 10, 12, "12Py", line=26),
    CatalogEntry("3-4 duoprism", 4, 12, 7, "4Pr 3C", line=28),
    CatalogEntry("octahedral prism", 4, 12, 10, "8Pr 2O", line=27),
    CatalogEntry("4-cube", 4, 16, 8, "8C", line=30),
)

# 4-dimensional 2-level types that never occur as faces.
EXCLUDED_TYPES: Tuple[CatalogEntry, ...] = (
    CatalogEntry("B3", 4, 6, 9, "9S", neighborly=True),
    CatalogEntry("pyramid over an octahedron", 4, 7, 9, "8S 1O"),
    CatalogEntry("0/1 vectors with one or two ones", 4, 10, 10, "5S 5O"),
    CatalogEntry("4-cross-polytope", 4, 8, 16, "16S"),
)

_BY_SIGNATURE: Dict[tuple, CatalogEntry] = {
    entry.signature: entry for entry in BASE_TYPES + TABLE_TYPES
}


def _signature(
    dimension: int, num_vertices: int, num_facets: int, facet_counts: Mapping[str, int]
) -> tuple:
    counts = Counter({code: k for code, k in facet_counts.items() if k})
    return (dimension, num_vertices, num_facets, tuple(sorted(counts.items())))


def entry_for(
    dimension: int, num_vertices: int, num_facets: int, facet_counts: Mapping[str, int]
) -> Optional[CatalogEntry]:
    """Catalog row with exactly this signature, if any."""
    return _BY_SIGNATURE.get(_signature(dimension, num_vertices, num_facets, facet_counts))


def name_for(
    dimension: int, num_vertices: int, num_facets: int, facet_counts: Mapping[str, int]
) -> Optional[str]:
    entry = entry_for(dimension, num_vertices, num_facets, facet_counts)
    return entry.name if entry else None


def excluded_matches(
    dimension: int, num_vertices: int, num_facets: int, facet_counts: Mapping[str, int]
) -> List[CatalogEntry]:
    """Excluded types whose (d, V, F, facets) signature matches."""
    signature = _signature(dimension, num_vertices, num_facets, facet_counts)
    return [entry for entry in EXCLUDED_TYPES if entry.signature == signature]


def format_facet_counts(facet_counts: Mapping[str, int]) -> str:
    """Render a facet multiset like "4S 4Py", codes in catalog order."""
    order = ["P", "LS", "T", "Sq", "S", "Py", "Pr", "O", "C"]
    known = [code for code in order if facet_counts.get(code)]
    other = sorted(code for code in facet_counts if code not in order and facet_counts[code])
    return " ".join(f"{facet_counts[code]}{code}" for code in known + other)
