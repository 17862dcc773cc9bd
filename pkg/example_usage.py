#!/usr/bin/env python
"""Example usage of asmgrid: faces of ASM_n as flow grids."""

from packages.asm.core import Asm, count_asms
from packages.flowgrid.render import render_text_grid
from services.classify.src.scan import classify_all_faces, fingerprint
from services.faces.src.face import smallest_face, top_face
from services.faces.src.lattice import face_lattice, is_two_level
from services.structure.src.product import product_decomposition
from services.structure.src.symmetry import estranged_partner, is_centrally_symmetric


def example_smallest_face():
    """Example: Smallest face containing a few ASMs."""
    print("\n" + "=" * 60)
    print("EXAMPLE 1: Smallest Face")
    print("=" * 60)

    seeds = [
        Asm.from_rows([[0, 1, 0], [1, -1, 1], [0, 1, 0]]),
        Asm.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        Asm.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
    ]
    face = smallest_face(seeds)

    print(f"\nElementary flow grid (= and ‖ are doubly directed):")
    print(render_text_grid(face.grid))
    print(f"  Dimension: {face.dimension}")
    print(f"  Vertices:  {len(face.vertices)}")
    print(f"  Facets:    {len(face.facets)}")
    print(f"  Ears:      {len(face.ears)}")


def example_top_face():
    """Example: ASM_3 itself."""
    print("\n" + "=" * 60)
    print("EXAMPLE 2: The Polytope ASM_3")
    print("=" * 60)

    face = top_face(3)
    lattice = face_lattice(face)
    report = is_two_level(face)
    t = fingerprint(face)

    print(f"\n  ASMs of order 3: {count_asms(3)}")
    print(f"  f-vector:        {lattice.f_vector()}")
    print(f"  2-level:         {report.is_two_level}")
    print(f"  Type:            {t.label} ({t.facets_label})")


def example_symmetry_and_product():
    """Example: A square face that splits into two edges."""
    print("\n" + "=" * 60)
    print("EXAMPLE 3: Symmetry and Product Decomposition")
    print("=" * 60)

    identity = Asm.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    seeds = [identity, Asm.from_rows([[0, 1, 0], [1, -1, 1], [0, 1, 0]])]
    face = smallest_face(seeds)
    decomposition = product_decomposition(face, base=identity)

    print(f"\n  Centrally symmetric: {is_centrally_symmetric(face)}")
    print(f"  Partner of I:\n{estranged_partner(face, identity)}")
    print(f"  Factors: {[f.dimension for f in decomposition.factors]}")
    print(f"  Lattice is a product: {decomposition.lattice_matches_product()}")


def example_classification():
    """Example: Combinatorial types of faces of ASM_3."""
    print("\n" + "=" * 60)
    print("EXAMPLE 4: Classification")
    print("=" * 60)

    result = classify_all_faces(3, 4)
    print(f"\n{'name':<30} {'d':>2} {'V':>3} {'F':>3}  facets")
    for row in result.rows:
        t = row.type
        print(f"{t.label:<30} {t.dimension:>2} {t.num_vertices:>3} {t.num_facets:>3}  "
              f"{t.facets_label} (x{row.count})")


if __name__ == "__main__":
    print("\n" + "#" * 60)
    print("# asmgrid - Usage Examples")
    print("#" * 60)

    example_smallest_face()
    example_top_face()
    example_symmetry_and_product()
    example_classification()

    print("\n" + "#" * 60)
    print("# Examples completed successfully!")
    print("#" * 60 + "\n")
