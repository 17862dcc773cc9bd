"""Exhaustive theorem audit over the faces of ASM_n."""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from packages.asm.core import count_asms, enumerate_asms
from packages.asm.errors import AsmGridError, CrossCheckError
from packages.asm.linalg import IntegerLattice, exact_rank
from packages.asm.settings import get_settings
from packages.flowgrid.doubly import bridges
from packages.flowgrid.grid import (
    DOUBLY,
    asm_to_simple_flow_grid,
    edge_index,
    simple_flow_grid_to_asm,
)
from packages.oracle.tightness import (
    affine_dimension_oracle,
    profile_of_face,
    smallest_face_by_filter,
    vertices_by_filter,
)
from services.classify.src.catalog import TABLE_TYPES
from services.classify.src.scan import (
    ExclusionReport,
    FaceScan,
    b3_absence_audit,
    excluded_two_level_audit,
    fingerprint,
    scan_faces,
)
from services.faces.src.face import (
    ClosureGap,
    EarDirection,
    Face,
    are_estranged,
    ear_closure,
    ear_defines_facet,
    face_statistics,
    fix_ear,
    gap_between,
    smallest_face,
    top_face,
)
from services.faces.src.lattice import is_two_level
from services.structure.src.blocks import two_connected_components
from services.structure.src.cycles import basic_cycles, cycle_sum_check, simple_cycles
from services.structure.src.product import product_decomposition
from services.structure.src.symmetry import center, estranged_partner, has_even_degrees

from .models import AuditReport, CheckResult

logger = logging.getLogger(__name__)

FaceCheck = Callable[[Face], Optional[str]]


@dataclass
class _Tally:
    """Running count for one check; keeps the first failure."""

    name: str
    checked: int = 0
    failure: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None

    def record(self, problem: Optional[str], witness: Optional[Dict[str, Any]] = None) -> None:
        self.checked += 1
        if problem is not None and self.failure is None:
            self.failure = problem
            self.witness = witness
            logger.warning("audit check %s failed: %s", self.name, problem)

    def result(self) -> CheckResult:
        return CheckResult(
            name=self.name,
            passed=self.failure is None,
            checked=self.checked,
            detail=self.failure or "",
            witness=self.witness,
        )


def _face_witness(face: Face) -> Dict[str, Any]:
    return {"grid": face.grid.to_json(), "dimension": face.dimension}


def _over_faces(name: str, faces: List[Face], check: FaceCheck) -> CheckResult:
    tally = _Tally(name)
    for face in faces:
        try:
            problem = check(face)
        except CrossCheckError:
            raise
        except AsmGridError as exc:
            problem = f"{type(exc).__name__}: {exc}"
        tally.record(problem, _face_witness(face) if problem else None)
    return tally.result()


def check_counts(n: int) -> CheckResult:
    tally = _Tally("asm_count")
    found = len(enumerate_asms(n))
    expected = count_asms(n)
    tally.record(None if found == expected else f"enumerated {found}, formula gives {expected}")
    return tally.result()


def check_top_face(n: int) -> CheckResult:
    tally = _Tally("top_face")
    face = top_face(n)
    expected_dim = (n - 1) ** 2
    if n >= 3:
        expected_facets = 4 * ((n - 2) ** 2 + 1)
    else:
        expected_facets = 2 if n == 2 else 0
    problem = None
    if face.dimension != expected_dim:
        problem = f"top face dimension {face.dimension}, expected {expected_dim}"
    elif len(face.facets) != expected_facets:
        problem = f"top face has {len(face.facets)} facets, expected {expected_facets}"
    tally.record(problem)
    return tally.result()


def check_bijection(n: int) -> CheckResult:
    tally = _Tally("bijection")
    seen = set()
    for a in enumerate_asms(n):
        grid = asm_to_simple_flow_grid(a)
        back = simple_flow_grid_to_asm(grid)
        problem = None
        if back != a:
            problem = "flow grid does not map back to its ASM"
        elif grid.codes in seen:
            problem = "two ASMs share a simple flow grid"
        seen.add(grid.codes)
        tally.record(problem, a.to_json() if problem else None)
    return tally.result()


def _oracle_vertices(face: Face) -> Optional[str]:
    by_filter = vertices_by_filter(face.n, profile_of_face(face))
    if sorted(by_filter) != sorted(face.vertices):
        return f"ear fixing found {len(face.vertices)} vertices, filtering {len(by_filter)}"
    return None


def _oracle_dimension(face: Face) -> Optional[str]:
    rank = affine_dimension_oracle(face)
    if rank != face.dimension:
        return f"affine rank {rank} differs from region count {face.dimension}"
    return None


def check_oracle_subsets(n: int) -> CheckResult:
    """Every vertex subset spans the face found by filtering (small n only)."""
    tally = _Tally("oracle_subsets")
    asms = enumerate_asms(n)
    if n > 3:
        return tally.result()
    for size in range(1, len(asms) + 1):
        for subset in combinations(asms, size):
            face = smallest_face(list(subset))
            problem = None
            if sorted(face.vertices) != smallest_face_by_filter(list(subset)):
                problem = "smallest face differs from the filtered vertex set"
            elif not set(subset) <= set(face.vertices):
                problem = "smallest face misses one of its generators"
            elif smallest_face(face.vertices) != face:
                problem = "vertices do not span their face"
            tally.record(problem, _face_witness(face) if problem else None)
    return tally.result()


def _two_edge_connected(face: Face) -> Optional[str]:
    found = bridges(face.doubly_graph)
    return f"doubly edge {found[0]} is a bridge" if found else None


def _bounds(face: Face) -> Optional[str]:
    d, v, f = face.dimension, len(face.vertices), len(face.facets)
    if v > 2**d:
        return f"{v} vertices exceed 2^{d}"
    if d >= 2 and f > 4 * (d - 1):
        return f"{f} facets exceed 4(d-1) at d={d}"
    if d >= 1 and v * f > d * 2 ** (d + 1):
        return f"vf={v * f} exceeds d*2^(d+1) at d={d}"
    return None


def _euler_relations(face: Face) -> Optional[str]:
    stats = face_statistics(face)
    if not (stats.connected and stats.has_branch_vertex):
        return None
    d, s = stats.dimension, stats.num_ears
    v3, v4 = stats.degree_profile.v3, stats.degree_profile.v4
    if v3 + v4 - s + d + 1 != 2:
        return f"V3+V4-s+(d+1) != 2 with V3={v3} V4={v4} s={s} d={d}"
    if 2 * s != 4 * v4 + 3 * v3:
        return f"2s != 4V4+3V3 with V3={v3} V4={v4} s={s}"
    if 2 * v4 + v3 != 2 * (d - 1):
        return f"2V4+V3 != 2(d-1) with V3={v3} V4={v4} d={d}"
    if not 2 * (d - 1) <= s <= 3 * (d - 1):
        return f"{s} ears outside [2(d-1), 3(d-1)] at d={d}"
    return None


def _two_connected_bound(face: Face) -> Optional[str]:
    stats = face_statistics(face)
    if not stats.two_connected:
        return None
    d, v = stats.dimension, stats.num_vertices
    bound = 2 ** (d - 1) + 2
    if stats.degree_profile.v3 > 0 or d < 3:
        bound -= 1
    return f"{v} vertices exceed {bound} on a 2-connected face" if v > bound else None


def _two_level(face: Face) -> Optional[str]:
    if face.dimension < 1:
        return None
    report = is_two_level(face)
    return None if report.is_two_level else report.failures[0]


def _symmetry(face: Face) -> Optional[str]:
    verts = face.vertices
    every_vertex_estranged = all(any(are_estranged(face, a, b) for b in verts) for a in verts)
    even = has_even_degrees(face)
    if even != every_vertex_estranged:
        return f"even degrees is {even} but every vertex estranged is {every_vertex_estranged}"
    if not even:
        return None
    for a in verts:
        b = estranged_partner(face, a)
        if not face.contains_vertex(b) or estranged_partner(face, b) != a:
            return "estranged partner is not an involution on the vertices"
        if not are_estranged(face, a, b):
            return "estranged partner spans a proper face"
    return None if center(face) is not None else "centrally symmetric face has no center"


def _two_face_shape(face: Face) -> Optional[str]:
    if face.dimension == 2 and len(face.vertices) not in (3, 4):
        return f"2-face with {len(face.vertices)} vertices"
    return None


def _classified(face: Face) -> Optional[str]:
    if face.dimension < 2:
        return None
    t = fingerprint(face)
    if t.entry is None or t.entry not in TABLE_TYPES:
        counts = f"d={t.dimension} V={t.num_vertices} F={t.num_facets}"
        return f"type {counts} {t.facets_label} is not a named type"
    return None


def _cycle_basis(face: Face) -> Optional[str]:
    if face.dimension == 0:
        return None
    matrices = basic_cycles(face)
    rank = exact_rank([m.flat() for m in matrices])
    if rank != face.dimension:
        return f"basic cycles have rank {rank}, dimension is {face.dimension}"
    lattice = IntegerLattice(face.n * face.n)
    for m in matrices:
        lattice.add_vector(m.flat())
    for a, b in combinations(face.vertices, 2):
        if smallest_face([a, b]).dimension != 1:
            continue
        difference = (b.to_array() - a.to_array()).flatten().tolist()
        if not lattice.contains(difference):
            return "difference of adjacent vertices is outside the basic cycle span"
    return None


def _product(face: Face) -> Optional[str]:
    if len(two_connected_components(face.doubly_graph)) < 2:
        return None
    decomposition = product_decomposition(face)
    if not decomposition.is_bijection():
        return "vertex map to factor tuples is not a bijection"
    if not decomposition.differences_add_up():
        return "block differences do not add up"
    if not decomposition.lattice_matches_product():
        return "face lattice is not the product of factor lattices"
    return None


def _ear_directions(face: Face) -> Optional[str]:
    g = face.doubly_graph
    for ear in face.ears:
        if any(g.degree(v) == 3 for v in ear.endpoints) and len(ear_defines_facet(face, ear)) > 1:
            return f"both directions of the ear at {ear.smallest_edge} define facets"
    profile = face.degree_profile
    if face.dimension == 4 and len(face.vertices) == 6 and len(face.facets) == 9:
        if (profile.v3, profile.v4, len(face.ears)) != (6, 0, 9):
            return "6-vertex 9-facet face without six degree-3 vertices and nine ears"
    return None


def _ear_triangle(face: Face) -> Optional[str]:
    g = face.doubly_graph
    branch3 = sorted(v for v in g.vertices if g.degree(v) == 3)
    between: Dict[frozenset, List[Any]] = {}
    for ear in face.ears:
        ends = frozenset(ear.endpoints)
        if len(ends) == 2 and ends <= set(branch3):
            between.setdefault(ends, []).append(ear)
    for u, v, w in combinations(branch3, 3):
        sides = [between.get(frozenset(p), []) for p in ((u, v), (v, w), (u, w))]
        if not all(sides):
            continue
        for a in sides[0]:
            for b in sides[1]:
                for c in sides[2]:
                    defining = sum(1 for ear in (a, b, c) if ear_defines_facet(face, ear))
                    if defining > 2:
                        return f"all three ears between {u}, {v}, {w} define facets"
    return None


def _branch_components(face: Face, removed: set) -> int:
    g = face.doubly_graph
    graph = nx.Graph()
    branch = [v for v in g.vertices if g.degree(v) > 2]
    graph.add_nodes_from(branch)
    for edge in g.edges:
        if edge not in removed:
            graph.add_edge(*edge.endpoints)
    return sum(1 for c in nx.connected_components(graph) if c & set(branch))


def _ear_cutset(face: Face) -> Optional[str]:
    ears = face.ears
    base = _branch_components(face, set())
    for first, second in combinations(ears, 2):
        if _branch_components(face, set(first.edges)) > base:
            continue
        if _branch_components(face, set(second.edges)) > base:
            continue
        if _branch_components(face, set(first.edges) | set(second.edges)) <= base:
            continue
        for ear, other in ((first, second), (second, first)):
            for direction in EarDirection:
                sub = fix_ear(face, ear, direction)
                if any(sub.grid.codes[edge_index(face.n, e)] == DOUBLY for e in other.edges):
                    return f"fixing the ear at {ear.smallest_edge} leaves its cut partner free"
    return None


def check_cycle_sums(faces: List[Face], n: int, samples: int, seed: int) -> CheckResult:
    """Cycle-sum identity on every cycle for n <= 3, on sampled cycles otherwise."""
    tally = _Tally("cycle_sum")
    pairs = [(face, cycle) for face in faces for cycle in simple_cycles(face)]
    if n > 3 and len(pairs) > samples:
        rng = np.random.default_rng(seed)
        chosen = sorted(rng.choice(len(pairs), size=samples, replace=False).tolist())
        pairs = [pairs[k] for k in chosen]
    for face, cycle in pairs:
        ok = cycle_sum_check(face, cycle)
        if ok:
            tally.record(None)
        else:
            tally.record(f"cycle through {cycle[0]} fails the sum identity", _face_witness(face))
    return tally.result()


def check_closure_gaps(faces: List[Face], n: int) -> CheckResult:
    """Every ear fixing whose closure is weaker than its subface still yields a true face.

    Gaps themselves are expected; each one is counted and, up to the oracle
    bound, the subface's vertex set is confirmed against prefix-sum filtering.
    """
    tally = _Tally("closure_gaps")
    gaps: List[ClosureGap] = []
    use_oracle = n <= get_settings().oracle_max_n
    for face in faces:
        for ear in face.ears:
            for direction in EarDirection:
                try:
                    sub, closure = ear_closure(face, ear, direction)
                except AsmGridError as exc:
                    tally.record(f"{type(exc).__name__}: {exc}", _face_witness(face))
                    continue
                gap = gap_between(face, ear, direction, sub, closure)
                problem = None
                if not closure.contains(sub.grid):
                    problem = f"subface at ear {ear.smallest_edge} escapes its closure"
                elif gap is not None:
                    gaps.append(gap)
                    expected = smallest_face_by_filter(sub.vertices) if use_oracle else sub.vertices
                    if sorted(sub.vertices) != sorted(expected):
                        problem = f"fixing ear {ear.smallest_edge} {direction.value} gives no face"
                tally.record(problem, _face_witness(face) if problem else None)
    result = tally.result()
    if result.passed and gaps:
        logger.info("%d ear fixings fix edges their closure leaves doubly", len(gaps))
        result = CheckResult(
            name=result.name,
            passed=True,
            checked=result.checked,
            detail=f"{len(gaps)} closure gaps",
            witness=gaps[0].to_json(),
        )
    return result


def _exclusion_result(name: str, report: ExclusionReport) -> CheckResult:
    found = {key: faces for key, faces in report.matches.items() if faces}
    detail = ""
    witness = None
    if found:
        key = sorted(found)[0]
        detail = f"{len(found[key])} faces of excluded type {key}"
        witness = _face_witness(found[key][0])
    return CheckResult(
        name=name, passed=not found, checked=report.examined, detail=detail, witness=witness
    )


FACE_CHECKS: List[Tuple[str, FaceCheck]] = [
    ("two_edge_connectivity", _two_edge_connected),
    ("bounds", _bounds),
    ("euler_relations", _euler_relations),
    ("two_connected_bound", _two_connected_bound),
    ("two_level", _two_level),
    ("symmetry", _symmetry),
    ("two_face_shape", _two_face_shape),
    ("classification", _classified),
    ("cycle_basis", _cycle_basis),
    ("product", _product),
    ("ear_directions", _ear_directions),
    ("ear_triangle", _ear_triangle),
    ("ear_cutset", _ear_cutset),
]


def run_audit(
    n: int,
    budget: Optional[int] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    scan: Optional[FaceScan] = None,
) -> AuditReport:
    """Run every theorem check on the faces of ASM_n up to dimension 4.

    Args:
        n: Grid order, at most ASMGRID_CLASSIFY_MAX_N
        budget: Face budget for the scan
        samples: Cycles sampled for the cycle-sum identity when n > 3
        seed: Sampling seed
        scan: A previous scan to reuse

    Returns:
        AuditReport; oracle disagreements are listed in `discrepancies`
    """
    settings = get_settings()
    samples = samples if samples is not None else settings.cycle_samples
    seed = seed if seed is not None else settings.sample_seed
    if scan is None:
        scan = scan_faces(n, min(4, (n - 1) ** 2), budget)
    faces = list(scan.iter_faces())
    logger.info("auditing %d faces of ASM_%d", len(faces), n)

    checks = [check_counts(n), check_top_face(n), check_bijection(n)]
    discrepancies: List[Dict[str, Any]] = []
    oracle_checks = [("oracle_vertices", _oracle_vertices), ("oracle_dimension", _oracle_dimension)]
    for name, check in oracle_checks:
        if n > settings.oracle_max_n:
            continue
        try:
            checks.append(_over_faces(name, faces, check))
        except CrossCheckError as exc:
            discrepancies.append(exc.discrepancy.to_json())
            checks.append(CheckResult(name=name, passed=False, checked=0, detail=str(exc)))
    checks.append(check_oracle_subsets(n))
    for name, check in FACE_CHECKS:
        checks.append(_over_faces(name, faces, check))
        logger.debug("audit check %s done", name)
    checks.append(check_cycle_sums(faces, n, samples, seed))
    checks.append(check_closure_gaps(faces, n))
    if n == 3:
        asm3 = fingerprint(top_face(3))
        tally = _Tally("asm3_type")
        tally.record(None if asm3.name == "ASM_3" else f"top face of ASM_3 is {asm3.label}")
        checks.append(tally.result())
    checks.append(_exclusion_result("b3_absence", b3_absence_audit(n, scan=scan)))
    checks.append(
        _exclusion_result("excluded_two_level", excluded_two_level_audit(n, scan=scan))
    )
    return AuditReport(
        n=n,
        checks=checks,
        discrepancies=discrepancies,
        complete=scan.complete,
        coverage=scan.coverage,
    )
