import json
from collections import Counter
from typing import List, Sequence, Tuple, Union

import numpy as np

from graph_core.graph import Arc, ArcSet, Graph
from triangulation.triangle import DirectedTriangle
from util.errors import PartitionFormatError, PartitionInvalidError
from util.types import ViolationKind


class Violation:
    def __init__(self, kind: ViolationKind, detail: str, arcs: Sequence[Arc] = ()):
        self.kind = kind
        self.detail = detail
        self.arcs = tuple(arcs)

    def __str__(self):
        return f"{self.kind.value}: {self.detail}"


class ValidationReport:
    """ Partition violations; empty means valid """

    def __init__(self, violations: List[Violation] = None):
        self.violations = violations or []

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def kinds(self):
        return {v.kind for v in self.violations}

    def of_kind(self, kind: ViolationKind) -> List[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def to_json(self):
        return [{"kind": v.kind.value, "detail": v.detail, "arcs": [list(a) for a in v.arcs]}
                for v in self.violations]

    def __len__(self):
        return len(self.violations)

    def __str__(self):
        if self.is_valid:
            return "valid partition"
        return "; ".join(str(v) for v in self.violations)


def validate_triangles(g: Graph, triangles: Sequence[DirectedTriangle]) -> ValidationReport:
    arcset = ArcSet(g)
    violations: List[Violation] = []
    used = Counter()
    for C in triangles:
        unknown = [a for a in C.arcs if a not in arcset]
        if unknown:
            violations.append(Violation(ViolationKind.UNKNOWN_ARC, f"{C} uses non-arcs {', '.join(map(str, unknown))}", unknown))
        if not C.is_cycle():
            violations.append(Violation(ViolationKind.BROKEN_CYCLE, f"{', '.join(map(str, C.arcs))} is not head-to-tail", C.arcs))
        elif len(set(C.vertices)) != 3:
            violations.append(Violation(ViolationKind.DEGENERATE, f"{C} repeats a vertex", C.arcs))
        for a in C.arcs:
            used[a] += 1
    overlap = sorted(a for a, c in used.items() if c > 1 and a in arcset)
    if overlap:
        violations.append(Violation(ViolationKind.OVERLAP, ", ".join(map(str, overlap)), overlap))
    uncovered = [a for a in arcset if used[a] == 0]
    if uncovered:
        violations.append(Violation(ViolationKind.UNCOVERED, ", ".join(map(str, uncovered)), uncovered))
    return ValidationReport(violations)


class TrianglePartition:
    """ A partition pi of the arc set into directed triangles, with next-arc map tau """

    def __init__(self, graph: Graph, triangles: Sequence[DirectedTriangle]):
        report = validate_triangles(graph, triangles)
        if not report.is_valid:
            raise PartitionInvalidError(report)
        self.graph = graph
        self.arcset = ArcSet(graph)
        self._triangles: Tuple[DirectedTriangle, ...] = tuple(triangles)

        m = len(self.arcset)
        tau = np.empty(m, dtype=np.int64)
        owner = np.empty(m, dtype=np.int64)
        for c, C in enumerate(self._triangles):
            idx = [self.arcset.index(a) for a in C.arcs]
            for i in range(3):
                tau[idx[i]] = idx[(i + 1) % 3]
                owner[idx[i]] = c
        self._tau = tau
        self._owner = owner

    @property
    def triangles(self) -> Tuple[DirectedTriangle, ...]:
        return self._triangles

    @property
    def tau(self) -> np.ndarray:
        """ tau[i] = index of the next arc of arc i """
        return self._tau.copy()

    @property
    def tau_inverse(self) -> np.ndarray:
        return self._tau[self._tau]

    @property
    def arc_to_triangle(self) -> np.ndarray:
        return self._owner.copy()

    def next_arc(self, arc: Arc) -> Arc:
        return self.arcset[int(self._tau[self.arcset.index(arc)])]

    def owner(self, arc: Arc) -> DirectedTriangle:
        return self._triangles[int(self._owner[self.arcset.index(arc)])]

    def __len__(self):
        return len(self._triangles)

    def __iter__(self):
        return iter(self._triangles)

    def __str__(self):
        return f"TrianglePartition(|pi|={len(self._triangles)}, {self.graph})"


def validate_partition(g: Graph, pi: Union[TrianglePartition, Sequence[DirectedTriangle]]) -> ValidationReport:
    triangles = pi.triangles if isinstance(pi, TrianglePartition) else list(pi)
    return validate_triangles(g, triangles)


def triangles_at(pi: TrianglePartition, x: int) -> List[DirectedTriangle]:
    """ pi(x): triangles owning an arc that terminates at x, in partition order """
    pi.graph.check_vertex(x)
    owners = sorted({int(pi.arc_to_triangle[i]) for i in pi.arcset.in_arcs(x)})
    return [pi.triangles[c] for c in owners]


def build_R(pi: TrianglePartition) -> np.ndarray:
    """ R[x, C] = 1 iff C is in pi(x) """
    R = np.zeros((pi.graph.n_vertices, len(pi)), dtype=np.int64)
    for c, C in enumerate(pi.triangles):
        for a in C.arcs:
            R[a.terminus, c] = 1
    return R


def partition_from_triangles(g: Graph, triples: Sequence[Sequence[int]]) -> TrianglePartition:
    return TrianglePartition(g, [DirectedTriangle.from_vertices(*map(int, t)) for t in triples])


def parse_triangles(text: str) -> List[DirectedTriangle]:
    """ 'u v w' per line = arcs (u,v), (v,w), (w,u); '#' comments """
    triangles = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise PartitionFormatError(f"line {lineno}: expected 3 vertex indices, got {len(tokens)}")
        try:
            u, v, w = (int(t) for t in tokens)
        except ValueError:
            raise PartitionFormatError(f"line {lineno}: non-integer token in {line!r}")
        triangles.append(DirectedTriangle.from_vertices(u, v, w))
    return triangles


def parse_partition(text: str, g: Graph) -> TrianglePartition:
    return TrianglePartition(g, parse_triangles(text))


def format_partition(pi: TrianglePartition) -> str:
    return "".join("{} {} {}\n".format(*C.vertices) for C in pi.triangles)


def partition_to_json(pi: TrianglePartition) -> dict:
    return {"n": pi.graph.n_vertices, "triangles": [list(C.vertices) for C in pi.triangles]}


def partition_from_json(payload, g: Graph) -> TrianglePartition:
    try:
        if isinstance(payload, str):
            payload = json.loads(payload)
        triples = [tuple(int(v) for v in t) for t in payload["triangles"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise PartitionFormatError(f"malformed partition JSON: {exc}")
    short = [list(t) for t in triples if len(t) != 3]
    if short:
        raise PartitionFormatError(f"expected 3 vertex indices per triangle, got {short[0]}")
    return partition_from_triangles(g, triples)
