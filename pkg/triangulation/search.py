from typing import List, Optional, Union

from graph_core.generators import gen_double_cone
from graph_core.graph import ArcSet, Graph
from triangulation.partition import TrianglePartition
from triangulation.triangle import DirectedTriangle, enumerate_directed_triangles
from util.errors import GeneratorError, SearchBudgetExceeded
from util.logger import DummyLogger
from util.types import NotTriangulableReason


class NotTriangulable:
    """ Negative search result with the reason and, where there is one, a witness arc """

    def __init__(self, reason: NotTriangulableReason, witness=None, nodes: int = 0):
        self.reason = reason
        self.witness = witness
        self.nodes = nodes

    @property
    def message(self) -> str:
        msg = f"not triangulable: {self.reason.value}"
        if self.witness is not None:
            msg += f" ({self.witness})"
        return msg

    def __bool__(self):
        return False

    def __str__(self):
        return self.message


class ExactCoverSearch:
    """ Backtracking exact cover of the arcs by directed triangles.

    Branches on the uncovered arc with the fewest admissible triangles
    (ties to the smallest arc index) and tries triangles in canonical order,
    so the first cover found is deterministic.
    """

    def __init__(self, graph: Graph, limit: Optional[int] = None, logger=DummyLogger()):
        self.graph = graph
        self.limit = limit
        self.logger = logger
        self.arcset = ArcSet(graph)
        self.triangles: List[DirectedTriangle] = enumerate_directed_triangles(graph)
        self._rows = [tuple(self.arcset.index(a) for a in C.arcs) for C in self.triangles]
        self._membership: List[List[int]] = [[] for _ in range(len(self.arcset))]
        for r, row in enumerate(self._rows):
            for i in row:
                self._membership[i].append(r)
        self.nodes = 0

    def precheck(self) -> Optional[NotTriangulable]:
        if not self.triangles:
            return NotTriangulable(NotTriangulableReason.NO_TRIANGLES)
        if len(self.arcset) % 3 != 0:
            return NotTriangulable(NotTriangulableReason.ARC_NOT_DIVISIBLE, witness=f"|A|={len(self.arcset)}")
        for i, rows in enumerate(self._membership):
            if not rows:
                return NotTriangulable(NotTriangulableReason.ARC_IN_NO_TRIANGLE, witness=self.arcset[i])
        return None

    def _cover(self, r: int, covered, alive, counts) -> List[int]:
        """ Take row r: cover its arcs and retire every row that now clashes; returns the retired rows """
        retired = []
        for i in self._rows[r]:
            covered[i] = True
            for r2 in self._membership[i]:
                if alive[r2]:
                    alive[r2] = False
                    retired.append(r2)
                    for j in self._rows[r2]:
                        counts[j] -= 1
        return retired

    def _uncover(self, r: int, retired: List[int], covered, alive, counts):
        for r2 in reversed(retired):
            alive[r2] = True
            for j in self._rows[r2]:
                counts[j] += 1
        for i in self._rows[r]:
            covered[i] = False

    def _solve(self, covered, alive, counts, chosen: List[int]) -> bool:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise SearchBudgetExceeded(self.limit)

        best_arc = None
        for i in range(len(covered)):
            if covered[i]:
                continue
            if best_arc is None or counts[i] < counts[best_arc]:
                best_arc = i
                if counts[i] == 0:
                    return False
        if best_arc is None:
            return True

        for r in [r for r in self._membership[best_arc] if alive[r]]:
            retired = self._cover(r, covered, alive, counts)
            chosen.append(r)
            if self._solve(covered, alive, counts, chosen):
                return True
            chosen.pop()
            self._uncover(r, retired, covered, alive, counts)
        return False

    def run(self) -> Union[TrianglePartition, NotTriangulable]:
        self.logger.info(f"Exact cover search on {self.graph}: {len(self.triangles)} directed triangles")
        failure = self.precheck()
        if failure is not None:
            self.logger.info(failure.message)
            return failure
        covered = [False] * len(self.arcset)
        alive = [True] * len(self._rows)
        counts = [len(rows) for rows in self._membership]
        chosen: List[int] = []
        self.nodes = 0
        found = self._solve(covered, alive, counts, chosen)
        self.logger.info(f"Search finished after {self.nodes} node expansions, found={found}")
        if not found:
            return NotTriangulable(NotTriangulableReason.SEARCH_EXHAUSTED, nodes=self.nodes)
        return TrianglePartition(self.graph, sorted((self.triangles[r] for r in chosen), key=DirectedTriangle.sort_key))


def find_partition(g: Graph, limit: Optional[int] = None, logger=DummyLogger()) -> Union[TrianglePartition, NotTriangulable]:
    return ExactCoverSearch(g, limit, logger).run()


def canonical_double_cone_partition(n: int) -> TrianglePartition:
    """ u+ -> x_i -> x_{i+1} -> u+ and u- -> x_{i+1} -> x_i -> u- for every i """
    if n < 3:
        raise GeneratorError(f"double cone needs n >= 3 (got {n})")
    g = gen_double_cone(n)
    u_plus, u_minus = 0, 1

    def x(i):
        return 2 + (i % n)

    triangles = [DirectedTriangle.from_vertices(u_plus, x(i), x(i + 1)) for i in range(n)]
    triangles += [DirectedTriangle.from_vertices(u_minus, x(i + 1), x(i)) for i in range(n)]
    return TrianglePartition(g, triangles)
