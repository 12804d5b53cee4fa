from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from util.errors import GraphFormatError
from util.types import ErrorCode

Edge = Tuple[int, int]


class Arc(NamedTuple):
    origin: int
    terminus: int

    def reverse(self) -> "Arc":
        return Arc(self.terminus, self.origin)

    def __str__(self):
        return f"({self.origin},{self.terminus})"


class Graph:
    """ Finite simple connected graph on vertices 0..n-1.

    Edges are stored as sorted pairs (u < v) in lexicographic order, so two
    graphs built from the same edge set are indistinguishable.
    """

    def __init__(self, n_vertices: int, edges: Iterable[Sequence[int]], labels: Optional[Sequence[str]] = None):
        if n_vertices < 1:
            raise GraphFormatError(ErrorCode.EMPTY_GRAPH, "a graph needs at least one vertex")
        seen = set()
        for raw in edges:
            u, v = int(raw[0]), int(raw[1])
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise GraphFormatError(ErrorCode.BAD_VERTEX, f"edge ({u},{v}) outside [0, {n_vertices})")
            if u == v:
                raise GraphFormatError(ErrorCode.LOOP_EDGE, f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(ErrorCode.DUPLICATE_EDGE, f"duplicate edge {key}")
            seen.add(key)
        if n_vertices > len(seen) + 1:
            raise GraphFormatError(ErrorCode.DISCONNECTED,
                                   f"{n_vertices} vertices cannot be connected by {len(seen)} edges")
        if labels is not None and len(labels) != n_vertices:
            raise GraphFormatError(ErrorCode.BAD_VERTEX, f"{len(labels)} labels for {n_vertices} vertices")

        self._n = n_vertices
        self._edges: Tuple[Edge, ...] = tuple(sorted(seen))
        self._labels = tuple(labels) if labels is not None else None
        self._neighbours: Tuple[Tuple[int, ...], ...] = self._build_neighbours()

        if not nx.is_connected(self.to_networkx()):
            raise GraphFormatError(ErrorCode.DISCONNECTED, "graph is not connected")

    def _build_neighbours(self):
        neighbours: List[List[int]] = [[] for _ in range(self._n)]
        for u, v in self._edges:
            neighbours[u].append(v)
            neighbours[v].append(u)
        return tuple(tuple(sorted(nb)) for nb in neighbours)

    @property
    def n_vertices(self) -> int:
        return self._n

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def labels(self) -> Optional[Tuple[str, ...]]:
        return self._labels

    def label(self, x: int) -> str:
        return self._labels[x] if self._labels is not None else str(x)

    def neighbours(self, x: int) -> Tuple[int, ...]:
        self.check_vertex(x)
        return self._neighbours[x]

    def degree(self, x: int) -> int:
        return len(self.neighbours(x))

    def degrees(self) -> np.ndarray:
        return np.array([len(nb) for nb in self._neighbours], dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and v in self._neighbours[u]

    def check_vertex(self, x: int):
        if not (isinstance(x, (int, np.integer)) and 0 <= x < self._n):
            raise GraphFormatError(ErrorCode.BAD_VERTEX, f"unknown vertex {x!r}")

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self._edges)
        return g

    def __eq__(self, other):
        return isinstance(other, Graph) and self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __str__(self):
        return f"Graph(|V|={self._n}, |E|={len(self._edges)})"

    __repr__ = __str__


class ArcSet:
    """ The 2|E| symmetric arcs in canonical (origin, terminus) order """

    def __init__(self, graph: Graph):
        self.graph = graph
        arcs = []
        for u, v in graph.edges:
            arcs.append(Arc(u, v))
            arcs.append(Arc(v, u))
        self._arcs: Tuple[Arc, ...] = tuple(sorted(arcs))
        self._index: Dict[Arc, int] = {a: i for i, a in enumerate(self._arcs)}
        self._reverse = np.array([self._index[a.reverse()] for a in self._arcs], dtype=np.int64)
        in_arcs: List[List[int]] = [[] for _ in range(graph.n_vertices)]
        for i, a in enumerate(self._arcs):
            in_arcs[a.terminus].append(i)
        self._in_arcs = tuple(tuple(ix) for ix in in_arcs)

    def __len__(self):
        return len(self._arcs)

    def __iter__(self):
        return iter(self._arcs)

    def __getitem__(self, i: int) -> Arc:
        return self._arcs[i]

    def __contains__(self, arc) -> bool:
        return tuple(arc) in self._index

    @property
    def arcs(self) -> Tuple[Arc, ...]:
        return self._arcs

    def index(self, arc: Sequence[int]) -> int:
        try:
            return self._index[Arc(int(arc[0]), int(arc[1]))]
        except KeyError:
            raise GraphFormatError(ErrorCode.BAD_VERTEX, f"({arc[0]},{arc[1]}) is not an arc of {self.graph}")

    def reverse_index(self, i: int) -> int:
        return int(self._reverse[i])

    @property
    def reversal(self) -> np.ndarray:
        """ Permutation array i -> index of the reversed arc """
        return self._reverse.copy()

    def in_arcs(self, x: int) -> Tuple[int, ...]:
        """ Indices of A(x), the arcs terminating at x """
        self.graph.check_vertex(x)
        return self._in_arcs[x]

    def origins(self) -> np.ndarray:
        return np.array([a.origin for a in self._arcs], dtype=np.int64)

    def termini(self) -> np.ndarray:
        return np.array([a.terminus for a in self._arcs], dtype=np.int64)


def arcs(g: Graph) -> ArcSet:
    return ArcSet(g)


def adjacency_and_degree(g: Graph) -> Tuple[np.ndarray, np.ndarray]:
    n = g.n_vertices
    A = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges:
        A[u, v] = 1
        A[v, u] = 1
    D = np.diag(A.sum(axis=1))
    return A, D


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """ Graph with vertex x renamed perm[x] """
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(g.n_vertices)):
        raise GraphFormatError(ErrorCode.BAD_VERTEX, f"{perm} is not a permutation of the vertices")
    labels = None
    if g.labels is not None:
        labels = [""] * g.n_vertices
        for x, p in enumerate(perm):
            labels[p] = g.labels[x]
    return Graph(g.n_vertices, [(perm[u], perm[v]) for u, v in g.edges], labels)
