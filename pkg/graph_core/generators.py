from typing import List, Optional, Sequence, Tuple

import networkx as nx

from graph_core.graph import Edge, Graph
from util.errors import GeneratorError


def _from_networkx(g: nx.Graph, labels: Optional[Sequence[str]] = None) -> Graph:
    return Graph(g.number_of_nodes(), [(int(u), int(v)) for u, v in g.edges()], labels)


def gen_complete(n: int) -> Graph:
    if n < 2:
        raise GeneratorError(f"complete graph needs n >= 2 (got {n})")
    return _from_networkx(nx.complete_graph(n))


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise GeneratorError(f"cycle needs n >= 3 (got {n})")
    return _from_networkx(nx.cycle_graph(n))


def gen_path(n: int) -> Graph:
    if n < 2:
        raise GeneratorError(f"path needs n >= 2 (got {n})")
    return _from_networkx(nx.path_graph(n))


def gen_star(k: int) -> Graph:
    """ K_{1,k}: centre 0, leaves 1..k """
    if k < 1:
        raise GeneratorError(f"star needs k >= 1 leaves (got {k})")
    return _from_networkx(nx.star_graph(k))


def join(n1: int, edges1: Sequence[Edge], n2: int, edges2: Sequence[Edge]) -> Tuple[int, List[Edge]]:
    """ Edge list of the join G1 + G2; vertices of G2 are shifted by n1.

    Works on raw edge lists because a join factor (e.g. the edgeless graph
    on two vertices) need not be connected on its own.
    """
    edges = [(u, v) for u, v in edges1]
    edges += [(n1 + u, n1 + v) for u, v in edges2]
    edges += [(x, n1 + y) for x in range(n1) for y in range(n2)]
    return n1 + n2, edges


def gen_double_cone(n: int) -> Graph:
    """ Gamma_n = (empty graph on 2 vertices) + C_n.

    Vertex order is u+, u-, x_0, ..., x_{n-1}.
    """
    if n < 3:
        raise GeneratorError(f"double cone needs n >= 3 (got {n})")
    cycle_edges = [(i, (i + 1) % n) for i in range(n)]
    size, edges = join(2, [], n, cycle_edges)
    labels = ["u+", "u-"] + [f"x{i}" for i in range(n)]
    return Graph(size, edges, labels)


def double_cone_vertex(n: int, name: str) -> int:
    """ Index of 'u+', 'u-' or 'x<i>' in gen_double_cone(n) """
    if name == "u+":
        return 0
    if name == "u-":
        return 1
    if name.startswith("x"):
        i = int(name[1:])
        return 2 + (i % n)
    raise GeneratorError(f"unknown double cone vertex {name!r}")


FAMILIES = {
    "complete": gen_complete,
    "cycle": gen_cycle,
    "double-cone": gen_double_cone,
    "path": gen_path,
    "star": gen_star,
}


def from_family(spec: str) -> Graph:
    """ Build a graph from 'k4', 'complete:n', 'cycle:n', 'double-cone:n', 'path:n' or 'star:k' """
    spec = spec.strip().lower()
    if spec == "k4":
        return gen_complete(4)
    name, sep, size = spec.partition(":")
    if not sep or name not in FAMILIES:
        raise GeneratorError(f"unknown family {spec!r}; expected k4 or one of {sorted(FAMILIES)} with ':n'")
    try:
        n = int(size)
    except ValueError:
        raise GeneratorError(f"family size must be an integer, got {size!r}")
    return FAMILIES[name](n)
