from itertools import combinations
from typing import List, Tuple

import networkx as nx

from graph_core.graph import Arc, Graph


class DirectedTriangle:
    """ Ordered triple of arcs (a1, a2, a3); a directed 3-cycle when head meets tail """

    def __init__(self, a1: Arc, a2: Arc, a3: Arc):
        self._arcs: Tuple[Arc, Arc, Arc] = (Arc(*a1), Arc(*a2), Arc(*a3))

    @classmethod
    def from_vertices(cls, u: int, v: int, w: int) -> "DirectedTriangle":
        """ u -> v -> w -> u """
        return cls(Arc(u, v), Arc(v, w), Arc(w, u))

    @property
    def arcs(self) -> Tuple[Arc, Arc, Arc]:
        return self._arcs

    @property
    def vertices(self) -> Tuple[int, int, int]:
        """ Origins in cycle order """
        return tuple(a.origin for a in self._arcs)

    def is_cycle(self) -> bool:
        a1, a2, a3 = self._arcs
        return a1.terminus == a2.origin and a2.terminus == a3.origin and a3.terminus == a1.origin

    def is_directed_triangle(self) -> bool:
        return self.is_cycle() and len(set(self.vertices)) == 3

    def next_arc(self, arc: Arc) -> Arc:
        i = self._arcs.index(Arc(*arc))
        return self._arcs[(i + 1) % 3]

    def arc_into(self, x: int) -> Arc:
        """ The unique arc of the triangle terminating at x """
        for a in self._arcs:
            if a.terminus == x:
                return a
        raise KeyError(f"vertex {x} not on {self}")

    def canonical(self) -> "DirectedTriangle":
        """ Same cycle, rotated so the smallest vertex comes first """
        verts = self.vertices
        i = verts.index(min(verts))
        return DirectedTriangle(*(self._arcs[i:] + self._arcs[:i]))

    def reversed(self) -> "DirectedTriangle":
        u, v, w = self.vertices
        return DirectedTriangle.from_vertices(u, w, v)

    def sort_key(self):
        return self.canonical().vertices

    def __eq__(self, other):
        return isinstance(other, DirectedTriangle) and self.canonical()._arcs == other.canonical()._arcs

    def __hash__(self):
        return hash(self.canonical()._arcs)

    def __str__(self):
        u, v, w = self.vertices
        return f"{u}->{v}->{w}"

    __repr__ = __str__


def enumerate_directed_triangles(g: Graph) -> List[DirectedTriangle]:
    """ Both cyclic orientations of every 3-clique, sorted by canonical vertex cycle """
    found = []
    for clique in nx.enumerate_all_cliques(g.to_networkx()):
        if len(clique) < 3:
            continue
        if len(clique) > 3:
            break
        u, v, w = sorted(clique)
        found.append(DirectedTriangle.from_vertices(u, v, w))
        found.append(DirectedTriangle.from_vertices(u, w, v))
    return sorted(found, key=DirectedTriangle.sort_key)


def brute_force_directed_triangles(g: Graph) -> List[DirectedTriangle]:
    """ Reference enumeration over all vertex triples """
    found = []
    for u, v, w in combinations(range(g.n_vertices), 3):
        if g.has_edge(u, v) and g.has_edge(v, w) and g.has_edge(u, w):
            found.append(DirectedTriangle.from_vertices(u, v, w))
            found.append(DirectedTriangle.from_vertices(u, w, v))
    return sorted(found, key=DirectedTriangle.sort_key)
