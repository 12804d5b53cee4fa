from typing import Tuple

import numpy as np

from graph_core.graph import ArcSet, Graph, adjacency_and_degree
from triangulation.partition import TrianglePartition


def permutation_matrix(image: np.ndarray) -> np.ndarray:
    """ P with P e_b = e_{image[b]}, i.e. P[image[b], b] = 1 """
    m = len(image)
    P = np.zeros((m, m), dtype=np.float64)
    P[image, np.arange(m)] = 1.0
    return P


def build_boundary(g: Graph, arcset: ArcSet = None) -> np.ndarray:
    """ d[v, a] = 1/sqrt(deg v) if v = t(a) """
    arcset = arcset or ArcSet(g)
    degrees = g.degrees().astype(np.float64)
    d = np.zeros((g.n_vertices, len(arcset)), dtype=np.float64)
    termini = arcset.termini()
    d[termini, np.arange(len(arcset))] = 1.0 / np.sqrt(degrees[termini])
    return d


def build_flipflop(arcset: ArcSet) -> np.ndarray:
    """ S[a, b] = 1 iff a is the reverse of b """
    return permutation_matrix(arcset.reversal)


def build_moving_shift(pi: TrianglePartition) -> np.ndarray:
    """ S_c[a, b] = 1 iff a = tau(b) """
    return permutation_matrix(pi.tau)


def grover_coin(d: np.ndarray) -> np.ndarray:
    """ 2 d* d - I, a reflection on the arc space """
    return 2.0 * d.T @ d - np.eye(d.shape[1])


def build_evolutions(g: Graph, pi: TrianglePartition) -> Tuple[np.ndarray, np.ndarray]:
    d = build_boundary(g, pi.arcset)
    coin = grover_coin(d)
    U = build_flipflop(pi.arcset) @ coin
    U_c = build_moving_shift(pi) @ coin
    return U, U_c


def build_grover(g: Graph) -> np.ndarray:
    """ U = S(2d*d - I); needs no partition """
    arcset = ArcSet(g)
    return build_flipflop(arcset) @ grover_coin(build_boundary(g, arcset))


def inverse_sqrt_degree(g: Graph) -> np.ndarray:
    return np.diag(1.0 / np.sqrt(g.degrees().astype(np.float64)))


def build_T(g: Graph) -> np.ndarray:
    """ D^{-1/2} A D^{-1/2} """
    A, _ = adjacency_and_degree(g)
    Dm = inverse_sqrt_degree(g)
    return Dm @ A.astype(np.float64) @ Dm


def build_T1_T2(g: Graph, pi: TrianglePartition) -> Tuple[np.ndarray, np.ndarray]:
    d = build_boundary(g, pi.arcset)
    S_c = build_moving_shift(pi)
    return d @ S_c @ d.T, d @ S_c @ S_c @ d.T


def discriminant(d: np.ndarray, shift: np.ndarray) -> np.ndarray:
    """ d S d* for any shift """
    return d @ shift @ d.T
