from typing import Dict

import numpy as np

from graph_core.graph import Graph, adjacency_and_degree
from operators.builders import (build_boundary, build_flipflop, build_moving_shift, build_T,
                                build_T1_T2, discriminant, grover_coin, inverse_sqrt_degree)
from triangulation.partition import TrianglePartition, build_R
from util.logger import DummyLogger


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class OperatorSet:
    """ Every dense matrix of the walk for one (graph, partition) pair, in canonical arc order """

    def __init__(self, graph: Graph, pi: TrianglePartition, logger=DummyLogger()):
        self.graph = graph
        self.partition = pi
        self.arcset = pi.arcset

        A, D = adjacency_and_degree(graph)
        self.A = _frozen(A)
        self.D = _frozen(D)
        self.d = _frozen(build_boundary(graph, self.arcset))
        self.S = _frozen(build_flipflop(self.arcset))
        self.S_c = _frozen(build_moving_shift(pi))
        coin = grover_coin(self.d)
        self.coin = _frozen(coin)
        self.U = _frozen(self.S @ coin)
        self.U_c = _frozen(self.S_c @ coin)
        self.T = _frozen(build_T(graph))
        T1, T2 = build_T1_T2(graph, pi)
        self.T1 = _frozen(T1)
        self.T2 = _frozen(T2)
        self.R = _frozen(build_R(pi))

        # permutation forms for exact group identities
        self.flip = _frozen(self.arcset.reversal)
        self.tau = _frozen(pi.tau)
        logger.info(f"Built operators for {graph}: |A|={len(self.arcset)}, |pi|={len(pi)}")

    @property
    def n_arcs(self) -> int:
        return len(self.arcset)

    @property
    def n_vertices(self) -> int:
        return self.graph.n_vertices

    def __str__(self):
        return f"OperatorSet({self.graph}, |pi|={len(self.partition)})"


def tilde_T(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    I, O = np.eye(n), np.zeros((n, n))
    return np.block([[O, O, -I],
                     [I, 2 * T, 2 * T],
                     [O, -I, O]])


def tilde_T_inverse(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    I, O = np.eye(n), np.zeros((n, n))
    return np.block([[2 * T, I, 2 * T],
                     [O, O, -I],
                     [-I, O, O]])


def B_matrix(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    I, O = np.eye(n), np.zeros((n, n))
    return np.block([[0.5 * I, O, O],
                     [T, 0.5 * I, T],
                     [T, O, 0.5 * I]])


def B_inverse(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    I, O = np.eye(n), np.zeros((n, n))
    return np.block([[2 * I, O, O],
                     [8 * T @ T - 4 * T, 2 * I, -4 * T],
                     [-4 * T, O, 2 * I]])


def block_IT(T: np.ndarray) -> np.ndarray:
    """ [[I, T, T], [T, I, T], [T, T, I]] """
    I = np.eye(T.shape[0])
    return np.block([[I, T, T], [T, I, T], [T, T, I]])


class LiftedSystem:
    """ L = [d*, S_c d*, S_c^2 d*] with the 3|V| x 3|V| matrices T~ and B """

    def __init__(self, ops: OperatorSet):
        self.ops = ops
        dstar = ops.d.T
        self.L = _frozen(np.hstack([dstar, ops.S_c @ dstar, ops.S_c @ ops.S_c @ dstar]))
        self.Ttilde = _frozen(tilde_T(ops.T))
        self.Ttilde_inv = _frozen(tilde_T_inverse(ops.T))
        self.Bmat = _frozen(B_matrix(ops.T))
        self.Bmat_inv = _frozen(B_inverse(ops.T))

    def intertwining_error(self) -> float:
        """ max |U_c L - L T~| """
        return float(np.max(np.abs(self.ops.U_c @ self.L - self.L @ self.Ttilde)))

    def B_identity_error(self) -> float:
        T3 = np.linalg.matrix_power(self.Ttilde, 3)
        lhs = self.Bmat @ (T3 + np.eye(T3.shape[0]))
        return float(np.max(np.abs(lhs - block_IT(self.ops.T))))


def build_operator_set(g: Graph, pi: TrianglePartition, logger=DummyLogger()) -> OperatorSet:
    return OperatorSet(g, pi, logger)


def build_lifted(g: Graph, pi: TrianglePartition, ops: OperatorSet = None) -> LiftedSystem:
    return LiftedSystem(ops if ops is not None else OperatorSet(g, pi))


def _max_abs(M) -> float:
    return float(np.max(np.abs(M))) if np.size(M) else 0.0


def operator_identities(ops: OperatorSet, lifted: LiftedSystem = None) -> Dict[str, float]:
    """ Error of every operator identity; permutation and integer ones are exact (0 or >= 1) """
    lifted = lifted or LiftedSystem(ops)
    n, m = ops.n_vertices, ops.n_arcs
    ident = np.arange(m)
    Dm = inverse_sqrt_degree(ops.graph)
    DR = Dm @ ops.R.astype(np.float64)
    checks = {
        "S^2=I": float(np.count_nonzero(ops.flip[ops.flip] != ident)),
        "S_c^3=I": float(np.count_nonzero(ops.tau[ops.tau[ops.tau]] != ident)),
        "S_c!=I": 0.0 if np.all(ops.tau != ident) else 1.0,
        "dd*=I": _max_abs(ops.d @ ops.d.T - np.eye(n)),
        "coin^2=I": _max_abs(ops.coin @ ops.coin - np.eye(m)),
        "U^TU=I": _max_abs(ops.U.T @ ops.U - np.eye(m)),
        "U_c^TU_c=I": _max_abs(ops.U_c.T @ ops.U_c - np.eye(m)),
        "T=T^T": _max_abs(ops.T - ops.T.T),
        "T=dSd*": _max_abs(ops.T - discriminant(ops.d, ops.S)),
        "T=T1": _max_abs(ops.T - ops.T1),
        "T=T2": _max_abs(ops.T - ops.T2),
        "RR^T=2A+D": float(np.max(np.abs(ops.R @ ops.R.T - (2 * ops.A + ops.D)))),
        "T=DR(DR)^T/2-I/2": _max_abs(ops.T - (0.5 * DR @ DR.T - 0.5 * np.eye(n))),
        "U_cL=LT~": lifted.intertwining_error(),
        "T~T~^-1=I": _max_abs(lifted.Ttilde @ lifted.Ttilde_inv - np.eye(3 * n)),
        "BB^-1=I": _max_abs(lifted.Bmat @ lifted.Bmat_inv - np.eye(3 * n)),
        "B(T~^3+I)=[[I,T,T],[T,I,T],[T,T,I]]": lifted.B_identity_error(),
    }
    return checks
