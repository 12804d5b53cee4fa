from typing import Dict, List, Optional

import numpy as np

from operators.operator_set import LiftedSystem, OperatorSet
from spectral.linalg import eig_symmetric, kernel, min_singular_value, rank, same_span
from spectral.mapping import OMEGA, theta
from util.config import ToleranceConfig
from util.errors import NumericalError
from util.types import EigenKind, ErrorCode


class EigenSpace:
    """ Columns of `basis` span (part of) ker(U_c - eigenvalue) """

    def __init__(self, eigenvalue: complex, basis: np.ndarray, kind: EigenKind):
        self.eigenvalue = complex(eigenvalue)
        self.basis = np.asarray(basis, dtype=np.complex128)
        self.kind = kind

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def vectors(self) -> List[np.ndarray]:
        return [self.basis[:, i] for i in range(self.dim)]

    def residual(self, U_c: np.ndarray) -> float:
        """ max_i ||U_c v_i - Lambda v_i|| / ||v_i|| """
        if self.dim == 0:
            return 0.0
        R = U_c @ self.basis - self.eigenvalue * self.basis
        return float(np.max(np.linalg.norm(R, axis=0) / np.linalg.norm(self.basis, axis=0)))

    def independence(self) -> float:
        """ Smallest singular value of the normalised basis """
        if self.dim == 0:
            return float("inf")
        return min_singular_value(self.basis / np.linalg.norm(self.basis, axis=0))

    def __len__(self):
        return self.dim

    def __str__(self):
        z = self.eigenvalue
        return f"EigenSpace({self.kind.value}, {z.real:+.6f}{z.imag:+.6f}i, dim={self.dim})"


def _check_eigenvector(ops: OperatorSet, lam: float, f: np.ndarray, tol: float):
    residual = np.linalg.norm(ops.T @ f - lam * f)
    if residual > tol * max(np.linalg.norm(f), 1e-300):
        raise NumericalError(ErrorCode.NOT_EIGENVECTOR, f"f is not in ker(T - {lam:.12g}): residual {residual:.3e}")


def inherited_eigenvectors(ops: OperatorSet, lam: float, f: np.ndarray, tol: float = 1e-9) -> List[EigenSpace]:
    """ Eigenvectors of U_c in the inherited space built from f.

    -1/2 < lam < 1 : (d* + e^{+-2i theta} S_c d* - e^{+-i theta} S_c^2 d*) f at e^{+-i theta}
    lam = -1/2     : (-d* + S_c d*) f at -1
    lam = 1        : (d* + S_c d* - S_c^2 d*) f at 1, f arbitrary
    """
    f = np.asarray(f, dtype=np.complex128)
    if lam < -0.5 - tol or lam > 1.0 + tol:
        raise NumericalError(ErrorCode.OUT_OF_RANGE, f"lambda = {lam} outside [-1/2, 1]")
    dstar = ops.d.T
    P0, P1, P2 = dstar, ops.S_c @ dstar, ops.S_c @ ops.S_c @ dstar

    if abs(lam - 1.0) <= tol:
        v = (P0 + P1 - P2) @ f
        return [EigenSpace(1.0, v[:, np.newaxis], EigenKind.INHERITED)]

    _check_eigenvector(ops, lam, f, tol)
    if abs(lam + 0.5) <= tol:
        v = (-P0 + P1) @ f
        return [EigenSpace(-1.0, v[:, np.newaxis], EigenKind.INHERITED)]

    t = theta(lam)
    spaces = []
    for sign in (1, -1):
        Lam = np.exp(sign * 1j * t)
        v = (P0 + Lam ** 2 * P1 - Lam * P2) @ f
        spaces.append(EigenSpace(Lam, v[:, np.newaxis], EigenKind.INHERITED))
    return spaces


def unit_eigenspace(ops: OperatorSet) -> EigenSpace:
    """ (d* + S_c d* - S_c^2 d*) e_u for every vertex u: |V| vectors at 1 """
    dstar = ops.d.T
    basis = dstar + ops.S_c @ dstar - ops.S_c @ ops.S_c @ dstar
    return EigenSpace(1.0, basis, EigenKind.INHERITED)


def inherited_basis(ops: OperatorSet, tol: ToleranceConfig = None) -> List[EigenSpace]:
    """ Every inherited eigenspace, one per distinct eigenvalue of T (plus the unit one) """
    tol = tol or ToleranceConfig()
    values, vectors = eig_symmetric(ops.T, tol.residual_tol)
    spaces = [unit_eigenspace(ops)]
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[j + 1] - values[i] <= tol.cluster_tol:
            j += 1
        lam = float(values[i:j + 1].mean())
        if abs(lam - 1.0) > tol.cluster_tol:
            collected: Dict[complex, List[np.ndarray]] = {}
            for k in range(i, j + 1):
                for space in inherited_eigenvectors(ops, lam, vectors[:, k], max(tol.residual_tol, tol.cluster_tol)):
                    collected.setdefault(space.eigenvalue, []).append(space.basis)
            for Lam, blocks in collected.items():
                spaces.append(EigenSpace(Lam, np.hstack(blocks), EigenKind.INHERITED))
        i = j + 1
    return spaces


def birth_space(ops: OperatorSet, mu: complex, tol: float = 1e-9) -> EigenSpace:
    """ ker d  n  ker(S_c + mu) """
    m = ops.n_arcs
    stacked = np.vstack([ops.d.astype(np.complex128), ops.S_c + mu * np.eye(m)])
    return EigenSpace(mu, kernel(stacked, tol), EigenKind.BIRTH)


def birth_basis(ops: OperatorSet, k: int, tol: float = 1e-9) -> EigenSpace:
    """ Birth eigenspace at -omega^k, k in {0, 1, 2} """
    if k not in (0, 1, 2):
        raise NumericalError(ErrorCode.OUT_OF_RANGE, f"k must be 0, 1 or 2 (got {k})")
    mu = -1.0 + 0j if k == 0 else -OMEGA ** k
    return birth_space(ops, mu, tol)


def triangle_lift(ops: OperatorSet) -> np.ndarray:
    """ Q[a, C] = 1 iff arc a lies in triangle C """
    Q = np.zeros((ops.n_arcs, len(ops.partition)), dtype=np.float64)
    Q[np.arange(ops.n_arcs), ops.partition.arc_to_triangle] = 1.0
    return Q


def birth_minus1_from_kerR(ops: OperatorSet, tol: float = 1e-9) -> EigenSpace:
    """ B_-1 from ker R: phi on triangles becomes Psi constant on each triangle """
    phi = kernel(ops.R.astype(np.float64), tol)
    return EigenSpace(-1.0, triangle_lift(ops) @ phi, EigenKind.BIRTH)


def orthogonality_to_inherited(space: EigenSpace, lifted: LiftedSystem) -> float:
    """ max |<L e_i, v>| / ||v|| over the basis """
    if space.dim == 0:
        return 0.0
    G = lifted.L.T @ space.basis
    return float(np.max(np.abs(G) / np.linalg.norm(space.basis, axis=0)))


def dimension_ledger(ops: OperatorSet, tol: ToleranceConfig = None, lifted: Optional[LiftedSystem] = None) -> Dict[str, Dict[str, int]]:
    """ Each counted dimension next to its closed form """
    tol = tol or ToleranceConfig()
    lifted = lifted or LiftedSystem(ops)
    n, m, p = ops.n_vertices, ops.n_arcs, len(ops.partition)
    eye = np.eye(n)
    b = kernel(ops.T + 0.5 * eye, tol.rank_tol).shape[1]
    ledger = {
        "b": {"computed": b, "expected": b},
        "dim ker(T-1)": {"computed": kernel(ops.T - eye, tol.rank_tol).shape[1], "expected": 1},
        "rank L": {"computed": rank(lifted.L, tol.rank_tol), "expected": 3 * n - b - 2},
        "dim ker L": {"computed": m - rank(lifted.L, tol.rank_tol), "expected": m - (3 * n - b - 2)},
        "dim ker R": {"computed": kernel(ops.R.astype(np.float64), tol.rank_tol).shape[1], "expected": p - n + b},
        "dim B_-1": {"computed": birth_basis(ops, 0, tol.rank_tol).dim, "expected": p - n + b},
        "dim B_-omega": {"computed": birth_basis(ops, 1, tol.rank_tol).dim, "expected": (m + 2 - 2 * n - p) // 2},
        "dim B_-omega^2": {"computed": birth_basis(ops, 2, tol.rank_tol).dim, "expected": (m + 2 - 2 * n - p) // 2},
    }
    return ledger


def ledger_consistent(ledger: Dict[str, Dict[str, int]]) -> bool:
    return all(entry["computed"] == entry["expected"] for entry in ledger.values())


def same_birth_minus1(ops: OperatorSet, tol: float = 1e-9, angle_tol: float = 1e-8) -> bool:
    """ span of the ker R lift equals ker d n ker(S_c - 1) """
    lifted = birth_minus1_from_kerR(ops, tol)
    direct = birth_basis(ops, 0, tol)
    return same_span(lifted.basis, direct.basis, angle_tol)


def lifted_eigvector_check(lifted: LiftedSystem, Lam: complex, tol: float = 1e-9) -> float:
    """ Every vector of ker(T~ - Lam) has the form [f, Lam^2 f, -Lam f]; returns the worst deviation """
    n = lifted.ops.n_vertices
    M = lifted.Ttilde.astype(np.complex128) - Lam * np.eye(3 * n)
    K = kernel(M, tol)
    if K.shape[1] == 0:
        return 0.0
    f, g, h = K[:n], K[n:2 * n], K[2 * n:]
    return float(max(np.max(np.abs(g - Lam ** 2 * f)), np.max(np.abs(h + Lam * f))))
