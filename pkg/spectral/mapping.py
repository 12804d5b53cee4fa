from typing import List, Optional, Sequence, Union

import numpy as np

from graph_core.graph import Graph
from operators.builders import build_grover, build_T
from operators.operator_set import OperatorSet
from spectral.linalg import eig_symmetric, eig_unitary
from spectral.multiset import EigenCluster, cluster, match, total_multiplicity
from triangulation.partition import TrianglePartition, validate_partition
from triangulation.triangle import DirectedTriangle
from util.config import ToleranceConfig
from util.errors import NumericalError, PartitionInvalidError
from util.logger import DummyLogger
from util.types import ErrorCode

OMEGA = np.exp(2j * np.pi / 3)
BIRTH_EIGENVALUES = (-1.0 + 0j, -OMEGA, -OMEGA ** 2)


def theta(lam: float) -> float:
    """ arccos(lambda - 1/2) on the [0, pi] branch """
    return float(np.arccos(np.clip(lam - 0.5, -1.0, 1.0)))


def birth_multiplicities(n_vertices: int, n_edges: int, b: int):
    """ (M_-1, M_-omega, M_-omega^2) for a triangulable graph """
    if (2 * n_edges) % 3 != 0:
        raise NumericalError(ErrorCode.OUT_OF_RANGE, f"2|E| = {2 * n_edges} is not divisible by 3")
    base = (2 * n_edges) // 3 - n_vertices
    return base + b, base + 1, base + 1


def predict_spectrum_new(sigma_T: Sequence[float], n_vertices: int, n_edges: int, b: Optional[int] = None,
                         tol: float = 1e-7) -> np.ndarray:
    """ sigma(U_c) as a flat multiset of 2|E| values, from sigma(T).

    lambda = 1 is dropped (replaced by {1}^|V|); lambda = -1/2 lifts to the
    single value -1 once per eigenvector; other lambda give e^{+-i theta}.
    """
    sigma_T = np.asarray(sigma_T, dtype=np.float64)
    if np.any(sigma_T < -0.5 - tol) or np.any(sigma_T > 1.0 + tol):
        raise NumericalError(ErrorCode.OUT_OF_RANGE,
                             f"sigma(T) outside [-1/2, 1]: min {sigma_T.min():.12g}, max {sigma_T.max():.12g}")
    at_half = np.abs(sigma_T + 0.5) <= tol
    at_one = np.abs(sigma_T - 1.0) <= tol
    if b is None:
        b = int(np.count_nonzero(at_half))
    m_minus1, m_omega, m_omega2 = birth_multiplicities(n_vertices, n_edges, b)
    if min(m_minus1, m_omega, m_omega2) < 0:
        raise NumericalError(ErrorCode.OUT_OF_RANGE,
                             f"negative birth multiplicity ({m_minus1}, {m_omega}, {m_omega2}); graph is not triangulable")

    values: List[complex] = []
    for lam in sigma_T[~at_one & ~at_half]:
        t = theta(lam)
        values += [np.exp(1j * t), np.exp(-1j * t)]
    values += [-1.0 + 0j] * int(np.count_nonzero(at_half))
    values += [1.0 + 0j] * n_vertices
    values += [BIRTH_EIGENVALUES[0]] * m_minus1
    values += [BIRTH_EIGENVALUES[1]] * m_omega
    values += [BIRTH_EIGENVALUES[2]] * m_omega2
    predicted = np.array(values, dtype=np.complex128)
    if predicted.size != 2 * n_edges:
        raise NumericalError(ErrorCode.OUT_OF_RANGE,
                             f"prediction has {predicted.size} values, expected 2|E| = {2 * n_edges}")
    return predicted


def predict_spectrum_conventional(sigma_T: Sequence[float], n_vertices: int, n_edges: int,
                                  tol: float = 1e-7) -> np.ndarray:
    """ sigma(U) of the Grover walk; lambda = +-1 each lift to a single value """
    sigma_T = np.asarray(sigma_T, dtype=np.float64)
    if np.any(sigma_T < -1.0 - tol) or np.any(sigma_T > 1.0 + tol):
        raise NumericalError(ErrorCode.OUT_OF_RANGE,
                             f"sigma(T) outside [-1, 1]: min {sigma_T.min():.12g}, max {sigma_T.max():.12g}")
    at_one = np.abs(sigma_T - 1.0) <= tol
    at_minus = np.abs(sigma_T + 1.0) <= tol
    m_one = n_edges - n_vertices + 1
    m_minus = n_edges - n_vertices + int(np.count_nonzero(at_minus))

    values: List[complex] = []
    for lam in sigma_T[~at_one & ~at_minus]:
        t = float(np.arccos(np.clip(lam, -1.0, 1.0)))
        values += [np.exp(1j * t), np.exp(-1j * t)]
    values += [1.0 + 0j] * (int(np.count_nonzero(at_one)) + m_one)
    values += [-1.0 + 0j] * (int(np.count_nonzero(at_minus)) + m_minus)
    predicted = np.array(values, dtype=np.complex128)
    if predicted.size != 2 * n_edges:
        raise NumericalError(ErrorCode.OUT_OF_RANGE,
                             f"prediction has {predicted.size} values, expected 2|E| = {2 * n_edges}")
    return predicted


class SpectrumReport:
    """ Directly computed vs predicted eigenvalue multisets """

    def __init__(self, computed: List[EigenCluster], predicted: List[EigenCluster], matched: bool,
                 max_pairing_error: float, residual_max: float, walk: str = "U_c"):
        self.computed = computed
        self.predicted = predicted
        self.matched = matched
        self.max_pairing_error = max_pairing_error
        self.residual_max = residual_max
        self.walk = walk

    @property
    def totals(self):
        return total_multiplicity(self.computed), total_multiplicity(self.predicted)

    def to_json(self):
        return {
            "walk": self.walk,
            "computed": [c.to_json() for c in self.computed],
            "predicted": [c.to_json() for c in self.predicted],
            "matched": self.matched,
            "max_pairing_error": self.max_pairing_error,
            "residual_max": self.residual_max,
            "totals": list(self.totals),
        }

    def __str__(self):
        verdict = "matched" if self.matched else "MISMATCH"
        return (f"SpectrumReport[{self.walk}] {verdict}: {len(self.computed)} distinct eigenvalues, "
                f"totals {self.totals}, pairing error {self.max_pairing_error:.3e}, residual {self.residual_max:.3e}")


def _report(computed_values, residual_max, predicted_values, tol: ToleranceConfig, walk: str) -> SpectrumReport:
    computed = cluster(computed_values, tol.cluster_tol)
    predicted = cluster(predicted_values, tol.cluster_tol)
    same, err = match(computed, predicted)
    matched = same and err <= tol.pairing_tol and total_multiplicity(computed) == total_multiplicity(predicted)
    return SpectrumReport(computed, predicted, matched, err, residual_max, walk)


def _as_partition(g: Graph, pi: Union[TrianglePartition, Sequence[DirectedTriangle]]) -> TrianglePartition:
    if isinstance(pi, TrianglePartition):
        return pi
    report = validate_partition(g, pi)
    if not report.is_valid:
        raise PartitionInvalidError(report)
    return TrianglePartition(g, pi)


def verify_mapping(g: Graph, pi, tol: ToleranceConfig = None, ops: OperatorSet = None,
                   logger=DummyLogger()) -> SpectrumReport:
    """ Direct eigendecomposition of U_c against the prediction from sigma(T) """
    tol = tol or ToleranceConfig()
    pi = _as_partition(g, pi)
    ops = ops or OperatorSet(g, pi)
    sigma_T, _ = eig_symmetric(ops.T, tol.residual_tol)
    values, vectors = eig_unitary(ops.U_c, tol.residual_tol)
    residual_max = float(np.max(np.linalg.norm(ops.U_c @ vectors - vectors * values, axis=0), initial=0.0))
    predicted = predict_spectrum_new(sigma_T, g.n_vertices, g.n_edges, tol=tol.cluster_tol)
    report = _report(values, residual_max, predicted, tol, "U_c")
    logger.info(f"verify_mapping on {g}: {report}")
    for c in report.computed:
        logger.debug(f"  computed {c}")
    return report


def verify_conventional(g: Graph, tol: ToleranceConfig = None, logger=DummyLogger()) -> SpectrumReport:
    """ Same protocol for the Grover walk U = S(2d*d - I) """
    tol = tol or ToleranceConfig()
    U = build_grover(g)
    sigma_T, _ = eig_symmetric(build_T(g), tol.residual_tol)
    values, vectors = eig_unitary(U, tol.residual_tol)
    residual_max = float(np.max(np.linalg.norm(U @ vectors - vectors * values, axis=0), initial=0.0))
    predicted = predict_spectrum_conventional(sigma_T, g.n_vertices, g.n_edges, tol=tol.cluster_tol)
    report = _report(values, residual_max, predicted, tol, "U")
    logger.info(f"verify_conventional on {g}: {report}")
    return report
