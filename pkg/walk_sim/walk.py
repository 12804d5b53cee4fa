from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from graph_core.graph import ArcSet
from util.errors import GraphFormatError, NumericalError
from util.types import ErrorCode, StartKind

NORM_TOL = 1e-12


class WalkState:
    """ Complex amplitudes indexed by the arcs of `arcset` """

    def __init__(self, arcset: ArcSet, amplitudes: np.ndarray, normalize: bool = True):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128).ravel()
        if amplitudes.size != len(arcset):
            raise NumericalError(ErrorCode.OUT_OF_RANGE,
                                 f"{amplitudes.size} amplitudes for {len(arcset)} arcs")
        if normalize:
            norm = np.linalg.norm(amplitudes)
            if norm == 0:
                raise NumericalError(ErrorCode.OUT_OF_RANGE, "cannot normalise the zero state")
            amplitudes = amplitudes / norm
        self.arcset = arcset
        self.amplitudes = amplitudes

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm - 1.0) <= tol

    def amplitude(self, arc) -> complex:
        return complex(self.amplitudes[self.arcset.index(arc)])

    def step(self, U: np.ndarray) -> "WalkState":
        return WalkState(self.arcset, U @ self.amplitudes, normalize=False)

    def __len__(self):
        return self.amplitudes.size

    def __str__(self):
        return f"WalkState(|A|={len(self)}, norm={self.norm:.15f})"


def _parse_arc(arc) -> tuple:
    if isinstance(arc, str):
        tokens = arc.replace(",", " ").split()
        if len(tokens) != 2:
            raise GraphFormatError(ErrorCode.BAD_TOKEN, f"an arc needs two vertex indices, got {arc!r}")
        try:
            return int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(ErrorCode.BAD_TOKEN, f"non-integer arc {arc!r}")
    return int(arc[0]), int(arc[1])


def initial_state(arcset: ArcSet, kind: Union[StartKind, str] = StartKind.UNIFORM, arc=None,
                  vertex: Optional[int] = None) -> WalkState:
    """ uniform over arcs, a single arc, or uniform over the arcs into one vertex """
    kind = StartKind(kind)
    psi = np.zeros(len(arcset), dtype=np.complex128)
    if kind == StartKind.UNIFORM:
        psi[:] = 1.0
    elif kind == StartKind.POINT:
        if arc is None:
            raise GraphFormatError(ErrorCode.BAD_VERTEX, "a point state needs an arc")
        psi[arcset.index(_parse_arc(arc))] = 1.0
    else:
        if vertex is None:
            raise GraphFormatError(ErrorCode.BAD_VERTEX, "a vertex state needs a vertex")
        psi[list(arcset.in_arcs(vertex))] = 1.0
    return WalkState(arcset, psi)


def evolve(U: np.ndarray, psi: WalkState, steps: int, stride: int = 1) -> List[WalkState]:
    """ [Psi_0, Psi_s, Psi_2s, ...] with Psi_{t+1} = U Psi_t; the last step is always kept """
    if steps < 0:
        raise NumericalError(ErrorCode.OUT_OF_RANGE, f"steps must be >= 0 (got {steps})")
    if stride < 1:
        raise NumericalError(ErrorCode.OUT_OF_RANGE, f"stride must be >= 1 (got {stride})")
    trajectory = [psi]
    current = psi
    for t in range(1, steps + 1):
        current = current.step(U)
        if t % stride == 0 or t == steps:
            trajectory.append(current)
    return trajectory


def recorded_times(steps: int, stride: int = 1) -> List[int]:
    times = list(range(0, steps + 1, stride))
    if times[-1] != steps:
        times.append(steps)
    return times


def vertex_distribution(psi: WalkState) -> np.ndarray:
    """ p(x) = sum over arcs a into x of |Psi_a|^2 """
    n = psi.arcset.graph.n_vertices
    p = np.zeros(n, dtype=np.float64)
    np.add.at(p, psi.arcset.termini(), np.abs(psi.amplitudes) ** 2)
    return p


def detect_period(M: np.ndarray, max_t: int, tol: float = 1e-10) -> Optional[int]:
    """ Smallest t in 1..max_t with max |M^t - I| <= tol, by repeated multiplication """
    if max_t < 1:
        raise NumericalError(ErrorCode.OUT_OF_RANGE, f"max_t must be >= 1 (got {max_t})")
    M = np.asarray(M)
    eye = np.eye(M.shape[0])
    power = M.copy()
    for t in range(1, max_t + 1):
        if np.max(np.abs(power - eye)) <= tol:
            return t
        power = power @ M
    return None


def norm_drift(trajectory: Sequence[WalkState]) -> float:
    return max(abs(s.norm - 1.0) for s in trajectory)


def trajectory_frame(trajectory: Sequence[WalkState], times: Optional[Sequence[int]] = None) -> pd.DataFrame:
    """ One row per recorded step: t, vertex_0, ..., vertex_{n-1} """
    if times is None:
        times = range(len(trajectory))
    rows = np.vstack([vertex_distribution(s) for s in trajectory])
    frame = pd.DataFrame(rows, columns=[f"vertex_{x}" for x in range(rows.shape[1])])
    frame.insert(0, "t", list(times))
    return frame
