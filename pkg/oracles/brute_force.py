from typing import Optional, Tuple

import numpy as np

from graph_core.graph import Graph
from operators.builders import build_evolutions
from triangulation.partition import TrianglePartition
from util.config import max_dim_from_env
from util.errors import NumericalError
from util.types import ErrorCode


def check_dimension(dim: int, max_dim: Optional[int] = None):
    cap = max_dim if max_dim is not None else max_dim_from_env()
    if dim > cap:
        raise NumericalError(ErrorCode.DIMENSION_CAP, f"dense dimension {dim} exceeds the cap of {cap}")


def brute_force_spectrum(g: Graph, pi: TrianglePartition, max_dim: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """ Plain numpy eigendecomposition of U_c, sorted by (Re, Im); knows nothing about sigma(T) """
    check_dimension(2 * g.n_edges, max_dim)
    _, U_c = build_evolutions(g, pi)
    values, vectors = np.linalg.eig(U_c)
    order = np.lexsort((values.imag, values.real))
    return values[order], vectors[:, order]
