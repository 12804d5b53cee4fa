import sys
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from graph_core.edge_list import graph_from_json, parse_edge_list
from graph_core.generators import from_family
from graph_core.graph import ArcSet, Graph
from operators.builders import build_grover, build_T
from operators.dump import dump_matrix
from operators.operator_set import LiftedSystem, OperatorSet, operator_identities
from oracles.brute_force import check_dimension
from oracles.double_cone import (b_of_double_cone, double_cone_birth_vectors, double_cone_T_eigenvectors,
                                 double_cone_T_spectrum)
from spectral.eigenspaces import dimension_ledger, ledger_consistent
from spectral.linalg import eig_symmetric, eig_unitary
from spectral.mapping import SpectrumReport, verify_conventional, verify_mapping
from triangulation.partition import TrianglePartition, parse_partition, partition_from_json
from triangulation.search import NotTriangulable, canonical_double_cone_partition, find_partition
from util.config import ToleranceConfig
from util.errors import GraphFormatError, NotTriangulableError, OracleError, PartitionFormatError, TriwalkError
from util.logger import DummyLogger, setup_logger, stage_logger
from util.types import ErrorCode, OutputFormat, StartKind
from walk_sim.walk import evolve, initial_state, recorded_times, trajectory_frame

WALKS = ("U_c", "U")
SPECTRUM_OPS = ("T", "U", "U_c")
ORACLE_WHATS = ("T-spectrum", "T-eigenvectors", "birth-vectors", "b")


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError as e:
        raise GraphFormatError(ErrorCode.BAD_TOKEN, f"{path} is not UTF-8 text: {e.reason} at byte {e.start}")


def load_graph(path: str) -> Graph:
    """ Edge list, or the JSON form when the file name ends in .json """
    text = _read(path)
    if path.endswith(".json"):
        return graph_from_json(text)
    return parse_edge_list(text)


def load_partition(path: str, g: Graph) -> TrianglePartition:
    try:
        text = _read(path)
    except GraphFormatError as e:
        raise PartitionFormatError(e.message)
    if path.endswith(".json"):
        return partition_from_json(text, g)
    return parse_partition(text, g)


def corpus_graphs(n_min: int = 3, n_max: int = 8, include_k4: bool = True) -> List[str]:
    specs = ["k4"] if include_k4 else []
    return specs + [f"double-cone:{n}" for n in range(n_min, n_max + 1)]


def _verify_family(spec: str, tol: ToleranceConfig, limit: Optional[int]) -> Dict:
    """ One corpus row; module level so joblib workers can pickle it """
    g = from_family(spec)
    pi = find_partition(g, limit)
    if not pi:
        return {"graph": spec, "vertices": g.n_vertices, "edges": g.n_edges, "triangulable": False,
                "matched": False, "max_pairing_error": None, "ledger_consistent": None}
    ops = OperatorSet(g, pi)
    report = verify_mapping(g, pi, tol, ops)
    ledger = dimension_ledger(ops, tol)
    return {"graph": spec, "vertices": g.n_vertices, "edges": g.n_edges, "triangulable": True,
            "matched": report.matched, "max_pairing_error": report.max_pairing_error,
            "ledger_consistent": ledger_consistent(ledger)}


class Kernel:
    """ Runs each pipeline stage with one logger and one set of tolerances """

    def __init__(self, log_name: Optional[str] = None, tolerances: Optional[ToleranceConfig] = None, echo: bool = False):
        self._logger = setup_logger(log_name, echo=echo) if (log_name or echo) else DummyLogger()
        self._tol = tolerances or ToleranceConfig.from_env()
        self._logger.info("-" * 50)
        self._logger.info(f"Kernel initialized with {self._tol}")

    @property
    def tolerances(self) -> ToleranceConfig:
        return self._tol

    @property
    def logger(self):
        return self._logger

    def _check_size(self, g: Graph):
        check_dimension(2 * g.n_edges, self._tol.max_dim)

    def gen(self, family: str) -> Graph:
        g = from_family(family)
        self._logger.info(f"Generated {family}: {g}")
        return g

    def triangulate(self, g: Graph, limit: Optional[int] = None) -> Union[TrianglePartition, NotTriangulable]:
        return find_partition(g, limit, stage_logger(self._logger, "search"))

    def require_partition(self, g: Graph, pi: Optional[TrianglePartition] = None,
                          limit: Optional[int] = None) -> TrianglePartition:
        """ `pi` if given, else the searched partition; raises NotTriangulableError when there is none """
        if pi is not None:
            return pi
        found = self.triangulate(g, limit)
        if not found:
            raise NotTriangulableError(found)
        return found

    def verify(self, g: Graph, pi: TrianglePartition) -> SpectrumReport:
        self._check_size(g)
        return verify_mapping(g, pi, self._tol, logger=stage_logger(self._logger, "verify"))

    def verify_conventional(self, g: Graph) -> SpectrumReport:
        self._check_size(g)
        return verify_conventional(g, self._tol, logger=stage_logger(self._logger, "verify"))

    def identities(self, g: Graph, pi: TrianglePartition) -> Dict[str, float]:
        self._check_size(g)
        ops = OperatorSet(g, pi, self._logger)
        return operator_identities(ops, LiftedSystem(ops))

    def ledger(self, g: Graph, pi: TrianglePartition) -> Dict[str, Dict[str, int]]:
        self._check_size(g)
        return dimension_ledger(OperatorSet(g, pi, self._logger), self._tol)

    def spectrum(self, g: Graph, op: str = "T", pi: Optional[TrianglePartition] = None) -> np.ndarray:
        """ Sorted eigenvalues of T (real), U or U_c (complex) """
        if op not in SPECTRUM_OPS:
            raise TriwalkError(ErrorCode.BAD_TOKEN, f"unknown operator {op!r}; choose from {SPECTRUM_OPS}")
        self._check_size(g)
        if op == "T":
            values, _ = eig_symmetric(build_T(g), self._tol.residual_tol)
            return values
        if op == "U":
            values, _ = eig_unitary(build_grover(g), self._tol.residual_tol)
            return values
        values, _ = eig_unitary(OperatorSet(g, self.require_partition(g, pi)).U_c, self._tol.residual_tol)
        return values

    def simulate(self, g: Graph, pi: Optional[TrianglePartition], steps: int = 50, start_arc=None,
                 start_vertex: Optional[int] = None, stride: int = 1, walk: str = "U_c") -> pd.DataFrame:
        if walk not in WALKS:
            raise TriwalkError(ErrorCode.BAD_TOKEN, f"unknown walk {walk!r}; choose from {WALKS}")
        self._check_size(g)
        if walk == "U_c":
            ops = OperatorSet(g, self.require_partition(g, pi), self._logger)
            U, arcset = ops.U_c, ops.arcset
        else:
            U = build_grover(g)
            arcset = ArcSet(g)
        if start_arc is not None:
            psi = initial_state(arcset, StartKind.POINT, arc=start_arc)
        elif start_vertex is not None:
            psi = initial_state(arcset, StartKind.VERTEX_UNIFORM, vertex=start_vertex)
        else:
            psi = initial_state(arcset, StartKind.UNIFORM)
        trajectory = evolve(U, psi, steps, stride)
        self._logger.info(f"Simulated {walk} on {g}: {steps} steps, stride {stride}, final norm {trajectory[-1].norm:.15f}")
        return trajectory_frame(trajectory, recorded_times(steps, stride))

    def dump(self, g: Graph, pi: TrianglePartition, name: str, fmt: OutputFormat = OutputFormat.CSV):
        self._check_size(g)
        return dump_matrix(OperatorSet(g, pi), name, fmt)

    def oracle(self, n: int, what: str = "T-spectrum", k: Optional[int] = None) -> Dict:
        """ Closed-form double cone data; birth vectors for one k or all three """
        if what not in ORACLE_WHATS:
            raise OracleError(f"unknown oracle output {what!r}; choose from {ORACLE_WHATS}")
        self._logger.info(f"Double cone oracle n={n}: {what}")
        if what == "T-spectrum":
            return {"n": n, "T_spectrum": double_cone_T_spectrum(n)}
        if what == "b":
            return {"n": n, "b": b_of_double_cone(n)}
        if what == "T-eigenvectors":
            return {"n": n, "eigenvectors": [{"eigenvalue": lam, "vector": v} for lam, v in double_cone_T_eigenvectors(n)]}
        ks = [k] if k is not None else [0, 1, 2]
        vectors = []
        for kk in ks:
            for l in range(1, n):
                vectors.append({"k": kk, "l": l, "vector": double_cone_birth_vectors(n, kk, l).amplitudes})
            if kk == 0 and n % 2 == 0:
                vectors.append({"k": 0, "l": None, "even_extra": True,
                                "vector": double_cone_birth_vectors(n, 0, even_extra=True).amplitudes})
        arcset = canonical_double_cone_partition(n).arcset
        return {"n": n, "arcs": [list(a) for a in arcset], "birth_vectors": vectors}

    def corpus(self, specs: Sequence[str], n_jobs: int = 1, limit: Optional[int] = None,
               progress: bool = True) -> pd.DataFrame:
        """ verify_mapping and the dimension ledger per graph; rows keep the order of `specs` """
        self._logger.info(f"Corpus run over {len(specs)} graphs with n_jobs={n_jobs}")
        rows = Parallel(n_jobs=n_jobs)(
            delayed(_verify_family)(spec, self._tol, limit)
            for spec in tqdm(specs, desc="corpus", file=sys.stderr, disable=not progress)
        )
        for row in rows:
            self._logger.info(f"  {row['graph']}: matched={row['matched']}")
        return pd.DataFrame(rows)

