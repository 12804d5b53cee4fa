import numpy as np

from operators.operator_set import LiftedSystem, OperatorSet
from util.errors import TriwalkError
from util.serialize import matrix_to_csv, matrix_to_json
from util.types import ErrorCode, OutputFormat

OPERATOR_NAMES = ("d", "S", "S_c", "U", "U_c", "T", "T1", "T2", "R", "A", "D")
LIFTED_NAMES = ("L", "Ttilde", "Bmat")


def named_matrix(ops: OperatorSet, name: str) -> np.ndarray:
    if name in OPERATOR_NAMES:
        return getattr(ops, name)
    if name in LIFTED_NAMES:
        return getattr(LiftedSystem(ops), name)
    raise TriwalkError(ErrorCode.BAD_TOKEN, f"unknown operator {name!r}; choose from {OPERATOR_NAMES + LIFTED_NAMES}")


def dump_matrix(ops: OperatorSet, name: str, fmt: OutputFormat = OutputFormat.CSV):
    matrix = named_matrix(ops, name)
    if fmt == OutputFormat.JSON:
        payload = matrix_to_json(matrix)
        payload["name"] = name
        return payload
    return matrix_to_csv(matrix)
