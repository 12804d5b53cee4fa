import io
import json
from typing import Any

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.17g"


def complex_to_json(z) -> dict:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def to_jsonable(obj: Any) -> Any:
    """ Recursively turn numpy scalars/arrays and complex numbers into JSON types """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return complex_to_json(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if hasattr(obj, "value") and hasattr(obj, "name"):  # enums
        return obj.value
    return obj


def dumps(obj: Any) -> str:
    # floats go out as repr, the shortest exact round-trip; CSV uses FLOAT_FORMAT since pandas wants a printf pattern
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False) + "\n"


def matrix_to_json(matrix: np.ndarray) -> dict:
    matrix = np.asarray(matrix)
    payload = {"rows": int(matrix.shape[0]), "cols": int(matrix.shape[1])}
    if np.iscomplexobj(matrix):
        payload["re"] = matrix.real.tolist()
        payload["im"] = matrix.imag.tolist()
    else:
        payload["data"] = matrix.tolist()
    return to_jsonable(payload)


def matrix_to_csv(matrix: np.ndarray) -> str:
    """ Row-major CSV, 17 significant digits; complex entries as re,im column pairs """
    matrix = np.asarray(matrix)
    if np.iscomplexobj(matrix):
        columns = {}
        for j in range(matrix.shape[1]):
            columns[f"re_{j}"] = matrix[:, j].real
            columns[f"im_{j}"] = matrix[:, j].imag
        frame = pd.DataFrame(columns)
    else:
        frame = pd.DataFrame(matrix, columns=[f"c{j}" for j in range(matrix.shape[1])])
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()
