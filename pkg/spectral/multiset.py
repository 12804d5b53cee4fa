from typing import List, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


class EigenCluster:
    """ One distinct eigenvalue with its multiplicity """

    def __init__(self, value: complex, mult: int):
        self.value = complex(value)
        self.mult = int(mult)

    def to_json(self):
        return {"re": self.value.real, "im": self.value.imag, "mult": self.mult}

    def __str__(self):
        return f"{self.value.real:+.12f}{self.value.imag:+.12f}i x{self.mult}"

    __repr__ = __str__


def _close_pairs(z: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """ Index pairs with |z_i - z_j| <= tol, scanning a window sorted by real part """
    order = np.argsort(z.real, kind="stable")
    rows, cols = [], []
    for pos, i in enumerate(order):
        for j in order[pos + 1:]:
            if z[j].real - z[i].real > tol:
                break
            if abs(z[i] - z[j]) <= tol:
                rows.append(i)
                cols.append(j)
    return np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64)


def cluster(values: Sequence[complex], tol: float = 1e-7) -> List[EigenCluster]:
    """ Connected components of the graph |z_i - z_j| <= tol, sorted by (Re, Im) of the cluster means """
    z = np.asarray(values, dtype=np.complex128).ravel()
    if z.size == 0:
        return []
    rows, cols = _close_pairs(z, tol)
    closeness = coo_matrix((np.ones(rows.size), (rows, cols)), shape=(z.size, z.size))
    n_components, labels = connected_components(closeness, directed=False)
    clusters = [EigenCluster(z[labels == c].mean(), int(np.count_nonzero(labels == c))) for c in range(n_components)]
    return sorted(clusters, key=lambda c: (c.value.real, c.value.imag))


def total_multiplicity(clusters: Sequence[EigenCluster]) -> int:
    return sum(c.mult for c in clusters)


def multiplicity_of(clusters: Sequence[EigenCluster], value: complex, tol: float = 1e-7) -> int:
    return sum(c.mult for c in clusters if abs(c.value - value) <= tol)


def match(computed: Sequence[EigenCluster], predicted: Sequence[EigenCluster]) -> Tuple[bool, float]:
    """ Greedy nearest pairing of predicted clusters to computed ones.

    Returns (same multiplicities everywhere, max pairing distance). A cluster
    left without a partner makes the pairing error infinite.
    """
    unpaired = list(range(len(computed)))
    same = len(computed) == len(predicted)
    worst = 0.0
    for p in predicted:
        if not unpaired:
            return False, float("inf")
        distances = [abs(computed[i].value - p.value) for i in unpaired]
        k = int(np.argmin(distances))
        c = computed[unpaired.pop(k)]
        worst = max(worst, distances[k])
        if c.mult != p.mult:
            same = False
    if unpaired:
        return False, float("inf")
    return same, worst
