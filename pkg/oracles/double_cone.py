from typing import List, Optional, Tuple

import numpy as np

from graph_core.generators import gen_double_cone
from graph_core.graph import adjacency_and_degree
from operators.builders import build_boundary, build_moving_shift
from triangulation.search import canonical_double_cone_partition
from util.errors import NumericalError, OracleError
from util.types import ErrorCode
from walk_sim.walk import WalkState

OMEGA = np.exp(2j * np.pi / 3)
CONDITION_TOL = 1e-10


def _check_n(n: int):
    if not isinstance(n, (int, np.integer)) or n < 3:
        raise OracleError(f"double cone needs an integer n >= 3 (got {n!r})")


class DoubleConeSpec:
    """ Block data of Gamma_n in the vertex order u+, u-, x_0..x_{n-1} """

    def __init__(self, n: int):
        _check_n(n)
        self.n = n
        self.zeta = np.exp(2j * np.pi / n)
        self.Qprime = np.array([[0.0, 1.0], [0.5, 0.5]])
        Jtilde = np.zeros((n + 2, 2))
        Jtilde[:2, 0] = 1.0
        Jtilde[2:, 1] = 1.0
        self.Jtilde = Jtilde
        self.graph = gen_double_cone(n)
        A, D = adjacency_and_degree(self.graph)
        self.A = A.astype(np.float64)
        self.degrees = np.diag(D).astype(np.float64)
        self.Tprime = self.A / self.degrees[:, np.newaxis]

    def intertwining_error(self) -> float:
        """ max |T' J~ - J~ Q'| """
        return float(np.max(np.abs(self.Tprime @ self.Jtilde - self.Jtilde @ self.Qprime)))

    def similarity_error(self, T: np.ndarray) -> float:
        """ max |D^{1/2} T' D^{-1/2} - T| """
        s = np.sqrt(self.degrees)
        return float(np.max(np.abs(s[:, np.newaxis] * self.Tprime / s[np.newaxis, :] - T)))

    def __str__(self):
        return f"DoubleConeSpec(n={self.n})"


def b_of_double_cone(n: int) -> int:
    """ dim ker(T + 1/2) of Gamma_n """
    _check_n(n)
    return 2 if n % 2 == 0 else 1


def double_cone_T_spectrum(n: int) -> np.ndarray:
    """ {0} u {cos(2 pi j / n) / 2 : j = 1..n-1} u {1, -1/2}, ascending """
    _check_n(n)
    j = np.arange(1, n)
    values = np.concatenate([[0.0], 0.5 * np.cos(2 * np.pi * j / n), [1.0, -0.5]])
    return np.sort(values)


def double_cone_T_eigenvectors(n: int) -> List[Tuple[float, np.ndarray]]:
    """ n + 2 independent eigenvectors of T' = D^{-1} A with their eigenvalues """
    spec = DoubleConeSpec(n)
    pairs: List[Tuple[float, np.ndarray]] = []
    v = np.zeros(n + 2, dtype=np.complex128)
    v[0], v[1] = 1.0, -1.0
    pairs.append((0.0, v))
    for j in range(1, n):
        vj = np.zeros(n + 2, dtype=np.complex128)
        vj[2:] = spec.zeta ** (j * np.arange(n))
        pairs.append((0.5 * np.cos(2 * np.pi * j / n), vj))
    for lam, q in ((1.0, np.array([1.0, 1.0])), (-0.5, np.array([-2.0, 1.0]))):
        pairs.append((lam, (spec.Jtilde @ q).astype(np.complex128)))
    return pairs


class BirthVectorRecipe:
    """ Cycle-arc values a_j = Psi(x_j, x_{j+1}), b_j = Psi(x_{j+1}, x_j) of a birth vector at -omega^k """

    def __init__(self, n: int, k: int, l: Optional[int], a: np.ndarray, b: np.ndarray, even_extra: bool = False):
        self.n = n
        self.k = k
        self.l = l
        self.a = np.asarray(a, dtype=np.complex128)
        self.b = np.asarray(b, dtype=np.complex128)
        self.even_extra = even_extra

    def __str__(self):
        tag = "even-extra" if self.even_extra else f"l={self.l}"
        return f"BirthVectorRecipe(n={self.n}, k={self.k}, {tag})"


def table_row(n: int, row: int, l: int) -> Tuple[np.ndarray, np.ndarray]:
    """ (a_j, b_j) of the closed-form birth vector table, row in {0, 1, 2}, l in 1..n-1 """
    _check_n(n)
    if row not in (0, 1, 2) or not (1 <= l <= n - 1):
        raise OracleError(f"need row in {{0,1,2}} and 1 <= l <= {n - 1} (got row={row}, l={l})")
    zeta = np.exp(2j * np.pi / n)
    j = np.arange(n)
    w, w2 = OMEGA, OMEGA ** 2
    if row == 0:
        base = zeta ** (l * j)
        return base, -base
    if row == 1:
        z = zeta ** l
        base = zeta ** (l * j)
        return -(w2 + z) * base, (1 + w2 * z) * base
    z = zeta ** (-l)
    base = zeta ** (-l * j)
    return -(w + z) * base, (1 + w * z) * base


def conditions_residual(a: np.ndarray, b: np.ndarray, c: complex) -> float:
    """ max of |a_j + c a_{j+1} + c b_j + b_{j+1}|, |sum a|, |sum b| """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    local = a + c * np.roll(a, -1) + c * b + np.roll(b, -1)
    return float(max(np.max(np.abs(local), initial=0.0), abs(a.sum()), abs(b.sum())))


def check_birth_conditions(n: int, k: int, a, b, tol: float = CONDITION_TOL) -> bool:
    """ a_j + w^{2k} a_{j+1} + w^{2k} b_j + b_{j+1} = 0 for all j, and sum a = sum b = 0 """
    if len(a) != n or len(b) != n:
        raise OracleError(f"need |a| = |b| = n = {n} (got {len(a)}, {len(b)})")
    if k not in (0, 1, 2):
        raise OracleError(f"k must be 0, 1 or 2 (got {k})")
    return conditions_residual(a, b, OMEGA ** (2 * k)) <= tol


def table_row_for(k: int) -> int:
    """ Table row whose vectors land in ker(S_c - w^k).

    Row r satisfies the w^{2r} condition, while completing a vector of
    ker(S_c - w^k) with S_c e_b = e_{tau(b)} produces the w^k condition at
    each cycle vertex; so r = 2k mod 3.
    """
    return (2 * k) % 3


def birth_recipe(n: int, k: int, l: Optional[int] = None, even_extra: bool = False) -> BirthVectorRecipe:
    _check_n(n)
    if k not in (0, 1, 2):
        raise OracleError(f"k must be 0, 1 or 2 (got {k})")
    if even_extra:
        if n % 2 != 0 or k != 0:
            raise OracleError(f"the alternating vector exists only for even n and k = 0 (got n={n}, k={k})")
        alt = (-1.0) ** np.arange(n)
        return BirthVectorRecipe(n, k, None, alt, alt, even_extra=True)
    if l is None or not (1 <= l <= n - 1):
        raise OracleError(f"l must be in 1..{n - 1} (got {l})")
    row = table_row_for(k)
    a, b = table_row(n, row, l)
    if not check_birth_conditions(n, row, a, b):
        raise NumericalError(ErrorCode.NOT_EIGENVECTOR, f"table row {row} fails its cycle conditions for n={n}, l={l}")
    return BirthVectorRecipe(n, k, l, a, b)


def complete_birth_vector(recipe: BirthVectorRecipe) -> WalkState:
    """ Fill the cone arcs from the cycle arcs by walking each triangle with Psi_{tau^-1(a)} = w^k Psi_a """
    n, k = recipe.n, recipe.k
    pi = canonical_double_cone_partition(n)
    arcset = pi.arcset
    psi = np.zeros(len(arcset), dtype=np.complex128)
    known = np.zeros(len(arcset), dtype=bool)

    def x(i):
        return 2 + (i % n)

    for j in range(n):
        for arc, value in (((x(j), x(j + 1)), recipe.a[j]), ((x(j + 1), x(j)), recipe.b[j])):
            i = arcset.index(arc)
            psi[i] = value
            known[i] = True

    tau_inv = pi.tau_inverse
    phase = OMEGA ** k
    for C in pi.triangles:
        idx = [arcset.index(a) for a in C.arcs]
        seeds = [i for i in idx if known[i]]
        if len(seeds) != 1:
            raise NumericalError(ErrorCode.NOT_EIGENVECTOR, f"triangle {C} has {len(seeds)} cycle arcs, expected 1")
        i = seeds[0]
        for _ in range(2):
            prev = int(tau_inv[i])
            psi[prev] = phase * psi[i]
            known[prev] = True
            i = prev
    return WalkState(arcset, psi, normalize=False)


def double_cone_birth_vectors(n: int, k: int, l: Optional[int] = None, even_extra: bool = False,
                              tol: float = CONDITION_TOL) -> WalkState:
    """ Closed-form element of ker d n ker(S_c - w^k) on Gamma_n, an eigenvector of U_c at -w^k """
    state = complete_birth_vector(birth_recipe(n, k, l, even_extra))
    pi = canonical_double_cone_partition(n)
    d = build_boundary(pi.graph, pi.arcset)
    S_c = build_moving_shift(pi)
    psi = state.amplitudes
    scale = max(np.linalg.norm(psi), 1.0)
    boundary = float(np.max(np.abs(d @ psi)))
    shift = float(np.max(np.abs(S_c @ psi - OMEGA ** k * psi)))
    if boundary > tol * scale or shift > tol * scale:
        raise NumericalError(ErrorCode.NOT_EIGENVECTOR,
                             f"birth vector n={n}, k={k}, l={l}: |d Psi| = {boundary:.3e}, |S_c Psi - w^k Psi| = {shift:.3e}")
    return state


def double_cone_birth_space(n: int, k: int) -> np.ndarray:
    """ All closed-form birth vectors at -w^k as columns: n - 1 of them, plus one for k = 0 and even n """
    columns = [double_cone_birth_vectors(n, k, l).amplitudes for l in range(1, n)]
    if k == 0 and n % 2 == 0:
        columns.append(double_cone_birth_vectors(n, k, even_extra=True).amplitudes)
    return np.column_stack(columns)
