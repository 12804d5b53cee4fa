import numpy as np
import pytest
from numpy.testing import assert_allclose

from operators.builders import build_moving_shift, build_T
from oracles.brute_force import brute_force_spectrum, check_dimension
from oracles.double_cone import (OMEGA, DoubleConeSpec, b_of_double_cone, birth_recipe, check_birth_conditions,
                                 double_cone_birth_space, double_cone_birth_vectors, double_cone_T_eigenvectors,
                                 double_cone_T_spectrum, table_row, table_row_for)
from operators.operator_set import LiftedSystem, OperatorSet
from spectral.eigenspaces import EigenSpace, birth_basis, orthogonality_to_inherited
from spectral.linalg import eig_symmetric, same_span
from spectral.mapping import verify_mapping
from spectral.multiset import cluster, match
from triangulation.search import canonical_double_cone_partition
from util.errors import NumericalError, OracleError
from util.types import EigenKind, ErrorCode


def test_T_spectrum_n3():
    assert_allclose(double_cone_T_spectrum(3), [-0.5, -0.25, -0.25, 0.0, 1.0], atol=1e-15)


def test_T_spectrum_n4_has_double_minus_half():
    values = double_cone_T_spectrum(4)
    assert np.count_nonzero(np.abs(values + 0.5) < 1e-12) == 2
    assert np.count_nonzero(np.abs(values - 1.0) < 1e-12) == 1
    assert len(values) == 6


@pytest.mark.parametrize("n", range(3, 13))
def test_closed_form_matches_T(n):
    pi = canonical_double_cone_partition(n)
    computed, _ = eig_symmetric(build_T(pi.graph))
    assert_allclose(np.sort(double_cone_T_spectrum(n)), computed, atol=1e-10)
    expected_b = 1 if n % 2 else 2
    assert b_of_double_cone(n) == expected_b
    assert np.count_nonzero(np.abs(computed + 0.5) <= 1e-9) == expected_b


@pytest.mark.parametrize("n", [3, 4, 7])
def test_T_eigenvectors(n):
    spec = DoubleConeSpec(n)
    pairs = double_cone_T_eigenvectors(n)
    assert len(pairs) == n + 2
    for lam, v in pairs:
        assert_allclose(spec.Tprime @ v, lam * v, atol=1e-12)
    V = np.column_stack([v for _, v in pairs])
    assert abs(np.linalg.det(V.conj().T @ V)) > 1e-8
    assert spec.intertwining_error() <= 1e-15
    assert spec.similarity_error(build_T(spec.graph)) <= 1e-12


def test_oracle_rejects_small_n():
    with pytest.raises(OracleError):
        double_cone_T_spectrum(2)
    with pytest.raises(OracleError):
        DoubleConeSpec(1)


def test_check_birth_conditions():
    a, b = table_row(3, 0, 1)
    assert check_birth_conditions(3, 0, a, b)
    assert not check_birth_conditions(3, 0, np.ones(3), np.ones(3))
    assert check_birth_conditions(3, 1, np.zeros(3), np.zeros(3))
    with pytest.raises(OracleError):
        check_birth_conditions(3, 0, [1, 2], [1, 2, 3])


@pytest.mark.parametrize("row", [0, 1, 2])
@pytest.mark.parametrize("n", [3, 5, 6])
def test_table_rows_satisfy_their_conditions(n, row):
    for l in range(1, n):
        a, b = table_row(n, row, l)
        assert check_birth_conditions(n, row, a, b, tol=1e-12)


def test_table_row_for():
    assert [table_row_for(k) for k in range(3)] == [0, 2, 1]


@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_birth_vectors_are_eigenvectors(n, k):
    pi = canonical_double_cone_partition(n)
    ops = OperatorSet(pi.graph, pi)
    space = double_cone_birth_space(n, k)
    target = -OMEGA ** k
    eig = EigenSpace(target, space, EigenKind.BIRTH)
    assert eig.residual(ops.U_c) <= 1e-9
    assert_allclose(ops.d @ space, 0.0, atol=1e-10)
    assert_allclose(build_moving_shift(pi) @ space, OMEGA ** k * space, atol=1e-10)
    # pairwise orthogonal
    G = space.conj().T @ space
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) <= 1e-10 * np.max(np.abs(np.diag(G)))
    # same count and span as the computed birth eigenspace
    direct = birth_basis(ops, k)
    expected = n - 1 + (1 if (k == 0 and n % 2 == 0) else 0)
    assert space.shape[1] == direct.dim == expected
    assert same_span(space, direct.basis)
    assert orthogonality_to_inherited(eig, LiftedSystem(ops)) <= 1e-9


def test_even_extra_vector():
    state = double_cone_birth_vectors(4, 0, even_extra=True)
    arcset = state.arcset
    assert state.amplitude((2, 3)) == pytest.approx(1.0)
    assert state.amplitude((3, 4)) == pytest.approx(-1.0)
    assert state.amplitude((3, 2)) == pytest.approx(1.0)
    assert len(arcset) == 24
    with pytest.raises(OracleError):
        birth_recipe(5, 0, even_extra=True)
    with pytest.raises(OracleError):
        birth_recipe(4, 1, even_extra=True)


@pytest.mark.parametrize("n, k, l", [(3, 3, 1), (3, 0, 0), (3, 0, 3), (2, 0, 1), (4, 1, None)])
def test_birth_recipe_rejects(n, k, l):
    with pytest.raises(OracleError) as err:
        birth_recipe(n, k, l)
    assert err.value.code == ErrorCode.BAD_PARAMETERS


def test_brute_force_k4(k4, k4_partition):
    values, vectors = brute_force_spectrum(k4, k4_partition)
    assert values.shape == (12,)
    assert_allclose(np.abs(values), 1.0, atol=1e-12)
    report = verify_mapping(k4, k4_partition)
    same, err = match(cluster(values, 1e-6), report.computed)
    assert same and err <= 1e-6


def test_brute_force_gamma3():
    pi = canonical_double_cone_partition(3)
    values, _ = brute_force_spectrum(pi.graph, pi)
    assert values.shape == (18,)


def test_moving_shift_has_cube_root_spectrum(k4_partition):
    values = np.linalg.eigvals(build_moving_shift(k4_partition))
    clusters = cluster(values, 1e-8)
    assert len(clusters) == 3
    assert all(c.mult == 4 for c in clusters)
    assert_allclose(sorted(np.abs(np.array([c.value for c in clusters]) ** 3 - 1)), 0.0, atol=1e-12)


def test_dimension_cap(monkeypatch, k4, k4_partition):
    with pytest.raises(NumericalError) as err:
        brute_force_spectrum(k4, k4_partition, max_dim=10)
    assert err.value.code == ErrorCode.DIMENSION_CAP
    monkeypatch.setenv("TRIWALK_MAX_DIM", "5")
    with pytest.raises(NumericalError):
        check_dimension(12)
    check_dimension(12, max_dim=12)
