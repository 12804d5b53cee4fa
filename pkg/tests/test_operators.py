import numpy as np
import pytest
from numpy.testing import assert_allclose

from operators.builders import (build_boundary, build_evolutions, build_flipflop, build_grover, build_T,
                                permutation_matrix)
from operators.dump import LIFTED_NAMES, OPERATOR_NAMES, dump_matrix, named_matrix
from operators.operator_set import (B_inverse, LiftedSystem, OperatorSet, build_lifted, build_operator_set,
                                    operator_identities, tilde_T_inverse)
from triangulation.search import canonical_double_cone_partition
from util.errors import TriwalkError
from util.types import OutputFormat

EXACT = ("S^2=I", "S_c^3=I", "S_c!=I", "RR^T=2A+D")


def test_permutation_matrix_convention():
    P = permutation_matrix(np.array([1, 2, 0]))
    e0 = np.array([1.0, 0.0, 0.0])
    assert_allclose(P @ e0, [0.0, 1.0, 0.0])


def test_boundary_rows_are_orthonormal(k4):
    d = build_boundary(k4)
    assert d.shape == (4, 12)
    assert_allclose(d @ d.T, np.eye(4), atol=1e-15)
    assert_allclose(d[0][d[0] > 0], np.full(3, 1 / np.sqrt(3)))


def test_k4_operators(k4_ops):
    assert k4_ops.U_c.shape == (12, 12)
    assert not k4_ops.U_c.flags.writeable
    assert_allclose(k4_ops.T, (np.ones((4, 4)) - np.eye(4)) / 3, atol=1e-15)
    assert_allclose(k4_ops.U, build_grover(k4_ops.graph), atol=1e-15)
    # S_c moves each arc to the next arc of its triangle
    tau = k4_ops.partition.tau
    for b in range(12):
        assert k4_ops.S_c[tau[b], b] == 1.0


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_identities_on_double_cones(n):
    pi = canonical_double_cone_partition(n)
    errors = operator_identities(OperatorSet(pi.graph, pi))
    for name in EXACT:
        assert errors[name] == 0.0, name
    for name, err in errors.items():
        assert err <= 1e-12, name


def test_identities_on_k4(k4_ops):
    errors = operator_identities(k4_ops)
    assert max(errors.values()) <= 1e-12
    assert len(errors) == 17


def test_T_equals_T1_and_T2(gamma3_ops):
    assert_allclose(gamma3_ops.T1, gamma3_ops.T, atol=1e-12)
    assert_allclose(gamma3_ops.T2, gamma3_ops.T, atol=1e-12)
    assert_allclose(build_T(gamma3_ops.graph), gamma3_ops.T)


def test_lifted_shapes_and_inverses(gamma4_ops):
    lifted = LiftedSystem(gamma4_ops)
    n, m = gamma4_ops.n_vertices, gamma4_ops.n_arcs
    assert lifted.L.shape == (m, 3 * n)
    assert_allclose(lifted.Ttilde @ tilde_T_inverse(gamma4_ops.T), np.eye(3 * n), atol=1e-12)
    assert_allclose(lifted.Bmat @ B_inverse(gamma4_ops.T), np.eye(3 * n), atol=1e-12)
    assert lifted.intertwining_error() <= 1e-12
    assert lifted.B_identity_error() <= 1e-12


def test_dump(k4_ops):
    csv = dump_matrix(k4_ops, "S_c", OutputFormat.CSV)
    lines = csv.splitlines()
    assert len(lines) == 13
    assert lines[0].startswith("c0,c1")
    payload = dump_matrix(k4_ops, "T", OutputFormat.JSON)
    assert payload["name"] == "T" and payload["rows"] == 4
    for name in OPERATOR_NAMES + LIFTED_NAMES:
        assert named_matrix(k4_ops, name).ndim == 2
    with pytest.raises(TriwalkError):
        named_matrix(k4_ops, "X")


def test_builders_agree_with_operator_set():
    pi = canonical_double_cone_partition(3)
    ops = build_operator_set(pi.graph, pi)
    U, U_c = build_evolutions(pi.graph, pi)
    assert_allclose(U, ops.U)
    assert_allclose(U_c, ops.U_c)
    S = build_flipflop(ops.arcset)
    assert_allclose(S @ S, np.eye(ops.n_arcs))
    assert np.trace(S) == 0.0
    lifted = build_lifted(pi.graph, pi)
    assert_allclose(lifted.L, LiftedSystem(ops).L)
    assert build_lifted(pi.graph, pi, ops).ops is ops
