import json

import numpy as np
import pytest

from semigroup_lab.errors import BranchCutError, ShapeError, SingularError
from semigroup_lab.operators import (
    as_operator,
    branch_distance,
    mat_exp,
    mat_inv,
    mat_log_principal,
    op_norm,
    operator_from_json,
    operator_to_json,
    spectrum_of,
)


def test_as_operator_rejects_non_square():
    with pytest.raises(ShapeError):
        as_operator(np.ones((2, 3)))
    with pytest.raises(ShapeError):
        as_operator(np.array([1.0, 2.0]))


def test_as_operator_rejects_non_finite():
    m = np.eye(2)
    m[0, 0] = np.inf
    with pytest.raises(ShapeError):
        as_operator(m)


def test_exp_log_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(10):
        m = rng.standard_normal((4, 4)) * 0.4
        back = mat_log_principal(mat_exp(m))
        assert op_norm(back - m) < 1e-10


def test_exp_of_zero_is_identity_exact():
    z = np.zeros((3, 3), dtype=complex)
    assert np.array_equal(mat_exp(z), np.eye(3, dtype=complex))


def test_log_branch_cut_raises():
    # spectrum on the closed negative real axis
    with pytest.raises(BranchCutError):
        mat_log_principal(np.diag([-1.0, 2.0]).astype(complex))
    with pytest.raises(BranchCutError):
        mat_log_principal(np.zeros((2, 2), dtype=complex))


def test_branch_distance_values():
    assert branch_distance(np.array([1.0 + 0j])) == pytest.approx(1.0)
    assert branch_distance(np.array([-2.0 + 0.5j])) == pytest.approx(0.5)
    assert branch_distance(np.array([0.0 + 0j])) == pytest.approx(0.0)


def test_inverse_and_singular():
    m = np.array([[2.0, 1.0], [0.0, 3.0]], dtype=complex)
    assert op_norm(mat_inv(m) @ m - np.eye(2)) < 1e-14
    with pytest.raises(SingularError):
        mat_inv(np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex))


def test_log_defective_matrix_fallback():
    # Jordan block: eigendecomposition is ill-conditioned, the scipy
    # fallback path still has to produce a valid principal logarithm.
    m = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
    lg = mat_log_principal(m)
    assert op_norm(mat_exp(lg) - m) < 1e-10


def test_spectrum_of_reports_conditioning():
    s = spectrum_of(np.diag([1.0, 2.0]).astype(complex))
    assert sorted(s.eigenvalues.real) == pytest.approx([1.0, 2.0])
    assert s.conditioning < 10.0


def test_json_round_trip():
    rng = np.random.default_rng(1)
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    text = operator_to_json(m)
    parsed = json.loads(text)
    assert parsed["dim"] == 3
    back = operator_from_json(text)
    assert np.array_equal(back, m)
