import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from spinmoments.spin_algebra import (
    BoundSource,
    SpinQuantum,
    _CJ_TABLE,
    _local_min,
    _variance_sum_objective,
    build_spin_matrices,
    cj_bound,
    compute_cj,
)


def test_spin_quantum_basics():
    j = SpinQuantum(3)
    assert j.dim == 4
    assert j.j == 1.5
    assert j.label() == "3/2"
    assert SpinQuantum(4).label() == "2"
    assert np.array_equal(j.m_values(), [-1.5, -0.5, 0.5, 1.5])


def test_spin_quantum_rejects_trivial_and_float():
    with pytest.raises(ValueError):
        SpinQuantum(0)
    with pytest.raises(ValueError):
        SpinQuantum(-2)
    with pytest.raises(TypeError):
        SpinQuantum(1.5)


def test_spin_half_is_half_pauli():
    # Pauli matrices written in this package's basis order m = -1/2, +1/2
    # (the usual convention lists spin-up first, which permutes sy and sz)
    m = build_spin_matrices(SpinQuantum(1))
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, 1j], [-1j, 0]], dtype=complex)
    sz = np.array([[-1, 0], [0, 1]], dtype=complex)
    assert np.allclose(m.jx, sx / 2)
    assert np.allclose(m.jy, sy / 2)
    assert np.allclose(m.jz, sz / 2)


def test_spin_one_ladder_elements():
    m = build_spin_matrices(SpinQuantum(2))
    assert np.allclose(np.diag(m.jz), [-1, 0, 1])
    # <0|J-|+1> = sqrt(2): row m=0 (index 1), column m=+1 (index 2)
    assert m.jminus[1, 2] == pytest.approx(math.sqrt(2), abs=1e-15)
    assert np.allclose(m.jplus, m.jminus.conj().T)


@pytest.mark.parametrize("twice_j", [1, 2, 3, 4, 5, 8, 13, 27, 40])
def test_commutators_and_casimir(twice_j):
    j = SpinQuantum(twice_j)
    m = build_spin_matrices(j)

    def comm(a, b):
        return a @ b - b @ a

    assert np.max(np.abs(comm(m.jx, m.jy) - 1j * m.jz)) < 1e-12
    assert np.max(np.abs(comm(m.jy, m.jz) - 1j * m.jx)) < 1e-12
    assert np.max(np.abs(comm(m.jz, m.jx) - 1j * m.jy)) < 1e-12
    casimir = m.jx @ m.jx + m.jy @ m.jy + m.jz @ m.jz
    assert np.max(np.abs(casimir - j.j * (j.j + 1) * np.eye(j.dim))) < 1e-12


@pytest.mark.parametrize("twice_j", range(1, 21))
def test_jx_spectrum_matches_jz(twice_j):
    # dense eigensolve as the independent check on the representation
    j = SpinQuantum(twice_j)
    m = build_spin_matrices(j)
    eigs = np.sort(np.linalg.eigvalsh(m.jx))
    assert np.allclose(eigs, j.m_values(), atol=1e-12)


def test_cj_table_values():
    assert cj_bound(SpinQuantum(1)).c_j == 0.25
    assert cj_bound(SpinQuantum(2)).c_j == 0.4375
    assert cj_bound(SpinQuantum(3)).c_j == pytest.approx(0.6009, abs=1e-12)
    assert cj_bound(SpinQuantum(8)).c_j == pytest.approx(1.26, abs=1e-12)
    assert cj_bound(SpinQuantum(4)).source is BoundSource.TABULATED
    assert all(cj_bound(SpinQuantum(tj)).c_j > 0 for tj in range(1, 9))


def _cj_eigenvalue_route(twice_j: int) -> float:
    # C_J = min_a lambda_min((Jx - a)^2 + Jy^2): completing the square makes
    # the shifted expectation an upper envelope of the variance sum, and the
    # z-rotation symmetry removes the Jy shift.  Independent of the simplex
    # minimiser in every respect.
    m = build_spin_matrices(SpinQuantum(twice_j))
    eye = np.eye(twice_j + 1)

    def lowest(a):
        op = (m.jx - a * eye) @ (m.jx - a * eye) + m.jy @ m.jy
        return float(np.linalg.eigvalsh(op)[0])

    res = minimize_scalar(lowest, bounds=(0.0, twice_j / 2 + 1), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.fun)


def test_compute_cj_matches_table_spot():
    assert compute_cj(SpinQuantum(2), restarts=12).c_j == pytest.approx(7 / 16, abs=1e-3)
    assert compute_cj(SpinQuantum(4), restarts=12).c_j == pytest.approx(0.7496, abs=1e-3)


def test_compute_cj_matches_eigenvalue_route_beyond_table():
    got = compute_cj(SpinQuantum(9), restarts=12)
    assert got.source is BoundSource.COMPUTED
    assert got.c_j == pytest.approx(_cj_eigenvalue_route(9), abs=1e-6)


def test_computed_cj_grows_past_table_end():
    # J=5 must exceed C_4 = 1.26 (the table trend continues)
    got = compute_cj(SpinQuantum(10), restarts=8)
    assert got.c_j > 1.26


def test_cj_bound_beyond_table_flagged_computed():
    assert cj_bound(SpinQuantum(9)).source is BoundSource.COMPUTED


def test_objective_is_global_phase_invariant():
    j = SpinQuantum(4)
    objective = _variance_sum_objective(build_spin_matrices(j))
    rng = np.random.default_rng(11)
    for _ in range(20):
        x = rng.uniform(-1, 1, size=2 * j.dim)
        psi = x[: j.dim] + 1j * x[j.dim:]
        for phase in (0.3, 1.7, 2.9):
            rot = psi * np.exp(1j * phase)
            y = np.concatenate([rot.real, rot.imag])
            assert objective(y) == pytest.approx(objective(x), rel=1e-12)


def test_phase_rotated_starts_converge_to_equal_minima():
    j = SpinQuantum(3)
    objective = _variance_sum_objective(build_spin_matrices(j))
    rng = np.random.default_rng(5)
    x0 = rng.uniform(-1, 1, size=2 * j.dim)
    psi = x0[: j.dim] + 1j * x0[j.dim:]
    rot = psi * np.exp(1j * 0.8)
    x1 = np.concatenate([rot.real, rot.imag])
    v0, _ = _local_min(objective, x0, 1e-9)
    v1, _ = _local_min(objective, x1, 1e-9)
    assert v0 == pytest.approx(v1, abs=1e-9)


def test_compute_cj_validates_arguments():
    with pytest.raises(ValueError):
        compute_cj(SpinQuantum(1), restarts=0)
    with pytest.raises(ValueError):
        compute_cj(SpinQuantum(1), tol=-1.0)


def test_non_convergence_error_carries_best_value(monkeypatch):
    from spinmoments import spin_algebra

    monkeypatch.setattr(spin_algebra, "_local_min", lambda obj, x0, tol: (0.5, False))
    with pytest.raises(spin_algebra.ConvergenceError) as err:
        compute_cj(SpinQuantum(2), restarts=3, seed=99)
    assert err.value.best_value == 0.5


def test_table_is_monotone_in_j():
    values = [_CJ_TABLE[tj] for tj in sorted(_CJ_TABLE)]
    assert values == sorted(values)
