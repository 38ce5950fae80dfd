import math

import numpy as np
import pytest

import hypokit as hk


def test_split_and_expm():
    C = hk.example("ck", k=2)
    R, J = hk.hermitian_split(C)
    assert np.allclose(R, np.diag([0, 1]))
    assert np.allclose(R - J, C)
    P = hk.matrix_exponential(-C, 1.0)
    assert abs(hk.spectral_norm(P) - hk.ck_closed_form_norm(2, 1.0)) < 1e-12


def test_index_and_audit():
    E4 = hk.example("ek", k=4)
    assert hk.index_via_powers(E4)["index"] == 3
    a = hk.equivalence_audit(hk.example("ck", k=2))
    assert a["agree"]
    assert set(a["index_per_method"].values()) == {1}
    assert a["obstruction"] is None
    skew = np.array([[0, 1], [-1, 0]])
    assert hk.equivalence_audit(skew)["obstruction"] is not None


def test_staircase():
    R = np.diag([1.0, 0, 0])
    J = np.array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], dtype=float)
    s = hk.staircase(R, J)
    assert s["block_dims"] == [1, 1, 1, 0]
    assert s["verification"]["ok"]
    Q = s["Q"]
    assert np.allclose(Q.conj().T @ J @ Q, s["J_hat"])


def test_decay():
    C = hk.example("ck", k=1)
    norms = hk.propagator_norms(C, np.linspace(0, 3, 31))
    assert norms[0] == 1.0
    assert np.all(np.diff(norms) <= 1e-12)
    fit = hk.fit_short_time(C)
    assert fit["a_rounded"] == 3
    assert abs(fit["c_est"] - 1 / 12) < 0.05 / 12
    assert hk.short_time_constant(C, 1) == pytest.approx(1 / 12, abs=1e-14)
    st = hk.stability_check(C, 5.0)
    assert st["stable"] and abs(st["spectral_gap"] - 0.5) < 1e-10


def test_lorentz():
    assert abs(hk.lorentz.kappa_truncated(50) - (3 - math.sqrt(5)) / 2) < 1e-12
    lam0 = hk.lorentz.lambda0()
    assert hk.lorentz.lyapunov_margin(1, 0.5, lam0, 32) > 0
    c = hk.lorentz.appendix_constants(32)
    assert c["delta"] == min(c["kappa1"] / 5, c["kappa3"] / 2)
    d = hk.lorentz.simulate_distances(3, 8, 1, [0.0, 5.0, 10.0])
    assert d[2] <= math.sqrt(3) * math.exp(-10 * lam0) * d[0]


def test_errors():
    with pytest.raises(hk.ParameterError):
        hk.example("ck", k=0)
    with pytest.raises(hk.PreconditionError):
        hk.index_via_powers(np.array([[-1.0]]))
    with pytest.raises(hk.HypokitError):
        hk.matrix_exponential(np.ones((2, 3)), 1.0)
