"""Python access to the hypokit core.

Matrices are numpy arrays (complex or real); structured reports come back as
plain dicts.
"""
import json

import numpy as np

from . import _hypokit
from ._hypokit import (
    ContractError,
    DimensionError,
    HypokitError,
    InvalidEntryError,
    NoDecayError,
    NotPsdError,
    NumericalError,
    ParameterError,
    PreconditionError,
    RangeError,
    ck_closed_form_norm,
    example,
    hermitian_split,
    kalman_kernel_defect,
    matrix_exponential,
    min_eig_hermitian,
    norm_defect,
    short_time_constant,
    spectral_norm,
)

METHODS = ("c_powers_right", "c_powers_left", "j_powers", "commutators")


def _c(a):
    return np.asarray(a, dtype=complex)


def index_via_powers(C, method="c_powers_right", kappa_threshold=-1.0, m_max=-1):
    return json.loads(_hypokit.index_via_powers_json(_c(C), method, kappa_threshold, m_max))


def equivalence_audit(C, kappa_threshold=-1.0, m_max=-1, rank_tol=1e-10):
    return json.loads(_hypokit.equivalence_audit_json(_c(C), kappa_threshold, m_max, rank_tol))


def staircase(R, J, rank_tol=1e-10):
    out = json.loads(_hypokit.staircase_json(_c(R), _c(J), rank_tol))
    for key in ("Q", "J_hat", "R_hat"):
        out[key] = _matrix(out[key])
    return out


def propagator_norms(C, times):
    return np.asarray(_hypokit.propagator_norms(_c(C), list(map(float, times))))


def fit_short_time(C):
    return json.loads(_hypokit.fit_short_time_json(_c(C)))


def stability_check(C, t0):
    return json.loads(_hypokit.stability_json(_c(C), float(t0)))


def _matrix(j):
    vals = [complex(*e) if isinstance(e, list) else complex(e) for e in j["entries"]]
    return np.array(vals, dtype=complex).reshape(j["n_rows"], j["n_cols"])


class lorentz:
    """Lorentz kinetic model on the 2-torus."""

    lambda0 = staticmethod(_hypokit.lorentz.lambda0)
    kappa_truncated = staticmethod(_hypokit.lorentz.kappa_truncated)
    lyapunov_margin = staticmethod(_hypokit.lorentz.lyapunov_margin)
    modal_generator = staticmethod(_hypokit.lorentz.modal_generator)

    @staticmethod
    def appendix_constants(M=128):
        return json.loads(_hypokit.lorentz.appendix_constants_json(M))

    @staticmethod
    def simulate_distances(N, M, seed, times):
        return np.asarray(_hypokit.lorentz.simulate_distances(N, M, seed, list(map(float, times))))
