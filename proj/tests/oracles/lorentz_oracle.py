"""Reference values for the Lorentz module, computed with numpy/scipy.

Prints the numbers frozen into test_lorentz.cpp. Independent of the C++ code:
dense scipy routines, mpmath for the exponential remainders, brentq for the
roots, bounded scalar minimization for the dual multiplier.
"""
import math

import mpmath
import numpy as np
import scipy.linalg as sl
import scipy.optimize as so


def ops(M):
    n = 2 * M + 1
    R = np.eye(n)
    R[M, M] = 0
    T = np.zeros((n, n))
    for i in range(n - 1):
        T[i, i + 1] = T[i + 1, i] = 1
    return R, -0.5j * T


def section(M, f):
    R, J = ops(M + 1)
    return f(R, J)[1:-1, 1:-1]


def kappa(M):
    return np.linalg.eigvalsh(section(M, lambda R, J: R + J @ R @ J.conj().T))[0]


lam0 = 0.5 - 1 / (6 * 2**0.5) - (1 / 3) * (7 / 16 + 1 / 8**0.5) ** 0.5


def lyap(n, alpha, M):
    R, J = ops(M)
    C = R - n * J
    Y = np.eye(2 * M + 1, dtype=complex)
    Y[M, M + 1] = -1j * alpha / n
    Y[M + 1, M] = 1j * alpha / n
    L = C.conj().T @ Y + Y @ C
    return L, Y


def margin(n, alpha, M):
    L, Y = lyap(n, alpha, M)
    return np.linalg.eigvalsh(L - 2 * lam0 * Y)[0]


mpmath.mp.dps = 50


def _d3(t):
    return (mpmath.expm1(4 * t) - 4 * t - 8 * t * t - mpmath.mpf(32) / 3 * t**3) / (2 * t**3)


def constants(M):
    k1 = kappa(M)
    k3 = np.linalg.eigvalsh(section(M, lambda R, J: R + (R - J).conj().T @ R @ (R - J)))[0]
    d = min(k1 / 5, k3 / 2)
    # the cubic remainder cancels badly in double precision near t ~ 1e-3
    d1 = lambda t: float((mpmath.expm1(4 * mpmath.mpf(t)) - 4 * mpmath.mpf(t)) / (2 * mpmath.mpf(t)))
    d3 = lambda t: float(_d3(mpmath.mpf(t)))
    t1 = so.brentq(lambda t: d1(t) - d, 1e-8, 10, xtol=1e-16, rtol=1e-15)
    t3 = so.brentq(lambda t: d3(t) - d / 12, 1e-3, 10, xtol=1e-16, rtol=1e-15)
    A = section(M, lambda R, J: J.conj().T @ R @ J)
    B = section(M, lambda R, J: R)
    f = lambda mu: -(np.linalg.eigvalsh(A + mu * B)[0] - mu * d)
    res = so.minimize_scalar(f, bounds=(0, 64), method="bounded", options={"xatol": 1e-10})
    inf2 = -res.fun
    t2 = math.sqrt(12 * d) / (math.sqrt(inf2) + math.sqrt(d))
    tau = min(t1, t2, t3, 1)
    c1 = d / 12
    c2 = c1 / (1 + 1 / (lam0 * tau)) ** 3
    tn = lambda n: tau / n + math.log(1 + 1 / (n - 0.5)) / (2 * lam0)
    r = so.brentq(lambda n: tn(n) - tau, 1, 1e9, xtol=1e-12, rtol=1e-15)
    lhs = (1 - d * tau**3 / (12 * r)) * math.sqrt(1 + 1 / (r - 0.5)) * math.exp(-lam0 * (r - 1) / r * tau)
    c3 = (1 - lhs) / tau**3
    return dict(kappa1=k1, kappa3=k3, delta=d, tau1=t1, tau2=t2, tau3=t3, tau=tau,
                c1=c1, c2=c2, c3=c3, c=min(c2, c3), r=r, inf_RJ=inf2, inf_mu=res.x)


if __name__ == "__main__":
    print("lambda0 %.17g" % lam0)
    for M in (1, 25, 50, 100, 200):
        print("kappa M=%d %.17g" % (M, kappa(M)))
    for n in (1, 5):
        print("margin n=%d M=64 %.17g" % (n, margin(n, 0.5, 64)))
    L, _ = lyap(1, 0.5, 64)
    print("Z1 min eig %.17g  3*lambda0 %.17g" % (np.linalg.eigvalsh(L[63:67, 63:67])[0], 3 * lam0))
    for k, v in constants(128).items():
        print("%s %.17g" % (k, v))
    R, J = ops(64)
    for n in (1, 2, 5):
        C = R - n * J
        print("modal norm n=%d t=5 %.17g" % (n, np.linalg.norm(sl.expm(-5 * C), 2)))
