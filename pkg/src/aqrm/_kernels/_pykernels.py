"""Pure-Python kernels: closed-form energy pieces and a bounded simplex minimizer.

This is the fallback backend. It must stay in algorithmic lockstep with the
compiled backend in ``_cykernels.pyx``: same formulas, same simplex update
order, same termination rule.
"""

from __future__ import annotations

import math

BACKEND = "python"

# Trial-state norms at or below this are treated as a collapsed (zero) state.
NORM_FLOOR = 1e-12

_INF = math.inf


def normalization(alpha: float, theta: float, p: float) -> float:
    q = math.sqrt(max(0.0, 1.0 - p * p))
    return 1.0 - 2.0 * p * q * math.exp(-2.0 * alpha * alpha) * math.cos(theta)


def sigma_z(alpha: float, theta: float, p: float) -> float:
    # Regularized form: equals (N - sin^2 theta)/(N cos theta) wherever
    # cos theta != 0 and stays finite on the cos theta = 0 line.
    q = math.sqrt(max(0.0, 1.0 - p * p))
    w = math.exp(-2.0 * alpha * alpha)
    nrm = 1.0 - 2.0 * p * q * w * math.cos(theta)
    return (math.cos(theta) - 2.0 * p * q * w) / nrm


def photon_number(alpha: float, theta: float, p: float, gamma: float) -> float:
    nrm = normalization(alpha, theta, p)
    if gamma == 0.0:
        return alpha * alpha * (2.0 / nrm - 1.0)
    return (
        alpha * alpha * ((2.0 / nrm) * math.cosh(2.0 * gamma) - math.exp(2.0 * gamma))
        + math.sinh(gamma) ** 2
    )


def correlation(alpha: float, theta: float, p: float, gamma: float) -> float:
    nrm = normalization(alpha, theta, p)
    c = -2.0 * alpha * math.sin(theta) / nrm
    return c if gamma == 0.0 else c * math.exp(-gamma)


def sigma_x(alpha: float, theta: float, p: float) -> float:
    nrm = normalization(alpha, theta, p)
    return (1.0 - 2.0 * p * p) * math.sin(theta) / nrm


def energy(
    delta: float,
    omega: float,
    g: float,
    eps: float,
    alpha: float,
    theta: float,
    p: float,
    gamma: float,
) -> float:
    """Variational energy; +inf when the trial-state norm collapses."""
    q = math.sqrt(max(0.0, 1.0 - p * p))
    w = math.exp(-2.0 * alpha * alpha)
    ct = math.cos(theta)
    st = math.sin(theta)
    nrm = 1.0 - 2.0 * p * q * w * ct
    if nrm <= NORM_FLOOR:
        return _INF
    sz = (ct - 2.0 * p * q * w) / nrm
    if gamma == 0.0:
        nph = alpha * alpha * (2.0 / nrm - 1.0)
        corr = -2.0 * alpha * st / nrm
    else:
        nph = (
            alpha * alpha * ((2.0 / nrm) * math.cosh(2.0 * gamma) - math.exp(2.0 * gamma))
            + math.sinh(gamma) ** 2
        )
        corr = (-2.0 * alpha * st / nrm) * math.exp(-gamma)
    sx = (1.0 - 2.0 * p * p) * st / nrm
    return 0.5 * delta * sz + omega * nph + g * corr + 0.5 * eps * sx


def minimize_energy(
    delta: float,
    omega: float,
    g: float,
    eps: float,
    x0: tuple[float, float, float, float],
    lo: tuple[float, float, float, float],
    hi: tuple[float, float, float, float],
    mask: tuple[bool, bool, bool, bool],
    xatol: float,
    fatol: float,
    maxfev: int,
) -> tuple[tuple[float, float, float, float], float, int, bool]:
    """Bounded Nelder-Mead on the energy surface.

    ``x0``, ``lo``, ``hi`` are full (alpha, theta, p, gamma) vectors; ``mask``
    selects the coordinates allowed to vary. Candidate points are clipped into
    the box. Returns (x_opt, f_opt, nfev, converged).
    """
    free = [i for i in range(4) if mask[i]]
    n = len(free)
    if n == 0:
        f = energy(delta, omega, g, eps, x0[0], x0[1], x0[2], x0[3])
        return tuple(x0), f, 1, True

    base = list(x0)

    def clipped(y):
        return [min(hi[free[k]], max(lo[free[k]], y[k])) for k in range(n)]

    def feval(y):
        for k in range(n):
            base[free[k]] = y[k]
        return energy(delta, omega, g, eps, base[0], base[1], base[2], base[3])

    # Initial simplex: box-scaled steps off the start point, folded inward at bounds.
    y0 = clipped([x0[i] for i in free])
    sim = [y0]
    for k in range(n):
        step = 0.05 * (hi[free[k]] - lo[free[k]])
        y = list(y0)
        if y[k] + step <= hi[free[k]]:
            y[k] += step
        else:
            y[k] -= step
        sim.append(y)
    fsim = [feval(y) for y in sim]
    nfev = n + 1

    rho, chi, psi, sigma = 1.0, 2.0, 0.5, 0.5

    order = sorted(range(n + 1), key=lambda j: fsim[j])
    sim = [sim[j] for j in order]
    fsim = [fsim[j] for j in order]

    converged = False
    while nfev < maxfev:
        xspread = max(
            abs(sim[j][k] - sim[0][k]) for j in range(1, n + 1) for k in range(n)
        )
        fspread = max(abs(fsim[j] - fsim[0]) for j in range(1, n + 1))
        if xspread <= xatol and fspread <= fatol:
            converged = True
            break

        xbar = [sum(sim[j][k] for j in range(n)) / n for k in range(n)]
        xr = clipped([(1.0 + rho) * xbar[k] - rho * sim[n][k] for k in range(n)])
        fr = feval(xr)
        nfev += 1
        shrink = False
        if fr < fsim[0]:
            xe = clipped(
                [(1.0 + rho * chi) * xbar[k] - rho * chi * sim[n][k] for k in range(n)]
            )
            fe = feval(xe)
            nfev += 1
            if fe < fr:
                sim[n], fsim[n] = xe, fe
            else:
                sim[n], fsim[n] = xr, fr
        elif fr < fsim[n - 1]:
            sim[n], fsim[n] = xr, fr
        elif fr < fsim[n]:
            xc = clipped(
                [(1.0 + psi * rho) * xbar[k] - psi * rho * sim[n][k] for k in range(n)]
            )
            fc = feval(xc)
            nfev += 1
            if fc <= fr:
                sim[n], fsim[n] = xc, fc
            else:
                shrink = True
        else:
            xcc = clipped([(1.0 - psi) * xbar[k] + psi * sim[n][k] for k in range(n)])
            fcc = feval(xcc)
            nfev += 1
            if fcc < fsim[n]:
                sim[n], fsim[n] = xcc, fcc
            else:
                shrink = True

        if shrink:
            for j in range(1, n + 1):
                sim[j] = [sim[0][k] + sigma * (sim[j][k] - sim[0][k]) for k in range(n)]
                fsim[j] = feval(sim[j])
            nfev += n

        order = sorted(range(n + 1), key=lambda j: fsim[j])
        sim = [sim[j] for j in order]
        fsim = [fsim[j] for j in order]

    xfull = list(x0)
    for k in range(n):
        xfull[free[k]] = sim[0][k]
    return tuple(xfull), fsim[0], nfev, converged
