# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: closed-form energy pieces and a bounded simplex minimizer.

Algorithmic twin of ``_pykernels.py``; keep the two in lockstep.
"""

from libc.math cimport cos, sin, exp, sqrt, cosh, sinh, fabs, INFINITY

BACKEND = "cython"

NORM_FLOOR = 1e-12

cdef double _NORM_FLOOR = 1e-12


cdef inline double _energy(double delta, double omega, double g, double eps,
                           double alpha, double theta, double p,
                           double gamma) nogil:
    cdef double q, w, ct, st, nrm, sz, nph, corr, sx
    q = 1.0 - p * p
    q = sqrt(q if q > 0.0 else 0.0)
    w = exp(-2.0 * alpha * alpha)
    ct = cos(theta)
    st = sin(theta)
    nrm = 1.0 - 2.0 * p * q * w * ct
    if nrm <= _NORM_FLOOR:
        return INFINITY
    sz = (ct - 2.0 * p * q * w) / nrm
    if gamma == 0.0:
        nph = alpha * alpha * (2.0 / nrm - 1.0)
        corr = -2.0 * alpha * st / nrm
    else:
        nph = (alpha * alpha * ((2.0 / nrm) * cosh(2.0 * gamma) - exp(2.0 * gamma))
               + sinh(gamma) * sinh(gamma))
        corr = (-2.0 * alpha * st / nrm) * exp(-gamma)
    sx = (1.0 - 2.0 * p * p) * st / nrm
    return 0.5 * delta * sz + omega * nph + g * corr + 0.5 * eps * sx


def normalization(double alpha, double theta, double p):
    cdef double q = 1.0 - p * p
    q = sqrt(q if q > 0.0 else 0.0)
    return 1.0 - 2.0 * p * q * exp(-2.0 * alpha * alpha) * cos(theta)


def sigma_z(double alpha, double theta, double p):
    cdef double q = 1.0 - p * p
    q = sqrt(q if q > 0.0 else 0.0)
    cdef double w = exp(-2.0 * alpha * alpha)
    cdef double nrm = 1.0 - 2.0 * p * q * w * cos(theta)
    return (cos(theta) - 2.0 * p * q * w) / nrm


def photon_number(double alpha, double theta, double p, double gamma):
    cdef double nrm = normalization(alpha, theta, p)
    if gamma == 0.0:
        return alpha * alpha * (2.0 / nrm - 1.0)
    return (alpha * alpha * ((2.0 / nrm) * cosh(2.0 * gamma) - exp(2.0 * gamma))
            + sinh(gamma) * sinh(gamma))


def correlation(double alpha, double theta, double p, double gamma):
    cdef double nrm = normalization(alpha, theta, p)
    cdef double c = -2.0 * alpha * sin(theta) / nrm
    return c if gamma == 0.0 else c * exp(-gamma)


def sigma_x(double alpha, double theta, double p):
    cdef double nrm = normalization(alpha, theta, p)
    return (1.0 - 2.0 * p * p) * sin(theta) / nrm


def energy(double delta, double omega, double g, double eps,
           double alpha, double theta, double p, double gamma):
    """Variational energy; +inf when the trial-state norm collapses."""
    return _energy(delta, omega, g, eps, alpha, theta, p, gamma)


cdef int _nm(double delta, double omega, double g, double eps,
             double* x0, double* lo, double* hi, int* free, int n,
             double xatol, double fatol, int maxfev,
             double* xout, double* fout, int* nfev_out) nogil:
    """Bounded Nelder-Mead in the free subspace. Returns 1 when converged."""
    cdef double sim[5][4]
    cdef double fsim[5]
    cdef double base[4]
    cdef double xbar[4]
    cdef double xr[4]
    cdef double xe[4]
    cdef double xc[4]
    cdef double tmp[4]
    cdef double ftmp
    cdef int i, j, k, nfev, converged, shrink
    cdef double step, fr, fe, fc, xspread, fspread, d
    cdef double rho = 1.0, chi = 2.0, psi = 0.5, sigma = 0.5

    for i in range(4):
        base[i] = x0[i]

    # initial simplex (clipped start + box-scaled steps, folded inward at bounds)
    for k in range(n):
        d = x0[free[k]]
        if d < lo[free[k]]:
            d = lo[free[k]]
        if d > hi[free[k]]:
            d = hi[free[k]]
        sim[0][k] = d
    for j in range(1, n + 1):
        for k in range(n):
            sim[j][k] = sim[0][k]
        k = j - 1
        step = 0.05 * (hi[free[k]] - lo[free[k]])
        if sim[j][k] + step <= hi[free[k]]:
            sim[j][k] += step
        else:
            sim[j][k] -= step

    for j in range(n + 1):
        for k in range(n):
            base[free[k]] = sim[j][k]
        fsim[j] = _energy(delta, omega, g, eps, base[0], base[1], base[2], base[3])
    nfev = n + 1

    # stable insertion sort by fsim
    for i in range(1, n + 1):
        ftmp = fsim[i]
        for k in range(n):
            tmp[k] = sim[i][k]
        j = i - 1
        while j >= 0 and fsim[j] > ftmp:
            fsim[j + 1] = fsim[j]
            for k in range(n):
                sim[j + 1][k] = sim[j][k]
            j -= 1
        fsim[j + 1] = ftmp
        for k in range(n):
            sim[j + 1][k] = tmp[k]

    converged = 0
    while nfev < maxfev:
        xspread = 0.0
        for j in range(1, n + 1):
            for k in range(n):
                d = fabs(sim[j][k] - sim[0][k])
                if d > xspread:
                    xspread = d
        fspread = 0.0
        for j in range(1, n + 1):
            d = fabs(fsim[j] - fsim[0])
            if d > fspread:
                fspread = d
        if xspread <= xatol and fspread <= fatol:
            converged = 1
            break

        for k in range(n):
            xbar[k] = 0.0
            for j in range(n):
                xbar[k] += sim[j][k]
            xbar[k] /= n

        for k in range(n):
            d = (1.0 + rho) * xbar[k] - rho * sim[n][k]
            if d < lo[free[k]]:
                d = lo[free[k]]
            if d > hi[free[k]]:
                d = hi[free[k]]
            xr[k] = d
            base[free[k]] = d
        fr = _energy(delta, omega, g, eps, base[0], base[1], base[2], base[3])
        nfev += 1
        shrink = 0
        if fr < fsim[0]:
            for k in range(n):
                d = (1.0 + rho * chi) * xbar[k] - rho * chi * sim[n][k]
                if d < lo[free[k]]:
                    d = lo[free[k]]
                if d > hi[free[k]]:
                    d = hi[free[k]]
                xe[k] = d
                base[free[k]] = d
            fe = _energy(delta, omega, g, eps, base[0], base[1], base[2], base[3])
            nfev += 1
            if fe < fr:
                for k in range(n):
                    sim[n][k] = xe[k]
                fsim[n] = fe
            else:
                for k in range(n):
                    sim[n][k] = xr[k]
                fsim[n] = fr
        elif fr < fsim[n - 1]:
            for k in range(n):
                sim[n][k] = xr[k]
            fsim[n] = fr
        elif fr < fsim[n]:
            for k in range(n):
                d = (1.0 + psi * rho) * xbar[k] - psi * rho * sim[n][k]
                if d < lo[free[k]]:
                    d = lo[free[k]]
                if d > hi[free[k]]:
                    d = hi[free[k]]
                xc[k] = d
                base[free[k]] = d
            fc = _energy(delta, omega, g, eps, base[0], base[1], base[2], base[3])
            nfev += 1
            if fc <= fr:
                for k in range(n):
                    sim[n][k] = xc[k]
                fsim[n] = fc
            else:
                shrink = 1
        else:
            for k in range(n):
                d = (1.0 - psi) * xbar[k] + psi * sim[n][k]
                if d < lo[free[k]]:
                    d = lo[free[k]]
                if d > hi[free[k]]:
                    d = hi[free[k]]
                xc[k] = d
                base[free[k]] = d
            fc = _energy(delta, omega, g, eps, base[0], base[1], base[2], base[3])
            nfev += 1
            if fc < fsim[n]:
                for k in range(n):
                    sim[n][k] = xc[k]
                fsim[n] = fc
            else:
                shrink = 1

        if shrink:
            for j in range(1, n + 1):
                for k in range(n):
                    d = sim[0][k] + sigma * (sim[j][k] - sim[0][k])
                    if d < lo[free[k]]:
                        d = lo[free[k]]
                    if d > hi[free[k]]:
                        d = hi[free[k]]
                    sim[j][k] = d
                    base[free[k]] = d
                fsim[j] = _energy(delta, omega, g, eps, base[0], base[1], base[2], base[3])
            nfev += n

        for i in range(1, n + 1):
            ftmp = fsim[i]
            for k in range(n):
                tmp[k] = sim[i][k]
            j = i - 1
            while j >= 0 and fsim[j] > ftmp:
                fsim[j + 1] = fsim[j]
                for k in range(n):
                    sim[j + 1][k] = sim[j][k]
                j -= 1
            fsim[j + 1] = ftmp
            for k in range(n):
                sim[j + 1][k] = tmp[k]

    for i in range(4):
        xout[i] = x0[i]
    for k in range(n):
        xout[free[k]] = sim[0][k]
    fout[0] = fsim[0]
    nfev_out[0] = nfev
    return converged


def minimize_energy(double delta, double omega, double g, double eps,
                    x0, lo, hi, mask, double xatol, double fatol, int maxfev):
    """Bounded Nelder-Mead on the energy surface.

    Same contract as the pure-Python twin: full (alpha, theta, p, gamma)
    vectors, ``mask`` selects the varying coordinates, candidates are clipped
    into the box. Returns (x_opt, f_opt, nfev, converged).
    """
    cdef double cx0[4]
    cdef double clo[4]
    cdef double chi_[4]
    cdef int cfree[4]
    cdef double xout[4]
    cdef double fout
    cdef int nfev, n = 0, i, conv

    for i in range(4):
        cx0[i] = x0[i]
        clo[i] = lo[i]
        chi_[i] = hi[i]
        if mask[i]:
            cfree[n] = i
            n += 1
    if n == 0:
        f = _energy(delta, omega, g, eps, cx0[0], cx0[1], cx0[2], cx0[3])
        return (cx0[0], cx0[1], cx0[2], cx0[3]), f, 1, True

    with nogil:
        conv = _nm(delta, omega, g, eps, cx0, clo, chi_, cfree, n,
                   xatol, fatol, maxfev, xout, &fout, &nfev)
    return (xout[0], xout[1], xout[2], xout[3]), fout, nfev, bool(conv)
