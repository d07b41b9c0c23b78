# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cavity moment kernel.

Same contract and the same adaptive Gauss-Kronrod schedule as
``_pycavity.cavity_moments``; see that module for the moment definitions.
"""
from libc.math cimport exp, expm1, sqrt, fabs
from libc.stdlib cimport malloc, free

import numpy as np

from ..errors import SingularityError
from ..quadrature import NODES, KRONROD_W, GAUSS_W, INITIAL_PANELS, RULE_SIZE

cdef double[21] _X
cdef double[21] _WK
cdef double[21] _WG
for _i in range(21):
    _X[_i] = NODES[_i]
    _WK[_i] = KRONROD_W[_i]
    _WG[_i] = GAUSS_W[_i]

cdef int _NINIT = INITIAL_PANELS
cdef int _RULE = RULE_SIZE
cdef double _EPS = np.finfo(float).eps
cdef double _SINGULAR = 1e-12


cdef struct MirrorData:
    int kind
    int n
    double *eps
    double *mu
    double *n2xi2
    double *thick


cdef struct Problem:
    int mode
    double cav_eps
    double cav_mu
    double cav_n2xi2
    double kmin
    MirrorData m1
    MirrorData m2
    double d1
    double d2
    int has_slab
    double s_eps
    double s_mu
    double s_n2xi2
    double d_s
    double scale
    int singular


cdef inline double _fresnel(double ka, double wa, double kb, double wb) noexcept nogil:
    cdef double xa = ka / wa
    cdef double xb = kb / wb
    return (xa - xb) / (xa + xb)


cdef double _reflect(MirrorData *m, bint tm, double kappa, double cav_w, double cav_n2xi2) noexcept nogil:
    cdef int j, n
    cdef double r, rho, e, k2, kj, ka, wa
    cdef double *w
    if m.kind == 0:
        return 0.0
    if m.kind == 1:
        return 1.0 if tm else -1.0
    if m.kind == 2:
        return -1.0 if tm else 1.0
    n = m.n
    w = m.eps if tm else m.mu
    k2 = kappa * kappa
    if n == 1:
        return _fresnel(kappa, cav_w, sqrt(k2 + (m.n2xi2[0] - cav_n2xi2)), w[0])
    r = _fresnel(sqrt(k2 + (m.n2xi2[n - 2] - cav_n2xi2)), w[n - 2],
                 sqrt(k2 + (m.n2xi2[n - 1] - cav_n2xi2)), w[n - 1])
    for j in range(n - 2, -1, -1):
        kj = sqrt(k2 + (m.n2xi2[j] - cav_n2xi2))
        if j == 0:
            ka = kappa
            wa = cav_w
        else:
            ka = sqrt(k2 + (m.n2xi2[j - 1] - cav_n2xi2))
            wa = w[j - 1]
        rho = _fresnel(ka, wa, kj, w[j])
        e = exp(-2.0 * kj * m.thick[j])
        r = (rho + r * e) / (1.0 + rho * r * e)
    return r


cdef void _integrand(Problem *P, double kappa, double *out) noexcept nogil:
    cdef double e1, e2, r1, r2, num, den, resp
    cdef double kap_s = 0.0, rho, om, ee, dd, r, rr_tt, gain, cw, sw
    cdef int j
    cdef bint tm
    e1 = exp(-2.0 * kappa * P.d1) if P.m1.kind != 0 else 0.0
    e2 = exp(-2.0 * kappa * P.d2)
    if P.mode == 1:
        kap_s = sqrt(kappa * kappa + (P.s_n2xi2 - P.cav_n2xi2))
    for j in range(2):
        tm = j == 0
        cw = P.cav_eps if tm else P.cav_mu
        r1 = _reflect(&P.m1, tm, kappa, cw, P.cav_n2xi2)
        r2 = _reflect(&P.m2, tm, kappa, cw, P.cav_n2xi2)
        num = r2 * e2 - r1 * e1
        if P.mode == 0:
            den = 1.0 - r1 * r2 * e1 * e2
            if fabs(den) < _SINGULAR:
                P.singular = 1
                den = 1.0
            resp = num / den
            out[2 * j] = kappa * resp
            out[2 * j + 1] = kappa * (kappa / P.scale) * (kappa / P.scale) * resp
        else:
            sw = P.s_eps if tm else P.s_mu
            rho = _fresnel(kappa, cw, kap_s, sw)
            om = -expm1(-2.0 * kap_s * P.d_s)
            ee = 1.0 - om
            dd = 1.0 - rho * rho * ee
            r = rho * om / dd
            rr_tt = (rho * rho - ee) / dd
            gain = (1.0 + rho) * (1.0 + rho) * om / dd
            den = 1.0 - r * (r1 * e1 + r2 * e2) + rr_tt * r1 * r2 * e1 * e2
            if fabs(den) < _SINGULAR:
                P.singular = 1
                den = 1.0
            resp = num / den
            out[2 * j] = kappa * kappa * r * resp
            out[2 * j + 1] = gain * resp


cdef int _panel(Problem *P, double a, double b, double *val, double *err) noexcept nogil:
    """GK21 on [a, b] in the mapped variable; returns 0 or -1 on non-finite values."""
    cdef double half = 0.5 * (b - a)
    cdef double mid = 0.5 * (a + b)
    cdef double t, om, kappa, jac
    cdef double f[4]
    cdef double k[4]
    cdef double g[4]
    cdef double ra[4]
    cdef int i, c
    for c in range(4):
        k[c] = 0.0
        g[c] = 0.0
        ra[c] = 0.0
    for i in range(21):
        t = mid + half * _X[i]
        om = 1.0 - t
        kappa = P.kmin + P.scale * t / om
        jac = P.scale / (om * om)
        _integrand(P, kappa, f)
        for c in range(4):
            f[c] = f[c] * jac
            if not (fabs(f[c]) <= 1.7976931348623157e308):
                return -1
            k[c] += _WK[i] * f[c]
            g[c] += _WG[i] * f[c]
            ra[c] += _WK[i] * fabs(f[c])
    for c in range(4):
        val[c] = k[c] * half
        err[c] = fabs(k[c] * half - g[c] * half)
        if err[c] < 50.0 * _EPS * ra[c] * half:
            err[c] = 50.0 * _EPS * ra[c] * half
    return 0


cdef MirrorData _mirror(object sample, list keep):
    cdef MirrorData m
    cdef double[::1] eps, mu, n2, th
    m.kind = int(sample.kind)
    m.n = 0
    m.eps = NULL
    m.mu = NULL
    m.n2xi2 = NULL
    m.thick = NULL
    if m.kind == 3:
        eps = np.ascontiguousarray(sample.eps, dtype=float)
        mu = np.ascontiguousarray(sample.mu, dtype=float)
        n2 = np.ascontiguousarray(sample.n2xi2, dtype=float)
        th = np.ascontiguousarray(np.append(sample.thickness, 0.0), dtype=float)
        keep.extend((eps, mu, n2, th))
        m.n = eps.shape[0]
        m.eps = &eps[0]
        m.mu = &mu[0]
        m.n2xi2 = &n2[0]
        m.thick = &th[0]
    return m


def cavity_moments(int mode, double xi, tuple cav, object m1, object m2, double d1, double d2,
                   object slab, double scale, object weights, double rel_tol, double abs_tol,
                   long max_evaluations):
    """Integrate the four moments over ``kappa`` in ``[n xi, inf)``.

    Returns ``(values, weighted_error, evaluations, converged)``.
    """
    cdef Problem P
    cdef list keep = []
    cdef double w[4]
    cdef int c, i, best, nalive
    cdef long cap, npan, evals
    cdef double *pa
    cdef double *pb
    cdef double *pv
    cdef double *pe
    cdef double *pw
    cdef char *state  # 0 dead, 1 alive, 2 alive but too narrow to split
    cdef double tot[4]
    cdef double terr[4]
    cdef double tol, norm, errn, a, b, m, bw
    cdef bint converged = False
    cdef int status = 0

    P.mode = mode
    P.cav_eps = cav[0]
    P.cav_mu = cav[1]
    P.cav_n2xi2 = cav[2]
    P.kmin = sqrt(P.cav_n2xi2)
    P.m1 = _mirror(m1, keep)
    P.m2 = _mirror(m2, keep)
    P.d1 = d1
    P.d2 = d2
    P.scale = scale
    P.singular = 0
    if mode == 1:
        P.s_eps, P.s_mu, P.s_n2xi2, P.d_s = slab
    for c in range(4):
        w[c] = weights[c]

    cap = max_evaluations // RULE_SIZE + 4
    pa = <double *> malloc(cap * sizeof(double))
    pb = <double *> malloc(cap * sizeof(double))
    pv = <double *> malloc(4 * cap * sizeof(double))
    pe = <double *> malloc(4 * cap * sizeof(double))
    pw = <double *> malloc(cap * sizeof(double))
    state = <char *> malloc(cap * sizeof(char))
    if not (pa and pb and pv and pe and pw and state):
        free(pa); free(pb); free(pv); free(pe); free(pw); free(state)
        raise MemoryError()
    try:
        with nogil:
            npan = 0
            for i in range(_NINIT):
                pa[npan] = <double> i / _NINIT
                pb[npan] = <double> (i + 1) / _NINIT
                if _panel(&P, pa[npan], pb[npan], &pv[4 * npan], &pe[4 * npan]) != 0:
                    status = -1
                    break
                pw[npan] = 0.0
                for c in range(4):
                    pw[npan] += w[c] * pe[4 * npan + c]
                state[npan] = 1
                npan += 1
            evals = _RULE * _NINIT
            for c in range(4):
                tot[c] = 0.0
                terr[c] = 0.0
            if status == 0:
                for c in range(4):
                    for i in range(npan):
                        tot[c] += pv[4 * i + c]
                        terr[c] += pe[4 * i + c]
            while status == 0:
                norm = 0.0
                errn = 0.0
                for c in range(4):
                    norm += w[c] * fabs(tot[c])
                    errn += w[c] * terr[c]
                tol = rel_tol * norm
                if tol < abs_tol:
                    tol = abs_tol
                if errn <= tol:
                    converged = True
                    break
                if evals + 2 * _RULE > max_evaluations or npan + 2 > cap:
                    break
                best = -1
                bw = -1.0
                for i in range(npan):
                    if state[i] == 1 and pw[i] > bw:
                        bw = pw[i]
                        best = i
                if best < 0:
                    break
                a = pa[best]
                b = pb[best]
                m = 0.5 * (a + b)
                if not (a < m and m < b) or (b - a) < 64.0 * _EPS * fabs(m):
                    state[best] = 2
                    continue
                state[best] = 0
                pa[npan] = a
                pb[npan] = m
                pa[npan + 1] = m
                pb[npan + 1] = b
                if _panel(&P, a, m, &pv[4 * npan], &pe[4 * npan]) != 0:
                    status = -1
                    break
                if _panel(&P, m, b, &pv[4 * npan + 4], &pe[4 * npan + 4]) != 0:
                    status = -1
                    break
                evals += 2 * _RULE
                for i in range(npan, npan + 2):
                    pw[i] = 0.0
                    for c in range(4):
                        pw[i] += w[c] * pe[4 * i + c]
                    state[i] = 1
                for c in range(4):
                    tot[c] = tot[c] - pv[4 * best + c] + pv[4 * npan + c] + pv[4 * npan + 4 + c]
                    terr[c] = terr[c] - pe[4 * best + c] + pe[4 * npan + c] + pe[4 * npan + 4 + c]
                npan += 2
        if status != 0:
            from ..errors import QuadratureError
            raise QuadratureError("cavity moment integrand is not finite")
        if P.singular:
            raise SingularityError("multiple-reflection denominator vanished")
        values = np.zeros(4)
        errs = np.zeros(4)
        for i in range(npan):
            if state[i] != 0:
                for c in range(4):
                    values[c] += pv[4 * i + c]
                    errs[c] += pe[4 * i + c]
        errn = 0.0
        norm = 0.0
        for c in range(4):
            errn += w[c] * errs[c]
            norm += w[c] * fabs(values[c])
        if not converged:
            converged = errn <= max(rel_tol * norm, abs_tol)
        return values, errn, evals, bool(converged)
    finally:
        free(pa); free(pb); free(pv); free(pe); free(pw); free(state)
