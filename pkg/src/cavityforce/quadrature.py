"""Adaptive integration over semi-infinite domains.

The half-line ``[lower, inf)`` is mapped onto ``[0, 1)`` with
``x = lower + s * t / (1 - t)`` where ``s`` is the integrand's decay scale
(``QuadratureSpec.scale_hint``). The mapped integrand is integrated by
globally adaptive bisection with the 10-point Gauss / 21-point Kronrod pair;
the panel with the largest error estimate is always split next, ties going
to the oldest panel, so a fixed spec always visits the same nodes.

Integrands are called with a 1-D array of abscissae and must return either
an array of the same length or an array of shape ``(m, n)`` for ``m``
simultaneous components.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, QuadratureError

__all__ = [
    "QuadratureSpec",
    "IntegralResult",
    "integrate_half_line",
    "integrate_double",
    "gauss_kronrod_21",
    "INITIAL_PANELS",
]

# 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525452118,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

# nodes on [-1, 1] in ascending order, with both weight vectors aligned
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_W = np.zeros(21)
_gauss_pos = np.arange(1, 10, 2)  # xgk[1], xgk[3], ... are the Gauss nodes
for _i, _w in zip(_gauss_pos, _WG):
    GAUSS_W[_i] = _w
    GAUSS_W[20 - _i] = _w
del _i, _w, _gauss_pos

INITIAL_PANELS = 8
RULE_SIZE = 21
_EPS = np.finfo(float).eps


def gauss_kronrod_21():
    """Return ``(nodes, kronrod_weights, gauss_weights)`` on ``[-1, 1]``."""
    return NODES.copy(), KRONROD_W.copy(), GAUSS_W.copy()


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for one integration.

    ``scale_hint`` is the characteristic decay length of the integrand in
    its own variable; it sets the map from ``[0, 1)`` to the half-line.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 0.0
    max_evaluations: int = 200_000
    scale_hint: float = 1.0

    def __post_init__(self):
        if not (self.rel_tol > 0 or self.abs_tol > 0):
            raise DomainError("need rel_tol > 0 or abs_tol > 0")
        if self.rel_tol < 0 or self.abs_tol < 0:
            raise DomainError("tolerances must be nonnegative")
        if self.max_evaluations < INITIAL_PANELS * RULE_SIZE:
            raise DomainError(
                f"max_evaluations must be >= {INITIAL_PANELS * RULE_SIZE}, got {self.max_evaluations}"
            )
        if not (self.scale_hint > 0) or not math.isfinite(self.scale_hint):
            raise DomainError(f"scale_hint must be finite and > 0, got {self.scale_hint!r}")

    def with_(self, **changes) -> "QuadratureSpec":
        return replace(self, **changes)


@dataclass(frozen=True)
class IntegralResult:
    """Value (float or component array) with an absolute error estimate.

    For several components the error is the weighted sum of the component
    errors; ``converged`` means it met ``max(rel_tol * sum(w_i |v_i|), abs_tol)``.
    """

    value: float | np.ndarray
    error_estimate: float
    evaluations: int
    converged: bool


def adaptive_unit(
    g: Callable[[np.ndarray], np.ndarray],
    weights: np.ndarray | None,
    rel_tol: float,
    abs_tol: float,
    max_evaluations: int,
):
    """Adaptive GK21 integration of ``g`` over ``(0, 1)``.

    ``g`` maps an array of ``t`` values to an array of the same length or
    to an ``(ncomp, n)`` array. Returns
    ``(value, component_errors, evaluations, converged, scalar, weights)``.
    """
    edges = np.linspace(0.0, 1.0, INITIAL_PANELS + 1)
    lo, hi = edges[:-1], edges[1:]
    vals, errs, scalar = _eval_panels(g, lo, hi, None)
    ncomp = vals.shape[0]
    if weights is None:
        weights = np.ones(ncomp)
    if weights.shape != (ncomp,):
        raise DomainError(f"error_weights must have length {ncomp}")
    evals = RULE_SIZE * INITIAL_PANELS
    panels = {}
    heap = []
    seq = 0
    for i in range(INITIAL_PANELS):
        panels[seq] = (lo[i], hi[i], vals[:, i], errs[:, i])
        heapq.heappush(heap, (-float(weights @ errs[:, i]), seq))
        seq += 1
    total = vals.sum(axis=1)
    total_err = errs.sum(axis=1)
    converged = False
    frozen = []  # panels too narrow to split
    while True:
        tol = max(rel_tol * float(weights @ np.abs(total)), abs_tol)
        if float(weights @ total_err) <= tol:
            converged = True
            break
        if not heap or evals + 2 * RULE_SIZE > max_evaluations:
            break
        _, key = heapq.heappop(heap)
        a, b, v, e = panels[key]
        m = 0.5 * (a + b)
        if not (a < m < b) or (b - a) < 64 * _EPS * max(abs(m), 1e-300):
            frozen.append(key)
            continue
        del panels[key]
        cv, ce, _ = _eval_panels(g, np.array([a, m]), np.array([m, b]), ncomp)
        evals += 2 * RULE_SIZE
        for j, (pa, pb) in enumerate(((a, m), (m, b))):
            panels[seq] = (pa, pb, cv[:, j], ce[:, j])
            heapq.heappush(heap, (-float(weights @ ce[:, j]), seq))
            seq += 1
        total = total - v + cv[:, 0] + cv[:, 1]
        total_err = total_err - e + ce[:, 0] + ce[:, 1]
    # final sums in panel creation order for reproducibility
    keys = sorted(panels)
    value = np.sum(np.stack([panels[k][2] for k in keys]), axis=0)
    err = np.sum(np.stack([panels[k][3] for k in keys]), axis=0)
    if not converged:
        tol = max(rel_tol * float(weights @ np.abs(value)), abs_tol)
        converged = float(weights @ err) <= tol
    return value, err, evals, converged, scalar, weights


def _eval_panels(g, lo: np.ndarray, hi: np.ndarray, ncomp: int | None):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    t = (mid[:, None] + half[:, None] * NODES[None, :]).ravel()
    f = np.asarray(g(t), dtype=float)
    scalar = f.ndim == 1
    if ncomp is None:
        ncomp = 1 if scalar else f.shape[0]
    f = f.reshape(ncomp, len(lo), RULE_SIZE)
    if not np.all(np.isfinite(f)):
        bad = t[~np.all(np.isfinite(f.reshape(ncomp, -1)), axis=0)]
        raise QuadratureError(f"integrand is not finite at mapped abscissa t={bad[:3]}")
    k = np.einsum("cpn,n->cp", f, KRONROD_W) * half
    gs = np.einsum("cpn,n->cp", f, GAUSS_W) * half
    resabs = np.einsum("cpn,n->cp", np.abs(f), KRONROD_W) * half
    err = np.maximum(np.abs(k - gs), 50.0 * _EPS * resabs)
    return k, err, scalar


def integrate_half_line(
    f: Callable,
    lower: float = 0.0,
    spec: QuadratureSpec | None = None,
    *,
    error_weights: Sequence[float] | None = None,
    vectorized: bool = True,
) -> IntegralResult:
    """Integrate ``f`` over ``[lower, inf)``.

    Parameters
    ----------
    f : callable
        Integrand. Called with an array of abscissae when ``vectorized`` is
        true, otherwise once per point with a float.
    lower : float
        Lower limit.
    spec : QuadratureSpec, optional
        Tolerances, budget and decay scale.
    error_weights : sequence of float, optional
        For vector-valued ``f``: weight of each component in the error norm.
        A zero weight integrates the component without controlling it.

    Returns
    -------
    IntegralResult
        ``value`` is a float for scalar integrands, an array otherwise.
    """
    spec = spec or QuadratureSpec()
    lower = float(lower)
    s = spec.scale_hint
    if not vectorized:
        scalar_f = f
        f = lambda xs: np.array([scalar_f(float(x)) for x in xs])  # noqa: E731

    def g(t):
        one_minus = 1.0 - t
        x = lower + s * t / one_minus
        jac = s / (one_minus * one_minus)
        vals = np.asarray(f(x), dtype=float)
        return vals * jac

    weights = None if error_weights is None else np.asarray(error_weights, dtype=float)
    value, err, evals, converged, scalar, weights = adaptive_unit(
        g, weights, spec.rel_tol, spec.abs_tol, spec.max_evaluations
    )
    err_norm = float(weights @ err)
    if scalar:
        return IntegralResult(float(value[0]), err_norm, evals, converged)
    return IntegralResult(value, err_norm, evals, converged)


def integrate_double(
    f: Callable[[float, np.ndarray], np.ndarray],
    spec: QuadratureSpec | None = None,
    *,
    lower: tuple[float, float] = (0.0, 0.0),
    inner_scale: float | None = None,
) -> IntegralResult:
    """Integrate ``f(x, y)`` over ``[lower[0], inf) x [lower[1], inf)``.

    The inner integral over ``y`` runs at a tenth of the outer relative
    tolerance; ``f`` is called with a float ``x`` and an array of ``y``.
    """
    spec = spec or QuadratureSpec()
    inner_spec = spec.with_(
        rel_tol=spec.rel_tol * 0.1,
        abs_tol=spec.abs_tol * 0.1,
        scale_hint=inner_scale or spec.scale_hint,
    )
    state = {"evals": 0, "ok": True, "err": 0.0}

    def outer(xs):
        out = np.empty((2, len(xs)))
        for i, x in enumerate(xs):
            res = integrate_half_line(lambda ys: f(float(x), ys), lower[1], inner_spec)
            state["evals"] += res.evaluations
            state["ok"] &= res.converged
            out[0, i] = res.value
            out[1, i] = res.error_estimate
        return out

    res = integrate_half_line(outer, lower[0], spec, error_weights=[1.0, 0.0])
    value, inner_err = res.value
    return IntegralResult(
        float(value),
        res.error_estimate + float(inner_err),
        state["evals"],
        res.converged and state["ok"],
    )
