"""Tail extrapolation helpers shared by the walk, skew and shell estimators.

All the growth-rate sequences in this package converge like
``a_n = L - alpha*log(n)/n - beta/n + O(1/n^2)`` (polynomial local-limit
corrections), so the default limit fit regresses on exactly that basis,
adding the 1/n^2 column when enough points are available.  Window
stability (top half vs top two-thirds) is folded into the reported
standard error: pure least-squares errors underestimate badly when the
model is nearly exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log, sqrt

import numpy as np

SE_FLOOR = 1e-4  # systematic floor; least-squares SEs are optimistic


@dataclass
class LimitFit:
    limit: float
    se: float           # total: lstsq SE + window stability + floor
    se_lstsq: float
    window_shift: float  # |limit(top half) - limit(top two-thirds)|
    coefficients: tuple
    ns: tuple


def _lstsq_limit(ns, ys, quartic: bool):
    ns = np.asarray(ns, dtype=float)
    ys = np.asarray(ys, dtype=float)
    cols = [np.ones_like(ns), -np.log(ns) / ns, -1.0 / ns]
    if quartic and len(ns) >= 6:
        cols.append(-1.0 / ns ** 2)
    ncols = min(len(cols), max(1, len(ns) - 1))
    X = np.column_stack(cols[:ncols])
    coef, *_ = np.linalg.lstsq(X, ys, rcond=None)
    resid = ys - X @ coef
    dof = max(1, len(ns) - X.shape[1])
    s2 = float(resid @ resid) / dof
    try:
        var = s2 * np.linalg.inv(X.T @ X)[0, 0]
    except np.linalg.LinAlgError:
        var = s2
    return float(coef[0]), sqrt(max(var, 0.0)), tuple(float(c) for c in coef)


def _windowed(ns, ys, quartic):
    top = max(ns)
    half_idx = [i for i in range(len(ns)) if 2 * ns[i] >= top]
    if len(half_idx) < 2:
        half_idx = list(range(len(ns)))[-2:]
    L, se, coef = _lstsq_limit([ns[i] for i in half_idx],
                               [ys[i] for i in half_idx], quartic)
    two3_idx = [i for i in range(len(ns)) if 3 * ns[i] >= 2 * top]
    shift = 0.0
    if len(two3_idx) >= 3 and two3_idx != half_idx:
        L2, _, _ = _lstsq_limit([ns[i] for i in two3_idx],
                                [ys[i] for i in two3_idx], quartic)
        shift = abs(L - L2)
    return L, se, coef, shift, half_idx


def fit_tail_limit(ns, ys) -> LimitFit:
    """Extrapolate the limit of a sequence sampled at indices ``ns``.

    Fits on the top half of the points; the difference against a
    top-two-thirds window enters the reported SE as a systematic term.
    The 1/n^2 refinement is kept only when its extrapolation is
    window-stable: far from asymptopia it overfits short windows, and
    the cubic model is then the safer extrapolation.
    """
    pairs = sorted(zip(ns, ys))
    ns = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]
    if len(ns) < 2:
        raise ValueError("need at least 2 points to extrapolate")
    L4, se4, coef4, shift4, idx4 = _windowed(ns, ys, quartic=True)
    L3, se3, coef3, shift3, idx3 = _windowed(ns, ys, quartic=False)
    use_quartic = not (shift4 > max(4.0 * shift3, 0.01))
    L, se, coef, shift, idx = (L4, se4, coef4, shift4, idx4) if use_quartic \
        else (L3, se3, coef3, shift3, idx3)
    total = sqrt(se ** 2 + shift ** 2 + SE_FLOOR ** 2)
    return LimitFit(limit=L, se=total, se_lstsq=se, window_shift=shift,
                    coefficients=coef, ns=tuple(ns[i] for i in idx))


@dataclass
class DecayFit:
    """Least-squares fit of a deficit sequence to d_n = d_inf + c * n^-gamma."""
    d_inf: float
    scale: float
    exponent: float
    sse: float

    @property
    def decays_to_zero(self) -> bool:
        return self.exponent >= 0.2 and self.d_inf <= 0.02


def fit_deficit_decay(ns, ds, *, gamma_grid=None) -> DecayFit:
    """Grid over the decay exponent, linear least squares for (d_inf, c).

    d_inf is clamped at 0 (deficits have a nonnegative limit); when the
    unconstrained fit goes negative the pure-power model is refit.  The
    grid covers polynomial (gamma ~ 1) and stretched (gamma ~ 2/3)
    deficits without committing to either.
    """
    ns = np.asarray(ns, dtype=float)
    ds = np.asarray(ds, dtype=float)
    if gamma_grid is None:
        gamma_grid = np.arange(0.25, 1.80, 0.05)
    best = None
    for gamma in gamma_grid:
        basis = ns ** (-gamma)
        X = np.column_stack([np.ones_like(ns), basis])
        coef, *_ = np.linalg.lstsq(X, ds, rcond=None)
        d_inf, c = float(coef[0]), float(coef[1])
        if d_inf < 0.0:
            denom = float(basis @ basis)
            c = float(basis @ ds) / denom if denom > 0 else 0.0
            d_inf = 0.0
        resid = ds - (d_inf + c * basis)
        sse = float(resid @ resid)
        if best is None or sse < best.sse:
            best = DecayFit(d_inf=d_inf, scale=c, exponent=float(gamma), sse=sse)
    return best


def fit_shell_slope(Rs, log_sums) -> float:
    """Slope of log b_R against R, with a -log R correction column."""
    Rs = np.asarray(Rs, dtype=float)
    ys = np.asarray(log_sums, dtype=float)
    cols = [Rs, np.ones_like(Rs)]
    if len(Rs) >= 5:
        cols.append(-np.log(Rs))
    X = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(X, ys, rcond=None)
    return float(coef[0])


def logsumexp(values) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return float("-inf")
    m = float(values.max())
    return m + log(float(np.exp(values - m).sum()))
