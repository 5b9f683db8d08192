"""Foundation numerical kernels.

Adaptive quadrature, monotone CDF inversion, stable evaluation of
orthonormal Hermite functions, and the two asymptotic least-squares fits
used by the scan drivers.  Everything here is a pure function of its
inputs and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate

from .errors import IntegrationError

__all__ = [
    "Interval",
    "QuadratureConfig",
    "FitResult",
    "DEFAULT_QUADRATURE",
    "integrate_adaptive",
    "invert_cdf",
    "hermite_psi",
    "fit_log_linear",
    "fit_power_law",
]


@dataclass(frozen=True)
class Interval:
    """Oriented interval on the extended real line; endpoints may be infinite."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval [{self.lo}, {self.hi}]")

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and subdivision budget for adaptive integration."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 10_000

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class FitResult:
    """Parameters and residual of an asymptotic fit.

    ``params`` is (a, b) for y = a*ln(n) + b, or (c, gamma) for
    y = c*n**gamma (fitted in log space).
    """

    params: tuple[float, float]
    residual_rms: float
    n_range: tuple[int, int]

    def __post_init__(self):
        if self.residual_rms < 0.0:
            raise ValueError("residual_rms must be non-negative")


def integrate_adaptive(
    f: Callable[[float], float],
    domain: Interval,
    cfg: QuadratureConfig | None = None,
    singularities: Iterable[float] | None = None,
) -> float:
    """Integrate ``f`` over ``domain`` to the configured tolerance.

    Known interior trouble spots (integrable singularities, kinks) may be
    passed via ``singularities``; the integrator places panel boundaries
    there.  Infinite endpoints are handled by the integrator's internal
    change of variables onto a finite range.

    Raises
    ------
    IntegrationError
        If the subdivision budget is exhausted before the tolerance is
        met.  The exception carries the partial estimate.
    """
    cfg = cfg if cfg is not None else DEFAULT_QUADRATURE
    pts = sorted({float(p) for p in (singularities or ()) if domain.lo < p < domain.hi})
    if pts and not domain.finite:
        # quadpack rejects break points on infinite ranges; peel the tails off
        lo_core = domain.lo if math.isfinite(domain.lo) else pts[0] - 1.0
        hi_core = domain.hi if math.isfinite(domain.hi) else pts[-1] + 1.0
        total = 0.0
        if math.isinf(domain.lo):
            total += _quad_piece(f, domain.lo, lo_core, cfg, ())
        core_pts = [p for p in pts if lo_core < p < hi_core]
        total += _quad_piece(f, lo_core, hi_core, cfg, core_pts)
        if math.isinf(domain.hi):
            total += _quad_piece(f, hi_core, domain.hi, cfg, ())
        return total
    return _quad_piece(f, domain.lo, domain.hi, cfg, pts)


def _quad_piece(f, lo, hi, cfg, pts):
    res = integrate.quad(
        f,
        lo,
        hi,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        points=list(pts) or None,
        full_output=1,
    )
    if len(res) > 3:
        raise IntegrationError(res[3], partial=res[0], error_estimate=res[1])
    return res[0]


def invert_cdf(F, q: float, tol: float = 1e-12) -> float:
    """Generalized inverse of a CDF: the smallest x with F(x) >= q.

    ``F`` may be a bare callable (assumed defined on the whole real line)
    or any object exposing ``cdf`` and ``support`` attributes.  Bisection
    keeps the invariant F(lo) < q <= F(hi), so on flat segments the
    bracket converges onto the infimum of the level set.  A single secant
    step polishes the result where the CDF is locally increasing.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile level must lie in (0, 1), got {q}")
    if callable(F):
        cdf = F
        slo, shi = -math.inf, math.inf
    else:
        cdf = F.cdf
        slo, shi = F.support.lo, F.support.hi
    lo, hi = _bracket(cdf, q, slo, shi)
    for _ in range(200):
        width = hi - lo
        if width <= tol or width <= 4.0 * math.ulp(max(abs(lo), abs(hi))):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if cdf(mid) >= q:
            hi = mid
        else:
            lo = mid
    flo, fhi = cdf(lo), cdf(hi)
    if fhi > flo:
        x = lo + (q - flo) * (hi - lo) / (fhi - flo)
        if lo <= x <= hi and abs(cdf(x) - q) <= abs(fhi - q):
            return x
    return hi


def _bracket(cdf, q, slo, shi):
    """Expand to endpoints lo, hi with cdf(lo) < q <= cdf(hi)."""
    if math.isfinite(slo):
        lo = slo
    else:
        lo = min(0.0, shi - 1.0) if math.isfinite(shi) else 0.0
        step = 1.0
        for _ in range(200):
            if cdf(lo) < q:
                break
            lo -= step
            step *= 2.0
        else:
            raise IntegrationError(f"could not bracket quantile level {q} from below")
    if math.isfinite(shi):
        hi = shi
    else:
        hi = max(0.0, slo + 1.0) if math.isfinite(slo) else 0.0
        step = 1.0
        for _ in range(200):
            if cdf(hi) >= q:
                break
            hi += step
            step *= 2.0
        else:
            raise IntegrationError(f"could not bracket quantile level {q} from above")
    return lo, hi


# Rescaling bounds for the Hermite recurrence.  Seeds below exp(-690)
# are carried as (mantissa, log-offset) pairs so that deeply sub-normal
# starting values survive the climb back to O(1) near the classical
# turning points.
_LOG_FLOOR = -690.0
_MANT_CEIL = 1e250
_MANT_SHIFT = math.log(_MANT_CEIL)


def hermite_psi(n: int, x):
    """Orthonormal Hermite function psi_n(x).

    psi_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)), evaluated with
    the normalized three-term recurrence

        psi_{n+1} = x sqrt(2/(n+1)) psi_n - sqrt(n/(n+1)) psi_{n-1}

    which keeps every intermediate O(1).  Accepts a scalar or an ndarray
    for ``x``; the result matches the input shape.  Values whose true
    magnitude falls below the smallest subnormal come out as 0.0, never
    as an overflow or NaN.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"order must be a non-negative integer, got {n}")
    n = int(n)
    if np.ndim(x) == 0:
        return _psi_scalar(n, float(x))
    return _psi_array(n, np.asarray(x, dtype=float))


def _psi_scalar(n, x):
    l0 = -0.5 * x * x - 0.25 * math.log(math.pi)
    shift = 0.0
    if l0 < _LOG_FLOOR:
        shift = l0 - _LOG_FLOOR
        l0 = _LOG_FLOOR
    cur = math.exp(l0)
    if n == 0:
        return cur * math.exp(shift) if shift else cur
    prev, cur = cur, math.sqrt(2.0) * x * cur
    for k in range(1, n):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1.0)) * prev
        if shift and (abs(cur) > _MANT_CEIL or abs(prev) > _MANT_CEIL):
            d = min(-shift, _MANT_SHIFT)
            fac = math.exp(-d)
            cur *= fac
            prev *= fac
            shift += d
    return cur * math.exp(shift) if shift else cur


def _psi_array(n, x):
    l0 = -0.5 * x * x - 0.25 * math.log(math.pi)
    shift = np.minimum(l0 - _LOG_FLOOR, 0.0)
    cur = np.exp(l0 - shift)
    if n == 0:
        return cur * np.exp(shift)
    prev, cur = cur, math.sqrt(2.0) * x * cur
    scaled = bool(np.any(shift < 0.0))
    for k in range(1, n):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1.0)) * prev
        if scaled and k % 32 == 0:
            mask = (shift < 0.0) & (np.abs(cur) > _MANT_CEIL)
            if np.any(mask):
                d = np.where(mask, np.minimum(-shift, _MANT_SHIFT), 0.0)
                fac = np.exp(-d)
                cur = cur * fac
                prev = prev * fac
                shift = shift + d
    return cur * np.exp(shift)


def _fit_points(points, min_n=1):
    pts = [(int(n), float(y)) for n, y in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points to fit")
    if any(n < min_n for n, _ in pts):
        raise ValueError(f"all abscissae must be >= {min_n}")
    ns = np.array([n for n, _ in pts], dtype=float)
    ys = np.array([y for _, y in pts], dtype=float)
    if np.all(ns == ns[0]):
        raise ValueError("degenerate fit: all abscissae equal")
    return ns, ys


def fit_log_linear(points: Sequence[tuple[int, float]]) -> FitResult:
    """Unweighted least squares of y = a*ln(n) + b."""
    ns, ys = _fit_points(points)
    design = np.vstack([np.log(ns), np.ones_like(ns)]).T
    coef, *_ = np.linalg.lstsq(design, ys, rcond=None)
    resid = ys - design @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    return FitResult((float(coef[0]), float(coef[1])), rms, (int(ns.min()), int(ns.max())))


def fit_power_law(points: Sequence[tuple[int, float]]) -> FitResult:
    """Least squares of ln(y) = gamma*ln(n) + ln(c); returns (c, gamma).

    ``residual_rms`` is reported in log space, i.e. for the linear
    regression actually performed.
    """
    ns, ys = _fit_points(points)
    if np.any(ys <= 0.0):
        raise ValueError("power-law fit requires positive ordinates")
    design = np.vstack([np.log(ns), np.ones_like(ns)]).T
    coef, *_ = np.linalg.lstsq(design, np.log(ys), rcond=None)
    resid = np.log(ys) - design @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    return FitResult((float(math.exp(coef[1])), float(coef[0])), rms, (int(ns.min()), int(ns.max())))
