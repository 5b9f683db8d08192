"""Self-verification suite.

Twelve checks pin the library against every closed form and scaling law
it claims to reproduce, each at its fixed tolerance.  ``run_all`` is
deterministic: the "random" draws below use fixed-seed generators, so a
passing suite stays passing bit-for-bit.  The CLI ``selftest`` command
and tests/test_acceptance.py both drive this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .distances import (
    Cdf1D,
    DiscretePmf,
    bhattacharyya_continuous,
    emd_oracle,
    kl_continuous,
    kl_discrete,
    mean_shortcut_w1,
    wasserstein1_cdf,
    wasserstein1_discrete,
    wasserstein_p_quantile,
)
from .numerics import fit_log_linear, fit_power_law
from .photon_states import (
    CoherentParams,
    GlauberLachsParams,
    SqueezeParams,
    ThermalParams,
    _gl_closed_form,
    _gl_cutoff,
    _gl_mixture_quadrature,
    coherent_pmf,
    fock_pmf,
    glauber_lachs_pmf,
    squeezed_vacuum_pmf,
    thermal_pmf,
)
from .wavefunctions import (
    BoxState,
    KlDirection,
    OscState,
    Representation,
    _planck_mean_const,
    _positive_hermite_zeros,
    blackbody_w1,
    classical_box_cdf,
    classical_box_pdf,
    osc_bhatt_vacuum,
    osc_cdf,
    osc_kl_vacuum,
    osc_pdf,
    osc_w1_vacuum,
    pbox_bhatt_classical,
    pbox_cdf,
    pbox_kl_classical,
    pbox_pair_w1,
    pbox_pdf,
    pbox_w1_classical,
)

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_all"]

_PI = math.pi


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.index:02d} {self.name}: {status} ({self.detail})"


def _result(index, name, passed, detail) -> CriterionResult:
    return CriterionResult(index, name, bool(passed), detail)


def criterion_1() -> CriterionResult:
    """Classical box distances match 1/(n pi^2) for n = 1..50 at 1e-9."""
    f_cl = classical_box_cdf()
    worst = 0.0
    for n in range(1, 51):
        kinks = [k / (2 * n) for k in range(1, 2 * n)]
        numeric = wasserstein1_cdf(f_cl, pbox_cdf(BoxState(n)), split_points=kinks)
        worst = max(worst, abs(numeric - 1.0 / (n * _PI**2)))
    return _result(1, "pbox-classical-w1", worst <= 1e-9, f"max deviation {worst:.3e}, tol 1e-9")


def criterion_2() -> CriterionResult:
    """KL and Bhattacharyya against the uniform law are n-independent."""
    targets = {
        "kl_uniform_to_state": math.log(2.0),
        "kl_state_to_uniform": 1.0 - math.log(2.0),
        "bhattacharyya": math.log(_PI / math.sqrt(8.0)),
    }
    worst = 0.0
    uniform = classical_box_pdf()
    for n in (1, 5, 20):
        zeros = [k / n for k in range(1, n)]
        state = pbox_pdf(BoxState(n))
        worst = max(
            worst,
            abs(kl_continuous(uniform, state, split_points=zeros) - targets["kl_uniform_to_state"]),
            abs(kl_continuous(state, uniform, split_points=zeros) - targets["kl_state_to_uniform"]),
            abs(bhattacharyya_continuous(uniform, state, split_points=zeros) - targets["bhattacharyya"]),
        )
    # the closed-form accessors run the same checks internally
    pbox_kl_classical(KlDirection.UNIFORM_TO_STATE)
    pbox_kl_classical(KlDirection.STATE_TO_UNIFORM)
    pbox_bhatt_classical()
    return _result(2, "pbox-n-independence", worst <= 1e-8, f"max deviation {worst:.3e}, tol 1e-8")


def criterion_3() -> CriterionResult:
    """Even-n plateau at 1/pi^2; odd-n values rise toward it from below."""
    plateau = 1.0 / _PI**2
    worst_even = 0.0
    for n in range(2, 21, 2):
        worst_even = max(worst_even, abs(pbox_pair_w1(1, n) - plateau))
    odd_vals = [pbox_pair_w1(1, n) for n in range(3, 20, 2)]
    increasing = all(a < b for a, b in zip(odd_vals[:-1], odd_vals[1:]))
    below = all(v < plateau for v in odd_vals)
    ok = worst_even <= 1e-8 and increasing and below
    return _result(
        3,
        "pbox-parity-plateau",
        ok,
        f"even deviation {worst_even:.3e} (tol 1e-8), odd increasing={increasing}, below={below}",
    )


def criterion_4() -> CriterionResult:
    """W_1(G_m, G_600) sits within 2e-3 of the limit 1/(m pi^2)."""
    worst = 0.0
    for m in (2, 3):
        worst = max(worst, abs(pbox_pair_w1(m, 600) - 1.0 / (m * _PI**2)))
    return _result(4, "pbox-limit-law", worst < 2e-3, f"max deviation {worst:.3e}, tol 2e-3")


_VACUUM_CASES: tuple[tuple[str, Callable[[], DiscretePmf], float], ...] = (
    ("coherent(0.5)", lambda: coherent_pmf(CoherentParams(0.5)), 0.5),
    ("coherent(2.5)", lambda: coherent_pmf(CoherentParams(2.5)), 2.5),
    ("squeezed(0.5)", lambda: squeezed_vacuum_pmf(SqueezeParams(0.5)), math.sinh(0.5) ** 2),
    ("squeezed(1)", lambda: squeezed_vacuum_pmf(SqueezeParams(1.0)), math.sinh(1.0) ** 2),
    ("thermal(1)", lambda: thermal_pmf(ThermalParams(1.0)), 1.0),
    ("thermal(2)", lambda: thermal_pmf(ThermalParams(2.0)), 2.0),
    ("glauber_lachs(1,2)", lambda: glauber_lachs_pmf(GlauberLachsParams(1.0, 2.0)), 3.0),
)


def criterion_5() -> CriterionResult:
    """W_1 from the vacuum equals the analytic mean photon number."""
    vacuum = fock_pmf(0)
    worst = 0.0
    for _, make, mean in _VACUUM_CASES:
        pmf = make()
        worst = max(
            worst,
            abs(wasserstein1_discrete(vacuum, pmf) - mean),
            abs(emd_oracle(vacuum, pmf) - mean),
        )
    return _result(5, "photon-vacuum-w1", worst <= 1e-8, f"max deviation {worst:.3e}, tol 1e-8")


def criterion_6() -> CriterionResult:
    """Vacuum KL identities; the thermal discrepancy is recorded, not failed."""
    vacuum = fock_pmf(0)
    worst = 0.0
    for mean in (0.5, 2.5):
        worst = max(worst, abs(kl_discrete(vacuum, coherent_pmf(CoherentParams(mean))) - mean))
    for r in (0.5, 1.0):
        target = math.log(math.cosh(r))
        worst = max(worst, abs(kl_discrete(vacuum, squeezed_vacuum_pmf(SqueezeParams(r))) - target))
    nbar = 2.0
    thermal_kl = kl_discrete(vacuum, thermal_pmf(ThermalParams(nbar)))
    definitional = math.log1p(nbar)
    printed = nbar + 1.0
    thermal_dev = abs(thermal_kl - definitional)
    worst = max(worst, thermal_dev)
    detail = (
        f"max deviation {worst:.3e}, tol 1e-10; thermal KL {thermal_kl:.12f} matches "
        f"ln(nbar+1)={definitional:.12f}, printed value {printed} differs by "
        f"{abs(thermal_kl - printed):.3f} and is recorded, not enforced"
    )
    return _result(6, "photon-vacuum-kl", worst <= 1e-10, detail)


def criterion_7() -> CriterionResult:
    """Mean-difference shortcut agrees with the CDF sum for coherent pairs."""
    rng = np.random.default_rng(20240811)
    worst = 0.0
    for _ in range(10):
        m1, m2 = rng.uniform(0.0, 10.0, size=2)
        p = coherent_pmf(CoherentParams(m1))
        q = coherent_pmf(CoherentParams(m2))
        shortcut = mean_shortcut_w1(p, q)
        full = wasserstein1_discrete(p, q)
        target = abs(m1 - m2)
        worst = max(worst, abs(shortcut - full), abs(shortcut - target))
    return _result(7, "coherent-shortcut", worst <= 1e-10, f"max deviation {worst:.3e}, tol 1e-10")


def _random_pmf(rng) -> DiscretePmf:
    length = int(rng.integers(1, 65))
    vals = rng.uniform(0.0, 1.0, size=length)
    vals[rng.uniform(size=length) < 0.2] = 0.0
    if vals.sum() == 0.0:
        vals[int(rng.integers(0, length))] = 1.0
    return DiscretePmf(vals / vals.sum())


def criterion_8() -> CriterionResult:
    """Greedy transport oracle equals the cumulative-sum route."""
    rng = np.random.default_rng(20240812)
    worst = 0.0
    for _ in range(100):
        p, q = _random_pmf(rng), _random_pmf(rng)
        worst = max(worst, abs(emd_oracle(p, q) - wasserstein1_discrete(p, q)))
    return _result(8, "emd-oracle-equivalence", worst <= 1e-12, f"max deviation {worst:.3e}, tol 1e-12")


def _metric_pool() -> list[tuple[str, Cdf1D]]:
    pool: list[tuple[str, Cdf1D]] = [("classical", classical_box_cdf())]
    pool += [(f"box{n}", pbox_cdf(BoxState(n))) for n in range(1, 17)]
    pool += [(f"osc{n}", osc_cdf(OscState(n))) for n in range(0, 4)]
    return pool


def criterion_9() -> CriterionResult:
    """W_p symmetry and triangle inequality on random built-in triples."""
    rng = np.random.default_rng(20240813)
    pool = _metric_pool()
    cache: dict[tuple[str, str, float], float] = {}

    def dist(i: int, j: int, p: float) -> float:
        key = (pool[i][0], pool[j][0], p)
        if key not in cache:
            cache[key] = wasserstein_p_quantile(pool[i][1], pool[j][1], p=p)
        return cache[key]

    worst_sym = 0.0
    worst_tri = -math.inf
    for _ in range(100):
        i, j, k = (int(v) for v in rng.choice(len(pool), size=3, replace=False))
        for p in (1.0, 2.0):
            d_ij, d_jk, d_ik = dist(i, j, p), dist(j, k, p), dist(i, k, p)
            worst_sym = max(worst_sym, abs(dist(j, i, p) - d_ij))
            worst_tri = max(worst_tri, d_ik - (d_ij + d_jk))
    ok = worst_sym <= 1e-8 and worst_tri <= 1e-8
    return _result(
        9,
        "wp-metric-axioms",
        ok,
        f"max symmetry gap {worst_sym:.3e}, worst triangle excess {worst_tri:.3e}, tol 1e-8",
    )


def criterion_10() -> CriterionResult:
    """Oscillator asymptotics: sqrt growth of W_1, log growth of KL and B."""
    w1_pts = [(n, osc_w1_vacuum(n)) for n in range(50, 401, 25)]
    power = fit_power_law(w1_pts)
    gamma = power.params[1]
    kl_pts = [(n, osc_kl_vacuum(n)) for n in range(10, 201, 10)]
    b_pts = [(n, osc_bhatt_vacuum(n)) for n in range(10, 201, 10)]
    kl_fit = fit_log_linear(kl_pts)
    b_fit = fit_log_linear(b_pts)
    kl_rel = kl_fit.residual_rms / float(np.mean([y for _, y in kl_pts]))
    b_rel = b_fit.residual_rms / float(np.mean([y for _, y in b_pts]))
    dual_gap = 0.0
    for n in (1, 5, 20):
        zeros = _positive_hermite_zeros(n)
        splits = sorted({-z for z in zeros} | set(zeros) | ({0.0} if n % 2 else set()))
        generic_kl = kl_continuous(osc_pdf(OscState(0)), osc_pdf(OscState(n)), split_points=splits)
        generic_b = bhattacharyya_continuous(
            osc_pdf(OscState(0)), osc_pdf(OscState(n)), split_points=splits
        )
        dual_gap = max(
            dual_gap,
            abs(generic_kl - osc_kl_vacuum(n)),
            abs(generic_b - osc_bhatt_vacuum(n)),
        )
    ok = abs(gamma - 0.5) <= 0.03 and kl_rel < 0.05 and b_rel < 0.05 and dual_gap <= 1e-6
    detail = (
        f"w1 exponent {gamma:.4f} (0.5 +- 0.03), kl rel resid {kl_rel:.5f}, "
        f"bhatt rel resid {b_rel:.5f} (tol 0.05), dual-route gap {dual_gap:.3e} (tol 1e-6)"
    )
    return _result(10, "osc-asymptotics", ok, detail)


def _gauss_legendre_mean_const() -> float:
    """Independent high-resolution quadrature of the spectral mean.

    Fixed composite 32-point Gauss-Legendre on [0, 200], no adaptive
    machinery shared with the library route.
    """
    nodes, weights = np.polynomial.legendre.leggauss(32)
    edges = np.linspace(0.0, 200.0, 401)
    total = 0.0
    norm = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        c, h = 0.5 * (a + b), 0.5 * (b - a)
        x = c + h * nodes
        with np.errstate(over="ignore"):
            shape = np.where(x > 0.0, x**3 / np.expm1(np.minimum(x, 700.0)), 0.0)
        total += h * float(np.dot(weights, x * shape))
        norm += h * float(np.dot(weights, shape))
    return total / norm


def criterion_11() -> CriterionResult:
    """Blackbody W_1 is collinear in |dT| (frequency) and |d(1/T)| (wavelength)."""
    temps = (100.0, 200.0, 300.0, 500.0)
    pairs = [(t1, t2) for i, t1 in enumerate(temps) for t2 in temps[i + 1 :]]
    xs_f = [abs(t1 - t2) for t1, t2 in pairs]
    ys_f = [blackbody_w1(t1, t2, Representation.FREQUENCY) for t1, t2 in pairs]
    xs_w = [abs(1.0 / t1 - 1.0 / t2) for t1, t2 in pairs]
    ys_w = [blackbody_w1(t1, t2, Representation.WAVELENGTH) for t1, t2 in pairs]

    def rel_resid(xs, ys):
        xs, ys = np.asarray(xs), np.asarray(ys)
        slope = float(np.dot(xs, ys) / np.dot(xs, xs))
        return float(np.max(np.abs(ys - slope * xs)) / np.max(np.abs(ys)))

    freq_resid = rel_resid(xs_f, ys_f)
    wave_resid = rel_resid(xs_w, ys_w)
    c_lib = _planck_mean_const(Representation.FREQUENCY)
    c_oracle = _gauss_legendre_mean_const()
    c_gap = abs(c_lib - c_oracle)
    ok = freq_resid < 1e-6 and wave_resid < 1e-6 and c_gap <= 1e-6
    detail = (
        f"freq resid {freq_resid:.3e}, wave resid {wave_resid:.3e} (tol 1e-6), "
        f"mean const {c_lib:.8f} vs oracle {c_oracle:.8f}, gap {c_gap:.3e} (tol 1e-6)"
    )
    return _result(11, "blackbody-scaling", ok, detail)


def criterion_12() -> CriterionResult:
    """Glauber-Lachs internal consistency and limit behavior."""
    worst_routes = 0.0
    for a2, nbar in ((1.0, 2.0), (2.0, 0.5)):
        cutoff, _ = _gl_cutoff(a2, nbar)
        closed = _gl_closed_form(a2, nbar, cutoff)
        mixture = _gl_mixture_quadrature(a2, nbar, cutoff)
        worst_routes = max(worst_routes, float(np.max(np.abs(closed - mixture))))
        glauber_lachs_pmf(GlauberLachsParams(a2, nbar))  # raises on internal disagreement
    coherent_limit = glauber_lachs_pmf(GlauberLachsParams(2.0, 0.0))
    coherent_ref = coherent_pmf(CoherentParams(2.0))
    thermal_limit = glauber_lachs_pmf(GlauberLachsParams(0.0, 1.5))
    thermal_ref = thermal_pmf(ThermalParams(1.5))
    limit_gap = max(
        float(np.max(np.abs(coherent_limit.probs - coherent_ref.probs))),
        float(np.max(np.abs(thermal_limit.probs - thermal_ref.probs))),
    )
    ok = worst_routes <= 1e-9 and limit_gap <= 1e-10
    detail = f"route gap {worst_routes:.3e} (tol 1e-9), limit gap {limit_gap:.3e} (tol 1e-10)"
    return _result(12, "glauber-lachs-consistency", ok, detail)


CRITERIA: tuple[tuple[int, str, Callable[[], CriterionResult]], ...] = (
    (1, "pbox-classical-w1", criterion_1),
    (2, "pbox-n-independence", criterion_2),
    (3, "pbox-parity-plateau", criterion_3),
    (4, "pbox-limit-law", criterion_4),
    (5, "photon-vacuum-w1", criterion_5),
    (6, "photon-vacuum-kl", criterion_6),
    (7, "coherent-shortcut", criterion_7),
    (8, "emd-oracle-equivalence", criterion_8),
    (9, "wp-metric-axioms", criterion_9),
    (10, "osc-asymptotics", criterion_10),
    (11, "blackbody-scaling", criterion_11),
    (12, "glauber-lachs-consistency", criterion_12),
)


def run_criterion(index: int) -> CriterionResult:
    for idx, name, fn in CRITERIA:
        if idx == index:
            try:
                return fn()
            except Exception as exc:  # a raising criterion is a failing criterion
                return _result(index, name, False, f"raised {type(exc).__name__}: {exc}")
    raise ValueError(f"unknown criterion {index}")


def run_all(indices: Optional[Iterable[int]] = None) -> list[CriterionResult]:
    wanted = sorted(set(indices)) if indices is not None else [idx for idx, _, _ in CRITERIA]
    return [run_criterion(i) for i in wanted]
