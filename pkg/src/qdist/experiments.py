"""Scan drivers that reproduce the published curves and tables.

Each driver takes an ExperimentSpec, walks the relevant parameter range
through the distance machinery, and returns an ExperimentTable carrying
numeric values, analytic references where they exist, deviations, and
any attached asymptotic fits.  Runs are deterministic: the same spec
yields a bit-identical table.  Rows are independent; set QDIST_THREADS
to compute them in a thread pool (order of assembly is fixed either
way).
"""

from __future__ import annotations

import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .distances import (
    kl_discrete,
    wasserstein1_discrete,
)
from .errors import ToleranceError
from .numerics import FitResult, fit_log_linear, fit_power_law
from .photon_states import StateDescriptor, parse_state_descriptor
from .wavefunctions import (
    BoxState,
    Representation,
    blackbody_w1,
    classical_box_cdf,
    osc_bhatt_vacuum,
    osc_kl_vacuum,
    osc_w1_vacuum,
    pbox_cdf,
    pbox_pair_w1,
    pbox_w1_classical,
)
from .distances import wasserstein1_cdf, wasserstein_p_quantile

__all__ = [
    "ExperimentSpec",
    "ExperimentTable",
    "run_pbox_scan",
    "run_osc_scan",
    "run_photon_table",
    "run_blackbody_scan",
    "DEFAULT_PHOTON_PAIRS",
]

_PI = math.pi

DEFAULT_PHOTON_PAIRS: tuple[tuple[str, str], ...] = (
    ("vacuum", "coherent:2.5"),
    ("vacuum", "squeezed:1"),
    ("vacuum", "thermal:2"),
    ("vacuum", "glauber_lachs:1,2"),
    ("coherent:4", "coherent:1"),
)


@dataclass(frozen=True)
class ExperimentSpec:
    """Parameter ranges and fit windows for one reproduction run."""

    experiment: str
    n_min: int = 1
    n_max: int = 20
    n_step: int = 1
    m: Optional[int] = None
    temperatures: tuple[float, ...] = (100.0, 200.0, 300.0, 500.0)
    state_pairs: tuple[tuple[str, str], ...] = DEFAULT_PHOTON_PAIRS
    w1_fit_window: tuple[int, int] = (50, 400)
    div_fit_window: tuple[int, int] = (10, 200)
    output_format: str = "csv"

    def __post_init__(self):
        if self.n_min < 0 or self.n_max < self.n_min or self.n_step < 1:
            raise ValueError(f"empty scan range [{self.n_min}, {self.n_max}] step {self.n_step}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.experiment == "osc":
            for window in (self.w1_fit_window, self.div_fit_window):
                if not (self.n_min <= window[0] < window[1] <= self.n_max):
                    raise ValueError(f"fit window {window} not inside [{self.n_min}, {self.n_max}]")

    def grid(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1, self.n_step))


@dataclass
class ExperimentTable:
    """Columns, rows and metadata of a finished run.

    ``rows`` hold numbers only; rows that describe state pairs get their
    text labels through the parallel ``row_labels`` list.  NaN marks a
    cell whose analytic reference the source material does not define.
    """

    name: str
    columns: tuple[tuple[str, str], ...]
    rows: list[list[float]]
    metadata: dict[str, str] = field(default_factory=dict)
    fits: dict[str, FitResult] = field(default_factory=dict)
    row_labels: Optional[list[str]] = None

    def __post_init__(self):
        arity = len(self.columns)
        for row in self.rows:
            if len(row) != arity:
                raise ValueError(f"row arity {len(row)} != column count {arity}")
        if self.row_labels is not None and len(self.row_labels) != len(self.rows):
            raise ValueError("row_labels must match the number of rows")

    def to_csv(self) -> str:
        out = io.StringIO()
        headers = [f"{label} ({unit})" if unit else label for label, unit in self.columns]
        if self.row_labels is not None:
            headers = ["pair"] + headers
        out.write(",".join(headers) + "\n")
        for i, row in enumerate(self.rows):
            cells = ["" if math.isnan(v) else f"{v:.16e}" for v in row]
            if self.row_labels is not None:
                cells = [self.row_labels[i]] + cells
            out.write(",".join(cells) + "\n")
        return out.getvalue()

    def to_json(self) -> str:
        payload = {
            "name": self.name,
            "columns": [{"label": label, "unit": unit} for label, unit in self.columns],
            "rows": [[None if math.isnan(v) else v for v in row] for row in self.rows],
            "metadata": self.metadata,
            "fits": {key: asdict(fit) for key, fit in self.fits.items()},
        }
        if self.row_labels is not None:
            payload["row_labels"] = self.row_labels
        return json.dumps(payload, indent=2)

    def render(self, output_format: str) -> str:
        if output_format == "csv":
            return self.to_csv()
        if output_format == "json":
            return self.to_json()
        raise ValueError(f"unknown output format {output_format!r}")


def _map_rows(fn: Callable, items: Sequence) -> list:
    workers = max(1, int(os.environ.get("QDIST_THREADS", "1") or "1"))
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _provenance(spec: ExperimentSpec) -> dict[str, str]:
    return {
        "experiment": spec.experiment,
        "generator": f"qdist {__version__}",
    }


def run_pbox_scan(spec: ExperimentSpec) -> ExperimentTable:
    """W_1 scans for the particle in a box.

    With ``m`` unset, compares every G_n against the classical CDF and
    reports W_1 and W_2 along with the analytic 1/(n pi^2); with ``m``
    set, scans W_1(G_m, G_n), attaching the analytic plateau value
    1/pi^2 on the even-n rows of the m = 1 scan.
    """
    grid = [n for n in spec.grid() if n >= 1]
    if not grid:
        raise ValueError("box scan needs quantum numbers >= 1")
    if spec.m is None:
        f_cl = classical_box_cdf()

        def row(n: int) -> list[float]:
            kinks = [k / (2 * n) for k in range(1, 2 * n)]
            w1 = wasserstein1_cdf(f_cl, pbox_cdf(BoxState(n)), split_points=kinks)
            w2 = wasserstein_p_quantile(f_cl, pbox_cdf(BoxState(n)), p=2.0)
            analytic = pbox_w1_classical(n, check=False)
            return [float(n), w1, w2, analytic, abs(w1 - analytic)]

        rows = _map_rows(row, grid)
        for r in rows:
            if r[4] > 1e-9:
                raise ToleranceError(f"classical box W1 deviation {r[4]:.3e} at n={int(r[0])}")
        columns = (
            ("n", "index"),
            ("w1", "box lengths"),
            ("w2", "box lengths"),
            ("w1_analytic", "box lengths"),
            ("deviation", "box lengths"),
        )
        meta = _provenance(spec) | {"mode": "classical", "tolerance": "1e-9"}
        return ExperimentTable("pbox_classical", columns, rows, metadata=meta)

    m = spec.m
    if m < 1:
        raise ValueError(f"reference state must have m >= 1, got {m}")

    def row(n: int) -> list[float]:
        w1 = pbox_pair_w1(m, n)
        if n == m:
            analytic = 0.0
        elif m == 1 and n % 2 == 0:
            analytic = 1.0 / _PI**2
        else:
            analytic = math.nan
        dev = abs(w1 - analytic) if not math.isnan(analytic) else math.nan
        return [float(n), w1, analytic, dev]

    rows = _map_rows(row, grid)
    for r in rows:
        if not math.isnan(r[3]) and r[3] > 1e-8:
            raise ToleranceError(f"box pair W1 deviation {r[3]:.3e} at n={int(r[0])}")
    columns = (
        ("n", "index"),
        ("w1", "box lengths"),
        ("w1_analytic", "box lengths"),
        ("deviation", "box lengths"),
    )
    meta = _provenance(spec) | {"mode": f"pair_m={m}", "tolerance": "1e-8"}
    return ExperimentTable(f"pbox_pair_m{m}", columns, rows, metadata=meta)


def run_osc_scan(spec: ExperimentSpec) -> ExperimentTable:
    """Oscillator vacuum-distance scan with attached asymptotic fits.

    Rows carry W_1, KL and Bhattacharyya against the vacuum for each n;
    the table's fits hold the power law for W_1 over ``w1_fit_window``
    and the a*ln(n)+b fits for the divergences over ``div_fit_window``.
    """
    grid = [n for n in spec.grid() if n >= 1]
    if not grid:
        raise ValueError("oscillator scan needs photon numbers >= 1")

    def row(n: int) -> list[float]:
        return [float(n), osc_w1_vacuum(n), osc_kl_vacuum(n), osc_bhatt_vacuum(n)]

    rows = _map_rows(row, grid)
    w1_lo, w1_hi = spec.w1_fit_window
    div_lo, div_hi = spec.div_fit_window
    w1_pts = [(int(r[0]), r[1]) for r in rows if w1_lo <= r[0] <= w1_hi]
    kl_pts = [(int(r[0]), r[2]) for r in rows if div_lo <= r[0] <= div_hi]
    b_pts = [(int(r[0]), r[3]) for r in rows if div_lo <= r[0] <= div_hi]
    fits = {}
    if len(w1_pts) >= 3:
        fits["w1_power_law"] = fit_power_law(w1_pts)
    if len(kl_pts) >= 3:
        fits["kl_log_linear"] = fit_log_linear(kl_pts)
    if len(b_pts) >= 3:
        fits["bhatt_log_linear"] = fit_log_linear(b_pts)
    columns = (
        ("n", "index"),
        ("w1", "quadrature units"),
        ("kl", "nats"),
        ("bhatt", "nats"),
    )
    meta = _provenance(spec) | {
        "w1_fit_window": f"{w1_lo}:{w1_hi}",
        "div_fit_window": f"{div_lo}:{div_hi}",
    }
    return ExperimentTable("osc_vacuum_scan", columns, rows, metadata=meta, fits=fits)


def _pair_references(a: StateDescriptor, b: StateDescriptor):
    """Analytic W_1 and KL references for a state pair, where known.

    Returns (w1_ref, kl_ref, kl_printed) with NaN for undefined entries.
    kl_printed carries the historically printed thermal value nbar + 1,
    which differs from the definitional ln(nbar + 1); rows carrying it
    are flagged rather than enforced.
    """

    def analytic_mean(d: StateDescriptor) -> float:
        if d.family == "vacuum":
            return 0.0
        if d.family == "fock":
            return float(d.params[0])
        if d.family == "coherent":
            return d.params[0]
        if d.family == "squeezed":
            return math.sinh(d.params[0]) ** 2
        if d.family == "thermal":
            return d.params[0]
        return d.params[0] + d.params[1]

    w1_ref = math.nan
    kl_ref = math.nan
    kl_printed = math.nan
    families = (a.family, b.family)
    if a.family == "vacuum" or (a.family == "fock" and a.params[0] == 0):
        w1_ref = analytic_mean(b)
        if b.family == "coherent":
            kl_ref = b.params[0]
        elif b.family == "squeezed":
            kl_ref = math.log(math.cosh(b.params[0]))
        elif b.family == "thermal":
            kl_ref = math.log1p(b.params[0])
            kl_printed = b.params[0] + 1.0
    elif families == ("fock", "fock"):
        w1_ref = abs(a.params[0] - b.params[0])
    elif families == ("coherent", "coherent"):
        w1_ref = abs(a.params[0] - b.params[0])
    return w1_ref, kl_ref, kl_printed


def run_photon_table(spec: ExperimentSpec) -> ExperimentTable:
    """Vacuum-distance and pair-distance table for photon statistics.

    Each row reports numeric W_1 and KL for one state pair next to the
    analytic values where the closed forms exist.  The thermal KL row
    also carries the historically printed nbar + 1 value, flagged in
    the last column instead of being enforced.
    """
    if not spec.state_pairs:
        raise ValueError("photon table needs at least one state pair")
    pairs = [
        (parse_state_descriptor(a), parse_state_descriptor(b)) for a, b in spec.state_pairs
    ]

    def row(pair):
        a, b = pair
        pa, pb = a.pmf(), b.pmf()
        w1 = wasserstein1_discrete(pa, pb)
        kl = kl_discrete(pa, pb)
        w1_ref, kl_ref, kl_printed = _pair_references(a, b)
        devs = []
        if not math.isnan(w1_ref):
            devs.append(abs(w1 - w1_ref))
        if not math.isnan(kl_ref):
            devs.append(abs(kl - kl_ref))
        deviation = max(devs) if devs else math.nan
        flag = 0.0 if math.isnan(kl_printed) else 1.0
        return [w1, w1_ref, kl, kl_ref, deviation, kl_printed, flag]

    rows = _map_rows(row, pairs)
    for r, (a, b) in zip(rows, pairs):
        if not math.isnan(r[1]) and abs(r[0] - r[1]) > 1e-8:
            raise ToleranceError(f"W1({a.label()}, {b.label()}) off by {abs(r[0] - r[1]):.3e}")
        if not math.isnan(r[3]) and abs(r[2] - r[3]) > 1e-10:
            raise ToleranceError(f"KL({a.label()}, {b.label()}) off by {abs(r[2] - r[3]):.3e}")
    columns = (
        ("w1", "photons"),
        ("w1_analytic", "photons"),
        ("kl", "nats"),
        ("kl_analytic", "nats"),
        ("deviation", "mixed"),
        ("kl_printed_reference", "nats"),
        ("printed_value_flagged", "bool"),
    )
    labels = [f"{a.label()} vs {b.label()}" for a, b in pairs]
    meta = _provenance(spec) | {
        "tolerances": "w1 1e-8, kl 1e-10",
        "note": "kl_printed_reference rows record a known discrepancy and are not enforced",
    }
    return ExperimentTable("photon_vacuum_table", columns, rows, metadata=meta, row_labels=labels)


def _origin_fit(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    """Slope through the origin and worst relative residual."""
    denom = float(np.dot(xs, xs))
    if denom == 0.0:
        return 0.0, 0.0
    slope = float(np.dot(xs, ys)) / denom
    scale = float(np.max(np.abs(ys))) or 1.0
    resid = float(np.max(np.abs(ys - slope * xs))) / scale
    return slope, resid


def run_blackbody_scan(spec: ExperimentSpec) -> ExperimentTable:
    """All-pairs blackbody W_1 in both spectral representations.

    Metadata reports the collinearity of the frequency-representation
    distances in |T1 - T2| and of the wavelength-representation
    distances in |1/T1 - 1/T2|.
    """
    temps = spec.temperatures
    if len(temps) < 2:
        raise ValueError("blackbody scan needs at least two temperatures")
    if any(t <= 0.0 for t in temps):
        raise ValueError("temperatures must be positive")
    pairs = [(temps[i], temps[j]) for i in range(len(temps)) for j in range(i + 1, len(temps))]

    def row(pair):
        t1, t2 = pair
        return [
            t1,
            t2,
            abs(t1 - t2),
            blackbody_w1(t1, t2, Representation.FREQUENCY),
            abs(1.0 / t1 - 1.0 / t2),
            blackbody_w1(t1, t2, Representation.WAVELENGTH),
        ]

    rows = _map_rows(row, pairs)
    arr = np.asarray(rows)
    freq_slope, freq_resid = _origin_fit(arr[:, 2], arr[:, 3])
    wave_slope, wave_resid = _origin_fit(arr[:, 4], arr[:, 5])
    columns = (
        ("t1", "K"),
        ("t2", "K"),
        ("abs_dT", "K"),
        ("w1_frequency", "Hz"),
        ("abs_d_invT", "1/K"),
        ("w1_wavelength", "m"),
    )
    meta = _provenance(spec) | {
        "frequency_slope_Hz_per_K": f"{freq_slope:.17g}",
        "frequency_collinearity_residual": f"{freq_resid:.17g}",
        "wavelength_slope_mK": f"{wave_slope:.17g}",
        "wavelength_collinearity_residual": f"{wave_resid:.17g}",
    }
    return ExperimentTable("blackbody_scan", columns, rows, metadata=meta)
