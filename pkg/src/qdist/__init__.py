"""Distances between 1-D probability distributions of quantum states of light.

Library surface:

- ``numerics``: adaptive quadrature, CDF inversion, Hermite functions,
  asymptotic fits.
- ``distances``: KL, Bhattacharyya and Wasserstein distances for
  continuous densities and truncated photon-number PMFs, plus the
  independent transport oracle and the CDF-dominance shortcut.
- ``photon_states``: Fock, coherent, squeezed-vacuum, thermal and
  Glauber-Lachs photon statistics with certified truncation.
- ``wavefunctions``: particle-in-a-box states, oscillator x-quadrature
  states, and Planck blackbody spectra with their closed-form distances.
- ``experiments``: deterministic scan drivers emitting CSV/JSON tables.
- ``acceptance``: the self-verification suite behind ``qdist selftest``.
"""

__version__ = "0.1.0"

from .distances import (
    DIVERGENT,
    Cdf1D,
    Density1D,
    DiscretePmf,
    Dominance,
    DominanceReport,
    bhattacharyya_continuous,
    bhattacharyya_discrete,
    check_dominance,
    emd_oracle,
    kl_continuous,
    kl_discrete,
    mean_shortcut_w1,
    wasserstein1_cdf,
    wasserstein1_discrete,
    wasserstein_p_quantile,
)
from .errors import (
    ConsistencyError,
    DominanceError,
    IntegrationError,
    ToleranceError,
    TruncationError,
)
from .numerics import (
    FitResult,
    Interval,
    QuadratureConfig,
    fit_log_linear,
    fit_power_law,
    hermite_psi,
    integrate_adaptive,
    invert_cdf,
)
from .photon_states import (
    CoherentParams,
    GlauberLachsParams,
    SqueezeParams,
    StateDescriptor,
    ThermalParams,
    coherent_pmf,
    fock_pmf,
    glauber_lachs_pmf,
    mean_photon,
    parse_state_descriptor,
    squeezed_vacuum_pmf,
    thermal_pmf,
    thermal_mean_from_temperature,
)
from .wavefunctions import (
    BlackbodyParams,
    BoxState,
    KlDirection,
    OscState,
    Representation,
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
    planck_pdf,
)
from .experiments import ExperimentSpec, ExperimentTable, run_blackbody_scan, run_osc_scan, run_pbox_scan, run_photon_table
