import math

import numpy as np
import pytest
from scipy.integrate import simpson
from scipy.special import gammaln

from qdist.errors import TruncationError
from qdist.photon_states import (
    CoherentParams,
    GlauberLachsParams,
    SqueezeParams,
    StateDescriptor,
    ThermalParams,
    _gl_closed_form,
    _gl_cutoff,
    _gl_mixture_quadrature,
    coherent_pmf,
    fock_pmf,
    glauber_lachs_pmf,
    mean_photon,
    parse_state_descriptor,
    squeezed_vacuum_pmf,
    thermal_pmf,
    thermal_mean_from_temperature,
)
from scipy import constants


ALL_GENERATORS = [
    lambda: fock_pmf(5),
    lambda: coherent_pmf(CoherentParams(0.5)),
    lambda: coherent_pmf(CoherentParams(7.3)),
    lambda: squeezed_vacuum_pmf(SqueezeParams(0.5)),
    lambda: squeezed_vacuum_pmf(SqueezeParams(2.0)),
    lambda: thermal_pmf(ThermalParams(1.0)),
    lambda: thermal_pmf(ThermalParams(4.5)),
    lambda: glauber_lachs_pmf(GlauberLachsParams(1.0, 2.0)),
]


@pytest.mark.parametrize("make", ALL_GENERATORS)
def test_mass_accounting_certified(make):
    pmf = make()
    assert abs(pmf.probs.sum() + pmf.tail_bound - 1.0) <= 1e-12
    assert pmf.tail_bound <= 1e-12


class TestParamValidation:
    @pytest.mark.parametrize(
        "cls,args",
        [
            (CoherentParams, (-0.1,)),
            (SqueezeParams, (-1.0,)),
            (ThermalParams, (-2.0,)),
            (GlauberLachsParams, (-1.0, 1.0)),
            (GlauberLachsParams, (1.0, -1.0)),
        ],
    )
    def test_negative_rejected(self, cls, args):
        with pytest.raises(ValueError):
            cls(*args)

    def test_fock_validation(self):
        with pytest.raises(ValueError):
            fock_pmf(-1)


class TestFock:
    def test_vacuum(self):
        pmf = fock_pmf(0)
        assert list(pmf.probs) == [1.0]
        assert pmf.tail_bound == 0.0

    def test_number_state(self):
        pmf = fock_pmf(5)
        assert pmf.probs[5] == 1.0
        assert pmf.probs.sum() == 1.0


class TestCoherent:
    def test_vacuum_limit(self):
        assert list(coherent_pmf(CoherentParams(0.0)).probs) == [1.0]

    def test_ground_probability(self):
        pmf = coherent_pmf(CoherentParams(1.0))
        assert pmf.probs[0] == pytest.approx(math.exp(-1.0), abs=1e-15)

    def test_mean_matches_parameter(self):
        pmf = coherent_pmf(CoherentParams(2.5))
        assert mean_photon(pmf) == pytest.approx(2.5, abs=1e-12)

    def test_poisson_shape(self):
        m = 3.7
        pmf = coherent_pmf(CoherentParams(m))
        n = np.arange(len(pmf))
        expected = np.exp(-m + n * math.log(m) - gammaln(n + 1))
        assert np.allclose(pmf.probs, expected, atol=1e-16)


class TestSqueezedVacuum:
    def test_vacuum_limit(self):
        assert list(squeezed_vacuum_pmf(SqueezeParams(0.0)).probs) == [1.0]

    def test_ground_probability(self):
        pmf = squeezed_vacuum_pmf(SqueezeParams(1.0))
        assert pmf.probs[0] == pytest.approx(1.0 / math.cosh(1.0), abs=1e-14)

    def test_mean_is_sinh_squared(self):
        for r in (0.5, 1.0):
            pmf = squeezed_vacuum_pmf(SqueezeParams(r))
            assert mean_photon(pmf) == pytest.approx(math.sinh(r) ** 2, abs=1e-10)

    def test_odd_mass_exactly_zero(self):
        pmf = squeezed_vacuum_pmf(SqueezeParams(1.3))
        assert np.all(pmf.probs[1::2] == 0.0)


class TestThermal:
    def test_vacuum_limit(self):
        assert list(thermal_pmf(ThermalParams(0.0)).probs) == [1.0]

    def test_geometric_shape_at_unit_mean(self):
        pmf = thermal_pmf(ThermalParams(1.0))
        n = np.arange(len(pmf))
        assert np.allclose(pmf.probs, 0.5 ** (n + 1.0), atol=1e-16)

    def test_exact_tail_certificate(self):
        nbar = 2.0
        pmf = thermal_pmf(ThermalParams(nbar))
        ratio = nbar / (nbar + 1.0)
        assert pmf.tail_bound == pytest.approx(ratio ** len(pmf), rel=1e-12)

    def test_cap_escalation(self):
        with pytest.raises(TruncationError):
            thermal_pmf(ThermalParams(1e9))

    def test_from_temperature(self):
        nu = 5e13
        t = constants.h * nu / (constants.k * math.log(2.0))
        params = ThermalParams.from_temperature(nu, t)
        assert params.mean_photons == pytest.approx(1.0, rel=1e-12)


class TestBoseEinsteinOccupation:
    def test_log2_point(self):
        nu = 1e12
        t = constants.h * nu / (constants.k * math.log(2.0))
        assert thermal_mean_from_temperature(nu, t) == pytest.approx(1.0, rel=1e-12)

    def test_unit_exponent(self):
        nu = 1e12
        t = constants.h * nu / constants.k
        assert thermal_mean_from_temperature(nu, t) == pytest.approx(
            1.0 / (math.e - 1.0), rel=1e-12
        )

    def test_frozen_limit(self):
        assert thermal_mean_from_temperature(1e15, 1.0) == pytest.approx(0.0, abs=1e-300)

    @pytest.mark.parametrize("nu,t", [(0.0, 300.0), (-1.0, 300.0), (1e12, 0.0), (1e12, -5.0)])
    def test_domain_errors(self, nu, t):
        with pytest.raises(ValueError):
            thermal_mean_from_temperature(nu, t)


def _gl_brute_force(a2, nbar, n, half_width=8.0, points=1601):
    """2-D Cartesian quadrature of the displaced-thermal mixture.

    Independent of both production routes: no radial reduction, no
    Laguerre form, plain Simpson on the complex plane.
    """
    a = math.sqrt(a2)
    x = np.linspace(-half_width, half_width, points)
    gx, gy = np.meshgrid(x, x, indexing="ij")
    r2 = gx * gx + gy * gy
    weight = np.exp(-((gx - a) ** 2 + gy**2) / nbar) / (math.pi * nbar)
    kernel = np.exp(-r2 + n * np.log(np.maximum(r2, 1e-300)) - gammaln(n + 1))
    return simpson(simpson(weight * kernel, x=x, axis=1), x=x)


class TestGlauberLachs:
    def test_thermal_limit_dispatch(self):
        gl = glauber_lachs_pmf(GlauberLachsParams(0.0, 1.5))
        th = thermal_pmf(ThermalParams(1.5))
        assert np.array_equal(gl.probs, th.probs)

    def test_coherent_limit_dispatch(self):
        gl = glauber_lachs_pmf(GlauberLachsParams(2.0, 0.0))
        coh = coherent_pmf(CoherentParams(2.0))
        assert np.array_equal(gl.probs, coh.probs)

    def test_near_limit_continuity(self):
        gl = glauber_lachs_pmf(GlauberLachsParams(2.0, 1e-6))
        coh = coherent_pmf(CoherentParams(2.0))
        m = min(len(gl), len(coh))
        assert np.max(np.abs(gl.probs[:m] - coh.probs[:m])) < 2e-5

    def test_mean_contract(self):
        gl = glauber_lachs_pmf(GlauberLachsParams(1.0, 2.0))
        assert mean_photon(gl) == pytest.approx(3.0, abs=1e-8)

    @pytest.mark.parametrize("a2,nbar", [(1.0, 2.0), (2.0, 0.5)])
    def test_internal_routes_agree(self, a2, nbar):
        cutoff, _ = _gl_cutoff(a2, nbar)
        closed = _gl_closed_form(a2, nbar, cutoff)
        mixture = _gl_mixture_quadrature(a2, nbar, cutoff)
        assert np.max(np.abs(closed - mixture)) <= 1e-9

    @pytest.mark.parametrize("n", [0, 3, 7])
    def test_against_cartesian_brute_force(self, n):
        closed = _gl_closed_form(1.0, 2.0, n + 1)[n]
        assert closed == pytest.approx(_gl_brute_force(1.0, 2.0, n), abs=1e-8)


class TestStateDescriptors:
    @pytest.mark.parametrize(
        "text,family,params",
        [
            ("vacuum", "vacuum", ()),
            ("fock:3", "fock", (3.0,)),
            ("coherent:2.5", "coherent", (2.5,)),
            ("squeezed:1", "squeezed", (1.0,)),
            ("thermal:0.7", "thermal", (0.7,)),
            ("glauber_lachs:1,2", "glauber_lachs", (1.0, 2.0)),
            ("  COHERENT:4 ", "coherent", (4.0,)),
        ],
    )
    def test_grammar(self, text, family, params):
        desc = parse_state_descriptor(text)
        assert desc.family == family
        assert desc.params == params

    def test_vacuum_is_ground_fock(self):
        assert np.array_equal(parse_state_descriptor("vacuum").pmf().probs, fock_pmf(0).probs)

    @pytest.mark.parametrize(
        "text",
        [
            "coherent:-1",
            "coherent",
            "coherent:1,2",
            "fock:1.5",
            "fock:-2",
            "laser:3",
            "glauber_lachs:1",
            "thermal:abc",
            "vacuum:1",
            "squeezed:inf",
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_state_descriptor(text)

    def test_labels_round_trip(self):
        desc = StateDescriptor("glauber_lachs", (1.0, 2.0))
        assert parse_state_descriptor(desc.label()) == desc
