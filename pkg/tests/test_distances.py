import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdist.distances import (
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
from qdist.errors import DominanceError
from qdist.numerics import Interval
from qdist.photon_states import (
    CoherentParams,
    SqueezeParams,
    ThermalParams,
    coherent_pmf,
    fock_pmf,
    squeezed_vacuum_pmf,
    thermal_pmf,
)
from qdist.wavefunctions import BoxState, classical_box_cdf, classical_box_pdf, pbox_cdf, pbox_pdf

LN2 = math.log(2.0)


def _uniform_density(lo, hi):
    width = hi - lo
    return Density1D(
        pdf=lambda x: 1.0 / width if lo <= x <= hi else 0.0,
        support=Interval(lo, hi),
        normalization_checked=True,
    )


class TestDiscretePmfType:
    def test_immutable_and_validated(self):
        pmf = DiscretePmf([0.25, 0.75])
        with pytest.raises(AttributeError):
            pmf.tail_bound = 0.5
        with pytest.raises(ValueError):
            pmf.probs[0] = 1.0

    def test_mass_accounting(self):
        with pytest.raises(ValueError):
            DiscretePmf([0.5, 0.4])
        with pytest.raises(ValueError):
            DiscretePmf([0.5, 0.5], tail_bound=1e-6)
        with pytest.raises(ValueError):
            DiscretePmf([-0.1, 1.1])

    def test_cumulative_and_mean(self):
        pmf = DiscretePmf([0.2, 0.3, 0.5])
        assert np.allclose(pmf.cumulative(), [0.2, 0.5, 1.0])
        assert pmf.mean() == pytest.approx(1.3)


class TestContinuousKl:
    def test_identity(self):
        g = pbox_pdf(BoxState(3))
        zeros = [k / 3 for k in range(1, 3)]
        assert kl_continuous(g, g, split_points=zeros) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("n", [1, 5, 20])
    def test_uniform_vs_state_directions(self, n):
        zeros = [k / n for k in range(1, n)]
        uniform = classical_box_pdf()
        state = pbox_pdf(BoxState(n))
        assert kl_continuous(uniform, state, split_points=zeros) == pytest.approx(LN2, abs=1e-8)
        assert kl_continuous(state, uniform, split_points=zeros) == pytest.approx(
            1.0 - LN2, abs=1e-8
        )

    def test_asymmetry(self):
        uniform = classical_box_pdf()
        state = pbox_pdf(BoxState(4))
        zeros = [k / 4 for k in range(1, 4)]
        forward = kl_continuous(uniform, state, split_points=zeros)
        backward = kl_continuous(state, uniform, split_points=zeros)
        assert abs(forward - backward) > 0.3

    def test_support_mismatch_divergent(self):
        wide = _uniform_density(0.0, 1.0)
        narrow = _uniform_density(0.0, 0.5)
        assert kl_continuous(wide, narrow) == DIVERGENT
        assert kl_continuous(narrow, wide) < math.inf


class TestContinuousBhattacharyya:
    def test_identity_and_symmetry(self):
        f = pbox_pdf(BoxState(2))
        zeros = [0.5]
        assert bhattacharyya_continuous(f, f, split_points=zeros) == pytest.approx(0.0, abs=1e-10)
        g = classical_box_pdf()
        assert bhattacharyya_continuous(f, g, split_points=zeros) == pytest.approx(
            bhattacharyya_continuous(g, f, split_points=zeros), abs=1e-14
        )

    @pytest.mark.parametrize("n", [1, 5, 20])
    def test_uniform_vs_state_value(self, n):
        zeros = [k / n for k in range(1, n)]
        val = bhattacharyya_continuous(classical_box_pdf(), pbox_pdf(BoxState(n)), split_points=zeros)
        assert val == pytest.approx(math.log(math.pi / math.sqrt(8.0)), abs=1e-8)

    def test_disjoint_supports_divergent(self):
        assert bhattacharyya_continuous(_uniform_density(0, 1), _uniform_density(2, 3)) == DIVERGENT


class TestWassersteinContinuous:
    def test_identity(self):
        g = pbox_cdf(BoxState(2))
        assert wasserstein_p_quantile(g, g, p=1.0) == pytest.approx(0.0, abs=1e-12)
        assert wasserstein1_cdf(g, g) == pytest.approx(0.0, abs=1e-12)

    def test_classical_vs_ground_state(self):
        val = wasserstein_p_quantile(classical_box_cdf(), pbox_cdf(BoxState(1)), p=1.0)
        assert val == pytest.approx(1.0 / math.pi**2, abs=1e-8)

    def test_cdf_area_values(self):
        f_cl = classical_box_cdf()
        kinks = [k / 4 for k in range(1, 4)]
        assert wasserstein1_cdf(f_cl, pbox_cdf(BoxState(2)), split_points=kinks) == pytest.approx(
            1.0 / (2.0 * math.pi**2), abs=1e-10
        )

    def test_order_below_one_rejected(self):
        g = pbox_cdf(BoxState(1))
        with pytest.raises(ValueError):
            wasserstein_p_quantile(g, classical_box_cdf(), p=0.5)

    def test_quantile_and_cdf_routes_agree(self):
        # spot pairs; the acceptance suite covers the full random sweep
        rng = np.random.default_rng(7)
        pool = [classical_box_cdf()] + [pbox_cdf(BoxState(n)) for n in range(1, 13)]
        worst = 0.0
        for _ in range(50):
            i, j = rng.choice(len(pool), size=2, replace=False)
            F, G = pool[int(i)], pool[int(j)]
            splits = sorted(set(F.quantile_breakpoints) | set(G.quantile_breakpoints))
            gap = abs(
                wasserstein_p_quantile(F, G, p=1.0)
                - wasserstein1_cdf(F, G, split_points=splits)
            )
            worst = max(worst, gap)
        assert worst < 1e-7


class TestDiscreteKl:
    def test_identity(self):
        p = coherent_pmf(CoherentParams(1.5))
        assert kl_discrete(p, p) == pytest.approx(0.0, abs=1e-14)

    def test_vacuum_vs_coherent(self):
        assert kl_discrete(fock_pmf(0), coherent_pmf(CoherentParams(2.5))) == pytest.approx(
            2.5, abs=1e-10
        )

    def test_vacuum_vs_squeezed(self):
        val = kl_discrete(fock_pmf(0), squeezed_vacuum_pmf(SqueezeParams(1.0)))
        assert val == pytest.approx(math.log(math.cosh(1.0)), abs=1e-10)

    def test_vacuum_vs_thermal_definitional(self):
        val = kl_discrete(fock_pmf(0), thermal_pmf(ThermalParams(2.0)))
        assert val == pytest.approx(math.log(3.0), abs=1e-10)

    def test_support_violation_sentinel(self):
        assert kl_discrete(fock_pmf(1), fock_pmf(0)) == DIVERGENT
        assert kl_discrete(DiscretePmf([0.5, 0.5]), DiscretePmf([1.0])) == DIVERGENT


class TestDiscreteBhattacharyya:
    def test_identity_and_symmetry(self):
        p = coherent_pmf(CoherentParams(1.0))
        q = thermal_pmf(ThermalParams(1.0))
        assert bhattacharyya_discrete(p, p) == pytest.approx(0.0, abs=1e-12)
        assert bhattacharyya_discrete(p, q) == bhattacharyya_discrete(q, p)

    def test_disjoint_support_sentinel(self):
        assert bhattacharyya_discrete(fock_pmf(0), fock_pmf(1)) == DIVERGENT

    def test_truncation_refinement_oracle(self):
        # rebuild both PMFs from raw formulas at two depths; the overlap
        # sum must have converged well past 1e-10 by depth 100
        from scipy.special import gammaln

        def raw_pair(depth):
            n = np.arange(depth)
            log_coh = -1.0 - gammaln(n + 1)
            log_th = -(n + 1.0) * math.log(2.0)
            return np.sum(np.exp(0.5 * (log_coh + log_th)))

        shallow, deep = raw_pair(100), raw_pair(200)
        assert abs(shallow - deep) < 1e-10
        val = bhattacharyya_discrete(coherent_pmf(CoherentParams(1.0)), thermal_pmf(ThermalParams(1.0)))
        assert val == pytest.approx(-math.log(deep), abs=1e-9)


class TestDiscreteW1:
    def test_fock_pair(self):
        assert wasserstein1_discrete(fock_pmf(3), fock_pmf(7)) == pytest.approx(4.0, abs=1e-14)

    def test_vacuum_vs_thermal(self):
        assert wasserstein1_discrete(fock_pmf(0), thermal_pmf(ThermalParams(2.0))) == pytest.approx(
            2.0, abs=1e-10
        )

    def test_vacuum_vs_squeezed(self):
        val = wasserstein1_discrete(fock_pmf(0), squeezed_vacuum_pmf(SqueezeParams(1.0)))
        assert val == pytest.approx(math.sinh(1.0) ** 2, abs=1e-10)


class TestDominance:
    def test_equality_reports_first(self):
        p = coherent_pmf(CoherentParams(2.0))
        report = check_dominance(p, p)
        assert report.dominant is Dominance.FIRST
        assert report.first_crossing is None

    def test_poisson_ordering(self):
        report = check_dominance(coherent_pmf(CoherentParams(1.0)), coherent_pmf(CoherentParams(4.0)))
        assert report.dominant is Dominance.FIRST
        reversed_report = check_dominance(
            coherent_pmf(CoherentParams(4.0)), coherent_pmf(CoherentParams(1.0))
        )
        assert reversed_report.dominant is Dominance.SECOND

    def test_interleaved_crossing(self):
        report = check_dominance(DiscretePmf([0.5, 0.0, 0.5]), DiscretePmf([0.0, 1.0, 0.0]))
        assert report.dominant is Dominance.NEITHER
        assert report.first_crossing == 1

    def test_roundoff_ties_do_not_cross(self):
        p = DiscretePmf([0.5, 0.5])
        q = DiscretePmf([0.5 + 5e-15, 0.5 - 5e-15])
        assert check_dominance(p, q).dominant is not Dominance.NEITHER

    def test_report_invariant(self):
        with pytest.raises(ValueError):
            DominanceReport(Dominance.FIRST, first_crossing=3)
        with pytest.raises(ValueError):
            DominanceReport(Dominance.NEITHER)


class TestMeanShortcut:
    def test_coherent_pair(self):
        val = mean_shortcut_w1(coherent_pmf(CoherentParams(4.0)), coherent_pmf(CoherentParams(1.0)))
        assert val == pytest.approx(3.0, abs=1e-10)

    def test_identity(self):
        p = thermal_pmf(ThermalParams(1.0))
        assert mean_shortcut_w1(p, p) == pytest.approx(0.0, abs=1e-14)

    def test_crossing_pair_rejected(self):
        p = DiscretePmf([0.5, 0.0, 0.5])
        q = DiscretePmf([0.0, 1.0, 0.0])
        with pytest.raises(DominanceError):
            mean_shortcut_w1(p, q)

    def test_matches_full_route_under_dominance(self):
        p = thermal_pmf(ThermalParams(0.5))
        q = thermal_pmf(ThermalParams(2.5))
        assert mean_shortcut_w1(p, q) == pytest.approx(wasserstein1_discrete(p, q), abs=1e-10)


@st.composite
def pmf_arrays(draw):
    length = draw(st.integers(min_value=1, max_value=64))
    vals = draw(
        st.lists(
            st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
            min_size=length,
            max_size=length,
        )
    )
    arr = np.asarray(vals)
    if arr.sum() == 0.0:
        arr[0] = 1.0
    return DiscretePmf(arr / arr.sum())


class TestEmdOracle:
    def test_unit_move(self):
        assert emd_oracle(DiscretePmf([1.0, 0.0]), DiscretePmf([0.0, 1.0])) == pytest.approx(1.0)

    def test_vacuum_vs_coherent(self):
        assert emd_oracle(fock_pmf(0), coherent_pmf(CoherentParams(2.0))) == pytest.approx(
            2.0, abs=1e-8
        )

    def test_length_cap(self):
        probs = np.zeros(10_001)
        probs[0] = 1.0
        with pytest.raises(ValueError):
            emd_oracle(DiscretePmf(probs), fock_pmf(0))

    @settings(max_examples=150, deadline=None)
    @given(p=pmf_arrays(), q=pmf_arrays())
    def test_matches_cumulative_route(self, p, q):
        assert abs(emd_oracle(p, q) - wasserstein1_discrete(p, q)) < 1e-12
