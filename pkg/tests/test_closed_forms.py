import math

import numpy as np
import pytest

from qdist import (
    cat_distances,
    coherent_fock,
    coherent_pair,
    fock_pair,
    phase_pair,
    squeezed_pair,
    thermal_pair,
)
from qdist.errors import StateValidationError

SQRT2 = math.sqrt(2.0)


class TestCoherentPair:
    def test_equal_states_vanish(self):
        r = coherent_pair(0.7 + 0.2j, 0.7 + 0.2j)
        assert r["hs"] == 0.0 and r["dN"] == 0.0 and r["Da"] == 0.0

    def test_unit_gap_hs(self):
        assert coherent_pair(1.0, 0.0)["hs"] == pytest.approx(1.1243847729568, abs=1e-12)

    def test_orthogonal_displacements_give_geometric_dn(self):
        # Re(alpha conj(beta)) = 0 makes the N-distance the plane distance
        a, b = 1.2, 0.9j
        assert coherent_pair(a, b)["dN"] == pytest.approx(abs(a - b), abs=1e-12)

    def test_small_gap_hs_is_geometric(self):
        s = 1e-4
        assert coherent_pair(s, 0.0)["hs"] == pytest.approx(SQRT2 * s, rel=1e-6)


class TestCoherentFock:
    def test_hs_minimum_at_matching_energy(self):
        for m in (1, 2, 3):
            grid = np.linspace(0.05, 10.0, 400)
            vals = [coherent_fock(math.sqrt(s), m)["hs"] for s in grid]
            smin = grid[int(np.argmin(vals))]
            assert smin == pytest.approx(m, abs=0.05)

    def test_vacuum_vs_one_photon(self):
        r = coherent_fock(0.0, 1)
        assert r["hs"] == pytest.approx(SQRT2, abs=1e-12)
        assert r["dN"] == pytest.approx(1.0, abs=1e-12)

    def test_dn_monotone_only_above_one(self):
        grid = np.linspace(0.0, 10.0, 1001)
        for m, expect_min in [(1, True), (2, False), (3, False)]:
            vals = np.array([coherent_fock(math.sqrt(s), m)["dN"] for s in grid])
            has_interior_min = bool((np.diff(vals) < 0).any())
            assert has_interior_min == expect_min


class TestFockPair:
    def test_two_three(self):
        assert fock_pair(2, 3)["dN"] == pytest.approx(math.sqrt(5.0), abs=1e-12)

    def test_high_neighbours_quasidistance(self):
        assert fock_pair(100, 101)["DN"] == pytest.approx(0.035268, abs=1e-6)

    def test_diagonal_vanishes(self):
        r = fock_pair(7, 7)
        assert r["dN"] == 0.0 and r["DN"] == 0.0


class TestSqueezedPair:
    def test_vacuum_distance_matches_tau_form(self):
        z1 = math.tanh(1.0)
        r = squeezed_pair(z1, 0.0)
        expect = 2.0 * math.sinh(0.5) / math.sqrt(math.cosh(1.0))
        assert r["hs"] == pytest.approx(expect, abs=1e-12)
        assert expect == pytest.approx(0.83898, abs=5e-6)
        assert r["dN"] == pytest.approx(math.sinh(1.0), abs=1e-12)

    def test_same_phase_specializations_match_general(self):
        for t1, t2, phase in [(0.3, 0.0, 0.0), (1.0, 0.4, 1.3), (1.5, 0.7, -2.0)]:
            z1 = math.tanh(t1) * np.exp(1j * phase)
            z2 = math.tanh(t2) * np.exp(1j * phase)
            r = squeezed_pair(complex(z1), complex(z2))
            assert r["hs_samephase"] == pytest.approx(r["hs"], abs=1e-10)
            assert r["dN_samephase"] == pytest.approx(r["dN"], abs=1e-10)

    def test_weak_squeezing_limit(self):
        z1, z2 = 1e-3, -0.5e-3 + 0.7e-3j
        r = squeezed_pair(z1, z2)
        assert r["hs"] == pytest.approx(abs(z1 - z2), rel=1e-4)
        assert r["dN"] == pytest.approx(abs(z1 - z2), rel=1e-4)

    def test_modulus_bound(self):
        with pytest.raises(StateValidationError):
            squeezed_pair(1.0, 0.0)


class TestCatDistances:
    def test_equal_phases_vanish(self):
        r = cat_distances(1.0, 0.7, 0.7)
        assert r["d_between"] == 0.0 and r["dN_between"] == 0.0

    def test_large_alpha_phase_gap_limits(self):
        alpha, p1, p2 = 4.0, 0.4, 2.1
        r = cat_distances(alpha, p1, p2)
        assert r["d_between"] ** 2 == pytest.approx(
            2.0 * math.sin(abs(p1 - p2) / 2.0) ** 2, rel=1e-9
        )
        assert r["dN_between"] == pytest.approx(
            SQRT2 * alpha * math.sin(abs(p1 - p2) / 2.0), rel=1e-9
        )

    def test_odd_cat_orthogonal_to_vacuum(self):
        # the corrected vacuum formula must reach the orthogonal maximum
        for a2 in (0.3, 1.0, 2.5):
            r = cat_distances(math.sqrt(a2), math.pi, 0.0)
            assert r["d_to_vacuum"] == pytest.approx(SQRT2, abs=1e-12)

    def test_yurke_stoler_between_even_and_odd(self):
        alpha = 1.0
        d_even = cat_distances(alpha, 0.0, 0.0)["d_to_coherent"]
        d_ys = cat_distances(alpha, math.pi / 2.0, 0.0)["d_to_coherent"]
        d_odd = cat_distances(alpha, math.pi, 0.0)["d_to_coherent"]
        assert d_even < d_ys < d_odd


class TestPhasePair:
    def test_vacuum_distance(self):
        eps = 0.62 * np.exp(0.9j)
        r = phase_pair(complex(eps), 0.0)
        assert r["hs"] == pytest.approx(SQRT2 * abs(eps), abs=1e-12)
        assert r["dN"] == pytest.approx(abs(eps) / math.sqrt(1.0 - abs(eps) ** 2), abs=1e-12)

    def test_equal_states_vanish(self):
        r = phase_pair(0.4 + 0.2j, 0.4 + 0.2j)
        assert r["hs"] == 0.0 and r["dN"] == 0.0


class TestThermalPair:
    def test_vacuum_distance_and_limit(self):
        r = thermal_pair(1.0, 0.0)
        assert r["hs"] == pytest.approx(SQRT2 / math.sqrt(6.0), abs=1e-12)
        assert thermal_pair(1e6, 0.0)["hs"] == pytest.approx(1.0, rel=1e-5)

    def test_bures_limit_rate(self):
        # the vacuum distance approaches sqrt(2) from below at the slow
        # rate sqrt(2)/(2 sqrt(nbar)); the scaled deficit tends to 1/2
        assert thermal_pair(100.0, 0.0)["bu"] == pytest.approx(1.3420106415218929, abs=1e-12)
        for nbar in (1e4, 1e6, 1e8):
            deficit = (SQRT2 - thermal_pair(nbar, 0.0)["bu"]) / SQRT2
            assert deficit * math.sqrt(nbar) == pytest.approx(0.5, rel=0.01)

    def test_polarized_vacuum_limit(self):
        assert thermal_pair(4.0, 0.0)["dN"] == pytest.approx(4.0 / 9.0, abs=1e-12)
        assert thermal_pair(1e8, 0.0)["dN"] == pytest.approx(0.5, rel=1e-6)

    def test_sqrt_variant_vacuum(self):
        assert thermal_pair(2.5, 0.0)["dN_sqrt"] == pytest.approx(math.sqrt(2.5), abs=1e-12)

    def test_pseudothermal_minimum_dominates(self, rng):
        for _ in range(50):
            n1, n2 = rng.uniform(0.0, 8.0, size=2)
            r = thermal_pair(n1, n2)
            assert r["dN_min_pseudo"] >= r["dN_sqrt"] - 1e-12

    def test_large_nbar_bures_approximation(self):
        exact = thermal_pair(50.0, 100.0)["bu"]
        approx = thermal_pair(50.0, 100.0).approximations["bu_large"]
        assert abs(approx - exact) / exact < 0.05

    def test_close_gap_approximations(self):
        r = thermal_pair(100.0, 110.0)
        assert abs(r.approximations["dN_sqrt_close"] - r["dN_sqrt"]) / r["dN_sqrt"] < 0.01
        assert abs(r.approximations["dN_min_close"] - r["dN_min_pseudo"]) / r["dN_min_pseudo"] < 0.01

    def test_negative_nbar_rejected(self):
        with pytest.raises(StateValidationError):
            thermal_pair(-0.1, 1.0)


class TestCrossValidationAgainstPhaseStates:
    def test_min_pseudo_equals_aligned_phase_pair(self):
        # aligning the phase parameters realizes the minimum, which the
        # nbar-parametrized formula reproduces exactly
        for n1, n2 in [(3.0, 1.2), (0.5, 0.1), (8.0, 8.0)]:
            e1 = math.sqrt(n1 / (1.0 + n1))
            e2 = math.sqrt(n2 / (1.0 + n2))
            assert phase_pair(e1, e2)["dN"] == pytest.approx(
                thermal_pair(n1, n2)["dN_min_pseudo"], rel=1e-9, abs=1e-6
            )
