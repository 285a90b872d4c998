import math

import numpy as np
import pytest

from conftest import random_density, random_pure_density
from qdist import (
    DensityOperator,
    bures_uhlmann,
    cat,
    coherent,
    evaluate_metric,
    fock,
    hilbert_schmidt,
    hs_bounds,
    hs_from_moments,
    identity_polarization,
    jmg_distance,
    modified_hs,
    moment_table,
    number_polarization,
    outer,
    polarized,
    polarized_sqrt,
    pure_state_distance,
    quasidistance_Da,
    quasidistance_DZ,
    thermal,
)
from qdist.errors import StateValidationError, UnsupportedCombinationError

SQRT2 = math.sqrt(2.0)


class TestPureStateDistance:
    def test_global_phase_invariance(self):
        v = coherent(0.9 + 0.4j, 48)
        w = type(v)(v.amp * np.exp(1.7j))
        for kind in ("fubini_study", "minimal", "wootters"):
            assert pure_state_distance(v, w, kind) == pytest.approx(0.0, abs=1e-7)

    def test_orthogonal_pair(self):
        a, b = fock(0, 8), fock(1, 8)
        assert pure_state_distance(a, b, "fubini_study") == pytest.approx(SQRT2, abs=1e-12)
        assert pure_state_distance(a, b, "wootters") == pytest.approx(math.pi / 2, abs=1e-12)

    def test_coherent_pair_overlap_formula(self):
        # |<a|b>|^2 = exp(-|a-b|^2) gives d_FS = sqrt(2(1 - e^{-1}))
        d = pure_state_distance(coherent(0.0, 32), coherent(1.0, 32), "fubini_study")
        assert d == pytest.approx(math.sqrt(2.0 * (1.0 - math.exp(-1.0))), abs=1e-10)


class TestHilbertSchmidt:
    def test_identical(self):
        rho = thermal(1.0, 64)
        assert hilbert_schmidt(rho, rho) == 0.0

    def test_orthogonal_pure_maximum(self):
        assert hilbert_schmidt(outer(fock(0, 8)), outer(fock(3, 8))) == pytest.approx(
            SQRT2, abs=1e-12
        )

    def test_thermal_vacuum(self):
        # nbar sqrt(2) / sqrt((1+nbar)(1+2nbar)) at nbar = 1
        d = hilbert_schmidt(thermal(1.0, 64), outer(fock(0, 64)))
        assert d == pytest.approx(SQRT2 / math.sqrt(6.0), abs=1e-10)


class TestJMG:
    def test_identical(self):
        rho = thermal(0.5, 48)
        assert jmg_distance(rho, rho) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_pure(self):
        assert jmg_distance(outer(fock(0, 4)), outer(fock(1, 4))) == pytest.approx(1.0, abs=1e-12)

    def test_coherent_pair(self):
        a, b = 0.3, 1.1
        d = jmg_distance(outer(coherent(a, 32)), outer(coherent(b, 32)))
        assert d == pytest.approx(math.sqrt(1.0 - math.exp(-abs(a - b) ** 2)), abs=1e-12)


class TestBuresUhlmann:
    def test_pure_pair_equals_minimal(self, rng):
        for _ in range(10):
            a = random_pure_density(rng, 12)
            b = random_pure_density(rng, 12)
            ov = abs(np.trace(a.mat @ b.mat).real) ** 0.5
            expect = math.sqrt(max(2.0 * (1.0 - ov), 0.0))
            assert bures_uhlmann(a, b) == pytest.approx(expect, abs=1e-8)

    def test_pure_vs_mixed(self, rng):
        psi = coherent(0.8, 48)
        rho = thermal(0.6, 48)
        fid = np.vdot(psi.amp, rho.mat @ psi.amp).real
        expect = SQRT2 * math.sqrt(1.0 - math.sqrt(fid))
        assert bures_uhlmann(outer(psi), rho) == pytest.approx(expect, abs=1e-10)

    def test_thermal_vacuum_value(self):
        d = bures_uhlmann(thermal(1.0, 64), outer(fock(0, 64)))
        expect = SQRT2 / math.sqrt(math.sqrt(2.0) * (1.0 + math.sqrt(2.0)))
        assert d == pytest.approx(expect, abs=1e-10)
        assert expect == pytest.approx(0.76537, abs=5e-6)

    def test_symmetry(self, rng):
        a, b = random_density(rng, 10), random_density(rng, 10)
        assert abs(bures_uhlmann(a, b) - bures_uhlmann(b, a)) <= 1e-8


class TestModifiedHS:
    def test_p_one_is_hilbert_schmidt(self, rng):
        a, b = random_density(rng, 8), random_density(rng, 8)
        assert modified_hs(a, b, 1.0) == pytest.approx(hilbert_schmidt(a, b), abs=1e-12)

    def test_commuting_pair_matches_bures(self):
        a, b = thermal(0.8, 96), thermal(2.0, 96)
        assert modified_hs(a, b, 0.5) == pytest.approx(bures_uhlmann(a, b), abs=1e-10)

    def test_pure_vs_mixed_upper_bound(self, rng):
        # sqrt(2(1 - <psi|rho|psi>)) bounds the p = 1/2 distance from
        # above (it is not an equality: rho = I/2 against |0> gives
        # sqrt(2 - sqrt(2)) on the left and 1 on the right)
        half = DensityOperator(np.eye(2, dtype=complex) / 2.0)
        e0 = DensityOperator(np.diag([1.0, 0.0]).astype(complex))
        assert modified_hs(e0, half, 0.5) == pytest.approx(math.sqrt(2.0 - SQRT2), abs=1e-12)
        for _ in range(20):
            pure = random_pure_density(rng, 8)
            mixed = random_density(rng, 8)
            bound = SQRT2 * math.sqrt(1.0 - np.trace(pure.mat @ mixed.mat).real)
            assert modified_hs(pure, mixed, 0.5) <= bound + 1e-10

    def test_p_out_of_range(self, rng):
        a = random_density(rng, 4)
        with pytest.raises(StateValidationError):
            modified_hs(a, a, 0.0)


class TestPolarized:
    def test_identity_reduces_to_hs(self, rng):
        for _ in range(20):
            a, b = random_density(rng, 12), random_density(rng, 12)
            z = identity_polarization(12)
            assert polarized(a, b, z) == pytest.approx(hilbert_schmidt(a, b), abs=1e-10)

    def test_fock_pair(self):
        z = number_polarization(16)
        d = polarized(outer(fock(2, 16)), outer(fock(5, 16)), z)
        assert d == pytest.approx(math.sqrt(7.0), abs=1e-12)

    def test_coherent_vs_vacuum(self):
        alpha = 1.3
        dim = 48
        d = polarized(outer(coherent(alpha, dim)), outer(fock(0, dim)), number_polarization(dim))
        assert d == pytest.approx(alpha, abs=1e-10)


class TestPolarizedSqrt:
    def test_identical(self):
        rho = thermal(1.5, 96)
        assert polarized_sqrt(rho, rho, number_polarization(96)) == 0.0

    def test_thermal_vs_vacuum(self):
        nbar, dim = 1.5, 96
        d = polarized_sqrt(thermal(nbar, dim), outer(fock(0, dim)), number_polarization(dim))
        assert d == pytest.approx(math.sqrt(nbar), abs=1e-9)

    def test_thermal_pair_value(self):
        # sqrt(3 - 2 sqrt(2) ((sqrt6 + sqrt2)/4)^2) for mean photon numbers 1 and 2
        dim = 128
        d = polarized_sqrt(thermal(1.0, dim), thermal(2.0, dim), number_polarization(dim))
        expect = math.sqrt(3.0 - 2.0 * SQRT2 * ((math.sqrt(6.0) + SQRT2) / 4.0) ** 2)
        assert d == pytest.approx(expect, abs=1e-8)

    def test_matches_polarized_for_pure_pairs(self, rng):
        z = number_polarization(32)
        a, b = outer(coherent(0.7, 32)), outer(coherent(-0.2 + 0.5j, 32))
        assert polarized_sqrt(a, b, z) == pytest.approx(polarized(a, b, z), abs=1e-8)


class TestQuasidistances:
    def test_dz_fock_pairs(self):
        z = number_polarization(16)
        for m, n in [(4, 1), (0, 3), (2, 2)]:
            d = quasidistance_DZ(outer(fock(m, 16)), outer(fock(n, 16)), z)
            expect = abs(math.sqrt(m) - math.sqrt(n)) / SQRT2
            assert d == pytest.approx(expect, abs=1e-12)
        assert quasidistance_DZ(outer(fock(4, 16)), outer(fock(1, 16)), z) == pytest.approx(
            1.0 / SQRT2, abs=1e-12
        )

    def test_dz_identical_is_zero(self):
        rho = thermal(0.7, 48)
        assert quasidistance_DZ(rho, rho, number_polarization(48)) == 0.0

    def test_da_coherent_pair(self):
        a, b = 0.2 + 0.4j, 1.0 - 0.3j
        s = abs(a - b)
        d = quasidistance_Da(outer(coherent(a, 48)), outer(coherent(b, 48)))
        expect = s * math.sqrt((1.0 + math.exp(-s * s)) / 2.0)
        assert d == pytest.approx(expect, abs=1e-10)

    def test_da_unit_gap_value(self):
        d = quasidistance_Da(outer(coherent(0.0, 32)), outer(coherent(1.0, 32)))
        assert d == pytest.approx(math.sqrt((1.0 + math.exp(-1.0)) / 2.0), abs=1e-10)
        assert d == pytest.approx(0.8270, abs=5e-5)

    def test_da_identical_is_zero(self):
        rho = outer(coherent(0.5, 32))
        assert quasidistance_Da(rho, rho) == 0.0

    def test_dz_nonnegative_random(self, rng):
        z = number_polarization(10)
        for _ in range(100):
            a, b = random_density(rng, 10), random_density(rng, 10)
            assert quasidistance_DZ(a, b, z) >= 0.0


class TestMomentSeries:
    def test_identical_tables_vanish(self):
        t = moment_table(outer(coherent(0.6, 48)), 12)
        d, partials = hs_from_moments(t, t, 12)
        assert d == 0.0
        assert np.abs(partials).max() == 0.0

    def test_fock_pair_closes_at_order_two(self):
        ta = moment_table(outer(fock(0, 24)), 4)
        tb = moment_table(outer(fock(1, 24)), 4)
        d, partials = hs_from_moments(ta, tb, 4)
        assert partials[1] == pytest.approx(0.0, abs=1e-12)
        assert partials[2] == pytest.approx(2.0, abs=1e-12)  # squared distance
        assert partials[4] == pytest.approx(2.0, abs=1e-12)
        assert d == pytest.approx(SQRT2, abs=1e-12)

    def test_coherent_pair_converges_to_closed_form(self):
        a, b = 0.3, 1.0
        dim = 64
        ta = moment_table(outer(coherent(a, dim)), 30)
        tb = moment_table(outer(coherent(b, dim)), 30)
        d, partials = hs_from_moments(ta, tb, 30)
        expect = math.sqrt(2.0 * (1.0 - math.exp(-abs(a - b) ** 2)))
        assert abs(d - expect) < 1e-10
        assert abs(partials[-1] - expect**2) < 1e-10

    def test_partial_sums_match_literal_coefficient_loop(self):
        # brute-force oracle: evaluate the order-by-order coefficient
        # (-1)^(s+k+l) s! / (k!(s-k)! l!(s-l)!) term by term
        ta = moment_table(outer(coherent(0.4 + 0.2j, 32)), 8)
        tb = moment_table(outer(cat(0.7, 0.9, 32)), 8)
        dm = ta.m - tb.m
        brute = []
        total = 0.0
        for s in range(9):
            acc = 0.0
            for k in range(s + 1):
                for l in range(s + 1):
                    coeff = (-1.0) ** (s + k + l) * math.factorial(s) / (
                        math.factorial(k)
                        * math.factorial(s - k)
                        * math.factorial(l)
                        * math.factorial(s - l)
                    )
                    acc += (coeff * dm[k, l] * dm[s - k, s - l]).real
            total += acc
            brute.append(total)
        _, partials = hs_from_moments(ta, tb, 8)
        assert np.abs(np.array(brute) - partials).max() < 1e-12


class TestBounds:
    def test_vacuum_reference(self):
        rho = outer(fock(0, 16))
        b = hs_bounds(rho, 0)
        assert b.b0 == pytest.approx(0.0, abs=1e-12)
        assert b.bn >= 0.0 and b.bvar >= 0.0

    def test_thermal_bound_zero(self):
        rho = thermal(0.1, 32)
        b = hs_bounds(rho, 0)
        assert b.b0 == pytest.approx(math.sqrt(0.2), abs=1e-10)
        assert b.b0 >= hilbert_schmidt(rho, outer(fock(0, 32)))

    def test_coherent_variance_bound(self):
        dim = 48
        rho = outer(coherent(1.0, dim))
        b = hs_bounds(rho, 1)
        assert b.bvar == pytest.approx(SQRT2, abs=1e-9)  # sigma = 1, nbar = 1
        assert b.bvar >= hilbert_schmidt(rho, outer(fock(1, dim)))


class TestMetricAxiomsSample:
    # a quick fuzz here; the full 500-triple corpus runs in the acceptance suite
    def test_symmetry_and_triangle(self, rng):
        z = None
        for _ in range(60):
            dim = int(rng.integers(4, 17))
            a, b, c = (random_density(rng, dim) for _ in range(3))
            zn = number_polarization(dim)
            metrics = [
                hilbert_schmidt,
                jmg_distance,
                bures_uhlmann,
                lambda x, y: modified_hs(x, y, 0.5),
                lambda x, y: polarized(x, y, zn),
                lambda x, y: polarized_sqrt(x, y, zn),
            ]
            for m in metrics:
                assert abs(m(a, b) - m(b, a)) <= 1e-10
                assert m(a, c) <= m(a, b) + m(b, c) + 1e-9

    def test_puremix_upper_bound(self, rng):
        for _ in range(50):
            dim = int(rng.integers(4, 17))
            pure = random_pure_density(rng, dim)
            mixed = random_density(rng, dim)
            bound = SQRT2 * math.sqrt(max(1.0 - np.trace(pure.mat @ mixed.mat).real, 0.0))
            assert hilbert_schmidt(pure, mixed) <= bound + 1e-10


class TestDispatch:
    def test_pure_only_metrics_reject_mixed(self):
        with pytest.raises(UnsupportedCombinationError):
            evaluate_metric("fs", thermal(1.0, 48), fock(0, 48))

    def test_named_power(self):
        a, b = thermal(0.5, 64), thermal(1.5, 64)
        r = evaluate_metric("hs-p:1.0", a, b)
        assert r.value == pytest.approx(hilbert_schmidt(a, b), abs=1e-12)

    def test_unknown_metric(self):
        with pytest.raises(StateValidationError):
            evaluate_metric("nope", fock(0, 4), fock(1, 4))
