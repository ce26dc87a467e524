import cmath
import math

import numpy as np
import pytest

from phrictl.freqresp import (
    AdmittanceController,
    EquivalentImpedance,
    FractionalTerm,
    FractionalTransferFunction,
    controller_response,
    default_plant,
    effective_impedance,
    eval_fractional_power,
    eval_tf,
    make_log_grid,
)

TWO_PI = 2.0 * math.pi


class TestEvalFractionalPower:
    def test_integer_power_exact(self):
        assert eval_fractional_power(1.0, 2.0) == 2j

    def test_zeroth_power(self):
        assert eval_fractional_power(0.0, 7.3) == 1.0 + 0.0j

    def test_half_power(self):
        v = eval_fractional_power(0.5, 1.0)
        assert v == pytest.approx(complex(math.sqrt(2) / 2, math.sqrt(2) / 2))

    def test_magnitude_and_phase(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            beta = rng.uniform(0, 3)
            omega = 10 ** rng.uniform(-3, 4)
            v = eval_fractional_power(beta, omega)
            assert abs(v) == pytest.approx(omega**beta, rel=1e-12)
            expected_phase = beta * math.pi / 2
            assert cmath.phase(v) == pytest.approx(
                (expected_phase + math.pi) % (2 * math.pi) - math.pi, abs=1e-12
            )

    def test_rejects_nonpositive_omega(self):
        with pytest.raises(ValueError):
            eval_fractional_power(0.5, 0.0)
        with pytest.raises(ValueError):
            eval_fractional_power(0.5, -1.0)

    def test_vectorized(self):
        om = np.array([1.0, 2.0, 4.0])
        v = eval_fractional_power(1.0, om)
        np.testing.assert_allclose(v, 1j * om)


def tf(num, den):
    return FractionalTransferFunction(
        tuple(FractionalTerm(c, b) for c, b in num),
        tuple(FractionalTerm(c, b) for c, b in den),
    )


class TestEvalTf:
    def test_first_order_lag(self):
        assert eval_tf(tf([(1, 0)], [(1, 1), (1, 0)]), 1.0) == pytest.approx(0.5 - 0.5j)

    def test_differentiator(self):
        assert eval_tf(tf([(1, 1)], [(1, 0)]), 3.0) == 3j

    def test_impedance_resonance(self):
        # (s^2 + 2s + 4)/s at w=2: mass/spring parts cancel
        assert eval_tf(tf([(1, 2), (2, 1), (4, 0)], [(1, 1)]), 2.0) == pytest.approx(
            2.0 + 0.0j
        )

    def test_matches_polynomial_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            num = rng.uniform(-2, 2, size=3)
            den = rng.uniform(0.5, 2, size=4)
            f = tf(
                [(c, 2 - i) for i, c in enumerate(num)],
                [(c, 3 - i) for i, c in enumerate(den)],
            )
            for omega in 10 ** rng.uniform(-2, 2, size=5):
                expected = np.polyval(num, 1j * omega) / np.polyval(den, 1j * omega)
                assert eval_tf(f, omega) == pytest.approx(expected, rel=1e-12)

    def test_merges_duplicate_exponents(self):
        f = tf([(1, 1), (2, 1)], [(1, 0)])
        assert f.numerator == (FractionalTerm(3.0, 1.0),)

    def test_sorted_descending(self):
        f = tf([(4, 0), (1, 2), (2, 1)], [(1, 1)])
        assert [t.exponent for t in f.numerator] == [2.0, 1.0, 0.0]

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            tf([(1, 0)], [(0, 0)])


class TestAdmittanceController:
    def test_pure_integrator_response(self):
        assert controller_response(AdmittanceController(1, 1, 0), 1.0) == pytest.approx(
            -1j
        )

    def test_dc_limit_is_inverse_damping(self):
        ctrl = AdmittanceController(1, 3.2, 90)
        assert controller_response(ctrl, 1e-9) == pytest.approx(1 / 90, rel=1e-6)

    def test_fractional_direct_arithmetic(self):
        # oracle: direct complex arithmetic for alpha=0.5, m=2, b=1 at w=1
        expected = 1.0 / (1 + 2 * cmath.exp(1j * math.pi / 4))
        assert controller_response(
            AdmittanceController(0.5, 2, 1), 1.0
        ) == pytest.approx(expected, rel=1e-12)

    def test_ioac_limit_matches_rational_tf(self):
        grid = make_log_grid(TWO_PI * 0.01, TWO_PI * 30, 100)
        rng = np.random.default_rng(3)
        for _ in range(20):
            m_F, b_F = rng.uniform(0.2, 100), rng.uniform(0.001, 500)
            ctrl = AdmittanceController(1.0, m_F, b_F)
            rational = tf([(1, 0)], [(m_F, 1), (b_F, 0)])
            for omega in grid.points:
                y = controller_response(ctrl, omega)
                assert y == pytest.approx(eval_tf(rational, omega), rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            AdmittanceController(0.0, 1, 1)
        with pytest.raises(ValueError):
            AdmittanceController(1.2, 1, 1)
        with pytest.raises(ValueError):
            AdmittanceController(1.0, 0, 0)


class TestEffectiveImpedance:
    def test_integer_order_is_plain_mass_damper(self):
        for omega in (0.1, 1.0, 50.0):
            mass, damping = effective_impedance(
                AdmittanceController(1, 3.2, 90), omega
            )
            assert mass == pytest.approx(3.2)
            assert damping == pytest.approx(90, abs=1e-9)

    def test_half_order_analytic(self):
        mass, damping = effective_impedance(AdmittanceController(0.5, 2, 1), 1.0)
        assert mass == pytest.approx(math.sqrt(2))
        assert damping == pytest.approx(1 + math.sqrt(2))

    def test_reconstruction(self):
        ctrl = AdmittanceController(0.4, 16.7, 56)
        omega = TWO_PI
        mass, damping = effective_impedance(ctrl, omega)
        recon = damping + 1j * omega * mass
        direct = ctrl.m_F * eval_fractional_power(ctrl.alpha, omega) + ctrl.b_F
        assert abs(recon - direct) < 1e-9


class TestMakeLogGrid:
    def test_decade_points(self):
        grid = make_log_grid(1, 100, 3)
        np.testing.assert_allclose(grid.points, [1, 10, 100])

    def test_constant_ratio(self):
        grid = make_log_grid(TWO_PI * 0.01, TWO_PI * 30, 500)
        assert len(grid) == 500
        ratios = grid.points[1:] / grid.points[:-1]
        np.testing.assert_allclose(ratios, ratios[0], rtol=1e-9)

    def test_degenerate_range(self):
        with pytest.raises(ValueError):
            make_log_grid(1, 1, 2)
        with pytest.raises(ValueError):
            make_log_grid(0, 1, 10)


class TestDefaultPlant:
    def test_lag_corner(self):
        plant = default_plant()
        assert abs(plant.G(TWO_PI * 10)) == pytest.approx(1 / math.sqrt(2))

    def test_filter_unity_dc(self):
        plant = default_plant()
        assert abs(plant.H(1e-4)) == pytest.approx(1.0, rel=1e-6)

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            default_plant({"tau_r_s": 0})
        with pytest.raises(ValueError):
            default_plant({"filter_cutoff_hz": -5})

    def test_term_override(self):
        plant = default_plant(
            {
                "G_num": [{"c": 1, "beta": 0}],
                "G_den": [{"c": 1, "beta": 0}],
            }
        )
        assert plant.G(12.3) == 1.0 + 0.0j


class TestEquivalentImpedance:
    def test_direct_formula(self):
        z = EquivalentImpedance(5, 41, 600)
        omega = 3.0
        assert z(omega) == pytest.approx(41 + 1j * (5 * 3 - 600 / 3))

    def test_matches_tf_form(self):
        z = EquivalentImpedance(5, 41, 600)
        for omega in (0.1, 1.0, 20.0):
            assert z(omega) == pytest.approx(eval_tf(z.as_tf(), omega), rel=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            EquivalentImpedance(-1, 0, 0)
