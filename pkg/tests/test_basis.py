import math

import numpy as np
import pytest

from kernapprox import (
    BasisContext,
    KernelParams,
    PoleEvaluationError,
    PoleSequence,
    basis_gram,
    chi,
    dzhrbashyan_residual,
    eval_blaschke,
    eval_phi,
    eval_tau,
    fourier_coeff,
)

from _helpers import random_poles


class TestChi:
    def test_pole_2i(self):
        # 1 + (2i)^2 = -3, so chi = |−3|/(−3) = −1
        assert chi(2j) == pytest.approx(-1.0, rel=1e-15)

    def test_degenerate_pole_i(self):
        assert chi(1j) == 1.0

    def test_off_axis_pole(self):
        expected = (1 - 2j) / math.sqrt(5)
        assert chi(1 + 1j) == pytest.approx(expected, rel=1e-15)

    def test_all_ones_convention(self):
        assert chi(2j, "all_ones") == 1.0
        assert chi(1 + 1j, "all_ones") == 1.0

    def test_unimodular(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            a = complex(rng.uniform(-5, 5), rng.uniform(0.1, 5))
            assert abs(abs(chi(a)) - 1.0) <= 1e-15

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            chi(1j, "bogus")
        with pytest.raises(ValueError):
            chi(1.0 - 1j)


class TestBlaschke:
    def test_first_product_is_one(self):
        ctx = BasisContext(PoleSequence((1j, 2j)))
        assert eval_blaschke(ctx, 1, 1.23 + 4j) == 1.0

    def test_two_pole_value(self):
        ctx = BasisContext(PoleSequence((1j,)), "all_ones")
        assert eval_blaschke(ctx, 2, 2j) == pytest.approx(1 / 3, rel=1e-15)

    def test_unimodular_on_real_axis(self):
        rng = np.random.default_rng(41)
        poles = random_poles(rng, 4, max_abs=5.0, min_im=0.1)
        ts = rng.uniform(-100.0, 100.0, size=1000)
        for convention in ("standard", "all_ones"):
            ctx = BasisContext(poles, convention)
            for j in range(1, poles.n + 2):
                vals = eval_blaschke(ctx, j, ts)
                assert np.max(np.abs(np.abs(vals) - 1.0)) < 1e-12

    def test_index_bounds(self):
        ctx = BasisContext(PoleSequence((1j, 2j)))
        with pytest.raises(ValueError):
            eval_blaschke(ctx, 0, 0.0)
        with pytest.raises(ValueError):
            eval_blaschke(ctx, 4, 0.0)

    def test_conjugated_pole_raises(self):
        ctx = BasisContext(PoleSequence((1j, 2j)))
        with pytest.raises(PoleEvaluationError):
            eval_blaschke(ctx, 3, -1j)


class TestPhi:
    def test_first_function_at_origin(self):
        ctx = BasisContext(PoleSequence((1j,)))
        assert eval_phi(ctx, 1, 0.0) == pytest.approx(-1j, rel=1e-15)

    def test_first_function_at_pole(self):
        ctx = BasisContext(PoleSequence((1j,)))
        assert eval_phi(ctx, 1, 1j) == pytest.approx(-0.5j, rel=1e-15)

    def test_second_function_vanishes_at_first_pole(self):
        ctx = BasisContext(PoleSequence((1j, 2j)), "all_ones")
        assert eval_phi(ctx, 2, 1j) == 0.0

    def test_index_bounds(self):
        ctx = BasisContext(PoleSequence((1j,)))
        with pytest.raises(ValueError):
            eval_phi(ctx, 2, 0.0)

    def test_conjugated_pole_raises(self):
        ctx = BasisContext(PoleSequence((1j,)))
        with pytest.raises(PoleEvaluationError):
            eval_phi(ctx, 1, -1j)


class TestDzhrbashyan:
    def test_worked_single_pole(self):
        # poles {i}, m=1, z = zeta = i: LHS = RHS = 1/4
        ctx = BasisContext(PoleSequence((1j,)))
        lhs = 1.0 / (2j * ((1j).conjugate() - 1j))
        assert lhs == pytest.approx(0.25, rel=1e-15)
        assert abs(eval_phi(ctx, 1, 1j)) ** 2 == pytest.approx(0.25, rel=1e-15)
        assert eval_blaschke(ctx, 2, 1j) == 0.0
        assert dzhrbashyan_residual(ctx, 1j, 1j, 1) <= 1e-15

    def test_random_draws_both_conventions(self):
        rng = np.random.default_rng(101)
        poles = PoleSequence((1j, 1 + 2j))
        for convention in ("standard", "all_ones"):
            ctx = BasisContext(poles, convention)
            for _ in range(100):
                z = complex(rng.uniform(-4, 4), rng.uniform(0.1, 4))
                zeta = complex(rng.uniform(-4, 4), rng.uniform(0.1, 4))
                m = int(rng.integers(1, 3))
                lhs = abs(1.0 / (2j * (zeta.conjugate() - z)))
                assert dzhrbashyan_residual(ctx, z, zeta, m) < 1e-10 * (1.0 + lhs)

    def test_order_zero_rejected(self):
        ctx = BasisContext(PoleSequence((1j,)))
        with pytest.raises(ValueError):
            dzhrbashyan_residual(ctx, 2j, 1 + 1j, 0)

    def test_conjugate_pair_rejected(self):
        ctx = BasisContext(PoleSequence((1j,)))
        with pytest.raises(ValueError):
            dzhrbashyan_residual(ctx, 0.5 - 1j, 0.5 + 1j, 1)


class TestOrthonormality:
    def test_small_gram_is_identity(self):
        rng = np.random.default_rng(77)
        poles = random_poles(rng, 3, max_abs=3.0, min_im=0.3)
        for convention in ("standard", "all_ones"):
            gram = basis_gram(BasisContext(poles, convention))
            assert np.max(np.abs(gram - np.eye(3))) < 1e-8

    def test_projection_is_convention_free(self):
        # each term hat f(j) Phi_j(z) is invariant under unimodular rescaling
        params = KernelParams(1.0, -0.5, 1.0, 1)
        poles = PoleSequence((0.5 + 1j, -0.3 + 0.8j))
        z = 0.4 + 1.7j
        sums = {}
        for convention in ("standard", "all_ones"):
            ctx = BasisContext(poles, convention)
            sums[convention] = sum(
                fourier_coeff(params, ctx, j) * eval_phi(ctx, j, z) for j in (1, 2)
            )
        assert abs(sums["standard"] - sums["all_ones"]) < 1e-10


def test_context_validation():
    with pytest.raises(ValueError):
        BasisContext(PoleSequence((1j,)), "nope")


def test_blaschke_modulus_interior():
    # |B_j| < 1 strictly inside the upper half-plane
    ctx = BasisContext(PoleSequence((1j, 1 + 1j)))
    assert abs(eval_blaschke(ctx, 3, 0.3 + 2j)) < 1.0
    # product structure: B_3 = chi1*chi2 * tau(z, a)/tau(z, conj a)
    z = 0.3 + 2j
    expected = (
        chi(1j) * chi(1 + 1j) * eval_tau(z, (1j, 1 + 1j)) / eval_tau(z, (-1j, 1 - 1j))
    )
    assert eval_blaschke(ctx, 3, z) == pytest.approx(expected, rel=1e-14)
