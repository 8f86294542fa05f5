import numpy as np
import pytest

from kernapprox import PoleEvaluationError, nu, nu_bruteforce, nu_table

from _helpers import point_away_from, random_poles


def test_order_zero_is_one():
    assert nu(0, 3.1 + 0.5j, (1j, 2j)) == 1.0
    assert nu_bruteforce(0, 3.1 + 0.5j, (1j, 2j)) == 1.0


def test_order_one_example():
    # 1/(0 - i) + 1/(0 - 2i) = i + i/2
    assert nu(1, 0.0, (1j, 2j)) == pytest.approx(1.5j, rel=1e-15)


def test_order_two_example():
    # compositions (2,0), (1,1), (0,2) give -1 - 1/2 - 1/4
    assert nu(2, 0.0, (1j, 2j)) == pytest.approx(-1.75, rel=1e-15)
    assert nu_bruteforce(2, 0.0, (1j, 2j)) == pytest.approx(-1.75, rel=1e-15)


def test_single_point_is_pure_power():
    rng = np.random.default_rng(3)
    for _ in range(20):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        a = complex(rng.uniform(-3, 3), rng.uniform(0.2, 3))
        if abs(z - a) < 0.2:
            continue
        for k in range(9):
            expected = (z - a) ** (-k) if k else 1.0
            assert nu(k, z, (a,)) == pytest.approx(expected, rel=1e-13)


def test_single_composition_bruteforce():
    z, a = 1.0 + 2j, 0.5j
    assert nu_bruteforce(3, z, (a,)) == pytest.approx((z - a) ** -3, rel=1e-14)


def test_recurrence_matches_bruteforce():
    rng = np.random.default_rng(17)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        k = int(rng.integers(0, 9))
        poles = random_poles(rng, n, max_abs=4.0, min_im=0.1)
        z = point_away_from(rng, poles.poles, min_dist=0.1)
        fast = nu(k, z, poles.poles)
        slow = nu_bruteforce(k, z, poles.poles)
        assert abs(fast - slow) <= 1e-12 * (1.0 + abs(fast))


def test_generating_function_truncation():
    # sum_k nu_k w^k ~ prod_j (1 - w/(z - a_j))^(-1) for small w
    rng = np.random.default_rng(29)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        poles = random_poles(rng, n, max_abs=3.0, min_im=0.2)
        z = point_away_from(rng, poles.poles, min_dist=0.5)
        table = nu_table(8, z, poles.poles)
        radius = 0.05 * min(abs(z - a) for a in poles.poles)
        for w in (radius, radius * 0.5j, radius * (0.6 - 0.3j)):
            series = sum(table[k] * w**k for k in range(9))
            product = 1.0 + 0j
            for a in poles.poles:
                product /= 1.0 - w / (z - a)
            assert abs(series - product) <= 1e-8 * abs(product)


def test_table_structure():
    table = nu_table(5, 2.0 + 1j, (1j, -1 + 2j))
    assert len(table) == 6
    assert table[0] == 1.0
    assert table.values[0] == 1.0


def test_bruteforce_guards():
    pts = tuple(1j * (k + 1) for k in range(7))
    with pytest.raises(ValueError):
        nu_bruteforce(2, 0.0, pts)
    with pytest.raises(ValueError):
        nu_bruteforce(13, 0.0, (1j,))


def test_pole_coincidence_raises():
    with pytest.raises(PoleEvaluationError):
        nu(2, 1j, (1j, 2j))
    with pytest.raises(PoleEvaluationError):
        nu_bruteforce(2, 2j, (1j, 2j))


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        nu_table(-1, 0.0, (1j,))
    with pytest.raises(ValueError):
        nu_bruteforce(-1, 0.0, (1j,))
