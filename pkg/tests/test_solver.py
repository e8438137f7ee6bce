import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from wand_gibbs.model import BoundaryLaw, InteractionGraph, ModelParams
from wand_gibbs.solver import (
    DegenerateDenominatorError,
    NearBifurcationWarning,
    boundary_law,
    detect_bifurcation_onset,
    find_asymmetric,
    rhs_general,
    solve_ferrari_k3,
    solve_symmetric,
    symmetric_gain,
    theta_critical,
    tisgm_set,
)

thetas = st.floats(min_value=0.05, max_value=20.0)
orders = st.integers(min_value=2, max_value=8)


def brentq_symmetric(k, theta):
    """Independent root oracle: Brent on z - f(z) with a wide bracket."""
    return brentq(lambda z: z - ((theta + z) / (2 * theta * z)) ** k,
                  1e-12, 1e20, rtol=8.9e-16, maxiter=400)


# --- rhs_general -----------------------------------------------------------

def test_rhs_symmetric_point_is_identity():
    params = ModelParams(3, 1.0)
    assert rhs_general(BoundaryLaw(1.0, 1.0), params) == (1.0, 1.0)


@pytest.mark.parametrize("k,theta,z", [(2, 0.5, 0.7), (3, 2.0, 1.3), (4, 0.8, 5.0)])
def test_rhs_symmetric_reduces_to_gain_map(k, theta, z):
    params = ModelParams(k, theta)
    r1, r2 = rhs_general(BoundaryLaw(z, z), params)
    expected = symmetric_gain(z, params)
    assert r1 == pytest.approx(expected, rel=1e-15)
    assert r2 == pytest.approx(expected, rel=1e-15)


def test_rhs_hand_evaluated_point():
    # k=2, theta=0.5, (z1, z2) = (1, 2):
    #   rhs1 = ((0.5+1)/(0.5*3))^2 = 1,  rhs2 = ((0.5+2)/(0.5*3))^2 = 25/9
    params = ModelParams(2, 0.5)
    r1, r2 = rhs_general(BoundaryLaw(1.0, 2.0), params)
    assert r1 == pytest.approx(1.0, rel=1e-15)
    assert r2 == pytest.approx(25.0 / 9.0, rel=1e-15)


def test_rhs_degenerate_denominator():
    # a graph whose 0 spin has no neighbours: the denominator vanishes
    isolated_zero = InteractionGraph(((1, 0, 0), (0, 0, 0), (0, 0, 1)))
    with pytest.raises(DegenerateDenominatorError):
        rhs_general(BoundaryLaw(1.0, 1.0), ModelParams(2, 0.5), isolated_zero)


def test_rhs_generic_graph_with_opposite_spin_weight():
    # the all-edges graph keeps the -1/+1 coupling alive, whose energy
    # difference of 4 puts a theta^4 weight on those terms:
    #   num(+1) = th^4 z2 + th + z1, num(-1) = z2 + th + th^4 z1,
    #   den = th z2 + 1 + th z1
    complete = InteractionGraph(((1, 1, 1), (1, 1, 1), (1, 1, 1)))
    params = ModelParams(2, 0.5)
    r1, r2 = rhs_general(BoundaryLaw(1.0, 2.0), params, complete)
    assert r1 == pytest.approx(((0.0625 * 2 + 0.5 + 1.0) / 2.5) ** 2, rel=1e-15)
    assert r2 == pytest.approx(((2.0 + 0.5 + 0.0625) / 2.5) ** 2, rel=1e-15)


# --- symmetric root --------------------------------------------------------

@pytest.mark.parametrize("k", [2, 3, 5, 10])
def test_symmetric_root_at_unit_activity(k):
    law = solve_symmetric(ModelParams(k, 1.0))
    assert law.z1 == 1.0 and law.z2 == 1.0
    assert law.residual == 0.0


def test_symmetric_root_k3_theta2():
    law = solve_symmetric(ModelParams(3, 2.0))
    assert law.z1 < 2.0  # z* < theta when theta > 1
    assert law.z1 == pytest.approx(0.7563126517506096, rel=1e-13)
    assert law.residual <= 1e-12


def test_symmetric_root_k2_theta_quarter():
    law = solve_symmetric(ModelParams(2, 0.25))
    assert law.z1 > 0.25  # z* > theta when theta < 1
    assert law.z1 == pytest.approx(4.460902774953157, rel=1e-13)


@given(orders, thetas)
def test_symmetric_root_matches_brent_oracle(k, theta):
    ours = solve_symmetric(ModelParams(k, theta)).z1
    assert ours == pytest.approx(brentq_symmetric(k, theta), rel=1e-12)


@given(orders, thetas, st.floats(min_value=0.01, max_value=50.0),
       st.floats(min_value=1.01, max_value=10.0))
def test_gain_map_strictly_decreasing(k, theta, a, ratio):
    params = ModelParams(k, theta)
    assert symmetric_gain(a, params) > symmetric_gain(a * ratio, params)


@given(orders, thetas)
def test_sign_property(k, theta):
    z = solve_symmetric(ModelParams(k, theta)).z1
    if theta != 1.0:
        assert (z - theta) * (theta - 1.0) < 0.0


@given(orders, thetas)
def test_fixed_point_property(k, theta):
    params = ModelParams(k, theta)
    law = solve_symmetric(params)
    r1, r2 = rhs_general(law, params)
    assert abs(law.z1 - r1) / max(1.0, law.z1) <= 1e-12
    assert abs(law.z2 - r2) / max(1.0, law.z2) <= 1e-12


# --- critical activity -----------------------------------------------------

def test_theta_critical_k2_is_exactly_one():
    assert theta_critical(2) == 1.0


def test_theta_critical_k3_closed_form():
    assert theta_critical(3) == pytest.approx((27.0 / 4.0) ** 0.25, rel=1e-15)
    assert theta_critical(3) == pytest.approx(1.6118548977353129, rel=1e-14)


def test_theta_critical_rejects_small_k():
    with pytest.raises(ValueError):
        theta_critical(1)


@pytest.mark.parametrize("k", [2, 3])
def test_bifurcation_onset_matches_closed_form(k):
    onset = detect_bifurcation_onset(k)
    assert abs(onset - theta_critical(k)) < 1e-6


# --- Ferrari closed form ----------------------------------------------------

def test_ferrari_unit_activity():
    assert solve_ferrari_k3(1.0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("theta", [0.5, 2.0])
def test_ferrari_matches_bisection(theta):
    z = solve_symmetric(ModelParams(3, theta)).z1
    assert abs(solve_ferrari_k3(theta) - z) <= 1e-10 * max(1.0, z)


def test_ferrari_rejects_nonpositive():
    with pytest.raises(ValueError):
        solve_ferrari_k3(0.0)


# --- asymmetric pair --------------------------------------------------------

def test_no_asymmetric_above_critical_k2():
    assert find_asymmetric(ModelParams(2, 1.5)) == []


def test_asymmetric_pair_k2_half():
    laws = find_asymmetric(ModelParams(2, 0.5))
    assert len(laws) == 2
    big, small = laws
    assert big.z1 == pytest.approx(4.776082975517309, rel=1e-10)
    assert big.z2 == pytest.approx(0.05234414922888182, rel=1e-10)
    # swap images of each other
    assert big.z1 == pytest.approx(small.z2, rel=1e-10)
    assert big.z2 == pytest.approx(small.z1, rel=1e-10)
    assert all(law.residual <= 1e-12 for law in laws)


def test_asymmetric_straddles_critical_k3():
    assert len(find_asymmetric(ModelParams(3, 1.61))) == 2
    assert find_asymmetric(ModelParams(3, 1.62)) == []


@given(st.integers(min_value=2, max_value=5),
       st.floats(min_value=0.1, max_value=0.9))
def test_asymmetric_laws_are_fixed_points(k, frac):
    theta = frac * theta_critical(k)
    params = ModelParams(k, theta)
    laws = find_asymmetric(params)
    assert len(laws) == 2
    for law in laws:
        r1, r2 = rhs_general(law, params)
        assert abs(law.z1 - r1) / max(1.0, law.z1) <= 1e-12
        assert abs(law.z2 - r2) / max(1.0, law.z2) <= 1e-12


def test_swap_of_solution_is_solution():
    params = ModelParams(3, 0.9)
    law = find_asymmetric(params)[0]
    swapped = boundary_law(law.z2, law.z1, params)
    assert swapped.residual <= 1e-12


def test_near_bifurcation_warning():
    with pytest.warns(NearBifurcationWarning):
        find_asymmetric(ModelParams(2, 1.0 + 5e-5))


# --- tisgm bundle -----------------------------------------------------------

@pytest.mark.parametrize("k,theta,count", [
    (2, 2.0, 1),
    (3, 0.9, 3),
    (3, 1.0, 3),   # theta_cr(3) > 1, so three measures at unit activity
])
def test_tisgm_count(k, theta, count):
    assert tisgm_set(ModelParams(k, theta)).count == count


def test_tisgm_count_just_above_critical_k5():
    theta = theta_critical(5) + 0.01
    assert tisgm_set(ModelParams(5, theta)).count == 1


def test_tisgm_bundle_fields():
    solutions = tisgm_set(ModelParams(2, 0.5))
    assert solutions.theta_cr == 1.0
    assert solutions.symmetric.symmetric
    assert len(solutions.laws) == solutions.count == 3
