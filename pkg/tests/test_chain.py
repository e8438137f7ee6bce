import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wand_gibbs.chain import (
    ComplexSpectrumError,
    TransitionMatrix,
    _deflated_pair,
    kesten_stigum_nonextremal,
    ks_all_theta_nonextremal,
    ks_gap,
    ks_threshold_pair,
    ks_thresholds_k3,
    spectrum,
    transition_matrix,
)
from wand_gibbs.model import BoundaryLaw, ModelParams
from wand_gibbs.rootfind import NoBracketError, grid
from wand_gibbs.solver import find_asymmetric, solve_symmetric, theta_critical

thetas = st.floats(min_value=0.05, max_value=20.0)
orders = st.integers(min_value=2, max_value=8)


# --- matrix construction ----------------------------------------------------

def test_matrix_unit_point():
    m = transition_matrix(BoundaryLaw(1.0, 1.0), 1.0)
    assert m.entries == (
        (0.5, 0.5, 0.0),
        (0.5, 0.0, 0.5),
        (0.0, 0.5, 0.5),
    )


@given(orders, thetas)
def test_symmetric_middle_row(k, theta):
    law = solve_symmetric(ModelParams(k, theta))
    m = transition_matrix(law, theta)
    assert m.entries[1] == (0.5, 0.0, 0.5)


def test_matrix_asymmetric_middle_row():
    m = transition_matrix(BoundaryLaw(2.0, 1.0), 1.0)
    assert m.entries[1] == pytest.approx((1.0 / 3.0, 0.0, 2.0 / 3.0), rel=1e-15)


@given(orders, thetas)
def test_rows_stochastic_and_pattern(k, theta):
    law = solve_symmetric(ModelParams(k, theta))
    m = transition_matrix(law, theta)
    for row in m.entries:
        assert abs(math.fsum(row) - 1.0) <= 1e-14
        assert all(v >= 0.0 for v in row)
    assert m.entries[0][2] == m.entries[2][0] == m.entries[1][1] == 0.0


def test_matrix_validation_rejects_bad_rows():
    with pytest.raises(ValueError, match="sum"):
        TransitionMatrix(((0.6, 0.5, 0.0), (0.5, 0.0, 0.5), (0.0, 0.5, 0.5)))
    with pytest.raises(ValueError, match="zero pattern"):
        TransitionMatrix(((0.5, 0.25, 0.25), (0.5, 0.0, 0.5), (0.0, 0.5, 0.5)))


def test_row_accessor_by_spin():
    m = transition_matrix(BoundaryLaw(2.0, 1.0), 1.0)
    assert m.row(0) == m.entries[1]
    assert m.row(-1) == m.entries[0]


# --- spectrum ----------------------------------------------------------------

def test_spectrum_unit_point():
    m = transition_matrix(BoundaryLaw(1.0, 1.0), 1.0)
    rep = spectrum(m, 3)
    assert rep.s1 == 0.5 and rep.s2 == -0.5 and rep.s3 == 1.0
    assert rep.lambda2 == 0.5
    assert rep.ks_value == 0.75


@given(orders, thetas)
def test_spectrum_closed_forms_symmetric(k, theta):
    law = solve_symmetric(ModelParams(k, theta))
    rep = spectrum(transition_matrix(law, theta), k)
    z = law.z1
    assert abs(rep.s1 - z / (z + theta)) <= 1e-12
    assert abs(rep.s2 + theta / (z + theta)) <= 1e-12


@given(orders, thetas)
def test_spectrum_matches_numpy(k, theta):
    law = solve_symmetric(ModelParams(k, theta))
    m = transition_matrix(law, theta)
    rep = spectrum(m, k)
    eigs = sorted(np.linalg.eigvals(np.array(m.entries)).real)
    assert eigs == pytest.approx(sorted([rep.s1, rep.s2, rep.s3]), abs=1e-12)


@given(st.integers(min_value=2, max_value=5), st.floats(min_value=0.1, max_value=0.9))
def test_spectrum_matches_numpy_asymmetric(k, frac):
    theta = frac * theta_critical(k)
    law = find_asymmetric(ModelParams(k, theta))[0]
    m = transition_matrix(law, theta)
    rep = spectrum(m, k)
    eigs = np.linalg.eigvals(np.array(m.entries))
    assert max(abs(eigs.imag)) <= 1e-10
    assert sorted(eigs.real) == pytest.approx(sorted([rep.s1, rep.s2, rep.s3]), abs=1e-10)


@given(orders, thetas)
def test_ones_vector_is_right_eigenvector(k, theta):
    law = solve_symmetric(ModelParams(k, theta))
    m = transition_matrix(law, theta)
    for row in m.entries:
        assert abs(math.fsum(row) - 1.0) <= 1e-12


@given(orders, thetas)
def test_dominance_switch(k, theta):
    law = solve_symmetric(ModelParams(k, theta))
    rep = spectrum(transition_matrix(law, theta), k)
    z = law.z1
    if z != theta:
        assert (abs(rep.s1) > abs(rep.s2)) == (z > theta)


@given(st.integers(min_value=2, max_value=5), st.floats(min_value=0.1, max_value=0.9))
def test_swap_conjugacy(k, frac):
    theta = frac * theta_critical(k)
    laws = find_asymmetric(ModelParams(k, theta))
    assert len(laws) == 2
    reps = [spectrum(transition_matrix(law, theta), k) for law in laws]
    a = sorted([reps[0].s1, reps[0].s2, reps[0].s3])
    b = sorted([reps[1].s1, reps[1].s2, reps[1].s3])
    assert a == pytest.approx(b, abs=1e-10)


def test_complex_spectrum_signalled():
    # 3-cycle rotation: eigenvalues are the complex cube roots of unity
    with pytest.raises(ComplexSpectrumError):
        _deflated_pair(trace=0.0, det=1.0)


# --- Kesten-Stigum criterion --------------------------------------------------

def test_ks_examples():
    p3 = ModelParams(3, 1.0)
    assert not kesten_stigum_nonextremal(p3, solve_symmetric(p3))
    p3_low = ModelParams(3, 0.5)
    assert kesten_stigum_nonextremal(p3_low, solve_symmetric(p3_low))
    p4 = ModelParams(4, 2.0)
    assert kesten_stigum_nonextremal(p4, solve_symmetric(p4))


def test_ks_value_k3_theta3_above_one():
    law = solve_symmetric(ModelParams(3, 3.0))
    rep = spectrum(transition_matrix(law, 3.0), 3)
    assert rep.ks_value == pytest.approx(1.9773591643065922, rel=1e-12)
    assert rep.ks_value > 1.0


def test_ks_thresholds_k3():
    lower, upper = ks_thresholds_k3()
    assert lower == pytest.approx(0.83, abs=0.01)
    assert upper == pytest.approx(1.226, abs=0.01)
    assert abs(ks_gap(3, lower)) <= 1e-7
    assert abs(ks_gap(3, upper)) <= 1e-7


def test_ks_thresholds_k2_closed_forms():
    lower, upper = ks_threshold_pair(2)
    assert lower == pytest.approx(0.5 * (4.0 * math.sqrt(2.0) - 4.0) ** (1.0 / 3.0), abs=1e-4)
    assert upper == pytest.approx(0.5 * (28.0 + 20.0 * math.sqrt(2.0)) ** (1.0 / 3.0), abs=1e-4)


def test_ks_no_bracket_for_k4():
    with pytest.raises(NoBracketError):
        ks_threshold_pair(4)


def test_ks_gap_single_sign_change_each_side_k3():
    xs_low = grid(1e-3, 1.0, 1000, log_scale=True)
    vals = [ks_gap(3, x) for x in xs_low]
    changes = sum((a > 0) != (b > 0) for a, b in zip(vals, vals[1:]))
    assert changes == 1
    xs_high = grid(1.0, 20.0, 1000, log_scale=True)
    vals = [ks_gap(3, x) for x in xs_high]
    changes = sum((a > 0) != (b > 0) for a, b in zip(vals, vals[1:]))
    assert changes == 1


# --- all-activity sweep (k >= 4) ----------------------------------------------

def test_sweep_k5_nonextremal_everywhere():
    rep = ks_all_theta_nonextremal(5, grid(0.01, 100.0, 200, log_scale=True))
    assert rep.all_nonextremal
    assert rep.min_ks > 1.0
    assert rep.lower_bound == 1.25
    assert rep.ratio_side_ok


def test_sweep_k4_boundary_at_unit_activity():
    law = solve_symmetric(ModelParams(4, 1.0))
    rep = spectrum(transition_matrix(law, 1.0), 4)
    assert rep.ks_value == 1.0  # exact boundary: strict criterion does not fire
    assert not kesten_stigum_nonextremal(ModelParams(4, 1.0), law)


def test_sweep_k10_floor():
    law = solve_symmetric(ModelParams(10, 0.3))
    rep = spectrum(transition_matrix(law, 0.3), 10)
    assert rep.ks_value >= 10.0 / 4.0


def test_sweep_rejects_small_k():
    with pytest.raises(ValueError):
        ks_all_theta_nonextremal(3, [1.0])
    with pytest.raises(ValueError):
        ks_all_theta_nonextremal(4, [])
