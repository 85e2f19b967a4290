import math

import numpy as np
import pytest

from qroof.bloch import State, log_base, von_neumann_entropy
from qroof.channel import AxialParams, NotPositive, axial, depolarizing, identity, kraus2, unital
from qroof.concurrence import Apex, concurrence, foliation
from qroof.entanglement import (
    DegenerateFamily,
    DomainError,
    PhaseLabel,
    axis_entanglement,
    bifurcation_betas,
    check_beta_ordering,
    classify_phase,
    detect_bifurcation_betas,
    entanglement,
    entanglement_bounds,
    entanglement_detail,
    flat_leaf,
    oriented,
    xi,
    xi_convexity_certificate,
    xi_many,
    xi_second_derivative,
)
from qroof.roof_oracle import Budget, entropy_functional, minimize_roof

AXIAL = AxialParams(alpha=0.8, beta=0.5, gamma=0.4)
AXIAL_APEX = AxialParams(alpha=0.8, beta=0.1, gamma=0.4)


@pytest.mark.parametrize("x,expected", [(0.0, 0.0), (1.0, 1.0), (-1.0, 1.0), (math.sqrt(3) / 2, 0.811278124459)])
def test_xi_values(x, expected):
    assert xi(x) == pytest.approx(expected, abs=1e-10)


def test_xi_matches_the_output_entropy():
    s = State.from_bloch([0.0, 0.5, 0.0])
    assert xi(math.sqrt(3) / 2) == pytest.approx(von_neumann_entropy(s), abs=1e-12)


def test_xi_is_even_and_vectorized():
    xs = np.linspace(-1, 1, 41)
    values = xi_many(xs)
    assert values.shape == xs.shape
    assert values == pytest.approx(values[::-1], abs=1e-14)
    assert xi(0.3, log_base("e")) == pytest.approx(xi(0.3) * math.log(2.0))


def test_xi_small_argument_has_no_cancellation():
    # H(p) with p ~ x^2 / 4 for small x
    value = xi(1e-6)
    assert value > 0
    p = 0.25e-12
    assert value == pytest.approx(-(p * math.log2(p) + (1 - p) * math.log2(1 - p)), rel=1e-3)


def test_xi_domain():
    with pytest.raises(DomainError):
        xi(1.1)
    with pytest.raises(DomainError):
        xi_many(np.array([0.2, -1.5]))
    assert xi(1.0 + 1e-13) == pytest.approx(1.0)


def test_xi_second_derivative():
    assert xi_second_derivative(0.6) == pytest.approx(0.583227, abs=1e-6)
    assert xi_second_derivative(0.6) == pytest.approx(math.log(9.0) / 1.024 - 1.5625, abs=1e-12)
    assert xi_second_derivative(1.0) == pytest.approx(1.0 / 3.0)
    assert xi_second_derivative(-0.6) == pytest.approx(xi_second_derivative(0.6))


def test_xi_convexity_certificate():
    max_error, min_value = xi_convexity_certificate()
    assert max_error < 1e-3
    assert min_value > 0.3
    with pytest.raises(ValueError):
        xi_convexity_certificate(n=2)


def test_entanglement_bounds():
    assert entanglement_bounds(identity(), State.from_bloch([0.1, 0.2, 0.3])) == pytest.approx((0.0, 0.0), abs=1e-6)
    assert entanglement_bounds(unital(0, 0, 0), State.center()) == pytest.approx((1.0, 1.0))
    lower, upper = entanglement_bounds(axial(AXIAL), State.center())
    assert lower == pytest.approx(0.679734, abs=2e-6)
    assert upper == pytest.approx(0.768115, abs=1e-6)
    lower_e, upper_e = entanglement_bounds(axial(AXIAL), State.center(), base=log_base("e"))
    assert upper_e == pytest.approx(0.768115 * math.log(2.0), abs=1e-6)
    assert lower_e == pytest.approx(lower * math.log(2.0))


def test_unital_entanglement_is_xi_of_concurrence():
    detail = entanglement_detail(depolarizing(0.5), State.center())
    assert detail.method == "flat-roof"
    assert detail.value == pytest.approx(0.811278124459, abs=1e-10)
    assert detail.concurrence == pytest.approx(math.sqrt(0.75))
    assert detail.roof is None


def test_entanglement_of_pure_states_is_the_output_entropy():
    s = State.from_bloch([0.0, 0.6, 0.8])
    m = axial(AXIAL_APEX)
    detail = entanglement_detail(m, s)
    assert detail.method == "pure"
    assert detail.value == pytest.approx(von_neumann_entropy(m.apply_state(s)))


def test_flat_phase_uses_xi(random_state):
    m = axial(AXIAL)
    for _ in range(10):
        s = random_state(0.9)
        assert entanglement(m, s) == pytest.approx(float(xi(concurrence(m, s))), abs=1e-12)


def test_flat_leaf():
    assert flat_leaf(depolarizing(0.5), State.from_bloch([0.1, 0.2, 0.3]))
    assert flat_leaf(axial(AXIAL), State.from_bloch([0.1, 0.2, 0.3]))
    assert not flat_leaf(axial(AXIAL_APEX), State.from_bloch([0.3, 0.1, 0.2]))


def test_apex_phase_uses_the_oracle(small_budget: Budget):
    m = axial(AXIAL_APEX)
    s = State.from_bloch([0.3, 0.1, 0.2])
    detail = entanglement_detail(m, s, budget=small_budget, cross_check=False)
    assert detail.method == "oracle"
    assert detail.roof is not None
    assert sorted(detail.roof.values_by_length) == [2, 3]
    lower, upper = entanglement_bounds(m, s)
    assert lower - 1e-9 <= detail.value <= upper + 1e-6
    assert detail.to_dict()["roof"]["length"] == detail.roof.decomposition.length


def test_axis_entanglement(small_budget: Budget):
    m = axial(AXIAL)
    assert axis_entanglement(m, 0.3) == pytest.approx(float(xi(concurrence(m, State.from_bloch([0, 0, 0.3])))))
    apex = axial(AXIAL_APEX)
    value = axis_entanglement(apex, -0.4, budget=small_budget)
    lower, upper = entanglement_bounds(apex, State.from_bloch([0, 0, -0.4]))
    assert lower - 1e-9 <= value <= upper + 1e-6
    with pytest.raises(ValueError):
        axis_entanglement(kraus2(0.3, 0.5), 0.1)


@pytest.mark.integration
def test_oracle_agrees_with_xi_in_the_flat_phase(random_state):
    m = axial(AXIAL)
    for _ in range(3):
        s = random_state(0.8)
        value = minimize_roof(s, entropy_functional(m), max_length=3, budget=Budget()).value
        assert value == pytest.approx(float(xi(concurrence(m, s))), abs=1e-5)


def test_bifurcation_betas():
    betas = bifurcation_betas(0.8, 0.4)
    assert betas.beta2 == pytest.approx(0.212465, abs=2e-6)
    assert betas.beta1 == pytest.approx(0.213174, abs=2e-6)
    assert betas.beta_c == pytest.approx(0.219276, abs=1e-6)
    assert betas.beta_max == pytest.approx(0.912095, abs=1e-6)
    assert not betas.orientation_flipped
    assert check_beta_ordering(betas)

    flipped = bifurcation_betas(0.4, 0.8)
    assert flipped.orientation_flipped
    for key in ("beta1", "beta2", "beta_c", "beta_max"):
        assert getattr(flipped, key) == pytest.approx(getattr(betas, key), abs=1e-12)


def test_bifurcation_betas_of_a_flipped_family():
    betas = bifurcation_betas(0.7, 0.2)
    assert betas.orientation_flipped
    assert betas.beta1 == pytest.approx(0.1106, abs=1e-3)
    assert betas.beta_c == pytest.approx(0.115732, abs=1e-6)
    assert check_beta_ordering(betas)
    assert oriented(0.7, 0.2) == (0.2, 0.7, True)


@pytest.mark.parametrize("alpha,gamma", [(0.7, 0.7), (0.6, 0.4)])
def test_degenerate_families(alpha, gamma):
    with pytest.raises(DegenerateFamily):
        bifurcation_betas(alpha, gamma)


def test_beta_ordering_is_reported_not_raised():
    from qroof.entanglement import BifurcationBetas

    broken = BifurcationBetas(beta1=0.3, beta2=0.1, beta_c=0.2, beta_max=0.9, orientation_flipped=False)
    assert not check_beta_ordering(broken)


@pytest.mark.parametrize(
    "params,expected",
    [
        ((0.8, 0.5, 0.4), PhaseLabel.IA),
        ((0.8, 0.216, 0.4), PhaseLabel.IB),
        ((0.8, 0.2128, 0.4), PhaseLabel.II),
        ((0.8, 0.15, 0.4), PhaseLabel.III),
        ((0.7, 0.3, 0.7), PhaseLabel.DEGENERATE_UNITAL),
        ((0.6, 0.3, 0.4), PhaseLabel.DEGENERATE_PLANAR),
    ],
)
def test_classify_phase(params, expected):
    alpha, beta, gamma = params
    assert classify_phase(AxialParams(alpha=alpha, beta=beta, gamma=gamma)) == expected


def test_classify_phase_of_a_map_that_is_not_positive():
    with pytest.raises(NotPositive):
        classify_phase(AxialParams(alpha=0.8, beta=0.95, gamma=0.4))


def test_phase_label_values():
    assert PhaseLabel.IA.value == "Ia"
    assert PhaseLabel("DegenerateUnital") is PhaseLabel.DEGENERATE_UNITAL


@pytest.mark.parametrize("alpha,gamma", [(0.8, 0.4), (0.4, 0.8), (0.7, 0.2), (0.9, 0.3)])
def test_detector_agrees_with_the_formulas(alpha, gamma):
    beta1, beta2 = detect_bifurcation_betas(alpha, gamma)
    betas = bifurcation_betas(alpha, gamma)
    assert beta1 == pytest.approx(betas.beta1, abs=1e-2)
    assert beta2 == pytest.approx(betas.beta2, abs=1e-2)


@pytest.mark.integration
def test_entanglement_roof_is_flat_below_the_concurrence_bifurcation():
    p = AxialParams(alpha=0.8, beta=0.216, gamma=0.4)
    m = axial(p)
    assert classify_phase(p) == PhaseLabel.IB
    assert isinstance(foliation(m), Apex)
    normal = np.array([0.0, 1.0, 0.0])
    flat = [
        minimize_roof(
            State.from_bloch([0.0, 0.0, z]),
            entropy_functional(m),
            max_length=3,
            budget=Budget(),
            plane_normal=normal,
        ).flat
        for z in (-0.6, -0.3, 0.0, 0.3, 0.6)
    ]
    assert any(flat)


def _length_three_gain(beta: float, z: float) -> float:
    m = axial(AxialParams(alpha=0.8, beta=beta, gamma=0.4))
    result = minimize_roof(
        State.from_bloch([0.0, 0.0, z]),
        entropy_functional(m),
        max_length=3,
        budget=Budget(circle_grid=4000, triangle_seeds=20_000),
        plane_normal=np.array([0.0, 1.0, 0.0]),
    )
    return result.values_by_length[2] - result.values_by_length[3]


@pytest.mark.integration
def test_length_three_decompositions_win_only_in_phase_two():
    betas = bifurcation_betas(0.8, 0.4)
    beta = 0.5 * (betas.beta1 + betas.beta2)
    assert classify_phase(AxialParams(alpha=0.8, beta=beta, gamma=0.4)) == PhaseLabel.II
    assert _length_three_gain(beta, 0.5) > 1e-6

    assert _length_three_gain(0.5, 0.5) < 1e-12
    assert _length_three_gain(0.20, 0.5) < 1e-12
