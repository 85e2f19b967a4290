import math

import numpy as np
import pytest

from qroof.bloch import ETA, MinkowskiVector, State, det4, minkowski_dot
from qroof.channel import AxialParams, NotPositive, QubitMap, amplitude_damping, axial, depolarizing, identity, kraus2, unital
from qroof.concurrence import (
    TAU_PSD,
    Apex,
    DegenerateKernel,
    Flat,
    NotAtBifurcation,
    amplitude_damping_concurrence,
    apex_z0,
    axial_concurrence,
    concurrence,
    concurrence_form,
    critical_w,
    eigen_flow,
    eigen_flow_many,
    foliation,
    kernel_at,
    kraus2_concurrence,
    linear_concurrence_check,
    min_eigenvalue,
    q_matrix,
    unital_concurrence,
)

AXIAL = AxialParams(alpha=0.8, beta=0.5, gamma=0.4)
AXIAL_APEX = AxialParams(alpha=0.8, beta=0.1, gamma=0.4)


def test_q_matrix_examples():
    assert np.allclose(q_matrix(identity()), np.diag([1, -1, -1, -1]))
    assert np.allclose(q_matrix(depolarizing(0.3)), np.diag([1, -0.09, -0.09, -0.09]))
    expected = np.array(
        [
            [0.84, 0, 0, -0.08],
            [0, -0.25, 0, 0],
            [0, 0, -0.25, 0],
            [-0.08, 0, 0, -0.04],
        ],
    )
    assert np.allclose(q_matrix(axial(AXIAL)), expected)


def test_q_matrix_is_the_determinant_form(rng: np.random.Generator):
    m = QubitMap(lam=rng.normal(size=(3, 3)) * 0.4, t=rng.normal(size=3) * 0.2)
    for _ in range(20):
        v = MinkowskiVector.from_array(rng.normal(size=4))
        vec = v.as_array()
        w = float(rng.uniform())
        assert vec @ q_matrix(m, w) @ vec == pytest.approx(4 * det4(m.apply(v)) - 4 * w * det4(v), abs=1e-12)


def test_eigen_flow_examples():
    assert eigen_flow(identity()) == pytest.approx((1, 1, 1, 1))
    assert eigen_flow(unital(0, 0, 0)) == pytest.approx((1, 0, 0, 0))
    assert eigen_flow(axial(AXIAL)) == pytest.approx((0.831918, 0.25, 0.25, 0.048082), abs=1e-6)


def test_axial_flow_ends_are_the_positivity_and_bifurcation_betas():
    for alpha, gamma in [(0.8, 0.4), (0.3, 0.9), (0.6, 0.1)]:
        p = AxialParams(alpha=alpha, beta=0.05, gamma=gamma)
        flow = eigen_flow(axial(p))
        assert max(flow) == pytest.approx(p.beta_max_sq, abs=1e-12)
        # the pair from the z block brackets beta^2
        block = sorted(w for w in flow if abs(w - p.beta**2) > 1e-9)
        assert block == pytest.approx([p.beta_c_sq, p.beta_max_sq], abs=1e-12)


def test_eigen_flow_many_matches_single(random_channel):
    maps = [random_channel() for _ in range(10)]
    flows, real = eigen_flow_many(np.stack([m.lam for m in maps]), np.stack([m.t for m in maps]))
    assert real.all()
    for m, row in zip(maps, flows):
        assert row == pytest.approx(eigen_flow(m), abs=1e-10)


@pytest.mark.parametrize(
    "m,expected",
    [
        (depolarizing(0.5), 0.25),
        (axial(AXIAL), 0.25),
        (axial(AXIAL_APEX), 0.048082),
        (identity(), 1.0),
    ],
)
def test_critical_w(m, expected):
    assert critical_w(m) == pytest.approx(expected, abs=1e-6)


def test_concurrence_examples():
    center = State.center()
    assert concurrence(identity(), State.from_bloch([0.1, 0.2, 0.3])) == pytest.approx(0.0, abs=1e-8)
    assert concurrence(unital(0, 0, 0), State.from_bloch([0.1, -0.4, 0.3])) == pytest.approx(1.0)
    assert concurrence(axial(AXIAL), center) == pytest.approx(math.sqrt(0.59), abs=1e-9)
    assert concurrence(depolarizing(0.5), center) == pytest.approx(math.sqrt(0.75), abs=1e-9)


def test_evaluate_many_matches_evaluate(rng: np.random.Generator):
    form = concurrence_form(axial(AXIAL_APEX))
    points = rng.uniform(-0.5, 0.5, size=(30, 3))
    values = form.evaluate_many(points)
    for x, value in zip(points, values):
        assert value == pytest.approx(form.evaluate(State.from_bloch(x)), abs=1e-12)


def test_not_positive_map_has_no_form():
    with pytest.raises(NotPositive):
        concurrence_form(axial(AxialParams(alpha=0.8, beta=0.95, gamma=0.4)))


def test_foliation_of_unital_maps_is_flat():
    fol = foliation(depolarizing(0.5))
    assert isinstance(fol, Flat)
    assert fol.degenerate
    with pytest.raises(DegenerateKernel) as exc:
        foliation(depolarizing(0.5), strict=True)
    assert exc.value.kernel_basis.shape[0] == 3

    phase_flip = foliation(unital(0.3, 0.6, 0.9))
    assert isinstance(phase_flip, Flat)
    assert not phase_flip.degenerate
    assert np.abs(phase_flip.direction) == pytest.approx([0, 0, 1], abs=1e-8)


def test_foliation_above_bifurcation_is_flat_in_the_xy_plane():
    fol = foliation(axial(AXIAL))
    assert isinstance(fol, Flat)
    assert fol.tag == "Flat"
    assert np.max(np.abs(fol.directions[:, 2])) < 1e-8
    assert fol.describe().startswith("Flat")


def test_foliation_below_bifurcation_has_an_apex():
    fol = foliation(axial(AXIAL_APEX))
    assert isinstance(fol, Apex)
    assert fol.point.as_array() == pytest.approx([1, 0, 0, 9.89898], abs=1e-5)
    assert fol.point.x[2] == pytest.approx(apex_z0(AXIAL_APEX), abs=1e-8)
    assert fol.to_dict()["tag"] == "Apex"


def test_linear_concurrence_at_bifurcation():
    beta_c = AxialParams(alpha=0.8, beta=0.0, gamma=0.4).beta_c
    assert beta_c == pytest.approx(0.219276, abs=1e-6)
    p = AxialParams(alpha=0.8, beta=beta_c, gamma=0.4)
    slope, intercept = linear_concurrence_check(p)
    assert slope == pytest.approx(-0.089898, abs=1e-6)
    assert intercept == pytest.approx(0.889898, abs=1e-6)

    m = axial(p)
    for z in (-0.8, 0.0, 0.5):
        assert concurrence(m, State.from_bloch([0, 0, z])) == pytest.approx(slope * z + intercept, abs=1e-7)

    symmetric = AxialParams(alpha=0.7, beta=AxialParams(0.7, 0.0, 0.7).beta_c, gamma=0.7)
    assert linear_concurrence_check(symmetric)[0] == pytest.approx(0.0)

    with pytest.raises(NotAtBifurcation):
        linear_concurrence_check(AXIAL)


def test_amplitude_damping_concurrence():
    for alpha in (0.2, 0.36, 0.75):
        m = amplitude_damping(alpha)
        for z in (-0.9, -0.3, 0.0, 0.6):
            s = State.from_bloch([0.0, 0.0, z])
            expected = amplitude_damping_concurrence(alpha, s)
            assert expected == pytest.approx((1 + z) * math.sqrt(alpha * (1 - alpha)))
            assert concurrence(m, s) == pytest.approx(expected, abs=1e-6)


def test_pure_state_anchor(random_channel, rng: np.random.Generator):
    for _ in range(5):
        m = random_channel()
        form = concurrence_form(m)
        directions = rng.normal(size=(200, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        images = m.apply_many(directions)
        expected = np.sqrt(np.clip(1.0 - np.sum(images * images, axis=1), 0.0, None))
        assert np.max(np.abs(form.evaluate_many(directions) - expected)) < 1e-10


def test_concurrence_is_affine_along_leaves(rng: np.random.Generator):
    for params in (AXIAL, AXIAL_APEX):
        m = axial(params)
        form = concurrence_form(m)
        fol = foliation(m)
        for _ in range(20):
            x = rng.uniform(-0.4, 0.4, size=3)
            d = fol.leaf_direction(State.from_bloch(x))
            ts = np.linspace(-0.3, 0.3, 7)
            values = form.evaluate_many(x + ts[:, None] * d)
            second_differences = values[2:] - 2 * values[1:-1] + values[:-2]
            assert np.max(np.abs(second_differences)) < 1e-10


def test_signature_flow(random_channel):
    for _ in range(20):
        m = random_channel()
        q0 = q_matrix(m)
        w1, w2, _, _ = eigen_flow(m)
        for w in np.linspace(w2, w1, 7)[1:-1]:
            assert min_eigenvalue(q0, w) >= -TAU_PSD
        assert min_eigenvalue(q0, w1 + 0.01) < 0


def test_kernel_causality(random_channel):
    for _ in range(50):
        m = random_channel()
        q0 = q_matrix(m)
        w1, w2, _, _ = eigen_flow(m)
        if w1 - w2 < 1e-6:
            continue
        top = MinkowskiVector.from_array(kernel_at(q0 - w1 * ETA)[0])
        assert minkowski_dot(top, top) > 0
        n = concurrence_form(m).kernel
        assert minkowski_dot(n, n) <= 1e-9 * float(n.as_array() @ n.as_array())


@pytest.mark.parametrize("lambdas", [(0.2, 0.5, 0.9), (0.7, -0.3, 0.1), (0.0, 0.0, 0.4), (1.0, -1.0, 1.0)])
def test_unital_closed_form(lambdas, rng: np.random.Generator):
    m = unital(*lambdas)
    form = concurrence_form(m)
    for _ in range(10):
        x = rng.normal(size=3)
        x *= rng.uniform() / np.linalg.norm(x)
        s = State.from_bloch(x)
        assert form.evaluate(s) == pytest.approx(unital_concurrence(lambdas, s), abs=1e-12)


@pytest.mark.parametrize("u", np.linspace(-1.4, 1.4, 5))
@pytest.mark.parametrize("v", np.linspace(-1.3, 1.3, 4))
def test_kraus2_closed_form(u, v, rng: np.random.Generator):
    m = kraus2(u, v)
    form = concurrence_form(m)
    for _ in range(5):
        x = rng.normal(size=3)
        x *= rng.uniform(0, 0.95) / np.linalg.norm(x)
        s = State.from_bloch(x)
        assert form.evaluate(s) == pytest.approx(kraus2_concurrence(u, v, s), abs=1e-6)


def test_axial_closed_form(random_axial, random_state):
    for _ in range(30):
        p = random_axial()
        s = random_state()
        assert concurrence(axial(p), s) == pytest.approx(axial_concurrence(p, s), abs=1e-7)


def test_imaginary_tolerance_absorbs_split_jordan_blocks():
    from qroof.concurrence import TAU_IMAG
    from qroof.concurrence.form import _imag_tolerance

    # a rounding-sized perturbation splits a double eigenvalue into a complex pair
    jordan = np.array([[1.0, 1.0], [-4e-16, 1.0]])
    split = float(np.max(np.abs(np.linalg.eigvals(jordan).imag)))
    assert split > TAU_IMAG
    assert split <= _imag_tolerance(jordan)
    assert _imag_tolerance(np.eye(4)) < 1e-6

    rotation = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert float(np.max(np.abs(np.linalg.eigvals(rotation).imag))) > _imag_tolerance(rotation)


@pytest.mark.parametrize("u,v", [(1.0, 2.5), (2.5, 1.0), (2.0, -0.4)])
def test_kraus2_with_obtuse_angles(u, v, rng: np.random.Generator):
    m = kraus2(u, v)
    assert abs(m.lam[0, 0]) >= abs(m.lam[1, 1])
    form = concurrence_form(m)
    for _ in range(5):
        x = rng.normal(size=3)
        x *= rng.uniform(0, 0.95) / np.linalg.norm(x)
        s = State.from_bloch(x)
        assert form.evaluate(s) == pytest.approx(kraus2_concurrence(u, v, s), abs=1e-6)
