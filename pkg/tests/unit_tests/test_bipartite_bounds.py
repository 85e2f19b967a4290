import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from qroof.bipartite_bounds import (
    ExplicitMap,
    Subspace2,
    bilinear_q,
    choi_bound,
    choi_map,
    choi_w,
    diagonal_map,
    e2,
    e2_lower_bound,
    ghz_w_subspace,
    induced_map,
    partial_trace_b,
    product_subspace,
    rank2_concurrence,
    restrict_to_subspace,
    separable_pair,
    separable_pair_subspace,
    subspace_w,
)
from qroof.bloch import PAULI, State
from qroof.concurrence import NegativeForm
from qroof.entanglement import DomainError
from qroof.roof_oracle import Budget, concurrence_functional, minimize_roof


def _bloch_state(x) -> np.ndarray:
    return 0.5 * (PAULI[0] + np.einsum("k,kij->ij", np.asarray(x, dtype=float), PAULI[1:]))


def _random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def _random_pure(rng: np.random.Generator, dim: int) -> np.ndarray:
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def test_subspace_validation():
    with pytest.raises(ValueError):
        Subspace2(basis=np.array([[1, 0, 0, 0], [1, 0, 0, 0]]), n=2)
    with pytest.raises(ValueError):
        Subspace2(basis=np.eye(4)[:2], n=3)
    with pytest.raises(ValueError):
        Subspace2.from_spanning(np.array([1, 0, 0, 0]), np.array([2, 0, 0, 0]), n=2)


def test_from_spanning_keeps_the_first_direction():
    v0 = np.array([0.0, 2.0, 0.0, 0.0])
    sub = Subspace2.from_spanning(v0, np.array([1.0, 1.0, 1.0, 0.0]), n=2)
    assert sub.basis[0] == pytest.approx(v0 / 2.0)
    assert np.abs(sub.basis.conj() @ sub.basis.T - np.eye(2)).max() < 1e-12


def test_partial_trace():
    rho = np.kron(np.diag([0.25, 0.75]), np.eye(3) / 3.0)
    assert partial_trace_b(rho, 3) == pytest.approx(np.diag([0.25, 0.75]))


def test_ghz_w_induced_map():
    m = induced_map(ghz_w_subspace())
    assert m.lam == pytest.approx(np.diag([1 / math.sqrt(6), 1 / math.sqrt(6), -1 / 6]), abs=1e-12)
    assert m.t == pytest.approx([0, 0, 1 / 6], abs=1e-12)
    p = m.axial_params()
    assert p is not None
    assert (p.alpha, p.gamma) == pytest.approx((0.5, 1 / 3))


def test_induced_map_matches_the_marginal(rng: np.random.Generator):
    sub = ghz_w_subspace()
    m = induced_map(sub)
    for _ in range(5):
        rho = _random_density(rng, 2)
        marginal = sub.marginal(rho)
        assert m.apply_operator(rho) == pytest.approx(marginal, abs=1e-12)
        assert np.linalg.eigvalsh(m.apply_operator(rho)) == pytest.approx(np.linalg.eigvalsh(marginal), abs=1e-12)


@pytest.mark.parametrize(
    "sub,expected",
    [
        (ghz_w_subspace(), 1 / 6),
        (product_subspace(np.array([0.6, 0.8j, 0.0])), 1.0),
        (separable_pair_subspace(0.5, 0.5), 2 / 3),
        (separable_pair_subspace(0.3, 0.6), 0.7 / 0.82),
    ],
)
def test_subspace_w(sub: Subspace2, expected: float):
    assert subspace_w(sub).w == pytest.approx(expected, abs=1e-7)


def test_product_subspace_induces_the_identity():
    m = induced_map(product_subspace(np.array([1.0, 1.0]) / math.sqrt(2)))
    assert m.lam == pytest.approx(np.eye(3), abs=1e-12)
    assert m.t == pytest.approx(np.zeros(3), abs=1e-12)


def test_orthogonal_separable_pair_is_dephasing():
    sub = separable_pair_subspace(0.0, 0.0)
    m = induced_map(sub)
    assert m.lam[0, 0] == pytest.approx(0.0, abs=1e-12)
    assert m.lam[1, 1] == pytest.approx(0.0, abs=1e-12)
    assert subspace_w(sub).w == pytest.approx(1.0, abs=1e-7)


def test_separable_pair_validation():
    with pytest.raises(ValueError):
        separable_pair(1.5, 0.2)


def test_rank2_concurrence_on_ghz_w():
    sub = ghz_w_subspace()
    assert rank2_concurrence(sub, np.diag([1.0, 0.0])) == pytest.approx(1.0, abs=1e-9)
    assert rank2_concurrence(sub, np.diag([0.0, 1.0])) == pytest.approx(math.sqrt(8 / 9), abs=1e-9)
    assert math.sqrt(8 / 9) == pytest.approx(0.942809, abs=1e-6)


def test_rank2_concurrence_on_ghz_w_coordinates(rng: np.random.Generator):
    # C^2 = a^2 + 4/3 ab + 8/9 b^2 for rho = [[a, c], [c*, b]], independent of the coherence c
    sub = ghz_w_subspace()
    w = subspace_w(sub).w
    for _ in range(5):
        rho = _random_density(rng, 2)
        a, b = float(np.real(rho[0, 0])), float(np.real(rho[1, 1]))
        expected = a * a + 4.0 / 3.0 * a * b + 8.0 / 9.0 * b * b
        assert rank2_concurrence(sub, rho, w=w) ** 2 == pytest.approx(expected, abs=1e-12)


def test_rank2_concurrence_vanishes_on_product_states():
    a, b = 0.4, 0.7
    sub = separable_pair_subspace(a, b)
    psi1, psi2 = separable_pair(a, b)
    for psi in (psi1, psi2):
        c = sub.coordinates(psi)
        assert rank2_concurrence(sub, np.outer(c, c.conj())) ** 2 == pytest.approx(0.0, abs=1e-7)


def test_subspace_w_does_not_depend_on_the_basis(rng: np.random.Generator):
    for sub in (ghz_w_subspace(), separable_pair_subspace(0.3, 0.6)):
        w = subspace_w(sub).w
        for _ in range(3):
            u = unitary_group.rvs(2, random_state=rng)
            assert subspace_w(sub.rotated(u)).w == pytest.approx(w, abs=1e-8)


def test_concurrence_is_constant_along_the_kernel_line():
    a, b = 0.3, 0.6
    sub = separable_pair_subspace(a, b)
    w = subspace_w(sub).w
    c1, c2 = (sub.coordinates(psi) for psi in separable_pair(a, b))
    pi1, pi2 = np.outer(c1, c1.conj()), np.outer(c2, c2.conj())
    rho = np.eye(2) / 2
    values = [rank2_concurrence(sub, rho + t * (pi2 - pi1), w=w) for t in np.linspace(-0.3, 0.3, 10)]
    assert max(values) - min(values) < 1e-6
    assert values[0] > 0.1


def test_bilinear_form():
    sub = ghz_w_subspace()
    w = subspace_w(sub).w
    rho = np.array([[0.6, 0.2 - 0.1j], [0.2 + 0.1j, 0.4]])
    full = sub.embed(rho)
    assert bilinear_q(full, full, w, sub.n) == pytest.approx(rank2_concurrence(sub, rho, w=w) ** 2, abs=1e-12)


def test_bilinear_form_of_separable_states():
    a, b = 0.3, 0.6
    w = (1 - a) / (1 - a * b)
    psi1, psi2 = separable_pair(a, b)
    p1, p2 = np.outer(psi1, psi1.conj()), np.outer(psi2, psi2.conj())
    assert bilinear_q(p1, p2, w, 2) == pytest.approx(0.0, abs=1e-12)
    assert bilinear_q(p1, p1, w, 2) == pytest.approx(0.0, abs=1e-12)

    sub = separable_pair_subspace(a, b)
    other = sub.embed(np.array([[0.3, 0.1], [0.1, 0.7]]))
    assert bilinear_q(p1, other, subspace_w(sub).w, 2) == pytest.approx(0.0, abs=1e-7)


def test_rank2_concurrence_matches_the_oracle(small_budget: Budget):
    sub = ghz_w_subspace()
    g = concurrence_functional(induced_map(sub))
    for x in ([0.1, 0.2, 0.3], [0.0, 0.0, -0.5], [0.4, -0.3, 0.1]):
        value = minimize_roof(State.from_bloch(x), g, max_length=2, budget=small_budget).value
        assert value == pytest.approx(rank2_concurrence(sub, _bloch_state(x)), rel=1e-3)


def test_e2():
    assert e2(np.eye(3) / 3) == pytest.approx(1 / 3)
    assert e2(np.diag([0.5, 0.5])) == pytest.approx(0.25)
    assert e2(np.diag([1.0, 0.0, 0.0])) == pytest.approx(0.0)


def test_diagonal_map_bound():
    d = diagonal_map(2)
    assert d.is_trace_preserving()
    plus = np.full((2, 2), 0.5)
    assert e2_lower_bound(d, plus) == pytest.approx(1.0)
    assert e2_lower_bound(d, np.diag([0.3, 0.7])) == pytest.approx(0.0, abs=1e-12)


def test_diagonal_map_bound_in_three_dimensions(rng: np.random.Generator):
    d = diagonal_map(3)
    for _ in range(5):
        rho = _random_density(rng, 3)
        off = np.sum(np.abs(np.triu(rho, k=1)) ** 2)
        assert e2_lower_bound(d, rho) == pytest.approx(2 * math.sqrt(off), abs=1e-12)


def test_choi_map_bound():
    assert choi_w(2.0) == pytest.approx(1 / 3)
    assert choi_bound(2.0, np.eye(3) / 3) == pytest.approx(math.sqrt(8 / 9))
    assert e2_lower_bound(choi_map(2.0), np.eye(3) / 3) == pytest.approx(0.942809, abs=1e-6)


def test_choi_closed_form(rng: np.random.Generator):
    for mu in (1.0, 2.0, 3.5):
        phi = choi_map(mu)
        for _ in range(5):
            rho = _random_density(rng, 3)
            assert e2_lower_bound(phi, rho) == pytest.approx(choi_bound(mu, rho), abs=1e-10)


def test_choi_map_at_mu_one_is_constant_on_pure_states(rng: np.random.Generator):
    phi = choi_map(1.0)
    for _ in range(5):
        assert e2_lower_bound(phi, _random_pure(rng, 3)) == pytest.approx(1.0, abs=1e-10)


def test_choi_map_preserves_trace(rng: np.random.Generator):
    phi = choi_map(2.0)
    assert phi.is_trace_preserving()
    rho = _random_density(rng, 3)
    assert np.trace(phi(rho)) == pytest.approx(1.0)
    stacked = phi(np.stack([rho, rho]))
    assert stacked.shape == (2, 3, 3)
    assert stacked[1] == pytest.approx(phi(rho))


def test_choi_map_domain():
    with pytest.raises(DomainError):
        choi_map(0.5)


def test_e2_bound_needs_a_w():
    identity = ExplicitMap.from_function(lambda x: x, 2, "identity")
    with pytest.raises(ValueError):
        e2_lower_bound(identity, np.eye(2) / 2)
    assert e2_lower_bound(identity, np.eye(2) / 2, w=1.0) == pytest.approx(0.0)
    with pytest.raises(NegativeForm):
        e2_lower_bound(diagonal_map(2), np.eye(2) / 2, w=5.0)


def test_e2_bound_is_below_the_oracle(small_budget: Budget):
    phi = choi_map(2.0)
    basis = np.array([[1.0, 0.0, 0.0], [0.0, 1.0 / math.sqrt(2), 1.0 / math.sqrt(2)]])
    g = restrict_to_subspace(phi, basis)
    assert g.name == "e2[choi(mu=2)]"
    v = basis.T
    for x in ([0.2, 0.1, -0.3], [0.0, 0.0, 0.5]):
        value = minimize_roof(State.from_bloch(x), g, max_length=2, budget=small_budget).value
        rho = v @ _bloch_state(x) @ v.conj().T
        assert e2_lower_bound(phi, rho) <= value + 1e-9


def test_restrict_to_subspace_validates_the_basis():
    with pytest.raises(ValueError):
        restrict_to_subspace(choi_map(2.0), np.eye(2))
