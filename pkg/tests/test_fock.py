import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wherald.encoding import LogicalQubit, pure_from_logical, qft_matrix
from wherald.fock import (
    ModeUnitary,
    PurePhotonState,
    SectoredDensity,
    apply_uniform_loss,
    apply_unitary,
    conjugate_density,
    dephase_diag,
    fidelity_with_pure,
)

from conftest import random_density, random_pure

s2 = 1 / np.sqrt(2)


def test_pure_from_logical_basis_states():
    np.testing.assert_array_equal(pure_from_logical(LogicalQubit(1, 0), 4).amps, [1, 0, 0, 0])
    np.testing.assert_array_equal(pure_from_logical(LogicalQubit(0, 1), 2).amps, [0, 1])
    amps = pure_from_logical(LogicalQubit(s2, s2), 8).amps
    np.testing.assert_allclose(amps, [s2, s2, 0, 0, 0, 0, 0, 0], atol=1e-15)


def test_pure_from_logical_rejects_bad_input():
    with pytest.raises(ValueError):
        pure_from_logical(LogicalQubit(1, 0), 1)
    with pytest.raises(ValueError):
        LogicalQubit(1, 1)


def test_state_validation():
    with pytest.raises(ValueError):
        PurePhotonState([1.0])
    with pytest.raises(ValueError):
        PurePhotonState([1.0, 1.0])
    with pytest.raises(ValueError):
        SectoredDensity(np.eye(2) / 2, vac_prob=0.5)
    with pytest.raises(ValueError):
        SectoredDensity(np.array([[1.0, 0.0], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        SectoredDensity(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        ModeUnitary(np.array([[1, 1], [0, 1]]))


def test_states_are_immutable():
    s = PurePhotonState([1.0, 0.0])
    with pytest.raises(ValueError):
        s.amps[0] = 0.5


def test_apply_unitary(rng):
    s = random_pure(rng, 5)
    np.testing.assert_allclose(apply_unitary(ModeUnitary(np.eye(5)), s).amps, s.amps)
    np.testing.assert_allclose(apply_unitary(qft_matrix(2), PurePhotonState([1, 0])).amps, [s2, s2], atol=1e-15)
    q = qft_matrix(5)
    back = apply_unitary(q.H, apply_unitary(q, s))
    np.testing.assert_allclose(back.amps, s.amps, atol=1e-12)
    with pytest.raises(ValueError):
        apply_unitary(qft_matrix(4), s)


def test_conjugate_density(rng):
    d = random_density(rng, 6, vac=0.3)
    same = conjugate_density(ModeUnitary(np.eye(6)), d)
    np.testing.assert_allclose(same.rho1, d.rho1, atol=1e-15)
    out = conjugate_density(qft_matrix(6), d)
    assert out.vac_prob == 0.3

    s = random_pure(rng, 6)
    via_state = apply_unitary(qft_matrix(6), s).density()
    via_density = conjugate_density(qft_matrix(6), s.density())
    np.testing.assert_allclose(via_density.rho1, via_state.rho1, atol=1e-12)
    with pytest.raises(ValueError):
        conjugate_density(qft_matrix(5), d)


def test_dephase_diag(rng):
    from wherald.encoding import w_basis_state

    d = dephase_diag(w_basis_state(0, 2).density())
    np.testing.assert_allclose(d.rho1, np.diag([0.5, 0.5]), atol=1e-15)
    diag = SectoredDensity(np.diag([0.2, 0.3, 0.5]))
    np.testing.assert_array_equal(dephase_diag(diag).rho1, diag.rho1)
    r = random_density(rng, 7, vac=0.1)
    once = dephase_diag(r)
    np.testing.assert_array_equal(dephase_diag(once).rho1, once.rho1)
    assert once.vac_prob == 0.1


def test_fidelity_with_pure(rng):
    psi = random_pure(rng, 4)
    assert fidelity_with_pure(psi, psi.density()) == pytest.approx(1, abs=1e-12)
    e0, e1 = PurePhotonState([1, 0, 0]), PurePhotonState([0, 1, 0])
    assert fidelity_with_pure(e0, e1.density()) == 0.0
    mixed = SectoredDensity(0.75 * psi.density().rho1, 0.25)
    assert fidelity_with_pure(psi, mixed) == pytest.approx(0.75, abs=1e-12)


def test_uniform_loss(rng):
    d = random_density(rng, 5)
    same = apply_uniform_loss(d, 0.0)
    np.testing.assert_array_equal(same.rho1, d.rho1)
    gone = apply_uniform_loss(d, 1.0)
    assert gone.vac_prob == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_array_equal(gone.rho1, np.zeros((5, 5)))
    lossy = apply_uniform_loss(random_pure(rng, 5).density(), 0.1)
    assert lossy.photon_weight == pytest.approx(0.9, abs=1e-12)
    assert lossy.vac_prob == pytest.approx(0.1, abs=1e-12)
    with pytest.raises(ValueError):
        apply_uniform_loss(d, 1.1)
    with pytest.raises(ValueError):
        apply_uniform_loss(d, -0.1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 24), st.floats(0, 1), st.floats(0, 0.9), st.integers(0, 2**32 - 1))
def test_channel_invariants(n, eta, vac, seed):
    rng = np.random.default_rng(seed)
    d = random_density(rng, n, vac=vac)
    q = qft_matrix(n)
    for out in (conjugate_density(q, d), dephase_diag(d), apply_uniform_loss(d, eta)):
        assert out.vac_prob + out.photon_weight == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(out.rho1).min() >= -1e-10

    # loss commutes with passive optics
    a = conjugate_density(q, apply_uniform_loss(d, eta))
    b = apply_uniform_loss(conjugate_density(q, d), eta)
    np.testing.assert_allclose(a.rho1, b.rho1, atol=1e-12)
    assert a.vac_prob == pytest.approx(b.vac_prob, abs=1e-12)

    # fidelity is unitary invariant
    psi = random_pure(rng, n)
    f0 = fidelity_with_pure(psi, d)
    f1 = fidelity_with_pure(apply_unitary(q, psi), conjugate_density(q, d))
    assert f1 == pytest.approx(f0, abs=1e-12)
    assert -1e-12 <= f0 <= 1 + 1e-12
