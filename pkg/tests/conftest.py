import numpy as np
import pytest
from hypothesis import strategies as st

from wherald.encoding import LogicalQubit
from wherald.fock import PurePhotonState, SectoredDensity


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def random_pure(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return PurePhotonState(v / np.linalg.norm(v))


def random_density(rng, n, vac=0.0, rank=3):
    a = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = a @ a.conj().T
    rho *= (1 - vac) / np.trace(rho).real
    return SectoredDensity(rho, vac)


bloch_angles = st.tuples(
    st.floats(0, np.pi, allow_nan=False), st.floats(-np.pi, np.pi, allow_nan=False)
)


@st.composite
def qubits(draw):
    theta, phi = draw(bloch_angles)
    return LogicalQubit.from_bloch(theta, phi)
