import pytest

from segrechains import new_manifold


@pytest.fixture(scope="session")
def heisenberg():
    return new_manifold(1, 1, ["w1*zeta1"])


@pytest.fixture(scope="session")
def levi_flat():
    return new_manifold(1, 1, ["0"])


@pytest.fixture(scope="session")
def quartic():
    """The degenerate hypersurface z = conj(z) + i w^2 conj(w)^2."""
    return new_manifold(1, 1, ["w1^2*zeta1^2"])


@pytest.fixture(scope="session")
def c3_tube():
    return new_manifold(1, 2, ["w1*zeta1", "w1^2*zeta1 + w1*zeta1^2"])
