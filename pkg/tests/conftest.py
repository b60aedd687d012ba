import numpy as np
import pytest


def haar_unitary(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_matrix(shape, rng):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# Magic basis of two qubits: every real unit vector in it is maximally entangled.
MAGIC = np.array(
    [
        [1, 0, 0, 1],  # |Phi+>
        [1j, 0, 0, -1j],  # i|Phi->
        [0, 1j, 1j, 0],  # i|Psi+>
        [0, 1, -1, 0],  # |Psi->
    ]
).T / np.sqrt(2)


def random_mes_basis(rng):
    """Four orthonormal maximally entangled 2x2 coefficient matrices with random phases."""
    o, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    phases = np.exp(2j * np.pi * rng.random(4))
    cols = (MAGIC @ o) * phases
    return cols.T.reshape(4, 2, 2)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
