import functools

import numpy as np
import pytest
from hypothesis import settings

# sympy oracles are slow on first use
settings.register_profile("dqcomm", deadline=None, max_examples=60)
settings.load_profile("dqcomm")

I2 = np.eye(2, dtype=complex)
PAULI_MATRICES = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense(label: str, sign: int = 1) -> np.ndarray:
    """Matrix of a Pauli label, qubit 0 as the most significant tensor factor."""
    return sign * functools.reduce(np.kron, [PAULI_MATRICES[c] for c in label])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_OUTCOMES = pytest.StashKey[dict]()


@pytest.fixture
def criterion_log(request):
    """Record one pass/fail line per acceptance criterion for the summary."""
    return request.config.stash.setdefault(_OUTCOMES, {})


def pytest_terminal_summary(terminalreporter, config):
    outcomes = config.stash.get(_OUTCOMES, {})
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(outcomes):
        terminalreporter.write_line(outcomes[number])
