import numpy as np
import pytest

from fastexp.inputs import random_series

# filled by test_acceptance, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def direct_dft(c, length, sign=1):
    """O(L^2) evaluation at exp(sign * 2 pi i t / L); no FFT involved."""
    c = np.pad(np.asarray(c, dtype=complex), (0, length - len(c)))
    t = np.arange(length)
    kernel = np.exp(sign * 2j * np.pi * np.outer(t, t) / length)
    return kernel @ c


def cyclic_convolution(a, b):
    n = len(a)
    return np.array([sum(a[i] * b[(k - i) % n] for i in range(n)) for k in range(n)])


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture
def admissible():
    """Seeded random f with |f_j| <= 1/(j+1) and f_0 = 0."""
    return random_series
