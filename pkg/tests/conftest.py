import numpy as np
import pytest
from hypothesis import strategies as st

from xxzswap.qlinalg import State2

# criterion -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@st.composite
def qubits(draw):
    theta = draw(st.floats(0.0, np.pi))
    phi = draw(st.floats(0.0, 2 * np.pi))
    glob = draw(st.floats(0.0, 2 * np.pi))
    q = State2.from_bloch(theta, phi)
    g = complex(np.exp(1j * glob))
    return State2(g * q.amp_up, g * q.amp_down)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {key}: {detail}")
