import sys
from pathlib import Path

import pytest


ROOT_DIR = Path(__file__).resolve().parents[1]
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

from uqpkit.services.hermitian import make_hermitian  # noqa: E402


@pytest.fixture
def counter_example():
    return make_hermitian([[2, 1], [1, 2]])


@pytest.fixture
def tight_dominant():
    # 2N-dominant at N = 2; the trace_gap clause of appendix_inequalities is tight here
    return make_hermitian([[4, 1], [1, 4]])


@pytest.fixture
def skew_pair():
    return make_hermitian([[1, 1j], [-1j, 1]])


@pytest.fixture
def diag_35():
    return make_hermitian([[3, 0], [0, 5]])
