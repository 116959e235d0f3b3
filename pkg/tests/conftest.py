"""Shared fixtures: backend warm-up so timed sections measure steady state."""

import numpy as np
import pytest

from trcq_kit.kernels import causal_convolve


@pytest.fixture(scope="session")
def warm_backend():
    """Compile/cache the convolution kernel once before any timed assertion."""
    w = np.ones((4, 1, 1), dtype=complex)
    g = np.ones((4, 1), dtype=complex)
    causal_convolve(w, g)
    return True
