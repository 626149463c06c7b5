import os

import numpy as np
import pytest

# KRYLOV_SEED steers every randomized fixture; outputs of the CLI itself are
# seed-independent.
SEED = int(os.environ.get("KRYLOV_SEED", "20250810"))


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
