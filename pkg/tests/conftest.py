import os

import numpy as np
import pytest

from nilpotent_cortex import parameters
from nilpotent_cortex.gd_family import make_gd
from nilpotent_cortex.liealg import LieAlgebra, abelian, heisenberg

RAW = os.path.join(parameters.DATA_PATH, 'raw')

@pytest.fixture
def rng():
    return np.random.default_rng(parameters.DEFAULT_SEED)

@pytest.fixture
def g2():
    return make_gd(2).algebra

@pytest.fixture
def g3():
    return make_gd(3).algebra

@pytest.fixture
def h3():
    return heisenberg()

@pytest.fixture
def r4():
    return abelian(4)

@pytest.fixture
def broken():
    # [U1,U2] = U3, [U1,U3] = U1 breaks Jacobi on (1, 2, 3)
    return LieAlgebra.from_brackets(('U1', 'U2', 'U3'), {(0, 1): {2: 1}, (0, 2): {0: 1}})

@pytest.fixture
def filiform():
    return LieAlgebra.from_brackets(('E1', 'E2', 'E3', 'E4'), {(0, 1): {2: 1}, (0, 2): {3: 1}})

@pytest.fixture
def raw_file():
    def path(name):
        return os.path.join(RAW, name)
    return path
