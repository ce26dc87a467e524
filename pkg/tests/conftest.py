import math

import pytest

from phrictl import metrics
from phrictl.freqresp import (
    FractionalTerm,
    FractionalTransferFunction,
    PlantModel,
    default_plant,
)


@pytest.fixture(scope="session")
def plant():
    return default_plant()


@pytest.fixture(scope="session")
def unity_plant():
    one = FractionalTransferFunction(
        (FractionalTerm(1.0, 0.0),), (FractionalTerm(1.0, 0.0),)
    )
    return PlantModel(one, one)


@pytest.fixture(scope="session")
def obj_grid():
    return metrics.default_objective_grid()


@pytest.fixture(scope="session")
def nyq_grid():
    return metrics.default_nyquist_grid()


@pytest.fixture(scope="session")
def weighting():
    return metrics.default_weighting()


TWO_PI = 2.0 * math.pi
