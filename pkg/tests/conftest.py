import os

import hypothesis
import numpy as np
import pytest

from models.domain import AngularMomentum, RadialGrid

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def default_grid():
    return RadialGrid.default()


@pytest.fixture
def coarse_grid():
    return RadialGrid(1e-3, 15.0, 1000)


@pytest.fixture
def lam_seven():
    """Integer lambda used by the constant-field figures; non-physical."""
    return AngularMomentum.from_value(7, relaxed=True)
