"""Shared fixtures.

Two grid scales are used throughout: a small scale for fast unit
tests (truncation-limited accuracy around 1e-3) and the default
production scale for the acceptance checks.  Session scope matters:
the transform kernels and calibration tables are expensive to build
and cached per (pair, grid, rule) key.
"""

import numpy as np
import pytest

from sl2h import (RadialRule, SpectralGrid, TypePair, bump_profile,
                  calibrate_table)


@pytest.fixture(scope="session")
def small_rule():
    return RadialRule(6.0, 32)


@pytest.fixture(scope="session")
def small_grid():
    return SpectralGrid(40.0, 513)


@pytest.fixture(scope="session")
def small_eta(small_rule, small_grid):
    return calibrate_table([TypePair(2, 2), TypePair(3, 3), TypePair(4, 4)],
                           rule=small_rule, grid=small_grid)


@pytest.fixture(scope="session")
def base_rule():
    return RadialRule(8.0, 64)


@pytest.fixture(scope="session")
def base_grid():
    return SpectralGrid(60.0, 1025)


@pytest.fixture(scope="session")
def base_eta(base_rule, base_grid):
    return calibrate_table([TypePair(2, 2), TypePair(4, 4)],
                           rule=base_rule, grid=base_grid)


@pytest.fixture(scope="session")
def bump00_small(small_rule):
    return bump_profile(TypePair(0, 0), small_rule, 2.0, 1.0)


@pytest.fixture(scope="session")
def bump22_small(small_rule):
    return bump_profile(TypePair(2, 2), small_rule, 2.0, 1.0, omega=1.0)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260815)
