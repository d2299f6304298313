import numpy as np
import pytest

from liemom.so3 import random_rotation, random_vector


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def sample_rotations(rng, n):
    return [random_rotation(rng) for _ in range(n)]


def sample_vectors(rng, n, max_norm=np.pi * 0.95):
    return [random_vector(rng, max_norm) for _ in range(n)]
