import functools

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim, rank=None):
    rank = rank or dim
    m = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


@functools.lru_cache(maxsize=None)
def _run_preset_cached(name, items):
    from spinrevival import load_preset, run_scenario
    return run_scenario(load_preset(name, dict(items)))


def run_preset(name, **overrides):
    """Run a bundled preset once per session and reuse the result."""
    return _run_preset_cached(name, tuple(sorted(overrides.items())))
