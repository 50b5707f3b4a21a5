from functools import lru_cache

import numpy as np
import pytest

from qcholder import geometry
from qcholder.beltrami import principal_solution
from qcholder.grid import BeltramiField, GridSpec


def constant_mu(spec, k=0.3):
    return BeltramiField.from_function(spec, lambda z: k + 0 * z)


def radial_mu(spec, K=2.0):
    return BeltramiField.from_function(spec, lambda z: geometry.radial_stretch_beltrami(z, K))


def constant_exact(z, k=0.3):
    z = np.asarray(z, dtype=complex)
    safe = np.where(z == 0, 1, z)
    return np.where(np.abs(z) <= 1, z + k * np.conj(z), z + k / safe)


def radial_exact(z, K=2.0):
    z = np.asarray(z, dtype=complex)
    return np.where(np.abs(z) <= 1, geometry.radial_stretch(z, K), z)


def comparison_region(spec, outer=2.0):
    """|z| <= outer minus the jump band 0.9 < |z| < 1.1."""
    r = np.abs(spec.z)
    return (r <= outer) & (np.abs(r - 1) >= 0.1)


@pytest.fixture(scope="session")
def spec512():
    return GridSpec(512, 4.0)


@pytest.fixture(scope="session")
def spec1024():
    return GridSpec(1024, 4.0)


@lru_cache(maxsize=None)
def reference_solution(kind, n):
    """Principal solution for a closed-form coefficient, shared across modules."""
    spec = GridSpec(n, 4.0)
    mu = constant_mu(spec) if kind == "constant" else radial_mu(spec)
    return principal_solution(mu)


EXACT = {"constant": constant_exact, "radial": radial_exact}


@pytest.fixture(scope="session")
def solved():
    """Principal solutions for the two closed-form coefficients on both grids."""
    return {(kind, n): reference_solution(kind, n)
            for n in (512, 1024) for kind in ("constant", "radial")}
