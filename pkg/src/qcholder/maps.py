"""Uniform point-evaluation interface for planar maps.

A map is either a closed-form evaluator or a grid of samples of ``f - z``
interpolated bilinearly.  Closed-form maps here are extended by the identity
outside the unit disk, matching the global maps the solver produces.
"""
import numpy as np
from scipy import ndimage

from . import geometry
from .errors import DomainError
from .grid import GridField


class DiscreteMap:
    kind = "abstract"
    # relative tolerance used by check_bound for this provenance class
    tolerance = 1e-6

    def __init__(self, name="map", candidates=()):
        self.name = name
        self.candidates = tuple(candidates)

    def __call__(self, z):
        raise NotImplementedError


class ClosedFormMap(DiscreteMap):
    kind = "closed-form"
    tolerance = 1e-6

    def __init__(self, func, name="map", candidates=()):
        super().__init__(name, candidates)
        self.func = func

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.func(z)


class GridMap(DiscreteMap):
    """f(z) = z + bilinear interpolation of the sampled correction f - z."""

    kind = "grid"
    tolerance = 5e-3

    def __init__(self, correction, name="grid-map", candidates=(), **info):
        super().__init__(name, candidates)
        if not isinstance(correction, GridField):
            raise TypeError("correction must be a GridField")
        self.correction = correction
        self.spec = correction.spec
        self.info = info

    @property
    def values(self):
        """Samples of f at the grid nodes."""
        return self.spec.z + self.correction.values

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        # one spacing of halo beyond the box, filled by periodic wrap
        lim = self.spec.L + self.spec.h * (1 + 1e-9)
        if np.any(np.abs(z.real) > lim) or np.any(np.abs(z.imag) > lim):
            raise DomainError(f"point outside the grid box [-{self.spec.L}, {self.spec.L}]^2")
        j, k = self.spec.index_of(z)
        coords = np.stack([np.ravel(j), np.ravel(k)])
        c = self.correction.values
        re = ndimage.map_coordinates(c.real, coords, order=1, mode="grid-wrap")
        im = ndimage.map_coordinates(c.imag, coords, order=1, mode="grid-wrap")
        out = z + (re + 1j * im).reshape(z.shape)
        return out[()] if out.ndim == 0 else out


def _glue(inside):
    def f(z):
        z = np.asarray(z, dtype=complex)
        mask = np.abs(z) <= 1
        out = z.copy()
        if np.any(mask):
            out[mask] = inside(z[mask])
        return out[()] if out.ndim == 0 else out
    return f


def identity_map():
    return ClosedFormMap(lambda z: np.array(z, copy=True), name="identity")


def extremal_map(params):
    """The extremal disk map for ``params``, extended by z outside the disk."""
    x = geometry.slit_preimage_endpoint(params)
    return ClosedFormMap(
        _glue(lambda z: geometry.extremal_disk_map(z, params)),
        name=f"extremal(K={params.K:g},R={params.R:g})",
        candidates=[(complex(x), complex(-x))],
    )


def radial_stretch_map(K):
    """z |z|**(1/K - 1) on the disk glued to the identity outside."""
    return ClosedFormMap(
        _glue(lambda z: geometry.radial_stretch(z, K)), name=f"radial-stretch(K={K:g})")


def spiral_stretch_map(c):
    """z |z|**(c - 1) on the disk, identity outside; Re c > 0.

    For complex ``c`` this is the principal solution with coefficient
    ((c - 1)/(c + 1)) z/conj(z) on the disk.
    """
    def inside(z):
        r = np.abs(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(r > 0, z * r ** (c - 1), 0)
    return ClosedFormMap(_glue(inside), name=f"spiral-stretch(c={c})")


def affine_map(a, b):
    return ClosedFormMap(lambda z: a * z + b * np.conj(z), name=f"affine({a},{b})")
