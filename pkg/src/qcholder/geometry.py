"""Closed-form maps of the ellipse-deformation construction.

Everything here works on Python complex scalars or numpy complex arrays;
scalars in give numpy scalars out.  The chain is

    unit disk --alpha_R--> E_R --g--> E_R' --alpha_R'^-1--> unit disk

with ``g = joukowski o radial_stretch o joukowski_inv`` and ``R' = R**(1/K)``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError

DEFAULT_K_GRID = (1.0, 1.5, 2.0, 4.0, 10.0)
DEFAULT_R_GRID = (1e1, 1e2, 1e3, 1e4)

# |z| this close to 1 is treated as a boundary point of the disk
_BOUNDARY_EPS = 4 * np.finfo(float).eps


def semi_major(R):
    return R + 1.0 / R


def semi_minor(R):
    return R - 1.0 / R


def affine_dilatation(R):
    """Maximal dilatation of alpha_R, the ratio of the ellipse semi-axes."""
    return (R * R + 1.0) / (R * R - 1.0)


@dataclass(frozen=True)
class ExtremalParams:
    K: float
    R: float

    def __post_init__(self):
        if not np.isfinite(self.K) or self.K < 1:
            raise ParameterError(f"K must be >= 1, got {self.K}")
        if not np.isfinite(self.R) or self.R <= 1:
            raise ParameterError(f"R must be > 1, got {self.R}")

    @property
    def Rprime(self):
        return self.R ** (1.0 / self.K)

    @property
    def semi_major(self):
        return semi_major(self.R)

    @property
    def semi_minor(self):
        return semi_minor(self.R)


def _c(z):
    return np.asarray(z, dtype=complex)


def _out(a):
    return a[()] if a.ndim == 0 else a


def _check_R(R):
    if not R > 1:
        raise ParameterError(f"R must be > 1, got {R}")


def in_ellipse(w, R, closed=True, rtol=1e-12):
    """Membership in E_R: |w-2| + |w+2| < 2(R + 1/R)."""
    w = _c(w)
    s = np.abs(w - 2) + np.abs(w + 2)
    bound = 2 * semi_major(R)
    if closed:
        return s <= bound * (1 + rtol)
    return s < bound


def ellipse_boundary(theta, R):
    theta = np.asarray(theta, dtype=float)
    return _out(semi_major(R) * np.cos(theta) + 1j * semi_minor(R) * np.sin(theta))


def joukowski(z):
    z = _c(z)
    if np.any(z == 0):
        raise DomainError("joukowski is undefined at 0")
    return _out(z + 1.0 / z)


def joukowski_inv(w, slit="upper"):
    """Exterior inverse of the Joukowski map.

    Returns the root of z**2 - w z + 1 = 0 with |z| >= 1.  On the slit
    [-2, 2] both roots lie on the unit circle; ``slit="upper"`` picks the
    one with Im z >= 0, ``slit="lower"`` the conjugate one.
    """
    if slit not in ("upper", "lower"):
        raise ValueError(f"slit must be 'upper' or 'lower', got {slit!r}")
    w = _c(w)
    s = np.sqrt(w - 2) * np.sqrt(w + 2)
    z1 = (w + s) / 2
    z2 = (w - s) / 2
    z = np.where(np.abs(z1) >= np.abs(z2), z1, z2)

    on_slit = (w.imag == 0) & (np.abs(w.real) <= 2)
    if np.any(on_slit):
        x = w.real[on_slit]
        y = np.sqrt(np.maximum(4 - x * x, 0.0)) / 2
        if slit == "lower":
            y = -y
        z = np.array(z, copy=True)
        z[on_slit] = x / 2 + 1j * y
    return _out(z)


def radial_stretch(z, K):
    """rho(z) = z |z|**(1/K - 1), with rho(0) = 0."""
    if not K >= 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    z = _c(z)
    r = np.abs(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r > 0, z * r ** (1.0 / K - 1.0), 0)
    return _out(out.astype(complex))


def radial_stretch_beltrami(z, K):
    """Beltrami coefficient ((1-K)/(1+K)) z/conj(z) of the radial stretch (0 at 0)."""
    z = _c(z)
    r = np.abs(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = np.where(r > 0, (1.0 - K) / (1.0 + K) * z / np.conj(z), 0)
    return _out(mu.astype(complex))


def affine_to_ellipse(z, R):
    """alpha_R(x + iy) = (R + 1/R) x + i (R - 1/R) y, unit disk onto E_R."""
    _check_R(R)
    z = _c(z)
    return _out(semi_major(R) * z.real + 1j * semi_minor(R) * z.imag)


def affine_from_ellipse(w, R):
    _check_R(R)
    w = _c(w)
    return _out(w.real / semi_major(R) + 1j * (w.imag / semi_minor(R)))


def ellipse_deformation(w, params, slit="upper", check=True):
    """g = joukowski o radial_stretch o joukowski_inv, E_R onto E_R'.

    g fixes the foci and is the identity on the slit [-2, 2].
    """
    w = _c(w)
    if check and not np.all(in_ellipse(w, params.R)):
        raise DomainError(f"point outside the closed ellipse E_R, R={params.R}")
    if params.K == 1:
        return _out(w.copy())
    z = _c(joukowski_inv(w, slit=slit))
    return _out(_c(joukowski(_c(radial_stretch(z, params.K)))))


def extremal_disk_map(z, params, slit="upper"):
    """f = alpha_R'^-1 o g o alpha_R, a selfmap of the closed unit disk.

    f is the identity on the unit circle; points with |z| within a few ulps
    of 1 are returned unchanged.
    """
    z = _c(z)
    r = np.abs(z)
    if np.any(r > 1 + 1e-12):
        raise DomainError("extremal_disk_map is defined on the closed unit disk")
    if params.K == 1:
        return _out(z.copy())
    w = _c(affine_to_ellipse(z, params.R))
    gw = _c(ellipse_deformation(w, params, slit=slit, check=False))
    out = _c(affine_from_ellipse(gw, params.Rprime))
    out = np.where(np.abs(r - 1) <= _BOUNDARY_EPS, z, out)
    return _out(out)


def slit_preimage_endpoint(params):
    """Right endpoint 2/(R + 1/R) of the segment alpha_R^-1([-2, 2])."""
    return 2.0 / semi_major(params.R)


def extremal_quotient(params):
    """Hoelder quotient of f at the endpoints of alpha_R^-1([-2, 2])."""
    K = params.K
    image_len = 4.0 / semi_major(params.Rprime)
    seg_len = 4.0 / semi_major(params.R)
    return image_len / seg_len ** (1.0 / K)


def analytic_dilatation_bound(params):
    return params.K * affine_dilatation(params.R) * affine_dilatation(params.Rprime)
