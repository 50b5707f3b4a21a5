"""Principal solutions of f_zbar = mu f_z on a periodic grid.

The Cauchy transform C (inverse of d/dzbar, decaying at infinity) and the
Beurling transform S = d/dz C are applied as Fourier multipliers

    C: -2i / xi,      S: conj(xi) / xi,      xi = xi_1 + i xi_2,

with the zero mode set to 0.  The periodic kernel differs from the planar
one by the Weierstrass-zeta lattice sum; for a square lattice of period 2L
and an input supported near the origin,

    C[h] = C_per[h] + (conj(z) m_0 - conj(m)_1) / A
                    + (G_4 / pi) * sum_k binom(3,k) (-1)^k z^(3-k) m_k + O(L^-8)

where m_k are the moments of h, A = 4L^2 and G_4 = g4 / (2L)^4.  Both
transforms add this correction by default, which keeps periodization error
well below the discretization error for L = 4.
"""
import math
import warnings

import numpy as np
from scipy import fft

from .errors import AccuracyWarning, ParameterError, SolverError
from .grid import BeltramiField, GridField, GridSpec
from .maps import GridMap

# sum over nonzero Gaussian integers w of w**-4
G4_SQUARE = math.gamma(0.25) ** 8 / (960 * math.pi ** 2)

DEFAULT_TOL = 1e-10
DEFAULT_MAXITER = 200
DERIVATIVE_FLOOR = 1e-8


def _check_margin(spec, values):
    support = np.abs(values) > 0
    if not np.any(support):
        return
    Z = spec.z[support]
    reach = max(np.max(np.abs(Z.real)), np.max(np.abs(Z.imag)))
    if reach > spec.L / 2:
        warnings.warn(
            f"field support reaches {reach:.3g}, beyond half the box width "
            f"{spec.L / 2:.3g}; periodization error is no longer controlled",
            AccuracyWarning, stacklevel=3)


def _moments(spec, values, kmax):
    w = values * spec.h ** 2
    Z = spec.z
    out = []
    p = np.ones_like(Z)
    for _ in range(kmax + 1):
        out.append(np.sum(w * p))
        p = p * Z
    return out


def _g4(spec):
    return G4_SQUARE / (2 * spec.L) ** 4


def _cauchy(spec, values, correct=True):
    xi = spec.xi
    with np.errstate(divide="ignore", invalid="ignore"):
        mult = np.where(xi != 0, -2j / xi, 0)
    out = fft.ifft2(fft.fft2(values) * mult)
    if correct:
        Z = spec.z
        A = (2 * spec.L) ** 2
        m0, m1, m2, m3 = _moments(spec, values, 3)
        mbar1 = np.sum(values * np.conj(Z)) * spec.h ** 2
        out += (np.conj(Z) * m0 - mbar1) / A
        out += _g4(spec) / np.pi * (((Z * m0 - 3 * m1) * Z + 3 * m2) * Z - m3)
    return out


def _beurling(spec, values, correct=True):
    xi = spec.xi
    with np.errstate(divide="ignore", invalid="ignore"):
        mult = np.where(xi != 0, np.conj(xi) / xi, 0)
    out = fft.ifft2(fft.fft2(values) * mult)
    if correct:
        Z = spec.z
        m0, m1, m2 = _moments(spec, values, 2)
        out += 3 * _g4(spec) / np.pi * ((Z * m0 - 2 * m1) * Z + m2)
    return out


def cauchy_transform(h, correct=True):
    """Solid Cauchy transform C[h] with dC[h]/dzbar = h.

    ``correct=False`` returns the bare periodic multiplier output (zero
    Fourier mean), which solves d/dzbar u = h - mean(h).
    """
    _check_margin(h.spec, h.values)
    return GridField(h.spec, _cauchy(h.spec, h.values, correct))


def beurling_transform(h, correct=True):
    _check_margin(h.spec, h.values)
    return GridField(h.spec, _beurling(h.spec, h.values, correct))


def principal_solution(mu, tol=DEFAULT_TOL, maxiter=DEFAULT_MAXITER):
    """Principal solution f = z + C[omega], omega = mu S[omega] + mu.

    The Neumann iteration stops once successive iterates differ by less than
    ``tol`` in max norm; ``SolverError`` is raised after ``maxiter`` steps.
    The returned map carries ``info['iterations']``, ``info['history']``
    (max-norm increments) and ``info['omega']``.
    """
    spec = mu.spec
    m = mu.values
    _check_margin(spec, m)
    omega = m.copy()
    history = []
    if np.any(m != 0):
        for it in range(1, maxiter + 1):
            new = m * (_beurling(spec, omega) + 1)
            d = float(np.max(np.abs(new - omega)))
            history.append(d)
            omega = new
            if d < tol:
                break
        else:
            raise SolverError(
                f"Neumann iteration did not reach {tol:g} in {maxiter} steps "
                f"(last increment {history[-1]:.3e})",
                residual=history[-1], iterations=maxiter)
    correction = GridField(spec, _cauchy(spec, omega))
    return GridMap(correction, name="principal-solution", iterations=len(history),
                   history=history, omega=omega, mu=mu)


def effective_coefficient(lam, K):
    if not K > 1:
        raise ParameterError(f"flow needs K > 1, got {K}")
    if not abs(lam) < 1:
        raise ParameterError(f"flow parameter must satisfy |lambda| < 1, got {lam}")
    return lam * (K + 1) / (K - 1)


def flow_map(mu, lam, K, **kwargs):
    """f^lambda: principal solution with coefficient lambda mu (K+1)/(K-1)."""
    c = effective_coefficient(lam, K)
    norm = abs(c) * mu.max_abs()
    if norm >= 1:
        raise ParameterError(
            f"effective coefficient has sup norm {norm:.6g} >= 1 at lambda={lam}")
    eff = BeltramiField(mu.spec, c * mu.values, k_inf=norm,
                        support_radius=mu.support_radius)
    f = principal_solution(eff, **kwargs)
    f.name = f"flow(lambda={lam})"
    f.info["lam"] = lam
    return f


def central_derivatives(f, spec):
    """(f_z, f_zbar) at the grid nodes from symmetric differences."""
    Z = spec.z
    h = spec.h
    fx = (f(Z + h) - f(Z - h)) / (2 * h)
    fy = (f(Z + 1j * h) - f(Z - 1j * h)) / (2 * h)
    return (fx - 1j * fy) / 2, (fx + 1j * fy) / 2


def estimate_beltrami(f, spec, floor=DERIVATIVE_FLOOR, support_radius=None):
    """Beltrami coefficient f_zbar / f_z of ``f`` by central differences.

    Samples with |f_z| <= floor are set to 0 and reported in the returned
    boolean mask.  With ``support_radius`` the field is zeroed outside that
    radius (use 1.0 for maps extended by the identity outside the disk).
    """
    fz, fzb = central_derivatives(f, spec)
    flagged = np.abs(fz) <= floor
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = np.where(flagged, 0, fzb / fz)
    if support_radius is not None:
        mu = np.where(np.abs(spec.z) <= support_radius, mu, 0)
    return BeltramiField(spec, mu, support_radius=support_radius), flagged


def equation_residual(f, mu, region):
    """max over ``region`` of |f_zbar - mu f_z| with central differences."""
    fz, fzb = central_derivatives(f, mu.spec)
    r = np.abs(fzb - mu.values * fz)
    return float(np.max(r[region]))


def smooth_cutoff(r, radius=0.95):
    """C-infinity bump equal to 1 at 0 and vanishing for r >= radius."""
    r = np.asarray(r, dtype=float)
    t = np.clip(r / radius, 0, 1)
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(t < 1, np.exp(1 - 1 / (1 - t * t)), 0.0)


def random_beltrami(seed, k_inf, modes, spec=None):
    """Deterministic smooth random coefficient with max modulus ``k_inf``.

    A random trigonometric polynomial of degree ``modes`` in x and y (period
    2, amplitudes decaying like 1/(1 + m^2 + n^2)) times ``smooth_cutoff``.
    """
    if not 0 <= k_inf < 1:
        raise ParameterError(f"need 0 <= k_inf < 1, got {k_inf}")
    if modes < 1:
        raise ParameterError(f"modes must be >= 1, got {modes}")
    spec = spec or GridSpec()
    if k_inf == 0:
        return BeltramiField(spec, np.zeros((spec.n, spec.n), complex), k_inf=0.0)
    rng = np.random.default_rng(seed)
    m = np.arange(-modes, modes + 1)
    M, N = np.meshgrid(m, m, indexing="ij")
    coef = rng.standard_normal(M.shape) + 1j * rng.standard_normal(M.shape)
    coef /= 1 + M ** 2 + N ** 2
    x = spec.x
    E = np.exp(1j * np.pi * np.outer(m, x))
    values = E.T @ coef @ E
    values *= smooth_cutoff(np.abs(spec.z))
    values *= k_inf / np.max(np.abs(values))
    return BeltramiField(spec, values, k_inf=k_inf)
