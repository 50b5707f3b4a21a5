"""Numerical checks of the sharp Hoelder bound 4**(1-1/K) |z-w|**(1/K)."""
import math
from dataclasses import dataclass, field

import numpy as np

from .beltrami import central_derivatives, flow_map, DERIVATIVE_FLOOR
from .errors import DomainError, ParameterError

MIN_SEPARATION = 1e-9
BOUNDARY_RADIUS = 1 - 1e-6


def sharp_constant(K):
    return 4.0 ** (1 - 1 / K)


def vz_constant(K):
    if K < 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    if K == 1:
        return 1.0
    e = 1 - 1 / K
    return 4.0 ** e * 2.0 ** e * K ** (1 / (2 * K)) * (K / (K - 1)) ** (e / 2)


@dataclass(frozen=True)
class ConstantsTable:
    K: float
    mori: float
    conjecture: float
    sharp: float
    vz: float

    def as_dict(self):
        return {"K": self.K, "mori": self.mori, "conjecture": self.conjecture,
                "sharp": self.sharp, "vz": self.vz}


def constants(K):
    """Mori's 16, the conjectured 16**(1-1/K), the sharp 4**(1-1/K) and the
    n=2 value of the Vuorinen-Zhang constant."""
    if not K >= 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    return ConstantsTable(K=float(K), mori=16.0, conjecture=16.0 ** (1 - 1 / K),
                          sharp=sharp_constant(K), vz=vz_constant(K))


@dataclass(frozen=True)
class SearchBudget:
    radii: int = 64
    angles: int = 128
    top: int = 10
    rounds: int = 40
    shrink: float = 0.5
    chunk: int = 512

    def __post_init__(self):
        if self.radii < 1 or self.angles < 2 or self.top < 0 or self.rounds < 0:
            raise ParameterError(f"invalid search budget {self}")
        if not 0 < self.shrink < 1:
            raise ParameterError(f"shrink factor must lie in (0, 1), got {self.shrink}")


@dataclass
class HolderReport:
    K: float
    constant_estimate: float
    witness: tuple
    bound: float
    violation: bool
    tol: float
    budget: SearchBudget
    R: float = None
    map_name: str = ""
    kind: str = ""
    endpoint_quotient: float = None
    flagged: list = field(default_factory=list)

    @property
    def ratio(self):
        return self.constant_estimate / self.bound

    def as_dict(self):
        z, w = self.witness
        return {
            "map": self.map_name,
            "kind": self.kind,
            "K": self.K,
            "R": self.R,
            "estimate": self.constant_estimate,
            "bound": self.bound,
            "ratio": self.ratio,
            "witness_z": [z.real, z.imag],
            "witness_w": [w.real, w.imag],
            "endpoint_quotient": self.endpoint_quotient,
            "violated": self.violation,
            "tol": self.tol,
            "budget": {"radii": self.budget.radii, "angles": self.budget.angles,
                       "top": self.budget.top, "rounds": self.budget.rounds},
            "flagged": list(self.flagged),
        }


def holder_quotient(f, z, w, K):
    """|f(z) - f(w)| / |z - w|**(1/K); vectorized over z and w."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    d = np.abs(z - w)
    if np.any(d < MIN_SEPARATION):
        raise DomainError(f"points closer than {MIN_SEPARATION:g}")
    q = np.abs(f(z) - f(w)) / d ** (1.0 / K)
    return q[()] if q.ndim == 0 else q


def polar_points(budget):
    r = np.linspace(BOUNDARY_RADIUS / budget.radii, BOUNDARY_RADIUS, budget.radii)
    t = 2 * np.pi * np.arange(budget.angles) / budget.angles
    pts = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
    return np.concatenate([[0j], pts])


def _pair_key(q, z, w):
    return (-q, z.real, z.imag, w.real, w.imag)


def _coarse_top(P, F, K, budget):
    """Best ``budget.top`` pairs (i < j) by quotient, deterministic ties."""
    n = len(P)
    keep = max(budget.top, 1)
    best_q = np.empty(0)
    best_i = np.empty(0, dtype=int)
    best_j = np.empty(0, dtype=int)
    idx = np.arange(n)
    for start in range(0, n, budget.chunk):
        rows = idx[start:start + budget.chunk]
        d = np.abs(P[rows, None] - P[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.abs(F[rows, None] - F[None, :]) / d ** (1.0 / K)
        q[(idx[None, :] <= rows[:, None]) | (d < MIN_SEPARATION)] = -np.inf
        flat = q.ravel()
        m = min(keep, flat.size)
        # widen the cut to keep every pair tied with the m-th value
        cut = np.partition(flat, flat.size - m)[flat.size - m]
        sel = np.flatnonzero(flat >= cut)
        if sel.size > 4 * keep:
            sel = sel[np.argsort(-flat[sel], kind="stable")[:4 * keep]]
        best_q = np.concatenate([best_q, flat[sel]])
        best_i = np.concatenate([best_i, rows[sel // n]])
        best_j = np.concatenate([best_j, sel % n])
    order = sorted(range(len(best_q)),
                   key=lambda t: _pair_key(best_q[t], P[best_i[t]], P[best_j[t]]))
    order = [t for t in order if np.isfinite(best_q[t])][:keep]
    return [(P[best_i[t]], P[best_j[t]]) for t in order]


def _feasible(x):
    z = x[..., 0] + 1j * x[..., 1]
    w = x[..., 2] + 1j * x[..., 3]
    return (np.abs(z) <= 1) & (np.abs(w) <= 1) & (np.abs(z - w) >= MIN_SEPARATION)


def _quotients(f, x, K):
    z = x[..., 0] + 1j * x[..., 1]
    w = x[..., 2] + 1j * x[..., 3]
    ok = _feasible(x)
    q = np.full(z.shape, -np.inf)
    if np.any(ok):
        q[ok] = holder_quotient(f, z[ok], w[ok], K)
    return q


def pattern_search(f, starts, K, step, rounds=40, shrink=0.5):
    """Coordinate-wise pattern search maximizing the quotient from each start.

    ``starts`` is a sequence of (z, w) pairs; every start takes the better
    of the two trial moves along each real coordinate if it improves, and
    the step shrinks by ``shrink`` after each round.
    """
    x = np.array([[z.real, z.imag, w.real, w.imag] for z, w in starts], dtype=float)
    q = _quotients(f, x, K)
    for _ in range(rounds):
        for c in range(4):
            trial = np.repeat(x[:, None, :], 2, axis=1)
            trial[:, 0, c] += step
            trial[:, 1, c] -= step
            tq = _quotients(f, trial, K)
            pick = np.argmax(tq, axis=1)
            cand_q = tq[np.arange(len(x)), pick]
            better = cand_q > q
            x[better] = trial[better, pick[better]]
            q[better] = cand_q[better]
        step *= shrink
    return [(complex(a, b), complex(c, d)) for a, b, c, d in x], q


def estimate_holder_constant(f, K, budget=None, candidates=()):
    """Largest Hoelder quotient found by a coarse polar-grid pair search
    refined by pattern search; a lower bound for the supremum over the disk.

    Starts for the refinement are the ``budget.top`` best coarse pairs plus
    ``f.candidates`` and ``candidates``.
    """
    if not K >= 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    budget = budget or SearchBudget()
    P = polar_points(budget)
    F = np.asarray(f(P), dtype=complex)
    starts = _coarse_top(P, F, K, budget)
    starts += [(complex(z), complex(w)) for z, w in tuple(f.candidates) + tuple(candidates)]
    step = BOUNDARY_RADIUS / budget.radii
    pairs, q = pattern_search(f, starts, K, step, budget.rounds, budget.shrink)
    best = min(range(len(pairs)), key=lambda t: _pair_key(q[t], *pairs[t]))
    z, w = pairs[best]
    value = float(holder_quotient(f, z, w, K))
    bound = sharp_constant(K)
    endpoint = None
    if f.candidates:
        endpoint = float(holder_quotient(f, *f.candidates[0], K))
    return HolderReport(K=float(K), constant_estimate=value, witness=(z, w), bound=bound,
                        violation=False, tol=f.tolerance, budget=budget,
                        map_name=getattr(f, "name", ""), kind=getattr(f, "kind", ""),
                        endpoint_quotient=endpoint)


def check_bound(f, K, budget=None, tol=None, R=None):
    """Search for the Hoelder constant of ``f`` and flag it against 4**(1-1/K)."""
    report = estimate_holder_constant(f, K, budget)
    report.tol = f.tolerance if tol is None else tol
    report.R = R
    report.violation = bool(report.constant_estimate > report.bound * (1 + report.tol))
    return report


def lambda_circle(radius, count, phase=0.0):
    return radius * np.exp(1j * (phase + 2 * np.pi * np.arange(count) / count))


def koebe_check(mu, K, lams, **solver):
    """max over the sampled lambdas and grid nodes |z| < 1 of |f^lambda(z)|."""
    spec = mu.spec
    inside = np.abs(spec.z) < 1
    worst = 0.0
    for lam in lams:
        f = flow_map(mu, complex(lam), K, **solver)
        worst = max(worst, float(np.max(np.abs(f.values[inside]))))
    return worst


@dataclass(frozen=True)
class HarnackProbe:
    u0: float
    uk: float
    mean_value_defect: float
    K: float

    @property
    def slack(self):
        """uk - u0/K; nonpositive when the Harnack step holds."""
        return self.uk - self.u0 / self.K


def harnack_probe(mu, z, w, K, flow=None, circle_radius=0.3, points=16, **solver):
    """u(lambda) = log(|f^lambda(z) - f^lambda(w)| / 4) at 0, at (K-1)/(K+1),
    and its mean-value defect on the circle |lambda| = ``circle_radius``.

    ``flow`` maps lambda to a map realizing f^lambda; by default the grid
    solver is used.
    """
    if not K > 1:
        raise ParameterError(f"harnack_probe needs K > 1, got {K}")
    if abs(z - w) < MIN_SEPARATION:
        raise DomainError("z and w must be distinct")
    if flow is None:
        def flow(lam):
            return flow_map(mu, lam, K, **solver)

    def u(lam):
        f = flow(lam)
        return math.log(abs(complex(f(z)) - complex(f(w))) / 4)

    u0 = math.log(abs(z - w) / 4)
    uk = u((K - 1) / (K + 1))
    ring = [u(complex(lam)) for lam in lambda_circle(circle_radius, points)]
    return HarnackProbe(u0=u0, uk=uk, mean_value_defect=abs(u0 - float(np.mean(ring))),
                        K=float(K))


def dilatation_estimate(f, spec, radius=0.95, exclude_radius=0.0,
                        floor=DERIVATIVE_FLOOR, return_flags=False):
    """max of (|f_z| + |f_zbar|) / (|f_z| - |f_zbar|) over nodes with
    exclude_radius < |z| <= radius, by central differences.

    Nodes where |f_z| <= max(floor, |f_zbar|) are excluded and flagged.
    """
    fz, fzb = central_derivatives(f, spec)
    r = np.abs(spec.z)
    region = (r <= radius) & (r > exclude_radius)
    a, b = np.abs(fz), np.abs(fzb)
    flagged = region & ((a <= floor) | (a <= b))
    use = region & ~flagged
    with np.errstate(divide="ignore", invalid="ignore"):
        D = (a + b) / (a - b)
    value = float(np.max(D[use])) if np.any(use) else float("nan")
    if return_flags:
        return value, flagged
    return value
