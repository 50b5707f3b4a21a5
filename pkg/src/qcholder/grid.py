"""Uniform square grids on [-L, L]^2 and complex fields sampled on them.

``values[j, k]`` is the sample at ``(-L + j h) + i (-L + k h)``, so the first
array axis runs along x.  Fields serialize to a one-line JSON header followed
by either raw little-endian float64 pairs (re, im) in row-major order or CSV
rows ``j,k,re,im``.  Both round-trip bit-exactly.
"""
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ParameterError

MAGIC = "qcholder-gridfield"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class GridSpec:
    n: int = 512
    L: float = 4.0

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or n < 64 or n & (n - 1):
            raise ParameterError(f"n must be a power of two >= 64, got {n}")
        if not self.L >= 2:
            raise ParameterError(f"L must be >= 2, got {self.L}")

    @property
    def h(self):
        return 2 * self.L / self.n

    @cached_property
    def x(self):
        return -self.L + self.h * np.arange(self.n)

    @cached_property
    def z(self):
        X, Y = np.meshgrid(self.x, self.x, indexing="ij")
        return X + 1j * Y

    @cached_property
    def xi(self):
        """Complex wavenumber xi_1 + i xi_2 on the FFT grid."""
        k = 2 * np.pi * np.fft.fftfreq(self.n, d=self.h)
        K1, K2 = np.meshgrid(k, k, indexing="ij")
        return K1 + 1j * K2

    def index_of(self, z):
        """Fractional grid indices (j, k) of the points z."""
        z = np.asarray(z, dtype=complex)
        return (z.real + self.L) / self.h, (z.imag + self.L) / self.h


class GridField:
    def __init__(self, spec, values):
        values = np.asarray(values, dtype=complex)
        if values.shape != (spec.n, spec.n):
            raise ParameterError(
                f"values have shape {values.shape}, grid is {spec.n}x{spec.n}")
        if not np.all(np.isfinite(values)):
            raise ParameterError("grid field has non-finite samples")
        self.spec = spec
        self.values = values

    @classmethod
    def zeros(cls, spec):
        return cls(spec, np.zeros((spec.n, spec.n), dtype=complex))

    @classmethod
    def from_function(cls, spec, func):
        return cls(spec, func(spec.z))

    def max_abs(self):
        return float(np.max(np.abs(self.values)))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.spec.n}, L={self.spec.L})"


class BeltramiField(GridField):
    """Beltrami coefficient on a grid, with sup norm bounded by ``k_inf < 1``.

    ``support_radius`` is the radius outside which every sample must vanish;
    ``None`` means no support constraint is enforced.
    """

    def __init__(self, spec, values, k_inf=None, support_radius=1.0):
        super().__init__(spec, values)
        m = self.max_abs()
        if k_inf is None:
            k_inf = m
        if not 0 <= k_inf < 1:
            raise ParameterError(f"need 0 <= k_inf < 1, got {k_inf}")
        if m > k_inf * (1 + 1e-12):
            raise ParameterError(f"max |mu| = {m} exceeds k_inf = {k_inf}")
        if support_radius is not None:
            outside = np.abs(spec.z) > support_radius
            if np.any(self.values[outside] != 0):
                raise ParameterError(
                    f"Beltrami coefficient does not vanish outside |z| <= {support_radius}")
        self.k_inf = float(k_inf)
        self.support_radius = support_radius

    @classmethod
    def from_function(cls, spec, func, support_radius=1.0):
        Z = spec.z
        values = func(Z)
        if support_radius is not None:
            values = np.where(np.abs(Z) <= support_radius, values, 0)
        return cls(spec, values, support_radius=support_radius)


def _header(field, encoding):
    spec = field.spec
    return {
        "format": MAGIC,
        "version": FORMAT_VERSION,
        "n": int(spec.n),
        "L": float(spec.L),
        "order": "row-major",
        "index": "values[j,k] at (-L + j*h, -L + k*h), h = 2L/n",
        "encoding": encoding,
        "dtype": "<f8",
        "layout": "re,im",
    }


def save_gridfield(path, field, encoding="binary"):
    if encoding not in ("binary", "csv"):
        raise ValueError(f"encoding must be 'binary' or 'csv', got {encoding!r}")
    header = json.dumps(_header(field, encoding), sort_keys=True)
    if encoding == "binary":
        payload = np.ascontiguousarray(field.values).view(np.float64).astype("<f8")
        with open(path, "wb") as fh:
            fh.write(header.encode("utf-8") + b"\n")
            fh.write(payload.tobytes(order="C"))
        return
    n = field.spec.n
    v = field.values
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# " + header + "\n")
        fh.write("j,k,re,im\n")
        for j in range(n):
            row = v[j]
            fh.write("".join(
                f"{j},{k},{float(row[k].real)!r},{float(row[k].imag)!r}\n" for k in range(n)))


def load_gridfield(path):
    with open(path, "rb") as fh:
        first = fh.readline().decode("utf-8")
        rest = fh.read()
    if first.startswith("# "):
        first = first[2:]
    header = json.loads(first)
    if header.get("format") != MAGIC:
        raise ValueError(f"{path}: not a grid field dump")
    spec = GridSpec(n=header["n"], L=header["L"])
    n = spec.n
    if header["encoding"] == "binary":
        flat = np.frombuffer(rest, dtype="<f8")
        if flat.size != 2 * n * n:
            raise ValueError(f"{path}: expected {2 * n * n} reals, found {flat.size}")
        values = flat.astype(np.float64).view(complex).reshape(n, n)
    else:
        lines = rest.decode("utf-8").splitlines()[1:]
        data = np.array([ln.split(",") for ln in lines], dtype=object)
        values = np.empty((n, n), dtype=complex)
        j = data[:, 0].astype(int)
        k = data[:, 1].astype(int)
        values[j, k] = data[:, 2].astype(float) + 1j * data[:, 3].astype(float)
    return GridField(spec, values)
