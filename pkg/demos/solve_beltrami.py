"""Solve the Beltrami equation on a grid and compare with closed forms.

    python3 demos/solve_beltrami.py
"""
import numpy as np

from qcholder import geometry
from qcholder.beltrami import equation_residual, principal_solution
from qcholder.grid import BeltramiField, GridSpec

spec = GridSpec(512, 4.0)
r = np.abs(spec.z)
region = (r <= 2) & (np.abs(r - 1) >= 0.1)

# mu = 0.3 on the disk: f = z + 0.3 conj(z) inside, z + 0.3/z outside
mu = BeltramiField.from_function(spec, lambda z: 0.3 + 0 * z)
f = principal_solution(mu)
Z = spec.z
safe = np.where(Z == 0, 1, Z)
exact = np.where(r <= 1, Z + 0.3 * np.conj(Z), Z + 0.3 / safe)
print(f"constant mu: {f.info['iterations']} iterations, "
      f"max error {np.abs(f.values - exact)[region].max():.2e}, "
      f"residual {equation_residual(f, mu, region):.2e}")

# the K = 2 radial stretch
mu = BeltramiField.from_function(spec, lambda z: geometry.radial_stretch_beltrami(z, 2.0))
f = principal_solution(mu)
exact = np.where(r <= 1, geometry.radial_stretch(Z, 2.0), Z)
print(f"radial stretch: {f.info['iterations']} iterations, "
      f"max error {np.abs(f.values - exact)[region].max():.2e}")
print("f(0.25) =", complex(f(0.25)), "(exact 0.5)")
