"""The extremal family: how close the quotient at the slit endpoints gets to 4**(1 - 1/K).

    python3 demos/extremal_family.py
"""
import numpy as np

from qcholder import geometry
from qcholder.verify import sharp_constant

for K in (1.5, 2.0, 4.0, 10.0):
    print(f"K = {K}: sharp constant {sharp_constant(K):.6f}")
    for R in geometry.DEFAULT_R_GRID:
        p = geometry.ExtremalParams(K, R)
        x = geometry.slit_preimage_endpoint(p)
        q = geometry.extremal_quotient(p)
        print(f"  R = {R:8g}  endpoints +-{x:.3e}  quotient {q:.6f}  "
              f"gap {sharp_constant(K) - q:.2e}  dilatation bound {geometry.analytic_dilatation_bound(p):.4f}")

# the map fixes the unit circle and squeezes the slit
p = geometry.ExtremalParams(2.0, 100.0)
t = np.linspace(0, 2 * np.pi, 7)
print("boundary drift:", np.max(np.abs(geometry.extremal_disk_map(np.exp(1j * t), p) - np.exp(1j * t))))
x = geometry.slit_preimage_endpoint(p)
print(f"f({x:.5f}) = {geometry.extremal_disk_map(x, p):.5f}")
