"""Follow mu through lambda -> f^lambda: the Koebe check and the Harnack step.

    python3 demos/flow_probes.py
"""
from qcholder import geometry
from qcholder.beltrami import estimate_beltrami
from qcholder.grid import GridSpec
from qcholder.maps import extremal_map
from qcholder.verify import harnack_probe, koebe_check, lambda_circle

K = 2.0
spec = GridSpec(512, 4.0)
mu, _ = estimate_beltrami(extremal_map(geometry.ExtremalParams(K, 100.0)), spec, support_radius=1.0)
print(f"estimated mu: k_inf = {mu.k_inf:.4f} (exact {(K - 1) / (K + 1):.4f})")

print("Koebe max on |lambda| = 1/3:", koebe_check(mu, K, lambda_circle(1 / 3, 8)))

hp = harnack_probe(mu, 0.5, -0.5, K, points=8)
print(f"u(0) = {hp.u0:.5f}, u(k) = {hp.uk:.5f}, u(0)/K = {hp.u0 / K:.5f}, slack = {hp.slack:.4f}")
print(f"mean-value defect {hp.mean_value_defect:.1e}")
