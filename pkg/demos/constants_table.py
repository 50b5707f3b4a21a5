"""Compare the sharp constant with earlier ones.

    python3 demos/constants_table.py
"""
import numpy as np

from qcholder.verify import constants

print(f"{'K':>6} {'mori':>6} {'conj':>10} {'sharp':>10} {'vz':>10}")
for K in np.geomspace(1, 100, 9):
    t = constants(K)
    print(f"{K:6.2f} {t.mori:6.0f} {t.conjecture:10.4f} {t.sharp:10.4f} {t.vz:10.4f}")
