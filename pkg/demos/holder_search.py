"""Search for the Hoelder constant of a map and check it against 4**(1 - 1/K).

    python3 demos/holder_search.py
"""
from qcholder import geometry
from qcholder.beltrami import principal_solution, random_beltrami
from qcholder.grid import GridSpec
from qcholder.maps import extremal_map, identity_map
from qcholder.verify import check_bound

print(check_bound(identity_map(), 2.0).as_dict())

for R in geometry.DEFAULT_R_GRID:
    rep = check_bound(extremal_map(geometry.ExtremalParams(2.0, R)), 2.0, R=R)
    print(f"extremal R={R:8g}: searched {rep.constant_estimate:.6f}, "
          f"endpoints {rep.endpoint_quotient:.6f}, bound {rep.bound:.6f}")

f = principal_solution(random_beltrami(3, 1 / 3, 4, GridSpec(512, 4.0)))
rep = check_bound(f, 2.0)
print(f"random solver map: estimate {rep.constant_estimate:.4f}, violation {rep.violation}")
