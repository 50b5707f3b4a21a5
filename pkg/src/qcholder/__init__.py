"""Extremal quasiconformal maps, a spectral Beltrami solver, and numerical
checks of the sharp Hoelder bound |f(z) - f(w)| <= 4**(1-1/K) |z - w|**(1/K)
for K-quasiconformal selfmaps of the disk with identity boundary values."""
from .errors import AccuracyWarning, DomainError, ParameterError, SolverError
from .geometry import (ExtremalParams, analytic_dilatation_bound, extremal_disk_map,
                       extremal_quotient)
from .grid import BeltramiField, GridField, GridSpec, load_gridfield, save_gridfield
from .maps import ClosedFormMap, DiscreteMap, GridMap, extremal_map, identity_map
from .beltrami import (beurling_transform, cauchy_transform, estimate_beltrami, flow_map,
                       principal_solution, random_beltrami)
from .verify import (HolderReport, SearchBudget, check_bound, constants,
                     dilatation_estimate, estimate_holder_constant, harnack_probe,
                     holder_quotient, koebe_check)

__version__ = "0.1.0"
