"""harmtrans: transmission of Dirichlet-bounded harmonic functions
through Jordan curves in the plane/sphere.

Subpackages: curves (Jordan-curve families and distortion), series
(exact coefficient arithmetic on disks/annuli, Green's functions, collar
charts), capacity (logarithmic capacity of boundary sets), bie
(boundary-integral Dirichlet solver and mode-energy Grams), transmission
(the transmission operator and its norm sweeps), cli (experiment
front end).
"""

from .curves import (CurveSpec, CurveError, MobiusMap, curve_family,
                     curve_from_dict, enclosed_area, mobius_image_curve,
                     three_point_constant, validate_curve)
from .series import (CollarChart, CollarExtension, Domain, HarmonicSeries,
                     SeriesError, annulus_decompose, canonical_collar_chart,
                     collar_energy_greens, collar_extension, dirichlet_inner,
                     energy, evaluate, greens_coperiod, greens_disk,
                     nontangential_limit, trace_on_circle)
from .capacity import (BoundarySet, CapacityError, CircleMap, fekete_capacity,
                       identity_map, mobius_boundary_map, piecewise_linear_map,
                       pushforward, rotation_map)
from .bie import (EXTERIOR, INTERIOR, EnergyGram, HarmonicField,
                  NearBoundaryError, NystromSystem, SolverError, build_system,
                  dirichlet_energy, energy_gram, evaluate_potential,
                  refined_potential, solve_dirichlet, solve_extension)
from .transmission import (AgreementReport, EXT_TO_INT, INT_TO_EXT,
                           TransmissionReport, boundary_agreement,
                           extract_trace, mobius_conjugate_norm,
                           round_trip_error, transmission_norm, transmit)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
