"""Computational toolbox for N-distal homeomorphisms on compact metric
spaces: proximal cells, N-diameters, N-equicontinuity probes, minimal-set
and expansivity audits, and entropy estimates, all on finite point clouds
with explicit scale stamps."""

from .errors import (BudgetExceededError, ConjugacyError, ConstructionError,
                     HomomorphismError, InvalidPointError, MeasureError,
                     NDistalError, ParameterError, RefinementError)
from .points import (Annulus, OrbitIndex, Pair, PointCloud, SymbolicPoint,
                     Torus, periodic_point, word_point)
from .systems import (CATALOGUE_FACTS, GOLDEN, DynSystem, annulus2, annulus3,
                      annulusN, catalogue, conjugate_system, get_system,
                      power_system, product_system, shift2)
from .systems import IdentityTorus, Rotation, ShiftSystem, SkewTorus
from .ndiameter import NDiameterResult, diam_n_bounds, diam_n_exact
from .proximal import (ProximalCellEstimate, ProximalReport, QuotientResult,
                       distality_report, fiber_proximal_cell,
                       max_orbit_distance, min_orbit_distance, proximal_cell,
                       proximal_quotient)
from .equicont import (EquicontinuityVerdict, EquicontinuityWitness,
                       RSetEstimate, n_equicontinuity_probe, r_set,
                       r_set_equivariance_check, skew_witness)
from .structure import (AuditRecord, ExpansivityVerdict, MinimalSetEstimate,
                        ReturnProfile, almost_periodic_verdict,
                        dynamical_ball, expansivity_probe,
                        minimal_subsystems, periodic_points, prop_3_2_audit,
                        return_profile, theorem_3_5_audit, transitive_check)
from .entropy import (EmpiricalMeasure, EntropyEstimate, Partition,
                      closing_bound, default_partition,
                      geometric_partition, ks_bound_audit,
                      metric_entropy_estimate, orbit_measure,
                      partition_entropy, partition_from_labels,
                      refine_partition, uniform_measure, word_count_entropy)

__version__ = "0.1.0"
