"""Planar arc-spline geometry: elastic energy, area and the reduction to terminal curves."""
from .primitives import Arc, Segment
from .curve import (ArcSpline, CurveMetrics, SubArcRef, ValidationReport, contains, elastic_energy,
                    is_simple, metrics, sample, self_intersections, signed_area, total_curvature,
                    validate, winding_number)
from .arcs import (ClassTag, HeldArcCertificate, MaximalArc, SearchError, classify,
                   decompose_maximal_arcs, find_held_arc_cusp, find_nested_instances,
                   find_two_disjoint_held_arcs, holds_convex_set, is_void, oscillation_number)
from .procedures import (Procedure1Site, Procedure2Site, ProcedureError, find_contacts,
                         find_procedure1_sites, find_procedure2_sites, procedure1_run,
                         procedure1_step, procedure2_run, procedure2_step, split)
from .reduction import ReductionBudgetError, ReductionTrace, TraceStep, reduce
from .certify import CertificateError, InequalityCertificate, certify_curve, certify_final, double_arc_to_convex
from .inequalities import (InequalityReport, Radii, check_bonnesen_improved, check_enomoto,
                           check_fixed_length, check_gage, check_main, compute_radii, deficits,
                           euler_lagrange_residual, two_convex_bound)
from .hull import convex_hull, diameter
from .flows import FlowRecord, PolyCurve, csf_run, csf_step
from .estimators import (ClassTagger, CurveFeatures, InequalityVerifier, Reducer, ShorteningFlow,
                         check_curve, check_curves)

__version__ = "0.1.0"
