"""Degeneracy engineering for two-parameter (q,p)-deformed oscillators."""
from .conics import (MINUS, PLUS, ConicRelation, Ellipse, FitSpec, Hyperbola, Line, Parabola,
                     fit_ellipse, fit_hyperbola, fit_line, fit_parabola, invert, p_min)
from .degeneracy import (CurveTrace, Family, LevelPair, axis_endpoint, classify, residual,
                         solve_q, trace)
from .errors import (ArgumentError, DegenerateFitError, DomainError, ExcludedPairError,
                     FitError, FitInfeasibleError, NotApplicableError, QPError)
from .intersect import IntersectionPoint, intersect_curves, refine_intersection
from .qp_core import (DeformationPoint, FockRep, build_fock_rep, energy, qp_bracket,
                      verify_algebra)
from .reduction import (BranchAssignment, SpectrumTable, default_assignment, degeneracy_report,
                        design_oscillator, forward_spectrum, preset, reduced_spectrum)

__version__ = "0.1.0"
