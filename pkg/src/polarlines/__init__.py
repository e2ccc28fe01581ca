"""Polar spaces over small finite fields, their hyperbolic-line geometries,
and instance-level checkers for the theorems that characterize them."""

__version__ = "0.1.0"

from .field import FiniteField, field_of_order, make_field
from .forms import GramForm, standard_form
from .incidence import PartialLinearSpace, classify_plane, validate_pls
from .kernels import COMPILED
from .polar import PolarSpace, build_polar, hyperbolic_geometry, hyperbolic_lines
from .report import CheckReport, HypothesisReport
from .theorems import (check_fischer_hypotheses, check_main_hypotheses, check_planar_hypotheses,
                       check_weak_hypotheses, quotient, reconstruct_polar)
from .fischer import build_fischer_space
from .lemmas import run_property_suite
