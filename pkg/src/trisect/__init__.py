"""Combinatorial curves, Heegaard diagrams and trisections on surfaces."""

from .surface import Surface, SurfaceError, CutPiece, build_surface, classify, cut_along
from .curves import (Component, CurveSystem, CurveError, torus_curve,
                     floating_circle, through_edges, is_trivial,
                     homology_class, algebraic_intersection, dehn_twist)
from .arrangement import (Arrangement, ArrangementError, overlay,
                          remove_bigons, minimal_position,
                          geometric_intersection_number, isotopic)

__version__ = "0.1.0"
