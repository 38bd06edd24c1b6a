"""Embedded systems of simple closed curves and properly embedded arcs.

A component is stored as its exact transit sequence: the ordered list of
edge crossings ``(dart, pos)``, where ``dart`` is the side the curve enters
through and ``pos`` in (0,1) is the crossing position in that dart's own
parametrization (the matched side sees ``1 - pos``).  Between consecutive
transits the curve runs as a chord of one polygon.  Arcs start and end on
unmatched (boundary) sides.  Components with no transits (a small circle in
the interior of one polygon) carry the polygon index instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .surface import Dart, Surface


class CurveError(ValueError):
    """Invalid curve data (not embedded, dangling transit, ...)."""


@dataclass(frozen=True)
class Component:
    closed: bool
    transits: tuple[tuple[Dart, Fraction], ...]
    floating: Optional[int] = None  # polygon index for transit-free circles

    def __post_init__(self):
        if self.floating is not None and self.transits:
            raise CurveError("floating component cannot carry transits")

    def reversed(self) -> "Component":
        if self.floating is not None:
            return self
        return Component(self.closed, tuple(reversed(self.transits)), None)

    def __len__(self):
        return len(self.transits)


class CurveSystem:
    """A disjoint union of embedded circles/arcs on one surface."""

    def __init__(self, surface: Surface, components: Sequence[Component],
                 framings: Optional[Sequence[Optional[int]]] = None,
                 check: bool = True):
        self.surface = surface
        self.components = tuple(components)
        self.framings = tuple(framings) if framings is not None else \
            tuple(None for _ in self.components)
        if len(self.framings) != len(self.components):
            raise CurveError("framing list length mismatch")
        if check:
            validate_system(surface, self)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def component_system(self, k: int) -> "CurveSystem":
        return CurveSystem(self.surface, [self.components[k]], check=False)

    def replace(self, k: int, comp: Component) -> "CurveSystem":
        comps = list(self.components)
        comps[k] = comp
        return CurveSystem(self.surface, comps, self.framings)

    def union(self, other: "CurveSystem") -> "CurveSystem":
        if other.surface != self.surface:
            raise CurveError("systems live on different surfaces")
        return CurveSystem(self.surface, self.components + other.components,
                           self.framings + other.framings)

    def canonical_key(self):
        """Hashable form invariant under rotation of closed components and
        component order; used for deduplication in searches."""
        keys = []
        for c in self.components:
            if c.floating is not None:
                keys.append(("o", c.floating))
                continue
            t = tuple((d, str(x)) for d, x in c.transits)
            if c.closed:
                rots = [t[i:] + t[:i] for i in range(len(t))]
                rt = tuple(reversed(t))
                rots += [rt[i:] + rt[:i] for i in range(len(rt))]
                keys.append(("c", min(rots)))
            else:
                keys.append(("a", min(t, tuple(reversed(t)))))
        return tuple(sorted(keys))

    def __repr__(self):
        kinds = ",".join(
            ("O" if c.floating is not None else ("C" if c.closed else "A"))
            + str(len(c)) for c in self.components)
        return f"CurveSystem[{kinds}]"


# -- validation ---------------------------------------------------------------

def _check_arc_ends(surface, comp):
    # arcs: the first transit is the starting boundary point; validate it
    d0, x0 = comp.transits[0]
    if d0 in surface.glue:
        raise CurveError("arc does not start on a boundary side")
    dl, xl = comp.transits[-1]
    if dl in surface.glue:
        raise CurveError("arc does not end on a boundary side")


def iter_chords(surface: Surface, comp: Component):
    """Chords of a component as (polygon, bpos_in, bpos_out, chord index)."""
    ts = comp.transits
    n = len(ts)
    if n == 0:
        return
    if comp.closed:
        for k in range(n):
            d_in, x_in = ts[k]
            d_next, x_next = ts[(k + 1) % n]
            partner = surface.glue.get(d_next)
            if partner is None:
                raise CurveError(f"closed component crosses boundary {d_next}")
            if d_in not in surface.glue:
                raise CurveError(f"closed component crosses boundary {d_in}")
            if partner[0] != d_in[0]:
                raise CurveError("transit sequence jumps polygons")
            yield (d_in[0], (d_in[1], x_in), (partner[1], 1 - x_next), k)
    else:
        _check_arc_ends(surface, comp)
        for k in range(n - 1):
            d_in, x_in = ts[k]
            d_next, x_next = ts[k + 1]
            if k > 0 and d_in not in surface.glue:
                raise CurveError("arc touches boundary mid-component")
            if k + 1 == n - 1:
                exit_dart, exit_pos = d_next, x_next
                if d_next in surface.glue:
                    raise CurveError("arc does not end on a boundary side")
            else:
                partner = surface.glue.get(d_next)
                if partner is None:
                    raise CurveError("arc touches boundary mid-component")
                exit_dart, exit_pos = partner, 1 - x_next
            if exit_dart[0] != d_in[0]:
                raise CurveError("transit sequence jumps polygons")
            yield (d_in[0], (d_in[1], x_in), (exit_dart[1], exit_pos), k)


def interleaved(a: tuple, b: tuple, c: tuple, d: tuple) -> bool:
    """Do chords {a,b} and {c,d} interleave on the cyclic boundary?

    Points are comparable tuples forming a cyclic order under sorting.
    """
    lo, hi = (a, b) if a < b else (b, a)
    cin = lo < c < hi
    din = lo < d < hi
    return cin != din


def validate_system(surface: Surface, system: CurveSystem) -> CurveSystem:
    """Check embeddedness of a curve system; raises CurveError if invalid."""
    # mark collisions: every (dart-frame point on an edge) used once
    points = set()
    for comp in system.components:
        if comp.floating is not None:
            if not 0 <= comp.floating < len(surface.side_counts):
                raise CurveError("floating component in missing polygon")
            continue
        if len(comp.transits) == 0:
            raise CurveError("component with no transits and no polygon")
        for d, x in comp.transits:
            p, i = d
            if not (0 <= p < len(surface.side_counts)
                    and 0 <= i < surface.side_counts[p]):
                raise CurveError(f"transit references missing side {d}")
            if not (0 < x < 1):
                raise CurveError(f"transit position {x} outside (0,1)")
            key = edge_point_key(surface, d, x)
            if key in points:
                raise CurveError(f"mark collision on {d} at {x}")
            points.add(key)
    # same-system chords must be pairwise non-interleaved per polygon
    by_poly: dict[int, list] = {}
    for ci, comp in enumerate(system.components):
        if comp.floating is not None:
            continue
        for (p, bin_, bout, k) in iter_chords(surface, comp):
            by_poly.setdefault(p, []).append((bin_, bout, ci, k))
    for p, chords in by_poly.items():
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                a, b = chords[i], chords[j]
                if interleaved(a[0], a[1], b[0], b[1]):
                    raise CurveError(
                        f"not embedded: chords of components {a[2]} and "
                        f"{b[2]} interleave in polygon {p}")
    return system


def edge_point_key(surface: Surface, dart: Dart, pos: Fraction):
    """Canonical key of a point on an identified edge (or boundary side)."""
    partner = surface.glue.get(dart)
    if partner is None or dart < partner:
        return (dart, pos)
    return (partner, 1 - pos)


# -- constructors ---------------------------------------------------------------

def through_edges(surface: Surface, darts: Sequence[Dart], closed=True,
                  positions: Optional[Sequence[Fraction]] = None) -> Component:
    """Component crossing the listed sides in order, entering through each
    listed dart, at evenly spread positions unless given."""
    if positions is None:
        positions = [Fraction(1, 2)] * len(darts)
    return Component(closed, tuple(
        (d, Fraction(x)) for d, x in zip(darts, positions)))


def torus_curve(surface: Surface, p: int, q: int) -> CurveSystem:
    """The (p,q) curve on the standard square torus model (sides a b a- b-).

    Crosses edge b |p| times and edge a |q| times, following the straight
    line of direction (p, q); requires gcd(p,q) = 1 or (p,q) = 0-free input.
    """
    import math
    if (p, q) == (0, 0):
        raise CurveError("(0,0) is not a curve")
    if math.gcd(p, q) != 1:
        raise CurveError("torus_curve needs coprime (p,q)")
    # walk the line (x0 + p t, y0 + q t) for t in [0,1) on the unit square
    # torus; each time a coordinate passes an integer we cross an edge.
    x0 = Fraction(1, 97)  # generic basepoint: no corner hits, no double events
    y0 = Fraction(1, 89)
    events = []
    if p > 0:
        events += [((Fraction(m) - x0) / p, "x") for m in range(1, p + 1)]
    elif p < 0:
        events += [((Fraction(m) - x0) / p, "x") for m in range(0, p, -1)]
    if q > 0:
        events += [((Fraction(m) - y0) / q, "y") for m in range(1, q + 1)]
    elif q < 0:
        events += [((Fraction(m) - y0) / q, "y") for m in range(0, q, -1)]
    events.sort()
    # square model: side 0 = a (bottom), 1 = b (right), 2 = a- (top),
    # 3 = b- (left); polygon ccw, so side 0 runs left->right along y=0,
    # side 1 bottom->top along x=1, side 2 right->left along y=1,
    # side 3 top->bottom along x=0.
    transits = []
    for t, kind in events:
        x = (x0 + p * t) % 1
        y = (y0 + q * t) % 1
        if kind == "x":
            # crossing a vertical edge: enters through side 3 if p > 0
            # (moving right, reappears at left side), else through side 1
            if p > 0:
                transits.append(((0, 3), 1 - y))
            else:
                transits.append(((0, 1), y))
        else:
            if q > 0:
                transits.append(((0, 0), x))
            else:
                transits.append(((0, 2), 1 - x))
    comp = Component(True, tuple(transits))
    return CurveSystem(surface, [comp])


def floating_circle(surface: Surface, polygon: int) -> CurveSystem:
    return CurveSystem(surface, [Component(True, (), floating=polygon)])


# -- operations delegated to the arrangement engine ------------------------------

def is_trivial(c: CurveSystem, k: int = 0) -> bool:
    """True iff some complementary component of the curve is a disk."""
    from . import arrangement
    comp = c.components[k]
    if not comp.closed:
        raise CurveError("is_trivial needs a closed curve")
    if comp.floating is not None:
        return True
    pieces = arrangement.cut_along(c.surface, c.component_system(k))
    return any(p.is_disk for p in pieces)


def homology_class(c: CurveSystem, k: int = 0):
    from . import homology
    comp = c.components[k]
    if not comp.closed:
        raise CurveError("homology class needs a closed curve")
    return homology.homology_class(c, k)


def algebraic_intersection(c1: CurveSystem, c2: CurveSystem,
                           k1: int = 0, k2: int = 0) -> int:
    from . import homology
    return homology.algebraic_intersection(c1, c2, k1, k2)


def dehn_twist(sys: CurveSystem, t: CurveSystem, power: int = 1) -> CurveSystem:
    from . import twist
    return twist.dehn_twist(sys, t, power)
