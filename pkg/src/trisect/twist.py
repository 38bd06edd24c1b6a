"""Dehn twists of curve systems along a simple closed curve.

The twist is performed in a collar neighbourhood of the twisting curve t:
wherever a curve crosses t it is rerouted to spiral |power| times around the
collar before continuing.  Combinatorially each spiral contributes one new
transit per edge crossing of t per lap, placed next to t's own mark at an
offset that encodes the strand's transverse coordinate in the collar, so
parallel strands stay in a consistent order on every edge they share.
"""

from __future__ import annotations

from fractions import Fraction

from .curves import Component, CurveError, CurveSystem
from .arrangement import Mesh, edge_key, merge_systems


def _edge_marks(systems, surface, key):
    """All mark positions on the given edge, in the frame of its key dart."""
    out = []
    for sys in systems:
        for comp in sys.components:
            if comp.floating is not None:
                continue
            for d, x in comp.transits:
                if edge_key(surface, d) == key:
                    out.append(x if d == key else 1 - x)
    return out


def dehn_twist(sys: CurveSystem, t: CurveSystem,
               power: int = 1, kt: int = 0) -> CurveSystem:
    """Twist every component of ``sys`` ``power`` times along component
    ``kt`` of ``t``; negative powers twist the opposite way."""
    surface = sys.surface
    if t.surface != surface:
        raise CurveError("twisting curve lives on a different surface")
    tcomp = t.components[kt]
    if not tcomp.closed:
        raise CurveError("can only twist along a closed curve")
    if power == 0 or tcomp.floating is not None:
        return sys
    merged = merge_systems(surface, [t.component_system(kt), sys])
    mesh = Mesh(surface, merged)
    mt, ms = merged
    tts = mt.components[0].transits
    n = len(tts)
    N = n * abs(power)

    # order the crossings along t and give each a strictly increasing
    # collar coordinate theta in (chord, chord + 1/2)
    along_t = mesh.crossings_along(0, 0)
    M = len(along_t)
    theta = {}
    for gidx, (j, _rank, node, _other, _sign) in enumerate(along_t):
        theta[node] = (j, Fraction(gidx + 1, 2 * (M + 1)))
    if M == 0:
        return sys

    # first pass: spiral passages per component, with exact transverse
    # coordinate s in (-1, 1); +1 is the left-hand side of t
    spirals = {}    # (ci, chord k) -> spirals in rank order, each a step list
    sgn = 1 if power > 0 else -1
    for ci in range(len(ms.components)):
        for k, _rank, node, other, sign in mesh.crossings_along(1, ci):
            j, f = theta[node]
            # sign is that of (curve, t); the curve enters on the side it
            # leaves t's left-hand side for positive sign
            s_in = sign
            direction = -sgn * s_in
            steps = []
            for g in range(N):
                if direction > 0:
                    i = (j + 1 + g) % n
                    u = (1 - f) + g
                else:
                    i = (j - g) % n
                    u = f + g
                s = s_in * (1 - Fraction(2 * u, N))
                steps.append((i, direction, s))
            spirals.setdefault((ci, k), []).append(steps)

    # second pass: realize transverse coordinates as edge positions inside
    # the free gap around each of t's marks
    delta = {}
    for i in range(n):
        d, x = tts[i]
        key = edge_key(surface, d)
        xk = x if d == key else 1 - x
        lo, hi = Fraction(0), Fraction(1)
        for y in _edge_marks(merged, surface, key):
            if y < xk:
                lo = max(lo, y)
            elif y > xk:
                hi = min(hi, y)
        delta[i] = min(xk - lo, hi - xk) / 2

    def emit(i, direction, s):
        # the left-hand side of t is toward smaller positions in the frame
        # of its entering dart; backward passages enter by the partner dart
        d, x = tts[i]
        pos = x - delta[i] * s
        if direction > 0:
            return (d, pos)
        pd = surface.glue[d]
        return (pd, 1 - pos)

    comps = []
    for ci, comp in enumerate(ms.components):
        if comp.floating is not None or not comp.closed:
            comps.append(comp)
            continue
        new = []
        for k in range(len(comp.transits)):
            new.append(comp.transits[k])
            for steps in spirals.get((ci, k), []):
                for i, direction, s in steps:
                    new.append(emit(i, direction, s))
        comps.append(Component(True, tuple(new)))
    return CurveSystem(surface, comps, sys.framings)
