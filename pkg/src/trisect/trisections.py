"""Trisection diagrams of closed 4-manifolds.

A diagram is a triple of cut systems (alpha, beta, gamma) on one closed
surface; the pairs (alpha,beta), (beta,gamma), (gamma,alpha) are Heegaard
diagrams whose standard-form parameters k1, k2, k3 complete the profile
(g; k1,k2,k3).  Connected sums are performed by a slit-and-tube surgery
along mark-free edge intervals, which keeps every curve's transit data
intact up to reindexing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .surface import Surface, Dart
from .curves import Component, CurveSystem, is_trivial, through_edges
from .arrangement import edge_key
from .homology import cokernel, homology_class
from .heegaard import (CutSystem, HeegaardError, HeegaardPair,
                       bounds_in_handlebody, validate_cut_system)


class TrisectionError(ValueError):
    pass


@dataclass
class TrisectionDiagram:
    surface: Surface
    alpha: CutSystem
    beta: CutSystem
    gamma: CutSystem
    pairs: tuple          # HeegaardPair for (a,b), (b,g), (g,a)
    ks: tuple             # k1, k2, k3 (entries may be None)
    statuses: tuple       # recognition status per pair
    neck: Optional[CurveSystem] = None  # set by connected_sum

    @property
    def genus(self) -> int:
        return self.surface.genus

    @property
    def parameters(self) -> tuple:
        return (self.genus,) + self.ks

    def systems(self):
        return (self.alpha, self.beta, self.gamma)


def assemble_diagram(alpha: CutSystem, beta: CutSystem, gamma: CutSystem,
                     budget: int = 0) -> TrisectionDiagram:
    surface = alpha.surface
    if beta.surface != surface or gamma.surface != surface:
        raise TrisectionError("cut systems on different surfaces")
    pairs = (HeegaardPair(alpha, beta), HeegaardPair(beta, gamma),
             HeegaardPair(gamma, alpha))
    ks, statuses = [], []
    for p in pairs:
        ks.append(p.recognize(budget))
        statuses.append(p.recognition)
    return TrisectionDiagram(surface, alpha, beta, gamma,
                             pairs, tuple(ks), tuple(statuses))


# -- slit surgery ------------------------------------------------------------

def _marks_in_key_frame(surface, systems, key):
    out = []
    for cs in systems:
        for comp in cs.system.components:
            for d, x in comp.transits:
                if edge_key(surface, d) == key:
                    out.append(x if d == key else 1 - x)
    return sorted(out)


def _split_edge(surface: Surface, systems, key: Dart, a: Fraction,
                b: Fraction):
    """Subdivide the glued edge at positions a < b of the key dart.  Returns
    (surface', remapped transit data per system, middle dart pair)."""
    partner = surface.glue[key]
    np_, ip = partner
    npoly = len(surface.side_counts)
    width = {}
    for p in range(npoly):
        for i in range(surface.side_counts[p]):
            width[(p, i)] = 3 if (p, i) in (key, partner) else 1
    newidx = {}
    counts = []
    for p in range(npoly):
        run = 0
        for i in range(surface.side_counts[p]):
            newidx[(p, i)] = run
            run += width[(p, i)]
        counts.append(run)

    def sub(d, off):
        return (d[0], newidx[d] + off)

    glue_pairs = []
    done = set()
    for d1, d2 in surface.glue.items():
        if d1 in done or d2 in done:
            continue
        done.update((d1, d2))
        if d1 in (key, partner):
            k, q = (d1, d2) if d1 == key else (d2, d1)
            glue_pairs += [(sub(k, 0), sub(q, 2)), (sub(k, 1), sub(q, 1)),
                           (sub(k, 2), sub(q, 0))]
        else:
            glue_pairs.append((sub(d1, 0), sub(d2, 0)))

    def remap(d, x):
        if d == key or d == partner:
            xk = x if d == key else 1 - x
            if a < xk < b:
                raise TrisectionError("mark inside the slit interval")
            if xk < a:
                off, pos = 0, xk / a
            else:
                off, pos = 2, (xk - b) / (1 - b)
            nk = sub(key, off)
            return (nk, pos) if d == key else \
                (surfdict[nk], 1 - pos)
        return (sub(d, 0), x)

    # resolve partner darts of the new sub-sides for remap
    surfdict = dict(glue_pairs)
    surfdict.update({b_: a_ for a_, b_ in glue_pairs})

    remapped = []
    for cs in systems:
        comps = []
        for comp in cs.system.components:
            comps.append(Component(comp.closed, tuple(
                remap(d, x) for d, x in comp.transits)))
        remapped.append(comps)
    return counts, glue_pairs, remapped, (sub(key, 1), sub(partner, 1)), \
        (sub(key, 0), sub(partner, 0))


def _pick_slit(surface, systems):
    key = min(edge_key(surface, d) for d in surface.glue)
    marks = _marks_in_key_frame(surface, systems, key)
    hi = marks[0] if marks else Fraction(1)
    return key, hi / 3, 2 * hi / 3


def connected_sum(d1: TrisectionDiagram,
                  d2: TrisectionDiagram) -> TrisectionDiagram:
    """Join the diagrams by a tube through mark-free slits; genus and each
    k_i add.  The neck curve of the tube is recorded on the result."""
    s1, s2 = d1.surface, d2.surface
    key1, a1, b1 = _pick_slit(s1, d1.systems())
    key2, a2, b2 = _pick_slit(s2, d2.systems())
    counts1, glues1, remap1, mid1, low1 = _split_edge(
        s1, d1.systems(), key1, a1, b1)
    counts2, glues2, remap2, mid2, low2 = _split_edge(
        s2, d2.systems(), key2, a2, b2)

    off = len(counts1)

    def shift(d):
        return (d[0] + off, d[1])

    # keep everything except the two middle gluings, then tube the slits
    gluings = [(u, v) for u, v in glues1 if u != mid1[0]]
    gluings += [(shift(u), shift(v)) for u, v in glues2 if u != mid2[0]]
    gluings += [(mid1[0], shift(mid2[0])), (mid1[1], shift(mid2[1]))]
    surface = Surface(counts1 + counts2, gluings)

    systems = []
    for comps1, comps2 in zip(remap1, remap2):
        comps = [Component(c.closed, c.transits) for c in comps1]
        comps += [Component(c.closed, tuple(
            (shift(d), x) for d, x in c.transits)) for c in comps2]
        systems.append(validate_cut_system(surface, CurveSystem(surface,
                                                                comps)))
    out = assemble_diagram(*systems)
    out.neck = _neck_curve(surface, systems, low1)
    return out


def _neck_curve(surface, systems, low1) -> CurveSystem:
    # circle around d1's slit: crosses the two surviving sub-edge pairs
    # once each, staying clear of the tube itself
    p, s0 = low1[0]

    def free_near_one(dart):
        mx = Fraction(0)
        kd = edge_key(surface, dart)
        for cs in systems:
            for comp in cs.system.components:
                for d, x in comp.transits:
                    if edge_key(surface, d) == kd:
                        y = x if d == dart else 1 - x
                        mx = max(mx, y)
        return (mx + 1) / 2

    d_a = (p, s0)
    d_b = surface.glue[(p, s0 + 2)]  # old partner's low piece
    comp = Component(True, ((d_a, free_near_one(d_a)),
                            (d_b, free_near_one(d_b))))
    return CurveSystem(surface, [comp])


# -- library and stabilization -------------------------------------------------

def standard_library() -> dict:
    """The genus-0, three genus-1 S^4, CP^2, anti-CP^2, S^1xS^3, and
    genus-2 S^2xS^2 diagrams, with literal-standard parameters."""
    from .curves import torus_curve
    t = Surface.torus()

    def cs(pq):
        return validate_cut_system(t, torus_curve(t, *pq))

    a10, a01, a11, a1m = cs((1, 0)), cs((0, 1)), cs((1, 1)), cs((1, -1))
    lib = {
        "S1": assemble_diagram(a10, a10, a01),
        "S2": assemble_diagram(a10, a01, a01),
        "S3": assemble_diagram(a10, a01, a10),
        "CP2": assemble_diagram(a10, a01, a11),
        "CP2bar": assemble_diagram(a10, a01, a1m),
        "S1xS3": assemble_diagram(a10, a10, a10),
    }
    g2s = Surface.closed_genus(2)
    alpha = validate_cut_system(g2s, CurveSystem(g2s, [
        through_edges(g2s, [(0, 3)]), through_edges(g2s, [(0, 7)])]))
    beta = validate_cut_system(g2s, CurveSystem(g2s, [
        through_edges(g2s, [(0, 0)]), through_edges(g2s, [(0, 4)])]))
    gamma = validate_cut_system(g2s, CurveSystem(g2s, [
        through_edges(g2s, [(0, 0), (0, 5)]),
        through_edges(g2s, [(0, 1), (0, 4)])]))
    lib["S2xS2"] = assemble_diagram(alpha, beta, gamma)
    return lib


def genus_zero_diagram() -> TrisectionDiagram:
    s = Surface.closed_genus(0)
    empty = validate_cut_system(s, CurveSystem(s, []))
    return assemble_diagram(empty, empty, empty)


def stabilize(d: TrisectionDiagram, i: int) -> TrisectionDiagram:
    if i not in (1, 2, 3):
        raise TrisectionError("stabilization type must be 1, 2, or 3")
    return connected_sum(d, standard_library()[f"S{i}"])


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class FourManifoldCertificate:
    chi: Optional[int]
    h1_rank: int
    h1_torsion: tuple
    homology_4sphere: bool
    partial: bool


def four_manifold_certificate(d: TrisectionDiagram,
                              force_partial: bool = False
                              ) -> FourManifoldCertificate:
    """Euler characteristic and H1 of the closed 4-manifold.

    chi = 2 + g - (k1+k2+k3); H1(X) is the quotient of H1 of the surface by
    the classes of all diagram curves.  A trivial H1 with chi = 2 forces
    b2 = 0 by Poincare duality, so the homology-4-sphere flag needs no
    chain complex.  The certificate is partial when any k_i rests on
    homology evidence only.
    """
    g = d.genus
    verified = all(s in ("literal-standard", "standardized-by-slides")
                   for s in d.statuses)
    partial = not verified
    if partial and not force_partial and any(k is None for k in d.ks):
        raise TrisectionError("unverified parameters; pass force_partial")
    chi = None
    if all(k is not None for k in d.ks):
        chi = 2 + g - sum(d.ks)
    cols = []
    for cs in d.systems():
        for i in range(len(cs.system.components)):
            cols.append(homology_class(cs.system, i))
    mat = [[c[r] for c in cols] for r in range(2 * g)] if cols else []
    rank, torsion = cokernel(mat, 2 * g)
    return FourManifoldCertificate(
        chi, rank, torsion,
        chi == 2 and rank == 0 and not torsion and not partial,
        partial)


def check_reducing_curve(d: TrisectionDiagram, delta: CurveSystem,
                         k: int = 0) -> bool:
    """True iff the curve bounds a disk in all three handlebodies, which
    certifies the diagram as reducible."""
    if is_trivial(delta, k):
        raise TrisectionError("reducing curves must be essential")
    return all(bounds_in_handlebody(delta, s, k) for s in d.systems())
