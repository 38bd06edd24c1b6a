"""Pants decompositions and the Rectangle Condition.

A pants decomposition refines a cut system by 2g-3 further disjoint curves,
so that the complement is a union of thrice-punctured spheres.  Two such
decompositions are in "rectangle position" when the overlay of their curve
systems cuts every pair of complementary pants along enough rectangular
faces; a Heegaard or trisection diagram extended this way and passing the
check has an irreducible spine.

Rectangles are read off the bigon-free overlay of the two full pants
systems.  Boundary indices in a witness are pants-local (1..3): they track
boundary circles of a pants component, not curves, so a curve bounding one
pants twice contributes two distinct indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .arrangement import (Arrangement, Region, cut_along, isotopic,
                          minimal_position)
from .curves import CurveSystem
from .heegaard import CutSystem, HeegaardPair, bounds_in_handlebody
from .surface import Surface
from .trisections import TrisectionDiagram
from .twist import dehn_twist


class RectangleError(ValueError):
    pass


@dataclass(frozen=True)
class PantsDecomposition:
    surface: Surface
    system: CurveSystem          # 3g-3 disjoint essential curves
    pieces: tuple                # cut-along certificate (all pants)
    pants: tuple                 # per piece: 3 curve indices, one per circle

    @property
    def genus(self) -> int:
        return self.surface.genus

    def curve(self, i: int) -> CurveSystem:
        return self.system.component_system(i)


def validate_pants(s: Surface, sys: CurveSystem) -> PantsDecomposition:
    """Certify that 3g-3 curves cut the surface into 2g-2 pants."""
    if s.n_boundary:
        raise RectangleError("pants decompositions live on closed surfaces")
    if sys.surface != s:
        raise RectangleError("system on a different surface")
    g = s.genus
    if g < 2:
        raise RectangleError("need genus at least 2")
    if len(sys.components) != 3 * g - 3:
        raise RectangleError(
            f"wrong curve count: need {3 * g - 3}, got {len(sys.components)}")
    for c in sys.components:
        if not c.closed:
            raise RectangleError("pants curves must be closed")
        if c.floating is not None:
            raise RectangleError("trivial (floating) curve")
    for i, j in itertools.combinations(range(len(sys.components)), 2):
        if isotopic(sys, sys, i, j):
            raise RectangleError(f"curves {i} and {j} are isotopic")
    pieces = cut_along(s, sys)
    if len(pieces) != 2 * g - 2:
        raise RectangleError(
            f"complement has {len(pieces)} components, wanted {2 * g - 2}")
    pants = []
    for p in pieces:
        if not p.is_pants:
            raise RectangleError(
                f"non-pants component (chi={p.chi}, genus={p.genus}, "
                f"{p.n_boundary} boundary circles)")
        labels = []
        for word in p.boundary_words:
            names = set(word)
            if len(names) != 1:
                raise RectangleError("mixed boundary word in pants piece")
            labels.append(int(next(iter(names))[1:]))
        pants.append(tuple(labels))
    return PantsDecomposition(s, sys, tuple(pieces), tuple(pants))


# -- extended diagrams -------------------------------------------------------

@dataclass(frozen=True)
class ExtendedDiagram:
    """A Heegaard pair or trisection diagram together with one pants
    decomposition per cut system, each containing the cut curves and
    adding only curves that bound in the matching handlebody."""
    base: Union[HeegaardPair, TrisectionDiagram]
    pants: tuple            # PantsDecomposition per system
    base_indices: tuple     # per system: pants-curve index of each cut curve

    @property
    def surface(self) -> Surface:
        return self.pants[0].surface

    def base_systems(self) -> tuple:
        if isinstance(self.base, HeegaardPair):
            return (self.base.alpha, self.base.beta)
        return (self.base.alpha, self.base.beta, self.base.gamma)


def extend_diagram(base, pants: Sequence) -> ExtendedDiagram:
    """Attach validated pants decompositions to a diagram's cut systems."""
    if isinstance(base, HeegaardPair):
        cuts = (base.alpha, base.beta)
    elif isinstance(base, TrisectionDiagram):
        cuts = (base.alpha, base.beta, base.gamma)
    else:
        raise RectangleError("base must be a Heegaard pair or trisection")
    if len(pants) != len(cuts):
        raise RectangleError(
            f"need {len(cuts)} pants decompositions, got {len(pants)}")
    all_indices = []
    for cut, pd in zip(cuts, pants):
        if not isinstance(pd, PantsDecomposition):
            raise RectangleError("extensions must be validated pants")
        if pd.surface != cut.surface:
            raise RectangleError("extension on a different surface")
        matched = []
        for i in range(len(cut.system.components)):
            hit = None
            for j in range(len(pd.system.components)):
                if j in matched:
                    continue
                if isotopic(cut.system, pd.system, i, j):
                    hit = j
                    break
            if hit is None:
                raise RectangleError(
                    f"cut curve {i} missing from the extension")
            matched.append(hit)
        for j in range(len(pd.system.components)):
            if j in matched:
                continue
            if not bounds_in_handlebody(pd.system, cut, j):
                raise RectangleError(
                    f"extra curve {j} does not bound in the handlebody")
        all_indices.append(tuple(matched))
    return ExtendedDiagram(base, tuple(pants), tuple(all_indices))


# -- rectangle detection -----------------------------------------------------

@dataclass(frozen=True)
class RectangleWitness:
    pants_a: int            # region id in the alpha-side complement
    pants_b: int            # region id in the beta-side complement
    types_a: tuple          # pants-local boundary indices {i, j} on the a side
    types_b: tuple          # pants-local boundary indices {k, l} on the b side
    face_id: int


def pants_regions(arr: Arrangement, which: int) -> list:
    """Complementary pants of one system of a two-system overlay."""
    return arr.mesh.decompose(frozenset({which}))


def _dart_circle_map(regions):
    """Map each boundary-circle dart of each region to
    (region index, 1-based circle index)."""
    out = {}
    for ri, r in enumerate(regions):
        for ci, circ in enumerate(r.circles):
            for d in circ:
                out[d] = (ri, ci + 1)
    return out


def _rectangle_faces(arr: Arrangement):
    """Faces of the overlay that are disks with four sides alternating
    between the systems, as (face, side-darts by system)."""
    out = []
    for face in arr.faces():
        if not face.is_disk:
            continue
        if len(face.corner_nodes(0)) != 4:
            continue
        sides = face.sides(0)
        if len(sides) != 4:
            continue
        order = [lab[1] for lab, _ in sides if lab[0] == "curve"]
        if len(order) != 4 or order not in ([0, 1, 0, 1], [1, 0, 1, 0]):
            continue
        by_sys = {0: [], 1: []}
        for lab, darts in sides:
            by_sys[lab[1]].append(darts)
        out.append((face, by_sys))
    return out


def saturated_pair(pa: Region, pb: Region,
                   arr: Arrangement) -> tuple[bool, list[RectangleWitness]]:
    """Does every rectangle type {i,j} x {k,l} occur between these pants?

    ``pa`` and ``pb`` must be complementary regions of systems 0 and 1 of
    the bigon-free overlay ``arr``.  A witness face lies inside both pants
    and its four sides run along boundary circles i != j of ``pa`` and
    k != l of ``pb``.
    """
    if arr.mesh.bigon_candidates() and arr.bigons():
        raise RectangleError("overlay still carries bigons")
    cells_a, cells_b = set(pa.cells), set(pb.cells)
    dmap_a = _dart_circle_map([pa])
    dmap_b = _dart_circle_map([pb])
    witnesses = []
    for face, by_sys in _rectangle_faces(arr):
        if not set(face.cells) <= cells_a or not set(face.cells) <= cells_b:
            continue
        try:
            ia = tuple(sorted(dmap_a[darts[0]][1] for darts in by_sys[0]))
            ib = tuple(sorted(dmap_b[darts[0]][1] for darts in by_sys[1]))
        except KeyError:
            # a side runs along a curve not bounding this pants: impossible
            # for a face inside the pants, so treat as a hard error
            raise RectangleError("rectangle side off the pants boundary")
        if ia[0] == ia[1] or ib[0] == ib[1]:
            continue
        witnesses.append(RectangleWitness(pa.id, pb.id, ia, ib, face.id))
    need = set(itertools.product(
        itertools.combinations((1, 2, 3), 2),
        itertools.combinations((1, 2, 3), 2)))
    have = {(w.types_a, w.types_b) for w in witnesses}
    return need <= have, witnesses


def _pairwise_crossing_counts(arr: Arrangement):
    """Crossings per (component of system 0, component of system 1)."""
    counts: dict[tuple[int, int], int] = {}
    for (node, poly, ka, kb, sign) in arr.mesh.crossings:
        counts[(ka[1], kb[1])] = counts.get((ka[1], kb[1]), 0) + 1
    return counts


@dataclass
class Scorecard:
    """Per-pair saturation audit of one pants decomposition against
    another (or, for trisections, against each of the other two)."""
    pair_results: tuple     # ((pa id, against, pb id, saturated, n witnesses), ...)
    saturated: bool
    witnesses: tuple = ()


def _saturation(pa_sys: CurveSystem, pb_sys: CurveSystem):
    """All-pairs saturation data for two full pants systems."""
    arr = minimal_position(pa_sys, pb_sys)
    ras = pants_regions(arr, 0)
    rbs = pants_regions(arr, 1)
    results, all_wit = [], []
    ok = True
    for ra in ras:
        for rb in rbs:
            sat, wit = saturated_pair(ra, rb, arr)
            results.append((ra.id, rb.id, sat, len(wit)))
            all_wit.extend(wit)
            ok = ok and sat
    return ok, tuple(results), tuple(all_wit)


def rectangle_condition_heegaard(e: ExtendedDiagram,
                                 audit: bool = False):
    """Casson-Gordon test: every alpha-side pants saturated against every
    beta-side pants.  True certifies an irreducible splitting."""
    if len(e.pants) != 2:
        raise RectangleError("need a two-system extended diagram")
    pa, pb = e.pants
    # a disjoint curve pair can never be saturated; cheap necessary test
    arr = minimal_position(pa.system, pb.system)
    counts = _pairwise_crossing_counts(arr)
    prefilter = all(counts.get((i, j), 0) > 0
                    for i in range(len(pa.system.components))
                    for j in range(len(pb.system.components)))
    if not prefilter and not audit:
        return False
    ok, results, wit = _saturation(pa.system, pb.system)
    if ok and not prefilter:
        raise RectangleError("saturated overlay with a disjoint curve pair")
    if audit:
        return Scorecard(results, ok, wit)
    return ok


def rectangle_condition_trisection(e: ExtendedDiagram,
                                   audit: bool = False):
    """True iff every alpha-side pants is saturated against all beta-side
    pants, or against all gamma-side pants.  The test is asymmetric in the
    alpha system by definition."""
    if len(e.pants) != 3:
        raise RectangleError("need a three-system extended diagram")
    pa, pb, pg = e.pants
    arr_b = minimal_position(pa.system, pb.system)
    arr_g = minimal_position(pa.system, pg.system)
    sat_b = _pants_saturation_by_corner(arr_b)
    sat_g = _pants_saturation_by_corner(arr_g)
    if set(sat_b[0]) != set(sat_g[0]):
        raise RectangleError("alpha complement mismatch between overlays")
    ok = all(sat_b[0][key] or sat_g[0][key] for key in sat_b[0])
    if audit:
        results = tuple((key, "beta", sat_b[0][key], "gamma", sat_g[0][key])
                        for key in sorted(sat_b[0]))
        return Scorecard(results, ok, sat_b[1] + sat_g[1])
    return ok


def _corner_anchors(arr: Arrangement, regions) -> dict:
    """Region index containing each polygon corner.

    Corners are never crossed when systems are isotoped into minimal
    position (bigon removal only moves the higher-numbered system, and
    mark repositioning slides within open edges), so the corner sets of
    the system-0 complement agree across overlays of the same system."""
    mesh = arr.mesh
    by_cell = {c: ri for ri, r in enumerate(regions) for c in r.cells}
    out = {}
    for e in mesh.edges:
        if e.kind == "seg":
            continue
        for node in mesh.dart_nodes((e.eid, 0)):
            if node[0] != "b":
                continue
            _, desc, _ = mesh.bpoint_list[node[1]][node[2]]
            if desc[0] != "corner":
                continue
            out[(node[1], desc[1])] = by_cell[mesh.cell_of_dart[(e.eid, 0)][0]]
    return out


def _pants_saturation_by_corner(arr: Arrangement):
    """Per alpha-side pants, keyed by the corners the pants contains:
    saturated against every beta-side pants?"""
    ras = pants_regions(arr, 0)
    rbs = pants_regions(arr, 1)
    anchors = _corner_anchors(arr, ras)
    keys = [frozenset(c for c, ri in anchors.items() if ri == i)
            for i in range(len(ras))]
    if any(not k for k in keys):
        raise RectangleError("a pants component contains no polygon corner")
    flags, wit = {}, []
    for key, ra in zip(keys, ras):
        good = True
        for rb in rbs:
            sat, w = saturated_pair(ra, rb, arr)
            wit.extend(w)
            good = good and sat
        flags[key] = good
    return flags, tuple(wit)


# -- bounded search ----------------------------------------------------------

def _twist_extension(e: ExtendedDiagram, s: int, t: CurveSystem,
                     power: int) -> ExtendedDiagram:
    """Re-extend after twisting system ``s`` (cut curves and extension
    together) along ``t``; raises if the twisted data no longer validates."""
    from .heegaard import validate_cut_system
    from .trisections import assemble_diagram

    new_pants_sys = dehn_twist(e.pants[s].system, t, power)
    new_pd = validate_pants(e.surface, new_pants_sys)
    cuts = list(e.base_systems())
    twisted_cut = CurveSystem(
        e.surface,
        [new_pants_sys.components[j] for j in e.base_indices[s]])
    cuts[s] = validate_cut_system(e.surface, twisted_cut)
    pants = list(e.pants)
    pants[s] = new_pd
    if isinstance(e.base, HeegaardPair):
        base = HeegaardPair(cuts[0], cuts[1])
    else:
        base = assemble_diagram(cuts[0].system, cuts[1].system,
                                cuts[2].system)
    return extend_diagram(base, pants)


def _candidate_key(e: ExtendedDiagram):
    return tuple(pd.system.canonical_key() for pd in e.pants)


def _evaluate(e: ExtendedDiagram) -> Scorecard:
    if len(e.pants) == 2:
        return rectangle_condition_heegaard(e, audit=True)
    return rectangle_condition_trisection(e, audit=True)


def rc_search(seed: ExtendedDiagram, twist_curves: Sequence[CurveSystem],
              power_bound: int = 1, node_budget: int = 0) -> dict:
    """Bounded deterministic scan for a diagram passing the Rectangle
    Condition, over twist perturbations of the seed's systems.

    Each move twists one whole extension (cut system included) along one
    of the given curves; candidates that fail to re-validate are skipped.
    Returns a report with per-candidate scorecards and any positives;
    exhausting the budget yields a partial report, not an error.
    """
    seed_card = _evaluate(seed)
    report = {
        "seed": seed_card,
        "candidates": [],
        "positives": [seed] if seed_card.saturated else [],
        "exhausted": False,
    }
    if node_budget <= 0:
        return report
    seen = {_candidate_key(seed)}
    queue = [seed]
    spent = 0
    while queue and spent < node_budget:
        cur = queue.pop(0)
        for s in range(len(cur.pants)):
            for ti, t in enumerate(twist_curves):
                for p in range(-power_bound, power_bound + 1):
                    if p == 0 or spent >= node_budget:
                        continue
                    try:
                        cand = _twist_extension(cur, s, t, p)
                    except ValueError:
                        continue
                    key = _candidate_key(cand)
                    if key in seen:
                        continue
                    seen.add(key)
                    spent += 1
                    card = _evaluate(cand)
                    report["candidates"].append(
                        ((s, ti, p), card, cand))
                    if card.saturated:
                        report["positives"].append(cand)
                    queue.append(cand)
    report["exhausted"] = spent >= node_budget and bool(queue)
    return report
