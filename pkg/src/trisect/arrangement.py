"""Overlay of curve systems as an embedded graph on a polygonal surface.

The overlay is built polygon by polygon.  Boundary points of a polygon are
placed in convex position, so chord crossings, crossing order along a chord
and the rotation system at every node are pure cyclic-order computations on
boundary indices — no coordinate arithmetic is needed and everything is
exact and deterministic.  Faces are traced from the rotation system and
complementary regions are obtained by gluing cells across identified edge
fragments.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

from .surface import CutPiece, Dart, Surface, UnionFind
from .curves import Component, CurveError, CurveSystem, iter_chords


class ArrangementError(ValueError):
    pass


# -- coordinate interleaving ----------------------------------------------------

def edge_key(surface: Surface, dart: Dart) -> Dart:
    partner = surface.glue.get(dart)
    return dart if partner is None or dart < partner else partner


def merge_systems(surface: Surface,
                  systems: Sequence[CurveSystem],
                  order=None) -> list[CurveSystem]:
    """Reassign crossing positions so that marks of different systems never
    collide.  Within each system the order of marks along every edge is kept;
    across systems the default ("canonical") order puts the marks of system
    0 first, then system 1, and so on, along the edge-fixed orientation.

    ``order`` may be "preserve" (keep the existing cross-system order of a
    collision-free configuration, only renormalizing positions), "position"
    (order strictly by current position, breaking ties by system), or a
    callable mapping the merged mark list to a permutation of itself, for
    randomized interleaving tests.
    """
    per_edge: dict[Dart, list] = {}
    for si, sys in enumerate(systems):
        if sys.surface != surface:
            raise ArrangementError("system on a different surface")
        for ci, comp in enumerate(sys.components):
            if comp.floating is not None:
                raise ArrangementError(
                    "floating components cannot participate in an overlay")
            for k, (d, x) in enumerate(comp.transits):
                key = edge_key(surface, d)
                fixed = x if d == key else 1 - x
                per_edge.setdefault(key, []).append((fixed, si, ci, k, d))
    new_pos: dict[tuple[int, int, int], tuple[Dart, Fraction]] = {}
    for key in sorted(per_edge):
        entries = sorted(per_edge[key])  # by fixed position, then system
        if order == "preserve":
            if any(a[0] == b[0] for a, b in zip(entries, entries[1:])):
                raise ArrangementError("mark collision under preserve order")
            merged = entries
        elif order == "position":
            merged = entries
        else:
            by_sys: dict[int, list] = {}
            for e in entries:
                by_sys.setdefault(e[1], []).append(e)
            merged = []
            for si in sorted(by_sys):
                merged.extend(by_sys[si])
            if callable(order):
                merged = order(merged)
        m = len(merged)
        for j, (fixed, si, ci, k, d) in enumerate(merged):
            nf = Fraction(j + 1, m + 1)
            new_pos[(si, ci, k)] = (d, nf if d == key else 1 - nf)
    out = []
    for si, sys in enumerate(systems):
        comps = []
        for ci, comp in enumerate(sys.components):
            ts = tuple(new_pos[(si, ci, k)] for k in range(len(comp.transits)))
            comps.append(Component(comp.closed, ts))
        out.append(CurveSystem(surface, comps, sys.framings, check=False))
    return out


# -- mesh ------------------------------------------------------------------------

class MeshEdge:
    __slots__ = ("eid", "poly", "kind", "u", "v", "tuv", "tvu",
                 "side", "lo", "hi", "sys", "comp", "chord", "seg")

    def __init__(self, eid, poly, kind, u, v, tuv, tvu, **kw):
        self.eid = eid
        self.poly = poly
        self.kind = kind  # "arc" (piece of a polygon side) or "seg"
        self.u = u
        self.v = v
        self.tuv = tuv    # boundary index the dart u->v points toward
        self.tvu = tvu
        self.side = kw.get("side")
        self.lo = kw.get("lo")
        self.hi = kw.get("hi")
        self.sys = kw.get("sys")
        self.comp = kw.get("comp")
        self.chord = kw.get("chord")
        self.seg = kw.get("seg")


class Mesh:
    """The refined complex of a surface together with curve systems.

    Crossing data is available immediately; the rotation system, cells and
    identifications are built lazily on first face query.
    """

    def __init__(self, surface: Surface, systems: Sequence[CurveSystem]):
        self.surface = surface
        self.systems = list(systems)
        self._faces_ready = False
        self._build_core()

    def _build_core(self):
        surf = self.surface
        pts: dict[int, dict] = {p: {} for p in range(len(surf.side_counts))}
        for p in range(len(surf.side_counts)):
            for i in range(surf.side_counts[p]):
                pts[p][(i, Fraction(0))] = ("corner", i)
        self.mark_info = {}  # (sys, comp, k) -> {"dart": .., "pos": ..}
        for si, sys in enumerate(self.systems):
            for ci, comp in enumerate(sys.components):
                if comp.floating is not None:
                    raise ArrangementError("floating component in mesh")
                n = len(comp.transits)
                for k, (d, x) in enumerate(comp.transits):
                    if d in surf.glue:
                        pd = surf.glue[d]
                        self._add_pt(pts, d[0], (d[1], x),
                                     ("mark", si, ci, k, "in"))
                        self._add_pt(pts, pd[0], (pd[1], 1 - x),
                                     ("mark", si, ci, k, "out"))
                    else:
                        if comp.closed or (0 < k < n - 1):
                            raise CurveError("boundary transit mid-component")
                        self._add_pt(pts, d[0], (d[1], x),
                                     ("mark", si, ci, k, "end"))
                    self.mark_info[(si, ci, k)] = {"dart": d, "pos": x}

        self.bpoint_list = {}  # poly -> cyclic list of (key, desc, node)
        self.node_of_pt = {}   # (poly, side, pos) -> node id
        self.n_bpoints = {}
        for p in sorted(pts):
            items = sorted(pts[p].items())
            lst = []
            for j, (key, desc) in enumerate(items):
                node = ("b", p, j)
                lst.append((key, desc, node))
                self.node_of_pt[(p, key[0], key[1])] = node
            self.bpoint_list[p] = lst
            self.n_bpoints[p] = len(items)

        # chords per polygon, as boundary-index pairs
        self.chords = {p: [] for p in pts}  # (sys, comp, k, ju, jv)
        for si, sys in enumerate(self.systems):
            for ci, comp in enumerate(sys.components):
                for (p, bin_, bout, k) in iter_chords(surf, comp):
                    ju = self.node_of_pt[(p, bin_[0], bin_[1])][2]
                    jv = self.node_of_pt[(p, bout[0], bout[1])][2]
                    self.chords[p].append((si, ci, k, ju, jv))

        # crossings, ranked combinatorially along each chord
        self.crossings = []   # (node, poly, keyA, keyB, sign)
        self.cross_on_chord: dict[tuple, list] = {}
        xid = 0
        for p in sorted(self.chords):
            n = self.n_bpoints[p]
            chs = self.chords[p]
            for a in range(len(chs)):
                siA, ciA, kA, ja, jb = chs[a]
                for b in range(a + 1, len(chs)):
                    siB, ciB, kB, jc, jd = chs[b]
                    if siA == siB:
                        continue  # same system: disjoint inside polygons
                    if not _interleave(ja, jb, jc, jd, n):
                        continue
                    node = ("x", p, xid)
                    xid += 1
                    # sign of (dir A, dir B): +1 iff ccw order (ja jc jb jd)
                    sign = 1 if (jc - ja) % n < (jb - ja) % n else -1
                    self.crossings.append(
                        (node, p, (siA, ciA, kA), (siB, ciB, kB), sign))
                    # rank along each chord: by the other chord's endpoint
                    # lying in the ccw arc from the start
                    cA = jc if (jc - ja) % n < (jb - ja) % n else jd
                    cB = ja if (ja - jc) % n < (jd - jc) % n else jb
                    self.cross_on_chord.setdefault(
                        (siA, ciA, kA), []).append(((cA - ja) % n, node))
                    self.cross_on_chord.setdefault(
                        (siB, ciB, kB), []).append(((cB - jc) % n, node))
        # with more than two mutually-crossing systems, crossing order
        # along a chord is no longer determined by endpoints alone
        crossing_systems = {c[2][0] for c in self.crossings} | \
                           {c[3][0] for c in self.crossings}
        if len(crossing_systems) > 2:
            raise ArrangementError(
                "crossings between more than two systems are not supported")
        self._crossing_by_node = {c[0]: c for c in self.crossings}
        self._pts = pts

    @staticmethod
    def _add_pt(pts, p, key, desc):
        if key in pts[p]:
            raise ArrangementError(f"mark collision in polygon {p} at {key}")
        pts[p][key] = desc

    # -- lazy face structure ------------------------------------------------------

    def _ensure_faces(self):
        if self._faces_ready:
            return
        self._build_edges()
        self._build_rotation()
        self._trace_cells()
        self._pair_arcs()
        self._check_euler()
        self._faces_ready = True

    def _build_edges(self):
        self.edges: list[MeshEdge] = []
        for p in sorted(self.bpoint_list):
            lst = self.bpoint_list[p]
            n = len(lst)
            for j in range(n):
                key_u, _, nu = lst[j]
                key_v, _, nv = lst[(j + 1) % n]
                side = key_u[0]
                lo = key_u[1]
                hi = key_v[1] if key_v[0] == side else Fraction(1)
                eid = len(self.edges)
                self.edges.append(MeshEdge(
                    eid, p, "arc", nu, nv, (j + 1) % n, j,
                    side=side, lo=lo, hi=hi))
        self.segs_of_chord = {}
        for p in sorted(self.chords):
            for (si, ci, k, ju, jv) in self.chords[p]:
                xs = sorted(self.cross_on_chord.get((si, ci, k), []))
                seq = [("b", p, ju)] + [nd for _, nd in xs] + [("b", p, jv)]
                tv, tu = jv, ju
                eids = []
                for s in range(len(seq) - 1):
                    eid = len(self.edges)
                    self.edges.append(MeshEdge(
                        eid, p, "seg", seq[s], seq[s + 1], tv, tu,
                        sys=si, comp=ci, chord=k, seg=s))
                    eids.append(eid)
                self.segs_of_chord[(si, ci, k)] = eids

    def _build_rotation(self):
        incid: dict = {}
        for e in self.edges:
            incid.setdefault(e.u, []).append((e.eid, 0))
            incid.setdefault(e.v, []).append((e.eid, 1))
        self.rot = {}
        for nd, darts in incid.items():
            p = nd[1]
            n = self.n_bpoints[p]
            if nd[0] == "b":
                base = nd[2]

                def key(dart, base=base, n=n):
                    e = self.edges[dart[0]]
                    t = e.tuv if dart[1] == 0 else e.tvu
                    off = (t - base) % n
                    # arc toward the next point hugs the boundary first;
                    # arc toward the previous point comes last
                    if e.kind == "arc":
                        tie = -1 if off == 1 else 1
                    else:
                        tie = 0
                    return (off, tie)
            else:
                def key(dart, n=n):
                    e = self.edges[dart[0]]
                    return ((e.tuv if dart[1] == 0 else e.tvu), 0)
            darts.sort(key=key)
            self.rot[nd] = darts

    def dart_nodes(self, dart):
        e = self.edges[dart[0]]
        return (e.u, e.v) if dart[1] == 0 else (e.v, e.u)

    def twin(self, dart):
        return (dart[0], 1 - dart[1])

    def next_in_face(self, dart):
        # face on the left: first dart clockwise from the twin
        t = self.twin(dart)
        nd = self.dart_nodes(dart)[1]
        r = self.rot[nd]
        i = r.index(t)
        return r[(i - 1) % len(r)]

    def _trace_cells(self):
        # the outer face of each polygon is the unique face using backward
        # boundary-arc darts; it is discarded.
        self.cells = []
        self.cell_of_dart = {}
        visited = set()
        for e in self.edges:
            for d in ((e.eid, 0), (e.eid, 1)):
                if d in visited:
                    continue
                face = []
                h = d
                while True:
                    face.append(h)
                    visited.add(h)
                    h = self.next_in_face(h)
                    if h == d:
                        break
                if any(self.edges[x[0]].kind == "arc" and x[1] == 1
                       for x in face):
                    continue
                cid = len(self.cells)
                self.cells.append(tuple(face))
                for i, x in enumerate(face):
                    self.cell_of_dart[x] = (cid, i)

    def _pair_arcs(self):
        """Identify boundary-arc edges across glued polygon sides."""
        surf = self.surface
        arcs_on_side: dict[Dart, list[int]] = {}
        for e in self.edges:
            if e.kind == "arc":
                arcs_on_side.setdefault((e.poly, e.side), []).append(e.eid)
        for lst in arcs_on_side.values():
            lst.sort(key=lambda eid: self.edges[eid].lo)
        self.arc_pairs = []
        self.arc_partner = {}
        done = set()
        for d in sorted(arcs_on_side):
            if d in done:
                continue
            partner = surf.glue.get(d)
            if partner is None:
                continue
            done.add(d)
            done.add(partner)
            a = arcs_on_side[d]
            b = arcs_on_side[partner]
            if len(a) != len(b):
                raise ArrangementError("mismatched subdivision on glued edge")
            for j, eid in enumerate(a):
                oid = b[len(b) - 1 - j]
                self.arc_pairs.append((eid, oid))
                self.arc_partner[eid] = oid
                self.arc_partner[oid] = eid

    def _check_euler(self):
        nf = len(self.cells)
        narc_pairs = len(self.arc_pairs)
        nbound = sum(1 for e in self.edges if e.kind == "arc"
                     and e.eid not in self.arc_partner)
        nseg = sum(1 for e in self.edges if e.kind == "seg")
        ne = narc_pairs + nbound + nseg
        nx = len(self.crossings)
        nv = nx + len(self.mark_info) + self.surface.n_vertices
        if nv - ne + nf != self.surface.chi:
            raise ArrangementError(
                f"refined complex fails Euler check: {nv}-{ne}+{nf} != "
                f"{self.surface.chi}")

    # -- queries ------------------------------------------------------------------

    def n_crossings(self) -> int:
        return len(self.crossings)

    def crossing_pairs(self):
        return [(c[2], c[3], c[4]) for c in self.crossings]

    def crossings_along(self, si: int, ci: int):
        """Crossings met travelling along component (si, ci), in order:
        (chord k, rank, node, other (sys, comp, chord), sign)."""
        comp = self.systems[si].components[ci]
        n = len(comp.transits)
        nch = n if comp.closed else n - 1
        out = []
        for k in range(nch):
            xs = sorted(self.cross_on_chord.get((si, ci, k), []))
            for rank, (_, node) in enumerate(xs):
                rec = self._crossing_by_node[node]
                if rec[2][:2] == (si, ci) and rec[2][2] == k:
                    other, sign = rec[3], rec[4]
                else:
                    other, sign = rec[2], -rec[4]
                out.append((k, rank, node, other, sign))
        return out

    def bigon_candidates(self) -> bool:
        """Fast necessary condition: some pair of crossings is adjacent
        along both systems with opposite signs.  False certifies that no
        bigon exists without tracing faces."""
        adj = {}
        for si, sys in enumerate(self.systems):
            for ci, comp in enumerate(sys.components):
                seq = [x[2] for x in self.crossings_along(si, ci)]
                if len(seq) < 2:
                    continue
                pairs = list(zip(seq, seq[1:]))
                if comp.closed and len(seq) > 1:
                    pairs.append((seq[-1], seq[0]))
                for a, b in pairs:
                    key = frozenset((a, b))
                    adj.setdefault(key, set()).add(si)
        for key, sides in adj.items():
            if len(sides) < 2 or len(key) < 2:
                continue
            a, b = sorted(key)
            sa = self._crossing_by_node[a][4]
            sb = self._crossing_by_node[b][4]
            if sa != sb:
                return True
        return False

    # -- regions -----------------------------------------------------------------

    def decompose(self, walls: frozenset[int]) -> list["Region"]:
        """Complementary regions of the union of the wall systems."""
        self._ensure_faces()
        uf = UnionFind()
        for (a, b) in self.arc_pairs:
            ca = self.cell_of_dart[(a, 0)][0]
            cb = self.cell_of_dart[(b, 0)][0]
            uf.union(ca, cb)
        for e in self.edges:
            if e.kind == "seg" and e.sys not in walls:
                c0 = self.cell_of_dart[(e.eid, 0)][0]
                c1 = self.cell_of_dart[(e.eid, 1)][0]
                uf.union(c0, c1)
        groups = uf.classes(range(len(self.cells)))
        regions = []
        for root in sorted(groups, key=lambda r: min(groups[r])):
            regions.append(Region(self, walls, sorted(groups[root])))
        return regions


def _interleave(a, b, c, d, n):
    """Do chords (a,b) and (c,d) interleave on a cycle of n points?"""
    lo = (b - a) % n
    return ((c - a) % n < lo) != ((d - a) % n < lo)


class Region:
    """One complementary region of the wall systems inside a mesh."""

    def __init__(self, mesh: Mesh, walls: frozenset[int], cells: list[int]):
        self.mesh = mesh
        self.walls = walls
        self.cells = cells
        self.id = min(cells)
        self._classify()

    def _classify(self):
        mesh = self.mesh
        cellset = set(self.cells)
        local = {c: li for li, c in enumerate(self.cells)}
        side_counts = [len(mesh.cells[c]) for c in self.cells]
        gluings = []

        def loc(dart):
            cid, idx = mesh.cell_of_dart[dart]
            return (local[cid], idx) if cid in cellset else None

        for (a, b) in mesh.arc_pairs:
            la, lb = loc((a, 0)), loc((b, 0))
            if la is not None and lb is not None:
                gluings.append((la, lb))
        for e in mesh.edges:
            if e.kind == "seg" and e.sys not in self.walls:
                l0, l1 = loc((e.eid, 0)), loc((e.eid, 1))
                if l0 is not None and l1 is not None:
                    gluings.append((l0, l1))
        piece = Surface(side_counts, gluings, require_connected=False)
        self.chi = piece.chi
        self.genus = piece.genus
        self._local_surface = piece
        self.circles = []
        for circ in piece.boundary_circles:
            steps = []
            for (lp, idx) in circ:
                steps.append(mesh.cells[self.cells[lp]][idx])
            self.circles.append(tuple(steps))

    @property
    def n_boundary(self) -> int:
        return len(self.circles)

    @property
    def is_disk(self):
        return self.chi == 1 and self.genus == 0 and self.n_boundary == 1

    @property
    def is_annulus(self):
        return self.chi == 0 and self.genus == 0 and self.n_boundary == 2

    @property
    def is_pants(self):
        return self.chi == -1 and self.genus == 0 and self.n_boundary == 3

    def circle_labels(self, ci: int):
        """Per step: ("curve", sys, comp, chord, seg, dir) or
        ("edge", surface boundary circle index)."""
        mesh = self.mesh
        out = []
        for dart in self.circles[ci]:
            e = mesh.edges[dart[0]]
            if e.kind == "seg":
                out.append(("curve", e.sys, e.comp, e.chord, e.seg, dart[1]))
            else:
                k = mesh.surface.boundary_of((e.poly, e.side))
                out.append(("edge", k))
        return out

    def corner_nodes(self, ci: int):
        """Crossing nodes passed by boundary circle ci (with multiplicity)."""
        mesh = self.mesh
        out = []
        for dart in self.circles[ci]:
            nd = mesh.dart_nodes(dart)[1]
            if nd[0] == "x":
                out.append(nd)
        return out

    def sides(self, ci: int):
        """Maximal runs of the boundary circle between crossing corners, as
        (label, darts).  A circle passing no crossing is a single side."""
        mesh = self.mesh
        circ = self.circles[ci]
        n = len(circ)
        cuts = [i for i in range(n)
                if mesh.dart_nodes(circ[i])[1][0] == "x"]
        if not cuts:
            labels = self.circle_labels(ci)
            return [(_run_label(labels), list(circ))]
        sides = []
        for a, b in zip(cuts, cuts[1:] + [cuts[0] + n]):
            darts = [circ[i % n] for i in range(a + 1, b + 1)]
            labels = []
            for d in darts:
                e = mesh.edges[d[0]]
                if e.kind == "seg":
                    labels.append(("curve", e.sys, e.comp))
                else:
                    labels.append(("edge",))
            sides.append((_run_label(labels), darts))
        return sides


def _run_label(labels):
    kinds = {l[:3] if l and l[0] == "curve" else ("edge",) for l in labels}
    curve_kinds = {k for k in kinds if k[0] == "curve"}
    if len(curve_kinds) == 1:
        return next(iter(curve_kinds))
    if not curve_kinds:
        return ("edge",)
    return ("mixed",)


# -- public operations -------------------------------------------------------------


class Arrangement:
    """Overlay of two (or more) curve systems."""

    def __init__(self, surface: Surface, systems: Sequence[CurveSystem],
                 interleave="canonical"):
        if callable(interleave) or interleave in ("preserve", "position"):
            order = interleave
        elif interleave == "canonical":
            order = None
        else:
            raise ArrangementError(f"unknown interleave {interleave!r}")
        self.surface = surface
        self.systems = merge_systems(surface, systems, order)
        self.mesh = Mesh(surface, self.systems)

    def n_crossings(self):
        return self.mesh.n_crossings()

    def faces(self):
        return self.mesh.decompose(frozenset(range(len(self.systems))))

    def bigons(self):
        if not self.mesh.bigon_candidates():
            return []
        out = []
        for r in self.faces():
            if not r.is_disk:
                continue
            if len(r.corner_nodes(0)) != 2:
                continue
            sides = r.sides(0)
            syss = {lab[1] for lab, _ in sides if lab[0] == "curve"}
            if len(sides) == 2 and len(syss) == 2:
                out.append(r)
        return out


def overlay(a: CurveSystem, b: CurveSystem,
            interleave="canonical") -> Arrangement:
    if a.surface != b.surface:
        raise ArrangementError("systems on different surfaces")
    return Arrangement(a.surface, [a, b], interleave)


def _adjacent_position(mesh: Mesh, poly: int, side: int, pos: Fraction,
                       toward_hi: bool) -> Fraction:
    """A fresh position adjacent to ``pos`` on (poly, side), inside the
    mark-free fragment on the chosen side of pos."""
    pts = sorted(key[1] for (key, desc, node) in mesh.bpoint_list[poly]
                 if key[0] == side)
    pts = [Fraction(0)] + [x for x in pts if x > 0] + [Fraction(1)]
    i = pts.index(pos)
    # stay in the first third of the free interval so that marks placed
    # from both ends of one interval cannot collide
    if toward_hi:
        return pos + (pts[i + 1] - pos) / 3
    return pos - (pos - pts[i - 1]) / 3


def _travel_steps(mesh: Mesh, darts):
    """Marks passed between consecutive darts of a curve run, as
    (sys, comp, k, forward): forward says whether the travel crosses the
    marked edge the same way as the stored transit."""
    out = []
    for d1, d2 in zip(darts, darts[1:]):
        nd = mesh.dart_nodes(d1)[1]
        if nd[0] != "b":
            continue
        p, j = nd[1], nd[2]
        key, desc, node = mesh.bpoint_list[p][j]
        if desc[0] != "mark":
            raise ArrangementError("curve run passes a corner")
        _, si, ci, k, role = desc
        # the arriving node copy sits in the polygon being exited: role
        # "out" means the travel crosses the edge the same way as the
        # stored transit (which enters through its dart on the far side).
        out.append((si, ci, k, role == "out"))
    return out


def _bigon_side_runs(region: Region):
    sides = region.sides(0)
    if len(sides) != 2:
        raise ArrangementError("not a bigon")
    return sides


def remove_bigons(arr: Arrangement) -> Arrangement:
    """Remove bigons between distinct systems by isotoping the side on the
    larger-numbered system across the other; deterministic order."""
    surface = arr.surface
    systems = list(arr.systems)
    while True:
        work = Arrangement(surface, systems, interleave="preserve")
        systems = list(work.systems)  # renormalized coordinates
        bigs = work.bigons()
        if not bigs:
            return work
        big = min(bigs, key=lambda r: r.id)
        sides = _bigon_side_runs(big)
        sides = sorted(sides, key=lambda s: s[0][1])  # by system index
        (lab_keep, darts_keep), (lab_move, darts_move) = sides
        systems[lab_move[1]] = _isotope_across(
            work.mesh, lab_keep, darts_keep, lab_move, darts_move)


def _isotope_across(mesh: Mesh, lab_keep, darts_keep, lab_move, darts_move):
    """Rewrite the moving system so its bigon side is replaced by a parallel
    copy of the kept side, past the far side of the kept curve."""
    si_m, ci_m = lab_move[1], lab_move[2]
    sys_m = mesh.systems[si_m]
    comp = sys_m.components[ci_m]
    n = len(comp.transits)

    first_e = mesh.edges[darts_move[0][0]]
    last_e = mesh.edges[darts_move[-1][0]]
    fwd = darts_move[0][1] == 0  # dart 0 is oriented along the chord
    k_start = first_e.chord
    k_end = last_e.chord

    # transits consumed by the run: exactly the marks it passes
    removed = [k for (_, _, k, _) in _travel_steps(mesh, darts_move)]
    removed_set = set(removed)
    # new marks go right after the last retained transit before the run
    insert_after = k_start if fwd else k_end

    # The bigon boundary runs ...darts_move... then ...darts_keep...;
    # the replacement strand travels parallel to the kept side, from the
    # start of darts_move to its end, i.e. along reversed darts_keep.
    keep_path = [mesh.twin(d) for d in reversed(darts_keep)]
    new_marks = []
    for d1, d2 in zip(keep_path, keep_path[1:]):
        nd = mesh.dart_nodes(d1)[1]
        if nd[0] != "b":
            continue
        p, j = nd[1], nd[2]
        key, desc, node = mesh.bpoint_list[p][j]
        _, si_k, ci_k, k_k, role = desc
        tdart = mesh.mark_info[(si_k, ci_k, k_k)]["dart"]
        forward = role == "out"
        # epsilon side: away from the bigon.  The bigon contains the cell
        # left of the original circle dart (twin of d1); the arc germ inside
        # the bigon at this node is the dart preceding that circle dart in
        # its cell.  The new mark goes on the other germ.
        orig = mesh.twin(d1)  # circle dart with tail at this node
        cid, idx = mesh.cell_of_dart[orig]
        cyc = mesh.cells[cid]
        prv = cyc[(idx - 1) % len(cyc)]
        germ = mesh.edges[prv[0]]
        if germ.kind != "arc":
            raise ArrangementError("bigon side corner mismatch")
        pos_here = key[1]
        if germ.lo == pos_here:
            inner_hi = True   # bigon germ covers positions above pos
        elif germ.hi == pos_here:
            inner_hi = False
        else:
            raise ArrangementError("bigon germ does not touch the mark")
        newpos_sideframe = _adjacent_position(
            mesh, p, key[0], pos_here, toward_hi=not inner_hi)
        nd_dart = tdart if forward else mesh.surface.glue[tdart]
        # convert the position from the (p, side) frame to nd_dart's frame
        if nd_dart[0] == p and nd_dart[1] == key[0]:
            npos = newpos_sideframe
        else:
            npos = 1 - newpos_sideframe
        new_marks.append((nd_dart, npos))

    if not fwd:
        new_marks = [(mesh.surface.glue[d], 1 - x)
                     for (d, x) in reversed(new_marks)]

    old = list(comp.transits)
    if comp.closed:
        if len(removed_set) == n:
            out = list(new_marks)
        else:
            if insert_after in removed_set:
                raise ArrangementError("inconsistent bigon run")
            out = [old[insert_after]] + list(new_marks)
            j = (insert_after + 1) % n
            while j != insert_after:
                if j not in removed_set:
                    out.append(old[j])
                j = (j + 1) % n
    else:
        out = []
        for j in range(n):
            if j in removed_set:
                continue
            out.append(old[j])
            if j == insert_after:
                out.extend(new_marks)
    new_comp = Component(comp.closed, tuple(out))
    comps = list(sys_m.components)
    comps[ci_m] = new_comp
    return CurveSystem(mesh.surface, comps, sys_m.framings)


def minimal_position(a: CurveSystem, b: CurveSystem) -> Arrangement:
    """Overlay with all bigons removed."""
    arr = overlay(a, b, interleave="position")
    if not arr.mesh.bigon_candidates():
        return arr
    return remove_bigons(arr)


def geometric_intersection_number(c1: CurveSystem, c2: CurveSystem) -> int:
    return minimal_position(c1, c2).n_crossings()


def isotopic(c1: CurveSystem, c2: CurveSystem,
             k1: int = 0, k2: int = 0) -> bool:
    """True iff the chosen closed components are isotopic on their surface."""
    a = c1.component_system(k1)
    b = c2.component_system(k2)
    ca, cb = a.components[0], b.components[0]
    if ca.floating is not None or cb.floating is not None:
        from .curves import is_trivial
        return is_trivial(c1, k1) and is_trivial(c2, k2)
    arr = minimal_position(a, b)
    if arr.n_crossings() != 0:
        return False
    for r in arr.mesh.decompose(frozenset({0, 1})):
        if not r.is_annulus:
            continue
        labs = [{lab[1] for lab in r.circle_labels(i)
                 if lab[0] == "curve"} for i in range(2)]
        if (labs[0] == {0} and labs[1] == {1}) or \
           (labs[0] == {1} and labs[1] == {0}):
            return True
    return False


def cut_along(surface: Surface, system: CurveSystem) -> list[CutPiece]:
    """Components of the surface cut along the system."""
    if any(c.floating is not None for c in system.components):
        raise ArrangementError("cut_along does not accept floating circles")
    if len(system.components) == 0:
        words = []
        for k in range(surface.n_boundary):
            name = surface.label_of_circle(k)
            words.append((name if name else f"b{k}",))
        return [CutPiece(0, surface.chi, surface.genus,
                         tuple(sorted(words)))]
    merged = merge_systems(surface, [system])
    mesh = Mesh(surface, merged)
    out = []
    for pid, r in enumerate(mesh.decompose(frozenset({0}))):
        words = []
        for ci in range(r.n_boundary):
            labs = []
            for lab in r.circle_labels(ci):
                if lab[0] == "curve":
                    labs.append(f"c{lab[2]}")
                else:
                    name = surface.label_of_circle(lab[1])
                    labs.append(name if name else f"b{lab[1]}")
            word = [x for x, _ in itertools.groupby(labs)]
            if len(word) > 1 and word[0] == word[-1]:
                word = word[:-1]
            words.append(tuple(word))
        out.append(CutPiece(pid, r.chi, r.genus, tuple(sorted(words))))
    return out
