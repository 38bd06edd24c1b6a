"""Brute-force rectangle audit used to cross-check the library checker.

Independent of the mesh code: each polygon is drawn with exact rational
coordinates (vertices in convex position, marks and straight chords placed
by their stored parameters), faces are traced geometrically, and regions
are glued up by union-find.  With two systems of internally disjoint
curves no three chords can pairwise cross, so the straight-line picture is
degeneracy-free and its face structure is forced.
"""

from fractions import Fraction
from functools import cmp_to_key


def _circle_pt(t):
    # rational point on the unit circle via the tan-half-angle map;
    # increasing parameter = increasing angle, so orders are ccw
    t = Fraction(t)
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def _seg_cross(p1, p2, p3, p4):
    """Proper intersection point of open segments, or None."""
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    w = (p3[0] - p1[0], p3[1] - p1[1])
    t = (w[0] * d2[1] - w[1] * d2[0]) / den
    u = (w[0] * d1[1] - w[1] * d1[0]) / den
    if not (0 < t < 1 and 0 < u < 1):
        return None
    return (p1[0] + t * d1[0], p1[1] + t * d1[1]), t, u


def _angle_cmp(a, b):
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return ha - hb
    cr = a[0] * b[1] - a[1] * b[0]
    return 0 if cr == 0 else (-1 if cr > 0 else 1)


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb

    def classes(self, keys):
        out = {}
        for k in keys:
            out.setdefault(self.find(k), []).append(k)
        return out


def _edge_key(surface, dart):
    partner = surface.glue.get(dart)
    return dart if partner is None or dart <= partner else partner


def _corner_orbits(surface):
    """Identify polygon corners glued to the same surface vertex."""
    uf = _UF()
    for (p, i), (q, j) in surface.glue.items():
        nq = surface.side_counts[q]
        uf.union(("c", p, i), ("c", q, (j + 1) % nq))
    return uf


class OracleComplex:
    """Exact straight-line drawing of two curve systems on a surface."""

    def __init__(self, surface, sys_a, sys_b):
        self.surface = surface
        self.systems = [sys_a, sys_b]
        self._place_marks()
        self._build_polygons()
        self._glue_cells()

    # -- geometry per polygon ------------------------------------------------

    def _place_marks(self):
        surf = self.surface
        # marks per edge key, in key-frame coordinates
        self.edge_marks = {}
        for si, sys in enumerate(self.systems):
            for ci, comp in enumerate(sys.components):
                for k, (d, x) in enumerate(comp.transits):
                    ek = _edge_key(surf, d)
                    pos = x if d == ek else 1 - x
                    lst = self.edge_marks.setdefault(ek, [])
                    if any(p == pos for p, _ in lst):
                        raise AssertionError("mark collision")
                    lst.append((pos, (si, ci, k)))
        for lst in self.edge_marks.values():
            lst.sort()

    def _chords(self, p):
        """Chords inside polygon p as (sysid, comp, k, in-point, out-point),
        where points are (side, local position on that side)."""
        surf = self.surface
        out = []
        for si, sys in enumerate(self.systems):
            for ci, comp in enumerate(sys.components):
                ts = comp.transits
                n = len(ts)
                for k in range(n):
                    d_in, x_in = ts[k]
                    if d_in[0] != p:
                        continue
                    d_nx, x_nx = ts[(k + 1) % n]
                    pd = surf.glue[d_nx]
                    assert pd[0] == p, "chord leaves through unglued side"
                    out.append((si, ci, k,
                                (d_in[1], x_in), (pd[1], 1 - x_nx)))
        return out

    def _build_polygons(self):
        surf = self.surface
        self.cells = []          # (polygon, tuple of darts); dart=(eid, dir)
        self.cell_of_dart = {}
        self.edge_info = {}      # local eid -> {"kind","sys","comp","glob"}
        self.frag_locals = {}    # global fragment id -> its two local eids
        self.corner_uf = _corner_orbits(surf)

        for p in range(len(surf.side_counts)):
            n = surf.side_counts[p]
            # all boundary nodes go on one circle in ccw boundary order, so
            # a chord between two marks of the same side is still a proper
            # circle chord and never degenerates onto the boundary
            side_nodes = {}
            boundary_seq = []
            for i in range(n):
                ek = _edge_key(surf, (p, i))
                marks = self.edge_marks.get(ek, [])
                if (p, i) != ek:
                    marks = [(1 - x, m) for x, m in reversed(marks)]
                nodes = [(Fraction(0), ("c", p, i))]
                boundary_seq.append(("c", p, i))
                for x, (si, ci, k) in marks:
                    nid = ("m", p, i, x)
                    nodes.append((x, nid))
                    boundary_seq.append(nid)
                side_nodes[i] = nodes
            coords = {nid: _circle_pt(j)
                      for j, nid in enumerate(boundary_seq)}
            bpos = {nid: j for j, nid in enumerate(boundary_seq)}

            # chord segments split at crossings
            chords = self._chords(p)
            pts = []
            for (si, ci, k, (i1, x1), (i2, x2)) in chords:
                pts.append((coords[("m", p, i1, x1)],
                            coords[("m", p, i2, x2)]))
            splits = [[] for _ in chords]
            for a in range(len(chords)):
                for b in range(a + 1, len(chords)):
                    if chords[a][0] == chords[b][0]:
                        continue
                    hit = _seg_cross(*pts[a], *pts[b])
                    if hit is None:
                        continue
                    pt, t, u = hit
                    nid = ("x", p, (chords[a][:3], chords[b][:3]))
                    coords[nid] = pt
                    splits[a].append((t, nid))
                    splits[b].append((u, nid))
            xids = {nid for s in splits for _, nid in s}
            assert len({coords[nid] for nid in xids}) == len(xids), \
                "coincident crossings"

            edges = []  # local: (eid, u, v) with coords

            for idx, (si, ci, k, (i1, x1), (i2, x2)) in enumerate(chords):
                u = ("m", p, i1, x1)
                v = ("m", p, i2, x2)
                chain = [u] + [nid for _, nid in sorted(
                    splits[idx], key=lambda s: s[0])] + [v]
                for s in range(len(chain) - 1):
                    eid = ("s", si, ci, k, s)
                    self.edge_info[eid] = {"kind": "seg", "sys": si,
                                           "comp": ci}
                    edges.append((eid, chain[s], chain[s + 1]))

            for i in range(n):
                ek = _edge_key(surf, (p, i))
                nodes = side_nodes[i] + \
                    [(Fraction(1), ("c", p, (i + 1) % n))]
                m = len(nodes) - 1
                for t in range(m):
                    # fragment index in the key frame, so the two glued
                    # sides name one shared edge; the drawing still needs
                    # side-local edges (a side may be glued within p).
                    # Each fragment bends outward through an extra circle
                    # point so it never coincides with a short chord.
                    ft = t if (p, i) == ek else m - 1 - t
                    _, u = nodes[t]
                    _, v = nodes[t + 1]
                    w = ("w", ek, ft, p, i)
                    coords[w] = _circle_pt(Fraction(2 * bpos[u] + 1, 2))
                    for half, (a, b) in enumerate(((u, w), (w, v))):
                        # key-frame half index, so glued halves match up
                        kh = half if (p, i) == ek else 1 - half
                        glob = ("f", ek, ft, kh)
                        eid = ("F", p, i, t, half)
                        self.edge_info[eid] = {"kind": "frag",
                                               "glob": glob}
                        self.frag_locals.setdefault(glob, []).append(eid)
                        edges.append((eid, a, b))

            self._trace_polygon(p, edges, coords)

    def _trace_polygon(self, p, edges, coords):
        ends = {}
        incid = {}
        for eid, u, v in edges:
            ends[eid] = (u, v)
            incid.setdefault(u, []).append((eid, 0))
            incid.setdefault(v, []).append((eid, 1))
        rot = {}
        for node, darts in incid.items():
            base = coords[node]

            def vec(dart):
                eid, dr = dart
                other = ends[eid][1 - dr]
                q = coords[other]
                return (q[0] - base[0], q[1] - base[1])

            darts.sort(key=cmp_to_key(
                lambda a, b: _angle_cmp(vec(a), vec(b))))
            rot[node] = darts

        def head(dart):
            eid, dr = dart
            return ends[eid][1 - dr]

        def next_in_face(dart):
            twin = (dart[0], 1 - dart[1])
            r = rot[head(dart)]
            return r[(r.index(twin) - 1) % len(r)]

        visited = set()
        for eid, u, v in edges:
            for dart in ((eid, 0), (eid, 1)):
                if dart in visited:
                    continue
                cyc = []
                h = dart
                while True:
                    cyc.append(h)
                    visited.add(h)
                    h = next_in_face(h)
                    if h == dart:
                        break
                # exact shoelace over the node cycle; the outer face of the
                # convex drawing is the unique clockwise one
                area = Fraction(0)
                ncyc = [coords[head(d)] for d in cyc]
                for i in range(len(ncyc)):
                    x1, y1 = ncyc[i]
                    x2, y2 = ncyc[(i + 1) % len(ncyc)]
                    area += x1 * y2 - x2 * y1
                if area <= 0:
                    continue
                cid = len(self.cells)
                self.cells.append((p, tuple(cyc)))
                for d in cyc:
                    self.cell_of_dart[d] = cid
        self._node_ends = getattr(self, "_node_ends", {})
        self._node_ends.update(ends)

    # -- gluing and regions ----------------------------------------------------

    def _glue_cells(self):
        """Pair each fragment's two inner darts (one per glued side) as
        twins; chord darts are twinned by flipping the direction bit."""
        self.frag_twin = {}
        for glob, eids in self.frag_locals.items():
            assert len(eids) == 2, f"fragment {glob} glued {len(eids)} times"
            inner = []
            for eid in eids:
                darts = [d for d in ((eid, 0), (eid, 1))
                         if d in self.cell_of_dart]
                assert len(darts) == 1, f"fragment {eid} dart count"
                inner.append(darts[0])
            self.frag_twin[inner[0]] = inner[1]
            self.frag_twin[inner[1]] = inner[0]

    def glued_twin(self, dart):
        if self.edge_info[dart[0]]["kind"] == "frag":
            return self.frag_twin[dart]
        return (dart[0], 1 - dart[1])

    def regions(self, walls):
        """Union the cells across non-wall edges; walls is a set of system
        indices whose curves stay cutting."""
        uf = _UF()
        for cid in range(len(self.cells)):
            uf.union(("cell", cid), ("cell", cid))
        for dart, cid in self.cell_of_dart.items():
            info = self.edge_info[dart[0]]
            if info["kind"] == "seg" and info["sys"] in walls:
                continue
            other = self.cell_of_dart.get(self.glued_twin(dart))
            if other is not None:
                uf.union(("cell", cid), ("cell", other))
        groups = uf.classes([("cell", c) for c in range(len(self.cells))])
        out = []
        for root in sorted(groups, key=lambda r: min(groups[r])):
            out.append(sorted(c for _, c in groups[root]))
        return out

    def region_chi(self, cells, walls):
        """Euler characteristic of the region cut open along the walls:
        wall edges stay boundary even when the region sits on both sides."""
        pos = {}
        for c in cells:
            for i, d in enumerate(self.cells[c][1]):
                pos[d] = (c, i)
        uf = _UF()
        twice_e = 0
        for c in cells:
            cyc = self.cells[c][1]
            for i, d in enumerate(cyc):
                uf.union((c, i), (c, i))
                info = self.edge_info[d[0]]
                wall = info["kind"] == "seg" and info["sys"] in walls
                tw = None if wall else self.glued_twin(d)
                if tw is not None and tw in pos:
                    cp, j = pos[tw]
                    # the corner slot (c, i) sits at the head of cyc[i];
                    # across the gluing that is the tail of the twin dart
                    np_ = len(self.cells[cp][1])
                    uf.union((c, i), (cp, (j - 1) % np_))
                    twice_e += 1
                else:
                    twice_e += 2
        slots = [(c, i) for c in cells
                 for i in range(len(self.cells[c][1]))]
        v = len({uf.find(s) for s in slots})
        return v - twice_e // 2 + len(cells)

    def boundary_circles(self, cells, walls):
        """Wall-dart cycles bounding the region, region on the left."""
        cellset = set(cells)

        def is_wall(eid):
            info = self.edge_info[eid]
            return info["kind"] == "seg" and info["sys"] in walls

        # successor of a dart inside its cell cycle
        succ = {}
        for c in cells:
            cyc = self.cells[c][1]
            for i, d in enumerate(cyc):
                succ[d] = cyc[(i + 1) % len(cyc)]

        def next_wall(dart):
            h = succ[dart]
            while not is_wall(h[0]):
                h = succ[self.glued_twin(h)]
            return h

        todo = {d for d in succ if is_wall(d[0])}
        circles = []
        while todo:
            start = min(todo, key=repr)
            cyc = []
            h = start
            while True:
                cyc.append(h)
                todo.discard(h)
                h = next_wall(h)
                if h == start:
                    break
            circles.append(tuple(cyc))
        circles.sort(key=repr)
        return circles

    def _dart_head_node(self, dart):
        eid, dr = dart
        u, v = self._node_ends[eid]
        return v if dr == 0 else u


def rectangle_audit(surface, sys_a, sys_b):
    """Full rectangle data for a bigon-free pair of pants systems.

    Returns pants counts, the saturation verdict per pants pair (as a
    sorted multiset), witness counts, and the all-pairs verdict.
    """
    cx = OracleComplex(surface, sys_a, sys_b)
    full = cx.regions({0, 1})
    pants_a = cx.regions({0})
    pants_b = cx.regions({1})
    cell_pa = {c: i for i, cs in enumerate(pants_a) for c in cs}
    cell_pb = {c: i for i, cs in enumerate(pants_b) for c in cs}

    # boundary circle index of each wall dart, per pants side
    dart_circ_a, dart_circ_b = {}, {}
    for i, cs in enumerate(pants_a):
        for ci, circ in enumerate(cx.boundary_circles(cs, {0})):
            for d in circ:
                dart_circ_a[d] = (i, ci + 1)
    for i, cs in enumerate(pants_b):
        for ci, circ in enumerate(cx.boundary_circles(cs, {1})):
            for d in circ:
                dart_circ_b[d] = (i, ci + 1)

    # no bigons allowed: every 2-cornered disk region is a forbidden input
    rect = {}
    for cells in full:
        circles = cx.boundary_circles(cells, {0, 1})
        if cx.region_chi(cells, {0, 1}) != 1 or len(circles) != 1:
            continue
        circ = circles[0]
        runs = []  # (sysid, first dart) per maximal run between crossings
        cur = None
        # rotate so the circle starts right after a crossing
        heads = [cx._dart_head_node(d) for d in circ]
        xpos = [i for i, h in enumerate(heads) if h[0] == "x"]
        if len(xpos) == 2:
            raise AssertionError("bigon region in oracle input")
        if len(xpos) != 4:
            continue
        k0 = (xpos[0] + 1) % len(circ)
        order = [circ[(k0 + i) % len(circ)] for i in range(len(circ))]
        for d in order:
            si = cx.edge_info[d[0]]["sys"]
            if cur is None or si != cur[0]:
                cur = (si, d)
                runs.append(cur)
            if cx._dart_head_node(d)[0] == "x":
                cur = None
        if len(runs) != 4:
            continue
        syss = [r[0] for r in runs]
        if syss not in ([0, 1, 0, 1], [1, 0, 1, 0]):
            continue
        pa = {cell_pa[c] for c in cells}
        pb = {cell_pb[c] for c in cells}
        assert len(pa) == 1 and len(pb) == 1
        ia = tuple(sorted(dart_circ_a[d][1] for s, d in runs if s == 0))
        ib = tuple(sorted(dart_circ_b[d][1] for s, d in runs if s == 1))
        if ia[0] == ia[1] or ib[0] == ib[1]:
            continue
        rect.setdefault((pa.pop(), pb.pop()), set()).add((ia, ib))

    need = {((i, j), (k, l))
            for i in (1, 2, 3) for j in (1, 2, 3) if i < j
            for k in (1, 2, 3) for l in (1, 2, 3) if k < l}
    per_pair = []
    all_sat = True
    for i in range(len(pants_a)):
        for j in range(len(pants_b)):
            types = rect.get((i, j), set())
            sat = need <= types
            all_sat = all_sat and sat
            per_pair.append((sat, len(types)))
    return {
        "n_pants_a": len(pants_a),
        "n_pants_b": len(pants_b),
        "pairs": sorted(per_pair),
        "all_saturated": all_sat,
    }
