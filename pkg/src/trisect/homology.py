"""Integral homology of curves on surfaces.

Two oriented curves pair by the signed count of their crossings.  A closed
curve determines a class in H_1 of the surface, reported as an integer
vector: on the standard closed models the coordinates are taken against the
built-in transverse curve basis (so the (p,q) torus curve maps to (p, q));
on arbitrary complexes they are Smith-normal-form coordinates of the
edge-crossing cycle space.
"""

from __future__ import annotations

from typing import Sequence

from .surface import Surface, UnionFind
from .curves import CurveError, CurveSystem, through_edges
from .arrangement import Mesh, edge_key, merge_systems


# -- integer linear algebra --------------------------------------------------

def smith_normal_form(mat: Sequence[Sequence[int]]):
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns (diag, U) with U * mat * V = diag(d_1, ..., d_r, 0, ...) for some
    unimodular V that is not tracked; the d_i are positive and d_i | d_{i+1}.
    """
    A = [[int(x) for x in row] for row in mat]
    n = len(A)
    m = len(A[0]) if n else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        for x in range(m):
            A[dst][x] += q * A[src][x]
        for x in range(n):
            U[dst][x] += q * U[src][x]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]

    t = 0
    while t < n and t < m:
        piv = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] and (piv is None
                                or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:  # pivot did not divide: euclid step
                        swap_rows(t, i)
                        break
            else:
                for j in range(t + 1, m):
                    if A[t][j]:
                        add_col(j, t, -(A[t][j] // A[t][t]))
                        if A[t][j]:
                            swap_cols(t, j)
                            break
                else:
                    break
        if A[t][t] < 0:
            add_row(t, t, -2)
        if t > 0 and A[t][t] % A[t - 1][t - 1]:
            # restore divisibility: fold d_t back into the previous pivot
            add_col(t - 1, t, 1)
            t -= 1
            continue
        t += 1
    return [A[i][i] for i in range(min(n, m))], U


def cokernel(mat: Sequence[Sequence[int]], n_rows: int):
    """Invariant factors of Z^n_rows modulo the column span of ``mat``.

    Returns (free_rank, torsion) with torsion the tuple of factors > 1.
    """
    rows = [list(r) for r in mat]
    if not rows or not rows[0]:
        return n_rows, ()
    if len(rows) != n_rows:
        raise ValueError("matrix height disagrees with ambient rank")
    diag, _ = smith_normal_form(rows)
    nz = [d for d in diag if d]
    return n_rows - len(nz), tuple(d for d in nz if d > 1)


# -- intersection pairing ----------------------------------------------------

def algebraic_intersection(c1: CurveSystem, c2: CurveSystem,
                           k1: int = 0, k2: int = 0) -> int:
    """Signed crossing count of two oriented closed curves."""
    if c1.surface != c2.surface:
        raise CurveError("systems live on different surfaces")
    a, b = c1.components[k1], c2.components[k2]
    for comp in (a, b):
        if not comp.closed:
            raise CurveError("intersection pairing needs closed curves")
    if a.floating is not None or b.floating is not None:
        return 0
    merged = merge_systems(c1.surface,
                           [c1.component_system(k1), c2.component_system(k2)])
    mesh = Mesh(c1.surface, merged)
    # crossings store (node, poly, key in system 0, key in system 1, sign)
    return sum(c[4] for c in mesh.crossings)


# -- homology classes --------------------------------------------------------

_cycle_cache: dict[Surface, dict] = {}
_basis_cache: dict[int, list] = {}


def _cycle_data(surface: Surface) -> dict:
    """Coordinates on 1-cycles: a spanning forest of the polygon adjacency
    graph plus one coordinate per remaining edge, and the relations coming
    from the links of interior vertices."""
    if surface in _cycle_cache:
        return _cycle_cache[surface]
    edges = sorted({edge_key(surface, d) for d in surface.glue})
    # spanning forest by breadth-first search over polygons
    adj: dict[int, list] = {p: [] for p in range(len(surface.side_counts))}
    for e in edges:
        adj[e[0]].append((surface.glue[e][0], e))
        adj[surface.glue[e][0]].append((e[0], e))
    tree = set()
    seen = set()
    for root in adj:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            p = queue.pop(0)
            for q, e in adj[p]:
                if q not in seen:
                    seen.add(q)
                    tree.add(e)
                    queue.append(q)
    nontree = [e for e in edges if e not in tree]
    eidx = {e: i for i, e in enumerate(nontree)}
    m = len(nontree)

    # vertex classes, as in surface validation
    cuf = UnionFind()

    def nxt(d):
        return (d[0], (d[1] + 1) % surface.side_counts[d[0]])

    corners = [(p, i) for p in range(len(surface.side_counts))
               for i in range(surface.side_counts[p])]
    for a, b in surface.glue.items():
        cuf.union(a, nxt(b))
    relations = []
    for cls in cuf.classes(corners).values():
        # a corner (p, i) sits between sides (p, i-1) and (p, i); the vertex
        # is interior exactly when every incident side is glued
        prev = [(p, (i - 1) % surface.side_counts[p]) for p, i in cls]
        if any(d not in surface.glue for d in list(cls) + prev):
            continue
        row = [0] * m
        for d in cls:  # walk the link once, crossing side d at each corner
            e = edge_key(surface, d)
            if e in eidx:
                row[eidx[e]] += 1 if surface.glue[d] == e else -1
        relations.append(row)

    if relations and m:
        cols = [[relations[i][j] for i in range(len(relations))]
                for j in range(m)]
        diag, U = smith_normal_form(cols)
        rank = sum(1 for d in diag if d)
        if any(d not in (0, 1) for d in diag):
            raise CurveError("torsion in curve cycle space")
    else:
        rank, U = 0, [[int(i == j) for j in range(m)] for i in range(m)]
    data = {"nontree": eidx, "rank": rank, "U": U, "m": m}
    _cycle_cache[surface] = data
    return data


def _class_vector(surface: Surface, comp, data):
    v = [0] * data["m"]
    for d, _x in comp.transits:
        e = edge_key(surface, d)
        j = data["nontree"].get(e)
        if j is not None:
            v[j] += 1 if d == e else -1
    return v


def _basis_systems(surface: Surface) -> list:
    key = id(surface)
    if key in _basis_cache:
        return _basis_cache[key]
    pairs = []
    for da, db in surface.basis_darts:
        a = CurveSystem(surface, [through_edges(surface, [da])])
        b = CurveSystem(surface, [through_edges(surface, [db])])
        s = algebraic_intersection(a, b)
        if s not in (1, -1):
            raise CurveError("declared basis pair is not dual")
        pairs.append((a, b, s))
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            for u in pairs[i][:2]:
                for w in pairs[j][:2]:
                    if algebraic_intersection(u, w):
                        raise CurveError("declared basis pairs interact")
    _basis_cache[key] = pairs
    return pairs


def homology_class(c: CurveSystem, k: int = 0) -> tuple[int, ...]:
    """Class of an oriented closed curve in H_1 of its surface.

    On surfaces with a built-in transverse basis the result is
    (a_1, b_1, a_2, b_2, ...) against that basis; otherwise it is the
    vector of Smith coordinates of the curve's edge-crossing cycle.
    """
    surface = c.surface
    comp = c.components[k]
    if not comp.closed:
        raise CurveError("homology class needs a closed curve")
    if surface.basis_darts is not None:
        if comp.floating is not None:
            return (0,) * (2 * len(surface.basis_darts))
        x = c.component_system(k)
        out = []
        for a, b, s in _basis_systems(surface):
            out.append(s * algebraic_intersection(x, b))
            out.append(s * algebraic_intersection(a, x))
        return tuple(out)
    data = _cycle_data(surface)
    dim = data["m"] - data["rank"]
    if comp.floating is not None:
        return (0,) * dim
    v = _class_vector(surface, comp, data)
    U = data["U"]
    return tuple(sum(U[i][j] * v[j] for j in range(data["m"]))
                 for i in range(data["rank"], data["m"]))
