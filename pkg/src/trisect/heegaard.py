"""Cut systems, handlebodies, and Heegaard diagrams.

A cut system is a maximal family of disjoint curves slicing a closed genus-g
surface into a single 2g-punctured sphere; it determines a handlebody in
which exactly the curves with trivial free-group word bound disks.  Two cut
systems on one surface form a Heegaard diagram of a closed 3-manifold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .surface import Surface, Dart
from .curves import Component, CurveError, CurveSystem
from .arrangement import (cut_along, edge_key, geometric_intersection_number,
                          isotopic, minimal_position)
from .homology import algebraic_intersection, cokernel, homology_class


class HeegaardError(ValueError):
    """Invalid cut system, slide, or diagram."""


@dataclass(frozen=True)
class CutSystem:
    surface: Surface
    system: CurveSystem
    pieces: tuple  # cut-along certificate

    @property
    def genus(self) -> int:
        return self.surface.genus

    def curve(self, i: int) -> CurveSystem:
        return self.system.component_system(i)


def validate_cut_system(surface: Surface, sys: CurveSystem) -> CutSystem:
    """Certify that the g closed curves cut the surface into one
    2g-punctured sphere."""
    if surface.n_boundary:
        raise HeegaardError("cut systems live on closed surfaces")
    if sys.surface != surface:
        raise HeegaardError("system on a different surface")
    g = surface.genus
    if len(sys.components) != g:
        raise HeegaardError(f"need {g} curves, got {len(sys.components)}")
    for c in sys.components:
        if not c.closed:
            raise HeegaardError("cut systems contain closed curves only")
        if c.floating is not None:
            raise HeegaardError("trivial (floating) component")
    pieces = cut_along(surface, sys)
    if len(pieces) != 1:
        raise HeegaardError(f"cut is disconnected ({len(pieces)} pieces)")
    p = pieces[0]
    if p.genus != 0 or len(p.boundary_words) != 2 * g:
        raise HeegaardError(
            f"cut piece has genus {p.genus} with "
            f"{len(p.boundary_words)} boundary circles, "
            f"wanted genus 0 with {2 * g}")
    return CutSystem(surface, sys, tuple(pieces))


# -- handlebody words --------------------------------------------------------

def word_in_handlebody(c: CurveSystem, h: CutSystem,
                       k: int = 0) -> tuple[int, ...]:
    """Cyclic word of the curve in the free group of the handlebody, as
    signed 1-based letters: letter ±(i+1) is a crossing of cut curve i."""
    comp = c.components[k]
    if not comp.closed:
        raise HeegaardError("handlebody words need closed curves")
    if comp.floating is not None:
        return ()
    arr = minimal_position(h.system, c.component_system(k))
    return tuple((other[1] + 1) * sign for (_k, _r, _n, other, sign)
                 in arr.mesh.crossings_along(1, 0))


def cyclic_reduce(word: Sequence[int]) -> tuple[int, ...]:
    w = list(word)
    changed = True
    while changed and w:
        changed = False
        out = []
        for x in w:
            if out and out[-1] == -x:
                out.pop()
                changed = True
            else:
                out.append(x)
        while len(out) >= 2 and out[0] == -out[-1]:
            out.pop()
            out.pop(0)
            changed = True
        w = out
    return tuple(w)


def bounds_in_handlebody(c: CurveSystem, h: CutSystem, k: int = 0) -> bool:
    return not cyclic_reduce(word_in_handlebody(c, h, k))


# -- handleslides ------------------------------------------------------------

def _marks_by_edge(surface, components, extra=()):
    out: dict[Dart, list] = {}
    for comp in components:
        for d, x in comp.transits:
            key = edge_key(surface, d)
            out.setdefault(key, []).append(x if d == key else 1 - x)
    for d, x in extra:
        key = edge_key(surface, d)
        out.setdefault(key, []).append(x if d == key else 1 - x)
    return out


def _gap(surface, marks, d, x, skip_self=False):
    key = edge_key(surface, d)
    xk = x if d == key else 1 - x
    lo, hi = Fraction(0), Fraction(1)
    skipped = not skip_self
    for y in marks.get(key, ()):
        if y < xk:
            lo = max(lo, y)
        elif y > xk:
            hi = min(hi, y)
        elif skipped:
            raise HeegaardError(f"mark collision on edge {key} at {x}")
        else:
            skipped = True
    return min(xk - lo, hi - xk)


def _band_candidate(surface, comps, i, j, ki, kj, arc_ts, sigma, rev):
    """Band sum of curve i over curve j: follow i around from chord ki,
    run along one side of the arc, traverse a parallel push-off of j from
    chord kj, and come back on the arc's other side."""
    ci, cj = comps[i], comps[j]
    ni, nj = len(ci.transits), len(cj.transits)
    marks = _marks_by_edge(surface, comps, arc_ts)
    rot_i = list(ci.transits[ki + 1:] + ci.transits[:ki + 1])
    out, back = [], []
    for d, x in arc_ts:
        dg = _gap(surface, marks, d, x) / 2
        out.append((d, x - dg))
        back.append((surface.glue[d], 1 - (x + dg)))
    back.reverse()
    copy = []
    for step in range(nj):
        if not rev:
            l = (kj + 1 + step) % nj
            d, x = cj.transits[l]
            dg = _gap(surface, marks, d, x, skip_self=True) / 2
            copy.append((d, x + sigma * dg))
        else:
            l = (kj - step) % nj
            d, x = cj.transits[l]
            dg = _gap(surface, marks, d, x, skip_self=True) / 2
            copy.append((surface.glue[d], 1 - (x + sigma * dg)))
    return Component(True, tuple(rot_i + out + copy + back))


def handleslide(h: CutSystem, i: int, j: int,
                arc: tuple = (0, 0, ())) -> CutSystem:
    """Replace curve i by its band sum over curve j along an arc.

    The arc is (ki, kj, transits): it leaves curve i along its chord ki,
    crosses the listed edges, and attaches to curve j along chord kj.  The
    band's side and the push-off direction are resolved by trying the
    embeddable choices; the result is re-validated as a cut system.
    """
    if i == j:
        raise HeegaardError("cannot slide a curve over itself")
    surface = h.surface
    comps = list(h.system.components)
    ki, kj, arc_ts = arc
    arc_ts = tuple((d, Fraction(x)) for d, x in arc_ts)
    vi, vj = homology_class(h.system, i), homology_class(h.system, j)
    wanted = {tuple(a + b for a, b in zip(vi, vj)),
              tuple(a - b for a, b in zip(vi, vj))}
    last_err: Optional[Exception] = None
    for sigma in (1, -1):
        for rev in (False, True):
            try:
                cand = _band_candidate(surface, comps, i, j,
                                       ki, kj, arc_ts, sigma, rev)
                newc = list(comps)
                newc[i] = cand
                sysn = CurveSystem(surface, newc, h.system.framings)
            except (CurveError, HeegaardError) as e:
                last_err = e
                continue
            if homology_class(sysn, i) not in wanted:
                continue
            try:
                return validate_cut_system(surface, sysn)
            except HeegaardError as e:
                last_err = e
    raise HeegaardError(f"no embedded band along this arc ({last_err})")


# -- Heegaard pairs ----------------------------------------------------------

@dataclass
class HeegaardPair:
    alpha: CutSystem
    beta: CutSystem
    geometric: tuple = field(init=False)
    pairing: tuple = field(init=False)
    recognized_k: Optional[int] = field(init=False, default=None)
    recognition: Optional[str] = field(init=False, default=None)

    def __post_init__(self):
        if self.alpha.surface != self.beta.surface:
            raise HeegaardError("cut systems on different surfaces")
        g = self.alpha.genus
        geo, alg = [], []
        for i in range(g):
            grow, arow = [], []
            for j in range(g):
                grow.append(geometric_intersection_number(
                    self.alpha.curve(i), self.beta.curve(j)))
                arow.append(algebraic_intersection(
                    self.alpha.system, self.beta.system, i, j))
            geo.append(tuple(grow))
            alg.append(tuple(arow))
        self.geometric = tuple(geo)
        self.pairing = tuple(alg)
        for grow, arow in zip(self.geometric, self.pairing):
            if any(gv < abs(av) for gv, av in zip(grow, arow)):
                raise HeegaardError("geometric count below algebraic")

    @property
    def genus(self) -> int:
        return self.alpha.genus

    def recognize(self, budget: int = 0) -> Optional[int]:
        """Try to identify the diagram's standard-form k, recording how."""
        k = is_standard_pair(self)
        if k is not None:
            self.recognized_k, self.recognition = k, "literal-standard"
            return k
        if budget > 0:
            res = standardize(self, budget)
            if res is not None:
                self.recognized_k, self.recognition = \
                    res[0], "standardized-by-slides"
                return res[0]
        rank, torsion = heegaard_homology(self)
        if not torsion:
            # unverified: necessary condition only
            self.recognized_k, self.recognition = rank, "homology-only"
            return rank
        return None


def is_standard_pair(p: HeegaardPair) -> Optional[int]:
    """k if the diagram is literally standard: k shared curves and g-k
    once-crossing pairs, all other intersection counts zero."""
    g = p.genus
    M = p.geometric
    if any(v not in (0, 1) for row in M for v in row):
        return None
    matched = {}
    for i in range(g):
        ones = [j for j in range(g) if M[i][j] == 1]
        if len(ones) > 1:
            return None
        if len(ones) == 1:
            j = ones[0]
            if sum(M[r][j] for r in range(g)) != 1:
                return None
            matched[i] = j
    free_rows = [i for i in range(g) if i not in matched]
    free_cols = [j for j in range(g) if j not in matched.values()]
    for i in free_rows:
        hit = None
        for j in free_cols:
            if isotopic(p.alpha.system, p.beta.system, i, j):
                hit = j
                break
        if hit is None:
            return None
        free_cols.remove(hit)
    return len(free_rows)


def _candidate_slides(cs: CutSystem, cap: int = 64):
    """Empty-band slides between chords sharing a polygon, a finite
    deterministic candidate set (not complete)."""
    comps = cs.system.components
    out = []
    for i in range(len(comps)):
        for j in range(len(comps)):
            if i == j:
                continue
            for ki, (di, _x) in enumerate(comps[i].transits):
                for kj, (dj, _y) in enumerate(comps[j].transits):
                    if di[0] == dj[0]:
                        out.append((i, j, (ki, kj, ())))
                        if len(out) >= cap:
                            return out
    return out


def standardize(p: HeegaardPair, budget: int = 2):
    """Breadth-first search for a slide sequence reaching literal standard
    form.  Returns (k, moves) with moves replayable via handleslide, or
    None if the budget runs out (which proves nothing)."""
    k = is_standard_pair(p)
    if k is not None:
        return k, ()
    frontier = [(p.alpha, p.beta, ())]
    seen = set()
    for _depth in range(budget):
        nxt = []
        for alpha, beta, moves in frontier:
            for side, cs in (("alpha", alpha), ("beta", beta)):
                for i, j, arc in _candidate_slides(cs):
                    try:
                        slid = handleslide(cs, i, j, arc)
                    except HeegaardError:
                        continue
                    na, nb = (slid, beta) if side == "alpha" else (alpha, slid)
                    key = (na.system.canonical_key(),
                           nb.system.canonical_key())
                    if key in seen:
                        continue
                    seen.add(key)
                    cand = HeegaardPair(na, nb)
                    mv = moves + ((side, i, j, arc),)
                    k = is_standard_pair(cand)
                    if k is not None:
                        return k, mv
                    nxt.append((na, nb, mv))
        frontier = nxt
    return None


def heegaard_homology(p: HeegaardPair) -> tuple[int, tuple[int, ...]]:
    """H1 of the closed 3-manifold: free rank and torsion divisors."""
    return cokernel([list(row) for row in p.pairing], p.genus)
