"""Polygonal-complex model of compact oriented surfaces.

A surface is a disjoint union of oriented polygons together with a partial
perfect matching of their sides.  Matched sides are identified with reversed
orientation (a point at parameter x on one side meets the point at parameter
1 - x on its partner), which keeps the realized complex oriented by
construction.  Unmatched sides form the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Dart = tuple[int, int]  # (polygon index, side index)


class SurfaceError(ValueError):
    """Invalid surface description (bad gluing, disconnected, ...)."""


class UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        while x in p:
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # orient by sortability for reproducible class representatives
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self, items):
        out = {}
        for it in items:
            out.setdefault(self.find(it), []).append(it)
        return out


class Surface:
    """An oriented surface given by polygons and side identifications.

    Immutable after construction; all derived data (Euler characteristic,
    genus, boundary circles) is computed during validation.
    """

    def __init__(self, side_counts: Sequence[int],
                 gluings: Iterable[tuple[Dart, Dart]],
                 labels: Optional[dict[str, int]] = None,
                 require_connected: bool = True):
        self.side_counts = tuple(int(n) for n in side_counts)
        if any(n < 1 for n in self.side_counts):
            raise SurfaceError("polygon must have at least one side")
        glue: dict[Dart, Dart] = {}
        for a, b in gluings:
            a = (int(a[0]), int(a[1]))
            b = (int(b[0]), int(b[1]))
            for d in (a, b):
                if not self._dart_ok(d):
                    raise SurfaceError(f"dangling slot reference {d}")
            if a == b:
                raise SurfaceError(f"side {a} glued to itself")
            if a in glue or b in glue:
                raise SurfaceError(f"side matched twice near {a}~{b}")
            glue[a] = b
            glue[b] = a
        self.glue = glue
        self.labels = dict(labels or {})
        # optional hint: darts whose transverse single-transit curves form a
        # symplectic homology basis (set by the standard closed constructors)
        self.basis_darts: Optional[tuple[tuple[Dart, Dart], ...]] = None
        self._validate(require_connected)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_word(word: Sequence[str]) -> "Surface":
        """One polygon with sides identified by a word like
        ["a","b","a-","b-"]; letter and letter+"-" mark a matched pair."""
        seen: dict[str, int] = {}
        gluings = []
        for i, w in enumerate(word):
            base = w.rstrip("-")
            if base in seen:
                gluings.append(((0, seen.pop(base)), (0, i)))
            else:
                seen[base] = i
        if seen:
            raise SurfaceError(f"unmatched letters {sorted(seen)}")
        return Surface([len(word)], gluings)

    @staticmethod
    def torus() -> "Surface":
        return Surface.closed_genus(1)

    @staticmethod
    def closed_genus(g: int) -> "Surface":
        if g == 0:
            # sphere: two monogons... use a bigon "a a-" instead: one polygon
            # with two sides glued to each other.
            return Surface.from_word(["a", "a-"])
        word = []
        for k in range(g):
            a, b = f"a{k}", f"b{k}"
            word += [a, b, a + "-", b + "-"]
        s = Surface.from_word(word)
        # the curve dual to side 4k+3 meets the one dual to side 4k exactly
        # once, and curves from different handles are disjoint
        s.basis_darts = tuple(((0, 4 * k + 3), (0, 4 * k)) for k in range(g))
        return s

    # -- validation ------------------------------------------------------------

    def _dart_ok(self, d: Dart) -> bool:
        p, i = d
        return 0 <= p < len(self.side_counts) and 0 <= i < self.side_counts[p]

    def darts(self):
        for p, n in enumerate(self.side_counts):
            for i in range(n):
                yield (p, i)

    def next_side(self, d: Dart) -> Dart:
        p, i = d
        return (p, (i + 1) % self.side_counts[p])

    def prev_side(self, d: Dart) -> Dart:
        p, i = d
        return (p, (i - 1) % self.side_counts[p])

    def _validate(self, require_connected: bool):
        # connectivity of the 2-complex
        uf = UnionFind()
        for a, b in self.glue.items():
            uf.union(("P", a[0]), ("P", b[0]))
        comps = {uf.find(("P", p)) for p in range(len(self.side_counts))}
        self.n_components = len(comps)
        self.connected = len(comps) == 1
        if require_connected and not self.connected:
            raise SurfaceError("complex is disconnected")

        # vertices: corner (p, i) is the start corner of side (p, i).
        cuf = UnionFind()
        for a, b in self.glue.items():
            # reversed identification: start of a ~ end of b, end of a ~ start of b
            cuf.union(("C", *a), ("C", *self.next_side(b)))
            cuf.union(("C", *self.next_side(a)), ("C", *b))
        corners = [("C", p, i) for p, i in self.darts()]
        self.n_vertices = len({cuf.find(c) for c in corners})
        self.n_edges = len(self.glue) // 2 + sum(
            1 for d in self.darts() if d not in self.glue)
        self.n_faces = len(self.side_counts)
        self.chi = self.n_vertices - self.n_edges + self.n_faces

        self.boundary_circles = self._trace_boundary()
        b = len(self.boundary_circles)
        if (2 * self.n_components - self.chi - b) % 2 != 0:
            raise SurfaceError("inconsistent Euler characteristic")
        self.genus = (2 * self.n_components - self.chi - b) // 2
        if self.genus < 0:
            raise SurfaceError("gluing does not describe an oriented surface")
        for name, idx in self.labels.items():
            if not 0 <= idx < b:
                raise SurfaceError(f"label {name!r} names missing boundary {idx}")

    def _trace_boundary(self) -> list[tuple[Dart, ...]]:
        free = sorted(d for d in self.darts() if d not in self.glue)
        seen = set()
        circles = []
        for start in free:
            if start in seen:
                continue
            circle = []
            d = start
            while True:
                circle.append(d)
                seen.add(d)
                # rotate around the end corner of d to the next free side
                s = self.next_side(d)
                while s in self.glue:
                    s = self.next_side(self.glue[s])
                d = s
                if d == start:
                    break
            # canonical id: start the cycle at the minimal dart
            k = circle.index(min(circle))
            circles.append(tuple(circle[k:] + circle[:k]))
        return sorted(circles)

    # -- queries ---------------------------------------------------------------

    @property
    def n_boundary(self) -> int:
        return len(self.boundary_circles)

    @property
    def is_closed(self) -> bool:
        return not self.boundary_circles

    def classify(self) -> tuple[int, int, int]:
        """(Euler characteristic, genus, number of boundary circles)."""
        return (self.chi, self.genus, self.n_boundary)

    def boundary_of(self, dart: Dart) -> int:
        for k, circ in enumerate(self.boundary_circles):
            if dart in circ:
                return k
        raise SurfaceError(f"{dart} is not a boundary side")

    def label_of_circle(self, k: int) -> Optional[str]:
        for name, idx in self.labels.items():
            if idx == k:
                return name
        return None

    def __eq__(self, other):
        return (isinstance(other, Surface)
                and self.side_counts == other.side_counts
                and self.glue == other.glue)

    def __hash__(self):
        return hash((self.side_counts, tuple(sorted(self.glue.items()))))

    def __repr__(self):
        return (f"Surface(polygons={len(self.side_counts)}, chi={self.chi}, "
                f"genus={self.genus}, boundary={self.n_boundary})")


def build_surface(side_counts, gluings, labels=None) -> Surface:
    """Validated constructor; see :class:`Surface`."""
    return Surface(side_counts, gluings, labels)


def classify(s: Surface) -> tuple[int, int, int]:
    return s.classify()


@dataclass(frozen=True)
class CutPiece:
    """One component of a surface cut along a curve system."""
    piece_id: int
    chi: int
    genus: int
    boundary_words: tuple[tuple[str, ...], ...]  # per circle: labels traversed

    @property
    def n_boundary(self) -> int:
        return len(self.boundary_words)

    @property
    def is_disk(self) -> bool:
        return self.chi == 1 and self.genus == 0 and self.n_boundary == 1

    @property
    def is_annulus(self) -> bool:
        return self.chi == 0 and self.genus == 0 and self.n_boundary == 2

    @property
    def is_pants(self) -> bool:
        return self.chi == -1 and self.genus == 0 and self.n_boundary == 3


def cut_along(s: Surface, system) -> list[CutPiece]:
    """Components of ``s`` cut along an embedded curve/arc system."""
    from . import arrangement
    return arrangement.cut_along(s, system)
