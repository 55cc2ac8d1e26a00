"""Coarse drawings over a polygon triangulation ("sketches").

A sketch assigns every graph vertex a closed simplex of the triangulation
(vertex, edge, or triangle) such that cycle vertex c_i sits on polygon vertex
i and the simplices of adjacent vertices share a closed triangle.  Simplices
are identified combinatorially by their sorted polygon-index tuple; because a
valid triangulation is a simplicial complex, set intersection of vertex
tuples computes geometric intersection exactly.

Two independent routes compute the canonical coarsest sketch: a recursive
pocket merge (delta) and a one-pass table algorithm (sketch_linear).  They are
kept separate on purpose and cross-checked in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .geometry import (Point2, SimplePolygon, point_in_triangle,
                       segment_inside_polygon, OUTSIDE)
from .model import Instance
from .triangulation import Triangulation, Pocket

Simplex = tuple[int, ...]  # sorted polygon indices; length 1, 2, or 3


class SketchError(ValueError):
    pass


def _check_rooted(tri: Triangulation):
    if tri.root is None or not tri.pockets:
        raise SketchError("triangulation must be rooted (use root_dual)")


def simplex_meet(s1: Simplex, s2: Simplex) -> Optional[Simplex]:
    """Intersection of two simplices of one triangulation, or None if disjoint."""
    common = tuple(sorted(set(s1) & set(s2)))
    return common if common else None


class SimplexTable:
    """Combinatorial lookup structure for the simplices of a triangulation."""

    def __init__(self, tri: Triangulation):
        _check_rooted(tri)
        self.tri = tri
        t = tri.t
        self.vertices: list[Simplex] = [(i,) for i in range(t)]
        self.edges: list[Simplex] = [tuple(e) for e in tri.all_edges()]
        self.triangles: list[Simplex] = [tuple(tr) for tr in tri.triangles]
        self.all: list[Simplex] = self.vertices + self.edges + self.triangles
        self._tri_sets = [frozenset(tr) for tr in tri.triangles]
        self._members: dict[Simplex, set[int]] = {}
        for tid, tr in enumerate(tri.triangles):
            a, b, c = tr
            subs = [(a,), (b,), (c,), tuple(sorted((a, b))),
                    tuple(sorted((b, c))), tuple(sorted((a, c))), tuple(tr)]
            for s in subs:
                self._members.setdefault(s, set()).add(tid)

    def is_simplex(self, s: Simplex) -> bool:
        return s in self._members

    def triangles_containing(self, s: Simplex) -> set[int]:
        return self._members.get(s, set())

    def shares_triangle(self, s1: Simplex, s2: Simplex) -> bool:
        """True iff some closed triangle of the triangulation contains both."""
        union = tuple(sorted(set(s1) | set(s2)))
        if len(union) > 3:
            return False
        return union in self._members

    def root_triangle(self) -> Simplex:
        return tuple(self.tri.triangles[self.tri.root])


def shares_triangle(s1: Simplex, s2: Simplex, table: SimplexTable) -> bool:
    return table.shares_triangle(s1, s2)


def is_sketch(assign: dict[int, Simplex], inst: Instance, tri: Triangulation,
              table: Optional[SimplexTable] = None) -> bool:
    """Check the sketch conditions for a total assignment."""
    if table is None:
        table = SimplexTable(tri)
    if inst.t != tri.t:
        raise SketchError("cycle length differs from polygon size")
    for pos, v in enumerate(inst.cycle):
        if assign.get(v) != (pos,):
            return False
    for v in range(inst.n):
        if v not in assign or not table.is_simplex(assign[v]):
            return False
    for u, v in inst.edges:
        if not table.shares_triangle(assign[u], assign[v]):
            return False
    return True


# ---------------------------------------------------------------------------
# Reference route: recursive pocket merge.
# ---------------------------------------------------------------------------

class PocketMaps:
    """Memoised per-pocket maps for the recursive route.

    lam(Q) is the coarsest local sketch of pocket Q restricted to Q itself;
    lam_plus(Q) pushes assignments out across the lid into the outer triangle
    when every neighbour keeps contact with the lid.  Either map is None when
    the pocket admits no local sketch.
    """

    def __init__(self, inst: Instance, tri: Triangulation,
                 table: Optional[SimplexTable] = None):
        _check_rooted(tri)
        if inst.t != tri.t:
            raise SketchError("cycle length differs from polygon size")
        self.inst = inst
        self.tri = tri
        self.table = table or SimplexTable(tri)
        self.adj = inst.adjacency()
        self._lam: dict[tuple[int, int], Optional[dict[int, Simplex]]] = {}
        self._lam_plus: dict[tuple[int, int], Optional[dict[int, Simplex]]] = {}

    def lam(self, edge: tuple[int, int]) -> Optional[dict[int, Simplex]]:
        if edge in self._lam:
            return self._lam[edge]
        pocket = self.tri.pockets[edge]
        t = self.tri.t
        if pocket.trivial:
            i = pocket.start % t
            j = pocket.end % t
            lid = tuple(sorted((i, j)))
            out: dict[int, Simplex] = {}
            ci, cj = self.inst.cycle[i], self.inst.cycle[j]
            for v in range(self.inst.n):
                out[v] = lid
            out[ci] = (i,)
            out[cj] = (j,)
            self._lam[edge] = out
            return out
        left_e, right_e = pocket.children
        lp = self.lam_plus(left_e)
        rp = self.lam_plus(right_e)
        if lp is None or rp is None:
            self._lam[edge] = None
            return None
        tq = tuple(self.tri.triangles[pocket.inner_triangle])
        out = {}
        for v in range(self.inst.n):
            a, b = lp[v], rp[v]
            m = simplex_meet(a, b)
            if m is not None:
                out[v] = m
            elif b == tq:
                out[v] = a
            elif a == tq:
                out[v] = b
            else:
                self._lam[edge] = None
                return None
        self._lam[edge] = out
        return out

    def lam_plus(self, edge: tuple[int, int]) -> Optional[dict[int, Simplex]]:
        if edge in self._lam_plus:
            return self._lam_plus[edge]
        lam = self.lam(edge)
        if lam is None:
            self._lam_plus[edge] = None
            return None
        pocket = self.tri.pockets[edge]
        lid = tuple(sorted(pocket.edge))
        lid_set = set(lid)
        t_out = tuple(self.tri.triangles[pocket.outer_triangle])
        out = {}
        for v in range(self.inst.n):
            s = lam[v]
            if lid_set <= set(s) and all(
                    simplex_meet(lam[u], lid) is not None for u in self.adj[v]):
                out[v] = t_out
            else:
                m = simplex_meet(s, lid)
                out[v] = m if m is not None else s
        self._lam_plus[edge] = out
        return out


def lambda_interior(edge: tuple[int, int], inst: Instance, tri: Triangulation
                    ) -> Optional[dict[int, Simplex]]:
    return PocketMaps(inst, tri).lam(edge)


def lambda_plus(edge: tuple[int, int], inst: Instance, tri: Triangulation
                ) -> Optional[dict[int, Simplex]]:
    return PocketMaps(inst, tri).lam_plus(edge)


def delta(inst: Instance, tri: Triangulation,
          maps: Optional[PocketMaps] = None) -> Optional[dict[int, Simplex]]:
    """Coarsest sketch over the whole triangulation, or None if none exists.

    Merges the three root pockets: take the triple intersection where it is
    nonempty; where it is empty, a single constrained pocket wins provided the
    two others are unconstrained (equal to the root triangle); otherwise no
    sketch exists.
    """
    if maps is None:
        maps = PocketMaps(inst, tri)
    troot = maps.table.root_triangle()
    plus = []
    for pocket in tri.root_pockets():
        p = maps.lam_plus(pocket.edge)
        if p is None:
            return None
        plus.append(p)
    pa, pb, pc = plus
    out: dict[int, Simplex] = {}
    for v in range(inst.n):
        a, b, c = pa[v], pb[v], pc[v]
        m = simplex_meet(a, b)
        m = simplex_meet(m, c) if m is not None else None
        if m is not None:
            out[v] = m
        elif b == troot and c == troot:
            out[v] = a
        elif a == troot and c == troot:
            out[v] = b
        elif a == troot and b == troot:
            out[v] = c
        else:
            return None
    return out


# ---------------------------------------------------------------------------
# Linear route: single shared table over a postorder pocket sweep.
# ---------------------------------------------------------------------------

_FREE = ("free",)  # sentinel: vertex not yet constrained by any swept pocket


@dataclass
class SweepStats:
    ops: int = 0


def sketch_linear(inst: Instance, tri: Triangulation,
                  stats: Optional[SweepStats] = None
                  ) -> Optional[dict[int, Simplex]]:
    """One-pass equivalent of delta.

    A single table S maps each vertex to its accumulated constraint.  Pockets
    are swept children before parents; a trivial pocket pins its two cycle
    vertices, and a non-trivial pocket only touches the vertices currently
    sitting on its child lids plus the neighbours of vertices pinned to its
    apex.  Occupant sets per constrained simplex make each touch O(1), for
    O(|V| + |E| + t) total.
    """
    _check_rooted(tri)
    if inst.t != tri.t:
        raise SketchError("cycle length differs from polygon size")
    t = tri.t
    adj = inst.adjacency()
    S: list[Simplex] = [_FREE] * inst.n
    occupants: dict[Simplex, set[int]] = {}

    def tick(k: int = 1):
        if stats is not None:
            stats.ops += k

    # table initialisation and the adjacency scan are part of the work
    tick(inst.n + 2 * len(inst.edges))

    def assign(v: int, s: Simplex):
        old = S[v]
        if old is not _FREE:
            occupants.get(old, set()).discard(v)
        S[v] = s
        occupants.setdefault(s, set()).add(v)
        tick()

    def in_range(s: Simplex, start: int, end: int) -> bool:
        span = end - start
        return all((x - start) % t <= span for x in s)

    for pocket in tri.postorder_pockets():
        if pocket.trivial:
            for pos in (pocket.start % t, pocket.end % t):
                v = inst.cycle[pos]
                cur = S[v]
                tick()
                if cur is _FREE:
                    assign(v, (pos,))
                elif pos in cur:
                    if cur != (pos,):
                        assign(v, (pos,))
                else:
                    return None
            continue
        lid = pocket.edge
        left_e, right_e = pocket.children
        left = tri.pockets[left_e]
        right = tri.pockets[right_e]
        apex = pocket.apex % t
        # Vertices sitting exactly on a child lid move onto the shared corner.
        for child_lid in (left_e, right_e):
            for v in list(occupants.get(child_lid, ())):
                m = simplex_meet(lid, child_lid)
                if m is None:
                    return None
                assign(v, m)
        # Vertices pinned to the apex drag their out-of-pocket neighbours
        # onto the lid.
        for u in list(occupants.get((apex,), ())):
            for v in adj[u]:
                tick()
                s = S[v]
                if s is _FREE:
                    assign(v, lid)
                    continue
                if (in_range(s, left.start, left.end)
                        or in_range(s, right.start, right.end)):
                    continue
                m = simplex_meet(s, lid)
                if m is None:
                    return None
                if m != s:
                    assign(v, m)
                else:
                    tick()
    troot = tuple(tri.triangles[tri.root])
    tick(inst.n)   # materialising the answer
    return {v: (troot if S[v] is _FREE else S[v]) for v in range(inst.n)}


# ---------------------------------------------------------------------------
# Realisation and validation.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Drawing:
    positions: dict[int, Point2]
    simplex: Optional[dict[int, Simplex]] = None
    meta: dict = field(default_factory=dict, compare=False)


def realize(assign: dict[int, Simplex], tri: Triangulation) -> Drawing:
    """Canonical positions: vertex -> the point, edge -> midpoint, triangle ->
    centroid."""
    pos: dict[int, Point2] = {}
    for v, s in assign.items():
        pts = [tri.point(i) for i in s]
        x = sum((p.x for p in pts), Fraction(0)) / len(pts)
        y = sum((p.y for p in pts), Fraction(0)) / len(pts)
        pos[v] = Point2(x, y)
    return Drawing(positions=pos, simplex=dict(assign))


@dataclass(frozen=True)
class RespectReport:
    ok: bool
    failures: tuple[str, ...] = ()


def validate_respecting(drawing: Drawing, inst: Instance,
                        polygon: SimplePolygon, tri: Triangulation
                        ) -> RespectReport:
    """Check that a drawing respects the triangulation: cycle pinned, every
    edge inside the polygon, and every edge inside some closed triangle."""
    failures = []
    pos = drawing.positions
    for p, v in enumerate(inst.cycle):
        if v not in pos:
            failures.append(f"cycle vertex {v} missing a position")
        elif pos[v] != polygon.points[p]:
            failures.append(f"cycle vertex {v} not pinned to polygon vertex {p}")
    for v in range(inst.n):
        if v not in pos:
            failures.append(f"vertex {v} missing a position")
    if failures:
        return RespectReport(False, tuple(failures))
    tri_pts = [(polygon.points[a], polygon.points[b], polygon.points[c])
               for a, b, c in tri.triangles]
    for u, v in inst.edges:
        a, b = pos[u], pos[v]
        try:
            if not segment_inside_polygon(a, b, polygon):
                failures.append(f"edge ({u},{v}) leaves the polygon")
                continue
        except Exception:
            failures.append(f"edge ({u},{v}) has an endpoint outside the polygon")
            continue
        if not any(point_in_triangle(a, *tp) != OUTSIDE
                   and point_in_triangle(b, *tp) != OUTSIDE
                   for tp in tri_pts):
            failures.append(f"edge ({u},{v}) not contained in any closed triangle")
    return RespectReport(not failures, tuple(failures))
