"""Plane-instance simplification and accommodating drawings.

A plane instance fixes a combinatorial embedding with the cycle as outer
face.  The pipeline triangulates interior faces (via a doubled face cycle),
strips separating-triangle interiors, and contracts sketchability-preserving
non-cycle edges down to a minimal instance whose drawing is forced; replaying
the simplification journal backwards with epsilon-perturbations produces a
planar drawing inside the polygon.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .geometry import (Point2, SimplePolygon, orient, point_on_segment,
                       segments_properly_cross, segment_inside_polygon,
                       EndpointOutsideError, midpoint)
from .model import (Instance, PlaneInstance, trace_faces, _cyclic_equal,
                    validate_plane_instance, EmbeddingError)
from .triangulation import Triangulation, root_dual, validate_triangulation
from .sketch import delta, Drawing, realize, PocketMaps, SimplexTable


class PlanarError(ValueError):
    pass


class NotSketchableError(PlanarError):
    pass


# ---------------------------------------------------------------------------
# Journal steps.
# ---------------------------------------------------------------------------

@dataclass
class AddedVertex:
    v: int


@dataclass
class AddedEdge:
    u: int
    v: int


@dataclass
class StrippedTriangle:
    triangle: tuple[int, int, int]
    sub_vertices: list[int]          # global ids; first three are the triangle
    sub_plane: PlaneInstance         # relabelled to 0..m-1, cycle = triangle
    snapshot: PlaneInstance          # state before the strip


@dataclass
class ContractedEdge:
    u: int
    v: int                           # removed vertex
    z: int                           # surviving vertex (== u)
    common: tuple[int, int]          # the two shared face neighbours
    snapshot: PlaneInstance          # state before the contraction


JournalStep = Union[AddedVertex, AddedEdge, StrippedTriangle, ContractedEdge]


# ---------------------------------------------------------------------------
# Embedding surgery.
# ---------------------------------------------------------------------------

class PlaneSurgeon:
    """Mutable wrapper around a PlaneInstance supporting the pipeline's
    local modifications."""

    def __init__(self, plane: PlaneInstance):
        inst = plane.instance
        self.n = inst.n
        self.edges: set[tuple[int, int]] = {tuple(sorted(e)) for e in inst.edges}
        self.cycle = list(inst.cycle)
        self.rot: dict[int, list[int]] = {v: list(ns)
                                          for v, ns in plane.rotation.items()}
        for v in range(self.n):
            self.rot.setdefault(v, [])

    @property
    def plane(self) -> PlaneInstance:
        inst = Instance(n=self.n, edges=sorted(self.edges), cycle=list(self.cycle))
        return PlaneInstance(instance=inst,
                             rotation={v: list(ns) for v, ns in self.rot.items()})

    def faces(self) -> list[list[int]]:
        return trace_faces(self.rot)

    def interior_faces(self) -> list[list[int]]:
        outer = list(reversed(self.cycle))
        out = []
        for f in self.faces():
            walk = f
            if len(walk) == len(outer) and _cyclic_equal(walk, outer):
                continue
            out.append(f)
        return out

    def _insert_in_corner(self, u: int, prev_v: int, new_neighbor: int):
        """Insert new_neighbor into rot[u] at the face corner entered from
        prev_v (the walk ... prev_v, u, next ...)."""
        idx = self.rot[u].index(prev_v)
        self.rot[u].insert(idx, new_neighbor)

    def add_edge_in_face(self, face: list[int], su: int, sv: int):
        """Add edge between the face-walk positions su and sv (indices into
        the closed walk), splitting the face."""
        walk = face
        k = len(walk)
        u, v = walk[su], walk[sv]
        u_prev = walk[su - 1]
        v_prev = walk[sv - 1]
        e = tuple(sorted((u, v)))
        if e in self.edges:
            raise PlanarError(f"edge {e} already present")
        self.edges.add(e)
        self._insert_in_corner(u, u_prev, v)
        self._insert_in_corner(v, v_prev, u)

    def add_vertex_in_face(self, face: list[int], anchor: int):
        """Add a pendant vertex inside the face, attached to `anchor` (a
        vertex of the face walk)."""
        walk = face
        s = walk.index(anchor)
        w = self.n
        self.n += 1
        self.edges.add(tuple(sorted((anchor, w))))
        self.rot[w] = [anchor]
        self._insert_in_corner(anchor, walk[s - 1], w)
        return w

    def delete_vertices(self, vs: set[int]):
        """Remove vertices (none on the cycle) and relabel to keep ids dense."""
        if any(v in self.cycle for v in vs):
            raise PlanarError("cannot delete cycle vertices")
        keep = [v for v in range(self.n) if v not in vs]
        remap = {old: new for new, old in enumerate(keep)}
        self.edges = {tuple(sorted((remap[a], remap[b])))
                      for a, b in self.edges if a not in vs and b not in vs}
        self.cycle = [remap[c] for c in self.cycle]
        self.rot = {remap[v]: [remap[u] for u in ns if u not in vs]
                    for v, ns in self.rot.items() if v not in vs}
        self.n = len(keep)
        return remap

    def contract(self, u: int, v: int) -> tuple[int, int]:
        """Contract edge (u, v), keeping u.  Requires a triangulated
        embedding where u and v share exactly two neighbours (the two faces
        on the edge).  Returns those two neighbours.  Vertex ids above v
        shift down by one."""
        common = sorted(set(self.rot[u]) & set(self.rot[v]))
        if len(common) != 2:
            raise PlanarError(
                f"edge ({u},{v}) has {len(common)} shared neighbours; "
                "separating triangle present?")
        x, y = common
        ru, rv = self.rot[u], self.rot[v]
        iu = ru.index(v)
        iv = rv.index(u)
        spliced = rv[iv + 1:] + rv[:iv]          # v's fan, u removed
        merged = ru[:iu] + spliced + ru[iu + 1:]
        # x and y each occur twice (once from u's list, once from v's fan),
        # as cyclically adjacent duplicates; keep one copy of each.
        dedup = []
        for w in merged:
            if w not in dedup:
                dedup.append(w)
        self.rot[u] = dedup
        for w in rv:
            if w == u:
                continue
            rw = self.rot[w]
            if u in rw and v in rw:
                rw.remove(v)
            else:
                rw[rw.index(v)] = u
        del self.rot[v]
        self.edges = {e for e in self.edges if v not in e}
        for w in rv:
            if w != u:
                self.edges.add(tuple(sorted((u, w))))
        # relabel to keep ids dense
        keep = [w for w in range(self.n) if w != v]
        remap = {old: new for new, old in enumerate(keep)}
        self.edges = {tuple(sorted((remap[a], remap[b]))) for a, b in self.edges}
        self.cycle = [remap[c] for c in self.cycle]
        self.rot = {remap[w]: [remap[s] for s in ns]
                    for w, ns in self.rot.items()}
        self.n -= 1
        return remap[x], remap[y]


# ---------------------------------------------------------------------------
# Sketchability helpers.
# ---------------------------------------------------------------------------

def _sketchable(plane: PlaneInstance, tri: Triangulation) -> bool:
    try:
        return delta(plane.instance, tri) is not None
    except Exception:
        return False


def _assert_valid(plane: PlaneInstance):
    problems = validate_plane_instance(plane)
    if problems:
        raise PlanarError("invalid embedding: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# Pipeline stages.
# ---------------------------------------------------------------------------

def augment_triangulated(plane: PlaneInstance, tri: Triangulation
                         ) -> tuple[PlaneInstance, list[JournalStep]]:
    """Connect stray components and triangulate all interior faces.

    Non-triangular faces get a doubled inner cycle whose chords are chosen to
    keep the coarsest sketch defined.
    """
    journal: list[JournalStep] = []
    s = PlaneSurgeon(plane)
    _connect_components(s, journal)
    _double_cycle_faces(s, tri, journal)
    out = s.plane
    _assert_valid(out)
    for f in _interior_faces_of(out):
        if len(f) != 3:
            raise PlanarError("augmentation left a non-triangular face")
    return out, journal


def _interior_faces_of(plane: PlaneInstance) -> list[list[int]]:
    outer = list(reversed(plane.instance.cycle))
    out = []
    for f in trace_faces(plane.rotation):
        walk = f
        if len(walk) == len(outer) and _cyclic_equal(walk, outer):
            continue
        out.append(f)
    return out


def _connect_components(s: PlaneSurgeon, journal: list[JournalStep]):
    from .model import components
    while True:
        comps = components(Instance(n=s.n, edges=sorted(s.edges),
                                    cycle=list(s.cycle)))
        main = next(c for c in comps if s.cycle[0] in c)
        stray = [c for c in comps if c is not main]
        if not stray:
            return
        comp = stray[0]
        w = min(comp)
        # attach w to a vertex of some interior face of the main component
        face = next(f for f in s.interior_faces()
                    if all(v in main for v in f))
        anchor = face[0]
        e = tuple(sorted((anchor, w)))
        s.edges.add(e)
        s._insert_in_corner(anchor, face[-1], w)
        if s.rot[w]:
            s.rot[w].append(anchor)
        else:
            s.rot[w] = [anchor]
        journal.append(AddedEdge(anchor, w))


def _double_cycle_faces(s: PlaneSurgeon, tri: Triangulation,
                        journal: list[JournalStep]):
    while True:
        faces = [f for f in s.interior_faces() if len(f) > 3]
        if not faces:
            return
        face = faces[0]
        walk = face
        k = len(walk)
        # one copy per walk occurrence, ring inside the face
        copies = list(range(s.n, s.n + k))
        s.n += k
        for idx, v in enumerate(walk):
            u = copies[idx]
            journal.append(AddedVertex(u))
            s.edges.add(tuple(sorted((v, u))))
        for idx in range(k):
            a, b = copies[idx], copies[(idx + 1) % k]
            s.edges.add(tuple(sorted((a, b))))
        # rotations: copy u_idx sees [v_idx, u_{idx-1}, u_{idx+1}] ccw;
        # each walk vertex gains its copy at the face corner.
        for idx, v in enumerate(walk):
            u = copies[idx]
            s.rot[u] = [walk[idx], copies[(idx + 1) % k], copies[idx - 1]]
            s._insert_in_corner(v, walk[idx - 1], u)
        for idx in range(k):
            journal.append(AddedEdge(walk[idx], copies[idx]))
            journal.append(AddedEdge(copies[idx], copies[(idx + 1) % k]))
        for idx in range(k):
            _split_quad(s, walk[idx], walk[(idx + 1) % k],
                        copies[(idx + 1) % k], copies[idx], tri, journal)
        _chord_inner_cycle(s, copies, tri, journal)


def _split_quad(s: PlaneSurgeon, va: int, vb: int, ub: int, ua: int,
                tri: Triangulation, journal: list[JournalStep]):
    """Triangulate the quad face (va, vb, ub, ua) left between a face walk
    edge and the doubled cycle, keeping the coarsest sketch defined."""
    quad = None
    for f in s.interior_faces():
        if len(f) == 4 and ua in f and ub in f and va in f and vb in f:
            quad = f
            break
    if quad is None:
        raise PlanarError("doubled-cycle quad face not found")
    walk = quad
    for p, q in ((ua, vb), (va, ub)):
        if tuple(sorted((p, q))) in s.edges:
            continue
        saved = copy.deepcopy((s.edges, s.rot))
        try:
            s.add_edge_in_face(quad, walk.index(p), walk.index(q))
        except (PlanarError, ValueError):
            s.edges, s.rot = saved
            continue
        if delta(s.plane.instance, tri) is None:
            s.edges, s.rot = saved
            continue
        journal.append(AddedEdge(p, q))
        return
    raise PlanarError("no sketch-preserving diagonal for a doubled-cycle quad")


def _chord_inner_cycle(s: PlaneSurgeon, ring: list[int], tri: Triangulation,
                       journal: list[JournalStep]):
    """Triangulate the inner face bounded by the doubled cycle, preferring
    chords whose endpoints' coarsest-sketch simplices share a triangle."""
    table = SimplexTable(tri)

    def rec(cyc: list[int]):
        if len(cyc) <= 3:
            return
        assign = delta(s.plane.instance, tri)
        pairs = []
        m = len(cyc)
        for off in range(2, m - 1):
            for a in range(m):
                b = (a + off) % m
                if a < b:
                    pairs.append((a, b))
        if assign is not None:
            pairs.sort(key=lambda ab: not table.shares_triangle(
                assign[cyc[ab[0]]], assign[cyc[ab[1]]]))
        for a, b in pairs:
            u, v = cyc[a], cyc[b]
            if tuple(sorted((u, v))) in s.edges:
                continue
            saved = copy.deepcopy((s.edges, s.rot))
            face = _face_of_cycle(s, cyc)
            try:
                su = face.index(u)
                sv = face.index(v)
                s.add_edge_in_face(face, su, sv)
            except (PlanarError, ValueError):
                s.edges, s.rot = saved
                continue
            if delta(s.plane.instance, tri) is None:
                s.edges, s.rot = saved
                continue
            journal.append(AddedEdge(u, v))
            rec(cyc[a:b + 1])
            rec(cyc[b:] + cyc[:a + 1])
            return
        raise PlanarError("no sketch-preserving chord for the doubled cycle")

    rec(ring)


def _face_of_cycle(s: PlaneSurgeon, cyc: list[int]) -> list[int]:
    want = set(cyc)
    for f in s.interior_faces():
        if len(f) == len(cyc) and set(f) == want:
            return f
    raise PlanarError("inner cycle face not found")


def find_separating_triangles(plane: PlaneInstance
                              ) -> list[tuple[int, int, int]]:
    inst = plane.instance
    adj = inst.adjacency()
    edge_set = {tuple(sorted(e)) for e in inst.edges}
    face_tris = set()
    for f in trace_faces(plane.rotation):
        walk = f
        if len(walk) == 3:
            face_tris.add(tuple(sorted(walk)))
    out = []
    for a in range(inst.n):
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[b]:
                if c <= b or tuple(sorted((a, c))) not in edge_set:
                    continue
                tric = (a, b, c)
                if tric not in face_tris:
                    out.append(tric)
    return out


def _triangle_interior(plane: PlaneInstance, tric: tuple[int, int, int]
                       ) -> set[int]:
    """Vertices strictly inside the separating triangle: the components of
    G - {a,b,c} containing no cycle vertex."""
    inst = plane.instance
    adj = inst.adjacency()
    blocked = set(tric)
    seen = set(blocked)
    from collections import deque
    q = deque(v for v in inst.cycle if v not in blocked)
    seen.update(q)
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                q.append(w)
    return {v for v in range(inst.n) if v not in seen}


def _induced_sub_plane(plane: PlaneInstance, verts: list[int]
                       ) -> PlaneInstance:
    """Plane instance induced on verts (relabelled 0..m-1), with the first
    three vertices as the cycle."""
    keep = set(verts)
    remap = {g: i for i, g in enumerate(verts)}
    inst = plane.instance
    edges = sorted({(min(remap[a], remap[b]), max(remap[a], remap[b]))
                    for a, b in inst.edges if a in keep and b in keep})
    rot = {remap[v]: [remap[u] for u in plane.rotation[v] if u in keep]
           for v in verts}
    cyc = [0, 1, 2]
    sub = PlaneInstance(instance=Instance(n=len(verts), edges=edges, cycle=cyc),
                        rotation=rot)
    from .model import orient_plane_instance
    return orient_plane_instance(sub)


def strip_separating_interiors(plane: PlaneInstance
                               ) -> tuple[PlaneInstance, list[JournalStep]]:
    journal: list[JournalStep] = []
    while True:
        seps = find_separating_triangles(plane)
        seps = [tc for tc in seps if _triangle_interior(plane, tc)]
        if not seps:
            return plane, journal
        tric = seps[0]
        interior = _triangle_interior(plane, tric)
        sub_vertices = list(tric) + sorted(interior)
        snapshot = plane.copy()
        sub = _induced_sub_plane(plane, sub_vertices)
        s = PlaneSurgeon(plane)
        remap = s.delete_vertices(interior)
        new_tric = tuple(remap[x] for x in tric)
        journal.append(StrippedTriangle(triangle=new_tric,
                                        sub_vertices=sub_vertices,
                                        sub_plane=sub, snapshot=snapshot))
        plane = s.plane
        _assert_valid(plane)


def contract_sketch_preserving(plane: PlaneInstance, tri: Triangulation
                               ) -> Optional[tuple[PlaneInstance,
                                                   list[JournalStep]]]:
    """Contract the first (deterministic order) non-cycle edge that keeps the
    instance sketchable; strips any separating triangles this creates."""
    inst = plane.instance
    on_c = set(inst.cycle)
    for u, v in sorted(tuple(sorted(e)) for e in inst.edges):
        if u in on_c and v in on_c:
            continue  # merging two cycle vertices would destroy C
        keep, drop = (u, v) if u in on_c or v not in on_c else (v, u)
        if drop in on_c:
            keep, drop = drop, keep
        snapshot = plane.copy()
        s = PlaneSurgeon(plane)
        try:
            common = s.contract(keep, drop)
        except PlanarError:
            continue
        cand = s.plane
        if validate_plane_instance(cand):
            continue
        if not _sketchable(cand, tri):
            continue
        journal: list[JournalStep] = [ContractedEdge(u=keep, v=drop, z=keep,
                                                     common=common,
                                                     snapshot=snapshot)]
        cand, strips = strip_separating_interiors(cand)
        journal.extend(strips)
        return cand, journal
    return None


def minimize(plane: PlaneInstance, tri: Triangulation
             ) -> tuple[PlaneInstance, list[JournalStep]]:
    _assert_valid(plane)
    if not _sketchable(plane, tri):
        raise NotSketchableError("instance has no sketch for this triangulation")
    plane, journal = augment_triangulated(plane, tri)
    if not _sketchable(plane, tri):
        raise PlanarError("augmentation broke sketchability")
    plane, strips = strip_separating_interiors(plane)
    journal.extend(strips)
    while True:
        step = contract_sketch_preserving(plane, tri)
        if step is None:
            break
        plane, steps = step
        journal.extend(steps)
    inst = plane.instance
    on_c = set(inst.cycle)
    if set(range(inst.n)) != on_c:
        raise PlanarError("minimal instance has a vertex off the cycle")
    want = {tuple(sorted((inst.cycle[a], inst.cycle[b])))
            for a, b in tri.all_edges()}
    have = {tuple(sorted(e)) for e in inst.edges}
    if want != have:
        raise PlanarError("minimal instance edges differ from the triangulation")
    return plane, journal


# ---------------------------------------------------------------------------
# Drawing validation.
# ---------------------------------------------------------------------------

def validate_planar(drawing: Drawing, inst: Instance) -> bool:
    pos = drawing.positions
    if len({(p.x, p.y) for p in pos.values()}) != len(pos):
        return False
    edges = [tuple(sorted(e)) for e in inst.edges]
    for i, (a, b) in enumerate(edges):
        pa, pb = pos[a], pos[b]
        for c, d in edges[i + 1:]:
            pc, pd = pos[c], pos[d]
            if segments_properly_cross(pa, pb, pc, pd):
                return False
        for v in range(inst.n):
            if v in (a, b):
                continue
            if point_on_segment(pos[v], pa, pb):
                return False
    return True


def _drawing_respects(drawing: Drawing, inst: Instance,
                      polygon: SimplePolygon) -> bool:
    pos = drawing.positions
    for p, v in enumerate(inst.cycle):
        if pos[v] != polygon.points[p]:
            return False
    try:
        return all(segment_inside_polygon(pos[a], pos[b], polygon)
                   for a, b in inst.edges)
    except EndpointOutsideError:
        return False


# ---------------------------------------------------------------------------
# Accommodation: backward journal replay.
# ---------------------------------------------------------------------------

def default_epsilon(polygon: SimplePolygon, tri: Triangulation) -> Fraction:
    """A quarter of the smallest vertex-to-non-incident-edge distance,
    under the L-infinity-bounded surrogate |cross| / (|dx|+|dy|)."""
    best: Optional[Fraction] = None
    pts = polygon.points
    for a, b in tri.all_edges():
        pa, pb = pts[a], pts[b]
        d = pb - pa
        ln = abs(d.x) + abs(d.y)
        for v, p in enumerate(pts):
            if v in (a, b):
                continue
            dist = abs(d.cross(p - pa)) / ln
            if dist > 0 and (best is None or dist < best):
                best = dist
    if best is None:
        best = Fraction(1)
    return best / 4


def _wedge_direction(d1: Point2, d2: Point2, weight: Fraction) -> Point2:
    """A direction strictly inside the ccw wedge from d1 to d2."""
    n1 = d1.scale(Fraction(1, abs(d1.x) + abs(d1.y)))
    n2 = d2.scale(Fraction(1, abs(d2.x) + abs(d2.y)))
    cr = n1.cross(n2)
    if cr > 0:
        return n1 + n2.scale(weight)
    if cr < 0:
        return (n1 + n2.scale(weight)).scale(-1)
    if n1.dot(n2) < 0:  # wedge is exactly a half-plane
        return n1.perp_ccw() + n1.scale(weight / 8)
    raise PlanarError("degenerate zero-width wedge")


def _angular_contains(base: Point2, d1: Point2, d2: Point2, q: Point2) -> bool:
    """Whether q - base lies in the ccw cone from d1 - base to d2 - base."""
    from .geometry import primitive_direction, ccw_strictly_between
    s = primitive_direction(d1 - base)
    e = primitive_direction(d2 - base)
    m = primitive_direction(q - base)
    return m == s or m == e or ccw_strictly_between(s, m, e)


def accommodate(plane: PlaneInstance, polygon: SimplePolygon,
                tri: Optional[Triangulation] = None,
                epsilon: Optional[Fraction] = None) -> Drawing:
    """Planar polygon-respecting drawing of a sketchable plane instance."""
    from .triangulation import ear_clip
    if tri is None:
        tri = root_dual(ear_clip(polygon))
    if tri.root is None:
        tri = root_dual(tri)
    if epsilon is None:
        epsilon = default_epsilon(polygon, tri)
    original = plane.instance
    minimal, journal = minimize(plane, tri)
    last_error = "no attempts made"
    for attempt in range(40):
        eps = epsilon / (4 ** attempt)
        try:
            drawing = _replay(minimal, journal, polygon, tri, eps, original)
            return drawing
        except _ReplayFailure as exc:
            last_error = str(exc)
            continue
    raise PlanarError(f"replay failed at every epsilon: {last_error}")


class _ReplayFailure(Exception):
    pass


def _replay(minimal: PlaneInstance, journal: list[JournalStep],
            polygon: SimplePolygon, tri: Triangulation, eps: Fraction,
            original: Instance) -> Drawing:
    inst = minimal.instance
    pos: dict[int, Point2] = {v: polygon.points[p]
                              for p, v in enumerate(inst.cycle)}
    cur = minimal
    for step in reversed(journal):
        if isinstance(step, ContractedEdge):
            pos = _undo_contraction(step, cur, pos, polygon, eps)
            cur = step.snapshot
        elif isinstance(step, StrippedTriangle):
            pos = _undo_strip(step, cur, pos, polygon, eps)
            cur = step.snapshot
        elif isinstance(step, AddedVertex):
            # augmentation ids were appended past the original range
            pos.pop(step.v, None)
        elif isinstance(step, AddedEdge):
            pass
        if isinstance(step, (ContractedEdge, StrippedTriangle)):
            d = Drawing(positions=dict(pos))
            if not validate_planar(d, cur.instance):
                raise _ReplayFailure("intermediate drawing not planar")
            if not _drawing_respects(d, cur.instance, polygon):
                raise _ReplayFailure("intermediate drawing leaves the polygon")
    final_pos = {v: pos[v] for v in range(original.n)}
    drawing = Drawing(positions=final_pos, meta={"epsilon": eps})
    if not validate_planar(drawing, original):
        raise _ReplayFailure("final drawing not planar")
    if not _drawing_respects(drawing, original, polygon):
        raise _ReplayFailure("final drawing leaves the polygon")
    return drawing


def _undo_contraction(step: ContractedEdge, cur: PlaneInstance,
                      pos: dict[int, Point2], polygon: SimplePolygon,
                      eps: Fraction) -> dict[int, Point2]:
    """Re-split z into (u, v): v goes an epsilon into the wedge between the
    two shared neighbours, on the side holding v's other former edges."""
    before = step.snapshot
    v, z = step.v, step.z
    # ids >= v in `cur` correspond to id+1 in `before`
    lift = {w: (w if w < v else w + 1) for w in range(cur.instance.n)}
    new_pos = {lift[w]: p for w, p in pos.items()}
    rot_v = before.rotation[v]
    exclusive = [w for w in rot_v if w != z]
    zp = new_pos[z]
    x, y = (lift[c] for c in step.common)
    dx, dy = new_pos[x] - zp, new_pos[y] - zp
    others = [w for w in exclusive if w not in (x, y)]
    # the split distance must be small relative to the local configuration,
    # not just the global epsilon, or nested splits collide at every scale
    local = min(abs(p.x - zp.x) + abs(p.y - zp.y)
                for w, p in new_pos.items() if w != v and p != zp)
    base = min(eps, local / 4)
    for shrink in range(12):
        dist = base / (4 ** shrink)
        for weight in (Fraction(1), Fraction(1, 2), Fraction(2), Fraction(1, 3)):
            for d1, d2 in ((dx, dy), (dy, dx)):
                if others and not all(
                        _angular_contains(zp, zp + d1, zp + d2, new_pos[w])
                        for w in others):
                    continue
                try:
                    direction = _wedge_direction(d1, d2, weight)
                except PlanarError:
                    continue
                ln = abs(direction.x) + abs(direction.y)
                cand = dict(new_pos)
                cand[v] = zp + direction.scale(dist / ln)
                d = Drawing(positions=cand)
                if validate_planar(d, before.instance) and _drawing_respects(
                        d, before.instance, polygon):
                    return cand
    raise _ReplayFailure(f"could not split vertex {v} off {z}")


def _undo_strip(step: StrippedTriangle, cur: PlaneInstance,
                pos: dict[int, Point2], polygon: SimplePolygon,
                eps: Fraction) -> dict[int, Point2]:
    """Re-insert the stripped interior by recursively accommodating it inside
    the drawn triangle."""
    before = step.snapshot
    # cur's ids are before's ids with the interior removed, order preserved
    removed = sorted(step.sub_vertices[3:])
    lift = {}
    it = iter(g for g in range(before.instance.n) if g not in removed)
    for w in range(cur.instance.n):
        lift[w] = next(it)
    new_pos = {lift[w]: p for w, p in pos.items()}
    a, b, c = step.sub_vertices[:3]
    pa, pb, pc = new_pos[a], new_pos[b], new_pos[c]
    if orient(pa, pb, pc) == 0:
        raise _ReplayFailure("stripped triangle drawn degenerate")
    corners = [pa, pb, pc]
    sub = step.sub_plane
    if orient(pa, pb, pc) < 0:
        # mirror the sub-embedding to match the drawn orientation
        from .model import mirror_rotation
        sub = PlaneInstance(instance=Instance(
            n=sub.instance.n, edges=list(sub.instance.edges),
            cycle=[sub.instance.cycle[0]] + list(reversed(sub.instance.cycle[1:]))),
            rotation=mirror_rotation(sub.rotation))
        corners = [pa, pc, pb]
    tri_poly = SimplePolygon.from_points([corners[0], corners[1], corners[2]])
    # the sub-triangle sets its own scale; the outer epsilon is irrelevant here
    sub_drawing = accommodate(sub, tri_poly)
    for s_idx, p in sub_drawing.positions.items():
        g = step.sub_vertices[s_idx]
        if g in (a, b, c):
            continue
        new_pos[g] = p
    return new_pos
