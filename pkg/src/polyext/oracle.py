"""Slow, independent reference implementations used to cross-check the fast
routes, plus seeded random generators for the test suite and experiment
scripts."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, Optional

from .geometry import Point2, SimplePolygon, PolygonError
from .model import (Instance, PlaneInstance, graph_distances, cycle_distance,
                    validate_instance)
from .triangulation import (Triangulation, root_dual, ear_clip,
                            validate_triangulation, _diagonal_ok, _interleave,
                            _canon)
from .sketch import Simplex, SimplexTable, simplex_meet, is_sketch


class OracleLimit(RuntimeError):
    pass


def _bfs_order(inst: Instance) -> list[int]:
    """Vertices ordered by BFS from the cycle, so partial assignments fail
    early; unreachable vertices come last."""
    from collections import deque
    seen = set(inst.cycle)
    order = list(inst.cycle)
    q = deque(inst.cycle)
    adj = inst.adjacency()
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                order.append(v)
                q.append(v)
    order.extend(v for v in range(inst.n) if v not in seen)
    return order


def enumerate_sketches(inst: Instance, tri: Triangulation,
                       limit: int = 10_000_000,
                       count: bool = False) -> int | bool:
    """Backtracking search over all sketches.

    With count=False returns whether any sketch exists; with count=True
    returns the exact number.  Raises OracleLimit after `limit` node visits.
    """
    table = SimplexTable(tri)
    adj = inst.adjacency()
    order = _bfs_order(inst)
    pinned: dict[int, Simplex] = {v: (p,) for p, v in enumerate(inst.cycle)}
    rank = {v: i for i, v in enumerate(order)}
    assign: dict[int, Simplex] = {}
    visits = 0
    found = 0

    def rec(idx: int) -> bool:
        nonlocal visits, found
        visits += 1
        if visits > limit:
            raise OracleLimit(f"exceeded {limit} visits")
        if idx == len(order):
            found += 1
            return True
        v = order[idx]
        choices = [pinned[v]] if v in pinned else table.all
        for s in choices:
            ok = all(table.shares_triangle(s, assign[u])
                     for u in adj[v] if rank[u] < idx)
            if not ok:
                continue
            assign[v] = s
            if rec(idx + 1) and not count:
                del assign[v]
                return True
            del assign[v]
        return False

    hit = rec(0)
    return found if count else hit


def _iter_assignments(inst: Instance, tri: Triangulation,
                      pinned: dict[int, Simplex],
                      domain: list[Simplex],
                      limit: int) -> Iterator[dict[int, Simplex]]:
    """All total assignments respecting pinning and pairwise triangle
    sharing of adjacent vertices, by backtracking."""
    table = SimplexTable(tri)
    adj = inst.adjacency()
    order = _bfs_order(inst)
    rank = {v: i for i, v in enumerate(order)}
    assign: dict[int, Simplex] = {}
    visits = 0

    def rec(idx: int) -> Iterator[dict[int, Simplex]]:
        nonlocal visits
        visits += 1
        if visits > limit:
            raise OracleLimit(f"exceeded {limit} visits")
        if idx == len(order):
            yield dict(assign)
            return
        v = order[idx]
        choices = [pinned[v]] if v in pinned else domain
        for s in choices:
            if all(table.shares_triangle(s, assign[u])
                   for u in adj[v] if rank[u] < idx):
                assign[v] = s
                yield from rec(idx + 1)
                del assign[v]

    yield from rec(0)


def iter_sketches(inst: Instance, tri: Triangulation,
                  limit: int = 10_000_000) -> Iterator[dict[int, Simplex]]:
    """Yield every sketch of the instance."""
    table = SimplexTable(tri)
    pinned = {v: (p,) for p, v in enumerate(inst.cycle)}
    yield from _iter_assignments(inst, tri, pinned, table.all, limit)


def pocket_simplices(tri: Triangulation, pocket) -> list[Simplex]:
    """Simplices contained in the pocket's unwrapped cycle range."""
    table = SimplexTable(tri)
    t = tri.t
    i, span = pocket.start, pocket.end - pocket.start
    return [s for s in table.all if all((x - i) % t <= span for x in s)]


def enumerate_local_sketches(inst: Instance, tri: Triangulation, pocket,
                             limit: int = 10_000_000
                             ) -> Iterator[dict[int, Simplex]]:
    """Every local sketch of the pocket: vertices range over simplices in the
    pocket plus the outer triangle; cycle vertices whose polygon vertex lies
    in the pocket are pinned, the others are free."""
    t = tri.t
    outer = tuple(sorted(tri.triangles[pocket.outer_triangle]))
    domain = pocket_simplices(tri, pocket)
    if outer not in domain:
        domain = domain + [outer]
    pinned = {}
    for p, v in enumerate(inst.cycle):
        if pocket.contains_index(t, p):
            pinned[v] = (p,)
    yield from _iter_assignments(inst, tri, pinned, domain, limit)


def is_local_sketch(assign: dict[int, Simplex], inst: Instance,
                    tri: Triangulation, pocket) -> bool:
    """Validity check matching enumerate_local_sketches' constraints."""
    table = SimplexTable(tri)
    t = tri.t
    outer = tuple(sorted(tri.triangles[pocket.outer_triangle]))
    domain = set(pocket_simplices(tri, pocket)) | {outer}
    if set(assign) != set(range(inst.n)):
        return False
    if any(assign[v] not in domain for v in assign):
        return False
    for p, v in enumerate(inst.cycle):
        if pocket.contains_index(t, p) and assign[v] != (p,):
            return False
    return all(table.shares_triangle(assign[u], assign[v])
               for u, v in inst.edges)


def is_pulled(v: int, pocket_range: tuple[int, int], inst: Instance,
              dist_from: Optional[dict[int, list[Optional[int]]]] = None
              ) -> bool:
    """Whether graph distances alone force v into the pocket spanning cycle
    positions [i..j] (inclusive, unwrapped)."""
    i, j = pocket_range
    t = inst.t

    def d(v_, pos):
        if dist_from is not None:
            return dist_from[pos % t][v_]
        from .model import graph_distances
        return graph_distances(inst).from_position(pos % t)[v_]

    ks = range(i, j + 1)
    for k in ks:
        dv = d(v, k)
        if dv is not None and dv <= min(k - i, j - k):
            return True
    one = any(d(v, k) is not None and d(v, k) <= min(k - i + 1, j - k - 1)
              for k in ks)
    two = any(d(v, l) is not None and d(v, l) <= min(l - i - 1, j - l + 1)
              for l in ks)
    return one and two


def localize(assign: dict[int, Simplex], pocket_range: tuple[int, int],
             tri: Triangulation, outer_triangle: Simplex
             ) -> dict[int, Simplex]:
    """Collapse every simplex not contained in the pocket onto the outer
    triangle; used when comparing a global sketch against a pocket map."""
    i, j = pocket_range
    t = tri.t
    span = j - i
    out = {}
    for v, s in assign.items():
        if all((x - i) % t <= span for x in s):
            out[v] = s
        else:
            out[v] = outer_triangle
    return out


def all_triangulations(polygon: SimplePolygon) -> Iterator[Triangulation]:
    """Every triangulation of the polygon, by extending compatible diagonal
    sets.  Intended for small t only."""
    t = len(polygon.points)
    candidates = []
    for i in range(t):
        for j in range(i + 2, t):
            if i == 0 and j == t - 1:
                continue
            if _diagonal_ok(polygon, i, j):
                candidates.append((i, j))

    need = t - 3
    results: list[tuple[tuple[int, int], ...]] = []

    def rec(start: int, chosen: list[tuple[int, int]]):
        if len(chosen) == need:
            results.append(tuple(chosen))
            return
        if need - len(chosen) > len(candidates) - start:
            return
        for idx in range(start, len(candidates)):
            d = candidates[idx]
            if any(_interleave(t, d, c) for c in chosen):
                continue
            chosen.append(d)
            rec(idx + 1, chosen)
            chosen.pop()

    rec(0, [])
    for diags in results:
        yield validate_triangulation(polygon, list(diags))


# ---------------------------------------------------------------------------
# Seeded random generators.
# ---------------------------------------------------------------------------

def random_instance(rng: random.Random, t: int, extra: int,
                    extra_edges: int = 0, connected: bool = True) -> Instance:
    """Cycle of length t plus `extra` additional vertices attached at random,
    plus up to `extra_edges` random chords/edges."""
    n = t + extra
    edges = {(i, (i + 1) % t) for i in range(t)}
    edges = {tuple(sorted(e)) for e in edges}
    for v in range(t, n):
        k = rng.randint(1, 3) if connected else rng.randint(0, 3)
        targets = rng.sample(range(v), min(k, v)) if k else []
        for u in targets:
            edges.add(tuple(sorted((u, v))))
    tries = 0
    while extra_edges > 0 and tries < 50 * extra_edges:
        tries += 1
        u, v = rng.sample(range(n), 2)
        e = tuple(sorted((u, v)))
        if e not in edges:
            edges.add(e)
            extra_edges -= 1
    inst = Instance(n=n, edges=sorted(edges), cycle=list(range(t)))
    assert not validate_instance(inst)
    return inst


def random_universal_instance(rng: random.Random, t: int, extra: int) -> Instance:
    """Instance guaranteed to satisfy both distance conditions: trees hung
    off single cycle vertices never shorten cycle distances."""
    n = t + extra
    edges = [(i, (i + 1) % t) for i in range(t)]
    for v in range(t, n):
        u = rng.randrange(v)  # attach to anything earlier: still a hung tree
        edges.append(tuple(sorted((u if u < t else u, v))))
    inst = Instance(n=n, edges=sorted(set(edges)), cycle=list(range(t)))
    assert not validate_instance(inst)
    return inst


def random_polygon(rng: random.Random, t: int,
                   attempts: int = 2000) -> SimplePolygon:
    """Random simple polygon with t integer vertices, by 2-opt untangling of
    a random point set's tour."""
    from .geometry import segments_properly_cross, orient
    span = 4 * t
    for _ in range(attempts):
        pts = set()
        while len(pts) < t:
            pts.add((rng.randint(0, span), rng.randint(0, span)))
        pts = [Point2(Fraction(x), Fraction(y)) for x, y in sorted(pts)]
        cx = sum((p.x for p in pts), Fraction(0)) / t
        cy = sum((p.y for p in pts), Fraction(0)) / t
        c = Point2(cx, cy)
        import math
        pts.sort(key=lambda p: math.atan2(p.y - c.y, p.x - c.x))
        # 2-opt away any remaining crossings
        for _pass in range(10 * t):
            crossed = False
            for i in range(t):
                for j in range(i + 1, t):
                    a, b = pts[i], pts[(i + 1) % t]
                    cc, d = pts[j], pts[(j + 1) % t]
                    if segments_properly_cross(a, b, cc, d):
                        lo, hi = i + 1, j
                        pts[lo:hi + 1] = pts[lo:hi + 1][::-1]
                        crossed = True
                        break
                if crossed:
                    break
            if not crossed:
                break
        try:
            return SimplePolygon.from_points(pts)
        except PolygonError:
            continue
    raise RuntimeError("failed to generate a simple polygon")


def random_triangulation(rng: random.Random, polygon: SimplePolygon,
                         root: str | int = "ear") -> Triangulation:
    """Random triangulation by shuffled greedy diagonal insertion."""
    t = len(polygon.points)
    cand = [(i, j) for i in range(t) for j in range(i + 2, t)
            if not (i == 0 and j == t - 1) and _diagonal_ok(polygon, i, j)]
    rng.shuffle(cand)
    chosen: list[tuple[int, int]] = []
    for d in cand:
        if len(chosen) == t - 3:
            break
        if all(not _interleave(t, d, c) for c in chosen):
            chosen.append(d)
    if len(chosen) != t - 3:
        return root_dual(ear_clip(polygon), policy=root)
    return root_dual(validate_triangulation(polygon, chosen), policy=root)


def random_plane_instance(rng: random.Random, t: int, extra: int) -> PlaneInstance:
    """Random plane instance: start from the cycle drawn as a convex t-gon,
    insert extra vertices inside random faces and connect them planarly."""
    from .planar import PlaneSurgeon
    inst = Instance(n=t, edges=[(i, (i + 1) % t) for i in range(t)],
                    cycle=list(range(t)))
    rotation = {i: [(i - 1) % t, (i + 1) % t] for i in range(t)}
    plane = PlaneInstance(instance=inst, rotation=rotation)
    surgeon = PlaneSurgeon(plane)
    for _ in range(extra):
        faces = surgeon.interior_faces()
        face = rng.choice(faces)
        anchor = rng.choice(sorted(set(face)))
        surgeon.add_vertex_in_face(face, anchor)
    # sprinkle a few face-splitting edges for variety
    for _ in range(extra):
        faces = [f for f in surgeon.interior_faces() if len(f) >= 4]
        if not faces:
            break
        face = rng.choice(faces)
        su = rng.randrange(len(face))
        sv = (su + rng.randrange(2, len(face) - 1)) % len(face)
        if face[su] == face[sv]:
            continue
        try:
            surgeon.add_edge_in_face(face, su, sv)
        except Exception:
            continue
    return surgeon.plane
