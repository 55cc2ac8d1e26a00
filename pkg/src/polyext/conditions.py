"""The two distance conditions characterising polygon-universal instances.

Pair: no two cycle vertices may be closer in the graph than around the cycle.
Triple: for any three cycle positions whose pairwise cycle distances add up to
the full cycle length, no vertex other than those three anchors may be
simultaneously close to all of them (graph distances summing to at most t/2).

Violation reports use 1-based cycle positions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .model import Instance, DistanceTable, cycle_distance, graph_distances


@dataclass(frozen=True)
class PairViolation:
    i: int  # 1-based cycle positions, i < j
    j: int
    d_g: int
    d_c: int


@dataclass(frozen=True)
class TripleViolation:
    i: int  # 1-based cycle positions, i < j < k
    j: int
    k: int
    v: int  # offending vertex id
    d_i: int
    d_j: int
    d_k: int


@dataclass(frozen=True)
class UniversalityResult:
    universal: bool
    violation: Optional[Union[PairViolation, TripleViolation]]


class PairConditionError(ValueError):
    """check_triple requires the pair condition to hold first."""


def check_pair(inst: Instance, dt: Optional[DistanceTable] = None
               ) -> Optional[PairViolation]:
    """First pair (lexicographic in 1-based (i, j)) with d_G < d_C, else None.

    Unreachable pairs never violate: an infinite graph distance cannot fall
    below the cycle distance.
    """
    if dt is None:
        dt = graph_distances(inst)
    t = inst.t
    for i in range(t):
        row = dt.from_position(i)
        for j in range(i + 1, t):
            dg = row[inst.cycle[j]]
            if dg is None:
                continue
            dc = cycle_distance(t, i, j)
            if dg < dc:
                return PairViolation(i + 1, j + 1, dg, dc)
    return None


def _tight_triples(t: int):
    """All 0-based position triples i<j<k whose three arcs are each <= t/2.

    Those are exactly the triples whose pairwise cycle distances sum to t:
    each arc of length at most t/2 realises the cycle distance of its
    endpoints, and the three arcs partition the cycle.
    """
    for i in range(t):
        for j in range(i + 1, t):
            if 2 * (j - i) > t:
                break
            for k in range(j + 1, t):
                if 2 * (k - j) > t:
                    break
                if 2 * (t - (k - i)) <= t:
                    yield i, j, k


def check_triple(inst: Instance, dt: Optional[DistanceTable] = None
                 ) -> Optional[TripleViolation]:
    """First triple violation in scan order (v ascending, then (i,j,k) lex).

    The offending vertex is quantified over vertices other than the three
    anchors themselves: an anchor always sits at the end of one of the three
    connecting paths, where the bound degenerates to an equality that every
    polygon satisfies (the boundary chain realises it), so such triples carry
    no obstruction.
    """
    if dt is None:
        dt = graph_distances(inst)
    pair = check_pair(inst, dt)
    if pair is not None:
        raise PairConditionError(f"pair condition violated: {pair}")
    t = inst.t
    triples = list(_tight_triples(t))
    for v in range(inst.n):
        for i, j, k in triples:
            if v in (inst.cycle[i], inst.cycle[j], inst.cycle[k]):
                continue
            di = dt.from_position(i)[v]
            dj = dt.from_position(j)[v]
            dk = dt.from_position(k)[v]
            if di is None or dj is None or dk is None:
                continue
            if 2 * (di + dj + dk) <= t:
                return TripleViolation(i + 1, j + 1, k + 1, v, di, dj, dk)
    return None


def check_universality(inst: Instance) -> UniversalityResult:
    dt = graph_distances(inst)
    pair = check_pair(inst, dt)
    if pair is not None:
        return UniversalityResult(False, pair)
    triple = check_triple(inst, dt)
    if triple is not None:
        return UniversalityResult(False, triple)
    return UniversalityResult(True, None)
