"""Face lattices of 3-polytopes from vertex coordinates.

Facets are found as supporting planes through vertex triples; points on a
common supporting plane are merged into one facet, so coplanar triangle fans
become a single polygon.  Exact rational inputs are handled exactly; floating
inputs use a distance tolerance, widened by the quantization of the
coordinates when the vertex set declares one.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import assets

FACET_NAMES = {3: "triangle", 4: "quadrilateral", 5: "pentagon", 6: "hexagon"}


class HullError(ValueError):
    pass


@dataclass(frozen=True)
class VertexSet:
    points: tuple
    label: str
    quantum: float = 0.0  # coordinates are rounded to multiples of this (0 = exact)

    def __post_init__(self):
        if len(set(map(tuple, self.points))) != len(self.points):
            raise HullError(f"{self.label}: duplicate points")

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for p in self.points for v in p)

    def array(self) -> np.ndarray:
        return np.array([[float(v) for v in p] for p in self.points])


def cuboctahedron() -> VertexSet:
    return VertexSet(assets.CUBO_VERTICES, "cuboctahedron")


def polytope_p() -> VertexSet:
    return VertexSet(assets.P_VERTICES, "P", quantum=1e-4)


def tetrahedron() -> VertexSet:
    return VertexSet(assets.TETRA_VERTICES, "tetrahedron")


@dataclass
class FaceLattice:
    label: str
    coords: list
    facets: list  # outward-oriented vertex cycles, each starting at its least vertex
    edges: list = field(default_factory=list)
    tol: float = 0.0

    def __post_init__(self):
        es = set()
        for f in self.facets:
            for a, b in zip(f, f[1:] + f[:1]):
                es.add((min(a, b), max(a, b)))
        self.edges = sorted(es)

    @property
    def fvector(self) -> tuple[int, int, int]:
        return (len(self.coords), len(self.edges), len(self.facets))

    def facet_types(self) -> list[str]:
        return [FACET_NAMES.get(len(f), f"{len(f)}-gon") for f in self.facets]

    def type_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for t in self.facet_types():
            out[t] = out.get(t, 0) + 1
        return out

    def vertex_degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def facets_at(self, v: int) -> list[int]:
        return [k for k, f in enumerate(self.facets) if v in f]

    def facet_edges(self, k: int) -> list[tuple[int, int]]:
        f = self.facets[k]
        return [(min(a, b), max(a, b)) for a, b in zip(f, f[1:] + f[:1])]

    def refined_types(self) -> list[str]:
        """Facet types with quadrilaterals split by their number of degree-4 vertices."""
        out = []
        for f, t in zip(self.facets, self.facet_types()):
            if len(f) == 4:
                d4 = sum(1 for v in f if self.vertex_degree(v) == 4)
                t = f"quadrilateral/{d4}xdeg4"
            out.append(t)
        return out

    def check(self) -> None:
        V, E, F = self.fvector
        if V - E + F != 2:
            raise HullError(f"{self.label}: Euler relation fails ({V}, {E}, {F})")
        if sum(len(f) for f in self.facets) != 2 * E:
            raise HullError(f"{self.label}: double counting fails")
        count = {e: 0 for e in self.edges}
        for k in range(F):
            for e in self.facet_edges(k):
                count[e] += 1
        if any(c != 2 for c in count.values()):
            raise HullError(f"{self.label}: an edge is not in exactly two facets")

    def to_json(self) -> str:
        return json.dumps(
            {
                "label": self.label,
                "vertices": [[str(v) for v in p] for p in self.coords],
                "facets": self.facets,
                "fvector": list(self.fvector),
            }
        )


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def hull3(vs: VertexSet, tol: float = 1e-7) -> FaceLattice:
    """Face lattice of the convex hull; every input point must be a vertex.

    For floating inputs the coplanarity threshold is ``tol`` plus an
    allowance of four coordinate quanta (a plane through three rounded
    points can miss a fourth coplanar rounded point by a few quanta).
    """
    pts = vs.points
    n = len(pts)
    if n < 4:
        raise HullError("need at least 4 points")
    exact = vs.exact
    P = [tuple(Fraction(v) for v in p) for p in pts] if exact else [tuple(float(v) for v in p) for p in pts]
    eps = 0 if exact else tol + 4 * vs.quantum
    facets: dict[frozenset, tuple] = {}
    spanning = False
    for i, j, k in itertools.combinations(range(n), 3):
        nrm = _cross(_sub(P[j], P[i]), _sub(P[k], P[i]))
        if exact:
            if nrm == (0, 0, 0):
                continue
            d = [_dot(nrm, _sub(p, P[i])) for p in P]
        else:
            ln = math.sqrt(_dot(nrm, nrm))
            if ln < 1e-12:
                continue
            nrm = tuple(c / ln for c in nrm)
            d = [_dot(nrm, _sub(p, P[i])) for p in P]
        on = frozenset(t for t in range(n) if abs(d[t]) <= eps)
        off = [d[t] for t in range(n) if t not in on]
        if off:
            spanning = True
        if all(x < 0 for x in off):
            outward = nrm
        elif all(x > 0 for x in off):
            outward = tuple(-c for c in nrm)
        else:
            continue
        if on not in facets:
            facets[on] = tuple(float(c) for c in outward)
    if not spanning:
        raise HullError(f"{vs.label}: points are not full-dimensional")
    X = vs.array()
    cycles = []
    for on, nrm in facets.items():
        cycles.append(_order_cycle(sorted(on), X, np.array(nrm), vs.label))
    used = {v for c in cycles for v in c}
    missing = sorted(set(range(n)) - used)
    if missing:
        raise HullError(f"{vs.label}: points {missing} are not vertices (interior or bad tolerance)")
    cycles.sort()
    fl = FaceLattice(vs.label, [tuple(p) for p in pts], cycles, tol=tol)
    fl.check()
    return fl


def _order_cycle(idx: list[int], X: np.ndarray, normal: np.ndarray, label: str) -> list[int]:
    """Counter-clockwise order seen from outside; rejects non-convex position."""
    Q = X[idx]
    c = Q.mean(axis=0)
    e1 = Q[0] - c
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    ang = [math.atan2(float((q - c) @ e2), float((q - c) @ e1)) for q in Q]
    order = [idx[t] for t in np.argsort(ang)]
    m = len(order)
    for t in range(m):
        a, b, cc = X[order[t]], X[order[(t + 1) % m]], X[order[(t + 2) % m]]
        if np.cross(b - a, cc - b) @ normal <= 1e-9:
            raise HullError(f"{label}: facet {sorted(idx)} has a non-vertex point")
    s = order.index(min(order))
    return order[s:] + order[:s]


def facet_adjacency(fl: FaceLattice) -> list[list[int]]:
    F = len(fl.facets)
    es = [set(fl.facet_edges(k)) for k in range(F)]
    return [[1 if a != b and es[a] & es[b] else 0 for b in range(F)] for a in range(F)]


def automorphism_order(fl: FaceLattice) -> int:
    """Automorphisms of the vertex-facet incidence (colour classes fixed).

    A combinatorial automorphism is a vertex permutation mapping facets to
    facets; it is searched by backtracking over vertices with degree and
    facet-type pruning, checking edges as soon as both ends are mapped.
    """
    V = len(fl.coords)
    facet_sets = {frozenset(f) for f in fl.facets}
    nbrs = {v: set() for v in range(V)}
    for a, b in fl.edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    sig = [
        (len(nbrs[v]), tuple(sorted(len(fl.facets[k]) for k in fl.facets_at(v))))
        for v in range(V)
    ]
    # order vertices so that each one after the first is adjacent to an earlier one
    order = [0]
    seen = {0}
    while len(order) < V:
        nxt = min(w for v in order for w in nbrs[v] if w not in seen)
        order.append(nxt)
        seen.add(nxt)
    count = 0
    img: dict[int, int] = {}
    used: set[int] = set()

    def bt(t: int):
        nonlocal count
        if t == V:
            if all(frozenset(img[v] for v in f) in facet_sets for f in facet_sets):
                count += 1
            return
        v = order[t]
        for w in range(V):
            if w in used or sig[w] != sig[v]:
                continue
            if any((u in img) and (img[u] not in nbrs[w]) for u in nbrs[v]):
                continue
            img[v] = w
            used.add(w)
            bt(t + 1)
            del img[v]
            used.discard(w)

    bt(0)
    return count


@dataclass
class EulerVerdict:
    facets: int
    incidence_ones: int
    edges: int
    vertices: int
    required_edges: Fraction
    feasible: bool

    def trail(self) -> str:
        return (
            f"E = {self.incidence_ones}/2 = {self.edges}; "
            f"V = 2 - {self.facets} + {self.edges} = {self.vertices}; "
            f"need 2E >= 3V, i.e. E >= {self.required_edges}: "
            f"{'feasible' if self.feasible else 'infeasible'}"
        )

    def to_dict(self) -> dict:
        return {
            "F": self.facets,
            "ones": self.incidence_ones,
            "E": self.edges,
            "V": self.vertices,
            "required_E": str(self.required_edges),
            "feasible": self.feasible,
            "trail": self.trail(),
        }


def euler_feasibility(num_facets: int, incidence_ones: int) -> EulerVerdict:
    """Could a 3-polytope have these facets with this facet-adjacency count?"""
    if incidence_ones % 2:
        raise ValueError("incidence count must be even")
    E = incidence_ones // 2
    V = 2 - num_facets + E
    need = Fraction(3 * V, 2)
    return EulerVerdict(num_facets, incidence_ones, E, V, need, V >= 4 and 2 * E >= 3 * V)


def tolerance_stable(vs: VertexSet, tols: Sequence[float] = (1e-7, 1e-6, 1e-5, 1e-4)) -> bool:
    lats = [hull3(vs, t) for t in tols]
    return all(L.facets == lats[0].facets for L in lats)
