"""Bijections between component intersection structures and polytope face
lattices, and their vertex-level verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .catalog import SO3BLOCK, SPHERE2, TORUS, CIRCLE3, Component, group_label, quadruples
from .meet import IncidenceMatrix, IntersectionPoint
from .polytope import FaceLattice, facet_adjacency

KIND_NAMES = {SPHERE2: "sphere", TORUS: "torus", SO3BLOCK: "SO3Block", CIRCLE3: "circle"}


class CorrespondenceError(ValueError):
    pass


@dataclass
class TypedGraph:
    nodes: list[str]
    types: list[str]
    edges: set = field(default_factory=set)  # frozenset({a, b}) of node indices
    members: list = field(default_factory=list)  # component ids per node

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise ValueError("graph must be simple")

    def adjacent(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.edges

    def degree(self, a: int) -> int:
        return sum(1 for e in self.edges if a in e)

    def neighbours(self, a: int) -> list[int]:
        return sorted(b for e in self.edges if a in e for b in e if b != a)

    @property
    def size(self) -> tuple[int, int]:
        return len(self.nodes), len(self.edges)


def component_graph(components: Sequence[Component], inc: IncidenceMatrix, grouping: str | None = None) -> TypedGraph:
    """Nodes are components (or zero-pattern quadruples); edges join nodes
    having a pair of members that meet in a curve."""
    comps = list(components)
    pos = {c.id: k for k, c in enumerate(comps)}
    if grouping is None:
        groups = [[c] for c in comps]
        names = [c.id for c in comps]
        types = [KIND_NAMES[c.kind] for c in comps]
    elif grouping == "quadruple":
        groups = quadruples(comps)
        if any(len(g) != 4 for g in groups):
            raise CorrespondenceError("grouping is not a partition into quadruples")
        if any(len({c.kind for c in g}) != 1 for g in groups):
            raise CorrespondenceError("a quadruple mixes component kinds")
        names = [group_label(g) for g in groups]
        types = [KIND_NAMES[g[0].kind] + "-quadruple" for g in groups]
    else:
        raise ValueError(f"unknown grouping {grouping!r}")
    edges = set()
    for a in range(len(groups)):
        for b in range(a + 1, len(groups)):
            if any(inc.entries[pos[x.id]][pos[y.id]] for x in groups[a] for y in groups[b]):
                edges.add(frozenset((a, b)))
    return TypedGraph(names, types, edges, [[c.id for c in g] for g in groups])


def facet_graph(fl: FaceLattice, refined: bool = False) -> TypedGraph:
    adj = facet_adjacency(fl)
    F = len(fl.facets)
    types = fl.refined_types() if refined else fl.facet_types()
    edges = {frozenset((a, b)) for a in range(F) for b in range(a + 1, F) if adj[a][b]}
    return TypedGraph([f"F{k}" for k in range(F)], types, edges, [[k] for k in range(F)])


def _candidates(g1: TypedGraph, g2: TypedGraph, type_map: dict | None):
    def nd(g, a):
        return tuple(sorted(g.degree(b) for b in g.neighbours(a)))

    out = []
    for a in range(len(g1.nodes)):
        want = type_map.get(g1.types[a]) if type_map else None
        cands = [
            b
            for b in range(len(g2.nodes))
            if (want is None or g2.types[b] == want)
            and g1.degree(a) == g2.degree(b)
            and nd(g1, a) == nd(g2, b)
        ]
        out.append(cands)
    return out


def _search(g1: TypedGraph, g2: TypedGraph, type_map: dict | None, first_only: bool):
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return [] if not first_only else None
    cands = _candidates(g1, g2, type_map)
    N = len(g1.nodes)
    img: list[int] = []
    used: set[int] = set()
    found = []

    def bt(a: int) -> bool:
        if a == N:
            found.append(list(img))
            return first_only
        for b in cands[a]:
            if b in used:
                continue
            if any(g1.adjacent(a, x) != g2.adjacent(b, img[x]) for x in range(a)):
                continue
            img.append(b)
            used.add(b)
            if bt(a + 1):
                return True
            img.pop()
            used.discard(b)
        return False

    bt(0)
    if first_only:
        return found[0] if found else None
    return found


def find_bijection(g1: TypedGraph, g2: TypedGraph, type_map: dict | None = None) -> dict[int, int] | None:
    """Lexicographically least type-preserving isomorphism g1 -> g2, or None."""
    m = _search(g1, g2, type_map, True)
    return None if m is None else dict(enumerate(m))


def count_bijections(g1: TypedGraph, g2: TypedGraph, type_map: dict | None = None) -> int:
    return len(_search(g1, g2, type_map, False))


def mapping_json(mapping: dict[int, int], g1: TypedGraph, g2: TypedGraph) -> str:
    return json.dumps({g2.nodes[b]: g1.nodes[a] for a, b in sorted(mapping.items(), key=lambda t: t[1])})


# ---------------------------------------------------------------------------
# vertex level


@dataclass
class PointClass:
    key: object
    points: list
    nodes: frozenset  # node indices of the component graph through the class

    @property
    def size(self) -> int:
        return len(self.points)


def point_classes(points: Sequence[IntersectionPoint], graph: TypedGraph, key: Callable) -> list[PointClass]:
    node_of = {cid: k for k, mem in enumerate(graph.members) for cid in mem}
    groups: dict = {}
    for p in points:
        groups.setdefault(key(p), []).append(p)
    out = []
    for k, pts in sorted(groups.items(), key=lambda t: str(t[0])):
        node_sets = {frozenset(node_of[c] for c in p.components) for p in pts}
        if len(node_sets) != 1:
            raise CorrespondenceError(f"point class {k} is not homogeneous in its components")
        out.append(PointClass(k, pts, node_sets.pop()))
    return out


def antipodal_key(p: IntersectionPoint):
    sp = p.signed_perm
    return min(sp.key(), (-sp).key())


def permutation_key(p: IntersectionPoint):
    return tuple(j + 1 for j in p.signed_perm.perm)


@dataclass
class VertexCertificate:
    pairs: list = field(default_factory=list)  # (vertex, class key, node names)
    offending: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.offending and bool(self.pairs)

    def to_dict(self) -> dict:
        return {
            "pairs": [{"vertex": v, "class": str(k), "nodes": n} for v, k, n in self.pairs],
            "offending": self.offending,
            "passed": self.passed,
        }


def verify_vertex_correspondence(mapping: dict[int, int], graph: TypedGraph, classes: Sequence[PointClass],
                                 lattice: FaceLattice) -> VertexCertificate:
    """Each vertex's facet set, pulled back through the mapping, must be the
    node set of exactly one point class, and every class must be used once."""
    inv = {b: a for a, b in mapping.items()}
    by_nodes: dict = {}
    for pc in classes:
        if pc.nodes in by_nodes:
            raise CorrespondenceError(f"two point classes share the node set {sorted(pc.nodes)}")
        by_nodes[pc.nodes] = pc
    cert = VertexCertificate()
    used = set()
    for v in range(len(lattice.coords)):
        nodes = frozenset(inv[f] for f in lattice.facets_at(v))
        pc = by_nodes.get(nodes)
        if pc is None:
            cert.offending.append(v)
            continue
        used.add(pc.nodes)
        cert.pairs.append((v, pc.key, sorted(graph.nodes[a] for a in nodes)))
    if len(used) != len(classes):
        cert.offending.append("unmatched point classes")
    return cert
