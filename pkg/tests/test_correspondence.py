import itertools

import pytest

from orthoslice.correspondence import (
    CorrespondenceError,
    TypedGraph,
    antipodal_key,
    component_graph,
    count_bijections,
    facet_graph,
    find_bijection,
    mapping_json,
    permutation_key,
    point_classes,
    verify_vertex_correspondence,
)
from orthoslice.polytope import automorphism_order, cuboctahedron, hull3, polytope_p
from orthoslice.suites import HSO4_TYPE_MAP, SO5_TYPE_MAP, SO5_TYPE_MAP_ALT


def cycle(n, types=None):
    return TypedGraph([f"v{k}" for k in range(n)], types or ["x"] * n,
                      {frozenset((k, (k + 1) % n)) for k in range(n)}, [[f"v{k}"] for k in range(n)])


def brute_isos(g1, g2, type_map=None):
    n = len(g1.nodes)
    out = 0
    for p in itertools.permutations(range(n)):
        if type_map and any(type_map[g1.types[a]] != g2.types[p[a]] for a in range(n)):
            continue
        if all(g1.adjacent(a, b) == g2.adjacent(p[a], p[b]) for a in range(n) for b in range(a + 1, n)):
            out += 1
    return out


def test_cycle_automorphisms_match_brute_force():
    for n in (4, 5, 6):
        assert count_bijections(cycle(n), cycle(n)) == brute_isos(cycle(n), cycle(n)) == 2 * n


def test_types_restrict_bijections():
    g1 = cycle(4, ["a", "b", "a", "b"])
    g2 = cycle(4, ["B", "A", "B", "A"])
    tm = {"a": "A", "b": "B"}
    assert count_bijections(g1, g2, tm) == brute_isos(g1, g2, tm) == 4
    m = find_bijection(g1, g2, tm)
    assert m == {0: 1, 1: 0, 2: 3, 3: 2}  # lexicographically least
    assert find_bijection(g1, cycle(4, ["A"] * 4), tm) is None


def test_non_isomorphic():
    path = TypedGraph(["a", "b", "c", "d"], ["x"] * 4, {frozenset((0, 1)), frozenset((1, 2)), frozenset((2, 3))})
    assert find_bijection(path, cycle(4)) is None
    assert count_bijections(cycle(5), cycle(4)) == 0
    with pytest.raises(ValueError):
        TypedGraph(["a"], ["x"], {frozenset((0,))})


def test_hso4_to_cuboctahedron(hso4, hso4_table, hso4_points):
    g = component_graph(hso4, hso4_table.incidence())
    assert g.size == (14, 24)
    C = hull3(cuboctahedron())
    fg = facet_graph(C)
    m = find_bijection(g, fg, HSO4_TYPE_MAP)
    assert m is not None
    assert all(HSO4_TYPE_MAP[g.types[a]] == fg.types[b] for a, b in m.items())
    assert count_bijections(g, fg, HSO4_TYPE_MAP) == automorphism_order(C) == 48
    classes = point_classes(hso4_points, g, antipodal_key)
    assert len(classes) == 12 and all(c.size == 2 for c in classes)
    cert = verify_vertex_correspondence(m, g, classes, C)
    assert cert.passed and len(cert.pairs) == 12
    assert len(mapping_json(m, g, fg)) > 0


def test_broken_mapping_fails_vertex_check(hso4, hso4_table, hso4_points):
    g = component_graph(hso4, hso4_table.incidence())
    C = hull3(cuboctahedron())
    m = find_bijection(g, facet_graph(C), HSO4_TYPE_MAP)
    classes = point_classes(hso4_points, g, antipodal_key)
    # swap the images of two spheres: still type preserving, no longer an isomorphism
    spheres = [a for a in m if g.types[a] == "sphere"]
    bad = dict(m)
    bad[spheres[0]], bad[spheres[1]] = m[spheres[1]], m[spheres[0]]
    assert not verify_vertex_correspondence(bad, g, classes, C).passed


def test_so5_quadruples_to_p(so5, so5_table, so5_points):
    g = component_graph(so5, so5_table.incidence(), "quadruple")
    assert g.size == (16, 32)
    P = hull3(polytope_p())
    fg = facet_graph(P, refined=True)
    m = find_bijection(g, fg, SO5_TYPE_MAP)
    assert m is not None
    assert find_bijection(g, fg, SO5_TYPE_MAP_ALT) is None
    assert count_bijections(g, facet_graph(P)) == automorphism_order(P) == 16
    classes = point_classes(so5_points, g, permutation_key)
    assert len(classes) == 18 and all(c.size == 16 for c in classes)
    cert = verify_vertex_correspondence(m, g, classes, P)
    assert cert.passed
    deg3 = [n for v, _, n in cert.pairs if P.vertex_degree(v) == 3]
    assert len(deg3) == 8 and all(len(n) == 3 for n in deg3)


def test_bad_grouping(hso4, hso4_table):
    with pytest.raises(CorrespondenceError):
        component_graph(hso4, hso4_table.incidence(), "quadruple")
    with pytest.raises(ValueError):
        component_graph(hso4, hso4_table.incidence(), "pairs")
