from collections import Counter

import numpy as np
import pytest

from orthoslice.catalog import by_id, membership
from orthoslice.meet import (
    CURVES,
    EMPTY,
    POINTS,
    compare_so5_blocks,
    compare_sphere_torus,
    curve_degree,
    meet,
    meet_many,
    sign_flip_group,
)
from orthoslice.signedperm import cycle_type


def test_sign_flip_group():
    g = sign_flip_group()
    assert len(g) == len(set(g)) == 8
    assert g[0] == (0, 1, 2, 3)
    # closed under composition
    gs = set(g)
    assert all(tuple(a[b[k]] for k in range(4)) in gs for a in g for b in g)


def test_hso4_table(hso4, hso4_table):
    inc = hso4_table.incidence()
    assert inc.ones() == 48 and inc.is_symmetric()
    assert hso4_table.curve_count() == 24
    assert compare_sphere_torus(inc) == []
    kinds = Counter(r.classification for r in hso4_table.results.values())
    assert kinds[CURVES] == 24
    # spheres never meet spheres in curves, nor tori tori
    for (i, j), r in hso4_table.results.items():
        if r.classification == CURVES:
            assert hso4[i].kind != hso4[j].kind


def test_hso4_points(hso4, hso4_points):
    assert len(hso4_points) == 24
    for p in hso4_points:
        assert cycle_type(p.signed_perm) == (2, 2)
        assert len(p.components) == 4
        assert all(membership(by_id(hso4, cid), p.matrix) for cid in p.components)


def test_mismatch_is_reported(hso4_table):
    inc = hso4_table.incidence()
    entries = [row[:] for row in inc.entries]
    entries[0][8] ^= 1
    entries[8][0] ^= 1
    bad = compare_sphere_torus(type(inc)(inc.labels, entries))
    assert len(bad) == 1 and bad[0][0] == inc.labels[0]


def test_cross_checks(hso4, hso4_table):
    i, j = hso4_table.curve_pairs()[0]
    s, t = hso4[i], hso4[j]
    r = meet(s, t, cross_check=True)
    assert r.classification == CURVES and r.curves == 1
    assert r.numeric["hyperplane_points"] == 2 and r.numeric["local_dims"] == [1]
    assert r.method.endswith("+numeric")
    assert curve_degree(r, hso4) == 2
    d = r.to_dict()
    assert d["pair"] == [s.id, t.id] and d["curves"] == 1
    with pytest.raises(ValueError):
        meet(s, s)


def test_point_meets_are_cross_checked(hso4, hso4_table):
    pts = [(i, j) for (i, j), r in hso4_table.results.items() if r.classification == POINTS]
    for i, j in pts[:3]:
        r = meet(hso4[i], hso4[j], cross_check=True)
        assert r.classification == POINTS and r.points


def test_so3_meets(so3):
    from orthoslice.meet import all_meets

    t = all_meets(so3)
    assert t.incidence().ones() == 0  # circles only meet in points
    nz = t.incidence(nonempty=True)
    assert nz.ones() == 8
    assert all(sum(row) == 2 for row in nz.entries)


def test_so5_incidence(so5_table):
    inc = so5_table.incidence()
    assert inc.ones() == 512 and inc.is_symmetric()
    assert so5_table.curve_count() == 256


def test_so5_block_comparison(so5_table):
    bc = compare_so5_blocks(so5_table.incidence())
    assert bc.passed
    assert (bc.literal, bc.support, bc.direct, len(bc.transposed)) == (220, 256, 224, 32)
    ident = [0, 1, 2, 3]
    special = {12: [3, 2, 1, 0], 13: [2, 3, 0, 1], 15: [1, 0, 3, 2]}
    assert bc.bijection == [special.get(p, ident) for p in range(16)]


def test_so5_block_comparison_detects_errors(so5_table):
    inc = so5_table.incidence()
    E = np.array(inc.entries)
    E[0, 4:8] = 1 - E[0, 4:8]
    E[4:8, 0] = E[0, 4:8]
    bc = compare_so5_blocks(type(inc)(inc.labels, E.tolist()))
    assert not bc.passed


def test_so5_points(so5, so5_points):
    assert len(so5_points) == 288
    perms = Counter(p.signed_perm.perm for p in so5_points)
    assert len(perms) == 18 and set(perms.values()) == {16}


def test_triple_meet(hso4, hso4_points):
    p = hso4_points[0]
    comps = [by_id(hso4, cid) for cid in p.components[:3]]
    r = meet_many(comps)
    assert r.classification in (POINTS, CURVES)
    assert r.classification != EMPTY

