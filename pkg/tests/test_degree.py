import pytest

from orthoslice.catalog import STAR, TORUS, by_id, so3_slice_components
from orthoslice.degree import (
    WitnessAsset,
    _candidate,
    _random_hyperplanes,
    component_degree,
    exact_witness_check,
    search_real_slice,
    slice_count,
    verify_witness_so4,
)
from orthoslice.exact import QuadRat
from orthoslice.signedperm import signed_perms_in_pattern
from orthoslice.somodel import residual


def test_degree_of_so3():
    pts, info = slice_count([], 3, _random_hyperplanes(3, 3, 0), 0)
    assert len(pts) == 8
    pts, _ = slice_count([], 3, _random_hyperplanes(3, 3, 0), 0, det_sign=-1)
    assert len(pts) == 8
    pts, _ = slice_count([], 3, _random_hyperplanes(3, 3, 0), 0, det_sign=None)
    assert len(pts) == 16


def test_sphere_and_torus_degrees(hso4):
    assert component_degree(by_id(hso4, "S+++^+"), 0) == 2
    assert component_degree(by_id(hso4, "T(13)(24)-"), 0) == 4


def test_component_degree_needs_a_surface():
    with pytest.raises(ValueError):
        component_degree(so3_slice_components()[0])


def test_witness_asset_exact():
    asset = WitnessAsset.load()
    assert len(asset.points) == 40
    assert all(exact_witness_check(asset))
    sys = asset.system()
    assert len(sys.square_part()) == 16
    assert all(residual(sys, m) == 0 for m in asset.points)
    # the 0/+-a points live in Q(sqrt 3) with a = +-sqrt(1/3)
    assert any(isinstance(v, QuadRat) and v.b != 0 for m in asset.points for r in m for v in r)


def test_witness_exact_check_rejects_perturbation():
    asset = WitnessAsset.load()
    m = [list(r) for r in asset.points[0]]
    m[0][1], m[0][2] = m[0][2], m[0][1]
    asset.points = [m]
    assert exact_witness_check(asset) == [False]


def test_witness_census_without_numerics():
    cert = verify_witness_so4(numeric=False)
    assert sum(cert.exact_ok) == 40 and cert.on_one_component
    assert sorted(cert.census.values()) == [2] * 8 + [4] * 6
    assert cert.to_dict()["exact_points_ok"] == 40
    assert not cert.passed  # numeric part not run


def test_structured_candidates_contain_signed_perms():
    perms = signed_perms_in_pattern(STAR, 1)
    support = {(i, j) for i in range(1, 6) for j in range(1, 6) if (i, j) not in STAR.zeros}
    for k in range(5):
        hs = _candidate(k, "structured", 0, support, perms, 5)
        for h in hs:
            assert sum(1 for p in perms if h.inner(p.matrix()) == 0) >= 2
            assert all(c == 0 for (i, j) in STAR.zeros for c in [h.coeffs[i - 1][j - 1]])
    with pytest.raises(ValueError):
        _candidate(0, "bogus", 0, support, perms, 5)


def test_search_rejects_empty_budget(so5):
    with pytest.raises(ValueError):
        search_real_slice(so5, budget=0)


def test_search_reports_valid_maximum(so5):
    best, records = search_real_slice(so5, "random", seed=3, budget=1)
    assert len(records) == 1
    rec = records[0]
    degs = {c.id: (4 if c.kind == TORUS else 8) for c in so5}
    assert all(t <= degs[k] and r <= t for k, (r, t) in rec.per_component.items())
    if rec.valid:
        assert best is rec and rec.total == 384
    else:
        assert best is None
    assert 0 <= rec.real <= rec.total <= 384
    d = rec.to_dict()
    assert d["valid"] == rec.valid and len(d["hyperplanes"]) == 2
