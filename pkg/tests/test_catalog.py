import time
from collections import Counter

import numpy as np
import pytest

from orthoslice.catalog import (
    SO3BLOCK,
    SPHERE2,
    TORUS,
    ContainmentError,
    by_id,
    catalog,
    degree_metadata,
    in_group,
    membership,
    mutate,
    parametrize,
    quadruples,
    random_domain_point,
    rational_domain_point,
    slice_pattern,
    verify_containment,
)
from orthoslice.somodel import apply_pattern, orth_equations, residual

CATALOGS = ("so3", "hso4", "so5star")


@pytest.mark.parametrize("name", CATALOGS)
def test_every_component_certified(name):
    for c in catalog(name):
        cert = verify_containment(c)
        assert cert.reduced_to_zero and cert.orthogonality_entries == c.n * (c.n + 1) // 2


def test_catalog_sizes():
    assert len(catalog("so3")) == 4
    kinds = Counter(c.kind for c in catalog("hso4"))
    assert kinds == {SPHERE2: 8, TORUS: 6}
    kinds = Counter(c.kind for c in catalog("so5star"))
    assert kinds == {TORUS: 32, SO3BLOCK: 32}
    groups = quadruples(catalog("so5star"))
    assert len(groups) == 16 and all(len(g) == 4 for g in groups)
    assert all(len({c.kind for c in g}) == 1 for g in groups)


def test_ids_unique():
    for name in CATALOGS:
        ids = [c.id for c in catalog(name)]
        assert len(set(ids)) == len(ids)


@pytest.mark.parametrize("name", CATALOGS)
def test_component_patterns_refine_slice(name):
    zp = slice_pattern(name)
    for c in catalog(name):
        assert zp.issubset(c.zero_pattern)


@pytest.mark.parametrize("name", CATALOGS)
def test_rational_samples_are_exact_points_of_the_slice(name):
    """Residual exactness: every sampled catalog point is exactly on the slice."""
    rng = np.random.default_rng(11)
    sys = apply_pattern(orth_equations(catalog(name)[0].n), slice_pattern(name))
    for c in catalog(name):
        for _ in range(3):
            m = parametrize(c, rational_domain_point(c, rng))
            assert residual(sys, m) == 0, c.id
            assert in_group(m)
            assert membership(c, m)
        assert residual(sys, parametrize(c, c.base_point())) == 0


def test_float_samples_are_members():
    rng = np.random.default_rng(12)
    for c in catalog("so5star"):
        m = parametrize(c, random_domain_point(c, rng))
        assert membership(c, m)


def test_generic_sample_lies_on_one_component():
    rng = np.random.default_rng(13)
    comps = catalog("hso4")
    for c in comps:
        m = parametrize(c, rational_domain_point(c, rng))
        assert [d.id for d in comps if membership(d, m)] == [c.id]


def test_off_domain_rejected():
    c = catalog("hso4")[0]
    with pytest.raises(ValueError):
        parametrize(c, [1] * len(c.params))
    with pytest.raises(ValueError):
        parametrize(c, [0])


def test_mutation_is_caught():
    c = by_id(catalog("hso4"), "T(12)(34)+")
    rng = np.random.default_rng(0)
    rows, cols = np.nonzero([[not e.is_zero() for e in row] for row in c.entry_map])
    for k in rng.choice(len(rows), size=3, replace=False):
        with pytest.raises(ContainmentError):
            verify_containment(mutate(c, (int(rows[k]) + 1, int(cols[k]) + 1)))


def test_degree_metadata():
    assert {degree_metadata(c) for c in catalog("hso4") if c.kind == SPHERE2} == {2}
    assert sum(degree_metadata(c) for c in catalog("hso4")) == 40
    assert sum(degree_metadata(c) for c in catalog("so5star")) == 384


def test_certification_is_fast():
    t0 = time.perf_counter()
    for c in catalog("hso4"):
        verify_containment(c)
    assert time.perf_counter() - t0 < 5


def test_meet_samples_are_exact(hso4, hso4_table):
    """Every exact curve sample produced by the meet engine lies on both components."""
    sys = apply_pattern(orth_equations(4), slice_pattern("hso4"))
    n = 0
    for (i, j), r in hso4_table.results.items():
        for m in r.samples + r.points:
            assert residual(sys, m) == 0
            assert membership(hso4[i], m) and membership(hso4[j], m)
            n += 1
    assert n > 0


def test_so5_meet_samples_are_exact(so5, so5_table):
    sys = apply_pattern(orth_equations(5), slice_pattern("so5star"))
    for (i, j), r in so5_table.results.items():
        for m in r.samples:
            assert residual(sys, m) == 0
            assert membership(so5[i], m) and membership(so5[j], m)
