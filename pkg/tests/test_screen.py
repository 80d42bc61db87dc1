from orthoslice.patterns import BipartitePattern, CENSUS_SYMMETRY
from orthoslice.patterns.screen import genericity_screen, sample_dimensions, so3_unique_slice_check, slice_paths
from orthoslice.somodel import hollow_pattern, star_pattern


def test_so3_unique_generic_slice():
    rep = so3_unique_slice_check(0)
    assert rep.group_degree == 8
    assert rep.generic_count == 1 and rep.passed
    summary = {tuple(sorted(p.edges)): (r.dimension, r.degree, g) for p, r, g in rep.orbits}
    assert summary == {((1, 1), (1, 2)): (1, 4, False), ((1, 1), (2, 2)): (1, 8, True)}
    assert rep.to_dict()["generic_orbits"] == 1


def test_so3_screen_without_transpose():
    rep = so3_unique_slice_check(0, CENSUS_SYMMETRY)
    # row- and column-sharing pairs are separate orbits here; both are degenerate
    assert len(rep.orbits) == 3 and rep.generic_count == 1


def test_dimensions():
    assert sample_dimensions(4, sorted(hollow_pattern(4).zeros)) == [2] * 4
    assert set(sample_dimensions(5, sorted(star_pattern().zeros))) == {2}
    assert set(sample_dimensions(3, [])) == {3}


def test_hollow4_screen():
    r = genericity_screen(hollow_pattern(4))
    assert (r.dimension, r.degree) == (2, 40)
    assert r.to_dict()["degree"] == 40


def test_star_screen_skips_degree():
    r = genericity_screen(star_pattern())
    assert r.dimension == 2 and r.degree is None
    assert "degree skipped" in r.note
    assert slice_paths(5, sorted(star_pattern().zeros), 2) == 2 ** 15


def test_bipartite_input():
    p = BipartitePattern.from_edges(3, 3, [(1, 1), (2, 2)])
    r = genericity_screen(p, seed=1)
    assert (r.dimension, r.degree) == (1, 8)
