import itertools

import pytest

from orthoslice.somodel import ZeroPattern, hollow_pattern, star_pattern
from orthoslice.signedperm import (
    SignedPerm,
    antipodal_pairs,
    cycle_type,
    cycle_type_census,
    perm_sign,
    perms_in_pattern,
    signed_perms_in_pattern,
)
from orthoslice.exact import det_leibniz


def test_det_matches_matrix_determinant():
    for p in itertools.permutations(range(4)):
        for s in itertools.product((1, -1), repeat=4):
            sp = SignedPerm(p, s)
            assert sp.det() == det_leibniz(sp.matrix())
            assert SignedPerm.from_matrix(sp.matrix()) == sp


def test_validation():
    with pytest.raises(ValueError):
        SignedPerm((0, 0), (1, 1))
    with pytest.raises(ValueError):
        SignedPerm((0, 1), (1, 2))
    with pytest.raises(ValueError):
        SignedPerm.from_matrix([[1, 1], [0, 1]])


def test_perm_sign_and_cycles():
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((1, 2, 0)) == 1
    assert cycle_type((1, 0, 3, 2)) == (2, 2)
    assert cycle_type((1, 2, 3, 0)) == (4,)
    assert cycle_type((0, 1, 2)) == (1, 1, 1)


def test_derangement_counts():
    # derangements of 4 and 5 points
    assert len(perms_in_pattern(hollow_pattern(4))) == 9
    assert len(perms_in_pattern(hollow_pattern(5))) == 44


def test_hollow_so4_signed_perms():
    sps = signed_perms_in_pattern(hollow_pattern(4), 1)
    assert len(sps) == 72  # 9 derangements x 8 sign vectors of the right parity
    census = cycle_type_census(sps)
    assert census == {(4,): 6, (2, 2): 3}
    assert sum(1 for s in sps if cycle_type(s) == (4,)) == 48
    pairs = antipodal_pairs(sps)
    assert len(pairs) == 36
    assert len(signed_perms_in_pattern(hollow_pattern(4), -1)) == 72


def test_star_pattern_permutations():
    perms = perms_in_pattern(star_pattern())
    assert len(perms) == 18  # the 18 permutation classes of the starred slice
    for p in perms:
        assert all((i + 1, p[i] + 1) not in star_pattern().zeros for i in range(5))


def test_antipodal_pairs_requires_closure():
    sp = SignedPerm((1, 0), (1, -1))
    with pytest.raises(ValueError):
        antipodal_pairs([sp])
    assert antipodal_pairs([sp, -sp]) == [(min(sp, -sp), max(sp, -sp))]


def test_bad_det_sign():
    with pytest.raises(ValueError):
        signed_perms_in_pattern(ZeroPattern(3, []), 0)
