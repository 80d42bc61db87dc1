from fractions import Fraction as F

import numpy as np
import pytest

from orthoslice.exact import MPoly
from orthoslice.somodel import (
    Hyperplane,
    SliceSystem,
    ZeroPattern,
    add_hyperplanes,
    apply_pattern,
    coord_names,
    hollow_pattern,
    local_dimension,
    orth_equations,
    residual,
    star_pattern,
)


def rotation(c, s):
    return [[c, -s, 0], [s, c, 0], [0, 0, 1]]


def test_equation_counts():
    for n in range(2, 7):
        sys = orth_equations(n)
        assert len(sys.quadrics) == n * (n + 1) // 2
        assert sys.det_poly.degree() == n
        assert len(sys.variables) == n * n
    with pytest.raises(ValueError):
        orth_equations(7)


def test_exact_residual_zero_on_group():
    sys = orth_equations(3)
    assert residual(sys, rotation(F(3, 5), F(4, 5))) == 0
    assert residual(sys, [[1, 0, 0], [0, -1, 0], [0, 0, 1]]) == 2  # |det - 1| = 2
    assert residual(sys, [[2, 0, 0], [0, 1, 0], [0, 0, 1]]) > 0


def test_float_residual():
    sys = orth_equations(3)
    t = 0.3
    assert residual(sys, rotation(np.cos(t), np.sin(t))) < 1e-15


def test_pattern_forms():
    zp = ZeroPattern(3, [(1, 3), (3, 1)])
    sys = apply_pattern(orth_equations(3), zp)
    assert len(sys.linear_forms) == 2
    assert residual(sys, rotation(F(3, 5), F(4, 5))) == 0
    assert residual(sys, [[0, 0, 1], [0, 1, 0], [-1, 0, 0]]) == 1
    with pytest.raises(ValueError):
        apply_pattern(orth_equations(4), zp)


def test_patterns():
    assert len(hollow_pattern(4)) == 4
    star = star_pattern()
    assert len(star) == 8 and star.n == 5
    assert all(i <= 4 and j <= 4 for i, j in star)
    assert star.transpose().transpose() == star
    assert hollow_pattern(3).bitmap() == "0**\n*0*\n**0"
    with pytest.raises(ValueError):
        ZeroPattern(3, [(4, 1)])


def test_hyperplane():
    h = Hyperplane([[1, 0], [0, F(1, 2)]], 3)
    assert h.form().eval({"x_1_1": 3, "x_1_2": 0, "x_2_1": 0, "x_2_2": 0}) == 0
    assert h.inner([[1, 0], [0, 4]]) == 0
    with pytest.raises(ValueError):
        Hyperplane([[0, 0], [0, 0]])
    rng = np.random.default_rng(0)
    hr = Hyperplane.random(3, rng, support={(1, 2)})
    assert all(c == 0 for (i, row) in enumerate(hr.coeffs) for (j, c) in enumerate(row) if (i, j) != (0, 1))
    sys = add_hyperplanes(orth_equations(3), [h for h in [hr]])
    assert len(sys.linear_forms) == 1


def test_text_roundtrip():
    sys = apply_pattern(orth_equations(3), ZeroPattern(3, [(1, 1), (2, 2)]))
    back = SliceSystem.from_text(sys.to_text())
    assert back == sys
    with pytest.raises(ValueError):
        sys.with_forms([MPoly.var(coord_names(3), "x_1_1") ** 2])


def test_local_dimension():
    assert local_dimension(orth_equations(3), rotation(F(3, 5), F(4, 5))) == 3
    sys = apply_pattern(orth_equations(3), ZeroPattern(3, [(1, 3), (2, 3)]))
    assert local_dimension(sys, rotation(F(3, 5), F(4, 5))) == 1
    with pytest.raises(ValueError):
        local_dimension(sys, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
