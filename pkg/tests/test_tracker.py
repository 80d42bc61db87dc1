import json
from fractions import Fraction

import numpy as np
import pytest

from orthoslice.exact import MPoly
from orthoslice.somodel import apply_pattern, orth_equations, so3_pattern
from orthoslice.tracker import (
    CompiledSystem,
    TrackConfig,
    classify_real,
    dedup_and_refine,
    homogenize,
    track_system,
    with_seed,
)

XY = ("x", "y")


x, y = MPoly.var(XY, "x"), MPoly.var(XY, "y")


def test_compiled_matches_exact_eval():
    rng = np.random.default_rng(0)
    polys = [3 * x**2 * y - Fraction(1, 2) * y**3 + x - 7, x * y + 2 * y**2 - 1]
    F = CompiledSystem(polys)
    X = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    vals, J = F.eval_jac(X)
    for k, pt_ in enumerate(X):
        pt = {"x": pt_[0], "y": pt_[1]}
        for i, p in enumerate(polys):
            assert abs(vals[k, i] - complex(p.eval(pt))) < 1e-10
            for j, v in enumerate(XY):
                assert abs(J[k, i, j] - complex(p.diff(v).eval(pt))) < 1e-10


def test_quadratic_path_matches_general_path():
    polys = [x**2 - 3 * x * y + 2, y**2 + x - 1]
    F = CompiledSystem(polys)
    assert F.quadratic
    X = np.array([[0.3 + 0.1j, -1.2]])
    f = F(X)[0]
    assert abs(f[0] - (X[0, 0] ** 2 - 3 * X[0, 0] * X[0, 1] + 2)) < 1e-12


def test_homogenize():
    h = homogenize(x**2 + y - 1, "h")
    assert h.vars == ("h", "x", "y")
    assert all(sum(e) == 2 for e in h.terms)


def test_two_quadrics():
    sols = track_system([x**2 - 2, y**2 - 3])
    assert len(sols) == 4 and sols.tracked == 4
    got = sorted((round(p[0].real, 10), round(p[1].real, 10)) for p in sols.points)
    r2, r3 = round(2 ** 0.5, 10), round(3 ** 0.5, 10)
    assert got == sorted((a, b) for a in (-r2, r2) for b in (-r3, r3))
    assert all(sols.real)


def test_complex_and_infinite_solutions():
    # x^2 + 1 = 0 has two complex roots; x*y - 1 with x - y: two real points
    sols = track_system([x**2 + 1, y - x])
    assert len(sols) == 2 and not any(sols.real)
    sols = track_system([x * y - 1, x - y])
    assert len(sols) == 2 and all(sols.real)
    # concentric circles meet only at infinity
    sols = track_system([x**2 + y**2 - 1, x**2 + y**2 - 4])
    assert len(sols) == 0 and sols.diverged == 4


def test_so3_slice_degree():
    # SO(3) with a generic 3-plane of constraints: 8 det(+1) points, 16 in O(3)
    sys = orth_equations(3)
    rng = np.random.default_rng(0)
    names = sys.variables
    forms = []
    for _ in range(3):
        coeffs = {v: int(rng.integers(-5, 6)) or 1 for v in names}
        forms.append(MPoly.linear(names, coeffs, int(rng.integers(-5, 6))))
    sols = track_system(list(sys.quadrics) + forms)
    assert len(sols) == 16
    dets = [np.linalg.det(p.reshape(3, 3)) for p in sols.points]
    assert sum(1 for d in dets if abs(d - 1) < 1e-8) == 8


def test_seed_determinism():
    polys = [x**2 + 3 * y - 2, y**2 - x * y + Fraction(1, 3)]
    a = track_system(polys, TrackConfig(seed=5))
    b = track_system(polys, TrackConfig(seed=5))
    c = track_system(polys, TrackConfig(seed=6))
    assert a.to_json() == b.to_json()
    assert len(a) == len(c) == 4
    for p in a.points:
        assert min(np.max(np.abs(p - q)) for q in c.points) < 1e-9


def test_threads_do_not_change_results():
    polys = list(apply_pattern(orth_equations(3), so3_pattern()).square_part())
    names = polys[0].vars
    polys.append(MPoly.linear(names, {"x_1_2": 1, "x_3_3": 2}, -1))
    a = track_system(polys, TrackConfig(seed=1, chunk=64))
    b = track_system(polys, TrackConfig(seed=1, chunk=64, threads=3))
    assert a.to_json() == b.to_json()


def test_solution_set_json():
    sols = track_system([x**2 - 2, y - 1])
    d = json.loads(sols.to_json())
    assert d["stats"]["tracked"] == 2 and len(d["points"]) == 2
    real, nonreal = classify_real(sols)
    assert len(real) == 2 and not nonreal


def test_dedup():
    pts = [np.array([1.0, 2.0]), np.array([1.0 + 1e-9, 2.0]), np.array([3.0, 0.0])]
    assert len(dedup_and_refine(pts, 1e-6)) == 2


def test_config_validation():
    with pytest.raises(ValueError):
        TrackConfig(min_step=0.1, initial_step=0.01)
    with pytest.raises(ValueError):
        TrackConfig(path_tol=0)
    assert with_seed(TrackConfig(seed=1), 7).seed == 7
    assert TrackConfig(seed=3).gamma == TrackConfig(seed=3).gamma


def test_input_validation():
    with pytest.raises(ValueError):
        track_system([x**2 - 1])
    with pytest.raises(ValueError):
        track_system([x**2 - 1, MPoly(XY)])
    with pytest.raises(ValueError):
        CompiledSystem([])
