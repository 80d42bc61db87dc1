from fractions import Fraction as F

import numpy as np
import pytest

from orthoslice.exact import (
    MPoly,
    QuadRat,
    RelationSet,
    affine_solve,
    det_exact,
    det_leibniz,
    format_exact,
    linear_system,
    parse_exact,
    poly_reduce,
)

V = ("a", "b", "c", "d")


def rand_poly(rng, vars=V, terms=6, deg=4):
    out = MPoly(vars)
    for _ in range(terms):
        e = tuple(int(k) for k in rng.integers(0, deg + 1, size=len(vars)))
        out = out + MPoly(vars, {e: F(int(rng.integers(-9, 10)), int(rng.integers(1, 6)))})
    return out


class TestQuadRat:
    def test_field_arithmetic(self):
        s = QuadRat(0, 1, 3)
        assert s * s == 3
        x = QuadRat(F(1, 2), F(-2, 3), 3)
        assert x * x.inverse() == 1
        assert x * x.conjugate() == x.norm()
        assert (x + 1) - 1 == x
        assert x ** -2 * x ** 2 == 1

    def test_sqrt_of(self):
        assert QuadRat.sqrt_of(F(1, 3), 3) == QuadRat(0, F(1, 3), 3)
        assert QuadRat.sqrt_of(F(9, 4)) == F(3, 2)
        assert QuadRat.sqrt_of(12) == QuadRat(0, 2, 3)
        with pytest.raises(ValueError):
            QuadRat.sqrt_of(2, 3)
        with pytest.raises(ValueError):
            QuadRat.sqrt_of(-1)

    def test_mixed_radicands_rejected(self):
        with pytest.raises(ValueError):
            QuadRat(0, 1, 2) + QuadRat(0, 1, 3)
        assert QuadRat(2, 0, 2) + QuadRat(0, 1, 3) == QuadRat(2, 1, 3)
        with pytest.raises(ValueError):
            QuadRat(1, 1, 4)

    @pytest.mark.parametrize("a,b", [(1, 1), (2, -1), (-2, 1), (-1, -1), (F(17, 10), -1), (F(-7, 4), 1), (0, -3)])
    def test_exact_sign_matches_float(self, a, b):
        x = QuadRat(a, b, 3)
        assert x.sign() == int(np.sign(float(x)))

    def test_ordering(self):
        assert QuadRat(0, 1, 3) < 2 and QuadRat(0, 1, 3) > F(17, 10)
        assert abs(QuadRat(1, -1, 3)) == QuadRat(-1, 1, 3)

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            QuadRat(0, 0, 3).inverse()

    @pytest.mark.parametrize("v", [F(3, 7), F(-5), QuadRat(F(1, 2), F(-3, 4), 3), QuadRat(0, 2, 5), QuadRat(F(-1, 3), 1, 2)])
    def test_format_roundtrip(self, v):
        assert parse_exact(format_exact(v)) == v

    def test_hash_consistent_with_rationals(self):
        assert hash(QuadRat(F(1, 2), 0, 3)) == hash(F(1, 2))
        assert len({QuadRat(1, 0, 3), F(1), 1}) == 1


class TestMPoly:
    def test_ring_identities(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            p, q, r = (rand_poly(rng) for _ in range(3))
            assert (p + q) * r == p * r + q * r
            assert p * q == q * p
            assert (p - p).is_zero()
            assert (p * q).degree() <= p.degree() + q.degree()

    def test_text_roundtrip(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            p = rand_poly(rng)
            assert MPoly.from_text(V, p.to_text()) == p
        assert MPoly.from_text(V, "0").is_zero()

    def test_eval_and_subs(self):
        rng = np.random.default_rng(2)
        p = rand_poly(rng)
        pt = {"a": F(1, 2), "b": F(-3), "c": F(2, 7), "d": F(1)}
        a, b = MPoly.var(("s", "t"), "s"), MPoly.var(("s", "t"), "t")
        q = p.subs({"a": a + b, "b": a * b, "c": F(2, 7), "d": 1}, ("s", "t"))
        s, t = F(3, 5), F(-1, 2)
        assert q.eval({"s": s, "t": t}) == p.eval({"a": s + t, "b": s * t, "c": F(2, 7), "d": 1})
        assert isinstance(p.eval(pt), F)
        with pytest.raises(KeyError):
            MPoly.var(V, "a").eval({})

    def test_diff(self):
        p = MPoly.from_text(V, "3*a^2*b-1/2*c+4")
        assert p.diff("a") == MPoly.from_text(V, "6*a*b")
        assert p.diff("d").is_zero()

    def test_linear(self):
        p = MPoly.linear(V, {"a": 2, "c": -1}, 5)
        coeffs, const = p.linear_coeffs()
        assert coeffs == {"a": 2, "c": -1} and const == 5

    def test_quadratic_coefficients(self):
        x = MPoly.var(("x",), "x")
        s3 = QuadRat(0, 1, 3)
        p = (x - s3) * (x + s3)
        assert p == x * x - 3


class TestReduction:
    def test_idempotent_sphere(self):
        rels = RelationSet.sphere(V, ("a", "b", "c"))
        rng = np.random.default_rng(3)
        for _ in range(25):
            p = rand_poly(rng)
            r = poly_reduce(p, rels)
            assert poly_reduce(r, rels) == r
            assert all(e[2] <= 1 for e in r.terms)

    def test_idempotent_circles(self):
        rels = RelationSet.circles(V, [("a", "b"), ("c", "d")])
        rng = np.random.default_rng(4)
        for _ in range(25):
            p = rand_poly(rng)
            r = poly_reduce(p, rels)
            assert poly_reduce(r, rels) == r
            assert all(e[1] <= 1 and e[3] <= 1 for e in r.terms)

    def test_reduction_preserves_values_on_the_variety(self):
        rels = RelationSet.circles(V, [("a", "b"), ("c", "d")])
        rng = np.random.default_rng(5)
        # rational points on the unit circle: ((1-t^2)/(1+t^2), 2t/(1+t^2))
        t1, t2 = F(2, 3), F(-1, 5)
        pt = {"a": (1 - t1 ** 2) / (1 + t1 ** 2), "b": 2 * t1 / (1 + t1 ** 2),
              "c": (1 - t2 ** 2) / (1 + t2 ** 2), "d": 2 * t2 / (1 + t2 ** 2)}
        for _ in range(10):
            p = rand_poly(rng)
            assert poly_reduce(p, rels).eval(pt) == p.eval(pt)

    def test_sphere_relation_reduces_to_zero(self):
        rels = RelationSet.sphere(V, ("a", "b", "c"))
        a, b, c = (MPoly.var(V, v) for v in "abc")
        assert poly_reduce(a * a + b * b + c * c - 1, rels).is_zero()
        assert poly_reduce((a * a + b * b + c * c) ** 3 - 1, rels).is_zero()

    def test_rules_must_be_triangular(self):
        a, b = MPoly.var(V, "a"), MPoly.var(V, "b")
        RelationSet(V, [("a", a * 0 + 1), ("b", a)])  # earlier leads are allowed
        with pytest.raises(ValueError):
            RelationSet(V, [("a", b), ("b", a * 0 + 1)])
        with pytest.raises(ValueError):
            RelationSet(V, [("a", a)])


class TestLinearAlgebra:
    def test_det_agrees_with_leibniz(self):
        rng = np.random.default_rng(6)
        for n in range(1, 6):
            m = [[F(int(rng.integers(-5, 6)), int(rng.integers(1, 4))) for _ in range(n)] for _ in range(n)]
            assert det_exact(m) == det_leibniz(m)

    def test_det_over_quadratic_field(self):
        s = QuadRat(0, 1, 3)
        m = [[s, 1], [1, s]]
        assert det_exact(m) == 2

    def test_det_of_polynomial_matrix(self):
        a, b = MPoly.var(("a", "b"), "a"), MPoly.var(("a", "b"), "b")
        assert det_exact([[a, -b], [b, a]]) == a * a + b * b
        with pytest.raises(ValueError):
            det_exact([[1, 2]])

    def test_affine_solve(self):
        rows = [[1, 1, 0], [0, 1, 1]]
        p0, basis = affine_solve(rows, [1, 2])
        assert len(basis) == 1
        for u in (F(0), F(3, 2)):
            x = [p + u * b for p, b in zip(p0, basis[0])]
            assert [sum(r * v for r, v in zip(row, x)) for row in rows] == [1, 2]
        assert affine_solve([[1, 1], [2, 2]], [1, 3]) is None
        p0, basis = affine_solve([], [], 3)
        assert p0 == [0, 0, 0] and len(basis) == 3

    def test_linear_system(self):
        p = MPoly.linear(V, {"a": 1, "b": -2}, 3)
        rows, rhs = linear_system([p], V)
        assert rows == [[1, -2, 0, 0]] and rhs == [-3]
        with pytest.raises(ValueError):
            linear_system([p * p], V)
