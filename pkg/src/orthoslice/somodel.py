"""Defining equations of O(n)/SO(n), coordinate zero patterns and linear slices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exact import MPoly, det_exact


def coord_name(i: int, j: int) -> str:
    """Matrix coordinate name, 1-indexed: ``x_2_3``."""
    return f"x_{i}_{j}"


def coord_names(n: int) -> tuple[str, ...]:
    return tuple(coord_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1))


@dataclass(frozen=True)
class ZeroPattern:
    n: int
    zeros: frozenset[tuple[int, int]]

    def __init__(self, n: int, zeros: Iterable[tuple[int, int]]):
        zs = frozenset((int(i), int(j)) for i, j in zeros)
        for i, j in zs:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"position {(i, j)} outside {n}x{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "zeros", zs)

    def __contains__(self, pos) -> bool:
        return tuple(pos) in self.zeros

    def __len__(self):
        return len(self.zeros)

    def __iter__(self):
        return iter(sorted(self.zeros))

    def issubset(self, other: "ZeroPattern") -> bool:
        return self.n == other.n and self.zeros <= other.zeros

    def transpose(self) -> "ZeroPattern":
        return ZeroPattern(self.n, ((j, i) for i, j in self.zeros))

    def bitmap(self) -> str:
        return "\n".join(
            "".join("0" if (i, j) in self.zeros else "*" for j in range(1, self.n + 1))
            for i in range(1, self.n + 1)
        )


def hollow_pattern(n: int) -> ZeroPattern:
    return ZeroPattern(n, ((i, i) for i in range(1, n + 1)))


def star_pattern() -> ZeroPattern:
    """The eight-zero 5x5 pattern: diagonal of the top 4x4 plus its cyclic superdiagonal."""
    zs = [(i, i) for i in range(1, 5)] + [(i, i % 4 + 1) for i in range(1, 5)]
    return ZeroPattern(5, zs)


def so3_pattern() -> ZeroPattern:
    return ZeroPattern(3, [(1, 1), (2, 2)])


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane <coeffs, X> = constant in matrix coordinates."""

    coeffs: tuple[tuple[Fraction, ...], ...]
    constant: Fraction = Fraction(0)

    def __init__(self, coeffs: Sequence[Sequence[object]], constant=0):
        rows = tuple(tuple(Fraction(c) for c in row) for row in coeffs)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("hyperplane coefficients must be square")
        if all(c == 0 for r in rows for c in r):
            raise ValueError("hyperplane coefficients are identically zero")
        object.__setattr__(self, "coeffs", rows)
        object.__setattr__(self, "constant", Fraction(constant))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def form(self) -> MPoly:
        names = coord_names(self.n)
        lin = {
            coord_name(i + 1, j + 1): c
            for i, row in enumerate(self.coeffs)
            for j, c in enumerate(row)
            if c != 0
        }
        return MPoly.linear(names, lin, -self.constant)

    def inner(self, m) -> object:
        total = -self.constant
        for crow, mrow in zip(self.coeffs, m):
            for c, x in zip(crow, mrow):
                if c != 0:
                    total = total + c * x
        return total

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, scale: int = 9, support=None) -> "Hyperplane":
        while True:
            rows = [
                [
                    Fraction(int(rng.integers(-scale, scale + 1)), int(rng.integers(1, scale + 1)))
                    if support is None or (i + 1, j + 1) in support
                    else Fraction(0)
                    for j in range(n)
                ]
                for i in range(n)
            ]
            const = Fraction(int(rng.integers(-scale, scale + 1)), int(rng.integers(1, scale + 1)))
            if any(c != 0 for r in rows for c in r):
                return cls(rows, const)


@dataclass(frozen=True)
class SliceSystem:
    n: int
    quadrics: tuple[MPoly, ...]
    det_poly: MPoly
    linear_forms: tuple[MPoly, ...] = field(default_factory=tuple)

    @property
    def variables(self) -> tuple[str, ...]:
        return coord_names(self.n)

    def square_part(self) -> list[MPoly]:
        """Quadrics plus linear forms; the determinant is kept as a filter."""
        return list(self.quadrics) + list(self.linear_forms)

    def all_equations(self) -> list[MPoly]:
        return list(self.quadrics) + [self.det_poly] + list(self.linear_forms)

    def with_forms(self, forms: Iterable[MPoly]) -> "SliceSystem":
        forms = tuple(forms)
        for f in forms:
            if f.degree() > 1:
                raise ValueError("linear form of degree > 1")
        return SliceSystem(self.n, self.quadrics, self.det_poly, self.linear_forms + forms)

    def to_text(self) -> str:
        """One polynomial per line; the determinant line is prefixed ``det:``."""
        lines = [f"vars: {' '.join(self.variables)}"]
        lines += [q.to_text() for q in self.quadrics]
        lines += [lf.to_text() for lf in self.linear_forms]
        lines.append("det: " + self.det_poly.to_text())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SliceSystem":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        names = tuple(lines[0].split(":", 1)[1].split())
        n = int(round(len(names) ** 0.5))
        polys, det = [], None
        for ln in lines[1:]:
            if ln.startswith("det:"):
                det = MPoly.from_text(names, ln[4:])
            else:
                polys.append(MPoly.from_text(names, ln))
        nq = n * (n + 1) // 2
        return cls(n, tuple(polys[:nq]), det, tuple(polys[nq:]))


def orth_equations(n: int) -> SliceSystem:
    """Upper triangle of X X^T - I (row-major) and det X - 1."""
    if not 2 <= n <= 6:
        raise ValueError(f"n must be in [2, 6], got {n}")
    names = coord_names(n)
    X = [[MPoly.var(names, coord_name(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    quads = []
    for i in range(n):
        for j in range(i, n):
            q = MPoly(names)
            for k in range(n):
                q = q + X[i][k] * X[j][k]
            if i == j:
                q = q - 1
            quads.append(q)
    det = det_exact(X) - 1
    return SliceSystem(n, tuple(quads), det, ())


def apply_pattern(sys: SliceSystem, zp: ZeroPattern) -> SliceSystem:
    if zp.n != sys.n:
        raise ValueError("pattern size does not match system")
    names = sys.variables
    return sys.with_forms(MPoly.var(names, coord_name(i, j)) for i, j in zp)


def add_hyperplanes(sys: SliceSystem, hs: Iterable[Hyperplane]) -> SliceSystem:
    return sys.with_forms(h.form() for h in hs)


def _assign(n: int, m) -> dict[str, object]:
    return {coord_name(i + 1, j + 1): m[i][j] for i in range(n) for j in range(n)}


def residual(sys: SliceSystem, point) -> object:
    """Max |value| over quadrics, det - 1 and linear forms.

    Exact inputs give an exact result (``0`` exactly on the variety).
    """
    n = sys.n
    if len(point) != n or any(len(r) != n for r in point):
        raise ValueError("point has wrong shape")
    asg = _assign(n, point)
    vals = [p.eval(asg) for p in sys.all_equations()]
    exact = all(not isinstance(v, (float, complex, np.floating, np.complexfloating)) for v in vals)
    if exact:
        return max((abs(v) for v in vals), default=0)
    return max((abs(complex(v)) for v in vals), default=0.0)


# ---------------------------------------------------------------------------
# numerical Jacobians


def jacobian_polys(polys: Sequence[MPoly]) -> list[list[MPoly]]:
    if not polys:
        return []
    names = polys[0].vars
    return [[p.diff(v) for v in names] for p in polys]


def numeric_jacobian(polys: Sequence[MPoly], x: np.ndarray) -> np.ndarray:
    from .tracker import CompiledSystem

    return CompiledSystem(polys).jacobian(np.asarray(x, dtype=complex)[None, :])[0]


def numeric_rank(J: np.ndarray, tol: float = 1e-8) -> int:
    s = np.linalg.svd(J, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def jacobian_rank_at(sys: SliceSystem, point, tol: float = 1e-8, on_tol: float = 1e-6) -> int:
    """Numerical rank of the Jacobian of every equation of ``sys`` at ``point``.

    The local dimension estimate is ``n*n - rank``.  Raises ``ValueError`` if
    the point is not on the variety within ``on_tol``.
    """
    x = np.asarray([[complex(v) for v in row] for row in point]).reshape(-1)
    res = residual(sys, [[complex(v) for v in row] for row in point])
    if abs(complex(res)) > on_tol:
        raise ValueError(f"point is not on the variety (residual {abs(complex(res)):.3e})")
    J = numeric_jacobian(sys.all_equations(), x)
    return numeric_rank(J, tol)


def local_dimension(sys: SliceSystem, point, tol: float = 1e-8) -> int:
    return sys.n * sys.n - jacobian_rank_at(sys, point, tol)
