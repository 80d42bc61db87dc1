"""Numerical genericity screens for coordinate slices of SO(n)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..exact import MPoly
from ..meet import linear_slice, slice_points
from ..somodel import ZeroPattern, coord_name, coord_names, numeric_rank, orth_equations
from ..tracker import CompiledSystem, TrackConfig
from . import DEFAULT_SYMMETRY, BipartitePattern, SymmetrySpec, enumerate_orbits

MAX_SCREEN_PATHS = 1 << 12


def _pattern_forms(n: int, zeros) -> list[MPoly]:
    names = coord_names(n)
    return [MPoly.var(names, coord_name(i, j)) for i, j in sorted(zeros)]


def _project(F: CompiledSystem, x: np.ndarray, iters: int = 60) -> np.ndarray | None:
    """Gauss-Newton (minimum-norm steps) onto the zero set of ``F``."""
    for _ in range(iters):
        f, J = F.eval_jac(x[None, :])
        f, J = f[0], J[0]
        if np.linalg.norm(f) < 1e-13 * (1 + np.linalg.norm(x)):
            return x
        x = x - np.linalg.lstsq(J, f, rcond=None)[0]
        if not np.all(np.isfinite(x)) or np.linalg.norm(x) > 1e6:
            return None
    f = F(x[None, :])[0]
    return x if np.linalg.norm(f) < 1e-10 * (1 + np.linalg.norm(x)) else None


def sample_dimensions(n: int, zeros, seed: int = 0, samples: int = 4) -> list[int]:
    """Local dimensions of the slice at sampled det(+1) points.

    Random complex starts are projected onto (orthogonality + pattern) by
    minimum-norm Newton steps, which lands on generic points of the
    components; a det(-1) landing is moved to det(+1) by negating a row
    (this keeps the pattern).
    """
    rng = np.random.default_rng([seed, 0x5C4EE, n, len(zeros)])
    names = coord_names(n)
    F = CompiledSystem(list(orth_equations(n).quadrics) + _pattern_forms(n, zeros), names)
    dims = []
    tries = 0
    while len(dims) < samples and tries < 10 * samples:
        tries += 1
        x0 = rng.normal(size=n * n) + 1j * rng.normal(size=n * n)
        x = _project(F, x0)
        if x is None:
            continue
        d = np.linalg.det(x.reshape(n, n))
        if abs(d + 1) < 1e-8:
            x = x.copy()
            x[:n] *= -1
        elif abs(d - 1) > 1e-8:
            continue
        J = F.jacobian(x[None, :])[0]
        dims.append(n * n - numeric_rank(J, 1e-9))
    return dims


def slice_degree(n: int, zeros, dim: int, seed: int = 0, cfg: TrackConfig | None = None) -> tuple[int, int]:
    """(det(+1) points on ``dim`` random hyperplanes, paths tracked)."""
    ls = linear_slice(n, _pattern_forms(n, zeros))
    if ls is None:
        return 0, 0
    pts, info = slice_points(ls, dim, seed, cfg or TrackConfig(seed=seed))
    return len(pts), info["paths"]


def slice_paths(n: int, zeros, dim: int) -> int:
    ls = linear_slice(n, _pattern_forms(n, zeros))
    return 0 if ls is None else 2 ** (ls.dim - dim)


@dataclass
class ScreenResult:
    n: int
    zeros: list
    dims: list
    dimension: int | None
    degree: int | None
    paths: int = 0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "zeros": [list(z) for z in self.zeros],
            "sampled_dims": self.dims,
            "dimension": self.dimension,
            "degree": self.degree,
            "paths": self.paths,
            "note": self.note,
        }


def genericity_screen(p: BipartitePattern | ZeroPattern, n: int | None = None, seed: int = 0,
                      degree: bool | None = None, cfg: TrackConfig | None = None) -> ScreenResult:
    """Dimension (and, when affordable or forced, degree) of a coordinate slice."""
    zeros = sorted(p.edges if isinstance(p, BipartitePattern) else p.zeros)
    n = n or p.n
    dims = sample_dimensions(n, zeros, seed)
    if not dims:
        return ScreenResult(n, zeros, [], None, None, note="empty or unreachable")
    dim = Counter(dims).most_common(1)[0][0]
    res = ScreenResult(n, zeros, dims, dim, None)
    if len(set(dims)) > 1:
        res.note = "components of different dimensions"
    paths = slice_paths(n, zeros, dim)
    if degree is None:
        degree = n <= 5 and paths <= MAX_SCREEN_PATHS
    if degree:
        res.degree, res.paths = slice_degree(n, zeros, dim, seed, cfg)
    else:
        res.note = (res.note + "; " if res.note else "") + f"degree skipped ({paths} paths)"
    return res


@dataclass
class SO3SliceReport:
    group_degree: int
    orbits: list = field(default_factory=list)  # (pattern, ScreenResult, generic)

    @property
    def generic_count(self) -> int:
        return sum(1 for _, _, g in self.orbits if g)

    @property
    def passed(self) -> bool:
        return self.generic_count == 1

    def to_dict(self) -> dict:
        return {
            "group_degree": self.group_degree,
            "orbits": [
                {"zeros": [list(z) for z in sorted(p.edges)], "screen": r.to_dict(), "generic": g}
                for p, r, g in self.orbits
            ],
            "generic_orbits": self.generic_count,
        }


def so3_unique_slice_check(seed: int = 0, sym: SymmetrySpec = DEFAULT_SYMMETRY,
                           cfg: TrackConfig | None = None) -> SO3SliceReport:
    """Screen every two-zero coordinate slice of SO(3) up to symmetry."""
    group_degree, _ = slice_degree(3, [], 3, seed, cfg)
    rep = SO3SliceReport(group_degree)
    for p in enumerate_orbits(3, 3, 2, None, sym):
        r = genericity_screen(p, 3, seed, degree=True, cfg=cfg)
        generic = r.dimension == 1 and len(set(r.dims)) == 1 and r.degree == group_degree
        rep.orbits.append((p, r, generic))
    return rep
