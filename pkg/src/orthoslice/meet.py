"""Pairwise intersections of catalog components and their incidence matrices.

Two strategies are implemented.  The exact one works in the parameter space
of one component: the other component's linear conditions cut an affine
subspace, which is intersected exactly with the parameter domain.  When both
components are SO(3)-blocks the conditions are bilinear; then a case split
over axis points of the two circles is complete (see ``_meet_blocks``).  The
numeric one slices the combined linear space of both components with the
orthogonality quadrics and tracks paths; it certifies curve degrees and
cross-checks point sets.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .catalog import (
    SO3BLOCK,
    Component,
    linear_conditions_of,
    membership,
    parametrize,
)
from .exact import MPoly, QuadRat, affine_solve, format_exact, linear_system, poly_reduce
from .exact import RelationSet
from .signedperm import SignedPerm
from .somodel import coord_names, numeric_rank, orth_equations
from .tracker import CompiledSystem, TrackConfig, track_system

EMPTY = "Empty"
POINTS = "Points"
CURVES = "Curves"


class MeetError(AssertionError):
    """Strategies disagree, or a computed point fails certification."""


@dataclass
class MeetResult:
    c1: str
    c2: str
    classification: str
    points: list = field(default_factory=list)  # exact matrices
    curves: int = 0
    samples: list = field(default_factory=list)  # one exact matrix per curve
    method: str = "parametric-exact"
    numeric: dict | None = None

    def to_dict(self) -> dict:
        return {
            "pair": [self.c1, self.c2],
            "classification": self.classification,
            "curves": self.curves,
            "points": [_mat_text(m) for m in self.points],
            "samples": [_mat_text(m) for m in self.samples],
            "method": self.method,
            "numeric": self.numeric,
        }


def _mat_text(m) -> list[list[str]]:
    return [[format_exact(v) for v in row] for row in m]


# ---------------------------------------------------------------------------
# small exact helpers


def _univariate(p: MPoly) -> list[Fraction]:
    """Coefficients (low to high) of a polynomial in at most one variable."""
    used = p.used_vars()
    if len(used) > 1:
        raise ValueError("not univariate")
    i = p.vars.index(next(iter(used))) if used else 0
    coeffs = [Fraction(0)] * (max(p.degree(), 0) + 1)
    for e, c in p.terms.items():
        coeffs[e[i]] += Fraction(c)
    return coeffs


def _trim(a: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b):
    a = _trim(a)
    b = _trim(b)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _trim(a)
    return a


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b)
    return [c / a[-1] for c in a] if a else a


def _real_roots_low(coeffs) -> list:
    """Real roots of a polynomial of degree <= 2, exact (rational or quadratic)."""
    c = _trim(coeffs)
    if len(c) <= 1:
        raise ValueError("constant polynomial")
    if len(c) == 2:
        return [-c[0] / c[1]]
    if len(c) == 3:
        a2, a1, a0 = c[2], c[1], c[0]
        disc = a1 * a1 - 4 * a2 * a0
        if disc < 0:
            return []
        if disc == 0:
            return [-a1 / (2 * a2)]
        r = QuadRat.sqrt_of(disc)
        roots = [(-a1 + s * r) / (2 * a2) for s in (-1, 1)]
        return [_simplify(x) for x in roots]
    raise NotImplementedError("degree > 2")


def _simplify(v):
    if isinstance(v, QuadRat) and v.b == 0:
        return v.a
    return v


def _quadratic_parts(q: MPoly, uvars: Sequence[str]):
    """(A, b, c) with q(u) = u^T A u + b.u + c."""
    k = len(uvars)
    A = [[Fraction(0)] * k for _ in range(k)]
    b = [Fraction(0)] * k
    c = Fraction(0)
    for e, coef in q.terms.items():
        coef = Fraction(coef)
        idx = [i for i, x in enumerate(e) for _ in range(x)]
        if len(idx) == 0:
            c += coef
        elif len(idx) == 1:
            b[idx[0]] += coef
        elif len(idx) == 2:
            i, j = idx
            if i == j:
                A[i][i] += coef
            else:
                A[i][j] += coef / 2
                A[j][i] += coef / 2
        else:
            raise ValueError("degree > 2")
    return A, b, c


def _proportional(p: MPoly, q: MPoly) -> bool:
    if set(p.terms) != set(q.terms):
        return False
    ratio = None
    for e, c in p.terms.items():
        r = Fraction(q.terms[e]) / Fraction(c)
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return True


def _solve2(A, v):
    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    return [(A[1][1] * v[0] - A[0][1] * v[1]) / det, (A[0][0] * v[1] - A[1][0] * v[0]) / det]


# ---------------------------------------------------------------------------
# real locus of restricted domain equations


def _substitute_affine(polys, src_vars, p0, basis):
    """Substitute ``src = p0 + sum u_i basis_i`` into polynomials over ``src_vars``."""
    k = len(basis)
    uvars = tuple(f"u{i + 1}" for i in range(k))
    mapping = {}
    for j, v in enumerate(src_vars):
        mapping[v] = MPoly.linear(uvars, {uvars[i]: basis[i][j] for i in range(k) if basis[i][j] != 0}, p0[j])
    return uvars, [p.subs(mapping, uvars) for p in polys]


def _real_locus(polys: list[MPoly], uvars):
    """Classify the real zero set of small quadric systems.

    Returns ``("empty", None)``, ``("points", [u, ...])`` or
    ``("curve", [sample_u])`` for a single ellipse.
    """
    k = len(uvars)
    live = []
    for p in polys:
        if p.is_zero():
            continue
        if p.is_constant():
            return "empty", None
        live.append(p)
    if k == 0:
        return "points", [()]
    if not live:
        raise NotImplementedError("unbounded real locus")
    if k == 1:
        g = _univariate(live[0])
        for p in live[1:]:
            g = _poly_gcd(g, _univariate(p))
        if len(_trim(g)) <= 1:
            return "empty", None
        roots = _real_roots_low(g)
        return ("points", [(r,) for r in roots]) if roots else ("empty", None)
    if k == 2:
        base = live[0]
        others = [p for p in live[1:] if not _proportional(base, p)]
        if others:
            return _two_conics(base, others, uvars)
        A, b, c = _quadratic_parts(base, uvars)
        detA = A[0][0] * A[1][1] - A[0][1] * A[1][0]
        if not (A[0][0] > 0 and detA > 0):
            if A[0][0] < 0 and detA > 0:
                A = [[-x for x in r] for r in A]
                b = [-x for x in b]
                c = -c
            else:
                raise NotImplementedError("non-elliptic conic")
        center = _solve2(A, [-x / 2 for x in b])
        m = c + sum(b[i] * center[i] for i in range(2)) / 2
        if m > 0:
            return "empty", None
        if m == 0:
            return "points", [tuple(center)]
        t = QuadRat.sqrt_of(-m / A[0][0])
        return "curve", [(_simplify(center[0] + t), center[1])]
    raise NotImplementedError(f"solution space of dimension {k}")


def _two_conics(base: MPoly, others: list[MPoly], uvars):
    """Two non-proportional conics: eliminate the quadratic part if possible."""
    A0, _, _ = _quadratic_parts(base, uvars)
    for p in others:
        A1, _, _ = _quadratic_parts(p, uvars)
        ratio = None
        ok = True
        for i in range(2):
            for j in range(2):
                if A0[i][j] != 0:
                    r = A1[i][j] / A0[i][j]
                    if ratio is None:
                        ratio = r
                    elif ratio != r:
                        ok = False
                elif A1[i][j] != 0:
                    ok = False
        if ok and ratio is not None:
            lin = p - base * ratio
            if lin.is_constant():
                return "empty", None
            rows, rhs = linear_system([lin], uvars)
            sol = affine_solve(rows, rhs)
            p0, basis = sol
            wvars, sub = _substitute_affine([base] + [q for q in others if q is not p], uvars, p0, basis)
            kind, pts = _real_locus(sub, wvars)
            if kind == "points":
                return kind, [tuple(_lift(p0, basis, w)) for w in pts]
            if kind == "curve":
                raise NotImplementedError("line inside a conic")
            return kind, pts
    raise NotImplementedError("two independent conics")


def _lift(p0, basis, u):
    out = []
    for j in range(len(p0)):
        v = p0[j]
        for i, ui in enumerate(u):
            if basis[i][j] != 0:
                v = v + ui * basis[i][j]
        out.append(_simplify(v) if isinstance(v, QuadRat) else v)
    return out


# ---------------------------------------------------------------------------
# exact strategy


def _conditions_on_params(c1: Component, others: Sequence[Component]) -> list[MPoly]:
    mapping = {}
    for i in range(c1.n):
        for j in range(c1.n):
            mapping[f"x_{i + 1}_{j + 1}"] = c1.entry_map[i][j]
    out = []
    for c2 in others:
        for L in linear_conditions_of(c2):
            v = L.subs(mapping, c1.params)
            if not v.is_zero():
                out.append(v)
    return out


def _meet_linear(c1: Component, others: Sequence[Component]) -> MeetResult:
    c2 = others[0]
    conds = _conditions_on_params(c1, others)
    if any(not p.is_zero() and p.is_constant() for p in conds):
        return MeetResult(c1.id, c2.id, EMPTY)
    rows, rhs = linear_system(conds, c1.params)
    sol = affine_solve(rows, rhs) if rows else ([Fraction(0)] * len(c1.params), None)
    if sol is None:
        return MeetResult(c1.id, c2.id, EMPTY)
    p0, basis = sol
    if basis is None:
        raise MeetError("no conditions: the components coincide")
    uvars, dom = _substitute_affine(c1.domain_polys(), c1.params, p0, basis)
    kind, data = _real_locus(dom, uvars)
    if kind == "empty":
        return MeetResult(c1.id, c2.id, EMPTY)
    if kind == "points":
        pts = [parametrize(c1, _lift(p0, basis, u)) for u in data]
        return MeetResult(c1.id, c2.id, POINTS, points=pts)
    sample = parametrize(c1, _lift(p0, basis, data[0]))
    return MeetResult(c1.id, c2.id, CURVES, curves=1, samples=[sample])


AXIS_POINTS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _meet_blocks(c1: Component, others: Sequence[Component]) -> MeetResult:
    """Both components bilinear in two circles.

    Every entry of c1 is 0, +-1, +-a_i, +-b_j or +-a_i b_j, and every
    condition of c2 sets an entry to 0 or +-1.  At a circle point off the
    axes all such non-constant entries are non-zero with modulus < 1, so
    every intersection point either has a circle at an axis point or makes
    all conditions vanish identically.  Enumerating ``free`` or one of the
    four axis points for each circle is therefore complete.
    """
    c2 = others[0]
    conds = _conditions_on_params(c1, others)
    (ga, gb) = c1.domain
    states = [None] + list(AXIS_POINTS)
    valid = {}
    for sa, sb in itertools.product(states, states):
        fixed = {}
        if sa is not None:
            fixed.update({ga[0]: Fraction(sa[0]), ga[1]: Fraction(sa[1])})
        if sb is not None:
            fixed.update({gb[0]: Fraction(sb[0]), gb[1]: Fraction(sb[1])})
        free_groups = [g for g, s in ((ga, sa), (gb, sb)) if s is None]
        rels = RelationSet.circles(c1.params, free_groups)
        mapping = {v: MPoly.const(c1.params, x) for v, x in fixed.items()}
        mapping.update({v: MPoly.var(c1.params, v) for v in c1.params if v not in fixed})
        ok = all(poly_reduce(p.subs(mapping, c1.params), rels).is_zero() for p in conds)
        valid[(sa, sb)] = ok
    if valid[(None, None)]:
        raise MeetError(f"{c1.id} is contained in {c2.id}")
    curves = [k for k, ok in valid.items() if ok and (k[0] is None) != (k[1] is None)]
    points = []
    for (sa, sb), ok in valid.items():
        if not ok or sa is None or sb is None:
            continue
        if valid[(None, sb)] or valid[(sa, None)]:
            continue
        points.append(parametrize(c1, (*sa, *sb)))
    generic = (Fraction(3, 5), Fraction(4, 5))
    samples = []
    for sa, sb in curves:
        pa = generic if sa is None else sa
        pb = generic if sb is None else sb
        samples.append(parametrize(c1, (*pa, *pb)))
    if curves:
        return MeetResult(c1.id, c2.id, CURVES, curves=len(curves), samples=samples, method="axis-split-exact")
    if points:
        return MeetResult(c1.id, c2.id, POINTS, points=points, method="axis-split-exact")
    return MeetResult(c1.id, c2.id, EMPTY, method="axis-split-exact")


def meet(c1: Component, c2: Component, cross_check: bool = False, seed: int = 0,
         cfg: TrackConfig | None = None) -> MeetResult:
    """Exact classification of ``c1 ∩ c2`` (real points)."""
    if c1.n != c2.n:
        raise ValueError("components live in different ambient sizes")
    if c1 is c2 or c1.id == c2.id:
        raise ValueError("meet of a component with itself")
    res = meet_many([c1, c2])
    if cross_check:
        _cross_check(c1, c2, res, seed, cfg)
    return res


def meet_many(components: Sequence[Component]) -> MeetResult:
    """Exact real intersection of two or more components.

    The base parametrization is a component with linear entries when one is
    available; if all are SO(3)-blocks the axis-point case split is used.
    """
    comps = list(components)
    if len({c.n for c in comps}) != 1:
        raise ValueError("components live in different ambient sizes")
    if len({c.id for c in comps}) != len(comps):
        raise ValueError("repeated component")
    linear = [c for c in comps if c.kind != SO3BLOCK]
    base = linear[0] if linear else comps[0]
    others = [c for c in comps if c is not base]
    res = _meet_blocks(base, others) if base.kind == SO3BLOCK else _meet_linear(base, others)
    res.c1, res.c2 = comps[0].id, comps[1].id
    for m in res.points + res.samples:
        if not all(membership(c, m) for c in comps):
            raise MeetError(f"meet point of {[c.id for c in comps]} fails exact membership")
    if res.classification == POINTS:
        res.points = sorted(res.points, key=_mat_sort_key)
    return res


def _mat_sort_key(m):
    return tuple(float(v) for row in m for v in row)


# ---------------------------------------------------------------------------
# numeric strategy


@dataclass
class LinearSlice:
    """Affine space x = p0 + N u in matrix coordinates, with restricted quadrics."""

    n: int
    p0: list
    basis: list
    uvars: tuple
    quadrics: list  # orthogonality quadrics restricted to u (non-zero ones)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_matrix(self, u: np.ndarray) -> np.ndarray:
        p0 = np.array([float(v) for v in self.p0], dtype=complex)
        N = np.array([[float(v) for v in b] for b in self.basis], dtype=complex).reshape(len(self.basis), -1)
        x = p0 + (u @ N if len(self.basis) else 0)
        return x.reshape(self.n, self.n)


def linear_slice(n: int, conditions: Sequence[MPoly]) -> LinearSlice | None:
    names = coord_names(n)
    rows, rhs = linear_system(list(conditions), names)
    sol = affine_solve(rows, rhs, len(names))
    if sol is None:
        return None
    p0, basis = sol
    quads = orth_equations(n).quadrics
    uvars, sub = _substitute_affine(quads, names, p0, basis)
    live = [q for q in sub if not q.is_zero()]
    return LinearSlice(n, p0, basis, uvars, live)


def _rand_frac(rng, scale=9):
    return Fraction(int(rng.integers(-scale, scale + 1)) or 1, int(rng.integers(1, scale + 1)))


def slice_points(ls: LinearSlice, n_hyperplanes: int, seed: int, cfg: TrackConfig | None = None,
                 det_sign: int | None = 1, tol: float = 1e-7):
    """Points of (linear slice ∩ O(n)) ∩ random hyperplanes, filtered by det.

    The overdetermined quadric system is squared up with random rational
    combinations; spurious roots of the square system are removed by
    checking every quadric.  Returns ``(points, info)``.
    """
    rng = np.random.default_rng([seed, 0xC0FFEE, ls.dim, n_hyperplanes])
    k = ls.dim
    m = k - n_hyperplanes
    if m < 0:
        raise ValueError("more hyperplanes than slice dimension")
    if m > len(ls.quadrics):
        raise ValueError("slice is underdetermined")
    eqs = []
    for _ in range(m):
        q = MPoly(ls.uvars)
        for quad in ls.quadrics:
            q = q + quad * _rand_frac(rng)
        eqs.append(q)
    for _ in range(n_hyperplanes):
        eqs.append(MPoly.linear(ls.uvars, {v: _rand_frac(rng) for v in ls.uvars}, _rand_frac(rng)))
    if k == 0:
        pts = [np.zeros(0, dtype=complex)]
        tracked = 0
    else:
        cfg = cfg or TrackConfig(seed=seed)
        sols = track_system(eqs, cfg)
        pts = sols.points
        tracked = sols.tracked
    full = CompiledSystem(ls.quadrics, ls.uvars) if ls.quadrics else None
    out = []
    for u in pts:
        if full is not None:
            r = np.max(np.abs(full(u[None, :])[0]))
            if r > tol * (1 + np.linalg.norm(u)) ** 2:
                continue
        X = ls.to_matrix(u)
        if det_sign is not None and abs(np.linalg.det(X) - det_sign) > 1e-6:
            continue
        out.append(X)
    return out, {"paths": tracked, "square_solutions": len(pts), "kept": len(out), "slice_dim": k}


def combined_conditions(*components: Component) -> list[MPoly]:
    out = []
    for c in components:
        out.extend(linear_conditions_of(c))
    return out


def curve_degree_of(components: Sequence[Component], seed: int = 0, cfg: TrackConfig | None = None) -> int:
    """Number of complex points of (∩ components) on one random hyperplane."""
    ls = linear_slice(components[0].n, combined_conditions(*components))
    if ls is None:
        return 0
    pts, _ = slice_points(ls, 1, seed, cfg)
    return len(pts)


def curve_degree(res: MeetResult, catalog: Sequence[Component], seed: int = 0,
                 cfg: TrackConfig | None = None) -> int:
    if res.classification != CURVES:
        raise ValueError("curve_degree needs a curve meet")
    comps = [c for c in catalog if c.id in (res.c1, res.c2)]
    return curve_degree_of(comps, seed, cfg)


def local_dimension_at(components: Sequence[Component], m) -> int:
    """n^2 - rank of the Jacobian of (orthogonality + all linear conditions) at ``m``."""
    n = components[0].n
    sys = orth_equations(n)
    polys = list(sys.quadrics) + combined_conditions(*components)
    x = np.array([[complex(v) for v in row] for row in m]).reshape(-1)
    J = CompiledSystem(polys, coord_names(n)).jacobian(x[None, :])[0]
    return n * n - numeric_rank(J, 1e-9)


def _cross_check(c1, c2, res: MeetResult, seed, cfg):
    info = {}
    if res.classification == CURVES:
        deg = curve_degree_of([c1, c2], seed, cfg)
        info["hyperplane_points"] = deg
        if deg != 2 * res.curves:
            raise MeetError(f"{c1.id} ∩ {c2.id}: {res.curves} circle(s) but {deg} hyperplane points")
        dims = [local_dimension_at([c1, c2], s) for s in res.samples]
        info["local_dims"] = dims
        if any(d != 1 for d in dims):
            raise MeetError(f"{c1.id} ∩ {c2.id}: sample local dimension {dims}")
    elif res.classification == POINTS:
        ls = linear_slice(c1.n, combined_conditions(c1, c2))
        pts, meta = slice_points(ls, 0, seed, cfg)
        real = [p.real for p in pts if np.max(np.abs(p.imag)) <= 1e-8]
        exact = [np.array([[float(v) for v in r] for r in m]) for m in res.points]
        if len(real) != len(exact) or any(min(np.max(np.abs(e - r)) for r in real) > 1e-8 for e in exact):
            raise MeetError(f"{c1.id} ∩ {c2.id}: numeric points disagree with exact ones")
        info.update(meta)
    res.numeric = info
    res.method += "+numeric"


# ---------------------------------------------------------------------------
# incidence


@dataclass
class IncidenceMatrix:
    labels: list[str]
    entries: list[list[int]]

    def ones(self) -> int:
        return sum(map(sum, self.entries))

    def is_symmetric(self) -> bool:
        n = len(self.labels)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[int]]:
        return [[self.entries[i][j] for j in cols] for i in rows]

    def to_json(self) -> str:
        return json.dumps({"labels": self.labels, "rows": self.entries})

    def heatmap(self) -> str:
        return "\n".join("".join("#" if v else "." for v in row) for row in self.entries)


@dataclass
class MeetTable:
    components: tuple
    results: dict  # (i, j) with i < j -> MeetResult

    def incidence(self, nonempty: bool = False) -> IncidenceMatrix:
        """Curve incidence, or (``nonempty``) any-intersection incidence."""
        n = len(self.components)
        E = [[0] * n for _ in range(n)]
        for (i, j), r in self.results.items():
            if r.classification == CURVES or (nonempty and r.classification != EMPTY):
                E[i][j] = E[j][i] = 1
        return IncidenceMatrix([c.id for c in self.components], E)

    def curve_pairs(self) -> list[tuple[int, int]]:
        return sorted(k for k, r in self.results.items() if r.classification == CURVES)

    def curve_count(self) -> int:
        return sum(r.curves for r in self.results.values())


def all_meets(components: Sequence[Component], cross_check: bool = False, seed: int = 0,
              cfg: TrackConfig | None = None) -> MeetTable:
    comps = tuple(components)
    out = {}
    for i, j in itertools.combinations(range(len(comps)), 2):
        out[(i, j)] = meet(comps[i], comps[j], cross_check=cross_check, seed=seed, cfg=cfg)
    return MeetTable(comps, out)


def incidence_curves(components: Sequence[Component]) -> IncidenceMatrix:
    return all_meets(components).incidence()


@dataclass
class IntersectionPoint:
    matrix: list
    components: list[str]

    @property
    def signed_perm(self) -> SignedPerm:
        return SignedPerm.from_matrix(self.matrix)


def intersection_points(components: Sequence[Component], table: MeetTable | None = None) -> list[IntersectionPoint]:
    """Zero-dimensional strata of the intersection arrangement.

    These are the isolated points of pairwise meets together with the
    isolated points cut from an intersection curve by a third component
    (where curves cross).  Each point is annotated with every component
    through it.
    """
    comps = list(components)
    table = table or all_meets(comps)
    seen = {}

    def add(m):
        key = tuple(tuple(format_exact(v) for v in row) for row in m)
        seen.setdefault(key, m)

    touching = {i: set() for i in range(len(comps))}
    for (i, j), r in table.results.items():
        for m in r.points:
            add(m)
        if r.classification != EMPTY:
            touching[i].add(j)
            touching[j].add(i)
    for (i, j), r in table.results.items():
        if r.classification != CURVES:
            continue
        for k in sorted(touching[i] & touching[j]):
            t = meet_many([comps[i], comps[j], comps[k]])
            if t.classification == CURVES:
                continue  # the third component contains the curve
            for m in t.points:
                add(m)
    out = [IntersectionPoint(m, [c.id for c in comps if membership(c, m)]) for m in seen.values()]
    out.sort(key=lambda p: _mat_sort_key(p.matrix))
    return out


# ---------------------------------------------------------------------------
# comparison against the printed incidence data


def compare_sphere_torus(inc: IncidenceMatrix) -> list[tuple[str, str, int, int]]:
    """Mismatches ``(sphere, torus, computed, printed)`` against the HSO(4) table."""
    from .assets import SPHERE_TORUS_TABLE, TORUS_COLUMNS

    idx = {lab: k for k, lab in enumerate(inc.labels)}
    bad = []
    for sphere, row in SPHERE_TORUS_TABLE:
        for torus, printed in zip(TORUS_COLUMNS, row):
            got = inc.entries[idx[sphere]][idx[torus]]
            if got != printed:
                bad.append((sphere, torus, got, printed))
    return bad


def sign_flip_group() -> list[tuple[int, ...]]:
    """Relabellings of the four sign labels (++, +-, -+, --) generated by
    flipping either sign and swapping the two; identity first."""
    labels = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    out = []
    for f1 in (1, -1):
        for f2 in (1, -1):
            for swap in (False, True):
                def g(lab):
                    a, b = (lab[1], lab[0]) if swap else lab
                    return (a * f1, b * f2)

                out.append(tuple(labels.index(g(lab)) for lab in labels))
    return out


@dataclass
class BlockComparison:
    literal: int  # blocks equal to the printed block as printed
    support: int  # blocks whose zero/nonzero status matches
    bijection: list | None  # per pattern: computed label at printed slot k
    direct: int = 0
    transposed: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.bijection is not None and self.support == 256

    def to_dict(self) -> dict:
        return {
            "literal_blocks": self.literal,
            "support_blocks": self.support,
            "bijection": self.bijection,
            "direct_blocks": self.direct,
            "transposed_blocks": [list(p) for p in self.transposed],
            "passed": self.passed,
        }


def compare_so5_blocks(inc: IncidenceMatrix) -> BlockComparison:
    """Compare the 64 x 64 SO*(5) incidence with the printed block layout.

    The printed layout is not symmetric, so a computed block may match either
    the printed block or the transpose of its printed mirror.  Within each
    sign pattern the labels may be renamed by an element of the sign-flip
    group; a consistent renaming is found by backtracking.
    """
    from .assets import BLOCKS, SO5_BLOCK_LAYOUT

    M = np.array(inc.entries)
    if M.shape != (64, 64):
        raise ValueError("expected the 64 x 64 SO*(5) incidence matrix")
    E = [[np.array(BLOCKS[t]) for t in row] for row in SO5_BLOCK_LAYOUT]

    def blk(p, q):
        return M[4 * p:4 * p + 4, 4 * q:4 * q + 4]

    pairs = [(p, q) for p in range(16) for q in range(16)]
    literal = sum(bool((blk(p, q) == E[p][q]).all()) for p, q in pairs)
    support = sum(bool(blk(p, q).any()) == bool(E[p][q].any()) for p, q in pairs)

    def ok(p, q, sp, sq):
        B = blk(p, q)[np.ix_(sp, sq)]
        return (B == E[p][q]).all() or (B == E[q][p].T).all()

    group = sign_flip_group()
    sol: dict[int, tuple[int, ...]] = {}

    def bt(p):
        if p == 16:
            return True
        for sp in group:
            if ok(p, p, sp, sp) and all(ok(p, q, sp, sol[q]) and ok(q, p, sol[q], sp) for q in sol):
                sol[p] = sp
                if bt(p + 1):
                    return True
                del sol[p]
        return False

    if not bt(0):
        return BlockComparison(literal, support, None)
    res = BlockComparison(literal, support, [list(sol[p]) for p in range(16)])
    for p, q in pairs:
        if (blk(p, q)[np.ix_(sol[p], sol[q])] == E[p][q]).all():
            res.direct += 1
        else:
            res.transposed.append((p, q))
    return res
