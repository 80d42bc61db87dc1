"""Catalogs of the irreducible surfaces (and curves) of the coordinate slices.

Three slices are covered: hollow SO(4) (8 spheres, 6 tori), the starred slice
of SO(5) (32 tori, 32 SO(3)-blocks) and the {x11 = x22 = 0} slice of SO(3)
(4 circles).  Each component carries an explicit parametrization whose
entries are polynomials in the domain coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .exact import MPoly, QuadRat, RelationSet, det_exact, matmul, poly_reduce, transpose
from .somodel import (
    ZeroPattern,
    coord_name,
    coord_names,
    hollow_pattern,
    so3_pattern,
    star_pattern,
)

SPHERE2 = "Sphere2"
TORUS = "Torus2x2"
SO3BLOCK = "SO3Block"
CIRCLE3 = "Circle3"

SIGN_ORDER = ("++", "+-", "-+", "--")


class ContainmentError(AssertionError):
    """A parametrization fails to land in the sliced group."""

    def __init__(self, component: str, what: str, poly: MPoly):
        super().__init__(f"{component}: {what} reduces to {poly.to_text()}")
        self.component = component
        self.poly = poly


@dataclass(frozen=True, eq=False)
class Component:
    id: str
    n: int
    kind: str
    params: tuple[str, ...]
    domain: tuple[tuple[str, ...], ...]  # a 3-tuple is a unit sphere, 2-tuples are unit circles
    entry_map: tuple[tuple[MPoly, ...], ...]
    zero_pattern: ZeroPattern
    sign_data: tuple[int, ...]
    info: dict = field(default_factory=dict, hash=False)

    def __repr__(self):
        return f"Component({self.id})"

    @property
    def group_key(self) -> frozenset:
        return self.zero_pattern.zeros

    @property
    def dimension(self) -> int:
        return 1 if self.kind == CIRCLE3 else 2

    def relations(self) -> RelationSet:
        if len(self.domain) == 1 and len(self.domain[0]) == 3:
            return RelationSet.sphere(self.params, self.domain[0])
        return RelationSet.circles(self.params, self.domain)

    def domain_polys(self) -> list[MPoly]:
        out = []
        for grp in self.domain:
            q = MPoly.const(self.params, Fraction(-1))
            for v in grp:
                q = q + MPoly.var(self.params, v) ** 2
            out.append(q)
        return out

    def fixed_entries(self) -> dict[tuple[int, int], Fraction]:
        out = {}
        for i, row in enumerate(self.entry_map):
            for j, e in enumerate(row):
                if e.is_constant() and not e.is_zero():
                    out[(i + 1, j + 1)] = e.constant_value()
        return out

    def linear_conditions(self) -> list[MPoly]:
        """Affine equations in matrix coordinates that, together with SO(n),
        cut out exactly this component: structural zeros, fixed +-1 entries and
        sign-linked repetitions of a parameter."""
        names = coord_names(self.n)
        conds: list[MPoly] = []
        occurrences: dict[str, list[tuple[Fraction, str]]] = {}
        for i, row in enumerate(self.entry_map):
            for j, e in enumerate(row):
                x = coord_name(i + 1, j + 1)
                if e.is_zero():
                    conds.append(MPoly.var(names, x))
                elif e.is_constant():
                    conds.append(MPoly.linear(names, {x: 1}, -e.constant_value()))
                elif e.degree() == 1 and len(e.terms) == 1:
                    (exp, c), = e.terms.items()
                    p = e.vars[exp.index(1)]
                    occurrences.setdefault(p, []).append((Fraction(c), x))
        for p, occ in occurrences.items():
            c0, x0 = occ[0]
            for c, x in occ[1:]:
                # entry = c * p  =>  p = entry / c
                conds.append(MPoly.linear(names, {x: 1 / c, x0: -1 / c0}))
        return conds

    def base_point(self) -> tuple:
        """A convenient exact domain point: every sphere/circle at its first axis point."""
        vals = []
        for grp in self.domain:
            vals.extend([Fraction(1)] + [Fraction(0)] * (len(grp) - 1))
        return tuple(vals)


# ---------------------------------------------------------------------------
# builders


def _mat(params, n):
    return [[MPoly(params) for _ in range(n)] for _ in range(n)]


def _fill_block(M, params, rows, cols, u: str, v: str, sign: int):
    """Rotation [[u,-v],[v,u]] (sign +1) or reflection [[u,v],[v,-u]] (sign -1)."""
    U, V = MPoly.var(params, u), MPoly.var(params, v)
    r1, r2 = rows
    c1, c2 = cols
    if sign > 0:
        M[r1][c1], M[r1][c2], M[r2][c1], M[r2][c2] = U, -V, V, U
    else:
        M[r1][c1], M[r1][c2], M[r2][c1], M[r2][c2] = U, V, V, -U


def _freeze(M) -> tuple[tuple[MPoly, ...], ...]:
    return tuple(tuple(r) for r in M)


def _zeros_of(M) -> set[tuple[int, int]]:
    return {(i + 1, j + 1) for i, row in enumerate(M) for j, e in enumerate(row) if e.is_zero()}


def _det_at(M, params, point) -> Fraction:
    asg = dict(zip(params, point))
    return det_exact([[e.eval(asg) for e in row] for row in M])


def _sgn(s: str) -> int:
    return 1 if s == "+" else -1


def _sstr(v: int) -> str:
    return "+" if v > 0 else "-"


SPHERE_LABELS = ("+++", "-++", "+-+", "++-", "--+", "-+-", "+--", "---")
TORUS_PATTERNS = {
    "(12)(34)": (((1, 2), (3, 4)), ((3, 4), (1, 2))),
    "(13)(24)": (((1, 3), (2, 4)), ((2, 4), (1, 3))),
    "(14)(23)": (((1, 4), (2, 3)), ((2, 3), (1, 4))),
}


def _sphere(lower: str) -> Component:
    params = ("x", "y", "z")
    x, y, z = (MPoly.var(params, v) for v in params)
    zero = MPoly(params)
    base = [
        [zero, x, -y, z],
        [x, zero, z, y],
        [y, z, zero, -x],
        [z, -y, -x, zero],
    ]
    col_signs = [1] + [_sgn(s) for s in lower]
    top = col_signs[1] * col_signs[2] * col_signs[3]
    M = [[base[i][j] * (col_signs[j] * (top if i == 0 else 1)) for j in range(4)] for i in range(4)]
    cid = f"S{lower}^{_sstr(top)}"
    return Component(
        cid, 4, SPHERE2, params, (params,), _freeze(M), ZeroPattern(4, _zeros_of(M)),
        (top,) + tuple(col_signs[1:]), {"lower": lower, "top": top},
    )


def _hso4_torus(label: str, sign: int) -> Component:
    params = ("x", "y", "z", "w")
    M = _mat(params, 4)
    (rows_a, cols_a), (rows_b, cols_b) = TORUS_PATTERNS[label]
    # the block through row 1 carries (z, w), the other one (x, y)
    _fill_block(M, params, [r - 1 for r in rows_a], [c - 1 for c in cols_a], "z", "w", sign)
    _fill_block(M, params, [r - 1 for r in rows_b], [c - 1 for c in cols_b], "x", "y", sign)
    cid = f"T{label}{_sstr(sign)}"
    return Component(
        cid, 4, TORUS, params, (("x", "y"), ("z", "w")), _freeze(M), ZeroPattern(4, _zeros_of(M)),
        (sign, sign), {"blocks": TORUS_PATTERNS[label], "pattern": label},
    )


@lru_cache(maxsize=None)
def hso4_components() -> tuple[Component, ...]:
    """The 8 spheres (Table 1 row order) followed by the 6 tori (column order)."""
    spheres = [_sphere(lbl) for lbl in SPHERE_LABELS]
    tori = [_hso4_torus(lbl, s) for lbl in TORUS_PATTERNS for s in (1, -1)]
    return tuple(spheres + tori)


# --- SO(3) slice -----------------------------------------------------------


def _so3_circle(fixed: tuple[int, int], sign: int) -> Component:
    params = ("c", "s")
    M = _mat(params, 3)
    i, j = fixed
    M[i - 1][j - 1] = MPoly.const(params, Fraction(sign))
    rows = [r for r in range(3) if r != i - 1]
    cols = [c for c in range(3) if c != j - 1]
    # block det must be -sign for total det 1 (checked below)
    _fill_block(M, params, rows, cols, "c", "s", -sign)
    if _det_at(M, params, (1, 0)) != 1:
        _fill_block(M, params, rows, cols, "c", "s", sign)
    cid = f"X{i}{j}{_sstr(sign)}"
    return Component(
        cid, 3, CIRCLE3, params, (params,), _freeze(M), ZeroPattern(3, _zeros_of(M)), (sign,),
        {"fixed": fixed},
    )


@lru_cache(maxsize=None)
def so3_slice_components() -> tuple[Component, ...]:
    return tuple(_so3_circle(pos, s) for pos in ((1, 2), (2, 1)) for s in (1, -1))


# --- starred SO(5) -----------------------------------------------------------

STAR = star_pattern()

# the two printed families of SO(3)-block positions, in printed order
SO3BLOCK_PAIRS = (
    ((1, 4), (2, 1)), ((2, 1), (3, 2)), ((3, 2), (4, 3)), ((4, 3), (1, 4)),
    ((1, 3), (2, 4)), ((2, 4), (3, 1)), ((3, 1), (4, 2)), ((4, 2), (1, 3)),
)

# the displayed torus T_{12+-}, used as anchor and for the pattern consistency check
T12_DISPLAY = (
    ("0", "0", "0", "x1", "-x2"),
    ("0", "0", "0", "x2", "x1"),
    ("y1", "y2", "0", "0", "0"),
    ("0", "0", "1", "0", "0"),
    ("y2", "-y1", "0", "0", "0"),
)


def check_star_pattern(zp: ZeroPattern = STAR) -> None:
    """Both textual pins of the 5x5 pattern must agree with ``zp``."""
    display_zeros = {(i + 1, j + 1) for i, r in enumerate(T12_DISPLAY) for j, e in enumerate(r) if e == "0"}
    if not zp.zeros <= display_zeros:
        raise AssertionError("pattern zero not zero in the displayed T12+- matrix")
    forbidden = {(i, k) for i in range(1, 5) for k in (i, i % 4 + 1)}
    if forbidden != set(zp.zeros):
        raise AssertionError("pattern disagrees with sigma(i) not in {i, i+1 mod 4}")


def _allowed(r, c, zp=STAR):
    return (r, c) not in zp.zeros


@lru_cache(maxsize=None)
def star_partitions():
    """All 2+2+1 block partitions of the starred pattern.

    Returns ``(blocks, partitions)``: ``blocks`` lists the 2x2 blocks
    ``(rows, cols)`` in cyclic order anchored on the displayed T12 torus;
    ``partitions[k]`` is ``(k, k+1 mod 8, singleton)`` with 0-based block
    indices and a 1-based singleton position.
    """
    rng = range(1, 6)
    found = {}
    for R1 in itertools.combinations(rng, 2):
        for R2 in itertools.combinations([r for r in rng if r not in R1], 2):
            (r3,) = [r for r in rng if r not in R1 + R2]
            for C1 in itertools.combinations(rng, 2):
                for C2 in itertools.combinations([c for c in rng if c not in C1], 2):
                    (c3,) = [c for c in rng if c not in C1 + C2]
                    if (
                        all(_allowed(r, c) for r in R1 for c in C1)
                        and all(_allowed(r, c) for r in R2 for c in C2)
                        and _allowed(r3, c3)
                    ):
                        key = frozenset([(R1, C1), (R2, C2)])
                        found[key] = (r3, c3)
    adj: dict = {}
    for key in found:
        a, b = tuple(key)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if len(found) != 8 or any(len(v) != 2 for v in adj.values()) or len(adj) != 8:
        raise AssertionError("starred pattern does not give an 8-cycle of 2x2 blocks")
    a1 = ((1, 2), (4, 5))
    a2 = ((3, 5), (1, 2))
    order = [a1, a2]
    while len(order) < 8:
        nxt = [b for b in adj[order[-1]] if b != order[-2]]
        order.append(nxt[0])
    if a1 not in adj[order[-1]]:
        raise AssertionError("block adjacency is not a cycle")
    parts = []
    for k in range(8):
        key = frozenset([order[k], order[(k + 1) % 8]])
        parts.append((k, (k + 1) % 8, found[key]))
    return tuple(order), tuple(parts)


def star_so3_pairs() -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs of +-1 positions whose complementary 3x3 has exactly one pattern zero."""
    pos = [(r, c) for r in range(1, 6) for c in range(1, 6) if _allowed(r, c)]
    out = []
    for a, b in itertools.combinations(pos, 2):
        if a[0] == b[0] or a[1] == b[1]:
            continue
        rows = [r for r in range(1, 6) if r not in (a[0], b[0])]
        cols = [c for c in range(1, 6) if c not in (a[1], b[1])]
        if sum(_allowed(r, c) for r in rows for c in cols) == 8:
            out.append((a, b))
    return out


def _star_torus(k: int, signs: str) -> Component:
    blocks, parts = star_partitions()
    _, k2, single = parts[k]
    params = ("x1", "x2", "y1", "y2")
    M = _mat(params, 5)
    s1, s2 = _sgn(signs[0]), _sgn(signs[1])
    for (rows, cols), (u, v), s in ((blocks[k], ("x1", "x2"), s1), (blocks[k2], ("y1", "y2"), s2)):
        _fill_block(M, params, [r - 1 for r in rows], [c - 1 for c in cols], u, v, s)
    r, c = single
    M[r - 1][c - 1] = MPoly.const(params, Fraction(1))
    d = _det_at(M, params, (1, 0, 1, 0))
    M[r - 1][c - 1] = MPoly.const(params, Fraction(1) / d)
    cid = f"T{k + 1}{k2 + 1}{signs}"
    return Component(
        cid, 5, TORUS, params, (("x1", "x2"), ("y1", "y2")), _freeze(M), ZeroPattern(5, _zeros_of(M)),
        (s1, s2), {"blocks": (k, k2), "single": single, "pattern": f"T{k + 1}{k2 + 1}"},
    )


def _so3_block_matrix(params, zero_at: tuple[int, int], s: int):
    """3x3 orthogonal matrix with a zero at ``zero_at`` (0-based), bilinear in two circles."""
    a1, a2, b1, b2 = (MPoly.var(params, v) for v in params)
    z = MPoly(params)
    # zero in the corner: [[0, b^T], [a, s * a_perp b_perp^T]], a_perp = (-a2, a1)
    M0 = [
        [z, b1, b2],
        [a1, (a2 * b2) * s, (-a2 * b1) * s],
        [a2, (-a1 * b2) * s, (a1 * b1) * s],
    ]
    p, q = zero_at
    rp = list(range(3))
    rp[0], rp[p] = rp[p], rp[0]
    cp = list(range(3))
    cp[0], cp[q] = cp[q], cp[0]
    return [[M0[rp[i]][cp[j]] for j in range(3)] for i in range(3)]


def _star_so3block(pair, signs: str) -> Component:
    params = ("a1", "a2", "b1", "b2")
    (i, j), (k, l) = pair
    s1, s2 = _sgn(signs[0]), _sgn(signs[1])
    rows = [r for r in range(1, 6) if r not in (i, k)]
    cols = [c for c in range(1, 6) if c not in (j, l)]
    zeros_in = [(ri, ci) for ri, r in enumerate(rows) for ci, c in enumerate(cols) if not _allowed(r, c)]
    if len(zeros_in) != 1:
        raise ValueError(f"{pair} is not a valid SO(3)-block pair")
    for s in (1, -1):
        M = _mat(params, 5)
        M[i - 1][j - 1] = MPoly.const(params, Fraction(s1))
        M[k - 1][l - 1] = MPoly.const(params, Fraction(s2))
        B = _so3_block_matrix(params, zeros_in[0], s)
        for ri, r in enumerate(rows):
            for ci, c in enumerate(cols):
                M[r - 1][c - 1] = B[ri][ci]
        if _det_at(M, params, (1, 0, 1, 0)) == 1:
            break
    cid = f"C({i},{j})({k},{l}){signs}"
    return Component(
        cid, 5, SO3BLOCK, params, (("a1", "a2"), ("b1", "b2")), _freeze(M), ZeroPattern(5, _zeros_of(M)),
        (s1, s2), {"pair": pair, "block_rows": tuple(rows), "block_cols": tuple(cols),
                   "pattern": f"C({i},{j})({k},{l})"},
    )


@lru_cache(maxsize=None)
def so5star_components() -> tuple[Component, ...]:
    """32 tori (T12..T81, signs ++,+-,-+,--) then 32 SO(3)-blocks in printed order."""
    check_star_pattern()
    valid = {frozenset(p) for p in star_so3_pairs()}
    if valid != {frozenset(p) for p in SO3BLOCK_PAIRS}:
        raise AssertionError("printed SO(3)-block pairs differ from the enumerated ones")
    tori = [_star_torus(k, s) for k in range(8) for s in SIGN_ORDER]
    blocks = [_star_so3block(p, s) for p in SO3BLOCK_PAIRS for s in SIGN_ORDER]
    return tuple(tori + blocks)


def catalog(name: str) -> tuple[Component, ...]:
    return {"hso4": hso4_components, "so5star": so5star_components, "so3": so3_slice_components}[name]()


def slice_pattern(name: str) -> ZeroPattern:
    return {"hso4": hollow_pattern(4), "so5star": STAR, "so3": so3_pattern()}[name]


def by_id(components: Sequence[Component], cid: str) -> Component:
    for c in components:
        if c.id == cid:
            return c
    raise KeyError(cid)


# ---------------------------------------------------------------------------
# operations


def _on_domain(c: Component, params: Sequence) -> bool:
    exact = all(not isinstance(v, (float, complex, np.floating, np.complexfloating)) for v in params)
    asg = dict(zip(c.params, params))
    for q in c.domain_polys():
        val = q.eval(asg)
        if exact:
            if val != 0:
                return False
        elif abs(complex(val)) > 1e-12:
            return False
    return True


def parametrize(c: Component, params: Sequence) -> list[list]:
    """Matrix of ``c`` at a domain point (flat tuple in ``c.params`` order).

    For circles-only domains an angle per circle is also accepted when
    ``len(params)`` equals the number of circles.
    """
    params = list(params)
    if len(params) != len(c.params):
        if len(params) == len(c.domain) and all(len(g) == 2 for g in c.domain):
            params = [f(float(t)) for t in params for f in (np.cos, np.sin)]
        else:
            raise ValueError(f"{c.id} takes {len(c.params)} parameters")
    if not _on_domain(c, params):
        raise ValueError(f"parameters {params} are off the domain of {c.id}")
    asg = dict(zip(c.params, params))
    return [[e.eval(asg) if not e.is_zero() else 0 for e in row] for row in c.entry_map]


def _is_exact(m) -> bool:
    return all(not isinstance(v, (float, complex, np.floating, np.complexfloating)) for r in m for v in r)


def in_group(m, tol: float = 1e-9) -> bool:
    """Orthogonal with determinant one (exact when the entries are exact)."""
    n = len(m)
    if _is_exact(m):
        mmt = matmul(m, transpose(m))
        if any(mmt[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
            return False
        return det_exact(m) == 1
    a = np.array([[complex(v) for v in r] for r in m])
    if np.max(np.abs(a @ a.T - np.eye(n))) > tol:
        return False
    return abs(np.linalg.det(a) - 1) <= tol


def membership(c: Component, m, tol: float = 1e-9) -> bool:
    """True iff ``m`` lies on ``c``: ``m`` is in SO(n) and satisfies the
    component's linear conditions (zeros, fixed entries, sign links)."""
    if len(m) != c.n or any(len(r) != c.n for r in m):
        raise ValueError("matrix size does not match the component")
    if not in_group(m, tol):
        return False
    asg = {coord_name(i + 1, j + 1): m[i][j] for i in range(c.n) for j in range(c.n)}
    exact = _is_exact(m)
    for cond in linear_conditions_of(c):
        v = cond.eval(asg)
        if exact:
            if v != 0:
                return False
        elif abs(complex(v)) > tol:
            return False
    return True


@lru_cache(maxsize=None)
def linear_conditions_of(c: Component) -> tuple[MPoly, ...]:
    """Cached :meth:`Component.linear_conditions` (components hash by identity)."""
    return tuple(c.linear_conditions())


@dataclass
class ContainmentCertificate:
    component: str
    orthogonality_entries: int
    det: str
    reduced_to_zero: bool = True


def verify_containment(c: Component) -> ContainmentCertificate:
    """Symbolic check that P P^T - I reduces to 0 and det P to 1 on the domain."""
    rels = c.relations()
    P = [list(r) for r in c.entry_map]
    PPt = matmul(P, transpose(P))
    count = 0
    for i in range(c.n):
        for j in range(i, c.n):
            e = PPt[i][j] - (1 if i == j else 0)
            r = poly_reduce(e, rels)
            if not r.is_zero():
                raise ContainmentError(c.id, f"(P P^T - I)[{i + 1},{j + 1}]", r)
            count += 1
    d = poly_reduce(det_exact(P) - 1, rels)
    if not d.is_zero():
        raise ContainmentError(c.id, "det P - 1", d)
    return ContainmentCertificate(c.id, count, "1")


def mutate(c: Component, pos: tuple[int, int]) -> Component:
    """Copy of ``c`` with the sign of one entry flipped (for negative tests)."""
    M = [list(r) for r in c.entry_map]
    i, j = pos
    M[i - 1][j - 1] = -M[i - 1][j - 1]
    return Component(c.id + "*", c.n, c.kind, c.params, c.domain, _freeze(M), c.zero_pattern, c.sign_data, c.info)


def degree_metadata(c: Component) -> int:
    """Nominal degree by kind (checked numerically by the degree module)."""
    return {SPHERE2: 2, TORUS: 4, SO3BLOCK: 8, CIRCLE3: 2}[c.kind]


def quadruples(components: Sequence[Component]) -> list[list[Component]]:
    groups: dict = {}
    for c in components:
        groups.setdefault(c.group_key, []).append(c)
    return list(groups.values())


def group_label(group: Sequence[Component]) -> str:
    return group[0].info.get("pattern", group[0].id)


def random_domain_point(c: Component, rng: np.random.Generator) -> tuple[float, ...]:
    vals = []
    for grp in c.domain:
        v = rng.normal(size=len(grp))
        v /= np.linalg.norm(v)
        vals.extend(float(t) for t in v)
    return tuple(vals)


def rational_domain_point(c: Component, rng: np.random.Generator) -> tuple[Fraction, ...]:
    """Exact domain point via the stereographic rational parametrization."""
    while True:
        vals = _rational_attempt(c, rng)
        # generic across groups too: tori meet spheres where |x| = |z|, |y| = |w|
        if len({abs(v) for v in vals}) == len(vals):
            return tuple(vals)


def _rational_attempt(c: Component, rng: np.random.Generator) -> list[Fraction]:
    vals: list[Fraction] = []
    for grp in c.domain:
        while True:
            ts = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10))) for _ in range(len(grp) - 1)]
            s = sum(t * t for t in ts)
            pt = [2 * t / (1 + s) for t in ts] + [(1 - s) / (1 + s)]
            # generic: no zero and no coincident absolute values
            if all(v != 0 for v in pt) and len({abs(v) for v in pt}) == len(pt):
                break
        vals.extend(pt)
    return vals


def quad_point_example() -> QuadRat:
    return QuadRat.sqrt_of(Fraction(1, 3), 3)
