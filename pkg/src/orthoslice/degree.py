"""Numerical degrees of components and slices, the SO(4) witness set, and the
real-slice search for the starred SO(5) slice."""

from __future__ import annotations

import time
from fractions import Fraction
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import assets
from .catalog import Component, degree_metadata, hso4_components, in_group, linear_conditions_of, membership
from .meet import linear_slice, slice_points
from .somodel import Hyperplane, ZeroPattern, apply_pattern, add_hyperplanes, coord_name, hollow_pattern, orth_equations
from .signedperm import SignedPerm, signed_perms_in_pattern
from .tracker import TrackConfig, TrackingError, with_seed

MAX_RETRIES = 3


class DegreeError(RuntimeError):
    pass


def _random_hyperplanes(n: int, count: int, seed: int, tag: int = 0) -> list[Hyperplane]:
    rng = np.random.default_rng([seed, 0xDE6, tag])
    return [Hyperplane.random(n, rng) for _ in range(count)]


def slice_count(conditions, n: int, hyperplanes: Sequence[Hyperplane], seed: int,
                cfg: TrackConfig | None = None, det_sign: int | None = 1):
    """Complex points of (linear conditions ∩ hyperplanes ∩ O(n)), filtered by det."""
    conds = list(conditions) + [h.form() for h in hyperplanes]
    ls = linear_slice(n, conds)
    if ls is None:
        return [], {"paths": 0, "slice_dim": -1}
    return slice_points(ls, 0, seed, cfg or TrackConfig(seed=seed), det_sign=det_sign)


def component_degree(c: Component, seed: int = 0, cfg: TrackConfig | None = None) -> int:
    """Points of ``c`` on two seed-random rational hyperplanes."""
    if c.dimension != 2:
        raise ValueError("component_degree expects a surface")
    last = None
    for attempt in range(MAX_RETRIES + 1):
        hs = _random_hyperplanes(c.n, 2, seed, attempt)
        try:
            pts, info = slice_count(linear_conditions_of(c), c.n, hs, seed + attempt, cfg)
        except TrackingError as exc:  # pragma: no cover - retried
            last = exc
            continue
        if any(not membership(c, p.real.tolist(), tol=1e-6) for p in pts if np.max(np.abs(p.imag)) < 1e-9):
            raise DegreeError(f"{c.id}: real slice point off the component")
        return len(pts)
    raise DegreeError(f"{c.id}: degree computation failed after retries: {last}")


def degree_sum_check(components: Sequence[Component], seed: int = 0, cfg: TrackConfig | None = None):
    """Per-component degrees and their sum."""
    degs = {}
    for c in components:
        if c.dimension == 2:
            degs[c.id] = component_degree(c, seed, cfg)
        else:
            from .meet import curve_degree_of

            degs[c.id] = curve_degree_of([c], seed, cfg)
    return sum(degs.values()), degs


def full_slice_census(components: Sequence[Component], pattern: ZeroPattern, seed: int = 0,
                      cfg: TrackConfig | None = None):
    """Solve the whole coordinate slice with two random hyperplanes and
    attribute every det(+1) solution to the components containing it."""
    n = pattern.n
    names_conds = [c for c in apply_pattern(orth_equations(n), pattern).linear_forms]
    hs = _random_hyperplanes(n, 2, seed, 99)
    # paths ending on the positive-dimensional det(-1) part may stall; the
    # census against the component degrees is the check that none of the
    # det(+1) points were lost
    cfg = cfg or TrackConfig(seed=seed, max_fail_fraction=0.25)
    pts, info = slice_count(names_conds, n, hs, seed, cfg)
    census = Counter()
    orphans = 0
    for p in pts:
        inc = [c.id for c in components if _near_member(c, p)]
        if not inc:
            orphans += 1
        census.update(inc)
    return len(pts), dict(census), orphans, info


def _near_member(c: Component, p: np.ndarray, tol: float = 1e-6) -> bool:
    """Membership for complex points: linear conditions vanish."""
    asg = {coord_name(i + 1, j + 1): complex(p[i, j]) for i in range(c.n) for j in range(c.n)}
    return all(abs(complex(L.eval(asg))) <= tol for L in linear_conditions_of(c))


# ---------------------------------------------------------------------------
# witness set for SO(4)


@dataclass
class WitnessAsset:
    h1: Hyperplane
    h2: Hyperplane
    points: list

    @classmethod
    def load(cls) -> "WitnessAsset":
        return cls(Hyperplane(assets.H1), Hyperplane(assets.H2), assets.witness_points())

    def system(self):
        return add_hyperplanes(apply_pattern(orth_equations(4), hollow_pattern(4)), [self.h1, self.h2])


@dataclass
class WitnessCertificate:
    exact_ok: list[bool]
    numeric_det_plus: int = 0
    numeric_real: int = 0
    numeric_det_minus: int = 0
    max_match_distance: float = float("nan")
    matched: int = 0
    census: dict = field(default_factory=dict)
    on_one_component: bool = False
    paths: int = 0
    failed_paths: int = 0
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return (
            all(self.exact_ok)
            and len(self.exact_ok) == 40
            and self.numeric_det_plus == 40
            and self.numeric_real == 40
            and self.matched == 40
            and self.max_match_distance <= 1e-8
            and self.on_one_component
            and all(v == (2 if k.startswith("S") else 4) for k, v in self.census.items())
            and len(self.census) == 14
        )

    def to_dict(self) -> dict:
        return {
            "exact_points_ok": sum(self.exact_ok),
            "exact_points": len(self.exact_ok),
            "numeric_det_plus": self.numeric_det_plus,
            "numeric_real": self.numeric_real,
            "numeric_det_minus_reported": self.numeric_det_minus,
            "matched": self.matched,
            "max_match_distance": self.max_match_distance,
            "census": self.census,
            "each_point_on_one_component": self.on_one_component,
            "paths": self.paths,
            "failed_paths": self.failed_paths,
        }


def exact_witness_check(asset: WitnessAsset) -> list[bool]:
    out = []
    for m in asset.points:
        ok = (
            all(m[i][i] == 0 for i in range(4))
            and in_group(m)
            and asset.h1.inner(m) == 0
            and asset.h2.inner(m) == 0
        )
        out.append(bool(ok))
    return out


def verify_witness_so4(seed: int = 0, cfg: TrackConfig | None = None, numeric: bool = True) -> WitnessCertificate:
    t0 = time.perf_counter()
    asset = WitnessAsset.load()
    cert = WitnessCertificate(exact_witness_check(asset))
    comps = hso4_components()
    census = Counter()
    one = True
    for m in asset.points:
        inc = [c.id for c in comps if membership(c, m)]
        one &= len(inc) == 1
        census.update(inc)
    cert.census = {c.id: census.get(c.id, 0) for c in comps}
    cert.on_one_component = one
    if numeric:
        from .tracker import track_system

        cfg = cfg or TrackConfig(seed=seed)
        sys = asset.system()
        sols = track_system(sys.square_part(), cfg)
        cert.paths, cert.failed_paths = sols.tracked, sols.failed
        plus, minus = [], 0
        for x in sols.points:
            X = x.reshape(4, 4)
            d = np.linalg.det(X)
            if abs(d - 1) < 1e-6:
                plus.append(X)
            elif abs(d + 1) < 1e-6:
                minus += 1
        cert.numeric_det_plus = len(plus)
        cert.numeric_det_minus = minus
        real = [X.real for X in plus if np.max(np.abs(X.imag)) <= cfg.real_tol]
        cert.numeric_real = len(real)
        targets = [np.array([[float(v) for v in r] for r in m]) for m in asset.points]
        used = set()
        dmax = 0.0
        for T in targets:
            ds = [np.max(np.abs(T - R)) for R in real]
            if not ds:
                dmax = float("inf")
                break
            k = int(np.argmin(ds))
            if k in used:
                dmax = float("inf")
                break
            used.add(k)
            dmax = max(dmax, ds[k])
        cert.matched = len(used)
        cert.max_match_distance = float(dmax)
    cert.seconds = time.perf_counter() - t0
    return cert


# ---------------------------------------------------------------------------
# search for a totally real slice of SO*(5)


@dataclass
class SliceRecord:
    index: int
    hyperplanes: list  # coefficient matrices as text
    constants: list
    real: int
    total: int
    per_component: dict
    valid: bool = True  # the slice is transverse: every component shows its full degree

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "hyperplanes": self.hyperplanes,
            "constants": self.constants,
            "real": self.real,
            "total": self.total,
            "valid": self.valid,
            "per_component": self.per_component,
        }


def _structured_hyperplane(n: int, support, perms: Sequence[SignedPerm], rng) -> Hyperplane:
    """Random rational hyperplane on ``support`` moved to contain two signed
    permutation matrices of the slice."""
    a, b = rng.choice(len(perms), size=2, replace=False)
    M1, M2 = perms[a].matrix(), perms[b].matrix()
    C = [[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10))) if (i + 1, j + 1) in support else Fraction(0)
          for j in range(n)] for i in range(n)]
    D = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(M1, M2)]

    def ip(A, B):
        return sum(x * y for ra, rb in zip(A, B) for x, y in zip(ra, rb))

    t = -ip(C, D) / ip(D, D)
    C = [[c + t * d for c, d in zip(rc, rd)] for rc, rd in zip(C, D)]
    return Hyperplane(C, ip(C, M1))


def _candidate(index: int, strategy: str, seed: int, support, perms, n: int) -> list[Hyperplane]:
    rng = np.random.default_rng([seed, 0x5EA7C4, index])
    if strategy == "random":
        return [Hyperplane.random(n, rng, support=support) for _ in range(2)]
    if strategy == "structured":
        return [_structured_hyperplane(n, support, perms, rng) for _ in range(2)]
    raise ValueError(f"unknown strategy {strategy!r}")


def evaluate_slice(components: Sequence[Component], hs: Sequence[Hyperplane], seed: int,
                   cfg: TrackConfig | None = None):
    """(real points, complex points, per-component (real, complex)) of the
    slice cut by ``hs``; a component whose paths keep failing counts -1."""
    per = {}
    real = total = 0
    for c in components:
        for attempt in range(MAX_RETRIES + 1):
            try:
                pts, _ = slice_count(linear_conditions_of(c), c.n, hs, seed + 1000 * attempt,
                                     cfg and with_seed(cfg, cfg.seed + 1000 * attempt))
                break
            except TrackingError:
                pts = None
        if pts is None:
            per[c.id] = (0, -1)
            continue
        r = sum(1 for p in pts if np.max(np.abs(p.imag)) <= 1e-8)
        per[c.id] = (r, len(pts))
        real += r
        total += len(pts)
    return real, total, per


def search_real_slice(components: Sequence[Component], strategy: str = "structured", seed: int = 0,
                      budget: int = 1, threads: int = 1, cfg: TrackConfig | None = None):
    """Evaluate ``budget`` candidate hyperplane pairs; return (best, all records).

    A candidate is valid when every component meets it in exactly its degree
    many complex points.  ``best`` is the valid record with the most real
    points (``None`` if no candidate was valid); nothing beyond the best count
    observed over the budget is claimed.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    comps = list(components)
    n = comps[0].n
    zeros = set.intersection(*(set(c.zero_pattern) for c in comps))
    support = {(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if (i, j) not in zeros}
    perms = signed_perms_in_pattern(ZeroPattern(n, zeros), 1)
    degrees = {c.id: degree_metadata(c) for c in comps}

    def run(idx):
        hs = _candidate(idx, strategy, seed, support, perms, n)
        real, total, per = evaluate_slice(comps, hs, seed + idx, cfg)
        return SliceRecord(
            idx,
            [[[str(v) for v in row] for row in h.coeffs] for h in hs],
            [str(h.constant) for h in hs],
            real,
            total,
            {k: list(v) for k, v in per.items()},
            all(per[k][1] == d for k, d in degrees.items()),
        )

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            records = list(ex.map(run, range(budget)))
    else:
        records = [run(i) for i in range(budget)]
    valid = [r for r in records if r.valid]
    best = max(valid, key=lambda r: (r.real, -r.index)) if valid else None
    return best, records
