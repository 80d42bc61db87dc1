"""Total-degree homotopy continuation for square polynomial systems.

All paths of a system are tracked together as one batch of numpy arrays; each
path keeps its own ``t`` and step size.  Tracking happens on a random affine
chart of projective space so that paths heading to infinity stay bounded.
"""

from __future__ import annotations

import cmath
import itertools
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .exact import MPoly

log = logging.getLogger(__name__)

MAX_TOTAL_DEGREE = 2**20


def _to_complex(c) -> complex:
    return complex(float(c)) if not isinstance(c, complex) else c


class CompiledSystem:
    """Numerical evaluator for a list of polynomials over the same variables.

    Evaluation is batched: points have shape ``(P, nvars)``.  Polynomials of
    degree <= 2 use dense quadratic forms; higher degrees use a monomial table.
    """

    def __init__(self, polys: Sequence[MPoly], variables: Sequence[str] | None = None):
        if not polys:
            raise ValueError("empty system")
        self.vars = tuple(variables or polys[0].vars)
        for p in polys:
            if p.vars != self.vars:
                p_used = p.used_vars()
                if not p_used <= set(self.vars):
                    raise ValueError("polynomial uses unknown variables")
        self.m = len(polys)
        self.nv = len(self.vars)
        self.degrees = [max(p.degree(), 0) for p in polys]
        idx = {v: i for i, v in enumerate(self.vars)}
        self.quadratic = max(self.degrees) <= 2
        terms = []
        for p in polys:
            tl = []
            for e, c in p.terms.items():
                ee = [0] * self.nv
                for v, k in zip(p.vars, e):
                    if k:
                        ee[idx[v]] += k
                tl.append((tuple(ee), _to_complex(c)))
            terms.append(tl)
        if self.quadratic:
            N = self.nv
            self.Q = np.zeros((self.m, N, N), dtype=complex)
            self.L = np.zeros((self.m, N), dtype=complex)
            self.C = np.zeros(self.m, dtype=complex)
            for i, tl in enumerate(terms):
                for e, c in tl:
                    nz = [k for k, v in enumerate(e) if v]
                    d = sum(e)
                    if d == 0:
                        self.C[i] += c
                    elif d == 1:
                        self.L[i, nz[0]] += c
                    elif len(nz) == 1:
                        self.Q[i, nz[0], nz[0]] += c
                    else:
                        self.Q[i, nz[0], nz[1]] += c / 2
                        self.Q[i, nz[1], nz[0]] += c / 2
            self._QQ = (self.Q + self.Q.transpose(0, 2, 1)).reshape(self.m * N, N)
        else:
            monos = sorted({e for tl in terms for e, _ in tl})
            pos = {e: k for k, e in enumerate(monos)}
            self.E = np.array(monos, dtype=int)
            self.Cm = np.zeros((self.m, len(monos)), dtype=complex)
            for i, tl in enumerate(terms):
                for e, c in tl:
                    self.Cm[i, pos[e]] += c

    # -- evaluation ----------------------------------------------------------
    def _monomials(self, X, skip: int | None = None):
        P = X.shape[0]
        mon = np.ones((P, self.E.shape[0]), dtype=complex)
        for k in range(self.nv):
            if k == skip:
                continue
            col = self.E[:, k]
            for d in range(1, col.max() + 1):
                mask = col == d
                if mask.any():
                    mon[:, mask] *= X[:, k : k + 1] ** d
        return mon

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return self.eval_jac(X)[0]

    def jacobian(self, X: np.ndarray) -> np.ndarray:
        return self.eval_jac(X)[1]

    def eval_jac(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Values ``(P, m)`` and Jacobians ``(P, m, nvars)`` in one pass."""
        X = np.atleast_2d(X)
        P = X.shape[0]
        if self.quadratic:
            Jq = (self._QQ @ X.T).T.reshape(P, self.m, self.nv)
            F = 0.5 * (Jq @ X[:, :, None])[:, :, 0] + X @ self.L.T + self.C
            return F, Jq + self.L[None]
        F = self._monomials(X) @ self.Cm.T
        J = np.zeros((P, self.m, self.nv), dtype=complex)
        for k in range(self.nv):
            col = self.E[:, k]
            if not col.any():
                continue
            mon = self._monomials(X, skip=k)
            xk = X[:, k : k + 1]
            fac = np.where(col > 0, col * xk ** np.maximum(col - 1, 0), 0)
            J[:, :, k] = (mon * fac) @ self.Cm.T
        return F, J


def homogenize(p: MPoly, h: str, degree: int | None = None) -> MPoly:
    d = p.degree() if degree is None else degree
    names = (h,) + p.vars
    terms = {}
    for e, c in p.terms.items():
        terms[(d - sum(e),) + e] = c
    return MPoly(names, terms)


@dataclass
class TrackConfig:
    initial_step: float = 0.02
    min_step: float = 1e-10
    max_step: float = 0.05
    corrector_tol: float = 1e-10
    path_tol: float = 1e-8
    max_newton: int = 3
    divergence_bound: float = 1e8
    endgame_radius: float = 1e-6
    real_tol: float = 1e-8
    dedup_tol: float = 1e-6
    singular_cond: float = 1e10
    seed: int = 0
    threads: int = 1
    chunk: int = 2048
    max_fail_fraction: float = 0.01

    def __post_init__(self):
        if not (0 < self.min_step <= self.initial_step <= self.max_step):
            raise ValueError("need 0 < min_step <= initial_step <= max_step")
        for name in ("corrector_tol", "path_tol", "real_tol", "dedup_tol", "endgame_radius"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def gamma(self) -> complex:
        rng = np.random.default_rng([self.seed, 0x9A3])
        return cmath.exp(2j * np.pi * rng.random())

    def describe(self) -> dict:
        return {
            "seed": self.seed,
            "corrector_tol": self.corrector_tol,
            "real_tol": self.real_tol,
            "dedup_tol": self.dedup_tol,
            "max_step": self.max_step,
            "min_step": self.min_step,
            "divergence_bound": self.divergence_bound,
        }


@dataclass
class SolutionSet:
    variables: tuple[str, ...]
    points: list[np.ndarray] = field(default_factory=list)
    real: list[bool] = field(default_factory=list)
    singular: list[bool] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)
    tracked: int = 0
    finite: int = 0
    diverged: int = 0
    failed: int = 0

    def __len__(self):
        return len(self.points)

    def real_points(self) -> list[np.ndarray]:
        return [p for p, r in zip(self.points, self.real) if r]

    def as_array(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, len(self.variables)), dtype=complex)
        return np.array(self.points)

    def to_json(self) -> str:
        return json.dumps(
            {
                "variables": list(self.variables),
                "points": [[[z.real, z.imag] for z in p] for p in self.points],
                "real": self.real,
                "singular": self.singular,
                "residuals": self.residuals,
                "stats": {
                    "tracked": self.tracked,
                    "finite": self.finite,
                    "diverged": self.diverged,
                    "failed": self.failed,
                },
            }
        )


class TrackingError(RuntimeError):
    pass


def _bsolve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched solve; singular members get NaN."""
    try:
        return np.linalg.solve(A, b[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.full(b.shape, np.nan + 0j)
        for i in range(A.shape[0]):
            try:
                out[i] = np.linalg.solve(A[i], b[i])
            except np.linalg.LinAlgError:
                pass
        return out


class _Homotopy:
    def __init__(self, target: CompiledSystem, start: CompiledSystem, patch: np.ndarray, gamma: complex):
        self.F, self.G, self.a, self.gamma = target, start, patch, gamma

    def _parts(self, Z):
        f, jf = self.F.eval_jac(Z)
        g, jg = self.G.eval_jac(Z)
        return f, jf, self.gamma * g, self.gamma * jg

    def _assemble(self, Z, t, f, jf, g, jg):
        tc = t[:, None]
        val = (1 - tc) * g + tc * f
        H = np.concatenate([val, (Z @ self.a - 1)[:, None]], axis=1)
        J = (1 - tc[:, :, None]) * jg + tc[:, :, None] * jf
        arow = np.broadcast_to(self.a, (Z.shape[0], 1, self.a.size))
        return H, np.concatenate([J, arow], axis=1)

    def newton_step(self, Z, t):
        f, jf, g, jg = self._parts(Z)
        H, Hz = self._assemble(Z, t, f, jf, g, jg)
        return _bsolve(Hz, -H)

    def velocity(self, Z, t):
        f, jf, g, jg = self._parts(Z)
        _, Hz = self._assemble(Z, t, f, jf, g, jg)
        Ht = np.concatenate([f - g, np.zeros((Z.shape[0], 1))], axis=1)
        return _bsolve(Hz, -Ht)


def _track_batch(hom: _Homotopy, Z: np.ndarray, cfg: TrackConfig):
    P = Z.shape[0]
    t = np.zeros(P)
    h = np.full(P, cfg.initial_step)
    succ = np.zeros(P, dtype=int)
    status = np.zeros(P, dtype=int)  # 0 running, 1 reached t=1, 2 stalled
    Z = Z.copy()
    for _ in range(200000):
        act = np.flatnonzero(status == 0)
        if act.size == 0:
            break
        z, tt = Z[act], t[act]
        hh = np.minimum(h[act], 1.0 - tt)
        # RK4 predictor on the Davidenko equation
        k1 = hom.velocity(z, tt)
        k2 = hom.velocity(z + 0.5 * hh[:, None] * k1, tt + 0.5 * hh)
        k3 = hom.velocity(z + 0.5 * hh[:, None] * k2, tt + 0.5 * hh)
        k4 = hom.velocity(z + hh[:, None] * k3, tt + hh)
        zp = z + (hh[:, None] / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        tn = tt + hh
        ok = np.all(np.isfinite(zp), axis=1)
        scale = 1.0 + np.linalg.norm(np.nan_to_num(zp), axis=1)
        first = None
        conv = np.zeros(act.size, dtype=bool)
        for it in range(cfg.max_newton):
            dz = hom.newton_step(zp, tn)
            dz = np.nan_to_num(dz, nan=1e300)
            zp = zp + dz
            nrm = np.linalg.norm(dz, axis=1)
            if first is None:
                first = nrm
            conv |= nrm <= cfg.path_tol * scale
        ok &= conv & (first <= 0.1 * scale) & np.all(np.isfinite(zp), axis=1)
        acc, rej = act[ok], act[~ok]
        Z[acc] = zp[ok]
        t[acc] = tn[ok]
        succ[acc] += 1
        grow = acc[succ[acc] >= 5]
        h[grow] = np.minimum(2 * h[grow], cfg.max_step)
        succ[grow] = 0
        status[acc[t[acc] >= 1.0]] = 1
        h[rej] /= 2
        succ[rej] = 0
        stalled = rej[h[rej] < cfg.min_step]
        status[stalled] = 2
    return Z, t, status


def _newton_affine(F: CompiledSystem, X: np.ndarray, iters: int = 8):
    for _ in range(iters):
        Z = np.concatenate([np.ones((X.shape[0], 1)), X], axis=1)
        J = F.jacobian(Z)[:, :, 1:]
        r = F(Z)
        dx = _bsolve(J, -r)
        bad = ~np.all(np.isfinite(dx), axis=1)
        dx[bad] = 0
        X = X + dx
    Z = np.concatenate([np.ones((X.shape[0], 1)), X], axis=1)
    return X, np.max(np.abs(F(Z)), axis=1) if X.shape[0] else np.zeros(0), F.jacobian(Z)[:, :, 1:]


def _start_points(degrees, patch):
    roots = [[cmath.exp(2j * np.pi * k / d) for k in range(d)] for d in degrees]
    pts = []
    for combo in itertools.product(*roots):
        w = np.array((1.0,) + combo, dtype=complex)
        pts.append(w / (patch @ w))
    return np.array(pts)


def _canonical_order(points: list[np.ndarray]) -> list[int]:
    def key(i):
        p = points[i]
        return tuple(v for z in p for v in (round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0))

    return sorted(range(len(points)), key=key)


def track_system(polys: Sequence[MPoly], cfg: TrackConfig | None = None) -> SolutionSet:
    """Solve a square system by total-degree homotopy; returns finite solutions."""
    # diverging paths overflow harmlessly; they are classified afterwards
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return _track_system(polys, cfg)


def _track_system(polys: Sequence[MPoly], cfg: TrackConfig | None) -> SolutionSet:
    cfg = cfg or TrackConfig()
    polys = list(polys)
    variables = polys[0].vars
    if len(polys) != len(variables):
        raise ValueError(f"system is not square: {len(polys)} equations, {len(variables)} variables")
    degrees = [p.degree() for p in polys]
    if min(degrees) < 1:
        raise ValueError("constant or zero equation in system")
    total = int(np.prod(degrees))
    if total > MAX_TOTAL_DEGREE:
        raise ValueError(f"total degree {total} exceeds {MAX_TOTAL_DEGREE}")

    hname = "_h0"
    hvars = (hname,) + tuple(variables)
    target_h = CompiledSystem([homogenize(p, hname) for p in polys], hvars)
    start_polys = []
    for i, (v, d) in enumerate(zip(variables, degrees)):
        e_v = [0] * len(hvars)
        e_v[i + 1] = d
        e_h = [0] * len(hvars)
        e_h[0] = d
        start_polys.append(MPoly(hvars, {tuple(e_v): 1, tuple(e_h): -1}))
    start_h = CompiledSystem(start_polys, hvars)
    affine = target_h  # evaluated at z0 = 1

    rng = np.random.default_rng([cfg.seed, 0x5EED])
    patch = rng.normal(size=len(hvars)) + 1j * rng.normal(size=len(hvars))
    hom = _Homotopy(target_h, start_h, patch, cfg.gamma)
    Z0 = _start_points(degrees, patch)

    chunks = [Z0[i : i + cfg.chunk] for i in range(0, total, cfg.chunk)]
    if cfg.threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(cfg.threads) as ex:
            results = list(ex.map(lambda c: _track_batch(hom, c, cfg), chunks))
    else:
        results = [_track_batch(hom, c, cfg) for c in chunks]
    Z = np.concatenate([r[0] for r in results])
    T = np.concatenate([r[1] for r in results])

    sols = SolutionSet(tuple(variables), tracked=total)
    near_end = T >= 1.0 - cfg.endgame_radius
    z0 = Z[:, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        X = Z[:, 1:] / z0[:, None]
    xnorm = np.linalg.norm(X, axis=1)
    cand = near_end & np.isfinite(xnorm) & (xnorm <= cfg.divergence_bound)
    diverged = near_end & ~cand
    failed = ~near_end

    finite_pts = []
    if cand.any():
        Xr, res, J = _newton_affine(affine, X[cand])
        good = res <= cfg.corrector_tol * (1.0 + np.linalg.norm(Xr, axis=1))
        idx = np.flatnonzero(cand)
        diverged[idx[~good]] = True
        for x, r, j, g in zip(Xr, res, J, good):
            if g:
                finite_pts.append((x, float(r), float(np.linalg.cond(j))))
    sols.finite = len(finite_pts)
    sols.diverged = int(diverged.sum())
    sols.failed = int(failed.sum())
    if total and sols.failed > cfg.max_fail_fraction * total:
        raise TrackingError(f"{sols.failed} of {total} paths failed")

    pts, res, conds = dedup_and_refine(
        [p for p, _, _ in finite_pts],
        cfg.dedup_tol,
        affine,
        residuals=[r for _, r, _ in finite_pts],
        conds=[c for _, _, c in finite_pts],
    )
    order = _canonical_order(pts)
    for i in order:
        sols.points.append(pts[i])
        sols.residuals.append(res[i])
        sols.singular.append(conds[i] > cfg.singular_cond)
        sols.real.append(bool(np.max(np.abs(pts[i].imag), initial=0.0) <= cfg.real_tol))
    return sols


def dedup_and_refine(points, tol: float, system: CompiledSystem | None = None, residuals=None, conds=None):
    """Merge points closer than ``tol`` (inf-norm), refining with Newton first.

    With no ``system`` only the merge is performed and the list of merged
    points is returned.
    """
    pts = [np.asarray(p, dtype=complex) for p in points]
    if not pts:
        return ([], [], []) if system is not None else []
    if system is not None:
        X, res, J = _newton_affine(system, np.array(pts), iters=3)
        pts = list(X)
        residuals = [float(r) for r in res]
        conds = [float(np.linalg.cond(j)) for j in J]
    keep: list[int] = []
    for i, p in enumerate(pts):
        if all(np.max(np.abs(p - pts[k])) > tol for k in keep):
            keep.append(i)
    if system is None:
        return [pts[i] for i in keep]
    return [pts[i] for i in keep], [residuals[i] for i in keep], [conds[i] for i in keep]


def classify_real(sols: SolutionSet, tol: float | None = None) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Split solutions into (real, nonreal) by max imaginary part."""
    real, nonreal = [], []
    for p in sols.points:
        if tol is None:
            tol = 1e-8
        (real if np.max(np.abs(p.imag), initial=0.0) <= tol else nonreal).append(p)
    return real, nonreal


def with_seed(cfg: TrackConfig, seed: int) -> TrackConfig:
    return replace(cfg, seed=seed)
