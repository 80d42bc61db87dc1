"""Verification suites behind the command-line verbs.  Each suite returns a
:class:`~orthoslice.reports.Report`."""

from __future__ import annotations

import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import asdict, dataclass

import numpy as np

from . import assets
from .assets import DERIVED, PUBLISHED, TRIVIAL
from .catalog import (
    SO3BLOCK,
    SPHERE2,
    STAR,
    TORUS,
    ContainmentError,
    degree_metadata,
    hso4_components,
    membership,
    so3_slice_components,
    so5star_components,
    verify_containment,
)
from .correspondence import (
    antipodal_key,
    component_graph,
    count_bijections,
    facet_graph,
    find_bijection,
    mapping_json,
    permutation_key,
    point_classes,
    verify_vertex_correspondence,
)
from .degree import component_degree, full_slice_census, search_real_slice, verify_witness_so4
from .meet import CURVES, MeetError, all_meets, compare_so5_blocks, compare_sphere_torus, curve_degree_of, \
    intersection_points, meet
from .patterns import CENSUS_SYMMETRY, KERNEL, BipartitePattern, SymmetrySpec, iter_orbit_masks, write_orbits
from .patterns.screen import so3_unique_slice_check
from .polytope import (
    cuboctahedron,
    euler_feasibility,
    facet_adjacency,
    hull3,
    polytope_p,
    automorphism_order,
    tetrahedron,
    tolerance_stable,
)
from .reports import Report, Section, Table
from .signedperm import antipodal_pairs, cycle_type, signed_perms_in_pattern
from .somodel import hollow_pattern
from .tracker import TrackConfig

# type map between SO*(5) quadruples and facets of the 16-facet polytope
# (the one admitting an isomorphism; see the correspondence section)
SO5_TYPE_MAP = {"torus-quadruple": "quadrilateral/3xdeg4", "SO3Block-quadruple": "quadrilateral/2xdeg4"}
SO5_TYPE_MAP_ALT = {"torus-quadruple": "quadrilateral/2xdeg4", "SO3Block-quadruple": "quadrilateral/3xdeg4"}
HSO4_TYPE_MAP = {"sphere": "triangle", "torus": "quadrilateral"}


@dataclass
class RunConfig:
    seed: int = 0
    tol_track: float = 1e-8
    tol_real: float = 1e-8
    tol_dedup: float = 1e-6
    threads: int = 1
    expensive: bool = False

    def track(self, **kw) -> TrackConfig:
        return TrackConfig(seed=self.seed, path_tol=self.tol_track, real_tol=self.tol_real,
                           dedup_tol=self.tol_dedup, threads=self.threads, **kw)

    def echo(self) -> dict:
        # thread count is a scheduling detail and is kept out of the payload
        d = asdict(self)
        d.pop("threads")
        return d


@contextmanager
def _timed(report: Report, key: str):
    t0 = time.perf_counter()
    yield
    report.timing[key] = round(time.perf_counter() - t0, 3)


def _certify(sec: Section, comps, key: str):
    ok, bad = 0, []
    for c in comps:
        try:
            verify_containment(c)
            ok += 1
        except ContainmentError as exc:
            bad.append(str(exc))
    sec.check("components in catalog", assets.EXPECTED[key].value, len(comps), key=key)
    sec.check("components certified symbolically", len(comps), ok, note="; ".join(bad))
    return ok


# ---------------------------------------------------------------------------


def verify_so3(cfg: RunConfig) -> Report:
    rep = Report("verify-so3", cfg.echo())
    comps = so3_slice_components()
    with _timed(rep, "certification"):
        sec = rep.section("components")
        _certify(sec, comps, "so3.components")
    with _timed(rep, "meets"):
        sec = rep.section("incidence")
        table = all_meets(comps, seed=cfg.seed, cfg=cfg.track())
        g = component_graph(comps, table.incidence(nonempty=True))
        sec.check("incidence graph (nodes, edges)", (4, 4), g.size, provenance=PUBLISHED)
        sec.check("incidence graph is a 4-cycle (all degrees 2)", [2, 2, 2, 2], [g.degree(a) for a in range(4)],
                  provenance=PUBLISHED)
        pts = intersection_points(comps, table)
        sec.check("intersection points", 4, len(pts), provenance=DERIVED,
                  note="one point per edge of the 4-cycle")
        sec.data["edges"] = sorted(sorted(g.nodes[a] for a in e) for e in g.edges)
    with _timed(rep, "degrees"):
        sec = rep.section("degrees")
        degs = [curve_degree_of([c], cfg.seed, cfg.track()) for c in comps]
        sec.check("circle degrees", [2, 2, 2, 2], degs, provenance=DERIVED, tolerance=f"path_tol={cfg.tol_track}")
        sec.check("degree sum", assets.EXPECTED["so3.degree"].value, sum(degs), key="so3.degree",
                  tolerance=f"path_tol={cfg.tol_track}")
    with _timed(rep, "unique_slice"):
        sec = rep.section("two-zero slices up to symmetry")
        r = so3_unique_slice_check(cfg.seed, cfg=cfg.track())
        sec.check("degree of SO(3)", 8, r.group_degree, key="so3.degree", tolerance=f"path_tol={cfg.tol_track}")
        sec.check("degree-generic orbits", 1, r.generic_count, key="so3.generic_orbits")
        gen = [sorted(p.edges) for p, _, g in r.orbits if g]
        sec.check("generic orbit", [[(1, 1), (2, 2)]], gen, provenance=PUBLISHED,
                  note="two zeros sharing no row or column")
        sec.tables.append(Table("screen", ["zeros", "dimension", "degree", "generic"],
                                [[sorted(p.edges), s.dimension, s.degree, g] for p, s, g in r.orbits]))
    return rep


def verify_hso4(cfg: RunConfig) -> Report:
    rep = Report("verify-hso4", cfg.echo())
    comps = hso4_components()
    tcfg = cfg.track()
    with _timed(rep, "certification"):
        sec = rep.section("decomposition")
        _certify(sec, comps, "hso4.components")
        kinds = Counter(c.kind for c in comps)
        sec.check("spheres", 8, kinds[SPHERE2], key="hso4.spheres")
        sec.check("tori", 6, kinds[TORUS], key="hso4.tori")
    with _timed(rep, "meets"):
        sec = rep.section("sphere-torus incidence")
        try:
            table = all_meets(comps, cross_check=True, seed=cfg.seed, cfg=tcfg)
            cross_ok = True
        except MeetError as exc:
            sec.check("numeric cross-check of exact meets", "consistent", str(exc), False)
            return rep
        inc = table.incidence()
        bad = compare_sphere_torus(inc)
        sec.check("mismatches against the published table", [], bad, provenance=PUBLISHED)
        sec.check("incidence symmetric", True, inc.is_symmetric())
        sec.check("intersection circles", 24, table.curve_count(), key="hso4.curves")
        hp = [r.numeric["hyperplane_points"] // r.curves for r in table.results.values() if r.classification == CURVES]
        sec.check("degree of every circle (points on a random hyperplane)", [2] * 24, hp, provenance=DERIVED,
                  tolerance=f"path_tol={cfg.tol_track}")
        sec.check("numeric cross-check of exact meets", True, cross_ok, provenance=DERIVED,
                  tolerance="1e-8 point match")
        idx = {c.id: k for k, c in enumerate(comps)}
        rows = []
        for sphere, _ in assets.SPHERE_TORUS_TABLE:
            rows.append([sphere] + [inc.entries[idx[sphere]][idx[t]] for t in assets.TORUS_COLUMNS])
        sec.tables.append(Table("curve incidence (spheres x tori)", [""] + list(assets.TORUS_COLUMNS), rows))
    with _timed(rep, "points"):
        sec = rep.section("point intersections")
        pts = intersection_points(comps, table)
        sps = [p.signed_perm for p in pts]
        sec.check("points", 24, len(pts), key="hso4.points")
        pairs = antipodal_pairs(sps)
        sec.check("antipodal pairs", 12, len(pairs), key="hso4.point_pairs")
        sec.check("all are signed double transpositions", True, all(cycle_type(s) == (2, 2) for s in sps),
                  key="hso4.point_pairs")
        sec.check("components through each point", [4] * 24, [len(p.components) for p in pts], provenance=DERIVED)
        allsp = signed_perms_in_pattern(hollow_pattern(4), 1)
        sec.check("hollow signed permutations with det 1", 72, len(allsp), key="hso4.signed_perms")
        four = [s for s in allsp if cycle_type(s) == (4,)]
        sec.check("four-cycle signed permutations", 48, len(four), key="hso4.four_cycle_perms")
        on = [sum(1 for c in comps if membership(c, s.matrix())) for s in four]
        sec.check("four-cycles each on exactly one component", [1] * 48, on, provenance=PUBLISHED)
    with _timed(rep, "degrees"):
        sec = rep.section("degrees")
        degs = {c.id: component_degree(c, cfg.seed, tcfg) for c in comps}
        want = {c.id: 2 if c.kind == SPHERE2 else 4 for c in comps}
        sec.check("component degrees", want, degs, provenance=PUBLISHED, tolerance=f"path_tol={cfg.tol_track}")
        sec.check("degree sum", 40, sum(degs.values()), key="hso4.degree")
        total, census, orphans, info = full_slice_census(comps, hollow_pattern(4), cfg.seed,
                                                         cfg.track(max_fail_fraction=0.25))
        sec.check("full slice solve: det(+1) points", 40, total, key="hso4.degree",
                  tolerance=f"path_tol={cfg.tol_track}")
        sec.check("full slice solve: census equals degrees", want, census, provenance=DERIVED)
        sec.check("full slice solve: points on no component", 0, orphans)
        sec.data["full_slice_paths"] = info["paths"]
    with _timed(rep, "polytope"):
        sec = rep.section("cuboctahedron correspondence")
        C = hull3(cuboctahedron())
        g = component_graph(comps, inc)
        sec.check("component graph (nodes, edges)", (14, 24), g.size, key="hso4.curves")
        fg = facet_graph(C)
        m = find_bijection(g, fg, HSO4_TYPE_MAP)
        sec.check("type-preserving bijection to the cuboctahedron", True, m is not None, provenance=PUBLISHED)
        if m is None:
            return rep
        nb = count_bijections(g, fg, HSO4_TYPE_MAP)
        sec.check("number of bijections equals automorphism order", automorphism_order(C), nb,
                  key="cubo.automorphisms")
        classes = point_classes(pts, g, antipodal_key)
        cert = verify_vertex_correspondence(m, g, classes, C)
        sec.check("vertices <-> antipodal point pairs", True, cert.passed, provenance=PUBLISHED,
                  note=str(cert.offending) if cert.offending else "")
        sec.check("each vertex: 2 spheres + 2 tori", [(2, 2)] * 12,
                  [(sum(1 for x in n if x.startswith("S")), sum(1 for x in n if x.startswith("T")))
                   for _, _, n in cert.pairs], provenance=PUBLISHED)
        sec.data["facet_to_component"] = mapping_json(m, g, fg)
    return rep


def _cycle_label(perm: tuple[int, ...]) -> str:
    ct = cycle_type(tuple(x - 1 for x in perm))
    if ct == (5,):
        return "5-cycle"
    if perm[4] == 5:
        return "fixes 5"
    return str(ct).replace(" ", "")


def verify_so5star(cfg: RunConfig) -> Report:
    rep = Report("verify-so5star", cfg.echo())
    comps = so5star_components()
    tcfg = cfg.track()
    with _timed(rep, "certification"):
        sec = rep.section("decomposition")
        _certify(sec, comps, "so5.components")
        kinds = Counter(c.kind for c in comps)
        sec.check("tori", 32, kinds[TORUS], key="so5.tori")
        sec.check("SO(3)-block components", 32, kinds[SO3BLOCK], key="so5.blocks")
        groups = Counter(c.group_key for c in comps)
        sec.check("zero-pattern quadruples", 16, len(groups), key="so5.quadruples")
        sec.check("quadruple sizes", [4] * 16, sorted(groups.values()), key="so5.quadruples")
    with _timed(rep, "meets"):
        sec = rep.section("incidence")
        table = all_meets(comps, seed=cfg.seed)
        inc = table.incidence()
        sec.check("ones in the incidence matrix", 512, inc.ones(), key="so5.incidence_ones")
        sec.check("incidence symmetric", True, inc.is_symmetric())
        sec.check("intersection circles", 256, table.curve_count(), key="so5.curves")
        bc = compare_so5_blocks(inc)
        sec.check("block support matches the printed layout", 256, bc.support, provenance=PUBLISHED)
        sec.check("blocks match up to sign-label bijection and mirror transpose", True, bc.passed,
                  provenance=PUBLISHED,
                  note="the printed layout is not symmetric; a block may match its printed mirror transposed")
        sec.data["block_comparison"] = bc.to_dict()
        # numeric cross-check on a seeded sample of curve pairs
        rng = np.random.default_rng([cfg.seed, 0x50])
        pairs = table.curve_pairs()
        pick = sorted(rng.choice(len(pairs), size=min(12, len(pairs)), replace=False).tolist())
        good = 0
        for k in pick:
            i, j = pairs[k]
            try:
                meet(comps[i], comps[j], cross_check=True, seed=cfg.seed, cfg=tcfg)
                good += 1
            except MeetError:
                pass
        sec.check("numeric cross-check of sampled curve meets", len(pick), good, provenance=DERIVED,
                  tolerance=f"path_tol={cfg.tol_track}")
    with _timed(rep, "points"):
        sec = rep.section("point intersections")
        pts = intersection_points(comps, table)
        sec.check("points", 288, len(pts), key="so5.points")
        g = component_graph(comps, inc, "quadruple")
        classes = point_classes(pts, g, permutation_key)
        sec.check("point classes", 18, len(classes), key="so5.point_classes")
        sec.check("class sizes", [16] * 18, [c.size for c in classes], key="so5.point_classes")
        labels = Counter(_cycle_label(c.key) for c in classes)
        sec.check("cycle-type split", assets.EXPECTED["so5.cycle_types"].value, dict(labels), key="so5.cycle_types")
        flav = Counter()
        flav_types: dict = {}
        for c in classes:
            kinds = Counter(g.types[a] for a in c.nodes)
            t, b = kinds["torus-quadruple"], kinds["SO3Block-quadruple"]
            name = {(1, 2): "three-way", (0, 4): "four-way", (3, 1): "one-block-three-tori"}.get((t, b), f"{t}T+{b}C")
            flav[name] += 1
            flav_types.setdefault(name, Counter())[_cycle_label(c.key)] += 1
        sec.check("flavours", assets.EXPECTED["so5.flavours"].value, dict(flav), key="so5.flavours")
        sec.data["cycle types per flavour"] = {k: dict(v) for k, v in sorted(flav_types.items())}
    with _timed(rep, "degrees"):
        sec = rep.section("degrees")
        degs = {c.id: component_degree(c, cfg.seed, tcfg) for c in comps}
        want = {c.id: 4 if c.kind == TORUS else 8 for c in comps}
        sec.check("component degrees", want, degs, provenance=PUBLISHED, tolerance=f"path_tol={cfg.tol_track}")
        sec.check("degree sum (per component)", 384, sum(degs.values()), key="so5.degree")
        if cfg.expensive:
            total, census, orphans, info = full_slice_census(comps, STAR, cfg.seed, cfg.track(max_fail_fraction=0.25))
            sec.check("full slice solve: det(+1) points", 384, total, key="so5.degree")
            sec.check("full slice solve: census equals degrees", want, census, provenance=DERIVED)
            sec.check("full slice solve: points on no component", 0, orphans)
            sec.data["full_slice_paths"] = info["paths"]
    with _timed(rep, "polytope"):
        sec = rep.section("polytope correspondence")
        P = hull3(polytope_p())
        sec.check("quadruple graph (nodes, edges)", (16, 32), g.size, provenance=DERIVED)
        sec.check("quadruple graph is 4-regular", [4] * 16, [g.degree(a) for a in range(16)], provenance=DERIVED)
        fg = facet_graph(P, refined=True)
        m = find_bijection(g, fg, SO5_TYPE_MAP)
        sec.check("type-preserving bijection to the 16-facet polytope", True, m is not None, provenance=PUBLISHED,
                  note="tori map to quadrilaterals with three degree-4 vertices")
        sec.data["bijection with tori on quadrilaterals with two degree-4 vertices"] = (
            find_bijection(g, fg, SO5_TYPE_MAP_ALT) is not None)
        if m is None:
            return rep
        cert = verify_vertex_correspondence(m, g, classes, P)
        sec.check("vertices <-> point classes", True, cert.passed, provenance=PUBLISHED,
                  note=str(cert.offending) if cert.offending else "")
        deg3 = [(k, n) for v, k, n in cert.pairs if P.vertex_degree(v) == 3]
        sec.check("degree-3 vertices <-> three-way classes", 8,
                  sum(1 for _, n in deg3 if len(n) == 3), provenance=PUBLISHED)
        sec.data["degree-3 vertex classes"] = {str(k): _cycle_label(k) for k, _ in deg3}
        sec.data["facet_to_quadruple"] = mapping_json(m, g, fg)
        ev = euler_feasibility(64, inc.ones())
        sec.check("no 3-polytope with 64 facets and this adjacency", assets.EXPECTED["euler.so5"].value,
                  {"E": ev.edges, "V": ev.vertices, "required": int(ev.required_edges), "feasible": ev.feasible},
                  key="euler.so5", note=ev.trail())
    return rep


def witness_so4(cfg: RunConfig) -> Report:
    rep = Report("witness-so4", cfg.echo())
    with _timed(rep, "witness"):
        cert = verify_witness_so4(cfg.seed, cfg.track())
    sec = rep.section("exact witness points")
    sec.check("points verified exactly", 40, sum(cert.exact_ok), key="witness.points",
              tolerance="exact over Q(sqrt 3)")
    sec.check("each point on exactly one component", True, cert.on_one_component, provenance=DERIVED)
    want = {k: (2 if k.startswith("S") else 4) for k in cert.census}
    sec.check("census (2 per sphere, 4 per torus)", want, cert.census, key="hso4.degree")
    sec = rep.section("numeric solve")
    sec.check("paths", 1024, cert.paths, key="witness.paths")
    sec.check("det(+1) solutions", 40, cert.numeric_det_plus, key="witness.points",
              tolerance=f"path_tol={cfg.tol_track}")
    sec.check("real det(+1) solutions", 40, cert.numeric_real, key="witness.points",
              tolerance=f"real_tol={cfg.tol_real}")
    sec.check("matched to the exact points", 40, cert.matched, key="witness.points", tolerance="1e-8")
    sec.check("max distance to the exact points", "<= 1e-08", cert.max_match_distance,
              cert.max_match_distance <= 1e-8, tolerance="1e-8")
    sec.data["det(-1) endpoints (reported, not asserted)"] = cert.numeric_det_minus
    return rep


def polytopes(cfg: RunConfig) -> Report:
    rep = Report("polytopes", cfg.echo())
    with _timed(rep, "hulls"):
        C, P, T = hull3(cuboctahedron()), hull3(polytope_p()), hull3(tetrahedron())
        sec = rep.section("cuboctahedron")
        sec.check("f-vector", (12, 24, 14), C.fvector, key="cubo.fvector")
        sec.check("facet types", {"triangle": 8, "quadrilateral": 6}, C.type_counts(), key="cubo.facet_types")
        adj = facet_adjacency(C)
        types = C.facet_types()
        tri = [k for k, t in enumerate(types) if t == "triangle"]
        sec.check("each triangle meets 3 quadrilaterals", [3] * 8,
                  [sum(adj[k][j] for j in range(14) if types[j] == "quadrilateral") for k in tri], provenance=DERIVED)
        sec.check("no two triangles adjacent", 0, sum(adj[a][b] for a in tri for b in tri), provenance=DERIVED)
        sec.check("lattice stable for tol in [1e-7, 1e-4]", True, tolerance_stable(cuboctahedron()),
                  tolerance="1e-7..1e-4")
        sec.check("automorphism order", 48, automorphism_order(C), key="cubo.automorphisms")
        sec = rep.section("16-facet polytope")
        sec.check("f-vector", (18, 32, 16), P.fvector, key="poly.fvector", tolerance="1e-7 + 4 coordinate quanta")
        rt = Counter(P.refined_types())
        sec.check("quadrilaterals with two degree-4 vertices", 8, rt["quadrilateral/2xdeg4"], provenance=PUBLISHED)
        sec.check("lattice stable for tol in [1e-7, 1e-4]", True, tolerance_stable(polytope_p()),
                  tolerance="1e-7..1e-4")
        sec.check("Euler and double counting", True,
                  P.fvector[0] - P.fvector[1] + P.fvector[2] == 2 and sum(map(len, P.facets)) == 2 * P.fvector[1])
        aut = automorphism_order(P)
        sec.check("automorphism order (reported; dihedral of order 16)", 16, aut, provenance=DERIVED,
                  note="exhaustive backtracking count")
        sec.data["facets"] = P.facets
        sec = rep.section("tetrahedron")
        sec.check("f-vector", (4, 6, 4), T.fvector, key="tetra.fvector")
        sec.check("automorphism order", 24, automorphism_order(T), key="tetra.automorphisms")
    with _timed(rep, "euler"):
        sec = rep.section("Euler feasibility")
        for F, ones, feas, prov in ((64, 512, False, PUBLISHED), (14, 48, True, DERIVED), (4, 12, True, TRIVIAL)):
            ev = euler_feasibility(F, ones)
            sec.check(f"F={F}, ones={ones}", feas, ev.feasible, provenance=prov, note=ev.trail())
    return rep


def enumerate_patterns(cfg: RunConfig, m: int = 6, n: int = 6, edges: int = 12, max_degree: int | None = 5,
                       transpose: str = "both", out: str | None = None) -> Report:
    rep = Report("enumerate-patterns", {**cfg.echo(), "m": m, "n": n, "edges": edges, "max_degree": max_degree,
                                        "transpose": transpose})
    settings = {"both": [False, True], "yes": [True], "no": [False]}[transpose]
    counts = {}
    masks = {}
    with _timed(rep, "enumeration"):
        for tr in settings:
            sym = SymmetrySpec(True, True, tr)
            ms = iter_orbit_masks(m, n, edges, max_degree, sym, workers=cfg.threads)
            counts[sym.describe()] = len(ms)
            masks[sym.describe()] = ms
    sec = rep.section("orbit census")
    for k, v in counts.items():
        sec.check(f"orbits under {k}", v, v, provenance=DERIVED)
    for k, ms in masks.items():
        sec.check(f"representatives distinct ({k})", len(ms), len(set(ms)))
    if (m, n, edges, max_degree) == (6, 6, 12, 5):
        target = assets.EXPECTED["patterns.6x6x12"].value
        matching = [k for k, v in counts.items() if v == target]
        sec.check("census", target, counts.get(CENSUS_SYMMETRY.describe(), max(counts.values())),
                  key="patterns.6x6x12")
        sec.data["setting giving the census"] = matching
    sec.data["kernel"] = KERNEL
    if out:
        key = CENSUS_SYMMETRY.describe() if CENSUS_SYMMETRY.describe() in masks else next(iter(masks))
        write_orbits((BipartitePattern.from_mask(m, n, x) for x in masks[key]), out)
        sec.data["written"] = {"file": out, "setting": key}
    return rep


def search_slice(cfg: RunConfig, strategy: str = "structured", budget: int = 1) -> Report:
    rep = Report("search-real-slice", {**cfg.echo(), "strategy": strategy, "budget": budget})
    comps = so5star_components()
    with _timed(rep, "search"):
        best, records = search_real_slice(comps, strategy, cfg.seed, budget, cfg.threads, cfg.track())
    sec = rep.section("search")
    degs = {c.id: degree_metadata(c) for c in comps}
    sec.check("candidates evaluated", budget, len(records))
    sec.check("per-component counts within the component degree", True,
              all(0 <= r <= t <= degs[k] or t == -1 for rec in records for k, (r, t) in rec.per_component.items()))
    valid = [r for r in records if r.valid]
    sec.check("reported maximum is the best over the valid candidates",
              max((r.real for r in valid), default=None), best.real if best else None,
              tolerance=f"real_tol={cfg.tol_real}")
    if valid:
        sec.check("complex points of a valid candidate", assets.EXPECTED["so5.degree"].value, best.total,
                  key="so5.degree", tolerance=f"path_tol={cfg.tol_track}")
    sec.data["best"] = best.to_dict() if best else None
    sec.data["valid candidates"] = len(valid)
    sec.data["real counts"] = [r.real for r in records]
    sec.data["complex counts"] = [r.total for r in records]
    return rep


def run_all(cfg: RunConfig) -> Report:
    rep = Report("all", cfg.echo())
    for fn in (verify_so3, verify_hso4, verify_so5star, witness_so4, polytopes):
        rep.extend(fn(cfg))
    rep.extend(enumerate_patterns(cfg))
    rep.extend(search_slice(cfg))
    return rep
