"""Acceptance suite: one test per criterion; a PASS/FAIL line per criterion is
printed in the terminal summary."""

import json
import time
from collections import Counter

import numpy as np
import pytest

from conftest import check_named
from orthoslice import suites
from orthoslice.catalog import SO3BLOCK, SPHERE2, TORUS, hso4_components, membership, parametrize, \
    rational_domain_point, slice_pattern, verify_containment
from orthoslice.degree import component_degree, degree_sum_check, search_real_slice, verify_witness_so4
from orthoslice.exact import matmul, poly_reduce, transpose
from orthoslice.meet import all_meets, compare_sphere_torus
from orthoslice.patterns import CENSUS_SYMMETRY, DEFAULT_SYMMETRY, iter_orbit_masks
from orthoslice.polytope import automorphism_order, cuboctahedron, euler_feasibility, hull3, polytope_p, tetrahedron
from orthoslice.signedperm import antipodal_pairs, cycle_type, signed_perms_in_pattern
from orthoslice.somodel import apply_pattern, hollow_pattern, orth_equations, residual


def test_01_decomposition_certification(criterion):
    done = criterion(1, "hollow SO(4) decomposition certified symbolically")
    t0 = time.perf_counter()
    comps = hso4_components()
    certs = [verify_containment(c) for c in comps]
    dt = time.perf_counter() - t0
    ok = len(certs) == 14 and all(c.reduced_to_zero for c in certs) and dt < 5
    done(ok, f"{len(certs)}/14 components exact, {dt:.2f} s (< 5 s)")
    assert ok


def test_02_curve_incidence_table(criterion, hso4):
    done = criterion(2, "sphere-torus curve incidence table")
    t0 = time.perf_counter()
    table = all_meets(hso4, cross_check=True, seed=0)
    dt = time.perf_counter() - t0
    inc = table.incidence()
    bad = compare_sphere_torus(inc)
    degs = [r.numeric["hyperplane_points"] // r.curves for r in table.results.values() if r.curves]
    ok = not bad and table.curve_count() == 24 and degs == [2] * 24 and dt < 60
    done(ok, f"{len(bad)} mismatches, {table.curve_count()} circles, degrees {sorted(set(degs))}, "
             f"{dt:.1f} s with numeric cross-checks (< 60 s)")
    assert ok


def test_03_point_intersections(criterion, hso4, hso4_points):
    done = criterion(3, "hollow SO(4) point intersections")
    sps = [p.signed_perm for p in hso4_points]
    pairs = antipodal_pairs(sps)
    double = all(cycle_type(s) == (2, 2) for s in sps)
    four = [s for s in signed_perms_in_pattern(hollow_pattern(4), 1) if cycle_type(s) == (4,)]
    on = [sum(1 for c in hso4 if membership(c, s.matrix())) for s in four]
    ok = len(sps) == 24 and len(pairs) == 12 and double and len(four) == 48 and on == [1] * 48
    done(ok, f"{len(sps)} points, {len(pairs)} antipodal pairs, double transpositions: {double}; "
             f"{len(four)} four-cycles, each on one component: {on == [1] * 48}")
    assert ok


def test_04_witness_set(criterion):
    done = criterion(4, "witness set of hollow SO(4)")
    t0 = time.perf_counter()
    cert = verify_witness_so4(0)
    dt = time.perf_counter() - t0
    census_ok = all(v == (2 if k.startswith("S") else 4) for k, v in cert.census.items())
    ok = cert.passed and cert.paths == 1024 and census_ok and dt < 120
    done(ok, f"exact {sum(cert.exact_ok)}/40, paths {cert.paths}, det(+1) {cert.numeric_det_plus}, "
             f"real {cert.numeric_real}, matched {cert.matched} (max dist {cert.max_match_distance:.1e}), "
             f"census 2/sphere 4/torus: {census_ok}, {dt:.1f} s (< 120 s)")
    assert ok


def test_05_degrees(criterion, hso4, so5):
    done = criterion(5, "component degrees and degree sums")
    t0 = time.perf_counter()
    picks = {"sphere": (hso4[0], 2), "torus": (hso4[8], 4), "torus (SO(5))": (so5[0], 4),
             "SO3Block": (next(c for c in so5 if c.kind == SO3BLOCK), 8)}
    got = {name: [component_degree(c, seed) for seed in range(5)] for name, (c, _) in picks.items()}
    per_seed = all(v == [picks[k][1]] * 5 for k, v in got.items())
    s4, _ = degree_sum_check(hso4, 0)
    s5, d5 = degree_sum_check(so5, 0)
    dt = time.perf_counter() - t0
    ok = per_seed and s4 == 40 and s5 == 384 and dt < 300
    done(ok, f"5 seeds: {dict((k, sorted(set(v))) for k, v in got.items())}; sums {s4} and {s5}; {dt:.0f} s (< 300 s)")
    assert ok


def test_06_so5star_suite(criterion, reports):
    done = criterion(6, "starred SO(5) slice suite")
    rep, dt = reports("verify-so5star")
    want = {
        "components certified symbolically": 64,
        "ones in the incidence matrix": 512,
        "intersection circles": 256,
        "points": 288,
        "point classes": 18,
    }
    got = {k: check_named(rep, k).computed for k in want}
    blocks = check_named(rep, "blocks match up to sign-label bijection and mirror transpose").passed
    support = check_named(rep, "block support matches the printed layout").computed
    split = check_named(rep, "cycle-type split").computed
    ok = rep.passed and got == want and blocks and support == 256 and split == {"5-cycle": 8, "fixes 5": 2, "(3,2)": 8} \
        and dt < 600
    done(ok, f"{got}, block support {support}/256, blocks up to relabelling: {blocks}, split {split}, "
             f"{dt:.0f} s (< 600 s)")
    assert ok


def test_07_polytopes(criterion, reports):
    done = criterion(7, "polytopes")
    C, P = hull3(cuboctahedron()), hull3(polytope_p())
    ev = euler_feasibility(64, 512)
    aut_c, aut_p = automorphism_order(C), automorphism_order(P)
    rep, _ = reports("polytopes")
    ok = (C.fvector == (12, 24, 14) and C.type_counts() == {"triangle": 8, "quadrilateral": 6}
          and P.fvector == (18, 32, 16) and (ev.edges, ev.vertices, ev.feasible) == (256, 194, False)
          and aut_c == 48 and aut_p == 16 and rep.passed)
    done(ok, f"C {C.fvector} {C.type_counts()}, P {P.fvector}, Euler(64, 512): E={ev.edges} V={ev.vertices} "
             f"{'feasible' if ev.feasible else 'infeasible'}, |Aut C| = {aut_c}, |Aut P| = {aut_p} (dihedral)")
    assert ok


def test_08_correspondences(criterion, reports):
    done = criterion(8, "component graphs <-> facet graphs")
    h, _ = reports("verify-hso4")
    s, _ = reports("verify-so5star")
    names = [
        (h, "type-preserving bijection to the cuboctahedron"),
        (h, "vertices <-> antipodal point pairs"),
        (h, "each vertex: 2 spheres + 2 tori"),
        (s, "type-preserving bijection to the 16-facet polytope"),
        (s, "vertices <-> point classes"),
        (s, "degree-3 vertices <-> three-way classes"),
    ]
    res = {n: check_named(r, n).passed for r, n in names}
    ok = all(res.values())
    done(ok, f"{sum(res.values())}/{len(res)} checks: HSO(4) <-> C with 12 pairs <-> 12 vertices; "
             f"SO*(5) quadruples <-> P with 18 classes <-> 18 vertices, degree-3 <-> three-way")
    assert ok


def test_09_so3(criterion, reports):
    done = criterion(9, "SO(3) slice")
    rep, dt = reports("verify-so3")
    ok = rep.passed and dt < 30
    gen = check_named(rep, "generic orbit").computed
    done(ok, f"4 circles, 4-cycle incidence, unique generic orbit {gen}, {dt:.1f} s (< 30 s)")
    assert ok


def test_10_census(criterion):
    done = criterion(10, "6x6 zero-pattern census")
    t0 = time.perf_counter()
    n = len(iter_orbit_masks(6, 6, 12, 5, CENSUS_SYMMETRY))
    dt = time.perf_counter() - t0
    n_t = len(iter_orbit_masks(6, 6, 12, 5, DEFAULT_SYMMETRY))
    ok = n == 5816 and dt < 600
    done(ok, f"{n} orbits under {CENSUS_SYMMETRY.describe()} ({n_t} with transpose), {dt:.1f} s (< 600 s)")
    assert ok


def _payload(rep):
    return json.dumps(rep.payload(), sort_keys=True)


@pytest.mark.slow
def test_11_properties(criterion, reports, hso4, so5):
    done = criterion(11, "property suites")
    notes = []
    # seed determinism of every numeric verb
    det = {}
    for verb, fn in (("verify-so3", suites.verify_so3), ("verify-hso4", suites.verify_hso4),
                     ("witness-so4", suites.witness_so4), ("verify-so5star", suites.verify_so5star)):
        first, _ = reports(verb)
        det[verb] = _payload(first) == _payload(fn(suites.RunConfig()))
    a = suites.search_slice(suites.RunConfig(seed=2), "structured", 1)
    b = suites.search_slice(suites.RunConfig(seed=2, threads=2), "structured", 1)
    det["search-real-slice"] = _payload(a) == _payload(b)
    notes.append(f"deterministic: {sum(det.values())}/{len(det)}")
    # poly_reduce idempotence on every catalog certification polynomial
    idem = True
    for c in list(hso4) + list(so5):
        rels = c.relations()
        P = [list(r) for r in c.entry_map]
        for row in matmul(P, transpose(P)):
            for e in row:
                r = poly_reduce(e, rels)
                idem &= poly_reduce(r, rels) == r
    notes.append(f"poly_reduce idempotent: {idem}")
    # Euler and double counting on every lattice
    lattices = [hull3(v) for v in (cuboctahedron(), polytope_p(), tetrahedron())]
    euler = all(V - E + F == 2 and sum(map(len, L.facets)) == 2 * E
                for L in lattices for V, E, F in [L.fvector])
    notes.append(f"Euler/double counting: {euler}")
    # residual exactness of every catalog sample point
    rng = np.random.default_rng(0)
    exact = True
    for name, comps in (("hso4", hso4), ("so5star", so5)):
        sys = apply_pattern(orth_equations(comps[0].n), slice_pattern(name))
        for c in comps:
            exact &= residual(sys, parametrize(c, rational_domain_point(c, rng))) == 0
    notes.append(f"sample residuals exactly 0: {exact}")
    # the slice search reports a valid maximum over its budget
    best, recs = search_real_slice(so5, "structured", 0, 2)
    valid = [r for r in recs if r.valid]
    search_ok = (best is None and not valid) or (best.real == max(r.real for r in valid) and best.total == 384)
    notes.append(f"search maximum valid: {search_ok} (best {best.real if best else None} real of 384)")
    ok = all(det.values()) and idem and euler and exact and search_ok
    done(ok, "; ".join(notes))
    assert ok
