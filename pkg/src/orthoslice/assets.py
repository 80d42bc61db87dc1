"""Transcribed data and expected values, each with a provenance tag.

Provenance tags:

* ``published`` -- value or object transcribed from the published results
  this toolkit re-checks;
* ``derived``   -- value obtained here by an independent computation
  (brute force, exhaustive oracle, arithmetic on published numbers);
* ``trivial``   -- sanity value that follows from definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import QuadRat

PUBLISHED = "published"
DERIVED = "derived"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class Expected:
    key: str
    value: object
    provenance: str
    note: str


def _e(key, value, provenance, note):
    return key, Expected(key, value, provenance, note)


EXPECTED: dict[str, Expected] = dict(
    [
        _e("hso4.components", 14, PUBLISHED, "hollow SO(4) is a union of 14 surfaces"),
        _e("hso4.spheres", 8, PUBLISHED, "eight spheres of degree two"),
        _e("hso4.tori", 6, PUBLISHED, "six tori of degree four"),
        _e("hso4.curves", 24, PUBLISHED, "surfaces meet along 24 circles"),
        _e("hso4.point_pairs", 12, PUBLISHED, "twelve antipodal pairs of signed double transpositions"),
        _e("hso4.points", 24, DERIVED, "2 x 12 pairs"),
        _e("hso4.signed_perms", 72, DERIVED, "brute force over 4! * 2^4 signed permutations"),
        _e("hso4.four_cycle_perms", 48, DERIVED, "6 four-cycles x 8 even sign choices"),
        _e("hso4.degree", 40, PUBLISHED, "deg SO(4) = 8*2 + 6*4"),
        _e("so3.components", 4, PUBLISHED, "SO(3) slice x11 = x22 = 0 is four circles"),
        _e("so3.degree", 8, DERIVED, "four conics; deg SO(3) = 8"),
        _e("so3.generic_orbits", 1, PUBLISHED, "unique degree-generic codimension-two coordinate slice"),
        _e("so5.components", 64, PUBLISHED, "starred SO(5) slice is a union of 64 surfaces"),
        _e("so5.tori", 32, PUBLISHED, "eight block patterns times four signs"),
        _e("so5.blocks", 32, PUBLISHED, "32 SO(3)-block components of degree 8"),
        _e("so5.quadruples", 16, PUBLISHED, "grouped into 16 quadruples by zero pattern"),
        _e("so5.incidence_ones", 512, PUBLISHED, "512 ones in the full incidence matrix"),
        _e("so5.curves", 256, PUBLISHED, "256 intersection circles"),
        _e("so5.points", 288, PUBLISHED, "288 zero-dimensional intersections"),
        _e("so5.point_classes", 18, PUBLISHED, "18 permutation patterns, 288 = 2^4 * 18"),
        _e("so5.flavours", {"three-way": 8, "four-way": 2, "one-block-three-tori": 8}, PUBLISHED,
           "three flavours of point classes"),
        _e("so5.cycle_types", {"5-cycle": 8, "fixes 5": 2, "(3,2)": 8}, PUBLISHED,
           "cycle-type split of the 18 permutations"),
        _e("so5.degree", 384, PUBLISHED, "deg SO(5) = 32*4 + 32*8"),
        _e("witness.points", 40, PUBLISHED, "40 real points on the hollow slice cut by H1, H2"),
        _e("witness.paths", 1024, DERIVED, "Bezout number 2^10 of the 16x16 system"),
        _e("cubo.fvector", (12, 24, 14), DERIVED, "hull of all permutations of (+-1, +-1, 0)"),
        _e("cubo.facet_types", {3: 8, 4: 6}, PUBLISHED, "eight triangles, six quadrilaterals"),
        _e("cubo.automorphisms", 48, DERIVED, "full octahedral group"),
        _e("poly.fvector", (18, 32, 16), PUBLISHED, "18 vertices, 16 facets; edges by Euler"),
        _e("tetra.fvector", (4, 6, 4), TRIVIAL, "simplex"),
        _e("tetra.automorphisms", 24, TRIVIAL, "S4"),
        _e("euler.so5", {"E": 256, "V": 194, "required": 291, "feasible": False}, PUBLISHED,
           "no 3-polytope with 64 facets and this incidence"),
        _e("patterns.6x6x12", 5816, PUBLISHED, "6x6 bipartite graphs with 12 edges, max degree 5"),
    ]
)


def expected(key: str) -> Expected:
    return EXPECTED[key]


# ---------------------------------------------------------------------------
# incidence data

SPHERE_TORUS_TABLE = (
    # columns: T(12)(34)+, T(12)(34)-, T(13)(24)+, T(13)(24)-, T(14)(23)+, T(14)(23)-
    ("S+++^+", (0, 1, 0, 1, 0, 1)),
    ("S-++^-", (1, 0, 0, 1, 0, 1)),
    ("S+-+^-", (0, 1, 1, 0, 0, 1)),
    ("S++-^-", (0, 1, 0, 1, 1, 0)),
    ("S--+^+", (1, 0, 1, 0, 0, 1)),
    ("S-+-^+", (1, 0, 0, 1, 1, 0)),
    ("S+--^+", (0, 1, 1, 0, 1, 0)),
    ("S---^-", (1, 0, 1, 0, 1, 0)),
)
TORUS_COLUMNS = ("T(12)(34)+", "T(12)(34)-", "T(13)(24)+", "T(13)(24)-", "T(14)(23)+", "T(14)(23)-")

BLOCKS = {
    "0": ((0, 0, 0, 0),) * 4,
    "I": ((1, 1, 0, 0), (0, 0, 1, 1), (1, 1, 0, 0), (0, 0, 1, 1)),
    "J1": ((0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1)),
    "J2": ((0, 1, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 0, 1)),
    "J3": ((1, 0, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0)),
    "J4": ((1, 0, 0, 1), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 1, 0)),
}

# 16 x 16 block layout of the full SO*(5) incidence matrix, rows/cols in
# catalog pattern order (T12..T81, then the eight SO(3)-block patterns)
SO5_BLOCK_LAYOUT = tuple(
    tuple(line.split())
    for line in """
0 I 0 0 0 0 0 I 0 0 J1 J2 0 0 0 0
I 0 I 0 0 0 0 0 0 0 0 0 J3 J4 0 0
0 I 0 I 0 0 0 0 0 J1 J2 0 0 0 0 0
0 0 I 0 I 0 0 0 0 0 0 0 J4 0 0 J3
0 0 0 I 0 I 0 0 J1 J2 0 0 0 0 0 0
0 0 0 0 I 0 I 0 0 0 0 0 0 0 J3 J4
0 0 0 0 0 I 0 I J2 0 0 J1 0 0 0 0
I 0 0 0 0 0 I 0 0 0 0 0 0 J3 J4 0
0 0 0 0 J1 0 J2 0 0 I 0 I 0 0 0 0
0 0 J1 0 J2 0 0 0 I 0 I 0 0 0 0 0
J1 0 J2 0 0 0 0 0 0 I 0 I 0 0 0 0
J2 0 0 0 0 0 J1 0 I 0 I 0 0 0 0 0
0 J3 0 J4 0 0 0 0 0 0 0 0 0 I 0 I
0 J4 0 0 0 0 0 J3 0 0 0 0 I 0 I 0
0 0 0 0 0 J3 0 J4 0 0 0 0 0 I 0 I
0 0 0 J3 0 J4 0 0 0 0 0 0 I 0 I 0
""".strip().splitlines()
)


# ---------------------------------------------------------------------------
# witness set for SO(4)

H1 = ((0, 1, -1, 0), (-1, 0, 0, -1), (1, 0, 0, 1), (0, -1, 1, 0))
H2 = ((0, 1, 0, -1), (-1, 0, -1, 0), (0, -1, 0, 1), (1, 0, 1, 0))

# eight matrices with entries 0, +-a; each stands for a = +sqrt(1/3) and a = -sqrt(1/3)
WITNESS_A = """
0 -a a a / -a 0 -a a / a a 0 a / -a a a 0
0 a -a a / a 0 a a / -a -a 0 a / -a a a 0
0 -a a a / -a 0 a -a / -a a 0 a / a a a 0
0 a -a a / -a 0 a a / -a a 0 -a / a a a 0
0 a a -a / a 0 a a / -a a 0 a / -a -a a 0
0 a a a / -a 0 -a a / -a a 0 -a / -a -a a 0
0 -a -a -a / a 0 -a a / a a 0 -a / a -a a 0
0 -a -a a / a 0 -a -a / -a -a 0 -a / a -a a 0
"""

WITNESS_INT = """
0 0 -1 0 / 0 0 0 1 / 0 -1 0 0 / -1 0 0 0
0 0 1 0 / 0 0 0 -1 / 0 -1 0 0 / -1 0 0 0
0 -1 0 0 / 0 0 -1 0 / 0 0 0 1 / -1 0 0 0
0 1 0 0 / 0 0 -1 0 / 0 0 0 -1 / -1 0 0 0
0 0 -1 0 / 0 0 0 1 / 0 1 0 0 / 1 0 0 0
0 0 1 0 / 0 0 0 -1 / 0 1 0 0 / 1 0 0 0
0 -1 0 0 / 0 0 1 0 / 0 0 0 1 / 1 0 0 0
0 1 0 0 / 0 0 1 0 / 0 0 0 -1 / 1 0 0 0
0 0 0 -1 / 0 0 1 0 / 1 0 0 0 / 0 1 0 0
0 0 0 1 / 0 0 -1 0 / 1 0 0 0 / 0 1 0 0
0 0 -1 0 / 1 0 0 0 / 0 0 0 1 / 0 1 0 0
0 0 -1 0 / -1 0 0 0 / 0 0 0 -1 / 0 1 0 0
0 0 0 -1 / 0 0 1 0 / -1 0 0 0 / 0 -1 0 0
0 0 0 1 / 0 0 -1 0 / -1 0 0 0 / 0 -1 0 0
0 0 1 0 / 1 0 0 0 / 0 0 0 1 / 0 -1 0 0
0 0 1 0 / -1 0 0 0 / 0 0 0 -1 / 0 -1 0 0
0 -1 0 0 / 0 0 0 -1 / -1 0 0 0 / 0 0 1 0
0 -1 0 0 / 0 0 0 1 / 1 0 0 0 / 0 0 1 0
0 0 0 -1 / 1 0 0 0 / 0 1 0 0 / 0 0 1 0
0 0 0 1 / 1 0 0 0 / 0 -1 0 0 / 0 0 1 0
0 1 0 0 / 0 0 0 -1 / -1 0 0 0 / 0 0 -1 0
0 1 0 0 / 0 0 0 1 / 1 0 0 0 / 0 0 -1 0
0 0 0 -1 / -1 0 0 0 / 0 1 0 0 / 0 0 -1 0
0 0 0 1 / -1 0 0 0 / 0 -1 0 0 / 0 0 -1 0
"""


def _parse_matrices(text: str, a=None) -> list[list[list]]:
    out = []
    for line in text.strip().splitlines():
        rows = []
        for r in line.split("/"):
            row = []
            for tok in r.split():
                if tok == "a":
                    row.append(a)
                elif tok == "-a":
                    row.append(-a)
                else:
                    row.append(Fraction(int(tok)))
            rows.append(row)
        out.append(rows)
    return out


def witness_a_value(sign: int) -> QuadRat:
    return QuadRat.sqrt_of(Fraction(1, 3), 3) * sign


def witness_points() -> list[list[list]]:
    """All 40 witness points: 8 patterns x (a = +-sqrt(1/3)) then 24 integer matrices."""
    pts = []
    for sign in (1, -1):
        pts.extend(_parse_matrices(WITNESS_A, witness_a_value(sign)))
    pts.extend(_parse_matrices(WITNESS_INT))
    return pts


# ---------------------------------------------------------------------------
# polytopes

CUBO_VERTICES = tuple(
    (Fraction(x), Fraction(y), Fraction(z))
    for x, y, z in [
        (-1, -1, 0), (-1, 1, 0), (1, -1, 0), (1, 1, 0),
        (-1, 0, -1), (-1, 0, 1), (1, 0, -1), (1, 0, 1),
        (0, -1, -1), (0, -1, 1), (0, 1, -1), (0, 1, 1),
    ]
)

# 4-decimal drawing coordinates of the 16-facet polytope (vertices d0..d17)
P_VERTICES = (
    (1.8801, 0.0, -1.6048),
    (0.0, 1.8801, -1.6048),
    (-1.3294, 1.3294, 1.6048),
    (-1.3294, -1.3294, 1.6048),
    (1.3294, 1.3294, 1.6048),
    (1.3294, -1.3294, 1.6048),
    (0.0, -1.8801, -1.6048),
    (-1.8801, 0.0, -1.6048),
    (0.0, 2.9814, 1.0541),
    (2.1082, 2.1082, -1.0541),
    (0.0, -2.9814, 1.0541),
    (2.1082, -2.1082, -1.0541),
    (-2.1082, 2.1082, -1.0541),
    (-2.9814, 0.0, 1.0541),
    (0.0, 0.0, 2.0479),
    (2.9814, 0.0, 1.0541),
    (-2.1082, -2.1082, -1.0541),
    (0.0, 0.0, -2.0479),
)

# triangles of the drawing; pairs of coplanar triangles make the 16 quadrilaterals
P_DRAWN_TRIANGLES = (
    (7, 6, 17), (0, 6, 17), (1, 7, 17), (1, 0, 17), (7, 6, 16), (0, 6, 11), (1, 7, 12), (1, 0, 9),
    (6, 11, 10), (6, 16, 10), (7, 16, 13), (7, 12, 13), (0, 11, 15), (0, 9, 15), (1, 12, 8),
    (1, 9, 8), (5, 11, 10), (5, 11, 15), (3, 16, 10), (3, 16, 13), (4, 9, 15), (4, 9, 8),
    (2, 12, 13), (2, 12, 8), (3, 5, 10), (4, 5, 15), (2, 3, 13), (2, 4, 8), (3, 5, 14),
    (4, 5, 14), (2, 3, 14), (2, 4, 14),
)

TETRA_VERTICES = tuple(
    (Fraction(x), Fraction(y), Fraction(z)) for x, y, z in [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
)
