"""Exact scalars, sparse multivariate polynomials and reduction modulo square rules.

Rationals are :class:`fractions.Fraction`; :class:`QuadRat` adds elements of a
single quadratic field Q(sqrt(d)).  :class:`MPoly` is a sparse polynomial over
the rationals (or any exact ring whose zero compares equal to ``0``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Rat = Fraction


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def as_rat(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, QuadRat) and v.b == 0:
        return v.a
    raise TypeError(f"not a rational: {v!r}")


class QuadRat:
    """Element a + b*sqrt(d) of Q(sqrt(d)), d square-free and positive.

    Mixing two different radicands raises ``ValueError`` unless one operand
    is rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 3):
        if not _squarefree(d):
            raise ValueError(f"radicand must be square-free and > 1, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    @classmethod
    def sqrt_of(cls, q, d: int | None = None) -> "QuadRat":
        """Return sqrt(q) for rational q >= 0 written over Q(sqrt(d))."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("negative argument")
        # sqrt(p/r) = sqrt(p*r)/r ; split off the square part of p*r
        num = q.numerator * q.denominator
        sq, free = 1, 1
        k = 2
        rest = num
        while k * k <= rest:
            while rest % (k * k) == 0:
                rest //= k * k
                sq *= k
            k += 1
        free = rest
        coef = Fraction(sq, q.denominator)
        if free == 1:
            return cls(coef, 0, d or 3)
        if d is not None and d != free:
            raise ValueError(f"sqrt({q}) does not lie in Q(sqrt({d}))")
        return cls(0, coef, free)

    def _coerce(self, other) -> "QuadRat | None":
        if isinstance(other, QuadRat):
            if other.d != self.d:
                if other.b == 0:
                    return QuadRat(other.a, 0, self.d)
                if self.b == 0:
                    return None  # caller swaps radicand
                raise ValueError(f"mixed radicands {self.d} and {other.d}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return QuadRat(other, 0, self.d)
        return NotImplemented  # type: ignore[return-value]

    def _pair(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented, NotImplemented
        if o is None:  # self rational, other irrational with another d
            return QuadRat(self.a, 0, other.d), other
        return self, o

    def __add__(self, other):
        s, o = self._pair(other)
        if s is NotImplemented:
            return NotImplemented
        return QuadRat(s.a + o.a, s.b + o.b, s.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        s, o = self._pair(other)
        if s is NotImplemented:
            return NotImplemented
        return QuadRat(s.a - o.a, s.b - o.b, s.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        s, o = self._pair(other)
        if s is NotImplemented:
            return NotImplemented
        return QuadRat(s.a * o.a + s.d * s.b * o.b, s.a * o.b + s.b * o.a, s.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadRat":
        return QuadRat(self.a, -self.b, self.d)

    def inverse(self) -> "QuadRat":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("QuadRat division by zero")
        return QuadRat(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return QuadRat(self.a / other, self.b / other, self.d)
        s, o = self._pair(other)
        if s is NotImplemented:
            return NotImplemented
        return s * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadRat(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadRat):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __complex__(self):
        return complex(float(self))

    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(d), decided exactly."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with d b^2
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"QuadRat({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_exact(self)


def format_exact(v) -> str:
    """Serialize an exact scalar as ``p/q`` or ``p/q+r/s*sqrt(d)``."""
    if isinstance(v, QuadRat):
        if v.b == 0:
            return format_exact(v.a)
        a = f"{v.a.numerator}/{v.a.denominator}"
        b = f"{v.b.numerator}/{v.b.denominator}"
        sign = "+" if v.b > 0 else "-"
        b = b.lstrip("-")
        return f"{a}{sign}{b}*sqrt({v.d})"
    v = as_rat(v)
    return f"{v.numerator}/{v.denominator}"


def parse_exact(s: str):
    """Inverse of :func:`format_exact`."""
    s = s.strip()
    if "sqrt" not in s:
        return Fraction(s)
    head, rad = s.rsplit("*sqrt(", 1)
    d = int(rad.rstrip(")"))
    # split head "p/q+r/s" or "p/q-r/s" at the sign after the first fraction
    idx = max(head.rfind("+"), head.rfind("-"))
    a, b = head[:idx], head[idx:]
    return QuadRat(Fraction(a), Fraction(b), d)


def is_zero(v) -> bool:
    if isinstance(v, MPoly):
        return v.is_zero()
    return v == 0


# --------------------------------------------------------------------------
# Polynomials


Exp = tuple[int, ...]


class MPoly:
    """Sparse polynomial: ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.vars: tuple[str, ...] = tuple(variables)
        clean: dict[Exp, object] = {}
        nv = len(self.vars)
        for e, c in (terms or {}).items():
            if len(e) != nv:
                raise ValueError(f"exponent {e} does not match {nv} variables")
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean

    # construction -----------------------------------------------------------
    @classmethod
    def const(cls, variables: Sequence[str], c) -> "MPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, variables: Sequence[str], coeffs: Mapping[str, object], constant=0) -> "MPoly":
        variables = tuple(variables)
        terms: dict[Exp, object] = {}
        for name, c in coeffs.items():
            e = [0] * len(variables)
            e[variables.index(name)] = 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
        if constant != 0:
            z = (0,) * len(variables)
            terms[z] = terms.get(z, 0) + constant
        return cls(variables, terms)

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return MPoly.const(self.vars, other)

    # arithmetic ----------------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if other == 0:
                return MPoly(self.vars)
            return MPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        terms: dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.vars, Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # inspection ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def used_vars(self) -> set[str]:
        return {self.vars[i] for e in self.terms for i, k in enumerate(e) if k}

    def linear_coeffs(self) -> tuple[dict[str, object], object]:
        """Coefficients of a polynomial of degree <= 1, and its constant."""
        if self.degree() > 1:
            raise ValueError("polynomial is not affine")
        coeffs = {}
        for e, c in self.terms.items():
            if any(e):
                coeffs[self.vars[e.index(1)]] = c
        return coeffs, self.constant_value()

    def sorted_terms(self) -> list[tuple[Exp, object]]:
        # graded lex, variables in declared order
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), [-k for k in t[0]]))

    # evaluation ---------------------------------------------------------------
    def eval(self, point: Mapping[str, object]):
        """Evaluate at an assignment variable -> scalar (exact or float/complex)."""
        missing = self.used_vars() - set(point)
        if missing:
            raise KeyError(f"missing assignment for {sorted(missing)}")
        vals = [point.get(v, 0) for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def subs(self, mapping: Mapping[str, "MPoly"], new_vars: Sequence[str]) -> "MPoly":
        """Substitute polynomials (over ``new_vars``) for every used variable."""
        new_vars = tuple(new_vars)
        out = MPoly(new_vars)
        cache: dict[tuple[str, int], MPoly] = {}
        for e, c in self.terms.items():
            t = MPoly.const(new_vars, c)
            for v, k in zip(self.vars, e):
                if k:
                    key = (v, k)
                    if key not in cache:
                        m = mapping[v]
                        if not isinstance(m, MPoly):
                            m = MPoly.const(new_vars, m)
                        cache[key] = m**k
                    t = t * cache[key]
            out = out + t
        return out

    def diff(self, name: str) -> "MPoly":
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MPoly(self.vars, terms)

    def to_text(self) -> str:
        """Plain-text form: ``+c*x_1_2^2*x_3_4`` monomials, constant last."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            cs = format_exact(c) if not isinstance(c, (float, complex)) else repr(c)
            sign = "+"
            if cs.startswith("-"):
                sign, cs = "-", cs[1:]
            mons = [v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k]
            parts.append(sign + "*".join([cs] + mons))
        return "".join(parts)

    @classmethod
    def from_text(cls, variables: Sequence[str], text: str) -> "MPoly":
        variables = tuple(variables)
        text = text.strip().replace(" ", "")
        if text == "0":
            return cls(variables)
        if text[0] not in "+-":
            text = "+" + text
        out = cls(variables)
        i = 0
        while i < len(text):
            sign = -1 if text[i] == "-" else 1
            j = i + 1
            # a term ends at the next +/- that is not inside "sqrt(" parentheses
            depth = 0
            while j < len(text) and (depth or text[j] not in "+-"):
                depth += text[j] == "("
                depth -= text[j] == ")"
                j += 1
            factors = text[i + 1 : j].split("*")
            coef = Fraction(factors[0]) * sign
            e = [0] * len(variables)
            for f in factors[1:]:
                name, _, k = f.partition("^")
                e[variables.index(name)] += int(k or 1)
            out = out + cls(variables, {tuple(e): coef})
            i = j
        return out

    def __repr__(self):
        return f"MPoly({self.to_text()})"


# --------------------------------------------------------------------------
# Reduction modulo square rules


class RelationSet:
    """Triangular rules ``v^2 -> rhs``.

    A rule's right-hand side may mention leading variables of *earlier* rules
    but never its own or a later one; reduction applies rules last to first.
    """

    def __init__(self, variables: Sequence[str], rules: Iterable[tuple[str, MPoly]]):
        self.vars = tuple(variables)
        self.rules: list[tuple[str, MPoly]] = []
        for lead, rhs in rules:
            if lead not in self.vars:
                raise ValueError(f"unknown variable {lead}")
            if rhs.vars != self.vars:
                raise ValueError("rule polynomial over wrong variables")
            self.rules.append((lead, rhs))
        leads = [lead for lead, _ in self.rules]
        if len(set(leads)) != len(leads):
            raise ValueError("duplicate leading variable")
        for k, (lead, rhs) in enumerate(self.rules):
            bad = rhs.used_vars() & set(leads[k:])
            if bad:
                raise ValueError(f"rule for {lead} is not triangular: rhs uses {sorted(bad)}")

    @classmethod
    def empty(cls, variables: Sequence[str]) -> "RelationSet":
        return cls(variables, [])

    @classmethod
    def sphere(cls, variables: Sequence[str], coords: Sequence[str]) -> "RelationSet":
        """Unit sphere sum(coords^2) = 1, eliminating the square of the last coordinate."""
        *rest, last = coords
        rhs = MPoly.const(variables, Fraction(1))
        for c in rest:
            rhs = rhs - MPoly.var(variables, c) ** 2
        return cls(variables, [(last, rhs)])

    @classmethod
    def circles(cls, variables: Sequence[str], pairs: Sequence[tuple[str, str]]) -> "RelationSet":
        rules = []
        for u, w in pairs:
            rules.append((w, MPoly.const(variables, Fraction(1)) - MPoly.var(variables, u) ** 2))
        return cls(variables, rules)


def poly_reduce(p: MPoly, rels: RelationSet) -> MPoly:
    """Normal form of ``p`` modulo the square rules in ``rels``."""
    if not set(p.used_vars()) <= set(rels.vars):
        raise ValueError("polynomial uses variables unknown to the relation set")
    if p.vars != rels.vars:
        p = p.subs({v: MPoly.var(rels.vars, v) for v in p.used_vars()}, rels.vars)
    for lead, rhs in reversed(rels.rules):
        i = p.vars.index(lead)
        powers = [MPoly.const(p.vars, Fraction(1))]
        out = MPoly(p.vars)
        for e, c in p.terms.items():
            q, r = divmod(e[i], 2)
            while len(powers) <= q:
                powers.append(powers[-1] * rhs)
            ne = list(e)
            ne[i] = r
            out = out + MPoly(p.vars, {tuple(ne): c}) * powers[q]
        p = out
    return p


# --------------------------------------------------------------------------
# Determinants

MAX_DET_SIZE = 6


def det_exact(m: Sequence[Sequence[object]]):
    """Exact determinant of a square matrix of exact scalars or MPoly."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n > MAX_DET_SIZE:
        raise ValueError(f"size {n} exceeds {MAX_DET_SIZE}")
    if any(isinstance(x, MPoly) for row in m for x in row):
        return _det_cofactor([list(r) for r in m])
    return _det_gauss([list(r) for r in m])


def _det_cofactor(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        a = m[0][j]
        if is_zero(a):
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = a * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_gauss(m):
    n = len(m)
    m = [[x if isinstance(x, QuadRat) else Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def det_leibniz(m):
    """Permutation-sum determinant; independent oracle for small sizes."""
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        t = 1
        for i in range(n):
            t = t * m[i][p[i]]
        total = total + (t if inv % 2 == 0 else -t)
    return total


def eval_poly(p: MPoly, point: Mapping[str, object]):
    return p.eval(point)


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in zip(*b)] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


# --------------------------------------------------------------------------
# Exact affine solving


def affine_solve(rows: Sequence[Sequence[object]], rhs: Sequence[object], nvars: int | None = None):
    """Solve ``A x = b`` over the rationals (``nvars`` is needed when there are no rows).

    Returns ``(p0, basis)`` with every solution ``p0 + sum(u_i * basis[i])``,
    or ``None`` if the system is inconsistent.  ``basis`` spans the kernel.
    """
    m = len(rows)
    nv = len(rows[0]) if m else (nvars or 0)
    A = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(nv):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(all(x == 0 for x in A[i][:nv]) and A[i][nv] != 0 for i in range(m)):
        return None
    p0 = [Fraction(0)] * nv
    for i, c in enumerate(pivots):
        p0[c] = A[i][nv]
    free = [c for c in range(nv) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nv
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -A[i][f]
        basis.append(v)
    return p0, basis


def linear_system(polys: Sequence[MPoly], variables: Sequence[str]):
    """Coefficient rows and right-hand sides of degree-<=1 polynomials ``= 0``."""
    rows, rhs = [], []
    for p in polys:
        if p.degree() > 1:
            raise ValueError("polynomial is not affine")
        lin, const = p.linear_coeffs()
        rows.append([Fraction(lin.get(v, 0)) for v in variables])
        rhs.append(-Fraction(const))
    return rows, rhs
