"""Alternating forms, Pfaffians, two-parameter pencils and their rank loci.

A pencil is the centre-valued bracket written in a basis of the centre: one
alternating matrix per centre coordinate.  Contracting with a functional on the
centre gives a single alternating form.  For a centre of rank two the
functionals are points ``(l1, l2)`` and the degeneracy of the contracted form is
governed by binary forms in ``l1, l2`` (Pfaffians of principal minors).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .errors import (DimensionMismatch, NotAlternating, OddDimension,
                     RequiresRankTwoCenter, ZeroForm)
from .linalg import RatMatrix, as_rational, rank


# ---------------------------------------------------------------------------
# alternating forms

class AltForm:
    """An alternating bilinear form given by its skew-symmetric Gram matrix."""

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix: RatMatrix):
        if not matrix.is_square():
            raise DimensionMismatch(f"form matrix must be square, got {matrix.shape}")
        n = matrix.rows
        for i in range(n):
            if matrix[i, i] != 0:
                raise NotAlternating(f"nonzero diagonal entry at ({i}, {i})", row=i, col=i)
            for j in range(i + 1, n):
                if matrix[i, j] != -matrix[j, i]:
                    raise NotAlternating(f"entries ({i}, {j}) and ({j}, {i}) are not opposite",
                                         row=j, col=i)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("AltForm is immutable")

    @classmethod
    def from_rows(cls, rows) -> "AltForm":
        return cls(RatMatrix.from_rows(rows))

    @classmethod
    def zero(cls, n: int) -> "AltForm":
        return cls(RatMatrix.zeros(n, n))

    def __call__(self, u, v) -> Fraction:
        return self.matrix.bilinear(u, v)

    def __eq__(self, other):
        return isinstance(other, AltForm) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"AltForm({self.matrix.to_rows()})"

    def __add__(self, other: "AltForm") -> "AltForm":
        return AltForm(self.matrix + other.matrix)

    def scale(self, c) -> "AltForm":
        return AltForm(self.matrix.scale(c))

    def rank(self) -> int:
        return rank(self.matrix)

    def restrict(self, basis: Sequence[Sequence]) -> "AltForm":
        """Gram matrix of the form on the span of ``basis``."""
        return AltForm(RatMatrix.from_rows([[self(u, v) for v in basis] for u in basis],
                                           cols=len(basis)))

    def principal(self, idx: Sequence[int]) -> "AltForm":
        return AltForm(self.matrix.submatrix(idx, idx))

    def pullback(self, p: RatMatrix) -> "AltForm":
        """``P^T M P``."""
        return AltForm(p.T @ self.matrix @ p)


def standard_form(k: int, n: Optional[int] = None) -> AltForm:
    """``S(k)`` on an ``n``-space: hyperbolic pairs ``(e1,e2), (e3,e4), ...`` then zeros."""
    n = k if n is None else n
    rows = [[0] * n for _ in range(n)]
    for i in range(k // 2):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return AltForm.from_rows(rows) if n else AltForm(RatMatrix(0, 0))


def _pfaffian_rows(a: List[List[Fraction]]) -> Fraction:
    """Skew elimination: pivot on the first row, take a 2x2 Schur complement, repeat."""
    n = len(a)
    if n % 2:
        return Fraction(0)
    result = Fraction(1)
    while n:
        j = next((j for j in range(1, n) if a[0][j]), None)
        if j is None:
            return Fraction(0)
        if j != 1:
            # symmetric swap of indices 1 and j flips the sign
            a[1], a[j] = a[j], a[1]
            for r in a:
                r[1], r[j] = r[j], r[1]
            result = -result
        piv = a[0][1]
        result *= piv
        rest = range(2, n)
        nxt = []
        for i in rest:
            ai0, ai1 = a[i][0], a[i][1]
            nxt.append([a[i][j] + (ai0 * a[1][j] - ai1 * a[0][j]) / piv for j in rest])
        a = nxt
        n -= 2
    return result


def pfaffian(f) -> Fraction:
    """Pfaffian of an alternating form (0 for odd dimension, 1 for dimension 0)."""
    m = f.matrix if isinstance(f, AltForm) else f
    return _pfaffian_rows(m.to_rows())


# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, lowest degree first)

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    a = [Fraction(c) for c in a]
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a = _trim(a)
    return _trim(q), a


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(p) -> Tuple[List[Tuple[Fraction, int]], list]:
    """All rational roots with multiplicity, and the root-free cofactor."""
    p = _trim(p)
    roots = []
    z = 0
    while p and p[0] == 0:
        p = p[1:]
        z += 1
    if z:
        roots.append((Fraction(0), z))
    if len(p) <= 1:
        return roots, p
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    cands = set()
    for num in _divisors(ints[0]):
        for d in _divisors(ints[-1]):
            cands.add(Fraction(num, d))
            cands.add(Fraction(-num, d))
    for r in sorted(cands):
        mult = 0
        while len(p) > 1 and _poly_eval(p, r) == 0:
            p = _poly_divmod(p, [-r, Fraction(1)])[0]
            mult += 1
        if mult:
            roots.append((r, mult))
    return roots, p


# ---------------------------------------------------------------------------
# binary forms and projective points

def _fmt_power(var, e):
    return var if e == 1 else f"{var}^{e}"


class BinaryForm:
    """Homogeneous form ``sum c_i l1^(d-i) l2^i`` of degree ``d``."""

    __slots__ = ("degree", "coefficients")

    def __init__(self, degree: int, coefficients: Sequence):
        coefficients = tuple(as_rational(c) for c in coefficients)
        if len(coefficients) != degree + 1:
            raise DimensionMismatch(f"degree {degree} form needs {degree + 1} coefficients")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coefficients", coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    @classmethod
    def from_dehomogenized(cls, degree: int, poly) -> "BinaryForm":
        """Form whose value at ``(1, t)`` is ``poly(t)``."""
        poly = _trim(poly)
        if len(poly) > degree + 1:
            raise DimensionMismatch("polynomial degree exceeds form degree")
        return cls(degree, list(poly) + [0] * (degree + 1 - len(poly)))

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __call__(self, l1, l2) -> Fraction:
        d = self.degree
        return sum((c * Fraction(l1) ** (d - i) * Fraction(l2) ** i
                    for i, c in enumerate(self.coefficients) if c), Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.degree == other.degree
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash((self.degree, self.coefficients))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, out)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise DimensionMismatch("adding forms of different degree")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coefficients,
                                                              other.coefficients)])

    def scale(self, c) -> "BinaryForm":
        return BinaryForm(self.degree, [c * a for a in self.coefficients])

    def dehomogenize(self) -> list:
        return _trim(self.coefficients)

    def monic(self) -> "BinaryForm":
        """Scaled so that the first nonzero coefficient is 1."""
        lead = next((c for c in self.coefficients if c), None)
        return self if lead is None else self.scale(1 / lead)

    def _monomial(self, i):
        d = self.degree
        parts = []
        if d - i:
            parts.append(_fmt_power("l1", d - i))
        if i:
            parts.append(_fmt_power("l2", i))
        return "*".join(parts) if parts else "1"

    def __str__(self):
        """Full rendering with every coefficient, e.g. ``1*l1^2 + 0*l1*l2 + 0*l2^2``."""
        if self.degree == 0:
            return str(self.coefficients[0])
        return " + ".join(f"{c}*{self._monomial(i)}" for i, c in enumerate(self.coefficients))

    def compact(self) -> str:
        """Nonzero terms only, unit coefficients dropped: ``l1^2``, ``l1*l2 - 2*l2^2``."""
        terms = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = self._monomial(i)
            mag = abs(c)
            body = mono if (mag == 1 and mono != "1") else (
                str(mag) if mono == "1" else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in terms[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"BinaryForm({self.compact()})"


@dataclass(frozen=True)
class ProjPoint:
    """A point ``[a : b]`` of the projective line, first nonzero coordinate 1."""

    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        a, b = as_rational(a), as_rational(b)
        if a == 0 and b == 0:
            raise ValueError("[0 : 0] is not a projective point")
        if a:
            a, b = Fraction(1), b / a
        else:
            b = Fraction(1)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def coords(self) -> Tuple[Fraction, Fraction]:
        return (self.a, self.b)

    def __str__(self):
        return f"[{self.a} : {self.b}]"

    def linear_factor(self) -> BinaryForm:
        """The linear form vanishing at this point: ``b*l1 - a*l2``."""
        return BinaryForm(1, [self.b, -self.a])


@dataclass(frozen=True)
class RootReport:
    roots: Tuple[Tuple[ProjPoint, int], ...]
    leftover: BinaryForm

    def points(self) -> List[ProjPoint]:
        return [p for p, _ in self.roots]


def binary_rational_roots(f: BinaryForm) -> RootReport:
    """Rational projective roots of ``f`` with multiplicities, plus the cofactor.

    ``product(linear factors ** mult) * leftover == f`` up to a nonzero rational
    scalar, and the leftover has no rational root.
    """
    if f.is_zero:
        raise ZeroForm("the zero form vanishes everywhere")
    d = f.degree
    g = f.dehomogenize()
    roots = []
    at_infinity = d - (len(g) - 1)
    if at_infinity:
        roots.append((ProjPoint(0, 1), at_infinity))
    affine, rest = _rational_roots(g)
    for r, m in affine:
        roots.append((ProjPoint(1, r), m))
    lead = rest[-1]
    rest = [c / lead for c in rest]
    leftover = BinaryForm.from_dehomogenized(len(rest) - 1, rest)
    roots.sort(key=lambda rm: (rm[0].a, rm[0].b))
    return RootReport(tuple(roots), leftover)


def binary_gcd(forms: Sequence[BinaryForm]) -> Optional[BinaryForm]:
    """Monic-ish gcd of the nonzero forms in ``forms``; ``None`` if all are zero."""
    nz = [f for f in forms if not f.is_zero]
    if not nz:
        return None
    # the power of l1 dividing f is its degree drop after dehomogenizing
    drop = min(f.degree - (len(f.dehomogenize()) - 1) for f in nz)
    g = nz[0].dehomogenize()
    for f in nz[1:]:
        g = _poly_gcd(g, f.dehomogenize())
    g = [c / g[-1] for c in g]
    return BinaryForm.from_dehomogenized(len(g) - 1 + drop, g)


def irreducible_factors(f: BinaryForm) -> List[Tuple[BinaryForm, int]]:
    """Factorization over Q of a form with no rational root.

    Forms of degree at most three without rational roots are irreducible; higher
    degrees are factored with sympy.
    """
    if f.degree == 0:
        return []
    if f.degree <= 3:
        return [(f.monic(), 1)]
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator)
                                     for c in f.dehomogenize()])), t, domain="QQ")
    _, facs = poly.factor_list()
    out = []
    for fac, mult in facs:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        out.append((BinaryForm.from_dehomogenized(len(coeffs) - 1, coeffs).monic(), int(mult)))
    return out


# ---------------------------------------------------------------------------
# pencils

class FormPencil:
    """``dimW`` alternating forms on a common ``dimV``-space."""

    __slots__ = ("dimV", "dimW", "coords")

    def __init__(self, coords: Sequence[AltForm], dimV: Optional[int] = None):
        coords = tuple(c if isinstance(c, AltForm) else AltForm(c) for c in coords)
        if dimV is None:
            if not coords:
                raise DimensionMismatch("dimV needed for an empty pencil")
            dimV = coords[0].dim
        for c in coords:
            if c.dim != dimV:
                raise DimensionMismatch(f"coordinate form of size {c.dim}, expected {dimV}")
        object.__setattr__(self, "dimV", dimV)
        object.__setattr__(self, "dimW", len(coords))
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("FormPencil is immutable")

    def __eq__(self, other):
        return isinstance(other, FormPencil) and self.coords == other.coords \
            and self.dimV == other.dimV

    def __hash__(self):
        return hash((self.dimV, self.coords))

    def bracket(self, u, v) -> tuple:
        return tuple(c(u, v) for c in self.coords)


def contract(p: FormPencil, psi: Sequence) -> AltForm:
    """The form ``sum_j psi_j * coords_j``."""
    if len(psi) != p.dimW:
        raise DimensionMismatch(f"functional of length {len(psi)} on a rank-{p.dimW} centre")
    n = p.dimV
    acc = [Fraction(0)] * (n * n)
    for c, form in zip(psi, p.coords):
        c = as_rational(c)
        if c:
            for idx, e in enumerate(form.matrix.entries):
                if e:
                    acc[idx] += c * e
    return AltForm(RatMatrix(n, n, acc))


def _interpolate(values: Sequence[Fraction]) -> list:
    """Coefficients of the polynomial taking ``values[t]`` at ``t = 0..d``."""
    d = len(values) - 1
    coeffs = [Fraction(0)] * (d + 1)
    for j, yj in enumerate(values):
        if not yj:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m in range(d + 1):
            if m == j:
                continue
            basis = [Fraction(0)] + basis
            for i in range(len(basis) - 1):
                basis[i] -= m * basis[i + 1]
            denom *= j - m
        for i, b in enumerate(basis):
            coeffs[i] += yj * b / denom
    return coeffs


def _pencil_pfaffian(m1: AltForm, m2: AltForm) -> BinaryForm:
    """``Pf(l1*M1 + l2*M2)`` by evaluating at ``(1, t)`` and interpolating."""
    n = m1.dim
    if n % 2:
        raise OddDimension(f"Pfaffian of an odd ({n}) dimensional pencil")
    d = n // 2
    vals = [pfaffian(AltForm(m1.matrix + m2.matrix.scale(t))) for t in range(d + 1)]
    return BinaryForm(d, _interpolate(vals))


def pfaffian_pencil(p: FormPencil) -> BinaryForm:
    if p.dimW != 2:
        raise RequiresRankTwoCenter(f"pencil has a rank-{p.dimW} centre")
    if p.dimV % 2:
        raise OddDimension(f"dimV = {p.dimV} is odd")
    return _pencil_pfaffian(*p.coords)


def determinant_pencil(p: FormPencil) -> BinaryForm:
    """``det(l1*M1 + l2*M2)``, the square of the Pfaffian form."""
    pf = pfaffian_pencil(p)
    return pf * pf


ALL_FUNCTIONALS = "AllFunctionals"
FINITE_POINTS = "FinitePoints"
NO_RATIONAL_POINTS = "NoRationalPoints"


@dataclass(frozen=True)
class RankLocus:
    """Functionals ``psi`` on a rank-two centre with ``rank(contract(p, psi)) <= k``.

    ``kind`` is one of ``AllFunctionals``, ``FinitePoints`` or
    ``NoRationalPoints``.  For the finite kinds, ``locus_form`` is the gcd of
    the Pfaffian minors, ``points`` its rational roots with multiplicity and
    ``irrational_factors`` the remaining irreducible factors over Q.  Those
    factors carry no rational roots (the rational root search is exhaustive),
    so ``resolved`` is true whenever the factorization was completed.
    """

    k: int
    kind: str
    points: Tuple[Tuple[ProjPoint, int], ...] = ()
    locus_form: Optional[BinaryForm] = None
    irrational_factors: Tuple[Tuple[BinaryForm, int], ...] = ()
    minors_checked: int = 0
    resolved: bool = True
    notes: Tuple[str, ...] = field(default=())

    def rational_points(self) -> List[ProjPoint]:
        return [p for p, _ in self.points]


def pfaffian_minor_forms(p: FormPencil, size: int) -> List[Tuple[Tuple[int, ...], BinaryForm]]:
    m1, m2 = p.coords
    out = []
    for idx in combinations(range(p.dimV), size):
        out.append((idx, _pencil_pfaffian(m1.principal(idx), m2.principal(idx))))
    return out


def rank_locus(p: FormPencil, k: int) -> RankLocus:
    if p.dimW != 2:
        raise RequiresRankTwoCenter(f"rank locus needs a rank-2 centre, got {p.dimW}")
    if k % 2 or k < 0:
        raise ValueError(f"k must be a nonnegative even number, got {k}")
    if k + 2 > p.dimV:
        return RankLocus(k, ALL_FUNCTIONALS)
    minors = pfaffian_minor_forms(p, k + 2)
    g = binary_gcd([f for _, f in minors])
    if g is None:
        return RankLocus(k, ALL_FUNCTIONALS, minors_checked=len(minors))
    rep = binary_rational_roots(g)
    for pt, _ in rep.roots:
        if contract(p, pt.coords).rank() > k:
            raise AssertionError(f"locus point {pt} fails re-verification")
    factors = tuple(irreducible_factors(rep.leftover))
    kind = FINITE_POINTS if rep.roots or not factors else NO_RATIONAL_POINTS
    return RankLocus(k, kind, rep.roots, g, factors, len(minors))


def symplectic_basis(f: AltForm) -> RatMatrix:
    """Invertible ``P`` (basis as columns) with ``P^T M P = S(r) + 0``, ``r = rank``.

    Columns come as hyperbolic pairs ``u1, v1, u2, v2, ...`` with
    ``f(ui, vi) = 1``, followed by a basis of the radical.
    """
    n = f.dim
    rest = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    pairs = []
    while True:
        hit = next(((i, j) for i in range(len(rest)) for j in range(i + 1, len(rest))
                    if f(rest[i], rest[j])), None)
        if hit is None:
            break
        i, j = hit
        u, v = rest[i], rest[j]
        c = f(u, v)
        v = [x / c for x in v]
        pairs += [u, v]
        nxt = []
        for idx, x in enumerate(rest):
            if idx in (i, j):
                continue
            a, b = f(x, v), f(x, u)
            nxt.append([xi - a * ui + b * vi for xi, ui, vi in zip(x, u, v)])
        rest = nxt
    return RatMatrix.from_columns(pairs + rest, rows=n) if n else RatMatrix(0, 0)
