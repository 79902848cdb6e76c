"""Complete torsion-free nilpotent class-2 groups of finite rank.

A group is a triple ``(V, W, [_,_])``: ``V`` is the quotient by the centre,
``W`` the centre, and the bracket an alternating bilinear map ``V x V -> W``
whose image spans ``W``.  Elements are pairs ``(v; w)`` multiplied by the
class-2 Campbell-Hausdorff law ``(v1; w1)(v2; w2) = (v1+v2; w1+w2+[v1,v2]/2)``.
Homomorphisms are pairs of linear maps ``(phi, psi)`` with
``psi [u, v]_A = [phi u, phi v]_B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (Decomposable, DimensionMismatch, GroupMismatch, Incompatible,
                     NotAlternating, OddK)
from .forms import AltForm, FormPencil, contract, standard_form
from .linalg import RatMatrix, as_rational, kernel, rank


class ClassTwoGroup:
    """A validated group ``(V, W, bracket)``; use :func:`make_group` to build one."""

    __slots__ = ("name", "pencil")

    def __init__(self, name: str, pencil: FormPencil):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "pencil", pencil)

    def __setattr__(self, key, value):
        raise AttributeError("ClassTwoGroup is immutable")

    @property
    def dimV(self) -> int:
        return self.pencil.dimV

    @property
    def dimW(self) -> int:
        return self.pencil.dimW

    @property
    def coords(self):
        return self.pencil.coords

    def bracket(self, u, v) -> tuple:
        return self.pencil.bracket(u, v)

    def form(self, psi) -> AltForm:
        return contract(self.pencil, psi)

    def radical(self) -> RatMatrix:
        """Vectors of ``V`` bracketing trivially with everything (columns)."""
        stacked = self.coords[0].matrix
        for c in self.coords[1:]:
            stacked = stacked.vstack(c.matrix)
        return kernel(stacked)

    def identity(self) -> "LieElement":
        return LieElement(self, [0] * self.dimV, [0] * self.dimW)

    def element(self, v, w=None) -> "LieElement":
        return LieElement(self, v, [0] * self.dimW if w is None else w)

    def generator(self, i: int) -> "LieElement":
        v = [0] * self.dimV
        v[i] = 1
        return self.element(v)

    def __eq__(self, other):
        return isinstance(other, ClassTwoGroup) and self.pencil == other.pencil

    def __hash__(self):
        return hash(self.pencil)

    def __repr__(self):
        return f"ClassTwoGroup({self.name!r}, dimV={self.dimV}, dimW={self.dimW})"


def make_group(name: str, dimV: int, dimW: int, matrices: Sequence) -> ClassTwoGroup:
    """Validate bracket coordinate matrices and wrap them as a group.

    Raises NotAlternating (with ``block``/``row``/``col`` set), DimensionMismatch
    or Decomposable when the coordinate matrices are linearly dependent, i.e.
    the bracket image is a proper subspace of the centre.
    """
    if dimW < 1:
        raise DimensionMismatch("abelian groups (dimW = 0) are outside the model")
    if len(matrices) != dimW:
        raise DimensionMismatch(f"expected {dimW} bracket matrices, got {len(matrices)}")
    forms = []
    for b, m in enumerate(matrices):
        if not isinstance(m, RatMatrix):
            m = RatMatrix.from_rows(m) if len(m) else RatMatrix(0, 0)
        if m.shape != (dimV, dimV):
            raise DimensionMismatch(f"bracket {b + 1} is {m.rows}x{m.cols}, expected {dimV}x{dimV}")
        try:
            forms.append(AltForm(m))
        except NotAlternating as exc:
            raise NotAlternating(f"bracket {b + 1}: {exc}", block=b, row=exc.row,
                                 col=exc.col) from None
    flat = RatMatrix.from_rows([f.matrix.entries for f in forms], cols=dimV * dimV)
    r = rank(flat)
    if r < dimW:
        raise Decomposable(
            f"bracket image has dimension {r} < dimW = {dimW}; the group splits as a direct product")
    return ClassTwoGroup(name, FormPencil(forms, dimV=dimV))


def standard_group(k: int) -> ClassTwoGroup:
    """``N(k,1)``: ``k``-dimensional ``V``, cyclic centre, bracket ``S(k)``."""
    if k < 2 or k % 2:
        raise OddK(f"N(k,1) needs an even k >= 2, got {k}")
    return make_group(f"N({k},1)", k, 1, [standard_form(k).matrix])


def _block_diag(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    n, m = a.rows, b.rows
    rows = [list(a.row(i)) + [0] * m for i in range(n)]
    rows += [[0] * n + list(b.row(i)) for i in range(m)]
    return RatMatrix.from_rows(rows, cols=n + m)


def direct_product(a: ClassTwoGroup, b: ClassTwoGroup, name: Optional[str] = None) -> ClassTwoGroup:
    za = RatMatrix.zeros(a.dimV, a.dimV)
    zb = RatMatrix.zeros(b.dimV, b.dimV)
    mats = [_block_diag(c.matrix, zb) for c in a.coords]
    mats += [_block_diag(za, c.matrix) for c in b.coords]
    return make_group(name or f"{a.name} x {b.name}", a.dimV + b.dimV, a.dimW + b.dimW, mats)


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class GroupHom:
    source: ClassTwoGroup
    target: ClassTwoGroup
    phi: RatMatrix
    psi: RatMatrix

    @property
    def phi_injective(self) -> bool:
        return rank(self.phi) == self.phi.cols

    @property
    def psi_injective(self) -> bool:
        return rank(self.psi) == self.psi.cols

    @property
    def injective(self) -> bool:
        return self.phi_injective and self.psi_injective

    def __call__(self, x: "LieElement") -> "LieElement":
        if x.group != self.source:
            raise GroupMismatch("element does not belong to the source group")
        return LieElement(self.target, self.phi.apply(x.v), self.psi.apply(x.w))

    def compose(self, after: "GroupHom") -> "GroupHom":
        """``after`` applied after ``self``."""
        return make_hom(self.source, after.target, after.phi @ self.phi, after.psi @ self.psi)


def compatibility_defect(a: ClassTwoGroup, b: ClassTwoGroup, phi: RatMatrix, psi: RatMatrix):
    """First basis pair ``(i, j)`` where ``psi [e_i, e_j] != [phi e_i, phi e_j]``, else None."""
    cols = phi.columns()
    n = a.dimV
    for i in range(n):
        for j in range(i + 1, n):
            lhs = psi.apply(a.bracket(_unit(n, i), _unit(n, j)))
            rhs = b.bracket(cols[i], cols[j])
            if lhs != rhs:
                return (i, j)
    return None


def _unit(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def make_hom(a: ClassTwoGroup, b: ClassTwoGroup, phi, psi) -> GroupHom:
    phi = phi if isinstance(phi, RatMatrix) else RatMatrix.from_rows(phi, cols=a.dimV)
    psi = psi if isinstance(psi, RatMatrix) else RatMatrix.from_rows(psi, cols=a.dimW)
    if phi.shape != (b.dimV, a.dimV):
        raise DimensionMismatch(f"phi must be {b.dimV}x{a.dimV}, got {phi.rows}x{phi.cols}")
    if psi.shape != (b.dimW, a.dimW):
        raise DimensionMismatch(f"psi must be {b.dimW}x{a.dimW}, got {psi.rows}x{psi.cols}")
    bad = compatibility_defect(a, b, phi, psi)
    if bad is not None:
        i, j = bad
        raise Incompatible(f"psi[e{i + 1}, e{j + 1}] differs from [phi e{i + 1}, phi e{j + 1}]")
    return GroupHom(a, b, phi, psi)


def identity_hom(a: ClassTwoGroup) -> GroupHom:
    return make_hom(a, a, RatMatrix.identity(a.dimV), RatMatrix.identity(a.dimW))


def scaling_hom(a: ClassTwoGroup, k) -> GroupHom:
    """``phi = k id`` on ``V`` and ``psi = k^2 id`` on ``W``."""
    k = as_rational(k)
    return make_hom(a, a, RatMatrix.scalar(a.dimV, k), RatMatrix.scalar(a.dimW, k * k))


# ---------------------------------------------------------------------------
# elements

class LieElement:
    """An element ``(v; w)`` of the completed group, in exponential coordinates."""

    __slots__ = ("group", "v", "w")

    def __init__(self, group: ClassTwoGroup, v, w):
        v = tuple(as_rational(x) for x in v)
        w = tuple(as_rational(x) for x in w)
        if len(v) != group.dimV or len(w) != group.dimW:
            raise DimensionMismatch(
                f"element needs {group.dimV}+{group.dimW} coordinates, got {len(v)}+{len(w)}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    def __setattr__(self, key, value):
        raise AttributeError("LieElement is immutable")

    def __eq__(self, other):
        return (isinstance(other, LieElement) and self.group == other.group
                and self.v == other.v and self.w == other.w)

    def __hash__(self):
        return hash((self.v, self.w))

    def __mul__(self, other):
        return bch_mul(self, other)

    def __pow__(self, q):
        return bch_pow(self, q)

    def is_identity(self) -> bool:
        return not any(self.v) and not any(self.w)

    def __repr__(self):
        v = ", ".join(map(str, self.v))
        w = ", ".join(map(str, self.w))
        return f"({v}; {w})"


def _same_group(x: LieElement, y: LieElement):
    if x.group != y.group:
        raise GroupMismatch(f"elements of {x.group.name} and {y.group.name} cannot be combined")


def bch_mul(x: LieElement, y: LieElement) -> LieElement:
    _same_group(x, y)
    br = x.group.bracket(x.v, y.v)
    v = [a + b for a, b in zip(x.v, y.v)]
    w = [a + b + c / 2 for a, b, c in zip(x.w, y.w, br)]
    return LieElement(x.group, v, w)


def bch_pow(x: LieElement, q) -> LieElement:
    """``x^q`` for rational ``q``; powers of one element stay on its line."""
    q = as_rational(q)
    return LieElement(x.group, [q * a for a in x.v], [q * a for a in x.w])


def bch_inv(x: LieElement) -> LieElement:
    return bch_pow(x, -1)


def group_commutator(x: LieElement, y: LieElement) -> LieElement:
    """``x y x^-1 y^-1``; in class 2 this is ``(0; [x.v, y.v])``."""
    _same_group(x, y)
    return bch_mul(bch_mul(bch_mul(x, y), bch_inv(x)), bch_inv(y))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingReport:
    k: int
    hom: GroupHom
    kernels_trivial: bool
    degree_factors: dict
    ok: bool


def graded_scaling_check(a: ClassTwoGroup, k: int) -> ScalingReport:
    """Check that ``x -> x^k`` on generators scales the graded pieces by ``k`` and ``k^2``.

    Degree one is ``V`` and degree two is ``W``; the induced map is checked on
    every basis vector, and both kernels are checked to be zero.
    """
    hom = scaling_hom(a, k)
    factors = {}
    ok = True
    for degree, mat, dim in ((1, hom.phi, a.dimV), (2, hom.psi, a.dimW)):
        seen = set()
        for i in range(dim):
            image = mat.apply(_unit(dim, i))
            ratio = image[i]
            if any(image[j] for j in range(dim) if j != i):
                ok = False
            seen.add(ratio)
        if seen != {Fraction(k) ** degree}:
            ok = False
        factors[degree] = sorted(seen)
    kernels = hom.injective
    return ScalingReport(k, hom, kernels, factors, ok and kernels)
