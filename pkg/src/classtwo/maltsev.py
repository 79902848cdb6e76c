"""Free class-2 groups, their completions, and the root subgroups ``H_k``.

``free_group(n)`` is the completion of the free nilpotent class-2 group on
``x1..xn``: ``V = Q^n`` and ``W`` has basis ``c(i,j) = [xi, xj]`` for ``i < j``.
``H_k`` is the subgroup generated by ``xi^(1/k)``.  Writing ``yi = xi^(1/k)``,
every element of ``H_k`` is uniquely ``y1^a1 ... yn^an * prod [yi,yj]^bij``
with integer ``a`` and ``b``, and since ``[yi,yj] = c(i,j)^(1/k^2)`` this gives
a closed-form membership test: ``k v`` is integral and
``k^2 (w_ij - v_i v_j / 2)`` is integral for every ``i < j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ClassTwoError, GroupMismatch, TooFewGenerators
from .groups import (ClassTwoGroup, GroupHom, LieElement, bch_mul, bch_pow,
                     group_commutator, make_group, scaling_hom)
from .linalg import RatMatrix, as_rational, parse_rational


@dataclass(frozen=True)
class FreeClassTwo:
    n: int
    underlying: ClassTwoGroup

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return list(combinations(range(self.n), 2))

    def pair_index(self, i: int, j: int) -> int:
        """Index of ``c(i,j)`` (0-based generator indices, ``i < j``) in ``W``."""
        if not 0 <= i < j < self.n:
            raise ValueError(f"need 0 <= i < j < {self.n}, got ({i}, {j})")
        return self.pairs.index((i, j))

    def generator(self, i: int) -> LieElement:
        return self.underlying.generator(i)

    def central(self, i: int, j: int, q=1) -> LieElement:
        w = [0] * self.underlying.dimW
        w[self.pair_index(i, j)] = as_rational(q)
        return self.underlying.element([0] * self.n, w)

    def element(self, v, w=None) -> LieElement:
        return self.underlying.element(v, w)


def free_group(n: int) -> FreeClassTwo:
    if n < 2:
        raise TooFewGenerators(f"the free class-2 group needs n >= 2 generators, got {n}")
    mats = []
    for i, j in combinations(range(n), 2):
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = 1
        rows[j][i] = -1
        mats.append(RatMatrix.from_rows(rows))
    return FreeClassTwo(n, make_group(f"F2({n})", n, len(mats), mats))


def _check(F: FreeClassTwo, g: LieElement):
    if g.group != F.underlying:
        raise GroupMismatch(f"element is not in {F.underlying.name}")


def normal_form(F: FreeClassTwo, g: LieElement, k: int = 1):
    """Exponents ``(a, b)`` with ``g = prod yi^ai * prod [yi,yj]^bij``, ``yi = xi^(1/k)``.

    The exponents are rational; ``g`` lies in ``H_k`` exactly when all are integers.
    """
    _check(F, g)
    a = [k * x for x in g.v]
    b = {}
    for idx, (i, j) in enumerate(F.pairs):
        b[(i, j)] = k * k * g.w[idx] - a[i] * a[j] / 2
    return a, b


@dataclass(frozen=True)
class LatticeWitness:
    """``element`` written as a word in ``xi^(1/k)``.

    ``expression`` holds the generator part ``(i, exponent)`` in index order,
    every exponent with denominator dividing ``k``; ``central`` holds integer
    powers of the commutators ``[xi^(1/k), xj^(1/k)]``.
    """

    element: LieElement
    k: int
    expression: Tuple[Tuple[int, Fraction], ...]
    central: Tuple[Tuple[Tuple[int, int], int], ...]

    def evaluate(self) -> LieElement:
        grp = self.element.group
        roots = [bch_pow(grp.generator(i), Fraction(1, self.k)) for i in range(grp.dimV)]
        acc = grp.identity()
        for i, e in self.expression:
            acc = bch_mul(acc, bch_pow(grp.generator(i), e))
        for (i, j), b in self.central:
            acc = bch_mul(acc, bch_pow(group_commutator(roots[i], roots[j]), b))
        return acc

    def verify(self) -> bool:
        return (self.evaluate() == self.element
                and all((e * self.k).denominator == 1 for _, e in self.expression))


def hk_membership(F: FreeClassTwo, g: LieElement, k: int) -> Optional[LatticeWitness]:
    """A witness that ``g`` lies in ``H_k``, or ``None`` if it does not."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    a, b = normal_form(F, g, k)
    if any(x.denominator != 1 for x in a) or any(x.denominator != 1 for x in b.values()):
        return None
    expr = tuple((i, Fraction(int(ai), k)) for i, ai in enumerate(a) if ai)
    central = tuple((ij, int(bij)) for ij, bij in b.items() if bij)
    wit = LatticeWitness(g, k, expr, central)
    if not wit.verify():
        raise AssertionError("lattice witness failed to re-evaluate")
    return wit


def _factor(n: int) -> Dict[int, int]:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _square_root_ceiling(d: int) -> int:
    """Smallest ``m`` with ``d | m^2``."""
    m = 1
    for p, e in _factor(d).items():
        m *= p ** ((e + 1) // 2)
    return m


def lemma_bound(F: FreeClassTwo, generators: Sequence[LieElement]) -> int:
    """Smallest ``k`` with every generator in ``H_k``.

    The set of admissible ``k`` is exactly the multiples of the returned value,
    so it divides any other admissible bound (e.g. the product of the exponent
    denominators of words representing the generators).
    """
    k = 1
    for g in generators:
        _check(F, g)
        k = lcm(k, *(x.denominator for x in g.v))
        for idx, (i, j) in enumerate(F.pairs):
            r = g.w[idx] - g.v[i] * g.v[j] / 2
            k = lcm(k, _square_root_ceiling(r.denominator))
    return k


@dataclass(frozen=True)
class RootEndomorphism:
    k: int
    hom: GroupHom

    def maps_into_lattice(self, F: FreeClassTwo, samples: Sequence[LieElement]) -> bool:
        """Every sampled element of ``H_k`` lands in ``H_1``, the lattice group itself."""
        for g in samples:
            if hk_membership(F, g, self.k) is None:
                raise ValueError("sample is not in H_k")
            if hk_membership(F, self.hom(g), 1) is None:
                return False
        return True


def root_endomorphism(F: FreeClassTwo, k: int) -> RootEndomorphism:
    """The endomorphism extending ``xi -> xi^k``: ``k`` on ``V``, ``k^2`` on ``W``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    hom = scaling_hom(F.underlying, k)
    if not hom.injective:
        raise AssertionError("scaling endomorphism must be injective")
    return RootEndomorphism(k, hom)


# ---------------------------------------------------------------------------
# element words: x1^(1/2)*x2^(1/3)*c(1,2)^(5), generators 1-based

_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(w)(\d+)|(c)\(\s*(\d+)\s*,\s*(\d+)\s*\)|(1)(?![\d/]))"
                    r"(?:\s*\^\s*(?:\(\s*([+-]?\d+(?:/\d+)?)\s*\)|([+-]?\d+)))?\s*")


def parse_element(group, text: str) -> LieElement:
    """Evaluate a word such as ``x1^(1/2)*x2*c(1,2)^(-3)`` in a group.

    ``xi`` is the i-th basis vector of ``V``, ``wi`` the i-th basis vector of the
    centre and ``c(i,j)`` the group commutator ``[xi, xj]``; ``1`` is the
    identity.  The free group's ``c(i,j)`` coincides with its centre basis.
    """
    grp = group.underlying if isinstance(group, FreeClassTwo) else group
    factors = [f for f in text.split("*")]
    acc = grp.identity()
    for raw in factors:
        m = _TOKEN.fullmatch(raw)
        if not m:
            raise ClassTwoError(f"cannot parse factor {raw.strip()!r} in {text!r}")
        exp = parse_rational(m.group(9) or m.group(10) or "1")
        if m.group(1):
            i = int(m.group(2)) - 1
            if not 0 <= i < grp.dimV:
                raise ClassTwoError(f"generator x{i + 1} out of range")
            base = grp.generator(i)
        elif m.group(3):
            i = int(m.group(4)) - 1
            if not 0 <= i < grp.dimW:
                raise ClassTwoError(f"central basis element w{i + 1} out of range")
            w = [0] * grp.dimW
            w[i] = 1
            base = grp.element([0] * grp.dimV, w)
        elif m.group(5):
            i, j = int(m.group(6)) - 1, int(m.group(7)) - 1
            if not (0 <= i < grp.dimV and 0 <= j < grp.dimV):
                raise ClassTwoError(f"c({i + 1},{j + 1}) out of range")
            base = group_commutator(grp.generator(i), grp.generator(j))
        else:
            base = grp.identity()
        acc = bch_mul(acc, bch_pow(base, exp))
    return acc


def _fmt_exp(q: Fraction) -> str:
    return str(q) if q.denominator == 1 and q >= 0 else f"({q})"


def format_element(group, g: LieElement) -> str:
    """Normal-form word ``x1^a1*...*xn^an`` times a central correction."""
    grp = group.underlying if isinstance(group, FreeClassTwo) else group
    parts = []
    for i, a in enumerate(g.v):
        if a:
            parts.append(f"x{i + 1}" if a == 1 else f"x{i + 1}^{_fmt_exp(a)}")
    # central part left over after the ordered product of generator powers
    prefix = grp.identity()
    for i, a in enumerate(g.v):
        prefix = bch_mul(prefix, bch_pow(grp.generator(i), a))
    resid = [x - y for x, y in zip(g.w, prefix.w)]
    if isinstance(group, FreeClassTwo):
        for idx, (i, j) in enumerate(group.pairs):
            if resid[idx]:
                parts.append(f"c({i + 1},{j + 1})^{_fmt_exp(resid[idx])}")
    else:
        for idx, r in enumerate(resid):
            if r:
                parts.append(f"w{idx + 1}^{_fmt_exp(r)}")
    return "*".join(parts) if parts else "1"
