"""Decision procedures for approximation and geometric equivalence.

Every answer is a :class:`Verdict` whose certificate can be re-checked by
independent recomputation (ranks, dimensions, hom compatibility).  Searches
for subspaces and homomorphisms are bounded by coefficient height and visit
candidates in a fixed order, so results are reproducible; when a bounded
search fails without an impossibility proof the answer is
``UndeterminedOverQ`` rather than ``No``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, List, Optional, Sequence

from .errors import CenterRankUnsupported, OddDimension, OddK
from .forms import (ALL_FUNCTIONALS, AltForm, ProjPoint, binary_rational_roots,
                    determinant_pencil, irreducible_factors, pfaffian_pencil, rank_locus,
                    symplectic_basis)
from .groups import ClassTwoGroup, GroupHom, identity_hom, make_group, make_hom, standard_group
from .linalg import RatMatrix, inverse, kernel, rank, solve, vector_rank

YES = "Yes"
NO = "No"
UNDETERMINED = "UndeterminedOverQ"

STANDARD_CLASS = "StandardClass"
ISOMORPHIC_PAIR = "IsomorphicPair"
DISTINCT = "Distinct"

# citation keys used in reports
EMBEDDING_CRITERION = "standard-embedding-criterion"
FUNCTIONAL_CRITERION = "standard-approximation-by-functionals"
FUNCTIONAL_CHAIN = "functional-realization-chain"
RANK_TWO_COMPARISON = "rank-two-centre-comparison"
RANK_TWO_DICHOTOMY = "rank-two-centre-dichotomy"
FULL_RANK_OBSTRUCTION = "full-rank-obstruction"
CYCLIC_CENTRE = "cyclic-centre-classification"
IMAGE_SPANS_CENTRE = "bracket-image-spans-centre"

DEFAULT_HEIGHT = 2
DEFAULT_BUDGET = 20000


@dataclass
class Verdict:
    question: str
    answer: str
    certificate: dict = field(default_factory=dict)
    trace: List[str] = field(default_factory=list)
    citations: List[str] = field(default_factory=list)

    @property
    def yes(self) -> bool:
        return self.answer == YES

    @property
    def no(self) -> bool:
        return self.answer == NO


@dataclass
class EquivClassReport:
    classification: str
    k: Optional[int] = None
    details: List[str] = field(default_factory=list)
    certificate: dict = field(default_factory=dict)
    trace: List[str] = field(default_factory=list)
    citations: List[str] = field(default_factory=list)

    @property
    def answer(self) -> str:
        if self.classification in (STANDARD_CLASS, ISOMORPHIC_PAIR):
            return YES
        if self.classification == DISTINCT:
            return NO
        return UNDETERMINED


@dataclass(frozen=True)
class IsoResult:
    outcome: str  # "Isomorphic", "Distinguished" or UNDETERMINED
    hom: Optional[GroupHom] = None
    invariant: Optional[str] = None
    values: tuple = ()


def _even_range(top: int) -> range:
    return range(2, top + 1, 2)


def _check_k(k: int):
    if k < 2 or k % 2:
        raise OddK(f"k must be even and at least 2, got {k}")


# ---------------------------------------------------------------------------
# bounded enumeration

def _combos(dim: int, height: int, positive_first: bool = True) -> Iterator[tuple]:
    """Nonzero integer vectors of height <= ``height``, ordered by height, support, entries."""
    for h in range(1, height + 1):
        values = [c for c in range(-h, h + 1) if c]
        for nnz in range(1, dim + 1):
            for support in combinations(range(dim), nnz):
                for coeffs in product(values, repeat=nnz):
                    if max(abs(c) for c in coeffs) != h:
                        continue
                    if positive_first and coeffs[0] < 0:
                        continue
                    vec = [0] * dim
                    for pos, c in zip(support, coeffs):
                        vec[pos] = c
                    yield tuple(vec)


def _combine(basis: Sequence[Sequence], coeffs: Sequence) -> list:
    n = len(basis[0])
    out = [Fraction(0)] * n
    for c, b in zip(coeffs, basis):
        if c:
            for i in range(n):
                out[i] += c * b[i]
    return out


def _projective_points(height: int) -> Iterator[ProjPoint]:
    seen = set()
    for vec in _combos(2, height):
        p = ProjPoint(*vec)
        if p not in seen:
            seen.add(p)
            yield p


# ---------------------------------------------------------------------------
# certificate checks

def verify_standard_subspace(a: ClassTwoGroup, basis: Sequence[Sequence], k: int) -> bool:
    """``span(basis)`` is ``k``-dimensional, brackets into a line, and is nondegenerate."""
    if len(basis) != k or vector_rank(basis) != k:
        return False
    images = [a.bracket(u, v) for u, v in combinations(basis, 2)]
    if vector_rank(images) != 1:
        return False
    w0 = next(w for w in images if any(w))
    j = next(i for i, x in enumerate(w0) if x)
    chi = [int(i == j) for i in range(a.dimW)]
    return a.form(chi).restrict(basis).rank() == k


def verify_functionals(a: ClassTwoGroup, functionals: Sequence[Sequence], k: int) -> bool:
    """``dimW`` independent functionals, each contracting the bracket to rank <= k."""
    if len(functionals) != a.dimW or vector_rank(functionals) != a.dimW:
        return False
    return all(a.form(f).rank() <= k for f in functionals)


# ---------------------------------------------------------------------------
# embedding N(k,1) into A

def _constraint_space(n: int, forms: Sequence[AltForm], vectors: Sequence[Sequence]) -> list:
    """Basis of ``{x : F(c, x) = 0 for all F in forms, c in vectors}``."""
    rows = []
    for c in vectors:
        for f in forms:
            row = [f(c, [int(i == j) for i in range(n)]) for j in range(n)]
            if any(row):
                rows.append(row)
    if not rows:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    return [list(col) for col in kernel(RatMatrix.from_rows(rows, cols=n)).columns()]


def _standard_subspace_search(n, iso_forms, sep, k, height, budget):
    """Backtracking for ``k`` vectors: isotropic for ``iso_forms``, a symplectic basis for ``sep``.

    Each new hyperbolic pair is orthogonal, for every form involved, to the
    pairs already chosen; any valid subspace has such a basis, so only the
    height bound makes the search incomplete.
    """
    counter = [0]
    all_forms = list(iso_forms) + [sep]

    def extend(chosen):
        if len(chosen) == k:
            return chosen
        space = _constraint_space(n, all_forms, chosen)
        if len(space) < k - len(chosen):
            return None
        for coeffs in _combos(len(space), height):
            counter[0] += 1
            if counter[0] > budget:
                return None
            u = _combine(space, coeffs)
            cu = _intersect(space, n, iso_forms, u) if iso_forms else space
            vs = [b for b in cu if sep(u, b)]
            for v in vs[:4]:
                c = sep(u, v)
                v = [x / c for x in v]
                found = extend(chosen + [u, v])
                if found:
                    return found
        return None

    return extend([]), counter[0]


def _intersect(space, n, forms, u):
    """Vectors of ``span(space)`` orthogonal to ``u`` for every form."""
    rows = []
    for f in forms:
        rows.append([f(u, b) for b in space])
    ker = kernel(RatMatrix.from_rows(rows, cols=len(space)))
    return [_combine(space, col) for col in ker.columns()]


def embeds_standard(a: ClassTwoGroup, k: int, height: int = DEFAULT_HEIGHT,
                    budget: int = DEFAULT_BUDGET) -> Verdict:
    """Does ``N(k,1)`` embed in ``a`` (equivalently ``N(k,1) < a``)?

    Looks for a ``k``-dimensional ``U <= V`` whose brackets span a line and on
    which the bracket is nondegenerate.
    """
    _check_k(k)
    n, r = a.dimV, a.dimW
    q = f"N({k},1) < {a.name}"
    cites = [EMBEDDING_CRITERION]
    if k > n:
        return Verdict(q, NO, {"reason": "k exceeds dim V", "k": k, "dimV": n},
                       [f"k = {k} > dim V = {n}"], cites)
    if r == 1:
        form = a.coords[0]
        rk = form.rank()
        if rk < k:
            return Verdict(q, NO, {"reason": "form rank below k", "rank": rk},
                           [f"rank of the bracket form is {rk} < {k}"], cites)
        p = symplectic_basis(form)
        basis = [list(p.col(j)) for j in range(k)]
        assert verify_standard_subspace(a, basis, k)
        return Verdict(q, YES, {"basis": basis, "line": [Fraction(1)], "rank": rk},
                       [f"rank of the bracket form is {rk} >= {k}",
                        f"first {k} vectors of a symplectic basis span U"], cites)
    if k == n:
        dim_img = vector_rank([a.bracket(u, v) for u, v in combinations(
            [[int(i == j) for i in range(n)] for j in range(n)], 2)])
        return Verdict(q, NO, {"reason": "U would be all of V, whose brackets span the centre",
                               "image_dim": dim_img},
                       [f"k = dim V = {n}, so U = V and [V, V] has dimension {dim_img} > 1"],
                       cites + [IMAGE_SPANS_CENTRE])
    trace = []
    if r == 2:
        # the functional killing the line must admit a k-dim isotropic subspace
        bound = 2 * (n - k)
        locus = rank_locus(a.pencil, bound)
        trace.append(f"isotropy needs rank(psi) <= {bound}; locus kind {locus.kind}")
        if locus.kind != ALL_FUNCTIONALS and not locus.points:
            return Verdict(q, NO, {"reason": "no rational functional of rank <= 2(dimV-k)",
                                   "locus": locus}, trace, cites)
        points = (_projective_points(height) if locus.kind == ALL_FUNCTIONALS
                  else iter(locus.rational_points()))
        lines = ([pt.b, -pt.a] for pt in points)
    else:
        lines = (list(v) for v in _combos(r, height))
    tried = 0
    for w0 in lines:
        tried += 1
        w0 = [Fraction(x) for x in w0]
        killers = [list(col) for col in kernel(RatMatrix.from_rows([w0])).columns()]
        iso = [a.form(f) for f in killers]
        sep = a.form(w0)
        basis, used = _standard_subspace_search(n, iso, sep, k, height, budget)
        budget -= used
        if basis is not None:
            assert verify_standard_subspace(a, basis, k)
            trace.append(f"line spanned by {_vec(w0)} admits U of dimension {k}")
            return Verdict(q, YES, {"basis": basis, "line": w0}, trace, cites)
        if budget <= 0:
            break
    trace.append(f"bounded search (height {height}) over {tried} candidate lines found no U")
    return Verdict(q, UNDETERMINED, {"height": height, "lines_tried": tried}, trace, cites)


def _vec(v) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in v) + ")"


# ---------------------------------------------------------------------------
# approximating A by N(k,1)

def approx_by_standard(a: ClassTwoGroup, k: int) -> Verdict:
    """Is ``a < N(k,1)``: ``dimW`` independent functionals each of rank <= k?"""
    _check_k(k)
    r = a.dimW
    q = f"{a.name} < N({k},1)"
    cites = [FUNCTIONAL_CRITERION]
    if r > 2:
        raise CenterRankUnsupported(f"centre rank {r} > 2")
    if r == 1:
        rk = a.coords[0].rank()
        if rk <= k:
            return Verdict(q, YES, {"functionals": [[Fraction(1)]], "ranks": [rk]},
                           [f"single form has rank {rk} <= {k}"], cites)
        return Verdict(q, NO, {"rank": rk}, [f"single form has rank {rk} > {k}"], cites)
    locus = rank_locus(a.pencil, k)
    trace = [f"rank <= {k} locus: {locus.kind}"]
    if locus.locus_form is not None:
        trace.append(f"gcd of Pfaffian minors of size {k + 2}: {locus.locus_form.compact()}")
    for pt, m in locus.points:
        trace.append(f"rational degenerate functional {pt} with multiplicity {m}")
    if locus.kind == ALL_FUNCTIONALS:
        funcs = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    elif len(locus.points) >= 2:
        funcs = [list(p.coords) for p in locus.rational_points()[:2]]
    elif locus.resolved:
        for fac, m in locus.irrational_factors:
            trace.append(f"factor {fac.compact()} (multiplicity {m}) has no rational root")
        return Verdict(q, NO, {"locus": locus}, trace
                       + [f"at most one rational functional of rank <= {k}; two are needed"], cites)
    else:
        return Verdict(q, UNDETERMINED, {"locus": locus}, trace, cites)
    assert verify_functionals(a, funcs, k)
    ranks = [a.form(f).rank() for f in funcs]
    trace.append(f"independent functionals {[_vec(f) for f in funcs]} with ranks {ranks}")
    return Verdict(q, YES, {"functionals": funcs, "ranks": ranks, "locus": locus}, trace, cites)


def full_rank_obstruction(a: ClassTwoGroup) -> Verdict:
    """``a ~ N(dimV, 1)`` is impossible for a centre of rank two."""
    if a.dimW != 2:
        raise CenterRankUnsupported(f"needs a rank-2 centre, got {a.dimW}")
    n = a.dimV
    if n % 2:
        raise OddDimension(f"dim V = {n} is odd")
    basis = [[int(i == j) for i in range(n)] for j in range(n)]
    dim_img = vector_rank([a.bracket(u, v) for u, v in combinations(basis, 2)])
    trace = [f"an embedded N({n},1) would have to fill V (dim {n})",
             f"but [V, V] has dimension {dim_img} = dim W, not 1"]
    return Verdict(f"{a.name} ~ N({n},1)", NO,
                   {"reason": "bracket image of V spans the rank-2 centre", "image_dim": dim_img,
                    "k": n}, trace, [FULL_RANK_OBSTRUCTION, IMAGE_SPANS_CENTRE, EMBEDDING_CRITERION])


def equiv_standard(a: ClassTwoGroup, k: int, **search) -> Verdict:
    """``a ~ N(k,1)``: both ``a < N(k,1)`` and ``N(k,1) < a``."""
    _check_k(k)
    q = f"{a.name} ~ N({k},1)"
    if a.dimW == 2 and k == a.dimV:
        v = full_rank_obstruction(a)
        v.question = q
        return v
    if a.dimW == 1:
        rk = a.coords[0].rank()
        ans = YES if rk == k else NO
        return Verdict(q, ans, {"rank": rk}, [f"single form has rank {rk}"], [CYCLIC_CENTRE])
    ap = approx_by_standard(a, k)
    if ap.no:
        return Verdict(q, NO, {"approx": ap}, ap.trace, ap.citations)
    em = embeds_standard(a, k, **search)
    if em.no:
        return Verdict(q, NO, {"embed": em}, em.trace, em.citations)
    ans = YES if ap.yes and em.yes else UNDETERMINED
    return Verdict(q, ans, {"approx": ap, "embed": em}, ap.trace + em.trace,
                   ap.citations + em.citations)


# ---------------------------------------------------------------------------
# homomorphism search

def _psi_candidates(ra: int, rb: int, height: int) -> Iterator[RatMatrix]:
    for vec in _combos(ra * rb, height, positive_first=False):
        m = RatMatrix(rb, ra, vec)
        if rank(m) == ra:
            yield m


def _psi_plausible(a, b, psi, square):
    """Pulling a functional back through ``psi`` cannot raise the rank of its form."""
    rb = b.dimW
    tests = [[int(i == j) for i in range(rb)] for j in range(rb)]
    tests.append([1] * rb)
    for chi in tests:
        pulled = psi.T.apply(chi)
        ra_, rb_ = a.form(pulled).rank(), b.form(chi).rank()
        if ra_ > rb_ or (square and ra_ != rb_):
            return False
    return True


def _affine_candidates(sol, ker_cols, m, height, rows, rhs):
    seen = []
    base = list(sol)
    seen.append(base)
    if ker_cols:
        for coeffs in _combos(len(ker_cols), height, positive_first=False):
            seen.append([x + y for x, y in zip(base, _combine(ker_cols, coeffs))])
        if m <= 6:
            for vec in _combos(m, height, positive_first=False):
                if all(sum(r_ * x for r_, x in zip(row, vec)) == c for row, c in zip(rows, rhs)):
                    seen.append([Fraction(x) for x in vec])
    out, keys = [], set()
    for v in seen:
        key = tuple(v)
        if key not in keys:
            keys.add(key)
            out.append(v)
    return out


def search_embedding(a: ClassTwoGroup, b: ClassTwoGroup, height: int = 1,
                     phi_height: int = 1, budget: int = DEFAULT_BUDGET,
                     square: bool = False) -> Optional[GroupHom]:
    """Bounded search for ``(phi, psi)`` with both maps injective.

    ``psi`` runs over integer matrices of the given height; ``phi`` is built
    column by column, each column solving the linear equations
    ``[phi e_i, phi e_j]_B = psi [e_i, e_j]_A`` against the columns fixed
    before it.
    """
    n, m, ra, rb = a.dimV, b.dimV, a.dimW, b.dimW
    if rb < ra or m < n:
        return None
    counter = [0]
    units = [[int(i == j) for i in range(n)] for j in range(n)]

    def extend(cols, psi):
        j = len(cols)
        if j == n:
            return cols
        counter[0] += 1
        if counter[0] > budget:
            return None
        rows, rhs = [], []
        for i in range(j):
            target = psi.apply(a.bracket(units[i], units[j]))
            for l, form in enumerate(b.coords):
                rows.append([form(cols[i], [int(t == s) for t in range(m)]) for s in range(m)])
                rhs.append(target[l])
        if not rows:
            cands = [[Fraction(x) for x in v] for v in _combos(m, phi_height)]
        else:
            rm = RatMatrix.from_rows(rows, cols=m)
            sol = solve(rm, RatMatrix.column(rhs))
            if sol is None:
                return None
            ker_cols = kernel(rm).columns()
            cands = _affine_candidates(sol.col(0), ker_cols, m, phi_height, rows, rhs)
        for f in cands:
            if vector_rank(cols + [f]) != j + 1:
                continue
            found = extend(cols + [f], psi)
            if found:
                return found
            if counter[0] > budget:
                return None
        return None

    for psi in _psi_candidates(ra, rb, height):
        if not _psi_plausible(a, b, psi, square):
            continue
        cols = extend([], psi)
        if cols:
            phi = RatMatrix.from_columns(cols, rows=m)
            hom = make_hom(a, b, phi, psi)
            if hom.injective:
                return hom
        if counter[0] > budget:
            break
    return None


# ---------------------------------------------------------------------------
# comparison A < B for a rank-two centre

def precedes(a: ClassTwoGroup, b: ClassTwoGroup, height: int = DEFAULT_HEIGHT,
             budget: int = DEFAULT_BUDGET) -> Verdict:
    """``a < b`` for ``dimW_a = 2``: a chain through some ``N(k,1)``, or an embedding."""
    if a.dimW != 2:
        raise CenterRankUnsupported(f"comparison needs a rank-2 centre on the left, got {a.dimW}")
    q = f"{a.name} < {b.name}"
    trace, cites = [], [RANK_TWO_COMPARISON]
    chain_all_no = True
    per_k = {}
    for k in _even_range(a.dimV):
        ap = approx_by_standard(a, k)
        if ap.no:
            per_k[k] = NO
            trace.append(f"k={k}: {a.name} < N({k},1) fails")
            continue
        em = embeds_standard(b, k, height=height, budget=budget)
        if ap.yes and em.yes:
            trace.append(f"k={k}: {a.name} < N({k},1) < {b.name}")
            assert verify_functionals(a, ap.certificate["functionals"], k)
            assert verify_standard_subspace(b, em.certificate["basis"], k)
            return Verdict(q, YES, {"route": "standard-chain", "k": k, "approx": ap, "embed": em},
                           trace, cites + [FUNCTIONAL_CHAIN, FUNCTIONAL_CRITERION,
                                           EMBEDDING_CRITERION])
        per_k[k] = NO if em.no else UNDETERMINED
        chain_all_no = chain_all_no and em.no
        trace.append(f"k={k}: {a.name} < N({k},1) is {ap.answer}, N({k},1) < {b.name} is {em.answer}")
    if b.dimW < a.dimW or b.dimV < a.dimV:
        trace.append("no injective (phi, psi): target spaces are too small")
        embed_possible = False
    else:
        hom = search_embedding(a, b, height=1, budget=budget)
        if hom is not None:
            trace.append("found an embedding (phi, psi) with trivial kernels")
            return Verdict(q, YES, {"route": "embedding", "hom": hom}, trace, cites)
        trace.append("bounded embedding search found nothing")
        embed_possible = True
    if chain_all_no and not embed_possible:
        return Verdict(q, NO, {"chain": per_k, "embedding": "impossible by dimension"}, trace,
                       cites + [FUNCTIONAL_CRITERION, EMBEDDING_CRITERION])
    return Verdict(q, UNDETERMINED, {"chain": per_k}, trace, cites)


# ---------------------------------------------------------------------------
# isomorphism invariants

def _locus_signature(locus):
    return (locus.kind, tuple(sorted(m for _, m in locus.points)),
            tuple(sorted((f.degree, m) for f, m in locus.irrational_factors)))


def invariants(a: ClassTwoGroup) -> dict:
    """Isomorphism invariants, each stable under base changes of ``V`` and ``W``."""
    inv = {"dims": (a.dimV, a.dimW), "radical": a.radical().cols}
    if a.dimW == 1:
        inv["form rank"] = a.coords[0].rank()
    if a.dimW == 2:
        if a.dimV % 2 == 0:
            pf = pfaffian_pencil(a.pencil)
            if pf.is_zero:
                inv["pfaffian"] = ("zero",)
            else:
                rep = binary_rational_roots(pf)
                facs = irreducible_factors(rep.leftover)
                inv["pfaffian"] = (pf.degree, tuple(sorted(m for _, m in rep.roots)),
                                   tuple(sorted((f.degree, m) for f, m in facs)))
        for k in range(0, a.dimV - 1, 2):
            inv[f"rank<={k} locus"] = _locus_signature(rank_locus(a.pencil, k))
    return inv


def iso_distinguish(a: ClassTwoGroup, b: ClassTwoGroup, height: int = 1,
                    budget: int = DEFAULT_BUDGET) -> IsoResult:
    ia, ib = invariants(a), invariants(b)
    for key in ia:
        if ia[key] != ib.get(key):
            return IsoResult("Distinguished", invariant=key, values=(ia[key], ib.get(key)))
    if a.dimW == 1:
        pa, pb = symplectic_basis(a.coords[0]), symplectic_basis(b.coords[0])
        hom = make_hom(a, b, pb @ inverse(pa), RatMatrix.identity(1))
        return IsoResult("Isomorphic", hom=hom)
    if a == b:
        return IsoResult("Isomorphic", hom=identity_hom(a))
    hom = search_embedding(a, b, height=height, budget=budget, square=True)
    if hom is None:
        back = search_embedding(b, a, height=height, budget=budget, square=True)
        if back is not None:
            hom = make_hom(a, b, inverse(back.phi), inverse(back.psi))
    if hom is not None:
        return IsoResult("Isomorphic", hom=hom)
    return IsoResult(UNDETERMINED)


# ---------------------------------------------------------------------------
# geometric equivalence

def geom_equiv(a: ClassTwoGroup, b: ClassTwoGroup, height: int = DEFAULT_HEIGHT,
               budget: int = DEFAULT_BUDGET) -> EquivClassReport:
    for g in (a, b):
        if g.dimW > 2:
            raise CenterRankUnsupported(f"{g.name} has centre rank {g.dimW} > 2")
    if a.dimW == 1 and b.dimW == 1:
        ka, kb = a.coords[0].rank(), b.coords[0].rank()
        trace = [f"{a.name} ~ N({ka},1)", f"{b.name} ~ N({kb},1)"]
        if ka == kb:
            return EquivClassReport(STANDARD_CLASS, ka, [f"both are equivalent to N({ka},1)"],
                                    {"ranks": [ka, kb]}, trace, [CYCLIC_CENTRE])
        return EquivClassReport(DISTINCT, None,
                                [f"ranks {ka} and {kb} differ; N({ka},1) and N({kb},1) are "
                                 "not equivalent"], {"ranks": [ka, kb]}, trace,
                                [CYCLIC_CENTRE, EMBEDDING_CRITERION])
    if a.dimW == 1 or b.dimW == 1:
        one, two = (a, b) if a.dimW == 1 else (b, a)
        k = one.coords[0].rank()
        v = equiv_standard(two, k, height=height, budget=budget)
        trace = [f"{one.name} ~ N({k},1)"] + v.trace
        cites = [CYCLIC_CENTRE] + v.citations
        if v.yes:
            return EquivClassReport(STANDARD_CLASS, k, [f"both are equivalent to N({k},1)"],
                                    {"standard": v}, trace, cites)
        if v.no:
            return EquivClassReport(DISTINCT, None,
                                    [f"{two.name} is not equivalent to N({k},1)",
                                     "the centres differ in rank, so the groups are not isomorphic"],
                                    {"standard": v}, trace, cites)
        return EquivClassReport(UNDETERMINED, None, [f"{two.name} ~ N({k},1) is undetermined"],
                                {"standard": v}, trace, cites)
    return _equiv_rank_two(a, b, height, budget)


def _equiv_rank_two(a, b, height, budget):
    trace, cites = [], [RANK_TWO_DICHOTOMY]
    top = max(a.dimV, b.dimV)
    table = {}
    for k in _even_range(top):
        va = equiv_standard(a, k, height=height, budget=budget) if k <= a.dimV else \
            Verdict(f"{a.name} ~ N({k},1)", NO, {"reason": "k exceeds dim V"})
        vb = equiv_standard(b, k, height=height, budget=budget) if k <= b.dimV else \
            Verdict(f"{b.name} ~ N({k},1)", NO, {"reason": "k exceeds dim V"})
        table[k] = (va, vb)
        trace.append(f"k={k}: {va.question} {va.answer}; {vb.question} {vb.answer}")
        for v in (va, vb):
            for c in v.citations:
                if c not in cites:
                    cites.append(c)
    common = [k for k, (va, vb) in table.items() if va.yes and vb.yes]
    iso = iso_distinguish(a, b, budget=budget)
    trace.append(f"isomorphism test: {iso.outcome}"
                 + (f" by {iso.invariant}: {iso.values[0]} vs {iso.values[1]}" if iso.invariant else ""))
    cert = {"standard": {k: [va.answer, vb.answer] for k, (va, vb) in table.items()},
            "isomorphism": iso}
    details = []
    if common:
        k = common[0]
        details.append(f"both are equivalent to N({k},1)")
        if iso.outcome == "Isomorphic":
            details.append("the groups are also isomorphic")
        return EquivClassReport(STANDARD_CLASS, k, details, cert, trace, cites)
    if iso.outcome == "Isomorphic":
        return EquivClassReport(ISOMORPHIC_PAIR, None, ["the completions are isomorphic"],
                                cert, trace, cites)
    # one side in a standard class the other provably outside it
    for k, (va, vb) in table.items():
        if (va.yes and vb.no) or (vb.yes and va.no):
            inside, outside = (va, vb) if va.yes else (vb, va)
            details.append(f"{inside.question} holds but {outside.question} fails")
            return EquivClassReport(DISTINCT, None, details, cert, trace, cites)
    no_common = all(va.no or vb.no for va, vb in table.values())
    if no_common and iso.outcome == "Distinguished":
        details.append("no common N(k,1) class and the groups are not isomorphic")
        for k, (va, vb) in table.items():
            for v in (va, vb):
                if v.no and FULL_RANK_OBSTRUCTION in v.citations:
                    details.append(f"{v.question} is ruled out by the full-rank obstruction")
        return EquivClassReport(DISTINCT, None, details, cert, trace, cites)
    details.append("bounded searches could not settle the question")
    return EquivClassReport(UNDETERMINED, None, details, cert, trace, cites)


# ---------------------------------------------------------------------------

EXAMPLE_BRACKETS = (
    ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0)),
    ((0, 0, 1, 0), (0, 0, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 0)),
)


def example_group() -> ClassTwoGroup:
    """``[v1,v2] = [v3,v4] = w1``, ``[v1,v3] = w2``: a rank-2 centre outside every N(k,1) class."""
    return make_group("A", 4, 2, [list(map(list, m)) for m in EXAMPLE_BRACKETS])


def paper_example() -> EquivClassReport:
    """Run the full argument that the example group is in no ``N(k,1)`` class."""
    a = example_group()
    trace = [f"group {a.name}: dimV = {a.dimV}, dimW = {a.dimW}; bracket image spans W"]
    pf = pfaffian_pencil(a.pencil)
    det = determinant_pencil(a.pencil)
    roots = binary_rational_roots(pf)
    trace.append(f"Pfaffian of l1*M1 + l2*M2: {pf.compact()}  ({pf})")
    trace.append(f"determinant: {det.compact()}")
    trace.append("degenerate functionals: " + ", ".join(
        f"{p} x{m}" for p, m in roots.roots))
    ks = list(_even_range(a.dimV))
    trace.append(f"candidate classes N(k,1) need even k <= dim V: {ks}")
    verdicts = {}
    for k in ks:
        if k == a.dimV:
            v = full_rank_obstruction(a)
        else:
            v = equiv_standard(a, k)
            approx = approx_by_standard(a, k)
            embed = embeds_standard(a, k)
            trace.append(f"k={k}: N({k},1) < A is {embed.answer}"
                         + (f" (U = span of {[_vec(u) for u in embed.certificate['basis']]})"
                            if embed.yes else ""))
            trace.append(f"k={k}: A < N({k},1) is {approx.answer}")
            trace += [f"  {t}" for t in approx.trace]
        verdicts[k] = v
        trace.append(f"k={k}: {v.question} is {v.answer}")
    comparisons = {k: geom_equiv(a, standard_group(k)) for k in ks}
    for k, rep in comparisons.items():
        trace.append(f"A vs N({k},1): {rep.classification}")
    conclusion = all(v.no for v in verdicts.values())
    details = ["A is not geometrically equivalent to any N(k,1)" if conclusion else
               "could not rule out every N(k,1)"]
    cert = {"pfaffian": pf, "determinant": det, "degenerate": roots.roots,
            "verdicts": verdicts, "comparisons": comparisons}
    cites = [FULL_RANK_OBSTRUCTION, FUNCTIONAL_CRITERION, EMBEDDING_CRITERION, IMAGE_SPANS_CENTRE]
    return EquivClassReport(DISTINCT if conclusion else UNDETERMINED, None, details, cert,
                            trace, cites)
