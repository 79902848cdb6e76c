import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from classtwo.decide import (DISTINCT, FULL_RANK_OBSTRUCTION, ISOMORPHIC_PAIR, NO,
                             STANDARD_CLASS, UNDETERMINED, YES, approx_by_standard,
                             embeds_standard, equiv_standard, example_group, full_rank_obstruction,
                             geom_equiv, invariants, iso_distinguish, paper_example, precedes,
                             verify_functionals, verify_standard_subspace)
from classtwo.errors import CenterRankUnsupported, Decomposable, OddK
from classtwo.forms import BinaryForm, ProjPoint
from classtwo.groups import direct_product, make_group, make_hom, standard_group
from classtwo.linalg import RatMatrix, det, kernel, vector_rank

N21, N41, N61 = standard_group(2), standard_group(4), standard_group(6)
A = example_group()
P = direct_product(N21, N21, "P")


def transported(g, p, q, name="B"):
    """Coordinates of the group isomorphic to ``g`` via ``phi = p^-1``, ``psi = q``."""
    mats = []
    for l in range(g.dimW):
        acc = RatMatrix.zeros(g.dimV, g.dimV)
        for j in range(g.dimW):
            acc = acc + (p.T @ g.coords[j].matrix @ p).scale(q[l, j])
        mats.append(acc)
    return make_group(name, g.dimV, g.dimW, mats)


def random_invertible(rng, n):
    while True:
        m = RatMatrix(n, n, [rng.choice((-1, 0, 1)) for _ in range(n * n)])
        if det(m) != 0:
            return m


def random_small_group(rng, n, r):
    while True:
        mats = []
        for _ in range(r):
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    x = rng.choice((-1, 0, 0, 1))
                    rows[i][j], rows[j][i] = x, -x
            mats.append(rows)
        try:
            return make_group("R", n, r, mats)
        except Decomposable:
            continue


def has_standard_hyperplane(g, k):
    """Brute-force oracle: some hyperplane with a {-1,0,1} normal hosts N(k,1), k = dimV - 1."""
    n = g.dimV
    for normal in product((-1, 0, 1), repeat=n):
        if not any(normal):
            continue
        basis = [list(c) for c in kernel(RatMatrix.from_rows([normal])).columns()]
        images = [g.bracket(u, v) for u, v in combinations(basis, 2)]
        if vector_rank(images) != 1:
            continue
        w0 = next(w for w in images if any(w))
        # the bracket restricted to U is w0 times a scalar form; it must be nondegenerate
        j = next(i for i, x in enumerate(w0) if x)
        chi = [int(i == j) for i in range(g.dimW)]
        if g.form(chi).restrict(basis).rank() == k:
            return True
    return False


# ---- embedding N(k,1) ------------------------------------------------------

def test_embeds_standard_examples():
    v = embeds_standard(A, 2)
    assert v.yes and verify_standard_subspace(A, v.certificate["basis"], 2)
    # any valid witness brackets into a line; span(v1, v2) is one of them
    assert verify_standard_subspace(A, [[1, 0, 0, 0], [0, 1, 0, 0]], 2)
    for k in (2, 4, 6):
        g = standard_group(k)
        v = embeds_standard(g, k)
        assert v.yes and verify_standard_subspace(g, v.certificate["basis"], k)
    assert embeds_standard(N21, 4).no
    assert embeds_standard(A, 4).no
    with pytest.raises(OddK):
        embeds_standard(A, 3)


def test_embeds_standard_cyclic_centre_with_radical():
    g = make_group("G", 5, 1, [[[0, 1, 0, 0, 0], [-1, 0, 0, 0, 0], [0, 0, 0, 2, 0],
                                [0, 0, -2, 0, 0], [0, 0, 0, 0, 0]]])
    assert embeds_standard(g, 4).yes
    assert embeds_standard(g, 6).no


def test_embeds_standard_matches_hyperplane_oracle():
    rng = random.Random(17)
    checked = {YES: 0, NO: 0}
    for _ in range(25):
        g = random_small_group(rng, 5, 2)
        v = embeds_standard(g, 4)
        truth = has_standard_hyperplane(g, 4)
        if v.yes:
            assert verify_standard_subspace(g, v.certificate["basis"], 4)
        if v.no:
            assert not truth
        if truth:
            assert v.yes
        checked[v.answer] = checked.get(v.answer, 0) + 1
    assert checked[YES] and checked[NO]


# ---- approximation by N(k,1) ---------------------------------------------

def test_approx_by_standard_examples():
    v = approx_by_standard(A, 2)
    assert v.no and v.certificate["locus"].points == ((ProjPoint(0, 1), 2),)
    v = approx_by_standard(P, 2)
    assert v.yes and verify_functionals(P, v.certificate["functionals"], 2)
    assert {ProjPoint(*f) for f in v.certificate["functionals"]} == {ProjPoint(1, 0),
                                                                       ProjPoint(0, 1)}
    for k in (2, 4, 6):
        assert approx_by_standard(standard_group(k), k).yes
    assert approx_by_standard(N41, 2).no
    assert approx_by_standard(A, 4).yes
    with pytest.raises(CenterRankUnsupported):
        approx_by_standard(direct_product(A, N21), 2)


def test_approx_no_rational_degeneracy():
    b = make_group("I", 4, 2, [[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
                               [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]])
    v = approx_by_standard(b, 2)
    assert v.no
    assert any("no rational root" in t for t in v.trace)


def test_approx_verdicts_recheck():
    rng = random.Random(3)
    for _ in range(30):
        g = random_small_group(rng, rng.choice((4, 5, 6)), 2)
        for k in range(2, g.dimV + 1, 2):
            v = approx_by_standard(g, k)
            assert v.answer in (YES, NO)
            if v.yes:
                assert verify_functionals(g, v.certificate["functionals"], k)
            else:
                # sampled functionals: at most one projective point of rank <= k
                low = {ProjPoint(*f) for f in product(range(-3, 4), repeat=2)
                       if any(f) and g.form(f).rank() <= k}
                assert len(low) <= 1


# ---- obstruction and equivalence with N(k,1) -------------------------------

def test_full_rank_obstruction_examples():
    v = full_rank_obstruction(A)
    assert v.no and v.certificate["image_dim"] == 2 and FULL_RANK_OBSTRUCTION in v.citations
    assert full_rank_obstruction(P).no
    with pytest.raises(CenterRankUnsupported):
        full_rank_obstruction(N41)


def test_equiv_standard():
    assert equiv_standard(A, 2).no
    assert equiv_standard(A, 4).no
    assert equiv_standard(P, 2).yes
    assert equiv_standard(N41, 4).yes and equiv_standard(N41, 2).no


# ---- comparison of rank-two groups -----------------------------------------

def test_precedes_examples():
    v = precedes(A, A)
    assert v.yes and v.certificate["route"] == "embedding"
    assert v.certificate["hom"].injective
    v = precedes(P, N21)
    assert v.yes and v.certificate["k"] == 2
    v = precedes(A, N21)
    assert v.no
    assert v.certificate["chain"] == {2: NO, 4: NO}
    with pytest.raises(CenterRankUnsupported):
        precedes(N21, A)


def test_precedes_into_product():
    v = precedes(P, direct_product(N21, N41, "Q"))
    assert v.yes


# ---- isomorphism -----------------------------------------------------------

def test_iso_distinguish_examples():
    r = iso_distinguish(A, A)
    assert r.outcome == "Isomorphic" and r.hom.injective
    r = iso_distinguish(A, P)
    assert r.outcome == "Distinguished" and r.invariant == "pfaffian"
    assert r.values == ((2, (2,), ()), (2, (1, 1), ()))
    r = iso_distinguish(N21, N41)
    assert r.outcome == "Distinguished" and r.invariant == "dims"


@pytest.mark.parametrize("seed", range(8))
def test_iso_found_after_random_base_change(seed):
    rng = random.Random(seed)
    g = random_small_group(rng, 4, 2) if seed % 2 else A
    p, q = random_invertible(rng, 4), random_invertible(rng, 2)
    b = transported(g, p, q)
    assert invariants(g) == invariants(b)
    r = iso_distinguish(g, b)
    assert r.outcome == "Isomorphic", r
    hom = make_hom(g, b, r.hom.phi, r.hom.psi)
    assert hom.injective and det(hom.phi) != 0


def test_invariants_survive_base_change_in_dim_six():
    rng = random.Random(99)
    for _ in range(5):
        g = random_small_group(rng, 6, 2)
        b = transported(g, random_invertible(rng, 6), random_invertible(rng, 2))
        assert invariants(g) == invariants(b)


def test_cyclic_centre_isomorphism():
    g = make_group("G", 3, 1, [[[0, 2, 1], [-2, 0, 0], [-1, 0, 0]]])
    h = make_group("H", 3, 1, [[[0, 0, 0], [0, 0, 5], [0, -5, 0]]])
    r = iso_distinguish(g, h)
    assert r.outcome == "Isomorphic" and r.hom.injective


# ---- geometric equivalence -------------------------------------------------

def test_geom_equiv_examples():
    assert geom_equiv(N21, N41).classification == DISTINCT
    assert geom_equiv(N41, N41).classification == STANDARD_CLASS
    assert geom_equiv(N41, N41).k == 4
    assert geom_equiv(A, A).classification == ISOMORPHIC_PAIR
    rep = geom_equiv(A, N41)
    assert rep.classification == DISTINCT and FULL_RANK_OBSTRUCTION in rep.citations
    rep = geom_equiv(P, P)
    assert rep.classification == STANDARD_CLASS and rep.k == 2
    assert geom_equiv(A, P).classification == DISTINCT
    # P ~ N(2,1) but A is not
    assert geom_equiv(P, N21).classification == STANDARD_CLASS
    with pytest.raises(CenterRankUnsupported):
        geom_equiv(direct_product(A, N21), A)


@pytest.mark.parametrize("pair", [(A, P), (A, N41), (N21, N61), (P, N21), (A, N21)])
def test_geom_equiv_is_symmetric(pair):
    x, y = pair
    r1, r2 = geom_equiv(x, y), geom_equiv(y, x)
    assert (r1.classification, r1.k) == (r2.classification, r2.k)


def test_standard_groups_pairwise():
    for k1, k2 in product((2, 4, 6), repeat=2):
        rep = geom_equiv(standard_group(k1), standard_group(k2))
        assert rep.classification == (STANDARD_CLASS if k1 == k2 else DISTINCT)


# ---- the worked example --------------------------------------------------

def test_paper_example():
    rep = paper_example()
    assert rep.classification == DISTINCT
    cert = rep.certificate
    assert cert["pfaffian"] == BinaryForm(2, [1, 0, 0])
    assert cert["determinant"] == BinaryForm(4, [1, 0, 0, 0, 0])
    assert cert["degenerate"] == ((ProjPoint(0, 1), 2),)
    assert {k: v.answer for k, v in cert["verdicts"].items()} == {2: NO, 4: NO}
    assert FULL_RANK_OBSTRUCTION in cert["verdicts"][4].citations
    assert all(r.classification == DISTINCT for r in cert["comparisons"].values())
    text = "\n".join(rep.trace)
    assert "l1^2" in text and "l1^4" in text and "[0 : 1]" in text
    assert "not geometrically equivalent to any N(k,1)" in rep.details[0]
    assert rep.answer != UNDETERMINED
