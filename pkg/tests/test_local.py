import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from affsemi.binomial import Binomial, buchberger, toric_ideal
from affsemi.errors import LengthMismatch, PreconditionViolated
from affsemi.local import (
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    cm_check,
    compare_negdegrevlex,
    homogeneity_gb_check,
    initial_form,
    leading_ideal_equal,
    mora_normal_form,
    project_basis,
    standard_basis,
    support_condition,
)
from affsemi.semigroup import detect_extremal_rays

from conftest import numerical

exps = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(tuple)


@settings(max_examples=200)
@given(exps, exps, exps)
def test_local_order_axioms(p, q, r):
    c = compare_negdegrevlex(p, q)
    assert c == -compare_negdegrevlex(q, p)
    assert (c == 0) == (p == q)
    if c > 0 and compare_negdegrevlex(q, r) > 0:
        assert compare_negdegrevlex(p, r) > 0
    pr = tuple(a + b for a, b in zip(p, r))
    qr = tuple(a + b for a, b in zip(q, r))
    assert compare_negdegrevlex(pr, qr) == c


def test_one_beats_every_variable():
    for i in range(4):
        z = tuple(int(j == i) for j in range(4))
        assert compare_negdegrevlex((0,) * 4, z) == 1


def test_lower_degree_wins_and_revlex_ties():
    assert compare_negdegrevlex((0, 2, 0), (3, 0, 0)) == 1
    # same degree: the monomial with the smaller power of z1 is larger
    assert compare_negdegrevlex((0, 1, 1), (1, 0, 1)) == 1
    with pytest.raises(LengthMismatch):
        compare_negdegrevlex((1,), (1, 0))


def test_standard_basis_examples(s469, plane):
    sb = standard_basis(toric_ideal(s469), 3)
    assert [f.render() for f in sb.basis] == ["z2^2 - z1^3", "z3^2 - z2^3"]
    assert sb.leading_monomials == ((0, 2, 0), (0, 0, 2))
    assert sb.nonhomogeneous_part == (0, 1)
    sb = standard_basis(toric_ideal(plane), 4)
    assert sb.leading_monomials == ((0, 0, 2, 0), (0, 0, 0, 2))
    assert sb.homogeneous_part == (1,)


def test_standard_basis_non_cm():
    S = numerical(4, 5, 11)
    sb = standard_basis(toric_ideal(S), S.n)
    v = cm_check(sb, 1)
    assert not v.is_cm
    assert v.offending and all(j == 0 for j, _ in v.offending)


def test_initial_forms(s469):
    f = Binomial((0, 2, 0), (3, 0, 0))
    assert initial_form(f) == Binomial((0, 2, 0))
    g = Binomial((0, 1, 1, 0), (1, 0, 0, 1))
    assert initial_form(g).minus is not None


SAMPLE = [(4, 6, 9), (3, 4, 5), (4, 5, 11), (5, 6, 9), (6, 7, 8), (5, 7, 9, 11), (7, 9, 12, 13)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SAMPLE), st.integers(0, 10 ** 6))
def test_normal_form_decides_membership(gens, seed):
    S = numerical(*gens)
    sb = standard_basis(toric_ideal(S), S.n)
    rng = random.Random(seed)
    u = tuple(rng.randrange(5) for _ in range(S.n))
    v = tuple(rng.randrange(5) for _ in range(S.n))
    if u == v:
        return
    nf = mora_normal_form(Binomial(u, v), sb.basis)
    assert (nf is None) == (S.degree(u) == S.degree(v))
    if nf is not None:
        assert not any(all(a <= b for a, b in zip(lm, nf.plus)) for lm in sb.leading_monomials)


def test_normal_form_of_monomial_is_itself(s469):
    sb = standard_basis(toric_ideal(s469), 3)
    assert mora_normal_form(Binomial((1, 0, 1)), sb.basis) == Binomial((1, 0, 1))


def test_lm_of_initial_form_matches(s469, plane):
    for S in (s469, plane, numerical(4, 5, 11), numerical(5, 6, 9)):
        sb = standard_basis(toric_ideal(S), S.n)
        for f, fs in zip(sb.basis, sb.tangent_cone_generators):
            assert fs.plus == f.plus


def veronese(d, k):
    """All exponent vectors of total degree k in N^d, a homogeneous semigroup."""
    gens = [c for c in itertools.product(range(k + 1), repeat=d) if sum(c) == k]
    return detect_extremal_rays(gens, d)


@pytest.mark.parametrize("d,k", [(2, 3), (2, 4), (3, 2)])
def test_homogeneous_ideal_leading_terms_agree(d, k):
    S = veronese(d, k)
    I = toric_ideal(S)
    gb = buchberger(I.binomials)
    sb = standard_basis(I, S.n)
    assert leading_ideal_equal(gb.leading_monomials, sb.leading_monomials)
    assert sb.nonhomogeneous_part == ()


def test_cm_examples(s469, plane):
    assert cm_check(standard_basis(toric_ideal(s469), 3), 1)
    assert cm_check(standard_basis(toric_ideal(plane), 4), 2)
    assert cm_check(standard_basis(toric_ideal(numerical(3, 4, 5)), 3), 1)


def test_homogeneity_verdicts(s469, plane):
    sb = standard_basis(toric_ideal(s469), 3)
    v = homogeneity_gb_check(sb, s469)
    assert v.verdict == VERIFIED and v.j == 0
    assert v.rewritten == (1,)
    assert v.basis[1].render() == "z3^2 - z1^3*z2"
    assert homogeneity_gb_check(standard_basis(toric_ideal(plane), 4), plane).verdict == VERIFIED
    S = numerical(4, 5, 11)
    assert homogeneity_gb_check(standard_basis(toric_ideal(S), 3), S).verdict == REFUTED
    S = numerical(5, 6, 9)
    assert homogeneity_gb_check(standard_basis(toric_ideal(S), 3), S).verdict in (REFUTED, INCONCLUSIVE)


def test_support_condition(s469):
    sb = standard_basis(toric_ideal(s469), 3)
    assert support_condition(sb, 1) is None  # z1 is missing from z3^2 - z2^3 before rewriting


def test_project_basis(s469):
    sb = standard_basis(toric_ideal(s469), 3)
    proj = project_basis(sb, 1)
    assert [f.render() for f in proj] == ["z1^2", "z2^2 - z1^3"]
    with pytest.raises(PreconditionViolated):
        project_basis(standard_basis(toric_ideal(numerical(4, 5, 11)), 3), 1)
