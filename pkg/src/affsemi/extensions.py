"""Nice extensions, complete-intersection certificates and the geometric corpus."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .betti import betti_semigroup, graded_betti_of_tangent_cone
from .binomial import DEGREVLEX, NEGDEGREVLEX, Binomial, buchberger, toric_groebner, toric_ideal
from .config import DEFAULT_LIMITS, Limits
from .errors import (
    GcdViolation,
    InvariantViolation,
    NotInSpan,
    NotNice,
    NotNumerical,
    OrderViolation,
)
from .local import cm_check, homogeneity_gb_check, standard_basis, VERIFIED
from .semigroup import AffineSemigroup, detect_extremal_rays, in_group, natural_semigroup


@dataclass(frozen=True)
class CICertificate:
    height: int
    generator_count: int

    @property
    def is_ci(self) -> bool:
        return self.height == self.generator_count

    def to_json(self):
        return {"height": self.height, "generator_count": self.generator_count, "is_ci": self.is_ci}


def is_complete_intersection(S: AffineSemigroup, limits: Limits = DEFAULT_LIMITS) -> CICertificate:
    # dim k[S] = d, so ht I(S) = (d + r) - d
    return CICertificate(S.r, len(toric_ideal(S, limits)))


@dataclass(frozen=True)
class NiceExtension:
    base: AffineSemigroup
    b: tuple
    lam: int
    mu: int
    alpha: tuple
    result: AffineSemigroup
    relation: Binomial

    @property
    def expected_ideal(self) -> tuple:
        """I(S) lifted to the extension ring, plus the new relation."""
        lifted = tuple(Binomial(f.plus + (0,), f.minus + (0,)) for f in toric_ideal(self.base))
        return lifted + (self.relation,)


def nice_extension(S: AffineSemigroup, b: Sequence[int], lam: int, mu: int,
                   alpha: Sequence[int], check_nice: bool = True) -> NiceExtension:
    """S_b = lam*S + N*(mu*b), with the new variable y appended last.

    ``alpha`` must be an N-factorization of ``b``; it fixes the new relation
    y^lam - z^(mu*alpha) and the niceness test lam <= |alpha|. Passing
    ``check_nice=False`` builds a plain extension.
    """
    b = tuple(int(x) for x in b)
    alpha = tuple(int(x) for x in alpha)
    if lam < 1 or mu < 1:
        raise GcdViolation("lambda and mu must be positive")
    if math.gcd(lam, mu) != 1:
        raise GcdViolation(f"gcd({lam}, {mu}) != 1")
    if len(alpha) != S.n or any(x < 0 for x in alpha) or S.degree(alpha) != b:
        raise NotInSpan(f"{alpha} is not an N-factorization of {b}")
    if check_nice and lam > sum(alpha):
        raise NotNice(f"lambda = {lam} exceeds |alpha| = {sum(alpha)}")
    # lam*S and N*(mu*b) must glue: k*b lies in lam*G(S) only for lam | k.
    # Otherwise I(S_b) is not I(S) plus one relation.
    for k in range(1, lam):
        if all(k * x % lam == 0 for x in b) and in_group(S, tuple(k * x // lam for x in b)):
            raise GcdViolation(f"{k}*b already lies in {lam}*G(S); the extension is not a gluing")
    gens = tuple(tuple(lam * x for x in g) for g in S.generators) + (tuple(mu * x for x in b),)
    result = AffineSemigroup(S.dim, gens)
    relation = Binomial((0,) * S.n + (lam,), tuple(mu * x for x in alpha) + (0,))
    if result.degree(relation.plus) != result.degree(relation.minus):
        raise InvariantViolation("extension relation is not balanced")
    ext = NiceExtension(S, b, lam, mu, alpha, result, relation)
    rays = detect_extremal_rays(result.generators, S.dim, canonical=False)
    if set(rays.extremal_rays) != {tuple(lam * x for x in a) for a in S.extremal_rays}:
        raise InvariantViolation("extension changed the extremal rays")
    return ext


@dataclass(frozen=True)
class Step:
    b: tuple
    lam: int
    mu: int
    alpha: tuple
    nice: bool = True


def extension_sequence(d: int, steps: Sequence[Step], limits: Limits = DEFAULT_LIMITS):
    """Apply extensions starting from N^d; certify CI after every step."""
    S = natural_semigroup(d)
    cert = is_complete_intersection(S, limits)
    for st in steps:
        S = nice_extension(S, st.b, st.lam, st.mu, st.alpha, check_nice=st.nice).result
        cert = is_complete_intersection(S, limits)
        if not cert.is_ci:
            raise InvariantViolation(f"sequence of nice extensions is not CI at {S.generators}")
    return S, cert


@dataclass
class ExtensionReport:
    lm_is_y_power: bool
    generator_count_base: int
    generator_count_ext: int
    ci_base: bool
    ci_ext: bool
    cm_base: bool
    cm_ext: bool
    homogeneous_base: bool
    betti_base: tuple
    betti_ext: tuple
    betti_gr_base: tuple
    betti_gr_ext: tuple
    ideal_matches: bool
    standard_basis_matches: bool

    @property
    def count_ok(self) -> bool:
        return self.generator_count_ext == self.generator_count_base + 1

    @property
    def ci_preserved(self) -> bool:
        return (not self.ci_base) or self.ci_ext

    @property
    def cm_preserved(self) -> bool:
        return (not self.cm_base) or self.cm_ext

    @property
    def betti_recursion(self) -> bool:
        return _recursion(self.betti_base, self.betti_ext)

    @property
    def betti_gr_recursion(self) -> bool:
        return _recursion(self.betti_gr_base, self.betti_gr_ext)

    @property
    def ok(self) -> bool:
        return (self.lm_is_y_power and self.count_ok and self.ci_preserved
                and self.cm_preserved and self.betti_recursion)

    def to_json(self):
        out = {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}
        out.update(count_ok=self.count_ok, ci_preserved=self.ci_preserved, cm_preserved=self.cm_preserved,
                   betti_recursion=self.betti_recursion, betti_gr_recursion=self.betti_gr_recursion)
        return out


def _recursion(base: tuple, ext: tuple) -> bool:
    width = max(len(base) + 1, len(ext))
    pb = base + (0,) * (width - len(base))
    pe = ext + (0,) * (width - len(ext))
    return pe[0] == pb[0] and all(pe[i] == pb[i] + pb[i - 1] for i in range(1, width))


def verify_extension_theorems(ext: NiceExtension, limits: Limits = DEFAULT_LIMITS) -> ExtensionReport:
    S, Sb = ext.base, ext.result
    lm_y = ext.relation.lead(NEGDEGREVLEX) == ext.relation.plus
    sb = standard_basis(toric_ideal(S, limits), S.n, limits)
    sbb = standard_basis(toric_ideal(Sb, limits), Sb.n, limits)
    cm_base = bool(cm_check(sb, S.dim))
    cm_ext = bool(cm_check(sbb, Sb.dim))
    hom_base = homogeneity_gb_check(sb, S, limits).verdict == VERIFIED
    # I(S_b) = I(S) + (relation), compared through reduced Groebner bases
    expected = buchberger(ext.expected_ideal, DEGREVLEX, limits)
    ideal_ok = expected.binomials == toric_groebner(Sb, limits).binomials
    lifted_sb = [Binomial(f.plus + (0,), None if f.minus is None else f.minus + (0,))
                 for f in sb.basis]
    sb_expected = {f.oriented(NEGDEGREVLEX).plus for f in lifted_sb} | {ext.relation.oriented(NEGDEGREVLEX).plus}
    sb_ok = set(sbb.leading_monomials) == sb_expected
    return ExtensionReport(
        lm_is_y_power=lm_y,
        generator_count_base=len(toric_ideal(S, limits)),
        generator_count_ext=len(toric_ideal(Sb, limits)),
        ci_base=is_complete_intersection(S, limits).is_ci,
        ci_ext=is_complete_intersection(Sb, limits).is_ci,
        cm_base=cm_base,
        cm_ext=cm_ext,
        homogeneous_base=hom_base,
        betti_base=betti_semigroup(S, limits).totals,
        betti_ext=betti_semigroup(Sb, limits).totals,
        betti_gr_base=graded_betti_of_tangent_cone(S, limits).totals,
        betti_gr_ext=graded_betti_of_tangent_cone(Sb, limits).totals,
        ideal_matches=ideal_ok,
        standard_basis_matches=sb_ok,
    )


# -- geometric sequences ----------------------------------------------------------


@dataclass(frozen=True)
class GeometricSemigroup:
    a: int
    b: int
    r: int
    semigroup: AffineSemigroup
    expected_basis: tuple
    expected_betti: tuple
    gastinger_dimension: int

    def to_json(self):
        return {
            "a": self.a, "b": self.b, "r": self.r,
            "generators": [g[0] for g in self.semigroup.generators],
            "expected_basis": [f.to_json() for f in self.expected_basis],
            "expected_basis_text": [f.render() for f in self.expected_basis],
            "expected_betti": list(self.expected_betti),
            "gastinger_dimension": self.gastinger_dimension,
        }


def geometric_semigroup(a: int, b: int, r: int) -> GeometricSemigroup:
    """Numerical semigroup generated by a^r, a^(r-1) b, ..., b^r."""
    if math.gcd(a, b) != 1:
        raise GcdViolation(f"gcd({a}, {b}) != 1")
    if not a < b:
        raise OrderViolation(f"need a < b, got a={a}, b={b}")
    if r < 1:
        raise OrderViolation("r must be at least 1")
    gens = tuple((a ** (r - i) * b ** i,) for i in range(r + 1))
    S = AffineSemigroup(1, gens)
    n = r + 1
    basis = []
    for i in range(r):
        plus = tuple(a if k == i + 1 else 0 for k in range(n))
        minus = tuple(b if k == i else 0 for k in range(n))
        basis.append(Binomial(plus, minus))
    return GeometricSemigroup(a, b, r, S, tuple(basis), tuple(comb(r, i) for i in range(r + 1)), a ** r)


def geometric_corpus(a_values=(2, 3), b_max: int = 7, r_values=(1, 2, 3)) -> list:
    out = []
    for a in a_values:
        for b in range(a + 1, b_max + 1):
            if math.gcd(a, b) != 1:
                continue
            for r in r_values:
                out.append(geometric_semigroup(a, b, r))
    return out


# -- projective closure -------------------------------------------------------------


@dataclass(frozen=True)
class ClosureReport:
    ideal: tuple
    semigroup: AffineSemigroup
    cm: bool
    ci: bool
    gorenstein: Optional[bool]
    matches_toric: bool

    def to_json(self):
        return {
            "ideal": [f.to_json() for f in self.ideal],
            "ideal_text": [f.render(["z0"] + [f"z{i}" for i in range(1, len(f.plus))]) for f in self.ideal],
            "closure_generators": [list(g) for g in self.semigroup.generators],
            "cm": self.cm, "ci": self.ci, "gorenstein": self.gorenstein,
            "matches_toric": self.matches_toric,
        }


def homogenize(f: Binomial) -> Binomial:
    """Homogenize with a new variable z_0 in front."""
    if f.minus is None:
        return Binomial((0,) + f.plus)
    dp, dq = sum(f.plus), sum(f.minus)
    top = max(dp, dq)
    return Binomial((top - dp,) + f.plus, (top - dq,) + f.minus)


def projective_closure(S: AffineSemigroup, limits: Limits = DEFAULT_LIMITS) -> ClosureReport:
    """Homogenized defining ideal of the projective closure of a monomial curve.

    The closure semigroup in N^2 is generated by (0, m) for z_0 and
    (m_i, m - m_i) for z_i, with m the largest generator. Its own toric ideal
    is computed independently and compared with the homogenization.
    """
    if S.dim != 1:
        raise NotNumerical("projective closure needs a numerical semigroup")
    gb = toric_groebner(S, limits)
    ideal = tuple(homogenize(f.oriented(DEGREVLEX)) for f in gb.binomials)
    m = max(g[0] for g in S.generators)
    cgens = [(0, m)] + [(g[0], m - g[0]) for g in S.generators]
    # variables z_0..z_n keep their order; the rays (0,m), (m,0) are z_0 and z_n
    top = max(range(S.n), key=lambda i: S.generators[i][0]) + 1
    order = [0, top] + [i for i in range(1, S.n + 1) if i != top]
    C = AffineSemigroup(2, tuple(cgens[i] for i in order))
    perm = lambda u: tuple(u[i] for i in order)
    hom = buchberger([Binomial(perm(f.plus), perm(f.minus)) for f in ideal], DEGREVLEX, limits)
    matches = hom.binomials == toric_groebner(C, limits).binomials
    mingens = toric_ideal(C, limits)
    cm = True if not len(mingens) else bool(cm_check(standard_basis(mingens, C.n, limits), 2))
    ci = is_complete_intersection(C, limits).is_ci
    return ClosureReport(ideal, C, cm, ci, True if ci else None, matches)
