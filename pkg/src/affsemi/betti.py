"""Betti numbers of k[S] and of gr_m(k[S]) = A / I*, computed independently.

k[S] uses the S-graded formula beta_{i,b} = dim H~_{i-1}(Delta_b) with the
squarefree divisor complex Delta_b. A / I* uses Koszul homology in each
standard degree. Both are exact over Q.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .binomial import (
    DEGREVLEX,
    Binomial,
    divides,
    groebner_pairs,
    lcm,
    normal_form_monomial,
    toric_groebner,
    toric_ideal,
)
from .config import DEFAULT_LIMITS, Limits
from .errors import InvariantViolation, NonHomogeneousInput, NotInSemigroup, ResourceBound


# -- exact rank ----------------------------------------------------------------


def rank_over_q(rows: Iterable[dict]) -> int:
    """Rank of a sparse integer matrix (rows as {col: value}).

    Fraction-free elimination: a row is cleared against a pivot row by an
    integer cross-multiplication and then divided by the gcd of its entries.
    """
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                g = 0
                for v in row.values():
                    g = math.gcd(g, v)
                pivots[c] = {k: v // g for k, v in row.items()}
                rank += 1
                break
            a, b = p[c], row[c]
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                new[k] = new.get(k, 0) - b * v
            row = {k: v for k, v in new.items() if v}
            if row:
                g = 0
                for v in row.values():
                    g = math.gcd(g, v)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
    return rank


# -- simplicial complexes --------------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of vertex subsets (frozensets)."""

    faces: frozenset
    nvertices: int

    def __post_init__(self):
        for f in self.faces:
            for v in f:
                if f - {v} not in self.faces:
                    raise InvariantViolation(f"complex not closed under subsets at {sorted(f)}")

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.faces), default=-2)

    def faces_of_dim(self, k: int) -> list:
        return sorted((f for f in self.faces if len(f) == k + 1), key=sorted)

    @property
    def facets(self) -> list:
        return sorted((f for f in self.faces if not any(f < g for g in self.faces)), key=sorted)


def divisor_complex(S, b: Sequence[int]) -> SimplicialComplex:
    """Faces are generator subsets F with b - sum_{j in F} a_j in S."""
    from .semigroup import in_semigroup

    b = tuple(b)
    if not in_semigroup(S, b):
        raise NotInSemigroup(f"{b} is not in the semigroup")
    faces = set()
    for k in range(S.n + 1):
        for F in itertools.combinations(range(S.n), k):
            rest = list(b)
            for j in F:
                for c in range(S.dim):
                    rest[c] -= S.generators[j][c]
            if in_semigroup(S, rest):
                faces.add(frozenset(F))
    return SimplicialComplex(frozenset(faces), S.n)


def reduced_homology_ranks(K: SimplicialComplex) -> list:
    """Ranks of reduced homology, index 0 holding H~_{-1}."""
    top = K.dimension
    if top < -1:
        return []
    by_dim = {k: K.faces_of_dim(k) for k in range(-1, top + 1)}
    index = {k: {f: i for i, f in enumerate(fs)} for k, fs in by_dim.items()}
    ranks = {}
    for k in range(0, top + 1):
        rows = []
        for f in by_dim[k]:
            verts = sorted(f)
            row = {}
            for pos, v in enumerate(verts):
                row[index[k - 1][f - {v}]] = (-1) ** pos
            rows.append(row)
        ranks[k] = rank_over_q(rows)
    out = []
    for k in range(-1, top + 1):
        n = len(by_dim[k])
        out.append(n - ranks.get(k, 0) - ranks.get(k + 1, 0))
    return out


# -- Betti tables ----------------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers: ``entries[(i, degree)] = rank``."""

    entries: dict = field(default_factory=dict)

    @property
    def totals(self) -> tuple:
        if not self.entries:
            return ()
        top = max(i for i, _ in self.entries)
        out = [0] * (top + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def degrees(self, i: int) -> list:
        return sorted(deg for (k, deg), v in self.entries.items() if k == i and v)

    def to_json(self) -> dict:
        return {
            "totals": list(self.totals),
            "entries": [{"i": i, "degree": list(deg) if isinstance(deg, tuple) else deg, "rank": v}
                        for (i, deg), v in sorted(self.entries.items(), key=lambda kv: (kv[0][0], _degkey(kv[0][1])))],
        }


def _degkey(deg):
    return (sum(deg), deg) if isinstance(deg, tuple) else (deg, (deg,))


def _minimal_monomials(ms: Iterable[tuple]) -> list:
    out = []
    for m in sorted(set(ms), key=lambda u: (sum(u), u)):
        if not any(divides(h, m) for h in out):
            out.append(m)
    return out


def _lcm_all(ms):
    out = ms[0]
    for m in ms[1:]:
        out = lcm(out, m)
    return out


def taylor_lcms(leads: Sequence[tuple], limits: Limits) -> set:
    """lcm of every nonempty subset of the monomial generators (the LCM lattice).

    Subsets are grown by increasing index. Two subsets with the same lcm and
    the same last index have identical extensions, so only one is kept.
    """
    t = len(leads)
    result = set()
    level = {(leads[i], i) for i in range(t)}
    seen = set(level)
    while level:
        nxt = set()
        for m, last in level:
            result.add(m)
            if len(result) > limits.max_betti_degrees:
                raise ResourceBound("too many candidate Betti degrees")
            for j in range(last + 1, t):
                st = (lcm(m, leads[j]), j)
                if st not in seen:
                    seen.add(st)
                    nxt.add(st)
        level = nxt
    return result


def betti_semigroup(S, limits: Limits = DEFAULT_LIMITS) -> BettiTable:
    """S-graded Betti numbers of k[S] as an A-module."""
    gb = toric_groebner(S, limits)
    leads = _minimal_monomials(b.plus for b in gb.binomials)
    candidates = {S.zero}
    if leads:
        candidates |= {S.degree(m) for m in taylor_lcms(leads, limits)}
    entries = {}
    for b in sorted(candidates, key=_degkey):
        ranks = reduced_homology_ranks(divisor_complex(S, b))
        for k, v in enumerate(ranks):
            if v:
                entries[(k, b)] = v
    table = BettiTable(entries)
    mingens = toric_ideal(S, limits)
    gen_degrees = sorted(S.degree(f.plus) for f in mingens)
    beta1 = sorted(deg for (i, deg), v in entries.items() if i == 1 for _ in range(v))
    if beta1 != gen_degrees:
        raise InvariantViolation("beta_1 of k[S] does not match the minimal generators of I(S)")
    return table


def minimal_generators_homogeneous(gens: Sequence[Binomial], limits: Limits = DEFAULT_LIMITS) -> list:
    """Minimal generators of a standard-graded homogeneous binomial ideal."""
    ordered = sorted(set(gens), key=lambda f: (sum(f.plus), f.is_monomial is False, f))
    kept: list = []
    for f in ordered:
        if kept:
            G = groebner_pairs([g.oriented(DEGREVLEX).pair for g in kept], DEGREVLEX, limits)
            from .binomial import reduce_pair

            if reduce_pair(f.oriented(DEGREVLEX).pair, G, DEGREVLEX.key) is None:
                continue
        kept.append(f)
    return kept


def _monomials_of_degree(n: int, t: int):
    for c in itertools.combinations_with_replacement(range(n), t):
        m = [0] * n
        for v in c:
            m[v] += 1
        yield tuple(m)


def betti_standard_graded(gens: Sequence[Binomial], nvars: int, limits: Limits = DEFAULT_LIMITS) -> BettiTable:
    """Standard-graded Betti numbers of A / I from Koszul homology.

    Tor_i(A/I, k)_j is the homology of
    wedge^{i+1} k^n (x) (A/I)_{j-i-1} -> wedge^i k^n (x) (A/I)_{j-i} -> wedge^{i-1} k^n (x) (A/I)_{j-i+1}.
    Nonzero degrees are bounded via the Taylor complex of the leading ideal.
    """
    gens = [g for g in gens]
    for g in gens:
        if not g.is_homogeneous():
            raise NonHomogeneousInput(f"{g.render()} is not homogeneous")
    if not gens:
        return BettiTable({(0, 0): 1})
    G = groebner_pairs([g.oriented(DEGREVLEX).pair for g in gens], DEGREVLEX, limits)
    leads = _minimal_monomials(g[0] for g in G)
    if any(not any(m) for m in leads):
        return BettiTable({})
    full = _lcm_all(leads)
    degs = sorted((sum(m) for m in leads), reverse=True)
    n = nvars

    def jmax(i):
        if i == 0:
            return 0
        if i > len(leads):
            return -1
        return min(sum(full), sum(degs[:i]))

    std_cache: dict = {}

    def std(t):
        if t < 0:
            return []
        if t not in std_cache:
            std_cache[t] = [m for m in _monomials_of_degree(n, t)
                            if not any(divides(l, m) for l in leads)]
            if len(std_cache[t]) > limits.max_standard_monomials:
                raise ResourceBound("graded piece too large")
        return std_cache[t]

    subsets = {i: list(itertools.combinations(range(n), i)) for i in range(n + 1)}

    def diff_rank(i, j):
        """Rank of d_i : K_{i,j} -> K_{i-1,j}."""
        if i <= 0 or i > n:
            return 0
        src = std(j - i)
        if not src:
            return 0
        tgt_index = {}
        rows = []
        for F in subsets[i]:
            for m in src:
                row = {}
                for pos, v in enumerate(F):
                    zm = tuple(e + (k == v) for k, e in enumerate(m))
                    nf = normal_form_monomial(zm, G)
                    if nf is None:
                        continue
                    col = tgt_index.setdefault((F[:pos] + F[pos + 1:], nf), len(tgt_index))
                    row[col] = row.get(col, 0) + (-1) ** pos
                rows.append(row)
        return rank_over_q(rows)

    entries = {(0, 0): 1}
    for i in range(1, n + 1):
        top = jmax(i)
        for j in range(i, top + 1):
            dim = len(subsets[i]) * len(std(j - i))
            if not dim:
                continue
            b = dim - diff_rank(i, j) - diff_rank(i + 1, j)
            if b:
                entries[(i, j)] = b
    table = BettiTable(entries)
    return table


def graded_betti_of_tangent_cone(S, limits: Limits = DEFAULT_LIMITS) -> BettiTable:
    """Betti numbers of gr_m(k[S]) = A / I(S)*."""
    from .local import standard_basis

    sb = standard_basis(toric_ideal(S, limits), S.n, limits)
    gens = list(sb.tangent_cone_generators)
    table = betti_standard_graded(gens, S.n, limits)
    if gens:
        mins = minimal_generators_homogeneous(gens, limits)
        beta1 = sum(v for (i, _), v in table.entries.items() if i == 1)
        if beta1 != len(mins):
            raise InvariantViolation("beta_1 of A/I* differs from its minimal generator count")
    return table


@dataclass(frozen=True)
class ComparisonReport:
    semigroup: BettiTable
    graded: BettiTable
    cm: bool
    reduction_certified: bool
    support_j: Optional[int]
    hypotheses_hold: bool
    equal: bool
    inequality_holds: bool

    def to_json(self) -> dict:
        return {
            "betti_k_S": self.semigroup.to_json(),
            "betti_gr": self.graded.to_json(),
            "cm": self.cm,
            "reduction_certified": self.reduction_certified,
            "support_variable": None if self.support_j is None else self.support_j + 1,
            "hypotheses_hold": self.hypotheses_hold,
            "equal_totals": self.equal,
            "gr_dominates": self.inequality_holds,
        }


def betti_compare(S, limits: Limits = DEFAULT_LIMITS) -> ComparisonReport:
    """Compare Betti totals of k[S] and gr_m(k[S]).

    The one-sided inequality always holds; equality is required when the
    CM, reduction and support hypotheses are all confirmed.
    """
    from .local import VERIFIED, cm_check, homogeneity_gb_check, standard_basis, support_condition
    from .semigroup import verify_reduction

    sb = standard_basis(toric_ideal(S, limits), S.n, limits)
    cm = bool(cm_check(sb, S.dim))
    red = verify_reduction(S, limits.n_max).certified
    j = support_condition(sb, S.dim)
    if j is None and cm:
        hv = homogeneity_gb_check(sb, S, limits)
        if hv.verdict == VERIFIED:
            j = hv.j if hv.j is not None else 0
    hyp = cm and red and j is not None
    ta = betti_semigroup(S, limits)
    tb = graded_betti_of_tangent_cone(S, limits)
    a, b = ta.totals, tb.totals
    width = max(len(a), len(b))
    pa = a + (0,) * (width - len(a))
    pb = b + (0,) * (width - len(b))
    equal = pa == pb
    dominates = all(y >= x for x, y in zip(pa[1:], pb[1:]))
    if not dominates:
        raise InvariantViolation(f"beta(gr) < beta(k[S]): {pb} vs {pa}")
    if hyp and not equal:
        raise InvariantViolation(f"hypotheses hold but Betti totals differ: {pa} vs {pb}")
    return ComparisonReport(ta, tb, cm, red, j, hyp, equal, dominates)
