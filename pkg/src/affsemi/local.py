"""Standard bases under the negative degree reverse lexicographic order.

The local order prefers lower total degree, so it is not a well-order and
plain division can loop. Reduction uses Mora's ecart rule instead.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .binomial import (
    DEGREVLEX,
    NEGDEGREVLEX,
    Binomial,
    _mk,
    coprime,
    divides,
    groebner_pairs,
    lcm,
    spoly,
)
from .config import DEFAULT_LIMITS, Limits
from .errors import InvariantViolation, LengthMismatch, PreconditionViolated, ResourceBound

_KEY = NEGDEGREVLEX.key


def compare_negdegrevlex(p: Sequence[int], q: Sequence[int]) -> int:
    """Return 1 if z^p > z^q, -1 if smaller, 0 if equal, in the local order."""
    if len(p) != len(q):
        raise LengthMismatch("exponent tuples of different length")
    return NEGDEGREVLEX.compare(tuple(p), tuple(q))


def ecart(f: tuple) -> int:
    lead, tail = f
    return 0 if tail is None else max(0, sum(tail) - sum(lead))


def _nf(h: Optional[tuple], T: Sequence[tuple]) -> Optional[tuple]:
    T = list(T)
    while h is not None:
        cands = [g for g in T if divides(g[0], h[0])]
        if not cands:
            return h
        g = min(cands, key=ecart)
        if ecart(g) > ecart(h):
            T.append(h)
        h = spoly(h, g, _KEY)
    return None


def mora_normal_form(f: Binomial, G: Iterable[Binomial]) -> Optional[Binomial]:
    """Weak normal form: the leading monomial of the result is not divisible
    by any leading monomial of ``G``. Returns None for zero.
    """
    h = _nf(f.oriented(NEGDEGREVLEX).pair, [g.oriented(NEGDEGREVLEX).pair for g in G])
    return None if h is None else Binomial(*h)


@dataclass(frozen=True)
class StandardBasisResult:
    basis: tuple
    nvars: int
    spairs: int = 0

    @property
    def leading_monomials(self) -> tuple:
        return tuple(b.plus for b in self.basis)

    @property
    def homogeneous_part(self) -> tuple:
        return tuple(i for i, b in enumerate(self.basis) if b.is_homogeneous())

    @property
    def nonhomogeneous_part(self) -> tuple:
        return tuple(i for i, b in enumerate(self.basis) if not b.is_homogeneous())

    @property
    def tangent_cone_generators(self) -> tuple:
        """Initial forms: the lowest-degree homogeneous summand of each element."""
        return tuple(initial_form(b) for b in self.basis)


def initial_form(f: Binomial) -> Binomial:
    f = f.oriented(NEGDEGREVLEX)
    if f.is_homogeneous():
        return f
    return Binomial(f.plus)


def standard_basis(gens: Iterable[Binomial], nvars: Optional[int] = None,
                   limits: Limits = DEFAULT_LIMITS) -> StandardBasisResult:
    """Minimal standard basis via Mora's tangent cone algorithm."""
    G = []
    for f in gens:
        p = f.oriented(NEGDEGREVLEX).pair
        if p not in G:
            G.append(p)
    if nvars is None:
        if not G:
            raise ValueError("cannot infer the number of variables of an empty ideal")
        nvars = len(G[0][0])
    queue = []

    def push(i, j):
        m = lcm(G[i][0], G[j][0])
        heapq.heappush(queue, (sum(m), DEGREVLEX.key(m), j, i))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)
    count = 0
    while queue:
        _, _, j, i = heapq.heappop(queue)
        if coprime(G[i][0], G[j][0]):
            continue
        count += 1
        if count > limits.max_spairs:
            raise ResourceBound(f"more than {limits.max_spairs} S-pairs in the standard basis loop")
        h = _nf(spoly(G[i], G[j], _KEY), G)
        if h is None:
            continue
        G.append(h)
        for k in range(len(G) - 1):
            push(k, len(G) - 1)
    # minimalize: keep one element per minimal leading monomial
    ordered = sorted(G, key=lambda g: (DEGREVLEX.key(g[0]), ecart(g), g))
    kept = []
    for g in ordered:
        if not any(divides(h[0], g[0]) for h in kept):
            kept.append(g)
    basis = tuple(Binomial(*g) for g in kept)
    return StandardBasisResult(basis, nvars, count)


@dataclass(frozen=True)
class CMVerdict:
    is_cm: bool
    offending: tuple = ()
    reduction_certified: Optional[bool] = None

    def __bool__(self):
        return self.is_cm


def cm_check(sb: StandardBasisResult, d: int, reduction_certified: Optional[bool] = None) -> CMVerdict:
    """Leading-monomial test: no extremal variable z_1..z_d divides any LM.

    ``offending`` lists 0-based ``(j, i)``: variable j divides LM of element i.
    """
    offending = tuple((j, i) for i, lm in enumerate(sb.leading_monomials)
                      for j in range(d) if lm[j] > 0)
    return CMVerdict(not offending, offending, reduction_certified)


VERIFIED, REFUTED, INCONCLUSIVE = "Verified", "Refuted", "Inconclusive"


@dataclass(frozen=True)
class HomogeneityGBVerdict:
    verdict: str
    j: Optional[int] = None
    basis: tuple = ()
    rewritten: tuple = ()
    reason: str = ""


def _support_choice(options: list, d: int) -> Optional[tuple]:
    """First extremal j and one option per element with z_j in its support."""
    for j in range(d):
        picks = []
        for opts in options:
            hit = next((o for o in opts if j in o.support()), None)
            if hit is None:
                break
            picks.append(hit)
        else:
            return j, picks
    return None


def homogeneity_gb_check(sb: StandardBasisResult, S, limits: Limits = DEFAULT_LIMITS) -> HomogeneityGBVerdict:
    """Look for a minimal standard basis with some z_j (j <= d) in the support
    of every non-homogeneous element, allowing one tail rewrite per element.
    """
    from .semigroup import is_homogeneous_semigroup

    d = S.dim
    if not cm_check(sb, d):
        return HomogeneityGBVerdict(REFUTED, reason="leading-monomial CM test fails")
    hv = is_homogeneous_semigroup(S, limits)
    if not hv.homogeneous:
        return HomogeneityGBVerdict(REFUTED, reason=f"Apery element {hv.witness} has lengths {hv.witness_lengths}")
    basis = list(sb.basis)
    nonhom = [i for i, b in enumerate(basis) if not b.is_homogeneous()]
    if not nonhom:
        return HomogeneityGBVerdict(VERIFIED, None, tuple(basis))
    options = []
    for i in nonhom:
        f = basis[i]
        opts = [f]
        rest = [g for k, g in enumerate(basis) if k != i]
        t = _nf((f.minus, None), [g.pair for g in rest])
        if t is not None and t[0] != f.minus:
            if S.degree(t[0]) != S.degree(f.minus):
                raise InvariantViolation("tail rewrite changed the S-degree")
            r = _mk(f.plus, t[0], _KEY)
            if r is not None and r[0] == f.plus:
                opts.append(Binomial(*r))
        options.append(opts)
    found = _support_choice(options, d)
    if found is None:
        return HomogeneityGBVerdict(INCONCLUSIVE, reason="no conforming basis within one rewrite pass")
    j, picks = found
    new_basis = list(basis)
    rewritten = []
    for i, p in zip(nonhom, picks):
        if p != basis[i]:
            rewritten.append(i)
        new_basis[i] = p
    return HomogeneityGBVerdict(VERIFIED, j, tuple(new_basis), tuple(rewritten))


def support_condition(sb: StandardBasisResult, d: int) -> Optional[int]:
    """Some 0-based j < d with z_j in the support of every non-homogeneous element."""
    found = _support_choice([[sb.basis[i]] for i in sb.nonhomogeneous_part], d)
    return None if found is None else found[0]


def project_basis(sb: StandardBasisResult, i: int) -> tuple:
    """Images of the basis under z_1..z_i -> 0, in the remaining variables."""
    out = []
    for f in sb.basis:
        if any(f.plus[k] for k in range(i)):
            raise PreconditionViolated(f"a killed variable divides LM of {f.render()}")
        lead = f.plus[i:]
        if f.minus is None or any(f.minus[k] for k in range(i)):
            out.append(Binomial(lead))
        else:
            out.append(Binomial(lead, f.minus[i:]))
    return tuple(out)


def leading_ideal_equal(a: Iterable[tuple], b: Iterable[tuple]) -> bool:
    """Compare two monomial ideals given by generators."""
    def minimal(gs):
        gs = sorted(set(gs), key=lambda u: (sum(u), u))
        out = []
        for g in gs:
            if not any(divides(h, g) for h in out):
                out.append(g)
        return sorted(out)

    return minimal(a) == minimal(b)


def tangent_cone_groebner(sb: StandardBasisResult, limits: Limits = DEFAULT_LIMITS) -> list:
    """Reduced degrevlex Groebner basis of the tangent cone ideal I*."""
    return groebner_pairs([g.oriented(DEGREVLEX).pair for g in sb.tangent_cone_generators], DEGREVLEX, limits)
