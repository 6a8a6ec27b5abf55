"""Pure binomial arithmetic, a global-order Buchberger engine and toric ideals.

Internally an ideal element is a pair ``(lead, tail)`` of exponent tuples
standing for ``z^lead - z^tail``; ``tail is None`` encodes the monomial
``z^lead``. S-polynomials and reductions of such pairs stay in this class,
so no general polynomial type is needed.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

from .config import DEFAULT_LIMITS, Limits
from .errors import InvariantViolation, NotNumerical, PreconditionViolated, ResourceBound

Exp = tuple


# -- monomial helpers ----------------------------------------------------------


def divides(u: Exp, v: Exp) -> bool:
    return all(a <= b for a, b in zip(u, v))


def lcm(u: Exp, v: Exp) -> Exp:
    return tuple(max(a, b) for a, b in zip(u, v))


def coprime(u: Exp, v: Exp) -> bool:
    return not any(a and b for a, b in zip(u, v))


def total_degree(u: Exp) -> int:
    return sum(u)


def render_monomial(u: Exp, names: Optional[Sequence[str]] = None) -> str:
    names = names or [f"z{i + 1}" for i in range(len(u))]
    parts = []
    for e, name in zip(u, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# -- term orders ---------------------------------------------------------------


@dataclass(frozen=True)
class TermOrder:
    """Comparison rule on exponent tuples.

    Variable priority is z_n > ... > z_1 (highest index wins). ``kind`` is one
    of ``degrevlex``, ``lex``, ``negdegrevlex`` (the local order) or
    ``wdegrevlex`` (weighted degree, then revlex with variable ``lowest``
    compared first).
    """

    kind: str = "degrevlex"
    weights: Optional[tuple] = None
    lowest: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "negdegrevlex", "wdegrevlex"):
            raise ValueError(f"unknown term order {self.kind!r}")

    @cached_property
    def key(self) -> Callable[[Exp], tuple]:
        """Sort key: larger key means larger monomial."""
        kind = self.kind
        if kind == "degrevlex":
            return lambda p: (sum(p),) + tuple(-x for x in p)
        if kind == "negdegrevlex":
            return lambda p: (-sum(p),) + tuple(-x for x in p)
        if kind == "lex":
            return lambda p: tuple(reversed(p))
        w = self.weights
        k = self.lowest

        def wkey(p):
            rest = tuple(-x for i, x in enumerate(p) if i != k)
            return (sum(a * b for a, b in zip(w, p)), -p[k]) + rest

        return wkey

    @property
    def is_global(self) -> bool:
        return self.kind != "negdegrevlex"

    def compare(self, p: Exp, q: Exp) -> int:
        a, b = self.key(p), self.key(q)
        return (a > b) - (a < b)


DEGREVLEX = TermOrder("degrevlex")
LEX = TermOrder("lex")
NEGDEGREVLEX = TermOrder("negdegrevlex")


# -- binomials -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Binomial:
    """``z^plus - z^minus``; ``minus is None`` means the monomial ``z^plus``."""

    plus: Exp
    minus: Optional[Exp] = None

    def __post_init__(self):
        object.__setattr__(self, "plus", tuple(self.plus))
        if self.minus is not None:
            object.__setattr__(self, "minus", tuple(self.minus))
            if self.plus == self.minus:
                raise ValueError("binomial with equal terms is zero")
            if len(self.plus) != len(self.minus):
                raise ValueError("terms live in different rings")

    @property
    def nvars(self) -> int:
        return len(self.plus)

    @property
    def is_monomial(self) -> bool:
        return self.minus is None

    def terms(self) -> tuple:
        return (self.plus,) if self.minus is None else (self.plus, self.minus)

    def oriented(self, order: TermOrder) -> "Binomial":
        if self.minus is not None and order.key(self.minus) > order.key(self.plus):
            return Binomial(self.minus, self.plus)
        return self

    def lead(self, order: TermOrder) -> Exp:
        return self.oriented(order).plus

    def support(self) -> set:
        return {i for t in self.terms() for i, e in enumerate(t) if e}

    def is_homogeneous(self) -> bool:
        return self.minus is None or sum(self.plus) == sum(self.minus)

    def gcd_reduced(self) -> "Binomial":
        if self.minus is None:
            return self
        g = tuple(min(a, b) for a, b in zip(self.plus, self.minus))
        return Binomial(tuple(a - c for a, c in zip(self.plus, g)),
                        tuple(b - c for b, c in zip(self.minus, g)))

    def render(self, names=None) -> str:
        if self.minus is None:
            return render_monomial(self.plus, names)
        return f"{render_monomial(self.plus, names)} - {render_monomial(self.minus, names)}"

    def to_json(self):
        return {"plus": list(self.plus), "minus": None if self.minus is None else list(self.minus)}

    @property
    def pair(self) -> tuple:
        return (self.plus, self.minus)


def orient(f: Binomial, order: TermOrder) -> tuple:
    b = f.oriented(order)
    return (b.plus, b.minus)


def _mk(a: Exp, b: Optional[Exp], key) -> Optional[tuple]:
    """Normalize the pair z^a - z^b to (lead, tail) or None when zero."""
    if b is None:
        return (a, None)
    if a == b:
        return None
    return (a, b) if key(a) > key(b) else (b, a)


def _sub_mono(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _add_mono(u, v):
    return tuple(x + y for x, y in zip(u, v))


def spoly(f: tuple, g: tuple, key) -> Optional[tuple]:
    """S-polynomial of two normalized pairs."""
    m = lcm(f[0], g[0])
    if f[1] is None and g[1] is None:
        return None
    a = None if f[1] is None else _add_mono(_sub_mono(m, f[0]), f[1])
    b = None if g[1] is None else _add_mono(_sub_mono(m, g[0]), g[1])
    if a is None:
        return (b, None)
    if b is None:
        return (a, None)
    return _mk(a, b, key)


def _find_reducer(u: Exp, G: Sequence[tuple]) -> Optional[tuple]:
    for g in G:
        if divides(g[0], u):
            return g
    return None


def reduce_pair(f: Optional[tuple], G: Sequence[tuple], key, full: bool = True) -> Optional[tuple]:
    """Normal form of ``f`` modulo ``G`` under a global order."""
    if f is None:
        return None
    lead, tail = f
    while True:
        g = _find_reducer(lead, G)
        if g is None:
            break
        if g[1] is None:
            if tail is None:
                return None
            lead, tail = tail, None
            continue
        new = _add_mono(_sub_mono(lead, g[0]), g[1])
        if tail is None:
            lead = new
            continue
        r = _mk(new, tail, key)
        if r is None:
            return None
        lead, tail = r
    if full:
        while tail is not None:
            g = _find_reducer(tail, G)
            if g is None:
                break
            if g[1] is None:
                tail = None
            else:
                tail = _add_mono(_sub_mono(tail, g[0]), g[1])
    return (lead, tail)


def normal_form_monomial(u: Exp, G: Sequence[tuple]) -> Optional[Exp]:
    """Standard monomial congruent to z^u modulo a global Groebner basis, or None."""
    while True:
        g = _find_reducer(u, G)
        if g is None:
            return u
        if g[1] is None:
            return None
        u = _add_mono(_sub_mono(u, g[0]), g[1])


@dataclass
class BuchbergerStats:
    spairs: int = 0
    reductions_to_zero: int = 0


def groebner_pairs(gens: Iterable[tuple], order: TermOrder, limits: Limits = DEFAULT_LIMITS,
                   stats: Optional[BuchbergerStats] = None) -> list:
    """Reduced Groebner basis of normalized pairs under a global order."""
    if not order.is_global:
        raise ValueError("buchberger needs a global order; use the standard-basis engine")
    key = order.key
    stats = stats if stats is not None else BuchbergerStats()
    G: list = []
    for f in gens:
        if f is None:
            continue
        r = reduce_pair(_mk(f[0], f[1], key), G, key)
        if r is not None and r not in G:
            G.append(r)
    pairs = []
    pending = set()

    def push(i, j):
        m = lcm(G[i][0], G[j][0])
        heapq.heappush(pairs, (key(m), j, i))
        pending.add((i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)
    while pairs:
        _, j, i = heapq.heappop(pairs)
        pending.discard((i, j))
        fi, fj = G[i], G[j]
        if coprime(fi[0], fj[0]):
            continue
        m = lcm(fi[0], fj[0])
        if any(k not in (i, j) and divides(G[k][0], m)
               and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
               for k in range(len(G))):
            continue
        stats.spairs += 1
        if stats.spairs > limits.max_spairs:
            raise ResourceBound(f"more than {limits.max_spairs} S-pairs")
        h = reduce_pair(spoly(fi, fj, key), G, key, full=False)
        if h is None:
            stats.reductions_to_zero += 1
            continue
        G.append(h)
        new = len(G) - 1
        for i2 in range(new):
            push(i2, new)
    return interreduce(G, order)


def interreduce(G: Sequence[tuple], order: TermOrder) -> list:
    key = order.key
    G = [g for g in G if g is not None]
    minimal = []
    for g in sorted(G, key=lambda g: key(g[0])):
        if not any(divides(h[0], g[0]) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = reduce_pair(g, others, key)
        if r is None or r[0] != g[0]:
            raise InvariantViolation("minimal basis element reduced away its lead")
        out.append(r)
    out.sort(key=lambda g: key(g[0]))
    return out


@dataclass(frozen=True)
class IdealBasis:
    binomials: tuple
    order: TermOrder
    reduced: bool = False
    minimal: bool = False

    def __len__(self):
        return len(self.binomials)

    def __iter__(self):
        return iter(self.binomials)

    @property
    def leading_monomials(self) -> tuple:
        return tuple(b.lead(self.order) for b in self.binomials)


def buchberger(basis: Iterable[Binomial], order: TermOrder = DEGREVLEX,
               limits: Limits = DEFAULT_LIMITS, stats: Optional[BuchbergerStats] = None) -> IdealBasis:
    """Unique reduced Groebner basis under a global order."""
    pairs = [orient(f, order) for f in basis]
    G = groebner_pairs(pairs, order, limits, stats)
    return IdealBasis(tuple(Binomial(*g) for g in G), order, reduced=True, minimal=True)


def ideal_contains(G: IdealBasis, f: Binomial) -> bool:
    if not G.reduced:
        raise ValueError("membership needs a Groebner basis")
    key = G.order.key
    return reduce_pair(orient(f, G.order), [g.pair for g in G.binomials], key) is None


# -- integer lattices ----------------------------------------------------------


def _hnf_kernel(matrix: Sequence[Sequence[int]]) -> list:
    """Integer kernel basis from unimodular column operations.

    Rows of ``[A^T | I]`` are combined by extended-gcd steps until the
    ``A^T`` part is in echelon form; identity rows attached to zero rows of
    the ``A^T`` part span the kernel.
    """
    d = len(matrix)
    n = len(matrix[0]) if d else 0
    rows = [[matrix[r][c] for r in range(d)] + [int(i == c) for i in range(n)] for c in range(n)]
    top = 0
    for col in range(d):
        while True:
            nz = [r for r in range(top, n) if rows[r][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(rows[r][col]))
            rows[top], rows[piv] = rows[piv], rows[top]
            if rows[top][col] < 0:
                rows[top] = [-x for x in rows[top]]
            done = True
            for r in range(top + 1, n):
                if rows[r][col]:
                    q = rows[r][col] // rows[top][col]
                    rows[r] = [x - q * y for x, y in zip(rows[r], rows[top])]
                    if rows[r][col]:
                        done = False
            if done:
                top += 1
                break
        if top == n:
            break
    return [tuple(row[d:]) for row in rows[top:]]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list:
    """LLL-reduce an integer basis with exact rational Gram-Schmidt."""
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return [tuple(v) for v in b]

    def gso():
        bstar, mu = [], [[Fraction(0)] * n for _ in range(n)]
        norms = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(_dot(b[i], bstar[j])) / norms[j] if norms[j] else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(_dot(v, v))
        return mu, norms

    mu, norms = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms = gso()
            k = max(k - 1, 1)
    return [tuple(v) for v in b]


def lattice_kernel(generator_matrix: Sequence[Sequence[int]], reduce: bool = True) -> list:
    """Basis of the integer kernel of a d x n matrix (rows are coordinates)."""
    basis = _hnf_kernel(generator_matrix)
    return lll_reduce(basis) if reduce else basis


def generator_matrix(S) -> list:
    return [[g[c] for g in S.generators] for c in range(S.dim)]


# -- toric ideals --------------------------------------------------------------


def _split(u):
    return (tuple(max(x, 0) for x in u), tuple(max(-x, 0) for x in u))


def _saturate(gens: list, k: int, weights: tuple, limits: Limits) -> list:
    """I : z_k^inf for an ideal homogeneous in the positive grading ``weights``."""
    order = TermOrder("wdegrevlex", weights, k)
    G = groebner_pairs(gens, order, limits)
    out = []
    for lead, tail in G:
        if tail is None:
            lead = tuple(0 if i == k else e for i, e in enumerate(lead))
            out.append((lead, None))
            continue
        c = min(lead[k], tail[k])
        if c:
            lead = tuple(e - c if i == k else e for i, e in enumerate(lead))
            tail = tuple(e - c if i == k else e for i, e in enumerate(tail))
        out.append((lead, tail))
    return out


def _component_representatives(fiber: list, key) -> list:
    """Best monomial of each connected component; monomials sharing a variable are joined."""
    parent = list(range(len(fiber)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in itertools.combinations(range(len(fiber)), 2):
        if not coprime(fiber[i], fiber[j]):
            parent[find(i)] = find(j)
    comps: dict = {}
    for i, m in enumerate(fiber):
        comps.setdefault(find(i), []).append(m)
    reps = [max(c, key=key) for c in comps.values()]
    reps.sort(key=key, reverse=True)
    return reps


def toric_groebner(S, limits: Limits = DEFAULT_LIMITS) -> IdealBasis:
    """Reduced degrevlex Groebner basis of I(S), via lattice saturation."""
    cached = S._cache.get("toric_gb")
    if cached is not None:
        return cached
    kernel = lattice_kernel(generator_matrix(S))
    gens = [_split(u) for u in kernel]
    w = S.weights()
    for k in range(S.n):
        gens = _saturate(gens, k, w, limits)
    G = groebner_pairs(gens, DEGREVLEX, limits)
    for lead, tail in G:
        if tail is None or S.degree(lead) != S.degree(tail):
            raise InvariantViolation("toric Groebner element is not S-degree balanced")
    gb = IdealBasis(tuple(Binomial(*g) for g in G), DEGREVLEX, reduced=True, minimal=True)
    S._cache["toric_gb"] = gb
    return gb


def toric_ideal(S, limits: Limits = DEFAULT_LIMITS) -> IdealBasis:
    """Minimal binomial generating set of I(S).

    Minimal generators live in the S-degrees of the Groebner elements. In each
    such degree the fiber graph (monomials joined when they share a variable)
    has c components and contributes c - 1 minimal generators. We connect the
    best monomial of the best component, under the local order, to the best
    monomial of every other component, which makes the choice canonical.
    """
    cached = S._cache.get("toric_min")
    if cached is not None:
        return cached
    from .semigroup import factorizations

    gb = toric_groebner(S, limits)
    key = NEGDEGREVLEX.key
    degrees = sorted({S.degree(b.plus) for b in gb.binomials}, key=lambda p: (sum(p), p))
    out = []
    for deg in degrees:
        fiber = sorted(factorizations(S, deg, limits))
        reps = _component_representatives(fiber, key)
        for other in reps[1:]:
            out.append(Binomial(reps[0], other))
    for b in out:
        if S.degree(b.plus) != S.degree(b.minus):
            raise InvariantViolation(f"{b} is not S-degree balanced")
        if b.gcd_reduced() != b:
            raise InvariantViolation(f"{b} has a common factor")
    # the chosen set must generate the same ideal as the saturation
    check = groebner_pairs([orient(b, DEGREVLEX) for b in out], DEGREVLEX, limits)
    if check != [b.pair for b in gb.binomials]:
        raise InvariantViolation("minimal generators do not generate I(S)")
    out.sort(key=lambda b: (sum(S.degree(b.plus)), S.degree(b.plus), DEGREVLEX.key(b.plus)))
    ideal = IdealBasis(tuple(out), NEGDEGREVLEX, reduced=False, minimal=True)
    S._cache["toric_min"] = ideal
    return ideal


def lattice_binomials(S) -> list:
    return [Binomial(*_split(u)) for u in lattice_kernel(generator_matrix(S))]


# -- quotients by monomial-extended ideals ---------------------------------------


def standard_monomials(G: Sequence[tuple], nvars: int, free: Sequence[int], cap: int) -> list:
    """Standard monomials of a zero-dimensional quotient, searched from 1.

    ``free`` lists the variables that may appear; the rest are assumed to lie
    in the ideal. Raises ResourceBound past ``cap`` monomials.
    """
    start = (0,) * nvars
    if any(not any(g[0]) for g in G):
        return []
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for v in free:
                w = tuple(e + (i == v) for i, e in enumerate(m))
                if w in seen or any(divides(g[0], w) for g in G):
                    continue
                seen.add(w)
                if len(seen) > cap:
                    raise ResourceBound(f"more than {cap} standard monomials")
                nxt.append(w)
        frontier = nxt
    return sorted(seen, key=DEGREVLEX.key)


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def standard_monomials_modulo_extremal(S, limits: Limits = DEFAULT_LIMITS) -> list:
    """Standard monomials of A / (I(S) + (z_1..z_d)) under degrevlex."""
    gens = [b.pair for b in toric_ideal(S, limits).binomials]
    gens += [(_unit(S.n, i), None) for i in range(S.dim)]
    G = groebner_pairs(gens, DEGREVLEX, limits)
    free = range(S.dim, S.n)
    _require_zero_dimensional(G, free)
    return standard_monomials(G, S.n, free, limits.max_standard_monomials)


def _require_zero_dimensional(G, free) -> bool:
    for v in free:
        if not any(g[0][v] > 0 and sum(g[0]) == g[0][v] for g in G):
            from .errors import NotSimplicial

            raise NotSimplicial(f"quotient is not finite-dimensional in z{v + 1}")
    return True


@dataclass(frozen=True)
class GastingerResult:
    holds: bool
    dimension: Optional[int]
    expected: int
    diagnostic: str = ""

    def __bool__(self):
        return self.holds


def gastinger_check(J: Iterable[Binomial], S, i: int = 0, limits: Limits = DEFAULT_LIMITS) -> GastingerResult:
    """Decide J = I(S) for a numerical semigroup via dim_k A/(J + (z_i)) = a_i.

    ``i`` is a 0-based variable index.
    """
    if S.dim != 1:
        raise NotNumerical("Gastinger's criterion needs a numerical semigroup")
    J = list(J)
    for f in J:
        if f.minus is None or S.degree(f.plus) != S.degree(f.minus):
            raise PreconditionViolated(f"{f.render()} is not in I(S)")
    expected = S.generators[i][0]
    gens = [f.pair for f in J] + [(_unit(S.n, i), None)]
    G = groebner_pairs(gens, DEGREVLEX, limits)
    free = [v for v in range(S.n) if v != i]
    for v in free:
        if not any(g[0][v] > 0 and sum(g[0]) == g[0][v] for g in G):
            return GastingerResult(False, None, expected, f"infinite dimensional: no pure power of z{v + 1}")
    dim = len(standard_monomials(G, S.n, free, limits.max_standard_monomials))
    return GastingerResult(dim == expected, dim, expected)
