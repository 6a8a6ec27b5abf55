"""Combinatorics of simplicial affine semigroups in N^d.

Generators are stored as integer tuples. The first ``dim`` generators are
always the extremal rays; that convention is what makes variable indices
``0..dim-1`` the "extremal variables" in every other module.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    DuplicateGenerator,
    LengthMismatch,
    MalformedInput,
    NonMinimalGenerator,
    NotInSemigroup,
    NotSimplicial,
    ResourceBound,
    ZeroGenerator,
)

Point = tuple


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _leq(u, v):
    return all(a <= b for a, b in zip(u, v))


# -- the group generated by S ------------------------------------------------------


def _integer_echelon(vectors: Sequence[Sequence[int]]) -> list:
    """Row echelon basis of the Z-span, by extended-gcd row operations."""
    rows = [list(v) for v in vectors if any(v)]
    out = []
    if not rows:
        return out
    for col in range(len(rows[0])):
        while True:
            nz = [r for r in rows if r[col]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            for r in nz:
                if r is not piv:
                    q = r[col] // piv[col]
                    r[:] = [x - q * y for x, y in zip(r, piv)]
        piv = next((r for r in rows if r[col]), None)
        if piv is not None:
            out.append(piv)
            rows = [r for r in rows if r is not piv and any(r)]
    return out


def in_group(S: "AffineSemigroup", v: Sequence[int]) -> bool:
    """Is v in the lattice G(S) spanned by the generators over Z?"""
    ech = S._cache.get("echelon")
    if ech is None:
        ech = S._cache["echelon"] = _integer_echelon(S.generators)
    v = list(v)
    for row in ech:
        c = next(i for i, x in enumerate(row) if x)
        if any(v[:c]):
            return False
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


# -- exact linear algebra over Q ---------------------------------------------


def rational_rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def cone_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[list]:
    """Coefficients of ``v`` in the linearly independent ``basis``, or None."""
    k = len(basis)
    d = len(v)
    # augmented system: columns are basis vectors
    m = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(d)]
    row = 0
    pivots = []
    for c in range(k):
        piv = next((r for r in range(row, d) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[row], m[piv] = m[piv], m[row]
        p = m[row][c]
        m[row] = [x / p for x in m[row]]
        for r in range(d):
            if r != row and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivots.append(c)
        row += 1
    if any(m[r][k] != 0 for r in range(row, d)):
        return None
    return [m[i][k] for i in range(k)]


def _parallel(u, v) -> bool:
    return rational_rank([u, v]) < 2


# -- the semigroup -----------------------------------------------------------


@dataclass(frozen=True)
class AffineSemigroup:
    """Simplicial affine semigroup with extremal rays listed first.

    Construction validates minimal generation and that the first ``dim``
    generators span a simplicial cone containing every generator. Use
    :func:`detect_extremal_rays` to build one from an unordered list.
    """

    dim: int
    generators: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        d = self.dim
        if d < 1:
            raise MalformedInput(f"dimension must be positive, got {d}")
        if len(gens) < d:
            raise NotSimplicial(f"{len(gens)} generators cannot span dimension {d}")
        for g in gens:
            if len(g) != d:
                raise LengthMismatch(f"generator {g} does not live in N^{d}")
            if any(x < 0 for x in g):
                raise MalformedInput(f"generator {g} has a negative entry")
            if not any(g):
                raise ZeroGenerator("the zero vector cannot be a generator")
        if len(set(gens)) != len(gens):
            raise DuplicateGenerator("generators must be pairwise distinct")
        rays = gens[:d]
        if rational_rank(rays) < d:
            raise NotSimplicial("designated extremal rays are not linearly independent")
        for g in gens[d:]:
            coords = cone_coordinates(rays, g)
            if coords is None or any(c < 0 for c in coords):
                raise NotSimplicial(f"generator {g} lies outside the cone of the extremal rays")
        for i, g in enumerate(gens):
            others = gens[:i] + gens[i + 1:]
            if _dfs_one(others, g) is not None:
                raise NonMinimalGenerator(f"generator {g} is a combination of the others")

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def r(self) -> int:
        return self.n - self.dim

    @property
    def extremal_rays(self) -> tuple:
        return self.generators[: self.dim]

    @property
    def zero(self) -> Point:
        return (0,) * self.dim

    def degree(self, exponents: Sequence[int]) -> Point:
        """S-degree of the monomial z^exponents."""
        out = [0] * self.dim
        for e, g in zip(exponents, self.generators):
            if e:
                for c in range(self.dim):
                    out[c] += e * g[c]
        return tuple(out)

    def weights(self) -> tuple:
        """Positive integer grading: coordinate sum of each generator."""
        return tuple(sum(g) for g in self.generators)

    # memoized order; None marks non-membership
    def _ord(self, v: Point) -> Optional[int]:
        memo = self._cache.setdefault("ord", {self.zero: 0})
        if v in memo:
            return memo[v]
        # iterative post-order to avoid deep recursion
        stack = [v]
        while stack:
            top = stack[-1]
            if top in memo:
                stack.pop()
                continue
            pending = []
            best = None
            for g in self.generators:
                if _leq(g, top):
                    w = _sub(top, g)
                    if w not in memo:
                        pending.append(w)
                    else:
                        o = memo[w]
                        if o is not None and (best is None or o + 1 > best):
                            best = o + 1
            if pending:
                stack.extend(pending)
                continue
            memo[top] = best
            stack.pop()
        return memo[v]


def _bounds(gen, v):
    return min(v[c] // gen[c] for c in range(len(v)) if gen[c] > 0)


def _dfs_one(gens, v) -> Optional[tuple]:
    """Find one factorization of v over gens, or None."""
    order = sorted(range(len(gens)), key=lambda i: -sum(gens[i]))
    mult = [0] * len(gens)

    def rec(k, rem):
        if not any(rem):
            return True
        if k == len(order):
            return False
        i = order[k]
        g = gens[i]
        top = _bounds(g, rem)
        for m in range(top, -1, -1):
            mult[i] = m
            nxt = tuple(x - m * y for x, y in zip(rem, g))
            if rec(k + 1, nxt):
                return True
        mult[i] = 0
        return False

    return tuple(mult) if rec(0, tuple(v)) else None


def _dfs_all(gens, v, cap: int) -> Iterator[tuple]:
    order = sorted(range(len(gens)), key=lambda i: -sum(gens[i]))
    mult = [0] * len(gens)
    count = 0

    def rec(k, rem):
        nonlocal count
        if k == len(order):
            if not any(rem):
                count += 1
                if count > cap:
                    raise ResourceBound(f"more than {cap} factorizations")
                yield tuple(mult)
            return
        i = order[k]
        g = gens[i]
        top = _bounds(g, rem)
        for m in range(top, -1, -1):
            mult[i] = m
            yield from rec(k + 1, tuple(x - m * y for x, y in zip(rem, g)))
        mult[i] = 0

    yield from rec(0, tuple(v))


# -- operations ----------------------------------------------------------------


def detect_extremal_rays(generators, dim: int, canonical: bool = True) -> AffineSemigroup:
    """Build a semigroup, moving the extremal rays of the cone to the front.

    With ``canonical`` both the rays and the remaining generators are sorted
    lexicographically, so any permutation of the input gives the same result.
    Otherwise their relative input order is kept.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise MalformedInput("empty generator list")
    for g in gens:
        if len(g) != dim:
            raise LengthMismatch(f"generator {g} does not live in N^{dim}")
        if any(x < 0 for x in g):
            raise MalformedInput(f"generator {g} has a negative entry")
        if not any(g):
            raise ZeroGenerator("the zero vector cannot be a generator")
    if len(set(gens)) != len(gens):
        raise DuplicateGenerator("generators must be pairwise distinct")
    if rational_rank(gens) < dim:
        raise NotSimplicial(f"cone has dimension < {dim}")

    # one representative (smallest) per ray direction
    reps: list = []
    for g in sorted(gens, key=lambda g: (sum(g), g)):
        if not any(_parallel(g, h) for h in reps):
            reps.append(g)
    rays = None
    for cand in itertools.combinations(reps, dim):
        if rational_rank(cand) < dim:
            continue
        ok = True
        for g in gens:
            coords = cone_coordinates(cand, g)
            if coords is None or any(c < 0 for c in coords):
                ok = False
                break
        if ok:
            rays = list(cand)
            break
    if rays is None:
        raise NotSimplicial("cone has more than dim extremal rays")
    rest = [g for g in gens if g not in rays]
    if canonical:
        rays.sort()
        rest.sort()
    else:
        rays.sort(key=gens.index)
    return AffineSemigroup(dim, tuple(rays) + tuple(rest))


def natural_semigroup(dim: int) -> AffineSemigroup:
    """N^dim generated by the unit vectors."""
    return AffineSemigroup(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))


def contains(S: AffineSemigroup, v: Sequence[int]) -> bool:
    v = tuple(v)
    if len(v) != S.dim:
        raise LengthMismatch(f"{v} does not live in N^{S.dim}")
    if any(x < 0 for x in v):
        return False
    memo = S._cache.setdefault("contains", {})
    if v not in memo:
        memo[v] = _dfs_one(S.generators, v) is not None
    return memo[v]


def factorizations(S: AffineSemigroup, v: Sequence[int], limits: Limits = DEFAULT_LIMITS) -> set:
    v = tuple(v)
    if not contains(S, v):
        raise NotInSemigroup(f"{v} is not in the semigroup")
    return set(_dfs_all(S.generators, v, limits.max_factorizations))


def length_set(S: AffineSemigroup, v: Sequence[int]) -> set:
    return {sum(f) for f in factorizations(S, v)}


def order(S: AffineSemigroup, v: Sequence[int]) -> int:
    """Maximal factorization length of ``v``."""
    v = tuple(v)
    if len(v) != S.dim:
        raise LengthMismatch(f"{v} does not live in N^{S.dim}")
    if any(x < 0 for x in v):
        raise NotInSemigroup(f"{v} is not in the semigroup")
    o = S._ord(v)
    if o is None:
        raise NotInSemigroup(f"{v} is not in the semigroup")
    return o


def in_semigroup(S: AffineSemigroup, v: Sequence[int]) -> bool:
    """Fast membership through the memoized order table."""
    v = tuple(v)
    return all(x >= 0 for x in v) and S._ord(v) is not None


@dataclass(frozen=True)
class AperySet:
    elements: tuple
    lengths: dict

    def __contains__(self, v):
        return tuple(v) in self.elements

    def __len__(self):
        return len(self.elements)


def apery_set(S: AffineSemigroup, limits: Limits = DEFAULT_LIMITS) -> AperySet:
    """Ap(S, E) from the standard monomials of I(S) + (z_1..z_d)."""
    cached = S._cache.get("apery")
    if cached is not None:
        return cached
    from .binomial import standard_monomials_modulo_extremal

    degrees = set()
    for mono in standard_monomials_modulo_extremal(S, limits):
        deg = S.degree(mono)
        if deg in degrees:
            raise _invariant(f"two standard monomials share S-degree {deg}")
        degrees.add(deg)
    elems = tuple(sorted(degrees, key=lambda p: (sum(p), p)))
    ap = AperySet(elems, {e: frozenset(length_set(S, e)) for e in elems})
    S._cache["apery"] = ap
    return ap


def apery_set_bfs(S: AffineSemigroup, cap: int = 1_000_000) -> set:
    """Independent Apery-set oracle.

    Ap(S,E) is closed under removing a non-extremal generator, so a search
    from 0 that only extends Apery elements by non-extremal generators
    reaches all of it.
    """
    d = S.dim
    rays = S.extremal_rays

    def is_apery(v):
        return not any(_leq(a, v) and in_semigroup(S, _sub(v, a)) for a in rays)

    seen = {S.zero}
    queue = deque([S.zero])
    while queue:
        v = queue.popleft()
        for g in S.generators[d:]:
            w = _add(v, g)
            if w not in seen and is_apery(w):
                seen.add(w)
                if len(seen) > cap:
                    raise ResourceBound("Apery search exceeded its cap")
                queue.append(w)
    return seen


def _invariant(msg):
    from .errors import InvariantViolation

    return InvariantViolation(msg)


@dataclass(frozen=True)
class HomogeneityVerdict:
    homogeneous: bool
    witness: Optional[Point] = None
    witness_lengths: tuple = ()


def is_homogeneous_semigroup(S: AffineSemigroup, limits: Limits = DEFAULT_LIMITS) -> HomogeneityVerdict:
    ap = apery_set(S, limits)
    for e in ap.elements:
        ls = ap.lengths[e]
        if len(ls) > 1:
            return HomogeneityVerdict(False, e, tuple(sorted(ls)))
    return HomogeneityVerdict(True)


@dataclass(frozen=True)
class ObstructionWitness:
    b: Point
    i: int
    ord_b: int
    ord_b_plus: int


def elements_up_to(S: AffineSemigroup, bound: int) -> list:
    """All elements of S with coordinate sum at most ``bound``."""
    seen = {S.zero}
    queue = deque([S.zero])
    while queue:
        v = queue.popleft()
        for g in S.generators:
            w = _add(v, g)
            if sum(w) <= bound and w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen, key=lambda p: (sum(p), p))


def default_degree_bound(S: AffineSemigroup, limits: Limits = DEFAULT_LIMITS) -> int:
    # heuristic: twice the largest Apery element plus twice the largest ray
    ap = apery_set(S, limits)
    return 2 * max(sum(e) for e in ap.elements) + 2 * max(sum(a) for a in S.extremal_rays)


def order_obstructions(S: AffineSemigroup, degree_bound: Optional[int] = None,
                       limits: Limits = DEFAULT_LIMITS) -> list:
    """Elements b with ord(b + a_i) > ord(b) + 1 for some extremal ray a_i."""
    if degree_bound is None:
        degree_bound = default_degree_bound(S, limits)
    out = []
    for b in elements_up_to(S, degree_bound):
        ob = S._ord(b)
        for i, a in enumerate(S.extremal_rays):
            o = S._ord(_add(b, a))
            if o > ob + 1:
                out.append(ObstructionWitness(b, i, ob, o))
    return out


@dataclass(frozen=True)
class ReductionCertificate:
    certified: bool
    n: Optional[int] = None
    n_max: int = 0


def verify_reduction(S: AffineSemigroup, n_max: int = 8) -> ReductionCertificate:
    """Smallest n <= n_max with (n+1)M = union of (a_i + nM) over extremal rays.

    Both sides are semigroup ideals and (n+1)M is generated by the sums of
    n+1 generators, so checking those finitely many sums is exact.
    """
    for n in range(1, n_max + 1):
        ok = True
        for combo in itertools.combinations_with_replacement(range(S.n), n + 1):
            s = S.zero
            for j in combo:
                s = _add(s, S.generators[j])
            hit = False
            for a in S.extremal_rays:
                if _leq(a, s):
                    o = S._ord(_sub(s, a))
                    if o is not None and o >= n:
                        hit = True
                        break
            if not hit:
                ok = False
                break
        if ok:
            return ReductionCertificate(True, n, n_max)
    return ReductionCertificate(False, None, n_max)
