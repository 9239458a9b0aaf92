"""Exact sets of integer vectors cut out by linear equalities, strict
inequalities, and congruences: finite unions of finite intersections.

The set algebra is closed under union, intersection, complement, integral
affine images and preimages, and coordinate projection.  Projection (and
hence images and emptiness) is realised by Cooper-style quantifier
elimination for linear integer arithmetic; no approximation anywhere.
Counting is exact lexicographic enumeration of the weight-bounded box with
interval pruning.

Representation grows (DNF) under complement and projection; disjuncts are
normalised, deduplicated, and dropped as soon as they are provably empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

EQ = "="
GT = ">"
CONG = "%"


class CoverError(ValueError):
    """Raised by disjointify when the claimed cover misses part of the set."""


@dataclass(frozen=True, slots=True)
class Constraint:
    """u.z = a,  u.z > a,  or  u.z congruent to a mod b."""

    kind: str
    u: tuple
    a: int
    b: int = 0

    def holds(self, z):
        s = sum(c * x for c, x in zip(self.u, z))
        if self.kind == EQ:
            return s == self.a
        if self.kind == GT:
            return s > self.a
        return (s - self.a) % self.b == 0


@dataclass(frozen=True, slots=True)
class BasicSet:
    """Conjunction of constraints; an empty list means all of Z^dim."""

    dim: int
    constraints: tuple

    def holds(self, z):
        return all(c.holds(z) for c in self.constraints)


@dataclass(frozen=True, slots=True)
class PresburgerSet:
    """Union of basic sets; an empty list means the empty set.

    ``positive`` is a constructor-asserted flag meaning the set is known to
    lie inside N^dim (required by count_by_weight); it is never inferred.
    """

    dim: int
    disjuncts: tuple
    positive: bool = False

    def holds(self, z):
        return any(b.holds(z) for b in self.disjuncts)


# ---------------------------------------------------------------------------
# normalisation


def _canon_dir(u):
    """Sign-canonical direction: first nonzero entry positive.  Returns
    (u_canonical, flipped)."""
    for x in u:
        if x > 0:
            return u, False
        if x < 0:
            return tuple(-y for y in u), True
    return u, False


def _crt_merge(a1, b1, a2, b2):
    """Merge x = a1 (mod b1), x = a2 (mod b2) into one congruence or None."""
    g = gcd(b1, b2)
    if (a1 - a2) % g != 0:
        return None
    l = lcm(b1, b2)
    m1 = b1 // g
    m2 = b2 // g
    k = ((a2 - a1) // g * pow(m1, -1, m2)) % m2
    return ((a1 + b1 * k) % l, l)


def normalize_basic(dim, constraints):
    """Canonicalise a conjunction; returns a BasicSet or None if provably
    empty.  Groups constraints by direction line, merges bounds and
    congruences, rewrites single-point intervals as equalities."""
    lines = {}
    for c in constraints:
        u, a, b = c.u, c.a, c.b
        if len(u) != dim:
            raise ValueError("constraint dimension mismatch")
        if not any(u):
            if c.kind == EQ:
                if a != 0:
                    return None
            elif c.kind == GT:
                if a >= 0:
                    return None
            else:
                if a % b != 0:
                    return None
            continue
        if c.kind == EQ:
            g = gcd(*u)
            if a % g:
                return None
            u = tuple(x // g for x in u)
            a //= g
            u, flip = _canon_dir(u)
            if flip:
                a = -a
            key = u
            ent = lines.setdefault(key, [None, None, None, []])  # lo, hi, eq, congs
            if ent[2] is not None and ent[2] != a:
                return None
            ent[2] = a
        elif c.kind == GT:
            g = gcd(*u)
            u = tuple(x // g for x in u)
            a //= g  # floor tightening: u.z > a  <=>  (u/g).z > floor(a/g)
            key, flip = _canon_dir(u)
            ent = lines.setdefault(key, [None, None, None, []])
            if not flip:
                lo = a + 1
                if ent[0] is None or lo > ent[0]:
                    ent[0] = lo
            else:
                hi = -a - 1
                if ent[1] is None or hi < ent[1]:
                    ent[1] = hi
        else:
            a %= b
            g = gcd(gcd(*u), b)
            if g > 1:
                if a % g:
                    return None
                u = tuple(x // g for x in u)
                a //= g
                b //= g
            if b == 1:
                continue
            u, flip = _canon_dir(u)
            if flip:
                a = (-a) % b
            ent = lines.setdefault(u, [None, None, None, []])
            ent[3].append((a, b))

    out = []
    for u, (lo, hi, eq, congs) in lines.items():
        merged = None
        for a, b in congs:
            if merged is None:
                merged = (a, b)
            else:
                merged = _crt_merge(merged[0], merged[1], a, b)
                if merged is None:
                    return None
        if eq is not None:
            if lo is not None and eq < lo:
                return None
            if hi is not None and eq > hi:
                return None
            if merged is not None and (eq - merged[0]) % merged[1] != 0:
                return None
            out.append(Constraint(EQ, u, eq))
            continue
        if merged is not None and lo is not None:
            a, b = merged
            lo = lo + ((a - lo) % b)  # least value >= lo hitting the residue
        if lo is not None and hi is not None:
            if lo > hi:
                return None
            if merged is not None and lo + merged[1] > hi:
                out.append(Constraint(EQ, u, lo))
                continue
            if lo == hi:
                out.append(Constraint(EQ, u, lo))
                continue
        if lo is not None:
            out.append(Constraint(GT, u, lo - 1))
        if hi is not None:
            out.append(Constraint(GT, tuple(-x for x in u), -hi - 1))
        if merged is not None:
            out.append(Constraint(CONG, u, merged[0], merged[1]))
    out.sort(key=lambda c: (c.kind, c.u, c.a, c.b))
    return BasicSet(dim, tuple(out))


def _subsume(basics):
    """Drop disjuncts syntactically contained in another disjunct:
    constraints(other) a subset of constraints(b) means b lies inside other."""
    basics = list(dict.fromkeys(basics))
    if len(basics) > 400:
        return basics
    order = sorted(range(len(basics)), key=lambda i: len(basics[i].constraints))
    sets = [frozenset(b.constraints) for b in basics]
    keep_idx = []
    for i in order:
        if any(sets[j] < sets[i] for j in keep_idx):
            continue
        keep_idx.append(i)
    keep_idx.sort()
    return [basics[i] for i in keep_idx]


def _mkset(dim, basics, positive=False):
    return PresburgerSet(dim, tuple(_subsume([b for b in basics if b is not None])), positive)


# ---------------------------------------------------------------------------
# constructors


def universe(dim):
    return PresburgerSet(dim, (BasicSet(dim, ()),))


def empty_set(dim):
    return PresburgerSet(dim, ())


def from_constraints(dim, constraints, positive=False):
    return _mkset(dim, [normalize_basic(dim, list(constraints))], positive)


def orthant(dim):
    """N^dim, with the positivity flag set."""
    cons = [Constraint(GT, tuple(1 if j == i else 0 for j in range(dim)), -1) for i in range(dim)]
    return from_constraints(dim, cons, positive=True)


def member(pset, z):
    if len(z) != pset.dim:
        raise ValueError("dimension mismatch")
    return pset.holds(z)


# ---------------------------------------------------------------------------
# boolean algebra


def union(p, q):
    if p.dim != q.dim:
        raise ValueError("dimension mismatch")
    return _mkset(p.dim, list(p.disjuncts) + list(q.disjuncts), p.positive and q.positive)


def union_all(dim, sets):
    basics = []
    positive = True
    for s in sets:
        if s.dim != dim:
            raise ValueError("dimension mismatch")
        basics.extend(s.disjuncts)
        positive = positive and s.positive
    return _mkset(dim, basics, positive and bool(sets))


def intersect(p, q, deep=False):
    if p.dim != q.dim:
        raise ValueError("dimension mismatch")
    out = []
    for b1 in p.disjuncts:
        for b2 in q.disjuncts:
            merged = normalize_basic(p.dim, list(b1.constraints) + list(b2.constraints))
            if merged is not None and (not deep or not _basic_empty(merged)):
                out.append(merged)
    return _mkset(p.dim, out, p.positive or q.positive)


def _negate(c):
    """Branches of the complement of one constraint (each a single constraint)."""
    if c.kind == EQ:
        return [Constraint(GT, c.u, c.a), Constraint(GT, tuple(-x for x in c.u), -c.a)]
    if c.kind == GT:
        return [Constraint(GT, tuple(-x for x in c.u), -c.a - 1)]
    return [Constraint(CONG, c.u, (c.a + r) % c.b, c.b) for r in range(1, c.b)]


def complement(p, base=None, deep=True):
    """Complement of p, or the relative complement base minus p.

    Distributes one disjunct at a time, keeping the accumulator pruned
    (normalisation, subsumption, exact emptiness) so intermediate unions
    track the true complexity of the result.
    """
    if base is None:
        acc = [BasicSet(p.dim, ())]
    else:
        if base.dim != p.dim:
            raise ValueError("dimension mismatch")
        acc = list(base.disjuncts)
    pieces = sorted(p.disjuncts, key=lambda b: len(b.constraints))
    for d in pieces:
        if not d.constraints:
            return empty_set(p.dim)
        branches = [br for c in d.constraints for br in _negate(c)]
        nxt = []
        for b in acc:
            for branch in branches:
                merged = normalize_basic(p.dim, list(b.constraints) + [branch])
                if merged is not None and not _basic_empty(merged):
                    nxt.append(merged)
        acc = _subsume(nxt)
    return _mkset(p.dim, acc)


def set_minus(p, q):
    return intersect(p, complement(q))


# ---------------------------------------------------------------------------
# quantifier elimination


def _drop_coord(u, i):
    return u[:i] + u[i + 1 :]


def _elim_basic(bs, i):
    """Eliminate coordinate i from one conjunction: exists x . bs.

    Returns a list of BasicSets of dimension dim-1.  Uses direct
    substitution whenever an equality involves the coordinate, otherwise
    Cooper's method on the strict-inequality / congruence residue system.
    """
    dim = bs.dim
    rest = []
    involved = []
    for c in bs.constraints:
        (involved if c.u[i] != 0 else rest).append(c)
    rest = [Constraint(c.kind, _drop_coord(c.u, i), c.a, c.b) for c in rest]
    if not involved:
        b = normalize_basic(dim - 1, rest)
        return [b] if b is not None else []

    eqs = [c for c in involved if c.kind == EQ]
    if eqs:
        e = min(eqs, key=lambda c: abs(c.u[i]))
        c0 = e.u[i]
        absc = abs(c0)
        sgn = 1 if c0 > 0 else -1
        s_e = tuple(x if j != i else 0 for j, x in enumerate(e.u))
        cons = rest
        for c in involved:
            if c is e:
                continue
            d = c.u[i]
            u2 = tuple(absc * x - sgn * d * y for x, y in zip(c.u, s_e))
            # coefficient at i: absc*d - sgn*d*c0 = 0
            u2 = _drop_coord(tuple(x if j != i else 0 for j, x in enumerate(u2)), i)
            a2 = absc * c.a - sgn * d * e.a
            cons.append(Constraint(c.kind, u2, a2, absc * c.b if c.kind == CONG else 0))
        if absc > 1:
            cons.append(Constraint(CONG, _drop_coord(s_e, i), e.a % absc, absc))
        b = normalize_basic(dim - 1, cons)
        return [b] if b is not None else []

    # Cooper: only GT and CONG involve the coordinate.
    lam = lcm(*(abs(c.u[i]) for c in involved)) if involved else 1
    lows = []  # X > v.z + k
    ups = []  # X < v.z + k
    congs = []  # X = v.z + k  (mod M)
    if lam > 1:
        congs.append((tuple(0 for _ in range(dim)), 0, lam))
    for c in involved:
        cc = c.u[i]
        p = lam // abs(cc)
        s0 = tuple(p * x if j != i else 0 for j, x in enumerate(c.u))
        if c.kind == GT:
            if cc > 0:
                lows.append((tuple(-x for x in s0), p * c.a))
            else:
                ups.append((s0, -p * c.a))
        else:
            if cc > 0:
                congs.append((tuple(-x for x in s0), p * c.a, p * c.b))
            else:
                congs.append((s0, -p * c.a, p * c.b))
    delta = 1
    for _, _, m in congs:
        delta = lcm(delta, m)

    out = []
    if not lows:
        for j in range(1, delta + 1):
            cons = rest[:]
            for v, k, m in congs:
                # j = v.z + k (mod m)
                cons.append(Constraint(CONG, _drop_coord(v, i), j - k, m))
            b = normalize_basic(dim - 1, cons)
            if b is not None:
                out.append(b)
    else:
        for li, (vL, kL) in enumerate(lows):
            for j in range(1, delta + 1):
                cons = rest[:]
                for lk, (v, k) in enumerate(lows):
                    if lk == li:
                        continue
                    cons.append(
                        Constraint(GT, _drop_coord(tuple(a - b_ for a, b_ in zip(vL, v)), i), k - kL - j)
                    )
                for v, k in ups:
                    cons.append(
                        Constraint(GT, _drop_coord(tuple(a - b_ for a, b_ in zip(v, vL)), i), kL + j - k)
                    )
                for v, k, m in congs:
                    cons.append(
                        Constraint(CONG, _drop_coord(tuple(a - b_ for a, b_ in zip(vL, v)), i), k - kL - j, m)
                    )
                b = normalize_basic(dim - 1, cons)
                if b is not None:
                    out.append(b)
    return out


def _coord_score(bs, i):
    """Cheaper coordinates first: equality substitution, then small Cooper."""
    best_eq = None
    gts = 0
    lam = 1
    for c in bs.constraints:
        cc = c.u[i]
        if cc == 0:
            continue
        if c.kind == EQ:
            if best_eq is None or abs(cc) < best_eq:
                best_eq = abs(cc)
        else:
            gts += 1
            lam = lcm(lam, abs(cc))
    if best_eq is not None:
        return (0, best_eq)
    return (1, gts * max(lam, 1))


_EMPTY_CACHE = {}


def _basic_empty(bs):
    """Exact emptiness of one conjunction (memoised).

    Equalities are solved in one batch over Z (HNF parametrisation), the
    inequality/congruence residue is decided by Cooper elimination.
    """
    cached = _EMPTY_CACHE.get(bs)
    if cached is not None:
        return cached
    from .intlinalg import solve_integer_system, vec_dot

    root = normalize_basic(bs.dim, bs.constraints)
    stack = [] if root is None else [root]
    empty = True
    while stack:
        b = stack.pop()
        if b.dim == 0 or not b.constraints:
            empty = False
            break
        eqs = [c for c in b.constraints if c.kind == EQ]
        if eqs:
            sol = solve_integer_system([c.u for c in eqs], [c.a for c in eqs])
            if sol is None:
                continue
            z0, kernel = sol
            others = [c for c in b.constraints if c.kind != EQ]
            if not others:
                empty = False
                break
            if not kernel:
                if all(c.holds(z0) for c in others):
                    empty = False
                    break
                continue
            cons2 = [
                Constraint(
                    c.kind,
                    tuple(vec_dot(c.u, krow) for krow in kernel),
                    c.a - vec_dot(c.u, z0),
                    c.b,
                )
                for c in others
            ]
            nb = normalize_basic(len(kernel), cons2)
            if nb is not None:
                stack.append(nb)
            continue
        i = min(range(b.dim), key=lambda j: _coord_score(b, j))
        stack.extend(_elim_basic(b, i))
    _EMPTY_CACHE[bs] = empty
    return empty


def is_empty(pset):
    return all(_basic_empty(b) for b in pset.disjuncts)


def prune(pset):
    """Drop exactly-empty disjuncts."""
    return _mkset(
        pset.dim, [b for b in pset.disjuncts if not _basic_empty(b)], pset.positive
    )


def project_out(pset, coords):
    """Existential projection removing the given coordinate set."""
    coords = sorted(set(coords))
    if not coords:
        return pset
    if any(c < 0 or c >= pset.dim for c in coords):
        raise ValueError("coordinate out of range")
    done = []
    work = [(b, list(coords)) for b in pset.disjuncts]
    while work:
        b, rem = work.pop()
        if not rem:
            done.append(b)
            continue
        i = min(rem, key=lambda j: _coord_score(b, j))
        rem2 = [j - 1 if j > i else j for j in rem if j != i]
        for piece in _elim_basic(b, i):
            if not _basic_empty(piece):
                work.append((piece, list(rem2)))
    return _mkset(pset.dim - len(coords), done)


def eliminate(pset, i):
    """exists x_i: semantics in dimension dim-1."""
    return project_out(pset, [i])


# ---------------------------------------------------------------------------
# affine maps


def affine_preimage(pset, A, q):
    """Preimage of pset (dim m') under x -> Ax + q, A an m' x m matrix."""
    mp = pset.dim
    if len(A) != mp or len(q) != mp:
        raise ValueError("shape mismatch")
    m = len(A[0]) if A else 0
    cols = tuple(zip(*A)) if A else tuple(() for _ in range(m))
    out = []
    for b in pset.disjuncts:
        cons = []
        for c in b.constraints:
            u2 = tuple(sum(c.u[k] * A[k][j] for k in range(mp)) for j in range(m))
            shift = sum(c.u[k] * q[k] for k in range(mp))
            cons.append(Constraint(c.kind, u2, c.a - shift, c.b))
        out.append(normalize_basic(m, cons))
    return _mkset(m, out)


def affine_image(pset, A, q):
    """Image of pset (dim m) under x -> Ax + q: graph-and-project."""
    m = pset.dim
    mp = len(A)
    if len(q) != mp or any(len(row) != m for row in A):
        raise ValueError("shape mismatch")
    dim = m + mp
    out = []
    for b in pset.disjuncts:
        cons = [Constraint(c.kind, c.u + (0,) * mp, c.a, c.b) for c in b.constraints]
        for i in range(mp):
            u = tuple(-x for x in A[i]) + tuple(1 if j == i else 0 for j in range(mp))
            cons.append(Constraint(EQ, u, q[i]))
        nb = normalize_basic(dim, cons)
        if nb is not None:
            out.append(nb)
    graph = _mkset(dim, out)
    return project_out(graph, range(m))


def product(p, q):
    """Cartesian product in dimension dim(p) + dim(q)."""
    dim = p.dim + q.dim
    out = []
    for b1 in p.disjuncts:
        for b2 in q.disjuncts:
            cons = [Constraint(c.kind, c.u + (0,) * q.dim, c.a, c.b) for c in b1.constraints]
            cons += [Constraint(c.kind, (0,) * p.dim + c.u, c.a, c.b) for c in b2.constraints]
            out.append(normalize_basic(dim, cons))
    return _mkset(dim, out, p.positive and q.positive)


def embed(pset, offset, total_dim):
    """The given set on coordinates [offset, offset+dim), free elsewhere."""
    if offset < 0 or offset + pset.dim > total_dim:
        raise ValueError("embedding out of range")
    left = (0,) * offset
    right = (0,) * (total_dim - offset - pset.dim)
    out = []
    for b in pset.disjuncts:
        cons = [Constraint(c.kind, left + c.u + right, c.a, c.b) for c in b.constraints]
        out.append(normalize_basic(total_dim, cons))
    return _mkset(total_dim, out)


def intersect_orthant(pset):
    """Conjoin z_i >= 0 and set the positivity flag."""
    res = intersect(pset, orthant(pset.dim))
    return PresburgerSet(res.dim, res.disjuncts, True)


# ---------------------------------------------------------------------------
# counting and covers


def count_by_weight(pset, weights, max_weight):
    """Exact counts (c_0 .. c_max_weight) of points by weight w.z.

    Requires the positivity flag and strictly positive weights; lexicographic
    depth-first enumeration of the weight-bounded box with per-disjunct
    interval pruning.
    """
    if not pset.positive:
        raise ValueError("count_by_weight requires a positive set")
    if len(weights) != pset.dim:
        raise ValueError("weight vector dimension mismatch")
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive")
    m = pset.dim
    counts = [0] * (max_weight + 1)
    if m == 0:
        if pset.holds(()):
            counts[0] += 1
        return counts

    disjuncts = [list(b.constraints) for b in pset.disjuncts]

    def feasible(cons, partials, coord, budget):
        for c, p in zip(cons, partials):
            lo = hi = p
            exact = True
            for j in range(coord, m):
                cj = c.u[j]
                if cj:
                    cap = budget // weights[j]
                    if cj > 0:
                        hi += cj * cap
                    else:
                        lo += cj * cap
                    exact = False
            if c.kind == EQ:
                if not (lo <= c.a <= hi):
                    return False
            elif c.kind == GT:
                if hi <= c.a:
                    return False
            else:
                if exact and (lo - c.a) % c.b != 0:
                    return False
        return True

    def rec(coord, budget, weight, active):
        if coord == m:
            for cons, partials in active:
                ok = True
                for c, p in zip(cons, partials):
                    if c.kind == EQ:
                        ok = p == c.a
                    elif c.kind == GT:
                        ok = p > c.a
                    else:
                        ok = (p - c.a) % c.b == 0
                    if not ok:
                        break
                if ok:
                    counts[weight] += 1
                    return
            return
        w = weights[coord]
        for val in range(budget // w + 1):
            nb = budget - val * w
            nxt = []
            for cons, partials in active:
                ps = [p + c.u[coord] * val for c, p in zip(cons, partials)]
                if feasible(cons, ps, coord + 1, nb):
                    nxt.append((cons, ps))
            if nxt:
                rec(coord + 1, nb, weight + val * w, nxt)

    start = [(cons, [0] * len(cons)) for cons in disjuncts]
    start = [(c, p) for c, p in start if feasible(c, p, 0, max_weight)]
    if start:
        rec(0, max_weight, 0, start)
    return counts


def disjointify(pset, cover):
    """Refine a cover X_1..X_k of pset into disjoint Y_i <= X_i with union
    pset; ties go to the smaller index."""
    for x in cover:
        if x.dim != pset.dim:
            raise ValueError("dimension mismatch")
    leftover = set_minus(pset, union_all(pset.dim, list(cover)))
    if not is_empty(leftover):
        raise CoverError("cover does not contain the set")
    out = []
    for i, x in enumerate(cover):
        y = intersect(pset, x)
        for prev in cover[:i]:
            y = set_minus(y, prev)
        out.append(prune(y))
    return out
