"""Extended generating sets, finite pattern sets, and the per-pattern
constants that turn patterned words into standard forms and weights.

A patterned word fixes a formal sequence of non-abelian letters and carries
all abelian-generator powers as a vector w in N^m; the constants A_i, B_i
recover the group element as ((A_i . w + B_i)_i, t) and the weight as
Aw . w + Bw, with conjugated variants per transversal index.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product as iproduct

from .intlinalg import mat_identity, mat_mul, vec_dot
from .group import GroupElement


@dataclass(frozen=True)
class ExtendedGenSet:
    """Products of 1..depth original generators, split into the abelian part
    (xgens: vectors) and the rest (ygens: elements with nonzero coset), each
    with its true element weight; the identity is dropped, duplicates merged."""

    xgens: tuple  # ((vec, weight), ...)
    ygens: tuple  # ((GroupElement, weight), ...)
    depth: int

    @property
    def r(self):
        return len(self.xgens)


@dataclass(frozen=True)
class PatternConstants:
    pattern: tuple  # indices into ygens
    m: int
    A: tuple  # n vectors of dimension m
    B: tuple  # n ints
    t_pi: int
    Aw: tuple  # weight vector, dimension m
    Bw: int
    conj_A: tuple  # per transversal index: n vectors
    conj_B: tuple  # per transversal index: n ints
    conj_coset: tuple  # per transversal index: coset of t pi t^-1


def _element_weights_up_to(data, gens, radius):
    """Exact element weights within the given radius (best-first closure)."""
    ident = data.identity()
    dist = {ident: 0}
    heap = [(0, 0, ident)]
    tick = 0
    while heap:
        w, _, g = heapq.heappop(heap)
        if w > dist.get(g, w):
            continue
        for gen in gens:
            w2 = w + gen.weight
            if w2 > radius:
                continue
            g2 = data.mul(g, gen.element)
            if w2 < dist.get(g2, w2 + 1):
                dist[g2] = w2
                tick += 1
                heapq.heappush(heap, (w2, tick, g2))
    return dist


def extend_genset(data, gens, depth=None):
    """All products of 1..depth generators, deduplicated by group element
    with true element weights, identity dropped, split into x/y parts.

    Ordering is first-seen over products enumerated by ascending length and
    generator index, which makes every downstream construction deterministic.
    """
    if depth is None:
        depth = data.d
    ident = data.identity()
    seen = []
    seen_set = set()
    level = [ident]
    for _ in range(depth):
        nxt = []
        nxt_set = set()
        for e in level:
            for g in gens:
                e2 = data.mul(e, g.element)
                if e2 not in nxt_set:
                    nxt_set.add(e2)
                    nxt.append(e2)
                if e2 != ident and e2 not in seen_set:
                    seen_set.add(e2)
                    seen.append(e2)
        level = nxt
    weights = _element_weights_up_to(data, gens, depth * max(g.weight for g in gens))
    xgens = []
    ygens = []
    for e in seen:
        w = weights[e]
        if e.coset == 0:
            xgens.append((e.vec, w))
        else:
            ygens.append((e, w))
    return ExtendedGenSet(tuple(xgens), tuple(ygens), depth)


def enumerate_patterns(ext, depth=None):
    """All formal words over the ygens of length 0..depth, in
    length-then-lexicographic order (the fixed total order on patterns)."""
    if depth is None:
        depth = ext.depth
    out = [()]
    for k in range(1, depth + 1):
        out.extend(iproduct(range(len(ext.ygens)), repeat=k))
    return out


def pattern_constants(data, ext, pattern):
    """Constants translating words of this pattern to standard form."""
    n = data.n
    r = ext.r
    k = len(pattern)
    m = (k + 1) * r
    # blocks: G_0 Z | G_1 Z | ... | G_k Z  with G_j the product of the first
    # j letters' conjugation matrices
    zcols = [list(vec) for vec, _ in ext.xgens]  # r vectors of dim n
    blocks = []
    G = mat_identity(n)
    blocks.append([tuple(col) for col in zcols])
    elem = data.identity()
    for idx in pattern:
        y, _ = ext.ygens[idx]
        G = mat_mul(G, data.delta[y.coset])
        blocks.append([tuple(sum(G[i][l] * col[l] for l in range(n)) for i in range(n)) for col in zcols])
        elem = data.mul(elem, y)
    A = tuple(
        tuple(col[i] for block in blocks for col in block) for i in range(n)
    )
    xw = tuple(w for _, w in ext.xgens)
    Aw = xw * (k + 1)
    Bw = sum(ext.ygens[idx][1] for idx in pattern)
    conj_A = []
    conj_B = []
    conj_coset = []
    for t in range(data.d):
        dt = data.delta[t]
        At = tuple(
            tuple(sum(dt[i][l] * A[l][j] for l in range(n)) for j in range(m))
            for i in range(n)
        )
        ce = data.conj(t, elem)
        conj_A.append(At)
        conj_B.append(ce.vec)
        conj_coset.append(ce.coset)
    return PatternConstants(
        pattern=tuple(pattern),
        m=m,
        A=A,
        B=elem.vec,
        t_pi=elem.coset,
        Aw=Aw,
        Bw=Bw,
        conj_A=tuple(conj_A),
        conj_B=tuple(conj_B),
        conj_coset=tuple(conj_coset),
    )


def eval_word(data, const, w):
    """Group element of the patterned word with abelian powers w."""
    if len(w) != const.m:
        raise ValueError("word vector has wrong dimension")
    vec = tuple(vec_dot(a, w) + b for a, b in zip(const.A, const.B))
    return GroupElement(vec, const.t_pi)


def word_weight(const, w):
    if len(w) != const.m:
        raise ValueError("word vector has wrong dimension")
    return vec_dot(const.Aw, w) + const.Bw


def literal_product(data, ext, const, w):
    """Fold the word out letter by letter through group multiplication;
    the independent cross-check for eval_word."""
    r = ext.r
    acc = data.identity()
    pos = 0
    for j in range(len(const.pattern) + 1):
        for i in range(r):
            power = w[pos]
            pos += 1
            vec, _ = ext.xgens[i]
            for _ in range(power):
                acc = data.mul(acc, GroupElement(vec, 0))
        if j < len(const.pattern):
            acc = data.mul(acc, ext.ygens[const.pattern[j]][0])
    return acc
