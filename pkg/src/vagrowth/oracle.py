"""Independent brute-force ground truth: weight-ordered ball enumeration and
canonical keys for subgroup membership, cosets, and conjugacy classes.

Keys use the exact finite descriptions of cosets and classes (closed-form,
no ball-local closure), so every count at weight <= N is exact once the
ball of radius N is complete.  This module deliberately shares only the
integer linear algebra and group arithmetic with the main pipeline.
"""

from __future__ import annotations

import heapq

from .group import commutator_lattice, subgroup_member
from .intlinalg import lattice_reduce


def ball(data, gens, max_weight):
    """Exact weights of every element of weight <= max_weight.

    Best-first expansion multiplying on the right by generators; an element
    is final when popped.
    """
    ident = data.identity()
    dist = {}
    heap = [(0, 0, ident)]
    tick = 0
    while heap:
        w, _, g = heapq.heappop(heap)
        if g in dist:
            continue
        dist[g] = w
        for gen in gens:
            w2 = w + gen.weight
            if w2 > max_weight:
                continue
            g2 = data.mul(g, gen.element)
            if g2 not in dist:
                tick += 1
                heapq.heappush(heap, (w2, tick, g2))
    return dist


def coset_key(data, sub, g):
    """Canonical key of the right coset Hg: the set of canonicalised
    (H n Z^n)-cosets it decomposes into."""
    pieces = []
    for h in sub.reps:
        hg = data.mul(h, g)
        pieces.append((lattice_reduce(sub.lattice, hg.vec), hg.coset))
    return tuple(sorted(set(pieces)))


def conjugacy_key(data, g):
    """Canonical key of the conjugacy class of g.

    Inside the centralizer of Z^n the class is the finite set of transversal
    conjugates; outside it is a finite union of commutator-lattice cosets,
    canonicalised coset by coset.
    """
    if data.centralizes_Zn(g.coset):
        elems = {(data.conj(t, g).vec, data.conj(t, g).coset) for t in range(data.d)}
        return ("fin", tuple(sorted(elems)))
    pieces = set()
    for t in range(data.d):
        c = data.conj(t, g)
        lat = commutator_lattice(data, c)
        pieces.add((lattice_reduce(lat, c.vec), c.coset))
    return ("cos", tuple(sorted(pieces)))


def oracle_counts(data, gens, mode, max_weight, sub=None):
    """Exact counts by weight for the requested growth notion.

    mode: standard | relative | coset | conjugacy.  Relative and coset need
    a resolved subgroup.
    """
    if mode in ("relative", "coset") and sub is None:
        raise ValueError(f"mode {mode} requires a subgroup")
    b = ball(data, gens, max_weight)
    counts = [0] * (max_weight + 1)
    if mode == "standard":
        for w in b.values():
            counts[w] += 1
    elif mode == "relative":
        for g, w in b.items():
            if subgroup_member(data, sub, g):
                counts[w] += 1
    elif mode == "coset":
        best = {}
        for g, w in b.items():
            key = coset_key(data, sub, g)
            if key not in best or w < best[key]:
                best[key] = w
        for w in best.values():
            counts[w] += 1
    elif mode == "conjugacy":
        best = {}
        for g, w in b.items():
            key = conjugacy_key(data, g)
            if key not in best or w < best[key]:
                best[key] = w
        for w in best.values():
            counts[w] += 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return counts
