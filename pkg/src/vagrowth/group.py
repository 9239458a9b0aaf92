"""Virtually abelian groups given by finite-index data over Z^n.

A group is described by the rank n of its normal free abelian subgroup, a
transversal of size d indexed 0..d-1 (index 0 the identity coset), the
conjugation matrices Delta_t, the multiplication table tau on transversal
indices, and the cocycle vectors x_{s,t} with s.t = x_{s,t} tau(s,t).
Elements are standard forms (vector, transversal index).  Subgroups are
resolved into coset representatives plus the lattice H intersect Z^n by a
Schreier-style closure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .intlinalg import (
    Lattice,
    lattice_contains,
    lattice_from_generators,
    mat_det,
    mat_identity,
    mat_mul,
    mat_mul_vec,
    vec_add,
    vec_neg,
    vec_sub,
)


@dataclass(frozen=True)
class GroupElement:
    vec: tuple
    coset: int

    def __repr__(self):
        return f"({list(self.vec)}, t{self.coset})"


@dataclass(frozen=True)
class Generator:
    element: GroupElement
    weight: int
    name: str


@dataclass(frozen=True)
class VAGroupData:
    n: int
    d: int
    delta: tuple  # d matrices, n x n
    tau: tuple  # d x d table of transversal indices
    cocycle: tuple  # d x d table of n-vectors

    def identity(self):
        return GroupElement((0,) * self.n, 0)

    def inverse_index(self, t):
        for s in range(self.d):
            if self.tau[t][s] == 0:
                return s
        raise ValueError(f"transversal index {t} has no inverse in the tau table")

    def mul(self, g, h):
        s, t = g.coset, h.coset
        vec = vec_add(vec_add(g.vec, mat_mul_vec(self.delta[s], h.vec)), self.cocycle[s][t])
        return GroupElement(vec, self.tau[s][t])

    def inv(self, g):
        t = g.coset
        ti = self.inverse_index(t)
        vec = vec_neg(vec_add(mat_mul_vec(self.delta[ti], g.vec), self.cocycle[ti][t]))
        return GroupElement(vec, ti)

    def conj(self, t, g):
        rep = GroupElement((0,) * self.n, t)
        return self.mul(self.mul(rep, g), self.inv(rep))

    def centralizes_Zn(self, t):
        return self.delta[t] == mat_identity(self.n)

    def power(self, g, k):
        if k < 0:
            return self.power(self.inv(g), -k)
        acc = self.identity()
        for _ in range(k):
            acc = self.mul(acc, g)
        return acc


@dataclass(frozen=True)
class SubgroupResolved:
    """Coset data for a subgroup H: representatives of (H n Z^n)\\H and the
    lattice H n Z^n."""

    c: int
    reps: tuple  # GroupElements, reps[0] = identity, pairwise distinct cosets
    lattice: Lattice


def validate(data, gens):
    """Check the group axioms on the data and the generation requirements on
    the generating set; returns a list of violation strings (empty = ok)."""
    errs = []
    n, d = data.n, data.d
    ident = mat_identity(n)
    if len(data.delta) != d or len(data.tau) != d or len(data.cocycle) != d:
        return [f"tables must all have {d} rows"]
    for t in range(d):
        if len(data.tau[t]) != d or len(data.cocycle[t]) != d:
            return [f"row {t} of tau/cocycle has wrong length"]
        if len(data.delta[t]) != n or any(len(r) != n for r in data.delta[t]):
            return [f"delta[{t}] is not {n}x{n}"]
        if any(len(v) != n for v in data.cocycle[t]):
            return [f"cocycle row {t} has a vector of wrong dimension"]
    if data.delta[0] != ident:
        errs.append("delta[0] is not the identity matrix")
    for t in range(d):
        if data.tau[0][t] != t or data.tau[t][0] != t:
            errs.append(f"tau must satisfy tau(0,{t}) = tau({t},0) = {t}")
        if any(data.cocycle[0][t]) or any(data.cocycle[t][0]):
            errs.append(f"cocycle x(0,{t}) and x({t},0) must vanish")
        if abs(mat_det(data.delta[t])) != 1:
            errs.append(f"delta[{t}] is not in GL(n,Z): |det| != 1")
    for s in range(d):
        for t in range(d):
            if mat_mul(data.delta[s], data.delta[t]) != data.delta[data.tau[s][t]]:
                errs.append(f"delta[{s}]*delta[{t}] != delta[tau({s},{t})]")
    for s in range(d):
        for t in range(d):
            for u in range(d):
                if data.tau[data.tau[s][t]][u] != data.tau[s][data.tau[t][u]]:
                    errs.append(f"tau associativity fails at ({s},{t},{u})")
                lhs = vec_add(data.cocycle[s][t], data.cocycle[data.tau[s][t]][u])
                rhs = vec_add(
                    mat_mul_vec(data.delta[s], data.cocycle[t][u]),
                    data.cocycle[s][data.tau[t][u]],
                )
                if lhs != rhs:
                    errs.append(f"cocycle identity fails at ({s},{t},{u})")
    for t in range(d):
        if all(data.tau[t][s] != 0 for s in range(d)):
            errs.append(f"transversal index {t} has no inverse")
    if errs:
        return errs

    for i, g in enumerate(gens):
        if g.weight < 1:
            errs.append(f"generator {i} ({g.name}) has non-positive weight")
        if g.element == data.identity():
            errs.append(f"generator {i} ({g.name}) is the identity")
        if not (0 <= g.element.coset < d):
            errs.append(f"generator {i} ({g.name}) has coset index out of range")
        if len(g.element.vec) != n:
            errs.append(f"generator {i} ({g.name}) has vector of wrong dimension")
    if errs:
        return errs

    # quotient generation as a monoid: BFS over tau images
    seen = {0}
    frontier = [0]
    while frontier:
        s = frontier.pop()
        for g in gens:
            t = data.tau[s][g.element.coset]
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    if len(seen) != d:
        errs.append("generators do not reach every transversal coset")

    # group generation of Z^n via Schreier closure
    H = resolve_subgroup(data, [g.element for g in gens])
    if H.c != d:
        errs.append("generated subgroup does not meet every Z^n-coset")
    elif H.lattice.rank != n or H.lattice.basis != mat_identity(n):
        errs.append("generators do not generate Z^n (Schreier lattice has index > 1)")
    if errs:
        return errs

    # monoid generation, bounded check: every generator inverse must appear
    # as a positive product within 4x the maximal generator weight
    bound = 4 * max(g.weight for g in gens)
    reached = {data.identity(): 0}
    frontier = [(data.identity(), 0)]
    while frontier:
        elem, w = frontier.pop()
        for g in gens:
            w2 = w + g.weight
            if w2 > bound:
                continue
            e2 = data.mul(elem, g.element)
            if e2 not in reached or reached[e2] > w2:
                reached[e2] = w2
                frontier.append((e2, w2))
    for i, g in enumerate(gens):
        if data.inv(g.element) not in reached:
            errs.append(
                f"inverse of generator {i} ({g.name}) not expressible as a product of weight <= {bound}"
            )
    return errs


def resolve_subgroup(data, gens_h):
    """Deterministic resolution of the subgroup generated by gens_h.

    BFS over the Z^n-cosets met by the subgroup, expanding by the generators
    in input order and then their inverses, keeping the first (hence
    shortest-product) representative per coset; the kernel lattice is spanned
    by the Z^n-parts of the Schreier generators r_j s r_k^{-1}.
    """
    if not gens_h:
        raise ValueError("subgroup generator list must be nonempty")
    alphabet = list(gens_h) + [data.inv(g) for g in gens_h]
    reps = {0: data.identity()}
    order = [0]
    queue = [0]
    while queue:
        idx = queue.pop(0)
        for s in alphabet:
            e2 = data.mul(reps[idx], s)
            if e2.coset not in reps:
                reps[e2.coset] = e2
                order.append(e2.coset)
                queue.append(e2.coset)
    schreier = []
    for idx in order:
        for s in alphabet:
            e2 = data.mul(reps[idx], s)
            k = data.mul(e2, data.inv(reps[e2.coset]))
            assert k.coset == 0
            schreier.append(k.vec)
    lat = lattice_from_generators(schreier, data.n)
    rep_list = tuple(reps[idx] for idx in order)
    return SubgroupResolved(len(rep_list), rep_list, lat)


def subgroup_member(data, sub, g):
    """Membership via the coset representatives and the kernel lattice."""
    for h in sub.reps:
        if h.coset == g.coset:
            diff = data.mul(g, data.inv(h))
            assert diff.coset == 0
            return lattice_contains(sub.lattice, diff.vec)
    return False


def commutator_lattice(data, g):
    """The lattice {[x, g] : x in Z^n}; equals the column lattice of
    I - Delta_t for t the coset of g (so depends only on the coset)."""
    delta = data.delta[g.coset]
    n = data.n
    cols = [
        tuple(
            (1 if i == j else 0) - delta[i][j] for i in range(n)
        )
        for j in range(n)
    ]
    return lattice_from_generators(cols, n)


# ---------------------------------------------------------------------------
# file formats


class GroupFileError(ValueError):
    pass


def _want(obj, key, path, ctx):
    if key not in obj:
        raise GroupFileError(f"{path}: missing field '{key}' in {ctx}")
    return obj[key]


def load_group(path):
    """Parse a group file; returns (VAGroupData, [Generator])."""
    try:
        with open(path) as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise GroupFileError(f"{path}: {e}") from e
    n = _want(raw, "rank", path, "group file")
    d = _want(raw, "transversal", path, "group file")
    try:
        delta = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in raw["delta"])
        tau = tuple(tuple(int(x) for x in row) for row in raw["tau"])
        cocycle = tuple(
            tuple(tuple(int(x) for x in v) for v in row) for row in raw["cocycle"]
        )
    except (KeyError, TypeError, ValueError) as e:
        raise GroupFileError(f"{path}: malformed delta/tau/cocycle tables: {e}") from e
    data = VAGroupData(int(n), int(d), delta, tau, cocycle)
    gens = []
    for i, g in enumerate(_want(raw, "generators", path, "group file")):
        vec = tuple(int(x) for x in _want(g, "vector", path, f"generator {i}"))
        coset = int(_want(g, "coset", path, f"generator {i}"))
        weight = int(_want(g, "weight", path, f"generator {i}"))
        name = str(g.get("name", f"g{i}"))
        gens.append(Generator(GroupElement(vec, coset), weight, name))
    return data, gens


def load_subgroup(path, data):
    """Parse a subgroup file; returns a list of GroupElements."""
    try:
        with open(path) as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise GroupFileError(f"{path}: {e}") from e
    out = []
    for i, g in enumerate(_want(raw, "generators", path, "subgroup file")):
        vec = tuple(int(x) for x in _want(g, "vector", path, f"subgroup generator {i}"))
        coset = int(_want(g, "coset", path, f"subgroup generator {i}"))
        if len(vec) != data.n:
            raise GroupFileError(f"{path}: subgroup generator {i} has wrong dimension")
        if not (0 <= coset < data.d):
            raise GroupFileError(f"{path}: subgroup generator {i} coset out of range")
        out.append(GroupElement(vec, coset))
    return out


def dump_group(data, gens):
    return {
        "rank": data.n,
        "transversal": data.d,
        "delta": [[list(row) for row in m] for m in data.delta],
        "tau": [list(row) for row in data.tau],
        "cocycle": [[list(v) for v in row] for row in data.cocycle],
        "generators": [
            {
                "vector": list(g.element.vec),
                "coset": g.element.coset,
                "weight": g.weight,
                "name": g.name,
            }
            for g in gens
        ],
    }
