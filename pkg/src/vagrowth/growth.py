"""The four weighted growth series of a virtually abelian group: standard,
relative to a subgroup, coset, and conjugacy.

Everything reduces to one construction: per pattern, the definable set of
weight-minimal words representing each coset of a sublattice F of Z^n
(standard growth is the F = 0 case), cross-pruned so that every coset keeps
exactly one word across patterns.  Coset and conjugacy growth assemble
tuples of such representatives, select one component per tuple under a
total key that depends only on the candidate multiset, and count the
per-pattern unions with set semantics.  Rational functions come from exact
recurrence reconstruction certified against the enumerated prefix.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product as iproduct

from . import presburger as pb
from .group import GroupElement, commutator_lattice
from .intlinalg import Lattice
from .patterns import enumerate_patterns, extend_genset, pattern_constants
from .series import reconstruct, rf_add, rf_sub, ZERO


def _flag_positive(pset):
    return pb.PresburgerSet(pset.dim, pset.disjuncts, True)


class GrowthEngine:
    """Shared pattern system and cached representative families for one
    weighted group."""

    def __init__(self, data, gens, depth=None):
        self.data = data
        self.gens = gens
        self.ext = extend_genset(data, gens, depth)
        self.patterns = enumerate_patterns(self.ext)
        self.constants = [pattern_constants(data, self.ext, p) for p in self.patterns]
        self.by_coset = defaultdict(list)
        for i, c in enumerate(self.constants):
            self.by_coset[c.t_pi].append(i)
        self._families = {}
        self._minreps = {}

    # -- pattern-level representative sets ---------------------------------

    def zero_lattice(self):
        return Lattice(self.data.n, ())

    def min_coset_reps(self, F, k):
        """Words of pattern k that are order-minimal within their F-coset.

        Built as N^m minus the projection of "some same-F-coset word is
        strictly smaller", where the order compares weight first and then
        coordinates left to right; quantifier elimination replaces any
        finiteness argument.
        """
        key = (F.basis, k)
        cached = self._minreps.get(key)
        if cached is not None:
            return cached
        const = self.constants[k]
        m = const.m
        n = self.data.n
        f = F.rank
        pieces = []
        for p in range(m + 1):
            vstart = p - 1 if p >= 1 else 0  # coords < vstart are pinned v_q = w_q
            nlive = m - vstart
            dims = m + nlive + f
            cons = []
            for i in range(n):
                u = [0] * dims
                for q in range(vstart, m):
                    u[q] += const.A[i][q]
                    u[m + (q - vstart)] -= const.A[i][q]
                for j in range(f):
                    u[m + nlive + j] = -F.basis[j][i]
                cons.append(pb.Constraint(pb.EQ, tuple(u), 0))
            uw = [0] * dims
            for q in range(vstart, m):
                uw[q] += const.Aw[q]
                uw[m + (q - vstart)] -= const.Aw[q]
            if p == 0:
                cons.append(pb.Constraint(pb.GT, tuple(uw), 0))
            else:
                cons.append(pb.Constraint(pb.EQ, tuple(uw), 0))
                us = [0] * dims
                us[p - 1] = 1
                us[m] = -1  # v_{p-1} is the first live v coordinate
                cons.append(pb.Constraint(pb.GT, tuple(us), 0))
            for q in range(nlive):
                uv = [0] * dims
                uv[m + q] = 1
                cons.append(pb.Constraint(pb.GT, tuple(uv), -1))
            basic = pb.from_constraints(dims, cons)
            pieces.append(pb.project_out(basic, range(m, dims)))
        nonmin = pb.union_all(m, pieces)
        v = _flag_positive(pb.complement(nonmin, base=pb.orthant(m)))
        self._minreps[key] = v
        return v

    def _weight_map(self, k):
        const = self.constants[k]
        rows = [list(a) for a in const.A] + [list(const.Aw)]
        offs = list(const.B) + [const.Bw]
        return rows, offs

    def _phi(self, F):
        """Same-F-coset comparison sets on pairs of (element, weight) images,
        lattice coefficients projected out; strict and equal-weight variants."""
        n = self.data.n
        f = F.rank
        dims = 2 * (n + 1) + f
        eqs = []
        for i in range(n):
            u = [0] * dims
            u[i] = 1
            u[n + 1 + i] = -1
            for j in range(f):
                u[2 * (n + 1) + j] = -F.basis[j][i]
            eqs.append(pb.Constraint(pb.EQ, tuple(u), 0))
        uw = [0] * dims
        uw[n] = 1
        uw[2 * n + 1] = -1
        strict = pb.from_constraints(dims, eqs + [pb.Constraint(pb.GT, tuple(uw), 0)])
        equal = pb.from_constraints(dims, eqs + [pb.Constraint(pb.EQ, tuple(uw), 0)])
        rng = range(2 * (n + 1), dims)
        return pb.project_out(strict, rng), pb.project_out(equal, rng)

    def rep_family(self, F, cosets=None):
        """U-family: unique minimal-weight words per F-coset across all
        patterns of each Z^n-coset group (cross-pattern overlaps removed,
        ties to the earlier pattern)."""
        key = (F.basis, None if cosets is None else tuple(sorted(cosets)))
        cached = self._families.get(key)
        if cached is not None:
            return cached
        n = self.data.n
        groups = {
            t: idxs for t, idxs in self.by_coset.items() if cosets is None or t in cosets
        }
        v_sets = {}
        images = {}
        for idxs in groups.values():
            for k in idxs:
                v_sets[k] = self.min_coset_reps(F, k)
                rows, offs = self._weight_map(k)
                images[k] = pb.affine_image(v_sets[k], rows, offs)
        phi_strict, phi_equal = self._phi(F)

        def dominated_images(k, i, phi):
            # (element, weight) images of k-words beaten by an i-word
            prod = pb.product(images[k], images[i])
            inner = pb.intersect(prod, phi)
            return pb.project_out(inner, range(n + 1, 2 * (n + 1)))

        fam = {}
        for idxs in groups.values():
            for k in idxs:
                bads = []
                for i in idxs:
                    if i != k:
                        bads.append(dominated_images(k, i, phi_strict))
                    if i < k:
                        bads.append(dominated_images(k, i, phi_equal))
                if bads:
                    # complement before pulling back: preimage commutes with
                    # the boolean operations, and dimension n+1 stays small
                    bad = pb.union_all(n + 1, bads)
                    good = pb.complement(bad, base=images[k])
                    rows, offs = self._weight_map(k)
                    back = pb.affine_preimage(good, rows, offs)
                    fam[k] = pb.prune(pb.intersect(v_sets[k], back))
                else:
                    fam[k] = v_sets[k]
        self._families[key] = fam
        return fam

    # -- counting and reconstruction ----------------------------------------

    def family_prefix(self, fam, max_weight):
        counts = [0] * (max_weight + 1)
        for k, u_set in fam.items():
            const = self.constants[k]
            if const.Bw > max_weight or not u_set.disjuncts:
                continue
            sub = pb.count_by_weight(u_set, const.Aw, max_weight - const.Bw)
            for w, c in enumerate(sub):
                counts[w + const.Bw] += c
        return counts

    def _finish(self, prefix, max_weight, guard, max_den_degree):
        rf = reconstruct(prefix, guard, max_den_degree)
        return rf, prefix[: max_weight + 1]

    def _fit_length(self, max_weight, guard):
        return max(max_weight, 8 + guard)

    # -- the four series -----------------------------------------------------

    def standard_series(self, max_weight=12, guard=16, max_den_degree=64):
        fam = self.rep_family(self.zero_lattice())
        prefix = self.family_prefix(fam, self._fit_length(max_weight, guard))
        return self._finish(prefix, max_weight, guard, max_den_degree)

    def membership_sets(self, sub):
        """Per pattern, the word vectors whose element lies in the subgroup."""
        n = self.data.n
        f = sub.lattice.rank
        memb = {}
        for k, const in enumerate(self.constants):
            rep = next((h for h in sub.reps if h.coset == const.t_pi), None)
            if rep is None:
                continue
            dims = const.m + f
            cons = []
            for i in range(n):
                u = list(const.A[i]) + [0] * f
                for j in range(f):
                    u[const.m + j] = -sub.lattice.basis[j][i]
                cons.append(pb.Constraint(pb.EQ, tuple(u), rep.vec[i] - const.B[i]))
            x = pb.project_out(pb.from_constraints(dims, cons), range(const.m, dims))
            memb[k] = pb.intersect_orthant(x)
        return memb

    def relative_series(self, sub, max_weight=12, guard=16, max_den_degree=64):
        fam = self.rep_family(self.zero_lattice())
        memb = self.membership_sets(sub)
        fam2 = {k: pb.prune(pb.intersect(fam[k], memb[k])) for k in memb}
        prefix = self.family_prefix(fam2, self._fit_length(max_weight, guard))
        return self._finish(prefix, max_weight, guard, max_den_degree)

    def relative_series_union(self, subs, max_weight=12, guard=16, max_den_degree=64):
        """Relative growth of a finite union of subgroups by inclusion-
        exclusion; intersections are intersected membership sets."""
        if not subs:
            raise ValueError("need at least one subgroup")
        fam = self.rep_family(self.zero_lattice())
        membs = [self.membership_sets(s) for s in subs]
        fit = self._fit_length(max_weight, guard)
        total_rf = ZERO
        total_prefix = [0] * (fit + 1)
        from itertools import combinations

        for size in range(1, len(subs) + 1):
            for combo in combinations(range(len(subs)), size):
                fam2 = {}
                for k in range(len(self.patterns)):
                    if any(k not in membs[i] for i in combo):
                        continue
                    x = fam[k]
                    for i in combo:
                        x = pb.intersect(x, membs[i][k])
                    fam2[k] = pb.prune(x)
                prefix = self.family_prefix(fam2, fit)
                rf = reconstruct(prefix, guard, max_den_degree)
                if size % 2 == 1:
                    total_rf = rf_add(total_rf, rf)
                    total_prefix = [a + b for a, b in zip(total_prefix, prefix)]
                else:
                    total_rf = rf_sub(total_rf, rf)
                    total_prefix = [a - b for a, b in zip(total_prefix, prefix)]
        return total_rf, total_prefix[: max_weight + 1]

    # -- tuple machinery for coset and conjugacy growth ----------------------

    def _block_offsets(self, pivec):
        offs = [0]
        for k in pivec:
            offs.append(offs[-1] + self.constants[k].m)
        return offs

    def _beats(self, pivec, offs, total, j, k, allow_tie):
        """Tuples whose component j precedes component k under the selection
        key (weight, pattern index, lexicographic vector)."""
        cj = self.constants[pivec[j]]
        ck = self.constants[pivec[k]]
        basics = []

        def weight_vec():
            u = [0] * total
            for q in range(ck.m):
                u[offs[k] + q] += ck.Aw[q]
            for q in range(cj.m):
                u[offs[j] + q] -= cj.Aw[q]
            return tuple(u)

        wdiff = weight_vec()
        rhs = cj.Bw - ck.Bw
        basics.append([pb.Constraint(pb.GT, wdiff, rhs)])
        if pivec[j] < pivec[k]:
            basics.append([pb.Constraint(pb.EQ, wdiff, rhs)])
        elif pivec[j] == pivec[k]:
            m = cj.m
            for q in range(m):
                cons = [pb.Constraint(pb.EQ, wdiff, rhs)]
                for p in range(q):
                    u = [0] * total
                    u[offs[j] + p] = 1
                    u[offs[k] + p] = -1
                    cons.append(pb.Constraint(pb.EQ, tuple(u), 0))
                u = [0] * total
                u[offs[k] + q] = 1
                u[offs[j] + q] = -1
                cons.append(pb.Constraint(pb.GT, tuple(u), 0))
                basics.append(cons)
            if allow_tie:
                cons = []
                for p in range(m):
                    u = [0] * total
                    u[offs[j] + p] = 1
                    u[offs[k] + p] = -1
                    cons.append(pb.Constraint(pb.EQ, tuple(u), 0))
                basics.append(cons)
        normalized = [pb.normalize_basic(total, cons) for cons in basics]
        return pb.PresburgerSet(total, tuple(b for b in normalized if b is not None))

    def select_from_tuples(self, pivec, tuple_set):
        """One word per tuple, the component minimal under (weight, pattern
        index, lex vector); returns (pattern index, projected set) pairs.

        The key depends only on the multiset of components, so permuted
        tuples select the same word and set-union counting absorbs repeats.
        """
        offs = self._block_offsets(pivec)
        total = offs[-1]
        out = []
        for j in range(len(pivec)):
            s = tuple_set
            for k in range(len(pivec)):
                if k == j:
                    continue
                s = pb.intersect(s, self._beats(pivec, offs, total, j, k, allow_tie=k > j))
                if not s.disjuncts:
                    break
            s = pb.prune(s)
            if not s.disjuncts:
                continue
            outside = [q for q in range(total) if not (offs[j] <= q < offs[j + 1])]
            proj = pb.project_out(s, outside)
            out.append((pivec[j], _flag_positive(proj)))
        return out

    def _fold_prefix(self, tuple_sets, max_weight, per_tuple=False):
        """Count selected representatives; per-pattern set union by default,
        or the (deliberately wrong) per-tuple multiset sum when asked."""
        acc = defaultdict(list)
        counts = [0] * (max_weight + 1)
        for pivec, v in tuple_sets:
            for pat_idx, proj in self.select_from_tuples(pivec, v):
                if per_tuple:
                    const = self.constants[pat_idx]
                    if const.Bw <= max_weight:
                        sub = pb.count_by_weight(proj, const.Aw, max_weight - const.Bw)
                        for w, c in enumerate(sub):
                            counts[w + const.Bw] += c
                else:
                    acc[pat_idx].append(proj)
        if per_tuple:
            return counts
        fam = {}
        for pat_idx, sets in acc.items():
            m = self.constants[pat_idx].m
            fam[pat_idx] = pb.prune(pb.union_all(m, sets))
        return self.family_prefix(fam, max_weight)

    # -- coset growth ---------------------------------------------------------

    def _coset_piece(self, sub, pivec, t, fam):
        """Tuples of F-coset representatives witnessing one element g in the
        Z^n-coset t: one linear system per (representative, coordinate) over
        the word blocks, lattice coefficients, and g, then projected."""
        data = self.data
        n = data.n
        F = sub.lattice
        f = F.rank
        c = sub.c
        offs = self._block_offsets(pivec)
        mtot = offs[-1]
        dims = mtot + f * c + n
        cons = []
        for j in range(c):
            const = self.constants[pivec[j]]
            sj = sub.reps[j].coset
            dh = data.delta[sj]
            xoff = [a + b for a, b in zip(sub.reps[j].vec, data.cocycle[sj][t])]
            for i in range(n):
                u = [0] * dims
                for q in range(const.m):
                    u[offs[j] + q] = const.A[i][q]
                for kk in range(f):
                    u[mtot + f * j + kk] = -F.basis[kk][i]
                for l in range(n):
                    u[mtot + f * c + l] = -dh[i][l]
                cons.append(pb.Constraint(pb.EQ, tuple(u), -const.B[i] + xoff[i]))
        base = pb.from_constraints(dims, cons)
        core = pb.project_out(base, range(mtot, dims))
        for j in range(c):
            if not core.disjuncts:
                return None
            core = pb.intersect(core, pb.embed(fam[pivec[j]], offs[j], mtot))
        core = pb.prune(pb.intersect_orthant(core))
        return core if core.disjuncts else None

    def _coset_tuple_sets(self, sub, fam):
        data = self.data
        c = sub.c
        live = [k for k, u in fam.items() if u.disjuncts]
        for pivec in iproduct(live, repeat=c):
            offs = self._block_offsets(pivec)
            pieces = []
            for t in range(data.d):
                if all(
                    self.constants[pivec[j]].t_pi == data.tau[sub.reps[j].coset][t]
                    for j in range(c)
                ):
                    piece = self._coset_piece(sub, pivec, t, fam)
                    if piece is not None:
                        pieces.append(piece)
            if not pieces:
                continue
            v = pb.prune(pb.union_all(offs[-1], pieces))
            if v.disjuncts:
                yield pivec, _flag_positive(v)

    def coset_series(self, sub, max_weight=12, guard=16, max_den_degree=64):
        fam = self.rep_family(sub.lattice)
        fit = self._fit_length(max_weight, guard)
        prefix = self._fold_prefix(self._coset_tuple_sets(sub, fam), fit)
        return self._finish(prefix, max_weight, guard, max_den_degree)

    # -- conjugacy growth ------------------------------------------------------

    def _orbit_min(self, pivec):
        d = self.data.d
        shifts = [tuple(pivec[self.data.tau[j][l]] for j in range(d)) for l in range(d)]
        return pivec == min(shifts)

    def _conj_inside_sets(self, fam):
        data = self.data
        d = data.d
        live = [
            k
            for k, u in fam.items()
            if u.disjuncts and data.centralizes_Zn(self.constants[k].t_pi)
        ]
        live_by_coset = defaultdict(list)
        for k in live:
            live_by_coset[self.constants[k].t_pi].append(k)
        for anchor in live:
            ca = self.constants[anchor]
            cands = [live_by_coset.get(ca.conj_coset[j], []) for j in range(1, d)]
            for combo in iproduct(*cands):
                pivec = (anchor,) + combo
                if not self._orbit_min(pivec):
                    continue
                offs = self._block_offsets(pivec)
                mtot = offs[-1]
                cons = []
                for j in range(1, d):
                    cj = self.constants[pivec[j]]
                    for i in range(data.n):
                        u = [0] * mtot
                        for q in range(ca.m):
                            u[q] += ca.conj_A[j][i][q]
                        for q in range(cj.m):
                            u[offs[j] + q] -= cj.A[i][q]
                        cons.append(
                            pb.Constraint(pb.EQ, tuple(u), cj.B[i] - ca.conj_B[j][i])
                        )
                core = pb.from_constraints(mtot, cons)
                for j in range(d):
                    if not core.disjuncts:
                        break
                    core = pb.intersect(core, pb.embed(fam[pivec[j]], offs[j], mtot))
                core = pb.prune(pb.intersect_orthant(core))
                if core.disjuncts:
                    yield pivec, core

    def _conj_outside_sets(self, fams_by_coset):
        data = self.data
        d = data.d
        live_by_coset = defaultdict(list)
        for t, (lat, fam) in fams_by_coset.items():
            for k, u in fam.items():
                if u.disjuncts:
                    live_by_coset[t].append(k)
        all_live = [k for ks in live_by_coset.values() for k in ks]
        for anchor in sorted(all_live):
            ca = self.constants[anchor]
            cands = [live_by_coset.get(ca.conj_coset[j], []) for j in range(1, d)]
            for combo in iproduct(*cands):
                pivec = (anchor,) + combo
                if not self._orbit_min(pivec):
                    continue
                offs = self._block_offsets(pivec)
                mtot = offs[-1]
                lats = [fams_by_coset[self.constants[k].t_pi][0] for k in pivec]
                aoffs = [mtot]
                for j in range(1, d):
                    aoffs.append(aoffs[-1] + lats[j].rank)
                dims = aoffs[-1] if d > 1 else mtot
                cons = []
                for j in range(1, d):
                    cj = self.constants[pivec[j]]
                    fj = lats[j].rank
                    for i in range(data.n):
                        u = [0] * dims
                        for q in range(ca.m):
                            u[q] += ca.conj_A[j][i][q]
                        for q in range(cj.m):
                            u[offs[j] + q] -= cj.A[i][q]
                        for kk in range(fj):
                            u[aoffs[j - 1] + kk] = lats[j].basis[kk][i]
                        cons.append(
                            pb.Constraint(pb.EQ, tuple(u), cj.B[i] - ca.conj_B[j][i])
                        )
                base = pb.from_constraints(dims, cons)
                core = pb.project_out(base, range(mtot, dims))
                for j in range(d):
                    if not core.disjuncts:
                        break
                    fam = fams_by_coset[self.constants[pivec[j]].t_pi][1]
                    core = pb.intersect(core, pb.embed(fam[pivec[j]], offs[j], mtot))
                core = pb.prune(pb.intersect_orthant(core))
                if core.disjuncts:
                    yield pivec, core

    def _conj_tuple_sets(self):
        data = self.data
        std_fam = self.rep_family(self.zero_lattice())
        inside_fam = {
            k: u
            for k, u in std_fam.items()
            if data.centralizes_Zn(self.constants[k].t_pi)
        }
        yield from self._conj_inside_sets(inside_fam)
        outside_cosets = sorted(
            {
                c.t_pi
                for c in self.constants
                if not data.centralizes_Zn(c.t_pi)
            }
        )
        fams_by_coset = {}
        for t in outside_cosets:
            lat = commutator_lattice(data, GroupElement((0,) * data.n, t))
            fams_by_coset[t] = (lat, self.rep_family(lat, cosets=(t,)))
        yield from self._conj_outside_sets(fams_by_coset)

    def conjugacy_series(self, max_weight=12, guard=16, max_den_degree=64):
        fit = self._fit_length(max_weight, guard)
        prefix = self._fold_prefix(self._conj_tuple_sets(), fit)
        return self._finish(prefix, max_weight, guard, max_den_degree)

    def conjugacy_prefix_per_tuple(self, max_weight):
        """Deliberately wrong aggregation (one count per tuple slot instead of
        the per-pattern union): kept as a guard against regressing to it."""
        return self._fold_prefix(self._conj_tuple_sets(), max_weight, per_tuple=True)
