"""Exact integer linear algebra: Hermite normal form and integer lattices.

Vectors are tuples of ints, matrices tuples of row tuples.  Everything is
arbitrary precision and immutable.  The one canonical form used throughout
is row-style HNF: pivots positive, entries above a pivot reduced into
[0, pivot), zero rows absent.  Lattice coset keys (``lattice_reduce``) and
membership certificates (``lattice_solve``) both read straight off that
form.
"""

from __future__ import annotations

from dataclasses import dataclass

IntVec = tuple
IntMat = tuple


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_neg(u):
    return tuple(-a for a in u)


def vec_scale(k, u):
    return tuple(k * a for a in u)


def vec_dot(u, v):
    return sum(a * b for a, b in zip(u, v, strict=True))


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul_vec(M, v):
    return tuple(vec_dot(row, v) for row in M)


def mat_mul(A, B):
    cols = tuple(zip(*B)) if B else ()
    return tuple(tuple(vec_dot(row, col) for col in cols) for row in A)


def mat_sub(A, B):
    return tuple(vec_sub(ra, rb) for ra, rb in zip(A, B, strict=True))


def mat_transpose(M):
    return tuple(zip(*M)) if M else ()


def mat_det(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hnf(rows, ncols=None):
    """Row Hermite normal form with transform: returns (H, U), H = U * rows.

    U is unimodular (det +-1).  H is in echelon form with positive pivots,
    entries above each pivot reduced into [0, pivot), zero rows at the
    bottom.  ``ncols`` is required when ``rows`` is empty.
    """
    m = len(rows)
    if ncols is None:
        if m == 0:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    H = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_op(i, j, q):
        # row i -= q * row j
        Hi, Hj = H[i], H[j]
        for c in range(ncols):
            Hi[c] -= q * Hj[c]
        Ui, Uj = U[i], U[j]
        for c in range(m):
            Ui[c] -= q * Uj[c]

    r = 0
    for col in range(ncols):
        while True:
            nz = [j for j in range(r, m) if H[j][col] != 0]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(H[j][col]))
            for j in nz:
                if j != j0:
                    row_op(j, j0, H[j][col] // H[j0][col])
        nz = [j for j in range(r, m) if H[j][col] != 0]
        if not nz:
            continue
        j0 = nz[0]
        if j0 != r:
            H[r], H[j0] = H[j0], H[r]
            U[r], U[j0] = U[j0], U[r]
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][col]
        for j in range(r):
            q = H[j][col] // piv
            if q:
                row_op(j, r, q)
        r += 1
    return tuple(tuple(row) for row in H), tuple(tuple(row) for row in U)


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^n, stored by its canonical row-HNF basis."""

    ambient_dim: int
    basis: IntMat

    @property
    def rank(self):
        return len(self.basis)

    @property
    def pivots(self):
        return tuple(next(i for i, x in enumerate(row) if x != 0) for row in self.basis)


def lattice_from_generators(vs, n):
    """Lattice spanned over Z by the given vectors of dimension n."""
    for v in vs:
        if len(v) != n:
            raise ValueError(f"generator {v} has dimension {len(v)}, expected {n}")
    H, _ = hnf(list(vs), ncols=n)
    basis = tuple(row for row in H if any(row))
    return Lattice(n, basis)


def lattice_solve(lat, v):
    """Integer coefficients c with sum(c_i * basis_i) == v, or None."""
    if len(v) != lat.ambient_dim:
        raise ValueError("dimension mismatch")
    cur = list(v)
    coeffs = []
    for row, p in zip(lat.basis, lat.pivots):
        piv = row[p]
        if cur[p] % piv != 0:
            return None
        c = cur[p] // piv
        coeffs.append(c)
        if c:
            for i in range(p, lat.ambient_dim):
                cur[i] -= c * row[i]
    if any(cur):
        return None
    return tuple(coeffs)


def lattice_contains(lat, v):
    return lattice_solve(lat, v) is not None


def solve_integer_system(rows, rhs):
    """All integer solutions of (rows) z = rhs.

    Returns (particular, kernel_rows) with the solution set
    {particular + sum t_j kernel_rows[j]}, or None when infeasible.
    """
    k = len(rows)
    if k == 0:
        raise ValueError("empty system")
    m = len(rows[0])
    # column-echelon form: L = E V with V unimodular, via row HNF of E^T
    H, U = hnf(mat_transpose(rows), ncols=k)
    L = mat_transpose(H)  # k x m, column j has its first nonzero at a strictly
    # increasing row index; columns beyond the rank are zero
    ncols_nz = sum(1 for row in H if any(row))
    residual = list(rhs)
    y = [0] * m
    seen_rows = 0
    for j in range(ncols_nz):
        col = [L[i][j] for i in range(k)]
        p = next(i for i, x in enumerate(col) if x != 0)
        for i in range(seen_rows, p):
            if residual[i] != 0:
                return None
        if residual[p] % col[p] != 0:
            return None
        yj = residual[p] // col[p]
        y[j] = yj
        if yj:
            for i in range(k):
                residual[i] -= col[i] * yj
        seen_rows = p
    if any(residual):
        return None
    particular = tuple(sum(y[j] * U[j][i] for j in range(m)) for i in range(m))
    kernel = tuple(tuple(U[j]) for j in range(ncols_nz, m))
    return particular, kernel


def lattice_reduce(lat, v):
    """Canonical representative of the coset v + L.

    Two vectors reduce to the same tuple iff their difference lies in the
    lattice; pivot coordinates of the result lie in [0, pivot).
    """
    if len(v) != lat.ambient_dim:
        raise ValueError("dimension mismatch")
    cur = list(v)
    for row, p in zip(lat.basis, lat.pivots):
        q = cur[p] // row[p]
        if q:
            for i in range(p, lat.ambient_dim):
                cur[i] -= q * row[i]
    return tuple(cur)
