"""Exact integer/rational linear algebra: Smith normal form and the
solver turning "these rational combinations must be integral" into a fully
parameterized affine lattice.

Everything is arbitrary-precision; matrices are lists of row lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


# --------------------------------------------------------------------------
# Smith normal form
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """U * A * V = D with U, V unimodular and D diagonal, D11 | D22 | ..."""

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(n))


def _smith_core(A, rhs=None, want_U=True):
    """Diagonalize A by unimodular row/column operations.

    Pivot choice is the minimal nonzero |entry| of the remaining block;
    classical elimination, adequate for the tall thin systems built here.
    Returns (U or None, D, V, transformed rhs or None).  When rhs is given
    the same row operations are applied to it, so rhs_out = U * rhs without
    materializing U.
    """
    D = [list(row) for row in A]
    n = len(D)
    m = len(D[0]) if n else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)] if want_U else None
    V = [[int(i == j) for j in range(m)] for i in range(m)]
    b = list(rhs) if rhs is not None else None

    def swap_rows(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if b is not None:
            b[i], b[j] = b[j], b[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        if c == 0:
            return
        Dd, Ds = D[dst], D[src]
        for k in range(m):
            Dd[k] += c * Ds[k]
        if U is not None:
            Ud, Us = U[dst], U[src]
            for k in range(n):
                Ud[k] += c * Us[k]
        if b is not None:
            b[dst] += c * b[src]

    def add_col(dst, src, c):
        if c == 0:
            return
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]
        if b is not None:
            b[i] = -b[i]

    r = min(n, m)
    for l in range(r):
        while True:
            # minimal nonzero absolute entry in the trailing block
            piv = None
            for i in range(l, n):
                Di = D[i]
                for j in range(l, m):
                    v = Di[j]
                    if v and (piv is None or abs(v) < piv[0]):
                        piv = (abs(v), i, j)
            if piv is None:
                break
            _, pi, pj = piv
            swap_rows(l, pi)
            swap_cols(l, pj)
            if D[l][l] < 0:
                negate_row(l)
            p = D[l][l]
            done = True
            for i in range(l + 1, n):
                q = D[i][l] // p
                if q:
                    add_row(i, l, -q)
                if D[i][l]:
                    done = False
            for j in range(l + 1, m):
                q = D[l][j] // p
                if q:
                    add_col(j, l, -q)
                if D[l][j]:
                    done = False
            if done:
                # enforce divisibility: fold in any entry the pivot misses
                bad = None
                for i in range(l + 1, n):
                    Di = D[i]
                    for j in range(l + 1, m):
                        if Di[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(l, bad, 1)
        if l < min(n, m) and D[l][l] == 0:
            break
    return U, D, V, b


def smith(A) -> SmithDecomposition:
    """Smith normal form of an integer matrix (any shape, including empty)."""
    A = [list(map(int, row)) for row in A]
    U, D, V, _ = _smith_core(A, want_U=True)
    return SmithDecomposition(
        tuple(tuple(r) for r in U),
        tuple(tuple(r) for r in D),
        tuple(tuple(r) for r in V),
    )


def det(A) -> Fraction:
    """Exact determinant by fraction-free Gaussian elimination."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    out = Fraction(sign)
    for i in range(n):
        out *= M[i][i]
    return out


# --------------------------------------------------------------------------
# Affine solution lattices
# --------------------------------------------------------------------------

def _solve_exact(columns, target):
    """Solve sum_j t_j * columns[j] = target exactly; None if inconsistent.

    columns are Fraction vectors forming an independent family.
    """
    m = len(target)
    t = len(columns)
    M = [[columns[j][i] for j in range(t)] + [target[i]] for i in range(m)]
    pivots = []
    row = 0
    for col in range(t):
        piv = next((r for r in range(row, m) if M[r][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(m):
            if r != row and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if M[r][t]:
            return None
    out = [Fraction(0)] * t
    for r, col in enumerate(pivots):
        out[col] = M[r][t]
    return out


def _rank(rows) -> int:
    M = [[Fraction(x) for x in row] for row in rows]
    n = len(M)
    m = len(M[0]) if n else 0
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, n) if M[r][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(rank + 1, n):
            if M[r][col]:
                f = M[r][col] / M[rank][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


class AffineLattice:
    """The set {offset + L·u + K·w : u integer vector, w rational vector}.

    L columns span the discrete directions, K columns the rational kernel
    (directions along which the defining constraints vanish identically).
    """

    def __init__(self, offset, basis_columns, kernel_columns):
        self.offset = tuple(Fraction(x) for x in offset)
        self.m = len(self.offset)
        self.basis = [tuple(Fraction(x) for x in col) for col in basis_columns]
        self.kernel = [tuple(Fraction(x) for x in col) for col in kernel_columns]
        for col in self.basis + self.kernel:
            if len(col) != self.m:
                raise ValueError("column dimension mismatch")
        cols = self.basis + self.kernel
        if cols and _rank([[col[i] for col in cols] for i in range(self.m)]) != len(cols):
            raise ValueError("lattice and kernel columns must be independent")

    @property
    def t(self) -> int:
        return len(self.basis)

    @property
    def s(self) -> int:
        return len(self.kernel)

    def point(self, u, w=()):
        """The lattice element offset + L·u + K·w."""
        if len(u) != self.t or len(w) != self.s:
            raise ValueError("parameter dimension mismatch")
        out = list(self.offset)
        for c, col in zip(u, self.basis):
            for i in range(self.m):
                out[i] += c * col[i]
        for c, col in zip(w, self.kernel):
            for i in range(self.m):
                out[i] += Fraction(c) * col[i]
        return tuple(out)

    def contains(self, a) -> bool:
        """Exact membership: solve a - offset = L·u + K·w with u integral."""
        a = [Fraction(x) for x in a]
        if len(a) != self.m:
            raise ValueError(f"point dimension {len(a)} != ambient {self.m}")
        diff = [ai - oi for ai, oi in zip(a, self.offset)]
        cols = self.basis + self.kernel
        if not cols:
            return all(d == 0 for d in diff)
        sol = _solve_exact(cols, diff)
        if sol is None:
            return False
        return all(sol[j].denominator == 1 for j in range(self.t))

    def covolume_squared(self) -> Fraction:
        """Gram determinant of the discrete part modulo the kernel span.

        Basis columns are first projected orthogonally to the kernel, which
        makes the value independent of how kernel components are folded into
        the basis; two equal solution sets always get the same covolume.
        """
        # Gram-Schmidt the kernel, then project the basis columns onto its
        # orthogonal complement.
        ortho = []
        for kcol in self.kernel:
            v = list(kcol)
            for o in ortho:
                f = sum(a * b for a, b in zip(v, o)) / sum(x * x for x in o)
                for i in range(self.m):
                    v[i] -= f * o[i]
            ortho.append(v)
        cols = [list(c) for c in self.basis]
        for o in ortho:
            norm = sum(x * x for x in o)
            for c in cols:
                f = sum(a * b for a, b in zip(c, o)) / norm
                for i in range(self.m):
                    c[i] -= f * o[i]
        t = self.t
        gram = [
            [sum(cols[i][k] * cols[j][k] for k in range(self.m)) for j in range(t)]
            for i in range(t)
        ]
        return det(gram)

    def __repr__(self):
        return f"AffineLattice(m={self.m}, t={self.t}, s={self.s})"


def lattices_equal(a: AffineLattice, b: AffineLattice) -> bool:
    """Set equality via mutual membership of offsets and generators."""
    if a.m != b.m or a.t != b.t or a.s != b.s:
        return False
    if not b.contains(a.offset) or not a.contains(b.offset):
        return False
    for col in a.basis:
        if not b.contains(tuple(o + c for o, c in zip(a.offset, col))):
            return False
    for col in b.basis:
        if not a.contains(tuple(o + c for o, c in zip(b.offset, col))):
            return False
    # kernel spans must agree
    for col in a.kernel:
        if _rank([[*b_row] for b_row in zip(*(list(b.kernel) + [col]))]) != b.s:
            return False
    return True


def solve_integrality(P, w) -> AffineLattice | None:
    """Exact solution set {a rational : P·a + w integral}, or None when empty.

    Clears denominators to A·a + b ≡ 0 (mod q), diagonalizes A by unimodular
    transforms, solves the decoupled congruences on the transformed
    coordinates, and maps back.  Zero rows of the diagonal form give the
    only unsatisfiable constraints; nonzero diagonal entries always admit
    rational solutions and contribute lattice spacings q/D_jj.
    """
    n = len(P)
    m = len(P[0]) if n else 0
    P = [[Fraction(x) for x in row] for row in P]
    w = [Fraction(x) for x in w]
    if len(w) != n:
        raise ValueError("right-hand side length mismatch")
    if m == 0:
        if all(x.denominator == 1 for x in w):
            return AffineLattice((), [], [])
        return None
    if n == 0:
        kernel = [tuple(Fraction(int(i == j)) for i in range(m)) for j in range(m)]
        return AffineLattice([Fraction(0)] * m, [], kernel)
    q = 1
    for row in P:
        for x in row:
            q = q * x.denominator // math.gcd(q, x.denominator)
    for x in w:
        q = q * x.denominator // math.gcd(q, x.denominator)
    A = [[int(x * q) for x in row] for row in P]
    b = [int(x * q) for x in w]

    _, D, V, b_t = _smith_core(A, rhs=b, want_U=False)
    r = 0
    while r < min(n, m) and D[r][r] != 0:
        r += 1
    # consistency on the zero rows
    for j in range(r, n):
        if b_t[j] % q:
            return None
    y0 = [Fraction(0)] * m
    spacings = []
    for j in range(r):
        d = D[j][j]
        y0[j] = Fraction(-b_t[j], d)
        spacings.append(Fraction(q, d))
    offset = [sum(V[i][j] * y0[j] for j in range(m)) for i in range(m)]
    basis_cols = [
        tuple(V[i][j] * spacings[j] for i in range(m)) for j in range(r)
    ]
    kernel_cols = [
        tuple(Fraction(V[i][j]) for i in range(m)) for j in range(r, m)
    ]
    return AffineLattice(offset, basis_cols, kernel_cols)


def residue_points(lat: AffineLattice, maps, modulus: int):
    """All residue tuples (C_1 mod M, ...) as u sweeps the lattice parameters.

    maps is a list of (value, matrix) integer affine maps C_i(u) = value + matrix·u
    with matrix having lat.t columns; kernel directions never enter.  Returns
    deduplicated (u, tuple-of-tuples) pairs, first-seen order, u in counting order.
    """
    t = lat.t

    def as_int(x):
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"affine map entry {x} is not an integer")
        return f.numerator

    checked = []
    for value, matrix in maps:
        value = [as_int(x) for x in value]
        mat = [[as_int(x) for x in row] for row in matrix]
        for row in mat:
            if len(row) != t:
                raise ValueError("affine map has wrong parameter dimension")
        checked.append((value, mat))
    seen = {}
    total = modulus ** t
    for idx in range(total):
        u = []
        rem = idx
        for _ in range(t):
            u.append(rem % modulus)
            rem //= modulus
        key = []
        for value, mat in checked:
            key.append(
                tuple(
                    (v + sum(row[k] * u[k] for k in range(t))) % modulus
                    for v, row in zip(value, mat)
                )
            )
        key = tuple(key)
        if key not in seen:
            seen[key] = tuple(u)
    return [(u, key) for key, u in seen.items()]
