"""Exact integer and rational linear algebra.

Everything here works over Python ints / Fractions; no floating point.
The Smith form drives integer solvability tests (lattice membership) and
witness recovery for linear equivalence of divisors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_vec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def smith_normal_form(A):
    """Return (U, S, V) with U*A*V = S, U and V unimodular, S diagonal.

    The diagonal entries are nonnegative and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(row) for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # locate a pivot of minimal absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = S[i][j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        dirty = False
        for i in range(t + 1, m):
            if S[i][t] != 0:
                q = S[i][t] // S[t][t]
                add_row(t, i, -q)
                if S[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if S[t][j] != 0:
                q = S[t][j] // S[t][t]
                add_col(t, j, -q)
                if S[t][j] != 0:
                    dirty = True
        if dirty:
            continue  # remainders left behind become smaller pivots

        # enforce divisibility of the rest of the block by the pivot
        p = S[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1

    for i in range(min(m, n)):
        if S[i][i] < 0:
            S[i] = [-a for a in S[i]]
            U[i] = [-a for a in U[i]]
    return U, S, V


class SmithSolver:
    """Caches the Smith form of an integer matrix to answer Ax = b queries."""

    def __init__(self, A):
        self.m = len(A)
        self.n = len(A[0]) if self.m else 0
        self.U, S, self.V = smith_normal_form(A)
        self.diag = [S[i][i] for i in range(min(self.m, self.n))]
        self.rank = sum(1 for d in self.diag if d != 0)

    def solve(self, b):
        """Return integer x with A x = b, or None when no integer solution exists."""
        if len(b) != self.m:
            raise ValueError("right-hand side has wrong length")
        c = mat_vec(self.U, b)
        y = [0] * self.n
        for i in range(self.m):
            d = self.diag[i] if i < len(self.diag) else 0
            if d == 0:
                if c[i] != 0:
                    return None
            else:
                if c[i] % d != 0:
                    return None
                y[i] = c[i] // d
        return mat_vec(self.V, y)

    def in_image(self, b):
        return self.solve(b) is not None


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def frac_rank(rows):
    """Rank of a matrix over the rationals (Gaussian elimination, exact)."""
    A = frac_matrix(rows)
    m = len(A)
    n = len(A[0]) if m else 0
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if A[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][col]
        A[rank] = [a * inv for a in A[rank]]
        for i in range(m):
            if i != rank and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
        col += 1
    return rank


def frac_nullspace(rows, n):
    """Basis of {x : A x = 0} over the rationals; rows may be empty."""
    A = frac_matrix(rows) if rows else []
    m = len(A)
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][col]
        A[rank] = [a * inv for a in A[rank]]
        for i in range(m):
            if i != rank and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][fc]
        basis.append(v)
    return basis


def primitive_integer_vector(v):
    """Scale a rational vector to a primitive integer vector (gcd 1)."""
    lcm = 1
    for x in v:
        f = Fraction(x)
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(Fraction(x) * lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def frac_solve(A, b):
    """Solve A x = b over the rationals; None if inconsistent.

    A square or rectangular; returns one solution with free variables at 0.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(A, b)]
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [a * inv for a in M[rank]]
        for i in range(m):
            if i != rank and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b2 for a, b2 in zip(M[i], M[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = M[r][n]
    return x
