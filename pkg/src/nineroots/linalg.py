"""Exact integer and rational matrix routines.

Everything here works on plain lists of lists (ints or Fractions).  The Smith
normal form returns the full (D, U, V) transform triple with U*M*V = D.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    assert not A or len(A[0]) == k
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in A]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def mat_eq(A, B):
    return A == B


def smith_normal_form(M):
    """Return (D, U, V) with U*M*V = D, D diagonal, d_i | d_{i+1}, det U,V = +-1."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    U = identity(n)
    V = identity(m)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):  # row_i += c * row_j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, c):  # col_i += c * col_j
        for r in A:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    def reduce_to_diagonal():
        t = 0
        while t < min(n, m):
            piv = None
            for i in range(t, n):
                for j in range(t, m):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            while True:
                dirty = False
                for i in range(t + 1, n):
                    if A[i][t]:
                        q = A[i][t] // A[t][t]
                        add_row(i, t, -q)
                        if A[i][t]:
                            swap_rows(t, i)
                            dirty = True
                for j in range(t + 1, m):
                    if A[t][j]:
                        q = A[t][j] // A[t][t]
                        add_col(j, t, -q)
                        if A[t][j]:
                            swap_cols(t, j)
                            dirty = True
                if not dirty:
                    break
            if A[t][t] < 0:
                negate_row(t)
            t += 1
        return t

    while True:
        r = reduce_to_diagonal()
        viol = next(
            (i for i in range(r - 1) if A[i][i] and A[i + 1][i + 1] % A[i][i]),
            None,
        )
        if viol is None:
            break
        add_col(viol, viol + 1, 1)
    return A, U, V


def snf_diagonal(M) -> list[int]:
    D, _, _ = smith_normal_form(M)
    out = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
    return out


def det_int(M) -> int:
    """Integer determinant via fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, r)) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def mat_inverse_rational(M):
    """Exact inverse over Q (input ints or Fractions)."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def mat_inverse_unimodular(M):
    """Inverse of a +-1-determinant integer matrix, returned over Z."""
    inv = mat_inverse_rational(M)
    out = []
    for row in inv:
        r = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            r.append(int(x))
        out.append(r)
    return out


def solve_rational(A, b):
    """Solve A x = b exactly over Q; raises on inconsistency/singularity."""
    n, m = len(A), len(A[0])
    M = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(A)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if M[i][m] != 0:
            raise ValueError("inconsistent system")
    x = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        x[c] = M[i][m]
    return x


def kernel_integer(M) -> list[list[int]]:
    """Z-basis of the right kernel {x : M x = 0} of an integer matrix."""
    D, _, V = smith_normal_form(M)
    n = len(M)
    m = len(M[0]) if n else 0
    r = sum(1 for i in range(min(n, m)) if D[i][i] != 0)
    cols = []
    for j in range(r, m):
        cols.append([V[i][j] for i in range(m)])
    return cols


def symmetric_diagonal_signs(G) -> tuple[int, int, int]:
    """(positives, negatives, zeros) of a symmetric rational Gram matrix.

    Lagrange congruence diagonalization; handles zero diagonals by mixing in a
    row with a nonzero off-diagonal entry first.
    """
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    pos = neg = zero = 0
    idx = list(range(n))
    k = 0
    while k < n:
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
            if j is None:
                zero += 1
                k += 1
                continue
            for t in range(n):
                A[j][t] += A[k][t]
            for t in range(n):
                A[t][j] += A[t][k]
            A[k], A[j] = A[j], A[k]
            for row in A:
                row[k], row[j] = row[j], row[k]
        d = A[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / d
                for t in range(n):
                    A[i][t] -= f * A[k][t]
        for i in range(k + 1, n):
            if A[k][i] != 0:
                f = A[k][i] / d
                for t in range(n):
                    A[t][i] -= f * A[t][k]
        k += 1
    _ = idx
    return pos, neg, zero
