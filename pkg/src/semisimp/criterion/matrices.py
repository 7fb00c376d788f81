"""Small exact matrix routines: characteristic polynomials over commutative
rings, power traces, and the residual-twist test over finite fields."""

from __future__ import annotations

from math import gcd
from typing import Sequence

from ..algebra.finite_field import FFDesc

Matrix = Sequence[Sequence]


def identity(n: int, one=1, zero=0) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix, mod: int | None = None) -> list[list]:
    n, m = len(A), len(B[0])
    out = [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(m)] for i in range(n)]
    if mod is not None:
        out = [[x % mod for x in row] for row in out]
    return out


def trace(A: Matrix):
    return sum(A[i][i] for i in range(len(A)))


def charpoly(A: Matrix) -> list:
    """det(X I - A), constant term first, by Berkowitz's division-free
    algorithm, so it is valid over any commutative ring."""
    n = len(A)
    if n == 0:
        return [1]
    # vector of coefficients, leading first, for the top-left r x r block
    poly = [1, -A[0][0]]
    for r in range(1, n):
        R = [A[r][j] for j in range(r)]           # row r, first r entries
        C = [A[i][r] for i in range(r)]           # column r, first r entries
        M = [row[:r] for row in A[:r]]
        a = A[r][r]
        # Toeplitz column: 1, -a, -R C, -R M C, -R M^2 C, ...
        col = [1, -a]
        v = C
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(M[i][k] * v[k] for k in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            new.append(sum(col[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(col)))
        poly = new
    return poly[::-1]


def power_traces(A: Matrix, upto: int, mod: int | None = None) -> list:
    out = []
    P = A
    for k in range(1, upto + 1):
        out.append(trace(P) if mod is None else trace(P) % mod)
        if k < upto:
            P = mat_mul(P, A, mod)
    return out


def det(A: Matrix):
    return (-1) ** len(A) * charpoly(A)[0]


# -- matrices over F_q (elements as FFDesc values) -------------------------------------------

def ff_det(A: Matrix, K: FFDesc):
    n = len(A)
    M = [list(row) for row in A]
    d = K.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not K.is_zero(M[r][c])), None)
        if piv is None:
            return K.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = K.neg(d)
        d = K.mul(d, M[c][c])
        inv = K.inv(M[c][c])
        for r in range(c + 1, n):
            if not K.is_zero(M[r][c]):
                f = K.mul(M[r][c], inv)
                M[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(M[r], M[c])]
    return d


def ff_mat_mul(A: Matrix, B: Matrix, K: FFDesc) -> list[list]:
    n, m, l = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = K.zero
            for k in range(l):
                acc = K.add(acc, K.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def residual_twist_unipotent(mats: Sequence[Matrix], n: int, K: FFDesc) -> bool:
    """Twist each matrix by the n-th root of its determinant and test that
    the result is unipotent, i.e. (A' - I)^n = 0."""
    q = K.size
    if gcd(n, q - 1) != 1:
        raise ValueError(f"gcd({n}, {q - 1}) != 1: x -> x^n is not injective on the residue field")
    s = pow(n, -1, q - 1) if q > 2 else 1
    I = identity(n, K.one, K.zero)
    for A in mats:
        if len(A) != n or any(len(row) != n for row in A):
            raise ValueError("matrix has the wrong size")
        dA = ff_det(A, K)
        if K.is_zero(dA):
            raise ValueError("matrix is not invertible")
        chi_inv = K.inv(K.pow(dA, s))
        N = [[K.sub(K.mul(chi_inv, A[i][j]), I[i][j]) for j in range(n)] for i in range(n)]
        P = N
        for _ in range(n - 1):
            P = ff_mat_mul(P, N, K)
        if any(not K.is_zero(x) for row in P for x in row):
            return False
    return True
