"""Small dense exact matrices over the scalar field.

Matrices are lists of rows of :class:`Scalar`.  These helpers serve the
normalization code and rank factorizations, where sizes stay tiny; bulk rank
computations go through the fraction-free kernels instead.
"""

from __future__ import annotations

from hermrank.scalar import ONE, ZERO, Scalar

Matrix = list[list[Scalar]]


def as_matrix(M) -> Matrix:
    return [[Scalar.coerce(x) for x in row] for row in M]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        out.append([_dot(row, col) for col in Bt])
    return out


def matvec(A: Matrix, v) -> list[Scalar]:
    return [_dot(row, v) for row in A]


def _dot(u, v) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def rref(M) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = as_matrix(M)
    m = len(R)
    ncols = len(R[0]) if m else 0
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, m) if R[r][col]), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = R[row][col].inverse()
        R[row] = [x * inv for x in R[row]]
        for r in range(m):
            if r != row and R[r][col]:
                f = R[r][col]
                R[r] = [x - f * y for x, y in zip(R[r], R[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R, pivots


def rank(M) -> int:
    return len(rref(M)[1])


def is_invertible(M) -> bool:
    M = as_matrix(M)
    return len(M) == len(M[0]) and rank(M) == len(M)


def inverse(M) -> Matrix:
    M = as_matrix(M)
    n = len(M)
    aug = [row + ident for row, ident in zip(M, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def nullspace(M) -> Matrix:
    """Basis (as rows) of ``{v : M v = 0}``."""
    M = as_matrix(M)
    ncols = len(M[0])
    R, piv = rref(M)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def hyperplane_basis(ell) -> Matrix:
    """Basis of ``{v : sum ell_j v_j = 0}`` for a nonzero covector."""
    return nullspace([list(ell)])


def bilinear_normal_form(G) -> tuple[Matrix, Matrix, int]:
    """Invertible ``S, T`` with ``S^T G T = diag(I_rho, 0)``; returns ``(S, T, rho)``."""
    G = as_matrix(G)
    p = len(G)
    q = len(G[0]) if p else 0
    aug = [row + ident for row, ident in zip(G, identity(p))]
    R, piv = rref(aug)
    pivots = [c for c in piv if c < q]
    rho = len(pivots)
    L = [row[q:] for row in R]
    G1 = [row[:q] for row in R[:rho]]
    K = []
    for j in range(q):
        if j not in pivots:
            K.append([ONE if k == j else ZERO for k in range(q)])
    T = inverse(G1 + K) if q else []
    S = transpose(L)
    return S, T, rho


def permutation(n: int, perm: list[int]) -> Matrix:
    """Matrix ``P`` with ``P e_j = e_{perm[j]}``."""
    P = zeros(n, n)
    for j, i in enumerate(perm):
        P[i][j] = ONE
    return P


def det(M) -> Scalar:
    """Determinant by elimination over the field."""
    R = as_matrix(M)
    n = len(R)
    acc = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if R[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            R[col], R[piv] = R[piv], R[col]
            acc = -acc
        p = R[col][col]
        acc = acc * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if R[r][col]:
                f = R[r][col] * inv
                R[r] = [x - f * y for x, y in zip(R[r], R[col])]
    return acc


def is_positive_definite(H) -> bool:
    """Hermitian ``H`` is positive definite iff every leading principal minor is positive."""
    H = as_matrix(H)
    return all(det([row[:k] for row in H[:k]]).sign() > 0 for k in range(1, len(H) + 1))
