"""Dense exact linear algebra over a :class:`FieldSpec`.

Vectors are tuples of field integers and matrices are tuples of row tuples.
Matrices act on column vectors: ``mat_vec(F, A, v)[i] = sum_j A[i][j] v[j]``.
"""

from __future__ import annotations

import itertools

import numpy as np

from .field import FieldSpec

Vector = tuple
Matrix = tuple


def rref(F: FieldSpec, rows, n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form with zero rows dropped."""
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != n:
            raise ValueError(f"row of length {len(r)} in a space of dimension {n}")
    out = []
    col = 0
    while m and col < n:
        piv = next((i for i, r in enumerate(m) if r[col]), None)
        if piv is None:
            col += 1
            continue
        r = m.pop(piv)
        c = inv[r[col]]
        if c != 1:
            r = [mul[c][x] for x in r]
        for other in itertools.chain(m, out):
            a = other[col]
            if a:
                na = neg[a]
                for j in range(col, n):
                    if r[j]:
                        other[j] = add[other[j]][mul[na][r[j]]]
        out.append(r)
        m = [x for x in m if any(x)]
        col += 1
    return tuple(tuple(r) for r in out)


def pivots(basis) -> tuple[int, ...]:
    return tuple(next(j for j, x in enumerate(r) if x) for r in basis)


def reduce_vector(F: FieldSpec, basis, piv, v) -> list:
    """Remainder of ``v`` after elimination against an RREF ``basis``."""
    add, mul, neg = F.add, F.mul, F.neg
    v = list(v)
    for r, c in zip(basis, piv):
        a = v[c]
        if a:
            na = neg[a]
            for j in range(c, len(v)):
                if r[j]:
                    v[j] = add[v[j]][mul[na][r[j]]]
    return v


def nullspace(F: FieldSpec, A, n: int) -> tuple[tuple[int, ...], ...]:
    """Basis (in RREF) of ``{v : A v = 0}`` for an ``m x n`` matrix ``A``."""
    R = rref(F, A, n)
    piv = pivots(R)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, c in zip(R, piv):
            v[c] = F.neg[r[f]]
        basis.append(v)
    return rref(F, basis, n)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def scalar_matrix(F: FieldSpec, a: int, n: int) -> Matrix:
    return tuple(tuple(a if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(F: FieldSpec, A, B) -> Matrix:
    add, mul = F.add, F.mul
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = add[acc][mul[a][b]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(F: FieldSpec, A, v) -> Vector:
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add[acc][mul[a][b]]
        out.append(acc)
    return tuple(out)


def mat_add(F: FieldSpec, A, B) -> Matrix:
    return tuple(tuple(F.add[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(F: FieldSpec, A, B) -> Matrix:
    return tuple(tuple(F.sub[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(F: FieldSpec, c: int, A) -> Matrix:
    return tuple(tuple(F.mul[c][a] for a in r) for r in A)


def mat_neg(F: FieldSpec, A) -> Matrix:
    return tuple(tuple(F.neg[a] for a in r) for r in A)


def transpose(A) -> Matrix:
    return tuple(zip(*A))


def mat_frob(F: FieldSpec, A, j: int) -> Matrix:
    t = F.frob[j % F.e]
    return tuple(tuple(t[a] for a in r) for r in A)


def vec_frob(F: FieldSpec, v, j: int) -> Vector:
    t = F.frob[j % F.e]
    return tuple(t[a] for a in v)


def rank(F: FieldSpec, A, n: int | None = None) -> int:
    A = tuple(A)
    if not A:
        return 0
    return len(rref(F, A, len(A[0]) if n is None else n))


def determinant(F: FieldSpec, A) -> int:
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    m = [list(r) for r in A]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = neg[det]
        p = m[col][col]
        det = mul[det][p]
        ip = inv[p]
        for i in range(col + 1, n):
            a = m[i][col]
            if a:
                f = neg[mul[a][ip]]
                for j in range(col, n):
                    if m[col][j]:
                        m[i][j] = add[m[i][j]][mul[f][m[col][j]]]
    return det


def inverse(F: FieldSpec, A) -> Matrix:
    n = len(A)
    aug = [tuple(r) + tuple(1 if i == j else 0 for j in range(n)) for i, r in enumerate(A)]
    R = rref(F, aug, 2 * n)
    if len(R) < n or pivots(R)[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


def is_invertible(F: FieldSpec, A) -> bool:
    return determinant(F, A) != 0


def general_linear_group(F: FieldSpec, n: int, budget: int = 1 << 20) -> list[Matrix]:
    """All invertible ``n x n`` matrices, in lexicographic entry order."""
    if F.q ** (n * n) > budget:
        raise ValueError(f"GL({n},{F.q}) enumeration exceeds budget of {budget} matrices")
    out = []
    for entries in itertools.product(range(F.q), repeat=n * n):
        M = tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))
        if determinant(F, M):
            out.append(M)
    return out


def gl_order(q: int, n: int) -> int:
    r = 1
    for i in range(n):
        r *= q**n - q**i
    return r


def sl_order(q: int, n: int) -> int:
    return gl_order(q, n) // (q - 1)


# --- vectorised helpers -----------------------------------------------------


class BatchOps:
    """Numpy lookup tables for batched matrix products over ``F``."""

    def __init__(self, F: FieldSpec):
        self.F = F
        self.add = np.asarray(F.add, dtype=np.int16)
        self.mul = np.asarray(F.mul, dtype=np.int16)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """``A @ B`` over the field, broadcasting over leading axes."""
        m = A.shape[-1]
        acc = None
        for t in range(m):
            term = self.mul[A[..., :, t, None], B[..., None, t, :]]
            acc = term if acc is None else self.add[acc, term]
        return acc
