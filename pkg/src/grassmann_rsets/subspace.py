"""Subspaces of F_q^n in canonical form, lattice operations and Grassmannians."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from . import linalg
from .field import FieldSpec

DEFAULT_ENUM_BITS = 20


class BudgetExceeded(RuntimeError):
    """An enumeration or search would exceed its configured budget."""


class Subspace:
    """A subspace of ``F_q^n`` stored by its reduced row echelon basis.

    Two subspaces are equal exactly when their RREF matrices coincide, so
    instances hash and compare like values.  Build them with
    :func:`canonicalize`.
    """

    __slots__ = ("field", "n", "rows", "pivots", "_hash")

    def __init__(self, field: FieldSpec, n: int, rows: tuple):
        self.field = field
        self.n = n
        self.rows = rows
        self.pivots = linalg.pivots(rows)
        self._hash = hash((n, field.q, rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def key(self) -> tuple:
        return self.rows

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows and self.field is other.field

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.dim, self.rows) < (other.dim, other.rows)

    def __repr__(self):
        body = ", ".join("".join(str(x) for x in r) for r in self.rows)
        return f"Subspace(n={self.n}, dim={self.dim}, [{body}])"

    def __reduce__(self):
        return (Subspace, (self.field, self.n, self.rows))

    def contains_vector(self, v) -> bool:
        return not any(linalg.reduce_vector(self.field, self.rows, self.pivots, v))

    def vectors(self):
        """Every vector of the subspace (``q ** dim`` of them)."""
        F = self.field
        for coeffs in itertools.product(range(F.q), repeat=self.dim):
            yield _combine(F, coeffs, self.rows, self.n)

    def points(self) -> list[tuple[int, ...]]:
        """Normalised spanning vectors (leading entry 1) of all lines inside."""
        F = self.field
        out = []
        d = self.dim
        for lead in range(d):
            for tail in itertools.product(range(F.q), repeat=d - lead - 1):
                coeffs = (0,) * lead + (1,) + tail
                out.append(_combine(F, coeffs, self.rows, self.n))
        out.sort()
        return out

    def lines(self) -> list[Subspace]:
        return [Subspace(self.field, self.n, (v,)) for v in self.points()]

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _combine(F, coeffs, rows, n):
    add, mul = F.add, F.mul
    v = [0] * n
    for c, r in zip(coeffs, rows):
        if c:
            for j, x in enumerate(r):
                if x:
                    v[j] = add[v[j]][mul[c][x]]
    return tuple(v)


def canonicalize(rows, field: FieldSpec, n: int | None = None) -> Subspace:
    """The span of ``rows`` as a canonical :class:`Subspace`."""
    rows = [tuple(int(x) for x in r) for r in rows]
    if n is None:
        if not rows:
            raise ValueError("ambient dimension needed for an empty row list")
        n = len(rows[0])
    for r in rows:
        if len(r) != n:
            raise ValueError(f"ragged rows: expected length {n}, got {len(r)}")
        if any(not 0 <= x < field.q for x in r):
            raise ValueError(f"entries outside GF({field.q})")
    return Subspace(field, n, linalg.rref(field, rows, n))


def span(field: FieldSpec, n: int, *vectors) -> Subspace:
    return canonicalize(vectors, field, n)


def zero_subspace(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, ())


def whole_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, linalg.identity(n))


def unit_vector(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def coordinate_plane(field: FieldSpec, n: int, indices) -> Subspace:
    """Span of the standard basis vectors ``e_i`` for ``i`` in ``indices``."""
    return canonicalize([unit_vector(n, i) for i in indices], field, n)


def _check_ambient(S: Subspace, T: Subspace):
    if S.n != T.n or S.field is not T.field:
        raise ValueError("subspaces live in different ambient spaces")


def join(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    if not T.rows:
        return S
    if not S.rows:
        return T
    return Subspace(S.field, S.n, linalg.rref(S.field, S.rows + T.rows, S.n))


def join_all(spaces, field: FieldSpec, n: int) -> Subspace:
    rows = []
    for S in spaces:
        rows.extend(S.rows)
    return Subspace(field, n, linalg.rref(field, rows, n))


@lru_cache(maxsize=1 << 16)
def annihilator(S: Subspace) -> Subspace:
    """``{v : s . v = 0 for all s in S}`` under the standard dot product."""
    if not S.rows:
        return whole_space(S.field, S.n)
    return Subspace(S.field, S.n, linalg.nullspace(S.field, S.rows, S.n))


def meet(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    return _meet(S, T) if S.key <= T.key else _meet(T, S)


@lru_cache(maxsize=1 << 17)
def _meet(S: Subspace, T: Subspace) -> Subspace:
    if contains(S, T):
        return T
    if contains(T, S):
        return S
    return annihilator(join(annihilator(S), annihilator(T)))


def contains(S: Subspace, T: Subspace) -> bool:
    """True when ``T`` is a subspace of ``S``."""
    _check_ambient(S, T)
    if T.dim > S.dim:
        return False
    return all(S.contains_vector(r) for r in T.rows)


def distance(S: Subspace, T: Subspace) -> int:
    if S.dim != T.dim:
        raise ValueError(f"distance needs equal dimensions, got {S.dim} and {T.dim}")
    return S.dim - meet(S, T).dim


def is_adjacent(S: Subspace, T: Subspace) -> bool:
    return distance(S, T) == 1


def complement_within(A: Subspace, X: Subspace) -> Subspace:
    """A complement ``C`` of ``A`` inside ``X`` (``A + C = X``, ``A & C = 0``).

    Greedy and deterministic: walk the RREF rows of ``X`` in order and keep
    each one that is independent of ``A`` plus the rows already kept.
    """
    if not contains(X, A):
        raise ValueError("complement_within requires A to be contained in X")
    F = A.field
    acc_rows, acc_piv = A.rows, A.pivots
    kept = []
    for r in X.rows:
        if len(acc_rows) == X.dim:
            break
        if any(linalg.reduce_vector(F, acc_rows, acc_piv, r)):
            kept.append(r)
            acc_rows = linalg.rref(F, acc_rows + (r,), A.n)
            acc_piv = linalg.pivots(acc_rows)
    return canonicalize(kept, F, A.n)


# --- Grassmannians ----------------------------------------------------------


class GrassmannianIndex:
    """All ``k``-subspaces of ``F_q^n`` in a fixed order, with reverse lookup."""

    def __init__(self, n: int, k: int, field: FieldSpec, subspaces: tuple[Subspace, ...]):
        self.n = n
        self.k = k
        self.field = field
        self.subspaces = subspaces
        self.index = {S: i for i, S in enumerate(subspaces)}

    def __len__(self):
        return len(self.subspaces)

    def __getitem__(self, i):
        return self.subspaces[i]

    def __iter__(self):
        return iter(self.subspaces)

    def __contains__(self, S):
        return S in self.index

    def position(self, S: Subspace) -> int:
        return self.index[S]

    def __repr__(self):
        return f"GrassmannianIndex(n={self.n}, k={self.k}, q={self.field.q}, size={len(self)})"


def _check_budget(n: int, q: int, bits: int):
    if n * math.log2(q) > bits + 1e-9:
        raise BudgetExceeded(f"q^n = {q}^{n} exceeds the enumeration budget 2^{bits}")


@lru_cache(maxsize=64)
def enumerate_grassmannian(n: int, k: int, field: FieldSpec, budget_bits: int = DEFAULT_ENUM_BITS) -> GrassmannianIndex:
    """Every ``k``-dimensional subspace of ``F_q^n`` exactly once.

    Subspaces are generated pivot pattern by pivot pattern, filling the free
    entries of the echelon form, and then sorted by their RREF rows.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    _check_budget(n, field.q, budget_bits)
    out = []
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free = [(i, c) for i, p in enumerate(piv) for c in range(p + 1, n) if c not in pivset]
        for vals in itertools.product(range(field.q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(piv):
                rows[i][p] = 1
            for (i, c), v in zip(free, vals):
                rows[i][c] = v
            out.append(Subspace(field, n, tuple(tuple(r) for r in rows)))
    out.sort(key=lambda S: S.rows)
    return GrassmannianIndex(n, k, field, tuple(out))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of ``k``-subspaces of ``F_q^n``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def binomial(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return math.comb(n, k)


def incidence_count_monotone(n: int, k: int, k1: int, k2: int) -> bool:
    """``C(n-k1, k-k1) >= C(n-k2, k-k2)`` whenever ``0 <= k1 <= k2 <= k <= n``."""
    if not 0 <= k1 <= k2 <= k <= n:
        raise ValueError(f"need 0 <= k1 <= k2 <= k <= n, got {(n, k, k1, k2)}")
    return math.comb(n - k1, k - k1) >= math.comb(n - k2, k - k2)
