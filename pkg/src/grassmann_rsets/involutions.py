"""(k, n-k)-involutions over odd characteristic and complementary pairs.

An involution ``s`` (``s @ s == I``) splits ``V`` as ``U+ (+) U-`` with
``s = +1`` on ``U+`` and ``-1`` on ``U-``.  The correspondence
``s <-> (U+, U-)`` identifies involutions of signature ``(k, n-k)`` with
pairs of complementary subspaces, and turns questions about commuting
involutions into questions about common coordinate systems.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import networkx as nx
import numpy as np

from . import linalg
from .field import FieldSpec
from .maps import SemilinearMap, SesquilinearForm
from .report import Report, timed
from .rset import _ambient, find_associated_basis, frame_line_ids
from .subspace import BudgetExceeded, Subspace, canonicalize, contains, enumerate_grassmannian, is_adjacent, join


class CharacteristicTwo(ValueError):
    pass


def _require_odd(F: FieldSpec):
    if F.p == 2:
        raise CharacteristicTwo("involution machinery needs odd characteristic")


@dataclass(frozen=True)
class ComplementaryPair:
    U: Subspace
    S: Subspace

    def __post_init__(self):
        if self.U.n != self.S.n or self.U.dim + self.S.dim != self.U.n or join(self.U, self.S).dim != self.U.n:
            raise ValueError("U and S must be complementary subspaces")

    @property
    def k(self) -> int:
        return self.U.dim

    def swapped(self) -> ComplementaryPair:
        return ComplementaryPair(self.S, self.U)

    def to_json(self) -> dict:
        return {"U": self.U.to_json(), "S": self.S.to_json()}


class Involution:
    """A matrix squaring to the identity, with its eigenspaces cached."""

    __slots__ = ("field", "matrix", "uplus", "uminus", "n")

    def __init__(self, field: FieldSpec, matrix, uplus: Subspace | None = None, uminus: Subspace | None = None):
        _require_odd(field)
        self.field = field
        self.matrix = tuple(tuple(int(x) for x in r) for r in matrix)
        self.n = n = len(self.matrix)
        I = linalg.identity(n)
        if linalg.mat_mul(field, self.matrix, self.matrix) != I:
            raise ValueError("matrix is not an involution")
        if uplus is None or uminus is None:
            uplus = Subspace(field, n, linalg.nullspace(field, linalg.mat_sub(field, self.matrix, I), n))
            uminus = Subspace(field, n, linalg.nullspace(field, linalg.mat_add(field, self.matrix, I), n))
        self.uplus = uplus
        self.uminus = uminus

    @property
    def signature(self) -> tuple[int, int]:
        return (self.uplus.dim, self.uminus.dim)

    def pair(self) -> ComplementaryPair:
        return ComplementaryPair(self.uplus, self.uminus)

    def __eq__(self, other):
        return isinstance(other, Involution) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Involution({self.matrix})"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "matrix": [list(r) for r in self.matrix]}


def involution_from_pair(pair: ComplementaryPair) -> Involution:
    """The involution acting as ``+1`` on ``pair.U`` and ``-1`` on ``pair.S``."""
    F = pair.U.field
    _require_odd(F)
    n = pair.U.n
    P = linalg.transpose(pair.U.rows + pair.S.rows)
    D = tuple(tuple((1 if i < pair.k else F.neg[1]) if i == j else 0 for j in range(n)) for i in range(n))
    M = linalg.mat_mul(F, linalg.mat_mul(F, P, D), linalg.inverse(F, P))
    return Involution(F, M, pair.U, pair.S)


def eigensplit(s: Involution) -> ComplementaryPair:
    return s.pair()


def commutes(a, b) -> bool:
    F = a.field
    A = a.matrix if isinstance(a, Involution) else a
    B = b.matrix if isinstance(b, Involution) else b
    return linalg.mat_mul(F, A, B) == linalg.mat_mul(F, B, A)


def preserves_eigenspaces(f, s: Involution) -> bool:
    """Does the matrix ``f`` map ``U+(s)`` into itself and ``U-(s)`` into itself?"""
    F = s.field
    for W in (s.uplus, s.uminus):
        for r in W.rows:
            if not W.contains_vector(linalg.mat_vec(F, f, r)):
                return False
    return True


@lru_cache(maxsize=16)
def complementary_pairs(n: int, k: int, field: FieldSpec) -> tuple[ComplementaryPair, ...]:
    """All pairs ``(U, S)`` with ``dim U = k``, ``U + S = V``, in index order."""
    Gk = enumerate_grassmannian(n, k, field)
    Gs = enumerate_grassmannian(n, n - k, field)
    out = []
    for U in Gk:
        for S in Gs:
            if join(U, S).dim == n:
                out.append(ComplementaryPair(U, S))
    return tuple(out)


@lru_cache(maxsize=16)
def all_involutions(n: int, k: int, field: FieldSpec) -> tuple[Involution, ...]:
    _require_odd(field)
    return tuple(involution_from_pair(p) for p in complementary_pairs(n, k, field))


def involutions_adjacent(a: Involution, b: Involution) -> bool:
    """Adjacency of the eigen-pairs: one component shared, the other adjacent."""
    if a.signature != b.signature:
        raise ValueError("involutions of different signatures")
    if a.uplus == b.uplus:
        return a.uminus != b.uminus and is_adjacent(a.uminus, b.uminus)
    if a.uminus == b.uminus:
        return is_adjacent(a.uplus, b.uplus)
    return False


def is_transvection(field: FieldSpec, g) -> bool:
    """``det g == 1`` and ``Id - g`` has an ``(n-1)``-dimensional kernel."""
    n = len(g)
    if linalg.determinant(field, g) != 1:
        return False
    kernel = linalg.nullspace(field, linalg.mat_sub(field, linalg.identity(n), g), n)
    return len(kernel) == n - 1


# --- transformations of the involution set -----------------------------------------


def transform_collineation(g, s: Involution) -> Involution:
    """``s -> g s g^-1``; ``g`` is a matrix or a :class:`SemilinearMap`."""
    F = s.field
    if not isinstance(g, SemilinearMap):
        g = SemilinearMap(F, g)
    # As a linear map, g s g^-1 = M frob^j(s) M^-1.
    M = linalg.mat_mul(F, linalg.mat_mul(F, g.matrix, linalg.mat_frob(F, s.matrix, g.aut_power)), linalg.inverse(F, g.matrix))
    return Involution(F, M, g.image(s.uplus), g.image(s.uminus))


def transform_correlation(form: SesquilinearForm, s: Involution) -> Involution:
    """The involution with eigen-pair ``(U-^perp, U+^perp)`` under ``form``."""
    if not form.nondegenerate:
        raise ValueError("correlations need a non-degenerate form")
    return involution_from_pair(ComplementaryPair(form.right_perp(s.uminus), form.right_perp(s.uplus)))


def negate(s: Involution) -> Involution:
    F = s.field
    return Involution(F, linalg.mat_neg(F, s.matrix), s.uminus, s.uplus)


def i_G(G: frozenset, pair: ComplementaryPair) -> ComplementaryPair:
    """Swap the components of pairs in ``G``; identity elsewhere."""
    if pair.U.dim != pair.S.dim:
        raise ValueError("swapping needs n == 2k")
    return pair.swapped() if pair in G else pair


def check_swap_closed(G: Iterable[ComplementaryPair]) -> frozenset:
    G = frozenset(G)
    if any(p.U.dim != p.S.dim for p in G):
        raise ValueError("swap sets live in G_{k,k}, so n must be 2k")
    if any(p.swapped() not in G for p in G):
        raise ValueError("G is not closed under swapping")
    return G


# --- R-sets of pairs ---------------------------------------------------------------


def pairs_is_rset(pairs: Iterable[ComplementaryPair], hint=None) -> bool:
    """Is there one coordinate system making every component a coordinate plane?

    ``hint`` is an optional candidate system tried first; the general
    recogniser runs whenever the candidate does not fit.
    """
    pairs = list(pairs)
    if not pairs:
        return True
    family = [p.U for p in pairs] + [p.S for p in pairs]
    if hint is not None and all(hint.is_coordinate(X) for X in family):
        return True
    return find_associated_basis(family) is not None


@dataclass(frozen=True)
class PairRSet:
    """A set of complementary pairs, checked on demand for a common frame."""

    pairs: frozenset

    def __init__(self, pairs: Iterable[ComplementaryPair]):
        object.__setattr__(self, "pairs", frozenset(pairs))

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def is_rset(self) -> bool:
        return pairs_is_rset(self.pairs)

    def is_maximal(self) -> bool:
        if not self.pairs:
            return False
        p = next(iter(self.pairs))
        return len(self.pairs) == math.comb(p.U.n, p.k) and self.is_rset()


def maximal_pair_rsets(n: int, k: int, field: FieldSpec):
    """Yield each frame's ``C(n, k)`` coordinate pairs, as frozensets."""
    amb = _ambient(n, field)
    for fr in frame_line_ids([], n, field):
        pairs = []
        for c in itertools.combinations(fr, k):
            rest = tuple(l for l in fr if l not in c)
            pairs.append(ComplementaryPair(amb.span(c), amb.span(rest)))
        yield fr, frozenset(pairs)


def x_fiber_first(U: Subspace, pairs) -> frozenset:
    """Pairs whose first component is ``U``."""
    return frozenset(p for p in pairs if p.U == U)


def x_fiber_second(S: Subspace, pairs) -> frozenset:
    """Pairs whose second component is ``S``."""
    return frozenset(p for p in pairs if p.S == S)


# --- verifiers ---------------------------------------------------------------------


def verify_commuting_preserves_eigenspaces(n: int, k: int, field: FieldSpec, budget: int = 1 << 20) -> Report:
    """Every involution of signature (k, n-k) against every invertible matrix.

    Commuting is tested as ``s f == f s``; the other side tests that ``f``
    maps a basis of each eigenspace back into it, via
    ``(s - I) f B+ == 0`` and ``(s + I) f B- == 0``.
    """
    _require_odd(field)
    report = Report("commuting_preserves_eigenspaces", {"n": n, "k": k, "p": field.p, "e": field.e})
    with timed(report):
        ops = linalg.BatchOps(field)
        GL = np.asarray(linalg.general_linear_group(field, n, budget), dtype=np.int16)
        I = linalg.identity(n)
        agree = commuting = 0
        for s in all_involutions(n, k, field):
            S = np.asarray(s.matrix, dtype=np.int16)
            comm = np.all(ops.matmul(S[None], GL) == ops.matmul(GL, S[None]), axis=(1, 2))
            pres = np.ones(len(GL), dtype=bool)
            for W, shift in ((s.uplus, linalg.mat_sub(field, s.matrix, I)), (s.uminus, linalg.mat_add(field, s.matrix, I))):
                B = np.asarray(linalg.transpose(W.rows), dtype=np.int16)
                T = np.asarray(shift, dtype=np.int16)
                pres &= np.all(ops.matmul(T[None], ops.matmul(GL, B[None])) == 0, axis=(1, 2))
            bad = np.nonzero(comm != pres)[0]
            for idx in bad[:5]:
                report.counterexamples.append(
                    {"involution": [list(r) for r in s.matrix], "matrix": GL[idx].tolist(), "commutes": bool(comm[idx])}
                )
            agree += int(len(GL) - len(bad))
            commuting += int(comm.sum())
        report.extra.update(invertible_matrices=len(GL), involutions=len(all_involutions(n, k, field)), agreements=agree, commuting_pairs=commuting)
    return report


def verify_commuting_iff_rset(n: int, k: int, field: FieldSpec, mode: str = "exhaustive", samples: int = 10_000, seed: int = 0, max_size: int = 5) -> Report:
    """Pairwise-commuting involutions <=> their eigen-pairs form an R-set.

    Exhaustive mode compares the two down-closed families through their
    maximal members: every maximal clique of the commuting graph must be a
    pair R-set, and every frame's pair set must be a commuting clique.  That
    covers subsets of every size.  Sampled mode draws subsets of at most
    ``max_size`` pairs, half of them inside a random frame's pair set with
    some pairs replaced at random, so that both outcomes occur.
    """
    _require_odd(field)
    report = Report("commuting_iff_rset", {"n": n, "k": k, "p": field.p, "e": field.e, "mode": mode, "seed": seed})
    with timed(report):
        invs = all_involutions(n, k, field)
        pairs = [s.pair() for s in invs]
        pos = {p: i for i, p in enumerate(pairs)}
        if mode == "exhaustive":
            graph = nx.Graph()
            graph.add_nodes_from(range(len(invs)))
            for i in range(len(invs)):
                for j in range(i + 1, len(invs)):
                    if commutes(invs[i], invs[j]):
                        graph.add_edge(i, j)
            cliques = sorted(sorted(c) for c in nx.find_cliques(graph))
            for c in cliques:
                if not pairs_is_rset([pairs[i] for i in c]):
                    report.counterexamples.append({"pairs": c, "reason": "commuting clique is not an R-set"})
            frames = 0
            for _, fam in maximal_pair_rsets(n, k, field):
                frames += 1
                ids = sorted(pos[p] for p in fam)
                if not all(graph.has_edge(a, b) for a, b in itertools.combinations(ids, 2)):
                    report.counterexamples.append({"pairs": ids, "reason": "maximal R-set does not commute"})
            maximal_cliques = {frozenset(c) for c in cliques}
            frame_sets = {frozenset(pos[p] for p in fam) for _, fam in maximal_pair_rsets(n, k, field)}
            if maximal_cliques != frame_sets:
                report.counterexamples.append({"reason": "maximal cliques differ from maximal R-sets"})
            report.extra.update(pairs=len(pairs), maximal_cliques=len(cliques), maximal_rsets=frames, commuting_edges=graph.number_of_edges())
        elif mode == "sampled":
            rng = random.Random(seed)
            frame_list = list(frame_line_ids([], n, field))
            amb = _ambient(n, field)
            both = [0, 0]
            for t in range(samples):
                size = rng.randint(1, max_size)
                if t % 2 == 0:
                    chosen = [pairs[rng.randrange(len(pairs))] for _ in range(size)]
                else:
                    fr = frame_list[rng.randrange(len(frame_list))]
                    combos = list(itertools.combinations(fr, k))
                    rng.shuffle(combos)
                    chosen = []
                    for c in combos[:size]:
                        rest = tuple(l for l in fr if l not in c)
                        chosen.append(ComplementaryPair(amb.span(c), amb.span(rest)))
                    if rng.random() < 0.5:
                        chosen[rng.randrange(len(chosen))] = pairs[rng.randrange(len(pairs))]
                chosen = list(dict.fromkeys(chosen))
                sel = [invs[pos[p]] for p in chosen]
                comm = all(commutes(a, b) for a, b in itertools.combinations(sel, 2))
                rs = pairs_is_rset(chosen)
                both[rs] += 1
                if comm != rs:
                    report.counterexamples.append({"pairs": sorted(pos[p] for p in chosen), "commute": comm, "rset": rs})
            report.extra.update(samples=samples, rsets=both[1], non_rsets=both[0])
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return report


def verify_adjacency_transvection(n: int, k: int, field: FieldSpec, mode: str = "exhaustive", samples: int = 10_000, seed: int = 0) -> Report:
    """Adjacent involutions <=> their product is a transvection.

    Sampled mode alternates uniformly random pairs with pairs that share one
    eigenspace and have a random other one, which are adjacent far more often.
    """
    _require_odd(field)
    report = Report("adjacency_transvection", {"n": n, "k": k, "p": field.p, "e": field.e, "mode": mode, "seed": seed})
    with timed(report):
        invs = all_involutions(n, k, field)
        pos = {s.pair(): i for i, s in enumerate(invs)}
        if mode == "exhaustive":
            todo = ((i, j) for i in range(len(invs)) for j in range(len(invs)))
            total = len(invs) ** 2
        elif mode == "sampled":
            rng = random.Random(seed)
            by_u, by_s = {}, {}
            for i, s in enumerate(invs):
                by_u.setdefault(s.uplus, []).append(i)
                by_s.setdefault(s.uminus, []).append(i)
            todo = []
            for t in range(samples):
                i = rng.randrange(len(invs))
                if t % 2 == 0:
                    j = rng.randrange(len(invs))
                else:
                    group = by_u[invs[i].uplus] if rng.random() < 0.5 else by_s[invs[i].uminus]
                    j = group[rng.randrange(len(group))]
                todo.append((i, j))
            total = samples
        else:
            raise ValueError(f"unknown mode {mode!r}")
        adjacent = 0
        for i, j in todo:
            a, b = invs[i], invs[j]
            adj = involutions_adjacent(a, b)
            tv = is_transvection(field, linalg.mat_mul(field, a.matrix, b.matrix))
            adjacent += adj
            if adj != tv:
                report.counterexamples.append({"pair": [i, j], "adjacent": adj, "transvection": tv})
        report.extra.update(checked=total, adjacent=adjacent)
    return report


def generated_group_order(k: int, n: int, field: FieldSpec, budget: int = 1_000_000) -> int:
    """Order of the matrix group generated by all ``(k, n-k)``-involutions.

    Closure is incremental: a generator joins the working set only when it is
    not already a product of earlier ones, so the final group contains every
    involution and is generated by them.
    """
    _require_odd(field)
    F = field
    gens: list = []
    group = {linalg.identity(n)}
    for s in all_involutions(n, k, field):
        if s.matrix in group:
            continue
        gens.append(s.matrix)
        group = _matrix_closure(F, gens, n, budget)
    return len(group)


def _matrix_closure(F, gens, n, budget):
    e = linalg.identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = linalg.mat_mul(F, x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise BudgetExceeded(f"group exceeds closure budget {budget}")
                queue.append(y)
    return seen


# --- partial swaps --------------------------------------------------------------


def swap_map_regular(G: frozenset, n: int, field: FieldSpec) -> tuple[bool, int]:
    """Is ``i_G`` regular?  Checks image and preimage of every maximal pair R-set.

    ``i_G`` is its own inverse, so one pass covers both directions.
    Returns the verdict and the number of maximal R-sets examined.
    """
    k = n // 2
    amb = _ambient(n, field)
    from .rset import CoordinateSystem

    count = 0
    for fr, fam in maximal_pair_rsets(n, k, field):
        count += 1
        image = [i_G(G, p) for p in fam]
        hint = CoordinateSystem(amb.lines[i] for i in fr)
        if not pairs_is_rset(image, hint=hint):
            return False, count
    return True, count


def find_adjacency_violation(G: frozenset, n: int, field: FieldSpec) -> Optional[tuple[ComplementaryPair, ComplementaryPair]]:
    """Adjacent pairs whose ``i_G`` images are not adjacent, if any."""
    k = n // 2
    pairs = complementary_pairs(n, k, field)
    for p in sorted(G, key=lambda p: (p.U.rows, p.S.rows)):
        for r in pairs:
            if pairs_adjacent(p, r):
                a, b = i_G(G, p), i_G(G, r)
                if not pairs_adjacent(a, b):
                    return p, r
    return None


def pairs_adjacent(a: ComplementaryPair, b: ComplementaryPair) -> bool:
    if a.U == b.U:
        return a.S != b.S and is_adjacent(a.S, b.S)
    if a.S == b.S:
        return is_adjacent(a.U, b.U)
    return False
