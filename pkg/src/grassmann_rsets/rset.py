"""R-sets: recognition, maximal R-sets, exactness and degree of inexactness.

A family of subspaces is an R-set when a single coordinate system (frame of
``n`` independent lines) makes every member a coordinate plane.  Recognition
uses a piece-decomposition certificate on the meet-closure of the family:

* close the family under pairwise intersection and add the whole space;
* for each closure element ``X`` (by increasing dimension) take a complement
  ``piece(X)`` of the sum of the closure elements strictly below ``X``;
* the family is an R-set iff the piece dimensions add up to ``n``.

When it is, any basis assembled from bases of the pieces is associated with
the family, and every associated frame puts exactly ``dim piece(X)`` of its
lines into ``X`` outside the sum below ``X``.  The same layering therefore
enumerates *all* frames compatible with the family, as an independent
product of per-element choices, which drives the exactness and degree
computations.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .field import FieldSpec, make_field
from .report import Report, timed
from .subspace import (
    BudgetExceeded,
    Subspace,
    canonicalize,
    complement_within,
    contains,
    coordinate_plane,
    enumerate_grassmannian,
    join_all,
    meet,
    unit_vector,
    whole_space,
)
from . import linalg

FRAME_BUDGET_BITS = 16
MAX_FRAMES = 2_000_000
DEFAULT_DEG_CAP = 6


class SearchCapExceeded(RuntimeError):
    """The degree search ran past its cap on added elements."""


class NotAnRSet(ValueError):
    pass


# --- coordinate systems -----------------------------------------------------


class CoordinateSystem:
    """An unordered frame of ``n`` linearly independent lines.

    Equality is equality of the line sets, so rescaling or reordering the
    spanning vectors gives the same system.
    """

    __slots__ = ("lines", "n", "field", "_sorted")

    def __init__(self, lines: Iterable[Subspace]):
        lines = frozenset(lines)
        if not lines:
            raise ValueError("a coordinate system needs at least one line")
        first = next(iter(lines))
        self.n, self.field = first.n, first.field
        if any(L.dim != 1 or L.n != self.n for L in lines):
            raise ValueError("coordinate systems are made of lines of one ambient space")
        if len(lines) != self.n or linalg.rank(self.field, [L.rows[0] for L in lines], self.n) != self.n:
            raise ValueError("lines of a coordinate system must be n independent lines")
        self.lines = lines
        self._sorted = tuple(sorted(lines, key=lambda L: L.rows))

    @classmethod
    def standard(cls, field: FieldSpec, n: int) -> CoordinateSystem:
        return cls(canonicalize([unit_vector(n, i)], field, n) for i in range(n))

    @property
    def sorted_lines(self) -> tuple[Subspace, ...]:
        return self._sorted

    def span_of(self, indices) -> Subspace:
        return join_all([self._sorted[i] for i in indices], self.field, self.n)

    def planes(self, k: int) -> tuple[Subspace, ...]:
        """The ``C(n, k)`` coordinate ``k``-planes, in index-combination order."""
        return tuple(self.span_of(c) for c in itertools.combinations(range(self.n), k))

    def line_indices_in(self, S: Subspace) -> tuple[int, ...]:
        return tuple(i for i, L in enumerate(self._sorted) if S.contains_vector(L.rows[0]))

    def is_coordinate(self, S: Subspace) -> bool:
        return len(self.line_indices_in(S)) == S.dim

    def __eq__(self, other):
        return isinstance(other, CoordinateSystem) and self.lines == other.lines

    def __hash__(self):
        return hash(self.lines)

    def __repr__(self):
        vecs = " ".join("".join(map(str, L.rows[0])) for L in self._sorted)
        return f"CoordinateSystem({vecs})"


# --- shared per-ambient caches ---------------------------------------------


class _Ambient:
    def __init__(self, n: int, field: FieldSpec):
        self.n = n
        self.field = field
        self.V = whole_space(field, n)
        self.lines = enumerate_grassmannian(n, 1, field, FRAME_BUDGET_BITS)
        self.vec = [L.rows[0] for L in self.lines]
        self.line_id = {v: i for i, v in enumerate(self.vec)}
        self._span = {}
        self._lines_in = {}

    def span(self, ids: tuple[int, ...]) -> Subspace:
        S = self._span.get(ids)
        if S is None:
            S = canonicalize([self.vec[i] for i in ids], self.field, self.n)
            self._span[ids] = S
        return S

    def lines_in(self, X: Subspace) -> tuple[int, ...]:
        ids = self._lines_in.get(X)
        if ids is None:
            ids = tuple(sorted(self.line_id[v] for v in X.points()))
            self._lines_in[X] = ids
        return ids


@lru_cache(maxsize=32)
def _ambient(n: int, field: FieldSpec) -> _Ambient:
    if n * math.log2(field.q) > FRAME_BUDGET_BITS + 1e-9:
        raise BudgetExceeded(f"q^n = {field.q}^{n} exceeds the frame budget 2^{FRAME_BUDGET_BITS}")
    return _Ambient(n, field)


def _resolve(members, n=None, field=None):
    members = frozenset(members)
    if members:
        S = next(iter(members))
        if (n is not None and n != S.n) or (field is not None and field is not S.field):
            raise ValueError("members disagree with the given ambient space")
        n, field = S.n, S.field
        if any(T.n != n or T.field is not field for T in members):
            raise ValueError("members live in different ambient spaces")
    elif n is None or field is None:
        raise ValueError("an empty family needs explicit n and field")
    return members, n, field


# --- recognition ------------------------------------------------------------


def meet_closure(members, n: int | None = None, field: FieldSpec | None = None) -> frozenset[Subspace]:
    """Smallest family containing ``members`` and ``V``, closed under meets.

    The zero subspace is left out.
    """
    members, n, field = _resolve(members, n, field)
    closed = {S for S in members if S.dim} | {whole_space(field, n)}
    frontier = list(closed)
    while frontier:
        new = []
        for A in frontier:
            for B in list(closed):
                C = meet(A, B)
                if C.dim and C not in closed:
                    closed.add(C)
                    new.append(C)
        frontier = new
    return frozenset(closed)


def _layers(closure):
    """(X, sum of closure elements strictly inside X) by increasing dimension."""
    order = sorted(closure)
    out = []
    for i, X in enumerate(order):
        below = [Y for Y in order[:i] if Y.dim < X.dim and contains(X, Y)]
        W = join_all(below, X.field, X.n)
        out.append((X, W))
    return out


def find_associated_basis(members, n: int | None = None, field: FieldSpec | None = None) -> Optional[CoordinateSystem]:
    """A coordinate system making every member a coordinate plane, or None."""
    members, n, field = _resolve(members, n, field)
    layers = _layers(meet_closure(members, n, field))
    pieces = [complement_within(W, X) for X, W in layers]
    if sum(P.dim for P in pieces) != n:
        return None
    system = CoordinateSystem(canonicalize([r], field, n) for P in pieces for r in P.rows)
    for S in members:
        if not system.is_coordinate(S):
            raise AssertionError(f"certificate produced a system not adapted to {S!r}")
    return system


def is_rset(members, n: int | None = None, field: FieldSpec | None = None) -> bool:
    return find_associated_basis(members, n, field) is not None


# --- compatible frames --------------------------------------------------------


def _choose_independent(amb: _Ambient, W: Subspace, cands, c: int):
    F, n = amb.field, amb.n
    vec = amb.vec
    out = []

    def rec(start, rows, piv, chosen):
        if len(chosen) == c:
            out.append(tuple(chosen))
            return
        for pos in range(start, len(cands)):
            l = cands[pos]
            if any(linalg.reduce_vector(F, rows, piv, vec[l])):
                new_rows = linalg.rref(F, rows + (vec[l],), n)
                chosen.append(l)
                rec(pos + 1, new_rows, linalg.pivots(new_rows), chosen)
                chosen.pop()

    rec(0, W.rows, W.pivots, [])
    return out


@lru_cache(maxsize=4096)
def _frames_containing(members: frozenset, n: int, field: FieldSpec) -> tuple[tuple[int, ...], ...]:
    amb = _ambient(n, field)
    layers = _layers(meet_closure(members, n, field))
    if sum(X.dim - W.dim for X, W in layers) != n:
        return ()
    per_layer = []
    total = 1
    for X, W in layers:
        c = X.dim - W.dim
        if c == 0:
            continue
        cands = [l for l in amb.lines_in(X) if not W.contains_vector(amb.vec[l])]
        choices = _choose_independent(amb, W, cands, c)
        total *= len(choices)
        if total > MAX_FRAMES:
            raise BudgetExceeded(f"more than {MAX_FRAMES} compatible frames")
        per_layer.append(choices)
    frames = {tuple(sorted(itertools.chain.from_iterable(combo))) for combo in itertools.product(*per_layer)}
    return tuple(sorted(frames))


def frame_line_ids(members, n: int | None = None, field: FieldSpec | None = None) -> tuple[tuple[int, ...], ...]:
    """Compatible frames as sorted tuples of line indices into ``G_1(F_q^n)``."""
    members, n, field = _resolve(members, n, field)
    return _frames_containing(members, n, field)


def maximal_rsets_containing(members, n: int | None = None, field: FieldSpec | None = None) -> list[CoordinateSystem]:
    """Every coordinate system for which all members are coordinate planes.

    Each such system determines one maximal R-set per dimension (its
    coordinate planes), so this lists the maximal R-sets above ``members``.
    """
    members, n, field = _resolve(members, n, field)
    amb = _ambient(n, field)
    return [CoordinateSystem(amb.lines[i] for i in fr) for fr in _frames_containing(members, n, field)]


def _frame_plane_ids(amb: _Ambient, frame: tuple[int, ...], k: int) -> frozenset[int]:
    G = enumerate_grassmannian(amb.n, k, amb.field)
    return frozenset(G.index[amb.span(c)] for c in itertools.combinations(frame, k))


def _plane_masks(members: frozenset, n: int, field: FieldSpec, k: int) -> list[frozenset[int]]:
    amb = _ambient(n, field)
    frames = _frames_containing(members, n, field)
    return sorted({_frame_plane_ids(amb, fr, k) for fr in frames}, key=sorted)


def _common_dim(members) -> int:
    dims = {S.dim for S in members}
    if len(dims) != 1:
        raise ValueError(f"expected members of one dimension, got dimensions {sorted(dims)}")
    return dims.pop()


def is_exact(members, n: int | None = None, field: FieldSpec | None = None, k: int | None = None) -> bool:
    """True iff exactly one maximal R-set contains the family."""
    members, n, field = _resolve(members, n, field)
    k = _common_dim(members) if members else k
    if k is None:
        raise ValueError("an empty family needs k")
    masks = _plane_masks(members, n, field, k)
    if not masks:
        raise NotAnRSet("family is not an R-set")
    return len(masks) == 1


@dataclass(frozen=True)
class DegreeResult:
    degree: int
    minimal_supersets: tuple[frozenset[Subspace], ...]


def degree_search(members, n=None, field=None, k=None, cap: int = DEFAULT_DEG_CAP) -> DegreeResult:
    """Degree of inexactness together with every minimal exact superset.

    Breadth-first over the number of added planes, drawing additions only
    from maximal R-sets that already contain ``members``.
    """
    members, n, field = _resolve(members, n, field)
    k = _common_dim(members) if members else k
    if k is None:
        raise ValueError("an empty family needs k")
    G = enumerate_grassmannian(n, k, field)
    masks = _plane_masks(members, n, field, k)
    if not masks:
        raise NotAnRSet("family is not an R-set")
    base = frozenset(G.index[S] for S in members)
    if len(masks) == 1:
        return DegreeResult(0, (members,))
    for a in range(1, cap + 1):
        cands = set()
        for m in masks:
            extra = sorted(m - base)
            for combo in itertools.combinations(extra, a):
                cands.add(base.union(combo))
        exact = [c for c in cands if sum(1 for m in masks if c <= m) == 1]
        if exact:
            exact.sort(key=sorted)
            return DegreeResult(a, tuple(frozenset(G[i] for i in c) for c in exact))
    raise SearchCapExceeded(f"no exact superset within {cap} added planes")


def degree_of_inexactness(members, n=None, field=None, k=None, cap: int = DEFAULT_DEG_CAP) -> int:
    return degree_search(members, n, field, k, cap).degree


# --- profiles -----------------------------------------------------------------


@dataclass(frozen=True)
class RSetProfile:
    """Per-line data of a family relative to the frame above an exact superset.

    ``S[i]`` is the intersection of the members containing the ``i``-th line
    (None when no member contains it) and ``n_i[i]`` its dimension (0 when
    absent); ``n_count`` counts the lines with ``n_i == 1``.
    """

    system: CoordinateSystem
    S: tuple[Optional[Subspace], ...]
    n_i: tuple[int, ...]
    n_count: int


def profile_against(members, system: CoordinateSystem) -> RSetProfile:
    S_list, dims = [], []
    for L in system.sorted_lines:
        v = L.rows[0]
        Ri = [U for U in members if U.contains_vector(v)]
        if not Ri:
            S_list.append(None)
            dims.append(0)
            continue
        Si = Ri[0]
        for U in Ri[1:]:
            Si = meet(Si, U)
        S_list.append(Si)
        dims.append(Si.dim)
    return RSetProfile(system, tuple(S_list), tuple(dims), sum(1 for d in dims if d == 1))


def rset_profile(members, superset, cap: int = DEFAULT_DEG_CAP) -> RSetProfile:
    """Profile of ``members`` relative to the unique frame above ``superset``.

    ``superset`` must be an exact R-set containing ``members`` with exactly
    ``deg(members)`` extra elements.
    """
    members, superset = frozenset(members), frozenset(superset)
    if not members <= superset:
        raise ValueError("superset does not contain the family")
    frames = maximal_rsets_containing(superset)
    if not frames:
        raise NotAnRSet("superset is not an R-set")
    k = _common_dim(superset)
    planes = {frozenset(F.planes(k)) for F in frames}
    if len(planes) != 1:
        raise ValueError("superset is not exact")
    if len(superset) - len(members) != degree_of_inexactness(members, cap=cap):
        raise ValueError("superset is not of minimal size")
    return profile_against(members, frames[0])


# --- incidence sets and the standard examples ----------------------------------


def incidence_set(system: CoordinateSystem, k: int, S: Subspace) -> frozenset[Subspace]:
    """The coordinate ``k``-planes containing ``S`` (or contained in it).

    For ``dim S == k`` the only incident plane is ``S`` itself.
    """
    if not system.is_coordinate(S):
        raise ValueError("S is not a coordinate plane of the system")
    m = S.dim
    if m == k:
        return frozenset([S])
    if m < k:
        return frozenset(U for U in system.planes(k) if contains(U, S))
    return frozenset(U for U in system.planes(k) if contains(S, U))


def planes_through_line(system: CoordinateSystem, k: int, j: int) -> frozenset[Subspace]:
    """All coordinate ``k``-planes through the ``j``-th line (needs ``2k >= n``)."""
    if not 2 * k >= system.n:
        raise ValueError("this family needs k >= n - k")
    return incidence_set(system, k, system.sorted_lines[j])


def planes_in_hyperplane(system: CoordinateSystem, k: int, S: Subspace) -> frozenset[Subspace]:
    """All coordinate ``k``-planes inside the coordinate hyperplane ``S`` (``2k <= n``)."""
    if not 2 * k <= system.n:
        raise ValueError("this family needs k <= n - k")
    if S.dim != system.n - 1:
        raise ValueError("S must be a hyperplane")
    return incidence_set(system, k, S)


def hyperplane_and_plane_family(system: CoordinateSystem, k: int, S: Subspace, S2: Subspace) -> frozenset[Subspace]:
    """``R(S) | R(S2)`` for a coordinate hyperplane ``S`` and 2-plane ``S2`` not in it."""
    n = system.n
    if not 1 < k < n - 1:
        raise ValueError("this family needs 1 < k < n - 1")
    if S.dim != n - 1 or S2.dim != 2:
        raise ValueError("need a hyperplane S and a 2-dimensional S2")
    if contains(S, S2):
        raise ValueError("S2 must not lie in S")
    return incidence_set(system, k, S) | incidence_set(system, k, S2)


def s_n_k(n: int, k: int) -> int:
    """Size above which every R-subset of ``G_k`` is exact."""
    if not 1 < k < n - 1:
        raise ValueError(f"need 1 < k < n - 1, got n={n}, k={k}")
    return math.comb(n - 1, k) + math.comb(n - 2, k - 2)


# --- theorem sweeps -------------------------------------------------------------


def _standard_setup(n, k, field):
    system = CoordinateSystem.standard(field, n)
    combos = list(itertools.combinations(range(n), k))
    planes = [system.span_of(c) for c in combos]
    return system, combos, planes


def _families(n, k, field):
    """Extremal shapes inside the standard frame, as sets of plane positions."""
    system, combos, planes = _standard_setup(n, k, field)
    pos = {P: i for i, P in enumerate(planes)}

    def ids(fam):
        return frozenset(pos[P] for P in fam)

    hyper = [system.span_of([j for j in range(n) if j != i]) for i in range(n)]
    ex21 = {ids(incidence_set(system, k, L)) for L in system.sorted_lines} if 1 <= k < n else set()
    ex22 = {ids(incidence_set(system, k, H)) for H in hyper} if k < n - 1 else set()
    ex23 = set()
    if 1 < k < n - 1:
        for i in range(n):
            for j in range(n):
                if j != i:
                    S2 = system.span_of(sorted((i, j)))
                    ex23.add(ids(hyperplane_and_plane_family(system, k, hyper[i], S2)))
    return {"star": ex21, "hyperplane": ex22, "hyperplane_and_plane": ex23}


def _subset_masks(size: int, min_size: int) -> list[int]:
    return [m for m in range(1 << size) if bin(m).count("1") >= min_size]


def _sweep_chunk(args):
    n, k, p, e, masks, cap, want_profiles = args
    field = make_field(p, e)
    system, combos, planes = _standard_setup(n, k, field)
    out = []
    for mask in masks:
        members = frozenset(planes[i] for i in range(len(planes)) if mask >> i & 1)
        rec = {"mask": mask}
        try:
            res = degree_search(members, n, field, k, cap)
        except SearchCapExceeded:
            rec["degree"] = None
            out.append(rec)
            continue
        rec["degree"] = res.degree
        if want_profiles:
            counts = []
            for sup in res.minimal_supersets:
                frames = maximal_rsets_containing(sup, n, field)
                counts.append(profile_against(members, frames[0]).n_count)
            rec["n_counts"] = sorted(set(counts))
            rec["n_supersets"] = len(res.minimal_supersets)
        out.append(rec)
    return out


def _run_sweep(n, k, field, masks, cap, want_profiles, workers):
    args = [(n, k, field.p, field.e, masks, cap, want_profiles)]
    if workers and workers > 1 and len(masks) > 1:
        chunks = [masks[i::workers] for i in range(workers)]
        args = [(n, k, field.p, field.e, c, cap, want_profiles) for c in chunks if c]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = [r for part in ex.map(_sweep_chunk, args) for r in part]
    else:
        results = _sweep_chunk(args[0])
    return sorted(results, key=lambda r: r["mask"])


def _mask_members(mask, size):
    return [i for i in range(size) if mask >> i & 1]


def verify_degree_bound(n: int, k: int, field: FieldSpec, cap: int = DEFAULT_DEG_CAP, workers: int = 1) -> Report:
    """Sweep every subset of the standard maximal R-set above the size threshold.

    Checks ``deg <= 2``, that ``deg == 2`` happens exactly on the example
    shapes of the relevant case, that ``n(R')`` is the same for every minimal
    exact superset and that ``deg == 0`` iff ``n(R') == n``.
    """
    if not 1 < k < n - 1:
        raise ValueError(f"need 1 < k < n - 1, got n={n}, k={k}")
    if n - k < k:
        case, threshold, shapes = "i", math.comb(n - 1, k - 1), ("star",)
    elif k < n - k:
        case, threshold, shapes = "ii", math.comb(n - 1, k), ("hyperplane",)
    else:
        case, threshold, shapes = "iii", math.comb(n - 1, k), ("star", "hyperplane")
    fams = _families(n, k, field)
    equality = set().union(*(fams[s] for s in shapes))
    size = math.comb(n, k)
    report = Report(
        "degree_bound",
        {"n": n, "k": k, "p": field.p, "e": field.e, "case": case, "threshold": threshold, "cap": cap},
    )
    with timed(report):
        masks = _subset_masks(size, threshold)
        ncount_ok = 0
        for rec in _run_sweep(n, k, field, masks, cap, True, workers):
            d = rec["degree"]
            subset = _mask_members(rec["mask"], size)
            report.bump(d)
            if d is None:
                report.counterexamples.append({"subset": subset, "reason": "degree search cap exceeded"})
                continue
            ids = frozenset(subset)
            if d > 2:
                report.counterexamples.append({"subset": subset, "degree": d, "reason": "degree above 2"})
            if (d == 2) != (ids in equality):
                report.counterexamples.append(
                    {"subset": subset, "degree": d, "reason": "degree-2 case does not match the example shapes"}
                )
            counts = rec["n_counts"]
            if len(counts) != 1:
                report.counterexamples.append(
                    {"subset": subset, "degree": d, "n_counts": counts, "reason": "n(R') depends on the superset"}
                )
            elif (d == 0) != (counts[0] == n):
                report.counterexamples.append(
                    {"subset": subset, "degree": d, "n_count": counts[0], "reason": "exactness disagrees with n(R') == n"}
                )
            else:
                ncount_ok += 1
        report.extra["subsets_checked"] = len(masks)
        report.extra["ncount_consistent"] = ncount_ok
        report.extra["equality_shapes"] = len(equality)
    return report


def verify_exactness_threshold(n: int, k: int, field: FieldSpec, cap: int = DEFAULT_DEG_CAP, workers: int = 1) -> Report:
    """Subsets with at least ``s_n_k`` elements: exact above it, ``deg <= 1`` at it.

    ``deg == 1`` must occur exactly on the hyperplane-plus-plane shapes.
    """
    s = s_n_k(n, k)
    ex23 = _families(n, k, field)["hyperplane_and_plane"]
    size = math.comb(n, k)
    report = Report("exactness_threshold", {"n": n, "k": k, "p": field.p, "e": field.e, "s_n_k": s, "cap": cap})
    with timed(report):
        masks = _subset_masks(size, s)
        for rec in _run_sweep(n, k, field, masks, cap, False, workers):
            d = rec["degree"]
            subset = _mask_members(rec["mask"], size)
            report.bump(d)
            if d is None:
                report.counterexamples.append({"subset": subset, "reason": "degree search cap exceeded"})
                continue
            if len(subset) > s and d != 0:
                report.counterexamples.append({"subset": subset, "degree": d, "reason": "larger than s_n_k but not exact"})
            if d > 1:
                report.counterexamples.append({"subset": subset, "degree": d, "reason": "degree above 1"})
            if (d == 1) != (frozenset(subset) in ex23):
                report.counterexamples.append(
                    {"subset": subset, "degree": d, "reason": "degree-1 case does not match the hyperplane-plus-plane shapes"}
                )
        report.extra["subsets_checked"] = len(masks)
        report.extra["equality_shapes"] = len(ex23)
    return report
