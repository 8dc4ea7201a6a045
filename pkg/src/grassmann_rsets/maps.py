"""Semilinear maps, sesquilinear forms and the Grassmannian maps they induce."""

from __future__ import annotations

import itertools
import random
from collections import deque
from functools import lru_cache
from typing import Optional

from . import linalg
from .field import FieldSpec
from .report import Report, timed
from .rset import _ambient, _frame_plane_ids, find_associated_basis, frame_line_ids
from .subspace import (
    BudgetExceeded,
    GrassmannianIndex,
    Subspace,
    canonicalize,
    enumerate_grassmannian,
    meet,
    unit_vector,
)


class SemilinearMap:
    """``v -> matrix @ frob^aut_power(v)``: a collineation of ``F_q^n``."""

    def __init__(self, field: FieldSpec, matrix, aut_power: int = 0):
        matrix = tuple(tuple(int(x) for x in r) for r in matrix)
        if not linalg.is_invertible(field, matrix):
            raise ValueError("a collineation needs an invertible matrix")
        if not 0 <= aut_power < field.e:
            raise ValueError(f"automorphism power {aut_power} outside 0..{field.e - 1}")
        self.field = field
        self.matrix = matrix
        self.aut_power = aut_power
        self.n = len(matrix)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> SemilinearMap:
        return cls(field, linalg.identity(n))

    def __call__(self, v):
        return linalg.mat_vec(self.field, self.matrix, linalg.vec_frob(self.field, v, self.aut_power))

    def image(self, S: Subspace) -> Subspace:
        return canonicalize([self(r) for r in S.rows], self.field, S.n)

    def compose(self, other: SemilinearMap) -> SemilinearMap:
        """``self`` after ``other``."""
        F = self.field
        M = linalg.mat_mul(F, self.matrix, linalg.mat_frob(F, other.matrix, self.aut_power))
        return SemilinearMap(F, M, (self.aut_power + other.aut_power) % F.e)

    def inverse(self) -> SemilinearMap:
        F = self.field
        j = (-self.aut_power) % F.e
        return SemilinearMap(F, linalg.mat_frob(F, linalg.inverse(F, self.matrix), j), j)

    def __eq__(self, other):
        return isinstance(other, SemilinearMap) and (self.matrix, self.aut_power) == (other.matrix, other.aut_power)

    def __hash__(self):
        return hash((self.matrix, self.aut_power))

    def __repr__(self):
        return f"SemilinearMap({self.matrix}, aut_power={self.aut_power})"


def apply_semilinear(f: SemilinearMap, v) -> tuple[int, ...]:
    return f(v)


class SesquilinearForm:
    """``Omega(u, v) = u^T G frob^aut_power(v)``."""

    def __init__(self, field: FieldSpec, gram, aut_power: int = 0):
        self.field = field
        self.gram = tuple(tuple(int(x) for x in r) for r in gram)
        self.aut_power = aut_power % field.e
        self.n = len(self.gram)

    @classmethod
    def standard(cls, field: FieldSpec, n: int) -> SesquilinearForm:
        return cls(field, linalg.identity(n))

    @property
    def nondegenerate(self) -> bool:
        return linalg.is_invertible(self.field, self.gram)

    def __call__(self, u, v) -> int:
        F = self.field
        w = linalg.mat_vec(F, self.gram, linalg.vec_frob(F, v, self.aut_power))
        acc = 0
        for a, b in zip(u, w):
            acc = F.add[acc][F.mul[a][b]]
        return acc

    def right_perp(self, U: Subspace) -> Subspace:
        """``{v : Omega(u, v) = 0 for every u in U}``."""
        F, n = self.field, self.n
        if not U.rows:
            return canonicalize(linalg.identity(n), F, n)
        conditions = linalg.mat_mul(F, U.rows, self.gram)
        kernel = linalg.nullspace(F, conditions, n)
        back = (-self.aut_power) % F.e
        return canonicalize([linalg.vec_frob(F, w, back) for w in kernel], F, n)

    def transpose_conjugate(self) -> SesquilinearForm:
        """The form ``(x, y) -> frob^-j(Omega(y, x))``; its right perp is Omega's left perp."""
        F = self.field
        back = (-self.aut_power) % F.e
        return SesquilinearForm(F, linalg.transpose(linalg.mat_frob(F, self.gram, back)), back)

    def __repr__(self):
        return f"SesquilinearForm({self.gram}, aut_power={self.aut_power})"


class GrassmannianMap:
    """A map between Grassmannians stored as a full index table."""

    def __init__(self, source: GrassmannianIndex, target: GrassmannianIndex, table, origin=None):
        self.source = source
        self.target = target
        self.table = tuple(table)
        self.origin = origin
        if len(self.table) != len(source):
            raise ValueError("table length does not match the source Grassmannian")

    def __call__(self, S: Subspace) -> Subspace:
        return self.target[self.table[self.source.index[S]]]

    @property
    def is_bijective(self) -> bool:
        return len(self.source) == len(self.target) and len(set(self.table)) == len(self.table)

    def inverse(self) -> GrassmannianMap:
        if not self.is_bijective:
            raise ValueError("map is not bijective")
        inv = [0] * len(self.table)
        for i, j in enumerate(self.table):
            inv[j] = i
        return GrassmannianMap(self.target, self.source, inv)

    def compose(self, other: GrassmannianMap) -> GrassmannianMap:
        """``self`` after ``other``."""
        if other.target is not self.source:
            raise ValueError("maps are not composable")
        t = self.table
        return GrassmannianMap(other.source, self.target, [t[i] for i in other.table])

    def __eq__(self, other):
        return (
            isinstance(other, GrassmannianMap)
            and self.source is other.source
            and self.target is other.target
            and self.table == other.table
        )

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        s, t = self.source, self.target
        return f"GrassmannianMap(G_{s.k}(F_{s.field.q}^{s.n}) -> G_{t.k})"


def induced_map(f: SemilinearMap, k: int) -> GrassmannianMap:
    G = enumerate_grassmannian(f.n, k, f.field)
    return GrassmannianMap(G, G, [G.index[f.image(S)] for S in G], origin=("collineation", f))


def ortho_complement_map(form: SesquilinearForm, k: int) -> GrassmannianMap:
    """``U -> U^perp`` from ``G_k`` onto ``G_{n-k}``."""
    if not form.nondegenerate:
        raise ValueError("orthocomplement maps need a non-degenerate form")
    src = enumerate_grassmannian(form.n, k, form.field)
    dst = enumerate_grassmannian(form.n, form.n - k, form.field)
    return GrassmannianMap(src, dst, [dst.index[form.right_perp(U)] for U in src], origin=("form", form))


def transposition_map(G: GrassmannianIndex, i: int, j: int) -> GrassmannianMap:
    table = list(range(len(G)))
    table[i], table[j] = j, i
    return GrassmannianMap(G, G, table)


# --- regularity and distances ---------------------------------------------------


@lru_cache(maxsize=16)
def maximal_rset_family(n: int, k: int, field: FieldSpec) -> frozenset[frozenset[int]]:
    """All maximal R-subsets of ``G_k(F_q^n)`` as sets of Grassmannian positions."""
    amb = _ambient(n, field)
    return frozenset(_frame_plane_ids(amb, fr, k) for fr in frame_line_ids([], n, field))


def is_regular(f: GrassmannianMap, mode: str = "exhaustive", samples: int = 200, seed: int = 0) -> bool:
    """Do ``f`` and its inverse send R-sets to R-sets?

    It suffices to look at maximal R-sets, since subsets of R-sets are
    R-sets.  Exhaustive mode walks every frame: a bijection sends a maximal
    R-set to an R-set iff the image is again one of the maximal families.
    Sampled mode draws random frames on both sides and runs the general
    recogniser on the images.
    """
    if not f.is_bijective:
        return False
    src, dst = f.source, f.target
    n, F = src.n, src.field
    if mode == "exhaustive":
        fam_src = maximal_rset_family(n, src.k, F)
        fam_dst = fam_src if dst.k == src.k else maximal_rset_family(n, dst.k, F)
        t = f.table
        images = {frozenset(t[i] for i in m) for m in fam_src}
        return images == fam_dst
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    inv = f.inverse()
    for g, G in ((f, src), (inv, dst)):
        for _ in range(samples):
            planes = _random_frame_planes(n, G.k, F, rng)
            if find_associated_basis([g(P) for P in planes]) is None:
                return False
    return True


def _random_frame_planes(n, k, F, rng):
    while True:
        M = tuple(tuple(rng.randrange(F.q) for _ in range(n)) for _ in range(n))
        if linalg.is_invertible(F, M):
            break
    cols = list(zip(*M))
    return [canonicalize([cols[i] for i in c], F, n) for c in itertools.combinations(range(n), k)]


@lru_cache(maxsize=16)
def distance_table(n: int, k: int, field: FieldSpec) -> tuple[tuple[int, ...], ...]:
    G = enumerate_grassmannian(n, k, field)
    m = len(G)
    D = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            d = k - meet(G[i], G[j]).dim
            D[i][j] = D[j][i] = d
    return tuple(tuple(r) for r in D)


def preserves_distance(f: GrassmannianMap) -> bool:
    src, dst = f.source, f.target
    if dst.k not in (src.k, src.n - src.k):
        raise ValueError("target must be G_k or G_{n-k}")
    Ds = distance_table(src.n, src.k, src.field)
    Dt = distance_table(dst.n, dst.k, dst.field)
    t = f.table
    m = len(t)
    for i in range(m):
        Di, Ti = Ds[i], Dt[t[i]]
        for j in range(i + 1, m):
            if Di[j] != Ti[t[j]]:
                return False
    return True


# --- collineation witnesses and compositions -----------------------------------


def _line_image(h: GrassmannianMap, v) -> Optional[Subspace]:
    acc = None
    for U in h.source:
        if U.contains_vector(v):
            img = h(U)
            acc = img if acc is None else meet(acc, img)
    if acc is None or acc.dim != 1:
        return None
    return acc


def find_collineation_witness(h: GrassmannianMap) -> Optional[SemilinearMap]:
    """A collineation inducing ``h`` (a map of ``G_k`` to itself), or None.

    Any inducing collineation sends the star of planes through a line onto
    the star through the image line, so the line images, and with them the
    matrix columns up to scalars, are forced.  The remaining finite freedom
    (column scalars with the first fixed, and the automorphism power) is
    searched exhaustively and each candidate is checked on the whole table.
    """
    G = h.source
    if h.target.k != G.k or not 0 < G.k < G.n:
        return None
    n, F = G.n, G.field
    images = []
    for i in range(n):
        img = _line_image(h, unit_vector(n, i))
        if img is None:
            return None
        images.append(img.rows[0])
    for j in range(F.e):
        for scal in itertools.product(F.units, repeat=n - 1):
            lam = (1,) + scal
            cols = [tuple(F.mul[l][x] for x in v) for l, v in zip(lam, images)]
            M = linalg.transpose(cols)
            if not linalg.is_invertible(F, M):
                continue
            g = SemilinearMap(F, M, j)
            if all(G.index[g.image(U)] == h.table[i] for i, U in enumerate(G)):
                return g
    return None


def classify_compositions(f1: GrassmannianMap, f2: GrassmannianMap) -> Report:
    """Check the composition rules for form- and collineation-defined maps.

    The composite ``f2 o f1`` must be induced by a collineation whenever both
    maps come from forms, or both from collineations (then the witness is the
    product).  Inverses of form maps must be the maps of the transposed
    conjugate forms.
    """
    report = Report("compositions", {"n": f1.source.n, "k": f1.source.k, "q": f1.source.field.q})
    with timed(report):
        h = f2.compose(f1)
        kinds = tuple(f.origin[0] if f.origin else "table" for f in (f1, f2))
        report.extra["kinds"] = list(kinds)
        if h.source.k == h.target.k:
            w = find_collineation_witness(h)
            report.extra["composite_is_collineation"] = w is not None
            if w is not None:
                report.extra["witness"] = {"matrix": [list(r) for r in w.matrix], "aut_power": w.aut_power}
            if w is None and kinds[0] == kinds[1] and kinds[0] in ("form", "collineation"):
                report.counterexamples.append({"reason": "composite has no collineation witness", "kinds": list(kinds)})
            if kinds == ("collineation", "collineation"):
                expected = induced_map(f2.origin[1].compose(f1.origin[1]), h.source.k)
                if expected.table != h.table:
                    report.counterexamples.append({"reason": "composite differs from the product collineation"})
        for name, f in (("f1", f1), ("f2", f2)):
            if f.origin and f.origin[0] == "form":
                form = f.origin[1]
                back = ortho_complement_map(form.transpose_conjugate(), f.target.k)
                ok = back.table == f.inverse().table
                report.extra[f"{name}_inverse_is_form_map"] = ok
                if not ok:
                    report.counterexamples.append({"reason": f"inverse of {name} is not the transposed-conjugate form map"})
    return report


# --- the collineation(+duality) group ---------------------------------------------


def collineation_generators(n: int, field: FieldSpec) -> list[SemilinearMap]:
    """Generators of the collineation group of ``F_q^n``.

    Elementary transvections with entries 1 and a primitive element, a
    diagonal matrix with a primitive entry, and the Frobenius map when the
    field is not prime.
    """
    F = field
    gens = []
    scalars = sorted({1, F.primitive})
    for i, j in itertools.permutations(range(n), 2):
        for a in scalars:
            M = [list(r) for r in linalg.identity(n)]
            M[i][j] = a
            gens.append(SemilinearMap(F, M))
    if F.primitive != 1:
        D = [list(r) for r in linalg.identity(n)]
        D[0][0] = F.primitive
        gens.append(SemilinearMap(F, D))
    if F.e > 1:
        gens.append(SemilinearMap(F, linalg.identity(n), 1))
    return gens


def group_generator_maps(n: int, k: int, field: FieldSpec) -> list[GrassmannianMap]:
    gens = [induced_map(g, k) for g in collineation_generators(n, field)]
    if n == 2 * k:
        gens.append(ortho_complement_map(SesquilinearForm.standard(field, n), k))
    return gens


def permutation_closure(gens, budget: int = 1_000_000) -> set[tuple[int, ...]]:
    """All products of the generator permutations, by breadth-first search."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return set()
    e = tuple(range(len(gens[0])))
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(x[i] for i in g)
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise BudgetExceeded(f"group order exceeds closure budget {budget}")
                queue.append(y)
    return seen


def collineation_and_duality_subgroup_order(n: int, k: int, field: FieldSpec, budget: int = 1_000_000) -> int:
    """Order of the permutation group of ``G_k`` generated by collineations
    (and one orthocomplement map when ``n == 2k``)."""
    return len(permutation_closure([g.table for g in group_generator_maps(n, k, field)], budget))


def random_group_element(n: int, k: int, field: FieldSpec, rng: random.Random, length: int = 40) -> GrassmannianMap:
    """A random word of the given length in the group generators."""
    gens = group_generator_maps(n, k, field)
    G = gens[0].source
    table = tuple(range(len(G)))
    for _ in range(length):
        g = rng.choice(gens).table
        table = tuple(g[i] for i in table)
    return GrassmannianMap(G, G, table)
