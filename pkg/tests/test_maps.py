import itertools
import random

import pytest

import oracles
from grassmann_rsets import make_field
from grassmann_rsets.linalg import identity, is_invertible, mat_mul, scalar_matrix
from grassmann_rsets.maps import (
    GrassmannianMap,
    SemilinearMap,
    SesquilinearForm,
    apply_semilinear,
    classify_compositions,
    find_collineation_witness,
    induced_map,
    is_regular,
    maximal_rset_family,
    ortho_complement_map,
    preserves_distance,
    random_group_element,
    transposition_map,
)
from grassmann_rsets.rset import CoordinateSystem, is_rset
from grassmann_rsets.subspace import contains, distance, enumerate_grassmannian, span


def random_invertible(F, n, rng):
    while True:
        M = [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]
        if is_invertible(F, M):
            return M


def test_identity_and_scalars_induce_identity(gf3, gf4):
    for F in (gf3, gf4):
        for k in (1, 2):
            G = enumerate_grassmannian(3, k, F)
            assert induced_map(SemilinearMap.identity(F, 3), k).table == tuple(range(len(G)))
            for a in F.units:
                assert induced_map(SemilinearMap(F, scalar_matrix(F, a, 3)), k).table == tuple(range(len(G)))


def test_permutation_matrix_permutes_planes(gf2):
    perm = (2, 0, 3, 1)
    P = [[1 if perm[j] == i else 0 for j in range(4)] for i in range(4)]
    f = SemilinearMap(gf2, P)
    G = enumerate_grassmannian(4, 2, gf2)
    h = induced_map(f, 2)
    for i, S in enumerate(G):
        image = oracles.vspan([apply_semilinear(f, v) for v in S.rows], 4, 2)
        assert frozenset(G[h.table[i]].vectors()) == image


def test_semilinear_map_uses_frobenius(gf4):
    f = SemilinearMap(gf4, identity(2), 1)
    assert f((2, 1)) == (3, 1)
    assert f.compose(f) == SemilinearMap.identity(gf4, 2)
    g = SemilinearMap(gf4, [[1, 2], [0, 1]], 1)
    assert g.compose(g.inverse()) == SemilinearMap.identity(gf4, 2)


def test_orthocomplement_of_a_line_in_the_plane(gf3):
    form = SesquilinearForm.standard(gf3, 2)
    f = ortho_complement_map(form, 1)
    assert f(span(gf3, 2, (1, 0))) == span(gf3, 2, (0, 1))


def test_orthocomplement_dimensions_and_involutivity(gf2, gf3):
    f = ortho_complement_map(SesquilinearForm.standard(gf2, 4), 2)
    assert all(f(U).dim == 2 for U in f.source)
    g = ortho_complement_map(SesquilinearForm.standard(gf3, 4), 2)
    assert all(g(g(U)) == U for U in g.source)


def test_orthocomplement_reverses_containment(gf3):
    form = SesquilinearForm.standard(gf3, 4)
    for k1, k2 in [(1, 2), (2, 3), (1, 3)]:
        small, big = enumerate_grassmannian(4, k1, gf3), enumerate_grassmannian(4, k2, gf3)
        for U in small:
            for W in big:
                if contains(W, U):
                    assert contains(form.right_perp(U), form.right_perp(W))


def test_hermitian_form_over_gf4(gf4):
    form = SesquilinearForm(gf4, identity(3), 1)
    f = ortho_complement_map(form, 1)
    assert f.is_bijective
    for U in f.source:
        for u in U.vectors():
            for v in f(U).vectors():
                assert form(u, v) == 0


def test_regularity_of_standard_maps(gf2, gf3):
    for F in (gf2, gf3):
        G = enumerate_grassmannian(4, 2, F)
        assert is_regular(GrassmannianMap(G, G, range(len(G))))
        rng = random.Random(0)
        assert is_regular(induced_map(SemilinearMap(F, random_invertible(F, 4, rng)), 2))
        assert is_regular(ortho_complement_map(SesquilinearForm.standard(F, 4), 2))


def test_sampled_regularity_agrees_on_collineations(gf3):
    f = induced_map(SemilinearMap(gf3, random_invertible(gf3, 4, random.Random(5))), 2)
    assert is_regular(f, mode="sampled", samples=50, seed=3)


def test_collineations_map_maximal_rsets_to_maximal_rsets(gf3):
    rng = random.Random(2)
    system = CoordinateSystem.standard(gf3, 4)
    for _ in range(10):
        f = SemilinearMap(gf3, random_invertible(gf3, 4, rng))
        image = [f.image(U) for U in system.planes(2)]
        assert len(set(image)) == 6 and is_rset(image)


def test_distance_preservation(gf2):
    G = enumerate_grassmannian(4, 2, gf2)
    assert preserves_distance(GrassmannianMap(G, G, range(len(G))))
    assert preserves_distance(induced_map(SemilinearMap(gf2, random_invertible(gf2, 4, random.Random(1))), 2))
    rng = random.Random(17)
    far = [(i, j) for i, j in itertools.combinations(range(len(G)), 2) if distance(G[i], G[j]) == 2]
    i, j = rng.choice(far)
    assert not preserves_distance(transposition_map(G, i, j))


def test_scalar_multiples_induce_the_same_map(gf4):
    rng = random.Random(4)
    for _ in range(5):
        M = random_invertible(gf4, 3, rng)
        for j in range(2):
            base = induced_map(SemilinearMap(gf4, M, j), 1)
            for a in gf4.units:
                assert induced_map(SemilinearMap(gf4, mat_mul(gf4, scalar_matrix(gf4, a, 3), M), j), 1) == base


def test_witness_recovers_a_semilinear_map(gf4):
    rng = random.Random(6)
    f = SemilinearMap(gf4, random_invertible(gf4, 4, rng), 1)
    h = induced_map(f, 2)
    w = find_collineation_witness(h)
    assert w is not None and induced_map(w, 2) == h and w.aut_power == 1


def test_transposition_has_no_witness(gf2):
    G = enumerate_grassmannian(4, 2, gf2)
    assert find_collineation_witness(transposition_map(G, 0, 1)) is None


def test_double_orthocomplement_is_a_collineation(gf3):
    f = ortho_complement_map(SesquilinearForm.standard(gf3, 4), 2)
    report = classify_compositions(f, f)
    assert report.passed
    assert report.extra["composite_is_collineation"]
    assert report.extra["f1_inverse_is_form_map"]


def test_inverse_of_a_form_map_uses_the_transposed_conjugate(gf3):
    rng = random.Random(12)
    gram = random_invertible(gf3, 4, rng)
    form = SesquilinearForm(gf3, gram)
    f = ortho_complement_map(form, 2)
    assert ortho_complement_map(form.transpose_conjugate(), 2) == f.inverse()


def test_composed_collineations(gf3):
    rng = random.Random(13)
    a = SemilinearMap(gf3, random_invertible(gf3, 3, rng))
    b = SemilinearMap(gf3, random_invertible(gf3, 3, rng))
    report = classify_compositions(induced_map(a, 1), induced_map(b, 1))
    assert report.passed and report.extra["composite_is_collineation"]


def test_group_elements_are_regular_and_isometric(gf2):
    rng = random.Random(21)
    for _ in range(5):
        f = random_group_element(4, 2, gf2, rng)
        assert is_regular(f) and preserves_distance(f)


def test_maximal_rset_family_size(gf2):
    assert len(maximal_rset_family(4, 2, gf2)) == len(oracles.maximal_rsets(4, 2, 2))
