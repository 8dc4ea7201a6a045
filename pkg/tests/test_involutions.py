import itertools
import random

import numpy as np
import pytest

import oracles
from grassmann_rsets import make_field
from grassmann_rsets.involutions import (
    CharacteristicTwo,
    ComplementaryPair,
    Involution,
    PairRSet,
    all_involutions,
    check_swap_closed,
    commutes,
    complementary_pairs,
    eigensplit,
    find_adjacency_violation,
    generated_group_order,
    i_G,
    involution_from_pair,
    involutions_adjacent,
    is_transvection,
    maximal_pair_rsets,
    negate,
    pairs_adjacent,
    pairs_is_rset,
    swap_map_regular,
    transform_collineation,
    transform_correlation,
    verify_adjacency_transvection,
    verify_commuting_preserves_eigenspaces,
    verify_commuting_iff_rset,
    x_fiber_first,
    x_fiber_second,
)
from grassmann_rsets.linalg import identity, inverse, is_invertible, mat_mul, transpose
from grassmann_rsets.maps import SemilinearMap, SesquilinearForm
from grassmann_rsets.subspace import coordinate_plane, span


def random_invertible(F, n, rng):
    while True:
        M = [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]
        if is_invertible(F, M):
            return M


def diag(F, signs):
    n = len(signs)
    return tuple(tuple((1 if signs[i] > 0 else F.neg[1]) if i == j else 0 for j in range(n)) for i in range(n))


def test_pair_of_coordinate_lines(gf3):
    s = involution_from_pair(ComplementaryPair(span(gf3, 2, (1, 0)), span(gf3, 2, (0, 1))))
    assert s.matrix == ((1, 0), (0, 2))
    assert s.signature == (1, 1)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2)])
def test_pair_correspondence_is_a_bijection(gf3, n, k):
    invs = all_involutions(n, k, gf3)
    assert len({s.matrix for s in invs}) == len(invs) == len(complementary_pairs(n, k, gf3))
    for s in invs:
        assert mat_mul(gf3, s.matrix, s.matrix) == identity(n)
        fresh = Involution(gf3, s.matrix)
        assert eigensplit(fresh) == s.pair()
        assert involution_from_pair(eigensplit(fresh)) == fresh


def test_pair_correspondence_sampled_at_4_2(gf3):
    pairs = complementary_pairs(4, 2, gf3)
    assert len(pairs) == 10530
    rng = random.Random(0)
    for p in rng.sample(pairs, 300):
        s = involution_from_pair(p)
        assert eigensplit(Involution(gf3, s.matrix)) == p


def test_conjugation_moves_eigenspaces(gf3):
    rng = random.Random(1)
    invs = all_involutions(3, 1, gf3)
    for _ in range(50):
        s = rng.choice(invs)
        g = SemilinearMap(gf3, random_invertible(gf3, 3, rng))
        t = transform_collineation(g, s)
        fresh = Involution(gf3, t.matrix)
        assert fresh.uplus == g.image(s.uplus) and fresh.uminus == g.image(s.uminus)


def test_semilinear_conjugation(gf3):
    F = make_field(3, 2)
    rng = random.Random(2)
    U, S = span(F, 2, (1, 2)), span(F, 2, (0, 1))
    s = involution_from_pair(ComplementaryPair(U, S))
    g = SemilinearMap(F, random_invertible(F, 2, rng), 1)
    t = transform_collineation(g, s)
    fresh = Involution(F, t.matrix)
    assert fresh.uplus == g.image(U) and fresh.uminus == g.image(S)


def test_commuting_matches_explicit_products(gf3):
    a = Involution(gf3, diag(gf3, [1, -1]))
    b = Involution(gf3, diag(gf3, [-1, -1]))
    assert commutes(a, b)
    s = involution_from_pair(ComplementaryPair(span(gf3, 2, (1, 1)), span(gf3, 2, (0, 1))))
    A, B = np.array(s.matrix), np.array(a.matrix)
    assert commutes(s, a) == bool(np.array_equal((A @ B) % 3, (B @ A) % 3))


def test_diagonal_involutions_commute_and_form_an_rset(gf3):
    invs = [Involution(gf3, diag(gf3, [1 if i in c else -1 for i in range(4)])) for c in itertools.combinations(range(4), 2)]
    assert all(commutes(a, b) for a, b in itertools.combinations(invs, 2))
    fam = PairRSet(s.pair() for s in invs)
    assert fam.is_rset() and fam.is_maximal()


def test_transvection_examples(gf3):
    assert not is_transvection(gf3, identity(3))
    assert is_transvection(gf3, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    assert not is_transvection(gf3, diag(gf3, [1, -1]))


def test_adjacency_examples(gf3):
    U = coordinate_plane(gf3, 4, [0, 1])
    S, S2 = coordinate_plane(gf3, 4, [2, 3]), span(gf3, 4, (1, 0, 1, 0), (0, 0, 0, 1))
    a = involution_from_pair(ComplementaryPair(U, S))
    b = involution_from_pair(ComplementaryPair(U, S2))
    assert not involutions_adjacent(a, a)
    assert not is_transvection(gf3, mat_mul(gf3, a.matrix, a.matrix))
    assert involutions_adjacent(a, b)
    assert is_transvection(gf3, mat_mul(gf3, a.matrix, b.matrix))


def test_transformations(gf3):
    s = Involution(gf3, diag(gf3, [1, -1]))
    assert transform_collineation(identity(2), s) == s
    t = negate(s)
    assert t.matrix == diag(gf3, [-1, 1]) and t.signature == (1, 1)


def test_negation_swaps_eigenspaces(gf3):
    for s in all_involutions(3, 1, gf3):
        t = negate(s)
        assert t.signature == (2, 1)
        assert (t.uplus, t.uminus) == (s.uminus, s.uplus)
        assert Involution(gf3, t.matrix).uplus == s.uminus
    assert len({negate(s) for s in all_involutions(3, 1, gf3)}) == len(all_involutions(3, 2, gf3))


def test_correlation_agrees_with_the_contragredient_matrix(gf3):
    rng = random.Random(3)
    for _ in range(20):
        G = random_invertible(gf3, 3, rng)
        form = SesquilinearForm(gf3, G)
        s = rng.choice(all_involutions(3, 1, gf3))
        t = transform_correlation(form, s)
        expected = mat_mul(gf3, mat_mul(gf3, inverse(gf3, G), transpose(s.matrix)), G)
        assert t.matrix == expected
        assert t.signature == s.signature


def test_transformations_preserve_commutativity(gf3):
    rng = random.Random(4)
    invs = all_involutions(3, 1, gf3)
    g = SemilinearMap(gf3, random_invertible(gf3, 3, rng))
    form = SesquilinearForm(gf3, random_invertible(gf3, 3, rng))
    for _ in range(2000):
        a, b = rng.choice(invs), rng.choice(invs)
        c = commutes(a, b)
        assert commutes(transform_collineation(g, a), transform_collineation(g, b)) == c
        assert commutes(transform_correlation(form, a), transform_correlation(form, b)) == c
        assert commutes(negate(a), negate(b)) == c


def test_swap_map_extremes_on_the_plane(gf3):
    pairs = complementary_pairs(2, 1, gf3)
    empty = check_swap_closed([])
    full = check_swap_closed(pairs)
    assert all(i_G(empty, p) == p for p in pairs)
    assert all(i_G(full, p) == p.swapped() for p in pairs)
    assert swap_map_regular(empty, 2, gf3)[0] and swap_map_regular(full, 2, gf3)[0]
    assert find_adjacency_violation(full, 2, gf3) is None


def test_partial_swap_breaks_adjacency_on_the_plane(gf3):
    p = complementary_pairs(2, 1, gf3)[0]
    G = check_swap_closed([p, p.swapped()])
    assert swap_map_regular(G, 2, gf3)[0]
    a, b = find_adjacency_violation(G, 2, gf3)
    assert pairs_adjacent(a, b) and not pairs_adjacent(i_G(G, a), i_G(G, b))


def test_swap_sets_must_be_closed(gf3):
    p = complementary_pairs(2, 1, gf3)[0]
    with pytest.raises(ValueError):
        check_swap_closed([p])


def test_maximal_pair_rsets_are_swap_closed(gf3):
    for _, fam in maximal_pair_rsets(4, 2, gf3):
        assert len(fam) == 6
        assert all(p.swapped() in fam for p in fam)


def test_fibers(gf3):
    pairs = complementary_pairs(4, 2, gf3)
    firsts = {p.U for p in pairs}
    fib = {U: x_fiber_first(U, pairs) for U in firsts}
    assert sum(len(f) for f in fib.values()) == len(pairs)
    rng = random.Random(5)
    for U in rng.sample(sorted(firsts, key=lambda S: S.rows), 10):
        for S in rng.sample(sorted(firsts, key=lambda S: S.rows), 10):
            assert len(fib[U] & x_fiber_second(S, pairs)) <= 1
            if U != S:
                assert not fib[U] & fib[S]


def test_pair_rset_hint_is_only_a_shortcut(gf3):
    pairs = complementary_pairs(2, 1, gf3)
    for a, b in itertools.combinations(pairs, 2):
        assert pairs_is_rset([a, b]) == oracles.is_rset_oracle(
            [frozenset(S.vectors()) for S in (a.U, a.S, b.U, b.S)], 2, 3
        )


def test_small_verifiers(gf3):
    assert verify_commuting_preserves_eigenspaces(2, 1, gf3).passed
    assert verify_commuting_iff_rset(2, 1, gf3).passed
    assert verify_adjacency_transvection(2, 1, gf3).passed


def test_sampled_reports_are_reproducible(gf3):
    a = verify_commuting_iff_rset(3, 1, gf3, mode="sampled", samples=300, seed=9).to_dict()
    b = verify_commuting_iff_rset(3, 1, gf3, mode="sampled", samples=300, seed=9).to_dict()
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b and a["passed"]


def test_generated_groups(gf3):
    assert generated_group_order(1, 2, gf3) == oracles.gl_order_formula(2, 3)
    assert generated_group_order(1, 3, gf3) == oracles.sl_order_formula(3, 3)


def test_characteristic_two_is_rejected(gf2):
    with pytest.raises(CharacteristicTwo):
        Involution(gf2, identity(2))
    with pytest.raises(CharacteristicTwo):
        verify_commuting_preserves_eigenspaces(2, 1, gf2)
