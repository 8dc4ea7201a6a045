"""Involutions as pairs of complementary subspaces.

Over odd characteristic an involution is determined by its +1 and -1
eigenspaces.  Commuting families are exactly the families whose eigenspaces
share a basis, and two involutions are adjacent exactly when their product
is a transvection.
"""

from grassmann_rsets import (
    ComplementaryPair,
    generated_group_order,
    involution_from_pair,
    involutions_adjacent,
    is_transvection,
    make_field,
    verify_adjacency_transvection,
    verify_commuting_iff_rset,
    verify_commuting_preserves_eigenspaces,
)
from grassmann_rsets.involutions import check_swap_closed, find_adjacency_violation, swap_map_regular
from grassmann_rsets.linalg import mat_mul
from grassmann_rsets.subspace import coordinate_plane, span

F3 = make_field(3)

U = coordinate_plane(F3, 4, [0, 1])
S = coordinate_plane(F3, 4, [2, 3])
S2 = span(F3, 4, (1, 0, 1, 0), (0, 0, 0, 1))
a = involution_from_pair(ComplementaryPair(U, S))
b = involution_from_pair(ComplementaryPair(U, S2))
print("a =", a.matrix)
print("adjacent:", involutions_adjacent(a, b), "; product is a transvection:", is_transvection(F3, mat_mul(F3, a.matrix, b.matrix)))

for report in (
    verify_commuting_preserves_eigenspaces(3, 1, F3),
    verify_commuting_iff_rset(3, 1, F3),
    verify_adjacency_transvection(3, 1, F3),
):
    print(report.summary(), report.extra)

for k, n in [(1, 3), (2, 3), (1, 2)]:
    print(f"({k},{n - k})-involutions of F_3^{n} generate a group of order", generated_group_order(k, n, F3))

# Swapping the two components of a single pair (and of its reverse) keeps
# every maximal R-set of pairs intact but destroys adjacency somewhere.
G = check_swap_closed([ComplementaryPair(U, S), ComplementaryPair(S, U)])
print("partial swap regular:", swap_map_regular(G, 4, F3))
print("adjacency broken at:", find_adjacency_violation(G, 4, F3))
