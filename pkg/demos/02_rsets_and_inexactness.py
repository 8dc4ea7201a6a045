"""R-sets, exactness and the degree of inexactness.

A family of subspaces is an R-set when one basis makes all of them
coordinate subspaces.  An R-set is exact when only one maximal R-set
contains it; the degree of inexactness counts how many planes must be added
before that happens.
"""

from grassmann_rsets import make_field, find_associated_basis, is_rset, is_exact, degree_of_inexactness
from grassmann_rsets.rset import (
    CoordinateSystem,
    degree_search,
    hyperplane_and_plane_family,
    maximal_rsets_containing,
    planes_in_hyperplane,
    planes_through_line,
    rset_profile,
    s_n_k,
)
from grassmann_rsets.subspace import enumerate_grassmannian, span

F2 = make_field(2)

# Three lines of the plane over GF(2) cannot share a basis; two of them can.
lines = list(enumerate_grassmannian(2, 1, F2))
print("two lines:", find_associated_basis(lines[:2]))
print("three lines form an R-set?", is_rset(lines))
print("frames through one line of F_2^2:", len(maximal_rsets_containing([lines[0]])))

# In F_2^4 the six coordinate planes of a frame are exact.  The three planes
# through one coordinate line are not: two more planes are needed.
system = CoordinateSystem.standard(F2, 4)
maximal = frozenset(system.planes(2))
star = planes_through_line(system, 2, 0)
print("maximal R-set exact?", is_exact(maximal))
print("planes through a line: deg =", degree_of_inexactness(star))

# The per-line profile of the star relative to one minimal exact superset:
# exactly one line is cut out as an intersection of members.
superset = degree_search(star).minimal_supersets[0]
print("n(R') for the star:", rset_profile(star, superset).n_count)

hyper = planes_in_hyperplane(system, 2, system.span_of([0, 1, 2]))
print("planes in a hyperplane: deg =", degree_of_inexactness(hyper))

# In F_2^5 the union of the planes in a hyperplane and the planes through a
# 2-plane sticking out of it has s^5_2 = 7 members and degree 1.
system5 = CoordinateSystem.standard(F2, 5)
fam = hyperplane_and_plane_family(system5, 2, system5.span_of([0, 1, 2, 3]), system5.span_of([3, 4]))
print(f"|family| = {len(fam)} = s^5_2 = {s_n_k(5, 2)}; deg =", degree_of_inexactness(fam))

# Recognition is not tied to coordinate vectors: any basis works.
skew = [span(F2, 3, (1, 1, 0)), span(F2, 3, (0, 1, 1)), span(F2, 3, (1, 1, 0), (0, 1, 1))]
print("skewed family:", find_associated_basis(skew))
