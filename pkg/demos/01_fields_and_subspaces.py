"""Finite fields, canonical subspaces and the Grassmannian.

Run with ``python3 demos/01_fields_and_subspaces.py``.
"""

from grassmann_rsets import make_field, enumerate_grassmannian, gaussian_binomial, canonicalize, meet, join, distance
from grassmann_rsets.field import field_arith

# GF(4) is built from x^2 + x + 1.  Elements are small integers whose base-2
# digits are polynomial coefficients, so the generator a is 2 and a + 1 is 3.
F4 = make_field(2, 2)
a = F4.element(2)
print("GF(4): a*a =", field_arith("mul", a, a).value, "and frob(a) =", F4.frobenius(2, 1))

# Any spanning set collapses to one reduced row echelon basis, so subspaces
# compare and hash by value.
F3 = make_field(3)
S = canonicalize([[1, 2, 0, 1], [2, 1, 1, 0], [0, 0, 1, 2]], F3, 4)
T = canonicalize([[0, 1, 1, 1], [1, 0, 0, 0]], F3, 4)
print("S =", S.rows, "dim", S.dim)
print("meet(S, T) has dim", meet(S, T).dim, "; join(S, T) has dim", join(S, T).dim)
P = canonicalize([[1, 0, 0, 0], [0, 1, 0, 0]], F3, 4)
Q = canonicalize([[1, 0, 0, 0], [0, 0, 1, 0]], F3, 4)
print("two planes sharing a line are at distance", distance(P, Q), "; T and P are at distance", distance(T, P))

# Enumeration order is lexicographic in the canonical rows, and sizes agree
# with the Gaussian binomial coefficient.
for n, k, q in [(3, 1, 2), (4, 2, 2), (4, 2, 3), (5, 2, 2)]:
    F = make_field(q)
    G = enumerate_grassmannian(n, k, F)
    print(f"|G_{k}(F_{q}^{n})| = {len(G)} = [{n} {k}]_{q} = {gaussian_binomial(n, k, q)}")
