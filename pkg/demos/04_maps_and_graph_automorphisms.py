"""Transformations of Grassmannians and automorphisms of Grassmann graphs.

Collineations and orthocomplement maps send R-sets to R-sets and keep
distances.  For n = 2k the group they generate is the full automorphism
group of the Grassmann graph; here we compare the two orders directly.
"""

import random

from grassmann_rsets import (
    SemilinearMap,
    SesquilinearForm,
    automorphism_group_order,
    classify_compositions,
    collineation_and_duality_subgroup_order,
    grassmann_graph,
    induced_map,
    is_regular,
    make_field,
    ortho_complement_map,
    preserves_distance,
)
from grassmann_rsets.maps import transposition_map

F2, F3 = make_field(2), make_field(3)

g = SemilinearMap(F3, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 1, 1]])
f = induced_map(g, 2)
print("collineation: regular", is_regular(f), "isometric", preserves_distance(f))

perp = ortho_complement_map(SesquilinearForm.standard(F3, 4), 2)
print("orthocomplement: regular", is_regular(perp), "isometric", preserves_distance(perp))
report = classify_compositions(perp, perp)
print(report.summary(), "; composite witness:", report.extra["witness"])

G = f.source
rng = random.Random(0)
i, j = rng.sample(range(len(G)), 2)
print("a random transposition keeps distances?", preserves_distance(transposition_map(G, i, j)))

graph = grassmann_graph(4, 2, F2)
print("Aut of the G_2(F_2^4) graph:", automorphism_group_order(graph))
print("collineations plus one duality generate:", collineation_and_duality_subgroup_order(4, 2, F2))
print("Aut of the G_1(F_2^3) graph:", automorphism_group_order(grassmann_graph(3, 1, F2)))
