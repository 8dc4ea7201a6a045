"""Sweeps over all large subsets of one maximal R-set.

Every frame is equivalent to the standard one, so it is enough to look at
subsets of the standard frame's coordinate planes.  Above the size
thresholds every subset has degree at most 2 (or at most 1 from the larger
threshold on), and the extreme degree occurs only on the known shapes.
"""

from grassmann_rsets import make_field, verify_degree_bound, verify_exactness_threshold

for n, k, p in [(4, 2, 2), (4, 2, 3), (5, 2, 2), (5, 3, 2)]:
    F = make_field(p)
    bound = verify_degree_bound(n, k, F)
    threshold = verify_exactness_threshold(n, k, F)
    print(bound.summary(), bound.counts_by_degree)
    print(threshold.summary(), threshold.counts_by_degree)
