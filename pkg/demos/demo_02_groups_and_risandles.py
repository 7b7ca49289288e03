"""
Groups and faithful risandles
=============================

Send a group to its risandle ``h ▷ g = h g^{-1}`` and come back through the
right multiplication group.
"""

import numpy as np

from riskit import (
    count_homomorphisms,
    enumerate_group_homs,
    l_of_faithful,
    make_group,
    permutation_group_to_group,
    are_isomorphic,
    r_of_group,
    rmult_group,
)

G = make_group("S3")
X = r_of_group(G)
print("R(S3) as a table:")
print(X.as_array())

# The translations of R(G) compose exactly like the group elements.
back = l_of_faithful(X)
print("L(R(S3)) has the same table as S3:", back.mul == G.mul)
print("RMult(R(S3)) is S3 again:", are_isomorphic(permutation_group_to_group(rmult_group(X)), G))

# Risandle maps between R(G) and R(H) are exactly the group homomorphisms.
names = ["Z2", "Z3", "Z4", "Z2xZ2", "S3"]
groups = [make_group(n) for n in names]
group_counts = np.array([[len(enumerate_group_homs(a, b)) for b in groups] for a in groups])
risandle_counts = np.array([[count_homomorphisms(r_of_group(a), r_of_group(b)) for b in groups] for a in groups])
print("rows/columns:", names)
print(group_counts)
print("identical counts:", np.array_equal(group_counts, risandle_counts))
