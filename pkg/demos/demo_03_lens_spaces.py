"""
Lens spaces and their colorings
===============================

Build the virtual diagram of L(n,1), read off a presentation, solve it, and
count colorings by the risandles of cyclic groups.
"""

import math

import numpy as np

from riskit import (
    check_axioms,
    count_colorings,
    cyclic_group,
    describe_group,
    finite_quotient,
    format_diagram,
    format_word,
    fundamental_presentation,
    lens_diagram,
    permutation_group_to_group,
    r_of_group,
    rmult_group,
)

D = lens_diagram(4)
print(format_diagram(D))

# One generator per arc; elimination leaves a single relation.
P = fundamental_presentation(D, eliminate=True)
print(P.to_text())

q = finite_quotient(P)
print("order", q.order, "via", q.method, "| faithful:", check_axioms(q.structure).is_faithful)
print("RMult:", describe_group(permutation_group_to_group(rmult_group(q.structure))))
print("elements:", [format_word(w) for w in q.element_words])

# Coloring counts c(n, m) by R(Z/m) form a gcd table.
counts = np.array([[count_colorings(lens_diagram(n), r_of_group(cyclic_group(m))).count for m in range(1, 9)] for n in range(1, 9)])
print(counts)
print("equals gcd:", all(counts[n - 1, m - 1] == math.gcd(n, m) for n in range(1, 9) for m in range(1, 9)))
