"""
Small risandles by exhaustive search
====================================

Enumerate every risandle on a few points, look at their axiom reports, and
see why the constant-involution structure is not one.
"""

from riskit import check_axioms, constant_action, enumerate_risandles, is_faithful

# Count labeled structures and isomorphism classes for each order.
for n in range(1, 6):
    labeled = enumerate_risandles(n)
    classes = enumerate_risandles(n, up_to_iso=True)
    faithful = sum(is_faithful(X) for X in classes)
    print(f"order {n}: {len(labeled):3d} labeled, {len(classes)} up to isomorphism, {faithful} faithful")

# Each table row is y and each column x, holding y ▷ x.
for X in enumerate_risandles(4, up_to_iso=True):
    rep = check_axioms(X)
    print(X.table, "faithful" if rep.is_faithful else "unfaithful", "quandle" if rep.is_quandle else "")

# A constant action by an involution satisfies the one-variable law but
# fails the three-variable one; the report names the first failing triple.
rep = check_axioms(constant_action(3, (1, 0, 2)))
print("risandle law:", rep.satisfies_risandle_law, "| risack:", rep.is_risack, "| witness:", rep.witnesses["risack"])
