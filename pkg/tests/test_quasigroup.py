from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from riskit import (
    FiniteRightQuasigroup,
    canonical_form,
    check_axioms,
    closure,
    constant_action,
    count_homomorphisms,
    direct_product,
    enumerate_risacks,
    enumerate_risandles,
    find_isomorphism,
    from_table,
    from_translations,
    is_homomorphism,
    iter_homomorphisms,
    iter_right_quasigroups,
    relabel,
    right_identities,
    rmult_group,
    subrisandle_generated,
    substructure,
    table_from_json,
    table_to_json,
    trivial_quandle,
)
from riskit.errors import (
    BoundExceededError,
    ColumnNotPermutationError,
    EmptyStructureError,
    EntryOutOfRangeError,
    InvalidTableError,
    NotSquareError,
)
from riskit.groups import cyclic_group, r_of_group


def permutation_tables(n):
    perms = list(itertools.permutations(range(n)))
    return st.lists(st.sampled_from(perms), min_size=n, max_size=n).map(
        lambda cols: tuple(tuple(cols[x][y] for x in range(n)) for y in range(n))
    )


any_table = st.integers(1, 4).flatmap(permutation_tables)


class TestValidation:
    def test_not_square(self):
        with pytest.raises(NotSquareError):
            from_table([[0, 1], [1]])

    def test_entry_out_of_range(self):
        with pytest.raises(EntryOutOfRangeError):
            from_table([[0, 2], [1, 0]])

    def test_column_not_permutation_names_column(self):
        with pytest.raises(ColumnNotPermutationError) as info:
            from_table([[0, 1], [0, 0]])
        assert info.value.column == 0

    def test_empty_structure_is_allowed(self):
        X = from_table([])
        assert X.order == 0
        assert check_axioms(X).is_risandle

    def test_json_round_trip(self):
        X = r_of_group(cyclic_group(3))
        assert table_from_json(table_to_json(X)) == X

    @pytest.mark.parametrize("text", ["not json", "[1, 2]", '{"order": 2}'])
    def test_bad_json(self, text):
        with pytest.raises(InvalidTableError):
            table_from_json(text)


class TestAxioms:
    def test_trivial_quandle(self):
        rep = check_axioms(trivial_quandle(3))
        assert rep.is_trivial_quandle and rep.is_quandle and rep.is_rack and rep.is_risandle
        assert not rep.is_faithful
        assert rep.witnesses["faithful"] == (0, 1)

    def test_r_of_z3_is_faithful_risandle(self):
        rep = check_axioms(r_of_group(cyclic_group(3)))
        assert rep.is_risandle and rep.is_faithful and not rep.is_quandle

    def test_constant_involution_counterexample(self):
        X = constant_action(2, (1, 0))
        rep = check_axioms(X)
        assert rep.satisfies_risandle_law and not rep.is_risack
        assert rep.witnesses["risack"] == (0, 0, 0)

    @settings(max_examples=150, deadline=None)
    @given(any_table)
    def test_agrees_with_definitions(self, table):
        rep = check_axioms(from_table(table))
        assert rep.is_right_quasigroup
        assert rep.is_risack == oracles.is_risack(table)
        assert rep.satisfies_risandle_law == oracles.risandle_law(table)
        assert rep.is_rack == oracles.is_rack(table)
        assert rep.is_quandle == (rep.is_rack and all(table[x][x] == x for x in range(len(table))))


class TestEnumeration:
    @pytest.mark.parametrize("n,labeled,classes", [(0, 1, 1), (1, 1, 1), (2, 3, 2), (3, 4, 2), (4, 29, 4)])
    def test_counts(self, n, labeled, classes):
        assert len(enumerate_risandles(n)) == labeled
        assert len(enumerate_risandles(n, up_to_iso=True)) == classes

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_small_orders_match_exhaustive_search(self, n):
        brute = {X.table for X in iter_right_quasigroups(n) if oracles.is_risack(X.table)}
        assert {X.table for X in enumerate_risacks(n)} == brute

    def test_order_four_matches_numpy_oracle(self):
        assert {X.table for X in enumerate_risacks(4)} == oracles.all_order4_risacks()

    def test_right_quasigroup_count(self):
        assert sum(1 for _ in iter_right_quasigroups(3)) == 6**3

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            enumerate_risandles(6)

    def test_up_to_iso_representatives_pairwise_non_isomorphic(self):
        reps = enumerate_risandles(4, up_to_iso=True)
        for A, B in itertools.combinations(reps, 2):
            assert find_isomorphism(A, B) is None


class TestMorphisms:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(permutation_tables(n), permutation_tables(3))))
    def test_homomorphism_count_matches_brute_force(self, pair):
        A, B = (from_table(t) for t in pair)
        found = sorted(iter_homomorphisms(A, B))
        assert found == sorted(oracles.homomorphisms(A.table, B.table))
        assert count_homomorphisms(A, B) == len(found)

    @settings(max_examples=60, deadline=None)
    @given(permutation_tables(4), st.permutations(range(4)))
    def test_relabel_is_isomorphic(self, table, phi):
        X = from_table(table)
        Y = relabel(X, phi)
        iso = find_isomorphism(X, Y)
        assert iso is not None and is_homomorphism(X, Y, iso)
        assert canonical_form(X) == canonical_form(Y)

    def test_canonical_form_separates(self):
        assert canonical_form(trivial_quandle(2)) != canonical_form(constant_action(2, (1, 0)))


class TestSubstructures:
    def test_rmult_of_r_z4_is_cyclic_of_order_4(self):
        P = rmult_group(r_of_group(cyclic_group(4)))
        assert P.order == 4

    def test_rmult_empty(self):
        with pytest.raises(EmptyStructureError):
            rmult_group(from_table([]))
        assert rmult_group(from_table([]), allow_empty=True).order == 1

    def test_closure(self):
        P = closure([(1, 2, 0), (1, 0, 2)], 3)
        assert P.order == 6 and P.elements[0] == (0, 1, 2)

    def test_right_identities(self):
        X = r_of_group(cyclic_group(5))
        assert right_identities(X) == frozenset({0})

    def test_generated_subrisandle(self):
        X = r_of_group(cyclic_group(6))
        assert subrisandle_generated(X, [2]) == frozenset({0, 2, 4})
        S, labels = substructure(X, {0, 2, 4})
        assert labels == (0, 2, 4)
        assert find_isomorphism(S, r_of_group(cyclic_group(3))) is not None

    def test_direct_product(self):
        X = direct_product(r_of_group(cyclic_group(2)), r_of_group(cyclic_group(3)))
        assert find_isomorphism(X, r_of_group(cyclic_group(6))) is not None

    def test_as_array(self):
        X = trivial_quandle(3)
        assert np.array_equal(X.as_array(), np.array([[0, 0, 0], [1, 1, 1], [2, 2, 2]]))

    def test_from_translations(self):
        X = from_translations([(1, 0), (1, 0)])
        assert X == constant_action(2, (1, 0))
        assert X.inverse_op(X.op(0, 1), 1) == 0
