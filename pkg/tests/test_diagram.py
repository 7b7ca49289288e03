from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import small_groups
from riskit import (
    Crossing,
    Gen,
    VirtualDiagram,
    count_colorings,
    count_homomorphisms,
    cyclic_group,
    eliminate_generators,
    finite_quotient,
    format_diagram,
    fundamental_presentation,
    is_coloring,
    iter_colorings,
    lens_diagram,
    lens_presentation,
    parse_diagram,
    r_of_group,
    s,
    s_power,
    si,
    trivial_quandle,
)
from riskit.errors import ArcCountMismatchError, ArcOutOfRangeError, BudgetExceededError, DiagramSyntaxError, NotRisandleError
from riskit.quasigroup import constant_action

LENS3 = """# three negative crossings, all under arc 0
arcs: 3
X sign=- over=0 in=0 out=1
V
X sign=- over=0 in=1 out=2
X in=2 out=0 over=0 sign=-
"""


def as_tuples(D):
    return [(c.sign, c.over, c.under_in, c.under_out) for c in D.crossings]


def diagrams(max_arcs=4):
    def build(n):
        crossing = st.tuples(st.sampled_from([1, -1]), *(st.integers(0, n - 1) for _ in range(3)))
        return st.lists(crossing, min_size=n, max_size=n).map(
            lambda cs: VirtualDiagram(n, tuple(Crossing(*c) for c in cs))
        )

    return st.integers(1, max_arcs).flatmap(build)


class TestFormat:
    def test_parse_lens3(self):
        assert parse_diagram(LENS3) == lens_diagram(3)

    @settings(max_examples=50, deadline=None)
    @given(diagrams())
    def test_round_trip(self, D):
        assert parse_diagram(format_diagram(D)) == D

    def test_override(self):
        D = parse_diagram("arcs: 1\noverride: arc-count\n")
        assert D.arc_count == 1 and D.crossings == () and D.override

    def test_arc_out_of_range(self):
        with pytest.raises(ArcOutOfRangeError):
            parse_diagram("arcs: 3\nX sign=- over=5 in=0 out=1\nX sign=- over=0 in=1 out=2\nX sign=- over=0 in=2 out=0\n")

    def test_arc_count_mismatch(self):
        with pytest.raises(ArcCountMismatchError):
            parse_diagram("arcs: 2\nX sign=- over=0 in=0 out=1\n")

    @pytest.mark.parametrize(
        "text,line,column",
        [
            ("X sign=- over=0 in=0 out=0\n", 1, 1),
            ("arcs: two\n", 1, 6),
            ("arcs: 1\nX sign=* over=0 in=0 out=0\n", 2, 3),
            ("arcs: 1\nX sign=- over=0 in=0\n", 2, 17),
            ("arcs: 1\n  X sign=- over=a in=0 out=0\n", 2, 12),
            ("arcs: 1\nY\n", 2, 1),
            ("arcs: 1\nX sign=- sign=+ over=0 in=0 out=0\n", 2, 10),
            ("arcs: 1\noverride: nothing\n", 2, 10),
        ],
    )
    def test_syntax_errors_carry_position(self, text, line, column):
        with pytest.raises(DiagramSyntaxError) as info:
            parse_diagram(text)
        assert (info.value.line, info.value.column) == (line, column)


class TestPresentation:
    def test_lens_relations(self):
        P = fundamental_presentation(lens_diagram(3))
        x0, x1, x2 = Gen(0), Gen(1), Gen(2)
        assert P.relations == ((x1, s(x0, x0)), (x2, s(x0, x1)), (x0, s(x0, x2)))

    def test_lens_one(self):
        assert fundamental_presentation(lens_diagram(1)).relations == ((Gen(0), s(Gen(0), Gen(0))),)

    def test_positive_crossing_uses_inverse(self):
        D = VirtualDiagram(2, (Crossing(1, 0, 0, 1), Crossing(1, 0, 1, 0)))
        P = fundamental_presentation(D)
        assert P.relations[0] == (Gen(1), si(Gen(0), Gen(0)))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_elimination_reaches_lens_presentation(self, n):
        P = fundamental_presentation(lens_diagram(n), eliminate=True)
        assert P == lens_presentation(n)
        _, words = eliminate_generators(fundamental_presentation(lens_diagram(n)))
        assert words == tuple(s_power(Gen(0), Gen(0), i) for i in range(n))

    def test_free_diagram(self):
        D = VirtualDiagram(1, (), override=True)
        P = fundamental_presentation(D)
        assert P.relations == ()
        assert not finite_quotient(P, max_words=500, max_cosets=500).finite

    @settings(max_examples=30, deadline=None)
    @given(diagrams(3))
    def test_elimination_preserves_quotient(self, D):
        full = finite_quotient(fundamental_presentation(D), max_words=2000, max_cosets=2000, cross_check=False)
        small = finite_quotient(fundamental_presentation(D, eliminate=True), max_words=2000, max_cosets=2000, cross_check=False)
        assert full.finite == small.finite
        if full.finite:
            assert full.order == small.order


class TestColorings:
    def test_lens3_by_z6(self):
        assert count_colorings(lens_diagram(3), r_of_group(cyclic_group(6))).count == 3

    @pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(1, 5)])
    def test_trivial_quandle(self, n, k):
        D = lens_diagram(n)
        R = trivial_quandle(k)
        assert count_colorings(D, R).count == k == len(oracles.colorings(n, as_tuples(D), R.table))

    def test_distinguishes_lens_two_and_three(self):
        R = r_of_group(cyclic_group(2))
        assert count_colorings(lens_diagram(2), R).count == 2
        assert count_colorings(lens_diagram(3), R).count == 1

    def test_not_risandle(self):
        with pytest.raises(NotRisandleError):
            count_colorings(lens_diagram(2), constant_action(2, (1, 0)))

    def test_listing(self):
        R = r_of_group(cyclic_group(4))
        res = count_colorings(lens_diagram(2), R, list_colorings=True)
        assert res.count == len(res.colorings) == 2
        assert all(is_coloring(lens_diagram(2), R, c) for c in res.colorings)
        assert sorted(res.colorings) == sorted(oracles.colorings(2, as_tuples(lens_diagram(2)), R.table))
        with pytest.raises(BudgetExceededError):
            count_colorings(lens_diagram(2), R, list_colorings=True, budget=1)

    @settings(max_examples=60, deadline=None)
    @given(diagrams(4), st.sampled_from([spec for spec, _ in small_groups() if spec != "S3"]))
    def test_matches_brute_force(self, D, spec):
        R = r_of_group(dict(small_groups())[spec])
        found = sorted(iter_colorings(D, R))
        assert found == sorted(oracles.colorings(D.arc_count, as_tuples(D), R.table))

    @settings(max_examples=40, deadline=None)
    @given(diagrams(4), st.permutations(range(4)))
    def test_invariant_under_relabeling(self, D, perm):
        phi = [p for p in perm if p < D.arc_count]
        R = r_of_group(cyclic_group(3))
        assert count_colorings(D, R).count == count_colorings(D.relabel(phi), R).count

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("spec,G", small_groups())
    def test_equals_homs_out_of_quotient(self, n, spec, G):
        R = r_of_group(G)
        q = finite_quotient(fundamental_presentation(lens_diagram(n)))
        assert count_colorings(lens_diagram(n), R).count == count_homomorphisms(q.structure, R)

    def test_gcd_table(self):
        for n, m in itertools.product(range(1, 11), repeat=2):
            assert count_colorings(lens_diagram(n), r_of_group(cyclic_group(m))).count == math.gcd(n, m)
