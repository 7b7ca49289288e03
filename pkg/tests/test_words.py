from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riskit import (
    Apply,
    CongruenceClosure,
    FreeGroupElt,
    Gen,
    Verdict,
    format_word,
    gamma,
    one_gen_normal_form,
    orbit_signature,
    parse_word,
    rewrite_close,
    s,
    s_power,
    si,
    words_equal,
    x,
)
from riskit.errors import BoundExceededError, RiskitError, WordSyntaxError

X, Y, Z = x(0), x(1), x(2)


def word_strategy(alphabet: int, depth: int):
    leaves = st.integers(0, alphabet - 1).map(Gen)
    return st.recursive(
        leaves,
        lambda inner: st.builds(Apply, inner, inner, st.sampled_from([1, -1])),
        max_leaves=2**depth,
    )


class TestSyntax:
    @pytest.mark.parametrize("text", ["x0", "s[x0](x1)", "si[s[x0](x0)](x12)", "s[si[x1](x0)](s[x0](x0))"])
    def test_round_trip(self, text):
        assert format_word(parse_word(text)) == text

    @given(word_strategy(3, 4))
    def test_printer_parser_inverse(self, w):
        assert parse_word(format_word(w)) == w

    def test_whitespace(self):
        assert parse_word(" s [ x0 ] ( x1 ) ") == s(X, Y)

    @pytest.mark.parametrize("text", ["", "y0", "x", "s[x0]", "s[x0](x1", "x0 x1", "t[x0](x0)"])
    def test_errors(self, text):
        with pytest.raises(WordSyntaxError):
            parse_word(text)

    def test_bad_power(self):
        with pytest.raises(RiskitError):
            Apply(X, X, 2)


class TestGamma:
    def test_generator(self):
        assert gamma(X) == FreeGroupElt((1,))

    def test_self_application_is_trivial(self):
        assert gamma(s(X, X)).is_identity()

    def test_power(self):
        assert gamma(s_power(X, X, 4)) == FreeGroupElt.generator(0, -3)

    def test_inverse_application(self):
        assert gamma(si(Y, X)) == FreeGroupElt((1, 2))

    def test_free_group_arithmetic(self):
        e = FreeGroupElt.generator(0)
        f = FreeGroupElt.generator(1)
        assert (e * f * f.inverse() * e.inverse()).is_identity()
        assert str(e * f.inverse()) == "e0 e1^-1"


class TestNormalForm:
    @pytest.mark.parametrize("w,k", [(X, 0), (s(X, X), 1), (s(s(X, X), X), 0), (si(X, X), -1), (s_power(X, X, 7), 7)])
    def test_examples(self, w, k):
        assert one_gen_normal_form(w) == k

    @pytest.mark.parametrize("k", range(-6, 7))
    def test_translation_index_rule(self, k):
        # s_{s_x^k(x)} acts as s_x^{1-k}
        a = s(s_power(X, X, k), X)
        assert one_gen_normal_form(a) == 1 - k
        # each saturation round unfolds one application, so allow |k| + 2 rounds
        assert words_equal(a, s_power(X, X, 1 - k), depth=abs(k) + 2).verdict is Verdict.EQUAL

    def test_rejects_bigger_alphabet(self):
        with pytest.raises(RiskitError):
            one_gen_normal_form(s(Y, X))

    @settings(max_examples=200, deadline=None)
    @given(word_strategy(1, 4))
    def test_matches_gamma_and_signature(self, w):
        k = one_gen_normal_form(w)
        assert gamma(w) == FreeGroupElt.generator(0, 1 - k)
        assert orbit_signature(w) == orbit_signature(s_power(X, X, k))


class TestRewriteClose:
    def test_inverse_law(self):
        cc = rewrite_close([si(X, s(X, Y)), Y], depth=1)
        assert cc.equivalent(si(X, s(X, Y)), Y)
        cc = rewrite_close([s(X, si(X, Y)), Y], depth=1)
        assert cc.equivalent(s(X, si(X, Y)), Y)

    def test_exchange_law(self):
        cc = rewrite_close([s(Z, Y), s(s(X, Z), s(X, Y))], depth=1)
        assert cc.equivalent(s(Z, Y), s(s(X, Z), s(X, Y)))

    def test_does_not_merge_distinct(self):
        cc = rewrite_close([X, s(X, X)], depth=5)
        assert not cc.equivalent(X, s(X, X))

    def test_extra_relations_propagate_by_congruence(self):
        cc = rewrite_close([s(X, Z), s(Y, Z)], extra_relations=[(X, Y)], depth=0)
        assert cc.equivalent(s(X, Z), s(Y, Z))

    def test_partition_covers_seeds(self):
        cc = rewrite_close([si(X, s(X, Y)), Y, Z], depth=2)
        blocks = cc.partition()
        assert sum(len(b) for b in blocks) == len(cc.nodes)
        assert any({Y, si(X, s(X, Y))} <= b for b in blocks)

    def test_monotone_in_depth(self):
        seeds = [s(s(X, Y), Z), s(Y, si(X, Z)), s_power(X, Y, 2), si(s(Y, X), s(Z, Y))]
        previous = None
        for d in range(5):
            cc = rewrite_close(seeds, depth=d)
            merged = {(i, j) for i in range(len(seeds)) for j in range(len(seeds)) if cc.equivalent(seeds[i], seeds[j])}
            if previous is not None:
                assert previous <= merged
            previous = merged

    def test_node_budget(self):
        cc = CongruenceClosure(node_budget=3)
        with pytest.raises(BoundExceededError):
            cc.add(s(s(X, Y), Z))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(word_strategy(3, 3), min_size=1, max_size=6), st.integers(0, 4))
    def test_merges_respect_gamma(self, seeds, depth):
        cc = rewrite_close(seeds, depth=depth, node_budget=20_000)
        for block in cc.partition():
            block = list(block)
            assert len({gamma(w) for w in block}) == 1
            assert len({orbit_signature(w) for w in block}) == 1


class TestWordsEqual:
    def test_identical(self):
        assert words_equal(s(X, Y), s(X, Y)).verdict is Verdict.EQUAL

    def test_gamma_distinguishes(self):
        assert words_equal(X, s(X, X)).verdict is Verdict.DISTINCT

    def test_signature_distinguishes_when_gamma_does_not(self):
        a, b = X, si(X, s(Y, Y))
        assert gamma(a) == gamma(b)
        assert orbit_signature(a) != orbit_signature(b)
        assert words_equal(a, b).verdict is Verdict.DISTINCT

    def test_lens_relation(self):
        for n in (2, 3, 4, 6):
            v = words_equal(s_power(X, X, n), X, relations=[(X, s_power(X, X, n))])
            assert v.verdict is Verdict.EQUAL

    def test_distinct_modulo_finite_group(self):
        rel = [(X, s_power(X, X, 4))]
        v = words_equal(X, s_power(X, X, 2), relations=rel)
        assert v.verdict is Verdict.DISTINCT

    def test_one_generator_family_pairwise_distinct(self):
        ws = [s_power(X, X, k) for k in range(-20, 21)]
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                assert words_equal(ws[i], ws[j]).verdict is Verdict.DISTINCT

    @settings(max_examples=40, deadline=None)
    @given(word_strategy(2, 3), word_strategy(2, 3))
    def test_verdicts_stable_across_depth(self, a, b):
        verdicts = {words_equal(a, b, depth=d).verdict for d in (0, 2, 4)}
        assert not {Verdict.EQUAL, Verdict.DISTINCT} <= verdicts
