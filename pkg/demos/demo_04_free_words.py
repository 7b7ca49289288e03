"""
Words in the free risandle
==========================

Words are trees of generators and translations.  Free-group images, the
one-generator normal form and a bounded congruence closure decide many
equalities; the rest stay unknown.
"""

from riskit import gamma, one_gen_normal_form, parse_word, s, s_power, si, words_equal, x

X, Y = x(0), x(1)

w = parse_word("s[s[x0](x0)](x0)")
print(w, "has normal form", one_gen_normal_form(w))

for k in range(-3, 4):
    print(f"s_x^{k}(x): gamma = {gamma(s_power(X, X, k))}")

# The translation indexed by s_x^k(x) acts as s_x^(1-k).
print(words_equal(s(s_power(X, X, 3), X), s_power(X, X, -2)))

# Same free-group image, different orbit: still provably distinct.
print(words_equal(X, si(X, s(Y, Y))))

# With the relation x = s_x^3(x) the presented group is Z/3.
rel = [(X, s_power(X, X, 3))]
print(words_equal(s_power(X, X, 4), s(X, X), relations=rel))
print(words_equal(s_power(X, X, 2), X, relations=rel))
