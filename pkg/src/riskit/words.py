"""Words of the free risandle, the map into free groups, and word equality.

A word is a generator ``x_i`` or an application ``s_a(b)`` / ``s_a^{-1}(b)``.
Text syntax: ``x0``, ``s[a](b)``, ``si[a](b)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BoundExceededError, RiskitError, WordSyntaxError
from .todd_coxeter import (
    DEFAULT_MAX_COSETS,
    GroupPresentation,
    GroupWord,
    evaluate_word,
    free_reduce,
    invert_word,
    todd_coxeter,
)

DEFAULT_DEPTH = 6
DEFAULT_NODE_BUDGET = 200_000
WORK_PER_NODE = 4  # rule applications allowed per unit of node budget


class Word:
    __slots__ = ()

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True, repr=False)
class Gen(Word):
    index: int

    def __repr__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True, repr=False)
class Apply(Word):
    """``s_op(target)`` when ``power == 1``; ``s_op^{-1}(target)`` when ``power == -1``."""

    op: Word
    target: Word
    power: int = 1

    def __post_init__(self):
        if self.power not in (1, -1):
            raise RiskitError(f"power must be +1 or -1, got {self.power}")

    def __repr__(self) -> str:
        return format_word(self)


def x(i: int) -> Gen:
    return Gen(i)


def s(a: Word, b: Word) -> Apply:
    return Apply(a, b, 1)


def si(a: Word, b: Word) -> Apply:
    return Apply(a, b, -1)


def s_power(a: Word, b: Word, k: int) -> Word:
    """``s_a^k(b)``; negative ``k`` applies the inverse translation."""
    w = b
    for _ in range(abs(k)):
        w = Apply(a, w, 1 if k > 0 else -1)
    return w


def max_generator(w: Word) -> int:
    """Largest generator index in ``w``."""
    stack, best = [w], -1
    while stack:
        u = stack.pop()
        if isinstance(u, Gen):
            best = max(best, u.index)
        else:
            stack.append(u.op)
            stack.append(u.target)
    return best


def word_depth(w: Word) -> int:
    if isinstance(w, Gen):
        return 0
    return 1 + max(word_depth(w.op), word_depth(w.target))


def substitute(w: Word, mapping: dict[int, Word]) -> Word:
    """Replace generators by words."""
    if isinstance(w, Gen):
        return mapping.get(w.index, w)
    return Apply(substitute(w.op, mapping), substitute(w.target, mapping), w.power)


# -- text syntax ---------------------------------------------------------------

def format_word(w: Word) -> str:
    if isinstance(w, Gen):
        return f"x{w.index}"
    head = "s" if w.power == 1 else "si"
    return f"{head}[{format_word(w.op)}]({format_word(w.target)})"


def parse_word(text: str) -> Word:
    parser = _Parser(text)
    w = parser.word()
    parser.skip()
    if parser.pos != len(text):
        parser.fail("trailing input")
    return w


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise WordSyntaxError(f"{msg} at column {self.pos + 1} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            self.fail(f"expected {ch!r}")
        self.pos += len(ch)

    def word(self) -> Word:
        self.skip()
        t = self.text
        if t.startswith("x", self.pos):
            self.pos += 1
            start = self.pos
            while self.pos < len(t) and t[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.fail("expected generator index")
            return Gen(int(t[start:self.pos]))
        if t.startswith("s", self.pos):
            power = -1 if t.startswith("si", self.pos) else 1
            self.pos += 2 if power == -1 else 1
            self.expect("[")
            op = self.word()
            self.expect("]")
            self.expect("(")
            target = self.word()
            self.expect(")")
            return Apply(op, target, power)
        self.fail("expected a word")


# -- free groups ----------------------------------------------------------------

@dataclass(frozen=True)
class FreeGroupElt:
    """Freely reduced word; letter ``i+1`` is ``e_i`` and ``-(i+1)`` its inverse."""

    letters: GroupWord = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __mul__(self, other: "FreeGroupElt") -> "FreeGroupElt":
        return FreeGroupElt(self.letters + other.letters)

    def inverse(self) -> "FreeGroupElt":
        return FreeGroupElt(invert_word(self.letters))

    def is_identity(self) -> bool:
        return not self.letters

    @classmethod
    def generator(cls, i: int, power: int = 1) -> "FreeGroupElt":
        a = i + 1 if power > 0 else -(i + 1)
        return cls((a,) * abs(power))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"e{abs(a) - 1}" + ("" if a > 0 else "^-1") for a in self.letters)


def gamma(w: Word) -> FreeGroupElt:
    """Image in the free group: ``x_i -> e_i``, ``s_a(b) -> γ(b)γ(a)^{-1}``, ``s_a^{-1}(b) -> γ(b)γ(a)``."""
    if isinstance(w, Gen):
        return FreeGroupElt((w.index + 1,))
    ga = gamma(w.op)
    return gamma(w.target) * (ga.inverse() if w.power == 1 else ga)


def orbit_signature(w: Word) -> tuple[int, FreeGroupElt]:
    """Evaluate ``w`` in the risandle of pairs (generator, free-group element).

    That structure has ``s_{(h, v)}(g, u) = (g, e_h v^{-1} u)``; it is a
    risandle generated by the pairs ``(g, 1)``, so words with different
    signatures are different elements of the free risandle.
    """
    if isinstance(w, Gen):
        return w.index, FreeGroupElt()
    base, u = orbit_signature(w.target)
    ga = gamma(w.op)
    return base, (ga if w.power == 1 else ga.inverse()) * u


def one_gen_normal_form(w: Word) -> int:
    """The ``k`` with ``w ≡ s_x^k(x)`` over a one-letter alphabet.

    Uses ``s_{s_x^k(x)} = s_x^{1-k}``, so ``s_a(b)`` has form
    ``nf(b) + 1 - nf(a)``.
    """
    if max_generator(w) > 0:
        raise RiskitError("one_gen_normal_form needs a word over the single generator x0")
    if isinstance(w, Gen):
        return 0
    shift = 1 - one_gen_normal_form(w.op)
    return one_gen_normal_form(w.target) + (shift if w.power == 1 else -shift)


# -- congruence closure -----------------------------------------------------------

class CongruenceClosure:
    """Hash-consed words with a union-find congruence.

    A session is mutable; use one per thread.  ``saturate`` applies rounds of
    ground instances of the inverse laws and of the exchange law, oriented so
    that compound translation indices are pushed inward:

    * ``s_a^{∓1}(s_a^{±1}(y)) = y``
    * ``s_{s_x(z)}(s_x(y)) = s_z(y)``
    * ``s_{s_x(z)}(y) = s_z(s_x^{-1}(y))`` and ``s_{s_x^{-1}(z)}(y) = s_z(s_x(y))``
    * ``s^{-1}_{s_x(z)}(y) = s_x(s_z^{-1}(y))`` and ``s^{-1}_{s_x^{-1}(z)}(y) = s_x^{-1}(s_z^{-1}(y))``

    All are consequences of the defining laws, so every merge is sound.
    """

    def __init__(self, node_budget: int = DEFAULT_NODE_BUDGET):
        self.node_budget = node_budget
        self.nodes: list[tuple[int, int, int]] = []  # (op, target, power); op=-1 for generators
        self.ids: dict[tuple[int, int, int], int] = {}
        self.parent: list[int] = []
        self.uses: list[list[int]] = []
        self.signatures: dict[tuple[int, int, int], int] = {}
        self.exhausted = False
        self.merges = 0
        self.work = 0
        self.work_budget = WORK_PER_NODE * node_budget
        self._words: dict[int, Word] = {}

    # terms
    def _node(self, key: tuple[int, int, int]) -> int | None:
        n = self.ids.get(key)
        if n is not None:
            return n
        if len(self.nodes) >= self.node_budget:
            self.exhausted = True
            return None
        n = len(self.nodes)
        self.nodes.append(key)
        self.ids[key] = n
        self.parent.append(n)
        self.uses.append([])
        op, t, p = key
        if op >= 0:
            self.uses[self.find(op)].append(n)
            self.uses[self.find(t)].append(n)
            sig = (self.find(op), self.find(t), p)
            other = self.signatures.get(sig)
            if other is None:
                self.signatures[sig] = n
            else:
                self._union(n, other)
        return n

    def add(self, w: Word) -> int:
        if isinstance(w, Gen):
            n = self._node((-1, w.index, 0))
        else:
            op = self.add(w.op)
            t = self.add(w.target)
            n = self._node((op, t, w.power))
        if n is None:
            raise BoundExceededError(f"node budget {self.node_budget} exhausted")
        return n

    def word(self, n: int) -> Word:
        w = self._words.get(n)
        if w is None:
            op, t, p = self.nodes[n]
            w = Gen(t) if op < 0 else Apply(self.word(op), self.word(t), p)
            self._words[n] = w
        return w

    # union-find
    def find(self, n: int) -> int:
        p = self.parent
        root = n
        while p[root] != root:
            root = p[root]
        while p[n] != root:
            p[n], n = root, p[n]
        return root

    def _union(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            ra, rb = self.find(a), self.find(b)
            if ra == rb:
                continue
            if len(self.uses[ra]) < len(self.uses[rb]):
                ra, rb = rb, ra
            self.parent[rb] = ra
            self.merges += 1
            moved, self.uses[rb] = self.uses[rb], []
            for u in moved:
                op, t, p = self.nodes[u]
                sig = (self.find(op), self.find(t), p)
                other = self.signatures.get(sig)
                if other is None:
                    self.signatures[sig] = u
                elif self.find(other) != self.find(u):
                    pending.append((u, other))
            self.uses[ra].extend(moved)

    def merge(self, w1: Word, w2: Word) -> None:
        self._union(self.add(w1), self.add(w2))

    def equivalent(self, w1: Word, w2: Word) -> bool:
        return self.find(self.add(w1)) == self.find(self.add(w2))

    def partition(self) -> list[frozenset[Word]]:
        classes: dict[int, list[Word]] = {}
        for n in range(len(self.nodes)):
            classes.setdefault(self.find(n), []).append(self.word(n))
        return [frozenset(ws) for _, ws in sorted(classes.items())]

    # rewriting
    def _mk(self, op: int, t: int, p: int) -> int | None:
        op, t = self.find(op), self.find(t)
        existing = self.signatures.get((op, t, p))
        if existing is not None:
            return existing
        return self._node((op, t, p))

    def _class_signatures(self) -> dict[int, list[tuple[int, int, int]]]:
        """Distinct ``(op class, target class, power)`` triples per class."""
        seen: set[tuple[int, int, int]] = set()
        out: dict[int, list[tuple[int, int, int]]] = {}
        for n, (op, t, p) in enumerate(self.nodes):
            if op < 0:
                continue
            sig = (self.find(op), self.find(t), p)
            if sig not in seen:
                seen.add(sig)
                out.setdefault(self.find(n), []).append(sig)
        return out

    def _round(self) -> None:
        classes = self._class_signatures()
        work = [(c, sig) for c, sigs in classes.items() for sig in sigs]
        for c, (a, y, p) in work:
            self.work += len(classes.get(y, ())) + len(classes.get(a, ()))
            if self.work > self.work_budget:
                self.exhausted = True
            if self.exhausted:
                return
            # inverse laws
            for a2, y2, q in classes.get(y, ()):
                if q == -p and self.find(a2) == self.find(a):
                    self._union(c, y2)
            # exchange law with a compound translation index
            for xx, z, q in classes.get(a, ()):
                if p == 1:
                    inner = self._mk(xx, y, -q)
                    new = None if inner is None else self._mk(z, inner, 1)
                else:
                    inner = self._mk(z, y, -1)
                    new = None if inner is None else self._mk(xx, inner, q)
                if new is not None:
                    self._union(c, new)
                if p == 1 and q == 1:
                    for x2, y2, r in classes.get(y, ()):
                        if r == 1 and self.find(x2) == self.find(xx):
                            lit = self._mk(z, y2, 1)
                            if lit is not None:
                                self._union(c, lit)

    def saturate(self, depth: int) -> int:
        """Run up to ``depth`` rounds; stops early once a round changes nothing.

        Returns the number of rounds performed.
        """
        for k in range(depth):
            before = (len(self.nodes), self.merges)
            self._round()
            if (len(self.nodes), self.merges) == before:
                return k + 1
        return depth


def rewrite_close(
    seed_words: Iterable[Word],
    extra_relations: Sequence[tuple[Word, Word]] = (),
    depth: int = DEFAULT_DEPTH,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CongruenceClosure:
    """Congruence closure of the seeds plus relations after ``depth`` rounds.

    The returned session's :meth:`~CongruenceClosure.partition` is the
    partition of every encountered word.  Running out of node budget is not
    an error; the partition is then simply coarser-than-possible.
    """
    cc = CongruenceClosure(node_budget)
    for w in seed_words:
        cc.add(w)
    for lhs, rhs in extra_relations:
        cc.merge(lhs, rhs)
    cc.saturate(depth)
    return cc


# -- equality verdicts -------------------------------------------------------------

class Verdict(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class EqualityVerdict:
    verdict: Verdict
    reason: str = ""
    depth: int | None = None

    @property
    def equal(self) -> bool:
        return self.verdict is Verdict.EQUAL

    @property
    def distinct(self) -> bool:
        return self.verdict is Verdict.DISTINCT


def relation_relator(lhs: Word, rhs: Word) -> GroupWord:
    return free_reduce(gamma(lhs).letters + invert_word(gamma(rhs).letters))


def words_equal(
    w1: Word,
    w2: Word,
    relations: Sequence[tuple[Word, Word]] = (),
    depth: int = DEFAULT_DEPTH,
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> EqualityVerdict:
    """Sound three-valued equality in the risandle presented by ``relations``.

    ``DISTINCT`` comes from evaluating both words in a risandle where they
    differ (the free group, the pair model, or the finite group presented by
    the relations); ``EQUAL`` only from the congruence closure.
    """
    if w1 == w2:
        return EqualityVerdict(Verdict.EQUAL, "identical")
    g1, g2 = gamma(w1), gamma(w2)
    if not relations:
        if g1 != g2:
            return EqualityVerdict(Verdict.DISTINCT, "free group images differ")
        if orbit_signature(w1) != orbit_signature(w2):
            return EqualityVerdict(Verdict.DISTINCT, "pair-model images differ")
    else:
        k = 1 + max(max_generator(w) for w in (w1, w2, *[u for r in relations for u in r]))
        P = GroupPresentation(k, tuple(relation_relator(a, b) for a, b in relations))
        try:
            result = todd_coxeter(P, max_cosets)
        except BoundExceededError:
            result = None
        if result is not None and evaluate_word(result, g1.letters) != evaluate_word(result, g2.letters):
            return EqualityVerdict(Verdict.DISTINCT, "images differ in the presented group")
    cc = rewrite_close([w1, w2], relations, depth)
    if cc.equivalent(w1, w2):
        return EqualityVerdict(Verdict.EQUAL, "congruence closure", depth)
    return EqualityVerdict(Verdict.UNKNOWN, "depth exhausted", depth)
