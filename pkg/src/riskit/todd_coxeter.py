"""Group presentations and HLT coset enumeration.

Letters of a group word are signed integers: ``i+1`` is generator ``i`` and
``-(i+1)`` its inverse.  Inside the coset table, letter ``i+1`` is column
``2i`` and its inverse column ``2i+1``, so ``col ^ 1`` is the inverse column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BoundExceededError, RiskitError
from .groups import FiniteGroup

DEFAULT_MAX_COSETS = 10_000

Letter = int
GroupWord = tuple[Letter, ...]


def free_reduce(word: Sequence[Letter]) -> GroupWord:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(word: Sequence[Letter]) -> GroupWord:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word: Sequence[Letter]) -> GroupWord:
    return tuple(-a for a in reversed(word))


def letter_to_column(a: Letter) -> int:
    return 2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1


@dataclass(frozen=True)
class GroupPresentation:
    """Generators ``0..generator_count-1``; each relator reads ``word = 1``.

    Relators are stored cyclically reduced with empty ones dropped.
    """

    generator_count: int
    relators: tuple[GroupWord, ...] = ()

    def __post_init__(self):
        k = self.generator_count
        if k < 0:
            raise RiskitError("generator_count must be non-negative")
        rels = []
        for r in self.relators:
            for a in r:
                if a == 0 or abs(a) > k:
                    raise RiskitError(f"letter {a} does not name one of {k} generators")
            r = cyclic_reduce(r)
            if r and r not in rels:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    def to_text(self) -> str:
        lines = [f"gens: {self.generator_count}"]
        lines += [" ".join(str(a) for a in r) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GroupPresentation":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or not lines[0].startswith("gens:"):
            raise RiskitError("presentation must start with 'gens: k'")
        k = int(lines[0].split(":", 1)[1])
        return cls(k, tuple(tuple(int(t) for t in ln.split()) for ln in lines[1:]))


class CosetTable:
    """Coset table with coincidence handling (union-find on coset numbers).

    Entries are ``-1`` when undefined.  ``max_cosets`` caps the number of live
    cosets; exceeding it raises :class:`BoundExceededError`.
    """

    def __init__(self, generator_count: int, max_cosets: int = DEFAULT_MAX_COSETS):
        self.ncols = 2 * generator_count
        self.max_cosets = max_cosets
        self.rows: list[list[int]] = []
        self.parent: list[int] = []
        self.live = 0

    def new_coset(self) -> int:
        if self.live >= self.max_cosets:
            raise BoundExceededError(f"coset budget {self.max_cosets} exhausted")
        c = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.parent.append(c)
        self.live += 1
        return c

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, x: int) -> int:
        d = self.new_coset()
        self.rows[c][x] = d
        self.rows[d][x ^ 1] = c
        return d

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        rows = self.rows
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = rows[e][x]
                if f < 0:
                    continue
                rows[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if rows[e1][x] >= 0:
                    self._merge(f1, rows[e1][x], queue)
                elif rows[f1][x ^ 1] >= 0:
                    self._merge(e1, rows[f1][x ^ 1], queue)
                else:
                    rows[e1][x] = f1
                    rows[f1][x ^ 1] = e1

    def trace(self, c: int, cols: Sequence[int]) -> int:
        """Follow ``cols`` from ``c``; -1 if an entry is missing."""
        for x in cols:
            c = self.rows[c][x]
            if c < 0:
                return -1
        return c

    def trace_define(self, c: int, cols: Sequence[int]) -> int:
        """Follow ``cols`` from ``c``, defining new cosets where needed."""
        for x in cols:
            c = self.rep(c)
            d = self.rows[c][x]
            c = self.define(c, x) if d < 0 else d
        return self.rep(c)

    def scan_and_fill(self, c: int, cols: Sequence[int]) -> None:
        rows = self.rows
        f = b = c
        i, j = 0, len(cols) - 1
        while True:
            while i <= j and rows[f][cols[i]] >= 0:
                f = rows[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][cols[j] ^ 1] >= 0:
                b = rows[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][cols[i]] = b
                rows[b][cols[i] ^ 1] = f
                return
            self.define(f, cols[i])

    def hlt(self, relators: Sequence[Sequence[int]]) -> None:
        """Process every coset in creation order: scan each relator, then fill the row."""
        c = 0
        while c < len(self.rows):
            for r in relators:
                if not self.alive(c):
                    break
                self.scan_and_fill(c, r)
            if self.alive(c):
                for x in range(self.ncols):
                    if self.rows[c][x] < 0:
                        self.define(c, x)
            c += 1

    def standardize(self, bases: Sequence[int]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...], list[tuple[int, int]]]:
        """Renumber live cosets breadth-first from ``bases``.

        Returns ``(rows, base_images, tree)`` where ``tree[k] = (parent, column)``
        for every non-root coset ``k`` (roots have parent -1).
        """
        order: list[int] = []
        pos: dict[int, int] = {}
        tree: list[tuple[int, int]] = []
        base_images = []
        for b in bases:
            r = self.rep(b)
            if r not in pos:
                pos[r] = len(order)
                order.append(r)
                tree.append((-1, -1))
            base_images.append(pos[r])
        i = 0
        while i < len(order):
            c = order[i]
            for x in range(self.ncols):
                d = self.rows[c][x]
                if d < 0:
                    raise RiskitError("standardize called on an incomplete table")
                d = self.rep(d)
                if d not in pos:
                    pos[d] = len(order)
                    order.append(d)
                    tree.append((i, x))
            i += 1
        rows = tuple(tuple(pos[self.rep(self.rows[c][x])] for x in range(self.ncols)) for c in order)
        return rows, tuple(base_images), tree


@dataclass(frozen=True)
class CosetEnumeration:
    """Completed enumeration of the trivial subgroup (the regular representation).

    ``coset_table[c][2i]`` is coset ``c`` times generator ``i``; coset 0 is the
    identity.  ``group`` has element ``c`` equal to the group element reaching
    coset ``c`` from coset 0.
    """

    presentation: GroupPresentation
    coset_table: tuple[tuple[int, ...], ...]
    group: FiniteGroup
    generator_images: tuple[int, ...]


def todd_coxeter(P: GroupPresentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetEnumeration:
    """Enumerate cosets of the trivial subgroup; raises BoundExceededError past the budget."""
    if max_cosets < 1:
        raise RiskitError("max_cosets must be at least 1")
    ct = CosetTable(P.generator_count, max_cosets)
    ct.new_coset()
    cols = [[letter_to_column(a) for a in r] for r in P.relators]
    ct.hlt(cols)
    rows, _, tree = ct.standardize([0])
    n = len(rows)
    words: list[list[int]] = [[] for _ in range(n)]
    for k in range(1, n):
        parent, x = tree[k]
        words[k] = words[parent] + [x]

    def follow(c: int, w: Sequence[int]) -> int:
        for x in w:
            c = rows[c][x]
        return c

    mul = tuple(tuple(follow(i, words[j]) for j in range(n)) for i in range(n))
    G = FiniteGroup(mul, 0)
    images = tuple(rows[0][2 * i] for i in range(P.generator_count))
    return CosetEnumeration(P, rows, G, images)


def evaluate_word(result: CosetEnumeration, word: Sequence[Letter]) -> int:
    """Group element of ``word`` in an enumerated group."""
    c = 0
    for a in word:
        c = result.coset_table[c][letter_to_column(a)]
    return c
