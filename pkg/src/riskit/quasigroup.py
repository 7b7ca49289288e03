"""Finite right quasigroups stored as operation tables.

Convention used throughout the package: ``table[y][x] = y ▷ x = s_x(y)``.
Column ``x`` of the table is the right translation ``s_x``.  Elements are the
dense indices ``0..order-1``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BoundExceededError,
    ColumnNotPermutationError,
    EmptyStructureError,
    EntryOutOfRangeError,
    InvalidTableError,
    NotSquareError,
)

Perm = tuple[int, ...]

DEFAULT_ENUMERATION_BOUND = 5


# -- permutations -----------------------------------------------------------

def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p ∘ q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def is_permutation(images: Sequence[int], degree: int) -> bool:
    return len(images) == degree and sorted(images) == list(range(degree))


@dataclass(frozen=True)
class PermutationGroup:
    """A finite permutation group listed element by element.

    ``elements`` is in breadth-first discovery order from the identity, so
    ``elements[0]`` is always the identity.
    """

    degree: int
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]
    empty: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self.index


def closure(generators: Iterable[Perm], degree: int) -> PermutationGroup:
    """Breadth-first closure of ``generators`` under composition."""
    gens: list[Perm] = []
    for g in generators:
        g = tuple(g)
        if g not in gens:
            gens.append(g)
    ident = identity_perm(degree)
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        p = elements[i]
        i += 1
        for g in gens:
            q = compose(p, g)
            if q not in seen:
                seen.add(q)
                elements.append(q)
    return PermutationGroup(degree, tuple(elements), tuple(gens))


# -- the structure ----------------------------------------------------------

def _validate(table: tuple[tuple[int, ...], ...]) -> None:
    n = len(table)
    for row in table:
        if len(row) != n:
            raise NotSquareError(f"table has {n} rows but a row of length {len(row)}")
    for y, row in enumerate(table):
        for x, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or not 0 <= v < n:
                raise EntryOutOfRangeError(f"entry table[{y}][{x}] = {v!r} not in 0..{n - 1}")
    for x in range(n):
        if len({table[y][x] for y in range(n)}) != n:
            raise ColumnNotPermutationError(x)


@dataclass(frozen=True)
class FiniteRightQuasigroup:
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        _validate(table)

    @property
    def order(self) -> int:
        return len(self.table)

    def op(self, y: int, x: int) -> int:
        """``y ▷ x``."""
        return self.table[y][x]

    @cached_property
    def columns(self) -> tuple[Perm, ...]:
        """Right translations; ``columns[x] == s_x``."""
        n = self.order
        return tuple(tuple(self.table[y][x] for y in range(n)) for x in range(n))

    def translation(self, x: int) -> Perm:
        return self.columns[x]

    @cached_property
    def inverse_table(self) -> tuple[tuple[int, ...], ...]:
        """``inverse_table[y][x] = s_x^{-1}(y)``."""
        n = self.order
        inv = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                inv[self.table[y][x]][x] = y
        return tuple(tuple(r) for r in inv)

    def inverse_op(self, y: int, x: int) -> int:
        return self.inverse_table[y][x]

    def as_array(self) -> np.ndarray:
        n = self.order
        return np.array(self.table, dtype=np.int64).reshape(n, n)

    def __repr__(self) -> str:
        return f"FiniteRightQuasigroup(order={self.order}, table={[list(r) for r in self.table]})"


def from_table(table: Sequence[Sequence[int]]) -> FiniteRightQuasigroup:
    """Validate a square table (``table[y][x] = y ▷ x``) and wrap it."""
    if isinstance(table, np.ndarray):
        table = table.tolist()
    return FiniteRightQuasigroup(tuple(tuple(r) for r in table))


def from_translations(translations: Sequence[Perm]) -> FiniteRightQuasigroup:
    """Build the structure whose right translations are ``translations``."""
    n = len(translations)
    return FiniteRightQuasigroup(
        tuple(tuple(translations[x][y] for x in range(n)) for y in range(n))
    )


def trivial_quandle(n: int) -> FiniteRightQuasigroup:
    return FiniteRightQuasigroup(tuple(tuple(y for _ in range(n)) for y in range(n)))


def constant_action(n: int, sigma: Perm) -> FiniteRightQuasigroup:
    """Every right translation equal to ``sigma``."""
    return from_translations([tuple(sigma)] * n)


# -- axioms -----------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    is_right_quasigroup: bool
    is_risack: bool
    satisfies_risandle_law: bool
    is_risandle: bool
    is_rack: bool
    is_quandle: bool
    is_trivial_quandle: bool
    is_faithful: bool
    is_quasigroup: bool
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "witnesses"}
        out["witnesses"] = {k: list(v) for k, v in sorted(self.witnesses.items())}
        return out


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def check_axioms(X: FiniteRightQuasigroup) -> AxiomReport:
    """Evaluate every axiom by brute force over all tuples.

    Witness keys: ``risack -> (x, y, z)``, ``risandle_law -> (x,)``,
    ``rack -> (x, a, b)``, ``quandle -> (x,)``, ``trivial_quandle -> (x,)``,
    ``faithful -> (x1, x2)``, ``quasigroup -> (y,)``.  Each is the
    lexicographically first violation.
    """
    n = X.order
    T = X.as_array()
    A = T.T  # A[x, y] = s_x(y)
    witnesses: dict[str, tuple[int, ...]] = {}

    rhs = T[A[:, :, None], A[:, None, :]]  # [x, y, z] -> (y▷x)▷(z▷x)
    risack_w = _first(np.broadcast_to(T[None, :, :], (n, n, n)) != rhs)
    if risack_w is not None:
        witnesses["risack"] = risack_w

    idx = np.arange(n)
    diag = T[idx, idx]
    eq3 = T[diag, T[diag, idx]] if n else idx
    law_w = _first(eq3 != idx)
    if law_w is not None:
        witnesses["risandle_law"] = law_w

    rack_lhs = A[:, T]  # [x, a, b] -> s_x(a▷b)
    rack_w = _first(rack_lhs != rhs)
    if rack_w is not None:
        witnesses["rack"] = rack_w

    quandle_w = _first(diag != idx)
    is_rack = rack_w is None
    if not is_rack:
        witnesses["quandle"] = rack_w[:1]
    elif quandle_w is not None:
        witnesses["quandle"] = quandle_w

    trivial_w = _first((T != idx[:, None]).T)
    if trivial_w is not None:
        witnesses["trivial_quandle"] = trivial_w[:1]

    cols = X.columns
    seen: dict[Perm, int] = {}
    for x, c in enumerate(cols):
        if c in seen:
            witnesses["faithful"] = (seen[c], x)
            break
        seen[c] = x

    for y, row in enumerate(X.table):
        if len(set(row)) != n:
            witnesses["quasigroup"] = (y,)
            break

    is_risack = risack_w is None
    law = law_w is None
    return AxiomReport(
        is_right_quasigroup=True,
        is_risack=is_risack,
        satisfies_risandle_law=law,
        is_risandle=is_risack and law,
        is_rack=is_rack,
        is_quandle=is_rack and quandle_w is None,
        is_trivial_quandle=trivial_w is None,
        is_faithful="faithful" not in witnesses,
        is_quasigroup="quasigroup" not in witnesses,
        witnesses=witnesses,
    )


def is_risandle(X: FiniteRightQuasigroup) -> bool:
    return check_axioms(X).is_risandle


def right_identities(X: FiniteRightQuasigroup) -> frozenset[int]:
    ident = identity_perm(X.order)
    return frozenset(x for x, c in enumerate(X.columns) if c == ident)


def is_faithful(X: FiniteRightQuasigroup) -> bool:
    return len(set(X.columns)) == X.order


def rmult_group(X: FiniteRightQuasigroup, allow_empty: bool = False) -> PermutationGroup:
    """Subgroup of the symmetric group generated by the right translations.

    Order 0 raises :class:`EmptyStructureError` unless ``allow_empty`` is set,
    in which case the trivial group of degree 0 is returned with ``empty=True``.
    """
    if X.order == 0:
        if not allow_empty:
            raise EmptyStructureError("RMult of the empty right quasigroup")
        return PermutationGroup(0, ((),), (), empty=True)
    return closure(X.columns, X.order)


def subrisandle_generated(X: FiniteRightQuasigroup, seeds: Iterable[int]) -> frozenset[int]:
    """Smallest subset containing ``seeds`` closed under ``▷`` and its inverse."""
    members = list(dict.fromkeys(seeds))
    for s in members:
        if not 0 <= s < X.order:
            raise EntryOutOfRangeError(f"seed {s} not an element")
    inside = set(members)
    T, inv = X.table, X.inverse_table
    i = 0
    while i < len(members):
        a = members[i]
        i += 1
        for b in list(members[: i]):
            for c in (T[a][b], T[b][a], inv[a][b], inv[b][a]):
                if c not in inside:
                    inside.add(c)
                    members.append(c)
    return frozenset(inside)


def substructure(X: FiniteRightQuasigroup, subset: Iterable[int]) -> tuple[FiniteRightQuasigroup, tuple[int, ...]]:
    """Restrict ``X`` to a closed ``subset``; returns the relabeled structure and the labels."""
    labels = tuple(sorted(set(subset)))
    pos = {v: i for i, v in enumerate(labels)}
    try:
        table = tuple(tuple(pos[X.table[a][b]] for b in labels) for a in labels)
    except KeyError as exc:
        raise EntryOutOfRangeError(f"subset is not closed under the operation: {exc}") from None
    return FiniteRightQuasigroup(table), labels


def direct_product(X: FiniteRightQuasigroup, Y: FiniteRightQuasigroup) -> FiniteRightQuasigroup:
    """Componentwise product; the pair ``(a, b)`` has index ``a * |Y| + b``."""
    m = Y.order
    pairs = [(a, b) for a in range(X.order) for b in range(m)]
    return FiniteRightQuasigroup(
        tuple(
            tuple(X.table[a][c] * m + Y.table[b][d] for (c, d) in pairs)
            for (a, b) in pairs
        )
    )


def relabel(X: FiniteRightQuasigroup, phi: Sequence[int]) -> FiniteRightQuasigroup:
    """Transport ``X`` along the bijection ``phi`` (old index -> new index)."""
    n = X.order
    table = [[0] * n for _ in range(n)]
    for y in range(n):
        for x in range(n):
            table[phi[y]][phi[x]] = phi[X.table[y][x]]
    return from_table(table)


def is_homomorphism(X: FiniteRightQuasigroup, Y: FiniteRightQuasigroup, phi: Sequence[int]) -> bool:
    if len(phi) != X.order:
        return False
    return all(
        phi[X.table[a][b]] == Y.table[phi[a]][phi[b]]
        for a in range(X.order)
        for b in range(X.order)
    )


# -- homomorphism search ----------------------------------------------------

class _HomSearch:
    """Backtracking over maps X -> Y with forward propagation.

    Assigning ``a -> b`` forces images of ``a ▷ c``, ``c ▷ a`` and the inverse
    operations for every already-assigned ``c``, so after the images of a
    generating set are chosen the whole map is determined.
    """

    def __init__(self, X, Y, injective=False, candidates=None):
        self.n, self.m = X.order, Y.order
        self.st, self.si = X.table, X.inverse_table
        self.dt, self.di = Y.table, Y.inverse_table
        self.injective = injective
        self.candidates = candidates
        self.image = [-1] * self.n
        self.used = [False] * self.m
        self.trail: list[int] = []

    def assign(self, a: int, b: int) -> bool:
        image, used, trail = self.image, self.used, self.trail
        st, si, dt, di = self.st, self.si, self.dt, self.di
        cand = self.candidates
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            cur = image[a]
            if cur >= 0:
                if cur != b:
                    return False
                continue
            if cand is not None and b not in cand[a]:
                return False
            if self.injective and used[b]:
                return False
            image[a] = b
            if self.injective:
                used[b] = True
            trail.append(a)
            for c in trail:
                ic = image[c]
                stack.append((st[a][c], dt[b][ic]))
                stack.append((st[c][a], dt[ic][b]))
                stack.append((si[a][c], di[b][ic]))
                stack.append((si[c][a], di[ic][b]))
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            a = self.trail.pop()
            self.used[self.image[a]] = False
            self.image[a] = -1

    def search(self, start: int = 0) -> Iterator[tuple[int, ...]]:
        a = start
        while a < self.n and self.image[a] >= 0:
            a += 1
        if a == self.n:
            yield tuple(self.image)
            return
        for b in range(self.m):
            mark = len(self.trail)
            if self.assign(a, b):
                yield from self.search(a + 1)
            self.undo(mark)


def iter_homomorphisms(X: FiniteRightQuasigroup, Y: FiniteRightQuasigroup) -> Iterator[tuple[int, ...]]:
    """All homomorphisms ``X -> Y``, lexicographic in the image tuple."""
    yield from _HomSearch(X, Y).search()


def count_homomorphisms(X: FiniteRightQuasigroup, Y: FiniteRightQuasigroup) -> int:
    return sum(1 for _ in iter_homomorphisms(X, Y))


def _element_invariants(X: FiniteRightQuasigroup) -> list[tuple]:
    mult = Counter(X.columns)
    return [
        (cycle_type(c), mult[c], X.table[x][x] == x, X.table[x][x] == X.table[X.table[x][x]][x])
        for x, c in enumerate(X.columns)
    ]


def find_isomorphism(X: FiniteRightQuasigroup, Y: FiniteRightQuasigroup) -> tuple[int, ...] | None:
    """A bijection ``phi`` with ``phi(a ▷ b) = phi(a) ▷ phi(b)``, or ``None``."""
    if X.order != Y.order:
        return None
    if is_faithful(X) != is_faithful(Y) or len(right_identities(X)) != len(right_identities(Y)):
        return None
    ix, iy = _element_invariants(X), _element_invariants(Y)
    if Counter(ix) != Counter(iy):
        return None
    candidates = [frozenset(b for b in range(Y.order) if iy[b] == ix[a]) for a in range(X.order)]
    for phi in _HomSearch(X, Y, injective=True, candidates=candidates).search():
        assert is_homomorphism(X, Y, phi)
        return phi
    return None


# -- enumeration ------------------------------------------------------------

def canonical_form(X: FiniteRightQuasigroup) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least row-major table over all relabelings."""
    n = X.order
    if n <= 1:
        return X.table
    if n > 8:
        raise BoundExceededError(f"canonical form limited to order 8, got {n}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    inv = np.argsort(perms, axis=1)
    T = X.as_array()
    # relabeled[k, a, b] = P_k[T[P_k^{-1}(a), P_k^{-1}(b)]]
    inner = T[inv[:, :, None], inv[:, None, :]]
    relabeled = np.take_along_axis(perms, inner.reshape(len(perms), -1), axis=1)
    order = np.lexsort(relabeled.T[::-1])
    best = relabeled[order[0]].reshape(n, n)
    return tuple(tuple(int(v) for v in row) for row in best)


def iter_right_quasigroups(n: int) -> Iterator[FiniteRightQuasigroup]:
    """Every right quasigroup on ``0..n-1`` (there are ``(n!)^n``)."""
    perms = list(itertools.permutations(range(n)))
    for choice in itertools.product(perms, repeat=n):
        yield from_translations(choice)


def _risack_translations(n: int) -> Iterator[tuple[Perm, ...]]:
    """Assignments ``x -> s_x`` with ``s_z = s_{s_x(z)} s_x`` for all x, z.

    Only the risack law is used as a constraint; the forced assignments are
    ``s_{s_x(z)} = s_z s_x^{-1}`` and ``s_{s_x^{-1}(z)} = s_z s_x``.
    """
    perms = list(itertools.permutations(range(n)))
    pidx = {p: i for i, p in enumerate(perms)}
    inv = [pidx[invert(p)] for p in perms]
    comp = [[pidx[compose(p, q)] for q in perms] for p in perms]
    s = [-1] * n
    trail: list[int] = []

    def assign(x: int, p: int) -> bool:
        stack = [(x, p)]
        while stack:
            x, p = stack.pop()
            if s[x] >= 0:
                if s[x] != p:
                    return False
                continue
            s[x] = p
            trail.append(x)
            for z in trail:
                for a, b in ((x, z), (z, x)):
                    sa, sb = s[a], s[b]
                    stack.append((perms[sa][b], comp[sb][inv[sa]]))
                    stack.append((perms[inv[sa]][b], comp[sb][sa]))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            s[trail.pop()] = -1

    def search(x: int) -> Iterator[tuple[Perm, ...]]:
        while x < n and s[x] >= 0:
            x += 1
        if x == n:
            yield tuple(perms[i] for i in s)
            return
        for p in range(len(perms)):
            mark = len(trail)
            if assign(x, p):
                yield from search(x + 1)
            undo(mark)

    yield from search(0)


def enumerate_risacks(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[FiniteRightQuasigroup]:
    """All risacks on ``0..n-1`` in search order, each re-verified against the risack law."""
    if n > bound:
        raise BoundExceededError(f"enumeration bound is {bound}, got n={n}")
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []
    for translations in _risack_translations(n):
        X = from_translations(translations)
        if not check_axioms(X).is_risack:
            raise AssertionError(f"search produced a non-risack: {X}")
        out.append(X)
    return out


def enumerate_risandles(
    n: int, up_to_iso: bool = False, bound: int = DEFAULT_ENUMERATION_BOUND
) -> list[FiniteRightQuasigroup]:
    """All risandles on ``0..n-1``, sorted by table; optionally one per isomorphism class.

    The search imposes only the risack law; the risandle law is re-checked on
    every result rather than assumed.
    """
    found = [X for X in enumerate_risacks(n, bound) if is_risandle(X)]
    if up_to_iso:
        canon = {canonical_form(X) for X in found}
        return [FiniteRightQuasigroup(t) for t in sorted(canon)]
    return sorted(found, key=lambda X: X.table)


# -- JSON exchange ----------------------------------------------------------

def table_to_json(X: FiniteRightQuasigroup) -> str:
    return json.dumps({"order": X.order, "table": [list(r) for r in X.table]}, sort_keys=True)


def table_from_json(text: str) -> FiniteRightQuasigroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidTableError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("table"), list):
        raise InvalidTableError("expected an object with a \"table\" list")
    X = from_table(data["table"])
    if data.get("order", X.order) != X.order:
        raise NotSquareError(f"declared order {data['order']} but table has {X.order} rows")
    return X
