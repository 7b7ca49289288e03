"""Risandle presentations, their group shadows, and finite quotients.

A presentation lists generators ``x0 .. x{k-1}`` and relations ``lhs = rhs``
between words.  Text format::

    gens: 1
    x0 = s[x0](s[x0](x0))
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BoundExceededError, QuotientNotFiniteError, RiskitError
from .groups import FiniteGroup, are_isomorphic, describe_group, l_of_faithful, permutation_group_to_group, r_of_group
from .quasigroup import (
    FiniteRightQuasigroup,
    check_axioms,
    find_isomorphism,
    rmult_group,
    subrisandle_generated,
    substructure,
)
from .todd_coxeter import (
    DEFAULT_MAX_COSETS,
    CosetTable,
    GroupPresentation,
    invert_word,
    letter_to_column,
    todd_coxeter,
)
from .words import (
    Apply,
    CongruenceClosure,
    Gen,
    Word,
    format_word,
    gamma,
    max_generator,
    parse_word,
    relation_relator,
    s_power,
)

DEFAULT_QUOTIENT_DEPTH = 12
DEFAULT_MAX_WORDS = 50_000

Relation = tuple[Word, Word]


@dataclass(frozen=True)
class RisandlePresentation:
    generator_count: int
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        if self.generator_count < 0:
            raise RiskitError("generator_count must be non-negative")
        rels = tuple((a, b) for a, b in self.relations)
        for a, b in rels:
            if max(max_generator(a), max_generator(b)) >= self.generator_count:
                raise RiskitError(
                    f"relation {format_word(a)} = {format_word(b)} uses a generator outside x0..x{self.generator_count - 1}"
                )
        object.__setattr__(self, "relations", rels)

    def generators(self) -> tuple[Gen, ...]:
        return tuple(Gen(i) for i in range(self.generator_count))

    def to_text(self) -> str:
        lines = [f"gens: {self.generator_count}"]
        lines += [f"{format_word(a)} = {format_word(b)}" for a, b in self.relations]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RisandlePresentation":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or not lines[0].startswith("gens:"):
            raise RiskitError("presentation must start with 'gens: n'")
        try:
            k = int(lines[0].split(":", 1)[1])
        except ValueError:
            raise RiskitError(f"bad generator count in {lines[0]!r}") from None
        rels = []
        for ln in lines[1:]:
            if ln.count("=") != 1:
                raise RiskitError(f"relation line needs exactly one '=': {ln!r}")
            lhs, rhs = ln.split("=")
            rels.append((parse_word(lhs), parse_word(rhs)))
        return cls(k, tuple(rels))


def lens_presentation(n: int) -> RisandlePresentation:
    """``⟨x | x = s_x^n(x)⟩``."""
    if n < 1:
        raise RiskitError("lens presentations need n >= 1")
    x = Gen(0)
    return RisandlePresentation(1, ((x, s_power(x, x, n)),))


def l_presentation(P: RisandlePresentation) -> GroupPresentation:
    """Group presentation with one generator per risandle generator and relators ``γ(lhs)γ(rhs)^{-1}``."""
    return GroupPresentation(P.generator_count, tuple(relation_relator(a, b) for a, b in P.relations))


def evaluate(X: FiniteRightQuasigroup, images: Sequence[int], w: Word) -> int:
    """Value of ``w`` in ``X`` with generator ``i`` sent to ``images[i]``."""
    if isinstance(w, Gen):
        return images[w.index]
    b = evaluate(X, images, w.target)
    a = evaluate(X, images, w.op)
    return X.op(b, a) if w.power == 1 else X.inverse_op(b, a)


# -- results --------------------------------------------------------------------

class QuotientStatus(enum.Enum):
    FINITE = "finite"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MethodAgreement:
    """Comparison between the word route and the group route.

    ``group_order`` is the order of the group presented by the relators when
    coset enumeration finished; ``agree`` is None when there was nothing to
    compare.  The group route only sees the subrisandle of ``R(G)`` generated
    by the generator images, which can be smaller than an unfaithful quotient.
    """

    group_status: str
    group_order: int | None = None
    group_route_order: int | None = None
    agree: bool | None = None
    isomorphism: tuple[int, ...] | None = None

    def as_dict(self) -> dict:
        return {
            "group_status": self.group_status,
            "group_order": self.group_order,
            "group_route_order": self.group_route_order,
            "agree": self.agree,
        }


@dataclass(frozen=True)
class QuotientResult:
    status: QuotientStatus
    structure: FiniteRightQuasigroup | None = None
    generator_images: tuple[int, ...] = ()
    element_words: tuple[Word, ...] = ()
    method: str = ""
    method_agreement: MethodAgreement | None = None
    reason: str = ""

    @property
    def finite(self) -> bool:
        return self.status is QuotientStatus.FINITE

    @property
    def order(self) -> int | None:
        return self.structure.order if self.structure is not None else None


# -- word route -----------------------------------------------------------------

def _relabel_bfs(
    T: list[list[int]], Tinv: list[list[int]], gens: Sequence[int]
) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Breadth-first order from the generator values along ``s_{gen}^{±1}``.

    Returns the visit order and, per visited element, ``(parent, generator, power)``.
    """
    order: list[int] = []
    seen: dict[int, int] = {}
    tree: list[tuple[int, int, int]] = []
    for g in gens:
        if g not in seen:
            seen[g] = len(order)
            order.append(g)
            tree.append((-1, -1, 0))
    i = 0
    while i < len(order):
        y = order[i]
        for k, g in enumerate(gens):
            for power, tab in ((1, T), (-1, Tinv)):
                z = tab[y][g]
                if z not in seen:
                    seen[z] = len(order)
                    order.append(z)
                    tree.append((i, k, power))
        i += 1
    return order, tree


def _package(
    P: RisandlePresentation,
    T: list[list[int]],
    Tinv: list[list[int]],
    gens: Sequence[int],
    method: str,
) -> QuotientResult | None:
    """Renumber, name the elements, and certify; None when the table is not a valid quotient."""
    order, tree = _relabel_bfs(T, Tinv, gens)
    if len(order) != len(T):
        return None
    pos = {c: i for i, c in enumerate(order)}
    table = tuple(tuple(pos[T[y][x]] for x in order) for y in order)
    try:
        X = FiniteRightQuasigroup(table)
    except RiskitError:
        return None
    inv = tuple(tuple(pos[Tinv[y][x]] for x in order) for y in order)
    if inv != X.inverse_table or not check_axioms(X).is_risandle:
        return None
    images = tuple(pos[g] for g in gens)
    if any(evaluate(X, images, a) != evaluate(X, images, b) for a, b in P.relations):
        return None
    if subrisandle_generated(X, images) != frozenset(range(X.order)):
        return None
    names: list[Word] = []
    first_gen = {}
    for k, g in enumerate(gens):
        first_gen.setdefault(pos[g], k)
    for i, (parent, k, power) in enumerate(tree):
        if parent < 0:
            names.append(Gen(first_gen[i]))
        else:
            names.append(Apply(Gen(k), names[parent], power))
    return QuotientResult(QuotientStatus.FINITE, X, images, tuple(names), method)


def _closure_route(P: RisandlePresentation, depth: int, max_words: int) -> QuotientResult | None:
    """Saturate the word set under every translation until the classes close up."""
    cc = CongruenceClosure(max_words)
    try:
        gens = [cc.add(g) for g in P.generators()]
        for a, b in P.relations:
            cc.merge(a, b)
    except BoundExceededError:
        return None
    for _ in range(depth):
        before = (len(cc.nodes), cc.merges)
        roots = sorted({cc.find(n) for n in range(len(cc.nodes))})
        if len(cc.nodes) + 2 * len(roots) ** 2 > max_words:
            return None
        for c in roots:
            for d in roots:
                cc._mk(c, d, 1)
                cc._mk(c, d, -1)
                if cc.exhausted:
                    return None
        cc._round()
        if cc.exhausted:
            return None
        if (len(cc.nodes), cc.merges) == before:
            break
    else:
        return None
    roots = sorted({cc.find(n) for n in range(len(cc.nodes))})
    pos = {r: i for i, r in enumerate(roots)}

    def lookup(y: int, x: int, p: int) -> int:
        return pos[cc.find(cc.signatures[(x, y, p)])]

    T = [[lookup(y, x, 1) for x in roots] for y in roots]
    Tinv = [[lookup(y, x, -1) for x in roots] for y in roots]
    return _package(P, T, Tinv, [pos[cc.find(g)] for g in gens], "congruence closure")


def _orbit_route(P: RisandlePresentation, max_cosets: int) -> QuotientResult | None:
    """Enumerate the generator orbits under the translation group.

    Column ``2k`` is ``s_{x_k}`` and ``2k+1`` its inverse.  A word ``s_a(b)`` is
    reached from ``b`` by the translation attached to ``γ(a)``, relations
    identify points, and every relator must act trivially everywhere.
    """
    k = P.generator_count
    if k == 0:
        return None
    ct = CosetTable(k, max_cosets)
    try:
        bases = [ct.new_coset() for _ in range(k)]

        def place(w: Word) -> int:
            if isinstance(w, Gen):
                return ct.rep(bases[w.index])
            start = place(w.target)
            g = gamma(w.op).letters
            if w.power == -1:
                g = invert_word(g)
            return ct.trace_define(start, [letter_to_column(a) for a in reversed(g)])

        for a, b in P.relations:
            pa = place(a)
            pb = place(b)
            if ct.rep(pa) != ct.rep(pb):
                ct.coincidence(pa, pb)
        relators = [[letter_to_column(a) for a in reversed(r)] for r in l_presentation(P).relators]
        ct.hlt(relators)
    except BoundExceededError:
        return None
    rows, base_images, tree = ct.standardize(bases)
    n = len(rows)
    tau: list[tuple[int, ...]] = [()] * n
    for g, b in enumerate(base_images):
        if not tau[b]:
            tau[b] = (g + 1,)
    for c in range(n):
        parent, col = tree[c]
        if parent >= 0:
            letter = -(col // 2 + 1) if col % 2 == 0 else col // 2 + 1
            tau[c] = tau[parent] + (letter,)

    def act(z: int, word: tuple[int, ...]) -> int:
        for a in reversed(word):
            z = rows[z][letter_to_column(a)]
        return z

    T = [[act(z, tau[y]) for y in range(n)] for z in range(n)]
    Tinv = [[act(z, invert_word(tau[y])) for y in range(n)] for z in range(n)]
    return _package(P, T, Tinv, list(base_images), "orbit enumeration")


def _group_route(P: RisandlePresentation, A: FiniteRightQuasigroup | None, images, max_cosets: int) -> MethodAgreement:
    try:
        tc = todd_coxeter(l_presentation(P), max_cosets)
    except BoundExceededError:
        return MethodAgreement("unknown")
    R = r_of_group(tc.group)
    sub, labels = substructure(R, subrisandle_generated(R, tc.generator_images))
    if A is None:
        return MethodAgreement("finite", tc.group.order, sub.order)
    where = {g: i for i, g in enumerate(labels)}
    phi = _generator_respecting(A, sub, images, tuple(where[g] for g in tc.generator_images))
    return MethodAgreement("finite", tc.group.order, sub.order, phi is not None, phi)


def _generator_respecting(A, B, a_images, b_images) -> tuple[int, ...] | None:
    """The unique homomorphism fixing generator images, if it is a bijection."""
    phi = [-1] * A.order
    stack = []
    for a, b in zip(a_images, b_images):
        if phi[a] not in (-1, b):
            return None
        phi[a] = b
        stack.append(a)
    while stack:
        y = stack.pop()
        for x in range(A.order):
            if phi[x] < 0:
                continue
            for val, img in ((A.op(y, x), B.op(phi[y], phi[x])), (A.op(x, y), B.op(phi[x], phi[y])),
                             (A.inverse_op(y, x), B.inverse_op(phi[y], phi[x])),
                             (A.inverse_op(x, y), B.inverse_op(phi[x], phi[y]))):
                if phi[val] < 0:
                    phi[val] = img
                    stack.append(val)
                elif phi[val] != img:
                    return None
    if -1 in phi or len(set(phi)) != A.order:
        return None
    return tuple(phi)


def finite_quotient(
    P: RisandlePresentation,
    depth: int = DEFAULT_QUOTIENT_DEPTH,
    max_words: int = DEFAULT_MAX_WORDS,
    max_cosets: int = DEFAULT_MAX_COSETS,
    cross_check: bool = True,
) -> QuotientResult:
    """The presented risandle when it is finite within budget.

    The word route saturates congruence classes of words and is tried first;
    if it does not close within ``depth`` rounds and ``max_words`` nodes, the
    orbits of the generators are enumerated with up to ``max_words`` points.
    Either way the emitted table is certified: risandle axioms, relations,
    and generation are all rechecked.  The group route is a cross-check only.
    """
    result = _closure_route(P, depth, max_words)
    if result is None:
        result = _orbit_route(P, max_words)
    if result is None:
        agreement = _group_route(P, None, (), max_cosets) if cross_check else None
        return QuotientResult(QuotientStatus.UNKNOWN, method_agreement=agreement, reason="budget exhausted")
    if cross_check:
        agreement = _group_route(P, result.structure, result.generator_images, max_cosets)
        result = QuotientResult(
            result.status, result.structure, result.generator_images, result.element_words, result.method, agreement
        )
    return result


# -- fundamental group comparisons ------------------------------------------------

@dataclass(frozen=True)
class Pi1Report:
    """Comparison of a finite quotient ``F`` against a candidate group ``pi1``.

    * ``a1``: the group ``L(F)`` is isomorphic to ``pi1``
    * ``a2``: ``F`` is isomorphic to ``R(pi1)``
    * ``a3``: ``RMult(F)`` is isomorphic to ``pi1``

    ``a1`` is None if the presented group could not be enumerated.
    ``equivalence_holds`` is None when ``F`` is unfaithful (no claim applies).
    """

    order: int
    faithful: bool
    rmult: str
    a1: bool | None
    a2: bool
    a3: bool
    equivalence_holds: bool | None

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "faithful": self.faithful,
            "rmult": self.rmult,
            "A1": self.a1,
            "A2": self.a2,
            "A3": self.a3,
            "equivalence_holds": self.equivalence_holds,
        }


def check_pi1_conditions(
    P: RisandlePresentation,
    pi1: FiniteGroup,
    depth: int = DEFAULT_QUOTIENT_DEPTH,
    max_words: int = DEFAULT_MAX_WORDS,
    max_cosets: int = DEFAULT_MAX_COSETS,
    quotient: QuotientResult | None = None,
) -> Pi1Report:
    """Evaluate the three isomorphism conditions for the presented risandle."""
    q = quotient or finite_quotient(P, depth, max_words, max_cosets, cross_check=False)
    if not q.finite:
        raise QuotientNotFiniteError("the presented risandle is not finite within budget")
    F = q.structure
    report = check_axioms(F)
    rm = permutation_group_to_group(rmult_group(F))
    a3 = are_isomorphic(rm, pi1)
    a2 = find_isomorphism(F, r_of_group(pi1)) is not None
    if report.is_faithful:
        a1: bool | None = are_isomorphic(l_of_faithful(F), pi1)
    else:
        try:
            a1 = are_isomorphic(todd_coxeter(l_presentation(P), max_cosets).group, pi1)
        except BoundExceededError:
            a1 = None
    eq = (a1 == a2 == a3) if report.is_faithful else None
    return Pi1Report(F.order, report.is_faithful, describe_group(rm), a1, a2, a3, eq)
