"""Finite groups as Cayley tables, the functors R and L, and homomorphisms."""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BoundExceededError,
    EmptyStructureError,
    InvalidTableError,
    NotFaithfulError,
    NotRisandleError,
)
from .quasigroup import (
    FiniteRightQuasigroup,
    PermutationGroup,
    check_axioms,
    compose,
    rmult_group,
)

DEFAULT_GROUP_BOUND = 64
DEFAULT_HOM_BOUND = 64 * 64


@dataclass(frozen=True)
class FiniteGroup:
    """A group on ``0..order-1``; ``mul[a][b]`` is the product ``ab``.

    Construction validates closure, identity, inverses and associativity.
    """

    mul: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = ""

    def __post_init__(self):
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        object.__setattr__(self, "mul", mul)
        _validate_group(mul, self.identity)

    @property
    def order(self) -> int:
        return len(self.mul)

    @cached_property
    def inv(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.mul)

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        out = self.identity
        for _ in range(k):
            out = self.mul[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, h = 1, g
        while h != self.identity:
            h = self.mul[h][g]
            k += 1
        return k

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(g) for g in range(self.order))

    def generated(self, gens: Sequence[int]) -> frozenset[int]:
        """Subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            g = frontier.pop()
            for t in gens:
                h = self.mul[g][t]
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
        return frozenset(seen)

    @cached_property
    def generating_sequence(self) -> tuple[int, ...]:
        """Greedy generating sequence, preferring elements of large order."""
        gens: list[int] = []
        span = frozenset({self.identity})
        for g in sorted(range(self.order), key=lambda g: (-self.element_orders[g], g)):
            if g not in span:
                gens.append(g)
                span = self.generated(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"FiniteGroup{label}(order={self.order})"


def _validate_group(mul: tuple[tuple[int, ...], ...], identity: int) -> None:
    n = len(mul)
    if n == 0:
        raise InvalidTableError("a group must be nonempty")
    if any(len(row) != n for row in mul):
        raise InvalidTableError("Cayley table is not square")
    M = np.array(mul, dtype=np.int64)
    if M.min() < 0 or M.max() >= n:
        raise InvalidTableError("Cayley table entries out of range")
    if not 0 <= identity < n:
        raise InvalidTableError(f"identity {identity} out of range")
    idx = np.arange(n)
    if not (np.array_equal(M[identity], idx) and np.array_equal(M[:, identity], idx)):
        raise InvalidTableError(f"element {identity} is not a two-sided identity")
    for row_kind, T in (("row", M), ("column", M.T)):
        bad = [i for i in range(n) if len(set(T[i].tolist())) != n]
        if bad:
            raise InvalidTableError(f"{row_kind} {bad[0]} is not a permutation (no inverse)")
    # (ab)c == a(bc)
    if not np.array_equal(M[M, :], M[:, M]):
        a, b, c = (int(v) for v in np.argwhere(M[M, :] != M[:, M])[0])
        raise InvalidTableError(f"not associative at ({a}, {b}, {c})")


def group_from_table(mul: Sequence[Sequence[int]], identity: int | None = None, name: str = "") -> FiniteGroup:
    if isinstance(mul, np.ndarray):
        mul = mul.tolist()
    mul = tuple(tuple(r) for r in mul)
    if identity is None:
        n = len(mul)
        candidates = [e for e in range(n) if list(mul[e]) == list(range(n))]
        identity = candidates[0] if candidates else 0
    return FiniteGroup(mul, identity, name)


# -- built-in groups ----------------------------------------------------------

def _bounded(order: int, bound: int) -> None:
    if order > bound:
        raise BoundExceededError(f"group order {order} exceeds bound {bound}")


def cyclic_group(n: int, bound: int = DEFAULT_GROUP_BOUND) -> FiniteGroup:
    if n < 1:
        raise InvalidTableError("cyclic group needs n >= 1")
    _bounded(n, bound)
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"Z{n}")


def symmetric_group(n: int, bound: int = DEFAULT_GROUP_BOUND) -> FiniteGroup:
    if not 1 <= n <= 4:
        raise BoundExceededError(f"symmetric groups are built in for n <= 4, got {n}")
    perms = list(itertools.permutations(range(n)))
    _bounded(len(perms), bound)
    pos = {p: i for i, p in enumerate(perms)}
    return FiniteGroup(tuple(tuple(pos[compose(p, q)] for q in perms) for p in perms), 0, f"S{n}")


def dihedral_group(n: int, bound: int = DEFAULT_GROUP_BOUND) -> FiniteGroup:
    """Symmetries of the n-gon (order 2n); element ``r^k s^e`` has index ``k + n e``."""
    if n < 1:
        raise InvalidTableError("dihedral group needs n >= 1")
    _bounded(2 * n, bound)

    def mul(i: int, j: int) -> int:
        a, e = i % n, i // n
        b, f = j % n, j // n
        return (a + (-b if e else b)) % n + n * ((e + f) % 2)

    return FiniteGroup(tuple(tuple(mul(i, j) for j in range(2 * n)) for i in range(2 * n)), 0, f"D{n}")


def quaternion_group() -> FiniteGroup:
    """Q8 with elements ``1, -1, i, -i, j, -j, k, -k`` in that index order."""
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    elems = []
    for u in units:
        elems.append(u)
        elems.append(tuple(-c for c in u))

    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    pos = {e: i for i, e in enumerate(elems)}
    return FiniteGroup(tuple(tuple(pos[qmul(p, q)] for q in elems) for p in elems), 0, "Q8")


def direct_product_group(G: FiniteGroup, H: FiniteGroup, bound: int = DEFAULT_GROUP_BOUND) -> FiniteGroup:
    """``(g, h)`` has index ``rank_G(g) * |H| + rank_H(h)`` with identities ranked first."""
    _bounded(G.order * H.order, bound)
    gl = [G.identity] + [g for g in range(G.order) if g != G.identity]
    hl = [H.identity] + [h for h in range(H.order) if h != H.identity]
    gpos = {g: i for i, g in enumerate(gl)}
    hpos = {h: i for i, h in enumerate(hl)}
    m = H.order
    pairs = [(g, h) for g in gl for h in hl]
    mul = tuple(
        tuple(gpos[G.mul[a][c]] * m + hpos[H.mul[b][d]] for (c, d) in pairs)
        for (a, b) in pairs
    )
    name = f"{G.name}x{H.name}" if G.name and H.name else ""
    return FiniteGroup(mul, 0, name)


_FACTOR = re.compile(r"^(?:(Z/|Z|C)(\d+)|S(\d+)|D(\d+)|(Q8)|(1|trivial))$", re.IGNORECASE)


def make_group(spec, bound: int = DEFAULT_GROUP_BOUND) -> FiniteGroup:
    """Build a group from a spec.

    Accepted: a :class:`FiniteGroup`; a Cayley table (nested sequence); a string
    such as ``"Z6"``, ``"Z/6"``, ``"C6"``, ``"S3"``, ``"D4"`` (order 8),
    ``"Q8"``, ``"1"``, or an ``x``-separated product like ``"Z2xZ3"``; or a
    tuple ``("cyclic", 6)``, ``("symmetric", 3)``, ``("dihedral", 4)``,
    ``("quaternion8",)``, ``("product", spec, spec, ...)``.
    """
    if isinstance(spec, FiniteGroup):
        _bounded(spec.order, bound)
        return spec
    if isinstance(spec, str):
        factors = [f.strip() for f in re.split(r"\s*[x×*]\s*", spec.strip()) if f.strip()]
        if not factors:
            raise InvalidTableError(f"empty group spec {spec!r}")
        groups = [_factor(f, bound) for f in factors]
        out = groups[0]
        for g in groups[1:]:
            out = direct_product_group(out, g, bound)
        return out
    if isinstance(spec, tuple) and spec and isinstance(spec[0], str):
        kind, *args = spec
        builders = {
            "cyclic": cyclic_group,
            "symmetric": symmetric_group,
            "dihedral": dihedral_group,
        }
        if kind in builders:
            return builders[kind](*args, bound=bound)
        if kind == "quaternion8":
            return quaternion_group()
        if kind == "product":
            parts = [make_group(a, bound) for a in args]
            out = parts[0]
            for g in parts[1:]:
                out = direct_product_group(out, g, bound)
            return out
        if kind == "cayley_table":
            G = group_from_table(args[0])
            _bounded(G.order, bound)
            return G
        raise InvalidTableError(f"unknown group kind {kind!r}")
    G = group_from_table(spec)
    _bounded(G.order, bound)
    return G


def _factor(text: str, bound: int) -> FiniteGroup:
    m = _FACTOR.match(text)
    if not m:
        raise InvalidTableError(f"cannot parse group factor {text!r}")
    if m.group(2):
        return cyclic_group(int(m.group(2)), bound)
    if m.group(3):
        return symmetric_group(int(m.group(3)), bound)
    if m.group(4):
        return dihedral_group(int(m.group(4)), bound)
    if m.group(5):
        return quaternion_group()
    return cyclic_group(1, bound)


def permutation_group_to_group(P: PermutationGroup) -> FiniteGroup:
    """Abstract Cayley table of a permutation group (composition ``p ∘ q``)."""
    idx = P.index
    return FiniteGroup(tuple(tuple(idx[compose(p, q)] for q in P.elements) for p in P.elements), 0)


# -- the functors ---------------------------------------------------------------

def r_of_group(G: FiniteGroup) -> FiniteRightQuasigroup:
    """The risandle on G with ``h ▷ g = h g^{-1}``."""
    inv = G.inv
    return FiniteRightQuasigroup(
        tuple(tuple(G.mul[h][inv[g]] for g in range(G.order)) for h in range(G.order))
    )


def l_of_faithful(X: FiniteRightQuasigroup) -> FiniteGroup:
    """The group RMult(X) for a nonempty faithful risandle X.

    Element ``x`` of the result stands for the translation ``s_x``; the product
    is ``s_x ∘ s_y``, so ``l_of_faithful(r_of_group(G))`` reproduces G's table.
    The identity is the unique right identity of X.
    """
    if X.order == 0:
        raise EmptyStructureError("L is only materialized for nonempty risandles")
    report = check_axioms(X)
    if not report.is_risandle:
        raise NotRisandleError(f"not a risandle (witnesses {report.witnesses})")
    if not report.is_faithful:
        raise NotFaithfulError(f"translations coincide at {report.witnesses['faithful']}")
    P = rmult_group(X)
    cols = X.columns
    if set(P.elements) != set(cols):
        raise AssertionError("RMult(X) differs from the set of translations")
    where = {c: x for x, c in enumerate(cols)}
    mul = tuple(tuple(where[compose(cols[x], cols[y])] for y in range(X.order)) for x in range(X.order))
    return FiniteGroup(mul, where[tuple(range(X.order))])


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        G, H, f = self.source, self.target, self.images
        if len(f) != G.order:
            raise InvalidTableError("image list length differs from source order")
        if f[G.identity] != H.identity:
            raise InvalidTableError("identity not preserved")
        for a in range(G.order):
            for b in range(G.order):
                if f[G.mul[a][b]] != H.mul[f[a]][f[b]]:
                    raise InvalidTableError(f"not a homomorphism at ({a}, {b})")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.target.order == self.source.order


def _extend(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> list[int] | None:
    """Extend generator images along the Cayley graph; None on inconsistency."""
    f = [-1] * G.order
    f[G.identity] = H.identity
    queue = [G.identity]
    for g in queue:
        for t, ti in zip(gens, images):
            h = G.mul[g][t]
            want = H.mul[f[g]][ti]
            if f[h] < 0:
                f[h] = want
                queue.append(h)
            elif f[h] != want:
                return None
    return f if len(queue) == G.order else None


def iter_group_homs(G: FiniteGroup, H: FiniteGroup) -> Iterator[GroupHom]:
    gens = G.generating_sequence
    choices = [
        [h for h in range(H.order) if G.element_orders[t] % H.element_orders[h] == 0]
        for t in gens
    ]
    for images in itertools.product(*choices):
        f = _extend(G, H, gens, images)
        if f is not None:
            yield GroupHom(G, H, tuple(f))


def enumerate_group_homs(G: FiniteGroup, H: FiniteGroup, bound: int = DEFAULT_HOM_BOUND) -> list[GroupHom]:
    """All homomorphisms G -> H, lexicographic in the generator images."""
    if G.order * H.order > bound:
        raise BoundExceededError(f"|G|*|H| = {G.order * H.order} exceeds {bound}")
    return list(iter_group_homs(G, H))


def normal_closure(H: FiniteGroup, subset) -> frozenset[int]:
    conjugates = {H.mul[H.mul[h][x]][H.inv[h]] for x in subset for h in range(H.order)}
    return H.generated(sorted(conjugates))


def is_effective_hom(phi: GroupHom) -> bool:
    """True iff the normal closure of the image is the whole target."""
    return len(normal_closure(phi.target, phi.image())) == phi.target.order


def find_group_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    if G.order != H.order:
        return None
    if Counter(G.element_orders) != Counter(H.element_orders):
        return None
    gens = G.generating_sequence
    choices = [[h for h in range(H.order) if H.element_orders[h] == G.element_orders[t]] for t in gens]
    for images in itertools.product(*choices):
        f = _extend(G, H, gens, images)
        if f is not None and len(set(f)) == H.order:
            return GroupHom(G, H, tuple(f))
    return None


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_group_isomorphism(G, H) is not None


def effective_hom_exists(m: int, n: int) -> bool:
    """Whether some homomorphism Z/m -> Z/n is effective."""
    G, H = cyclic_group(m), cyclic_group(n)
    return any(is_effective_hom(phi) for phi in iter_group_homs(G, H))


def describe_group(G: FiniteGroup) -> str:
    """Short label: ``Zn`` when cyclic, else the name or the order profile."""
    if max(G.element_orders) == G.order:
        return f"Z{G.order}"
    if G.name:
        return G.name
    profile = ",".join(f"{k}^{v}" for k, v in sorted(Counter(G.element_orders).items()))
    return f"group(order={G.order}; orders {profile})"


# -- JSON exchange --------------------------------------------------------------

def group_to_json(G: FiniteGroup) -> str:
    return json.dumps({"identity": G.identity, "mul": [list(r) for r in G.mul], "order": G.order}, sort_keys=True)


def group_from_json(text: str) -> FiniteGroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidTableError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("mul"), list):
        raise InvalidTableError("expected an object with a \"mul\" list")
    G = FiniteGroup(tuple(tuple(r) for r in data["mul"]), data.get("identity", 0))
    if data.get("order", G.order) != G.order:
        raise InvalidTableError(f"declared order {data['order']} but table has {G.order} rows")
    return G
