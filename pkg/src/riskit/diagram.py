"""Virtual knot diagrams, their risandle presentations, and colorings.

Text format, one item per line (``#`` starts a comment)::

    arcs: 3
    X sign=- over=0 in=0 out=1
    X sign=- over=0 in=1 out=2
    X sign=- over=0 in=2 out=0
    V                       # virtual crossing, ignored
    override: arc-count     # allow arc count != number of real crossings

Crossing convention: the under-strand enters as ``in`` and leaves as ``out``.
At a negative crossing ``out = s_over(in)``; at a positive crossing
``out = s_over^{-1}(in)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    ArcCountMismatchError,
    ArcOutOfRangeError,
    BudgetExceededError,
    DiagramSyntaxError,
    NotRisandleError,
    RiskitError,
)
from .presentations import RisandlePresentation
from .quasigroup import FiniteRightQuasigroup, check_axioms
from .words import Apply, Gen, Word, substitute

DEFAULT_LIST_BUDGET = 100_000


@dataclass(frozen=True)
class Crossing:
    sign: int
    over: int
    under_in: int
    under_out: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise RiskitError(f"crossing sign must be +1 or -1, got {self.sign}")

    @property
    def power(self) -> int:
        """Exponent of ``s_over`` taking ``under_in`` to ``under_out``."""
        return 1 if self.sign == -1 else -1


@dataclass(frozen=True)
class VirtualDiagram:
    arc_count: int
    crossings: tuple[Crossing, ...] = ()
    override: bool = False

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.arc_count < 0:
            raise RiskitError("arc_count must be non-negative")
        for i, c in enumerate(self.crossings):
            for arc in (c.over, c.under_in, c.under_out):
                if not 0 <= arc < self.arc_count:
                    raise ArcOutOfRangeError(f"crossing {i} references arc {arc}; arcs are 0..{self.arc_count - 1}")
        if not self.override and len(self.crossings) != self.arc_count:
            raise ArcCountMismatchError(
                f"{self.arc_count} arcs but {len(self.crossings)} real crossings (use override to allow)"
            )

    def relabel(self, phi: Sequence[int]) -> "VirtualDiagram":
        """Rename arc ``a`` to ``phi[a]``."""
        cs = tuple(Crossing(c.sign, phi[c.over], phi[c.under_in], phi[c.under_out]) for c in self.crossings)
        return VirtualDiagram(self.arc_count, cs, self.override)


def lens_diagram(n: int) -> VirtualDiagram:
    """``n`` negative crossings under arc 0, with ``s_{x0}(x_i) = x_{i+1}`` (indices mod n)."""
    if n < 1:
        raise RiskitError("lens diagrams need n >= 1")
    return VirtualDiagram(n, tuple(Crossing(-1, 0, i, (i + 1) % n) for i in range(n)))


# -- text format ------------------------------------------------------------------

_FIELD = re.compile(r"(\S+?)=(\S*)")


def parse_diagram(text: str) -> VirtualDiagram:
    arcs: int | None = None
    override = False
    crossings: list[Crossing] = []
    positions: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        body = line.strip()
        if not body:
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        if body.startswith("arcs:"):
            if arcs is not None:
                raise DiagramSyntaxError("duplicate 'arcs:' header", lineno, col0)
            value = body[5:].strip()
            if not value.isdigit():
                raise DiagramSyntaxError(f"arc count must be a non-negative integer, got {value!r}", lineno, col0 + 5)
            arcs = int(value)
        elif body.startswith("override:"):
            value = body[9:].strip()
            if value != "arc-count":
                raise DiagramSyntaxError(f"unknown override {value!r}", lineno, col0 + 9)
            override = True
        elif body == "V" or body.startswith("V "):
            continue
        elif body == "X" or body.startswith("X "):
            crossings.append(_parse_crossing(line, lineno))
            positions.append((lineno, col0))
        else:
            raise DiagramSyntaxError(f"unrecognised line {body!r}", lineno, col0)
    if arcs is None:
        raise DiagramSyntaxError("missing 'arcs: n' header", 1, 1)
    for c, (lineno, col) in zip(crossings, positions):
        for arc in (c.over, c.under_in, c.under_out):
            if arc >= arcs:
                raise ArcOutOfRangeError(f"line {lineno}: arc {arc} out of range for {arcs} arcs")
    return VirtualDiagram(arcs, tuple(crossings), override)


def _parse_crossing(line: str, lineno: int) -> Crossing:
    start = line.index("X") + 1
    fields: dict[str, str] = {}
    cols: dict[str, int] = {}
    rest = line[start:]
    pos = 0
    for tok in re.finditer(r"\S+", rest):
        col = start + tok.start() + 1
        m = _FIELD.fullmatch(tok.group())
        if m is None:
            raise DiagramSyntaxError(f"expected key=value, got {tok.group()!r}", lineno, col)
        key, value = m.groups()
        if key not in ("sign", "over", "in", "out"):
            raise DiagramSyntaxError(f"unknown field {key!r}", lineno, col)
        if key in fields:
            raise DiagramSyntaxError(f"duplicate field {key!r}", lineno, col)
        fields[key], cols[key] = value, col
        pos = col
    for key in ("sign", "over", "in", "out"):
        if key not in fields:
            raise DiagramSyntaxError(f"crossing is missing {key}=", lineno, pos or start)
    if fields["sign"] not in ("+", "-"):
        raise DiagramSyntaxError(f"sign must be + or -, got {fields['sign']!r}", lineno, cols["sign"])
    arcs = {}
    for key in ("over", "in", "out"):
        if not fields[key].isdigit():
            raise DiagramSyntaxError(f"{key} must be a non-negative integer", lineno, cols[key])
        arcs[key] = int(fields[key])
    sign = 1 if fields["sign"] == "+" else -1
    return Crossing(sign, arcs["over"], arcs["in"], arcs["out"])


def format_diagram(D: VirtualDiagram) -> str:
    lines = [f"arcs: {D.arc_count}"]
    if D.override:
        lines.append("override: arc-count")
    for c in D.crossings:
        sign = "+" if c.sign == 1 else "-"
        lines.append(f"X sign={sign} over={c.over} in={c.under_in} out={c.under_out}")
    return "\n".join(lines) + "\n"


# -- presentations ------------------------------------------------------------------

def crossing_relation(c: Crossing) -> tuple[Word, Word]:
    """``x_out = s_over^{±1}(x_in)``."""
    return Gen(c.under_out), Apply(Gen(c.over), Gen(c.under_in), c.power)


def _uses(w: Word, j: int) -> bool:
    if isinstance(w, Gen):
        return w.index == j
    return _uses(w.op, j) or _uses(w.target, j)


def eliminate_generators(P: RisandlePresentation) -> tuple[RisandlePresentation, tuple[Word, ...]]:
    """Substitute away relations ``x_j = w`` with ``x_j`` absent from ``w``.

    Returns the smaller presentation and, for each original generator, its
    word in the surviving (renumbered) generators.
    """
    rels = list(P.relations)
    images: dict[int, Word] = {i: Gen(i) for i in range(P.generator_count)}
    changed = True
    while changed:
        changed = False
        for idx, (lhs, rhs) in enumerate(rels):
            for g, w in ((lhs, rhs), (rhs, lhs)):
                if isinstance(g, Gen) and not _uses(w, g.index):
                    j = g.index
                    del rels[idx]
                    rels = [(substitute(a, {j: w}), substitute(b, {j: w})) for a, b in rels]
                    rels = [(a, b) for a, b in rels if a != b]
                    images = {i: substitute(v, {j: w}) for i, v in images.items()}
                    changed = True
                    break
            if changed:
                break
    survivors = sorted({i for i in range(P.generator_count) if images[i] == Gen(i)})
    renumber = {old: Gen(new) for new, old in enumerate(survivors)}
    rels = [(substitute(a, renumber), substitute(b, renumber)) for a, b in rels]
    words = tuple(substitute(images[i], renumber) for i in range(P.generator_count))
    return RisandlePresentation(len(survivors), tuple(rels)), words


def fundamental_presentation(D: VirtualDiagram, eliminate: bool = False) -> RisandlePresentation:
    """One generator per arc and one relation per real crossing."""
    P = RisandlePresentation(D.arc_count, tuple(crossing_relation(c) for c in D.crossings))
    if eliminate:
        P, _ = eliminate_generators(P)
    return P


# -- colorings ----------------------------------------------------------------------

@dataclass(frozen=True)
class ColoringCount:
    count: int
    colorings: tuple[tuple[int, ...], ...] | None = None


def is_coloring(D: VirtualDiagram, R: FiniteRightQuasigroup, assignment: Sequence[int]) -> bool:
    if len(assignment) != D.arc_count:
        return False
    for c in D.crossings:
        y, x = assignment[c.under_in], assignment[c.over]
        image = R.op(y, x) if c.power == 1 else R.inverse_op(y, x)
        if image != assignment[c.under_out]:
            return False
    return True


def iter_colorings(D: VirtualDiagram, R: FiniteRightQuasigroup) -> Iterator[tuple[int, ...]]:
    """Valid arc assignments in lexicographic order.

    Assigning an arc propagates through every crossing where two of the
    three strands determine the third (over and either under end).
    """
    n = D.arc_count
    fwd = R.table
    inv = R.inverse_table
    touching: list[list[Crossing]] = [[] for _ in range(n)]
    for c in D.crossings:
        for arc in {c.over, c.under_in, c.under_out}:
            touching[arc].append(c)
    colors = [-1] * n
    trail: list[int] = []

    def setc(arc: int, v: int, queue: list[int]) -> bool:
        if colors[arc] >= 0:
            return colors[arc] == v
        colors[arc] = v
        trail.append(arc)
        queue.append(arc)
        return True

    def propagate(queue: list[int]) -> bool:
        while queue:
            arc = queue.pop()
            for c in touching[arc]:
                o = colors[c.over]
                if o < 0:
                    continue
                a, b = colors[c.under_in], colors[c.under_out]
                fw, bw = (fwd, inv) if c.power == 1 else (inv, fwd)
                if a >= 0 and not setc(c.under_out, fw[a][o], queue):
                    return False
                if b >= 0 and not setc(c.under_in, bw[b][o], queue):
                    return False
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            colors[trail.pop()] = -1

    def search(arc: int) -> Iterator[tuple[int, ...]]:
        while arc < n and colors[arc] >= 0:
            arc += 1
        if arc == n:
            yield tuple(colors)
            return
        for v in range(R.order):
            mark = len(trail)
            if setc(arc, v, q := []) and propagate(q):
                yield from search(arc + 1)
            undo(mark)

    if n == 0:
        yield ()
        return
    yield from search(0)


def count_colorings(
    D: VirtualDiagram,
    R: FiniteRightQuasigroup,
    list_colorings: bool = False,
    budget: int = DEFAULT_LIST_BUDGET,
) -> ColoringCount:
    """Number of colorings of ``D`` by the risandle ``R``; optionally list them (at most ``budget``)."""
    if not check_axioms(R).is_risandle:
        raise NotRisandleError("colorings are defined for risandles only")
    count = 0
    found: list[tuple[int, ...]] = []
    for col in iter_colorings(D, R):
        count += 1
        if list_colorings:
            if len(found) >= budget:
                raise BudgetExceededError(f"more than {budget} colorings")
            found.append(col)
    return ColoringCount(count, tuple(found) if list_colorings else None)
