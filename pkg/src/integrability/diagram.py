"""Signed Gauss codes for oriented links and Reidemeister rewriting.

A diagram is a list of components. Each component is the cyclic sequence of
passages met while walking along it in the direction of its orientation; a
passage records which crossing we pass through, whether we go over or under,
and the crossing sign. Crossing signs are taken from the input and never
recomputed, so only incidence and signs matter downstream.

Arcs are addressed by ``(component, position)``: the arc of a component that
leaves passage ``position``. A component without passages has a single arc at
position 0.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import ConsistencyError, GaussSyntaxError, InvalidLocation


class Role(enum.Enum):
    OVER = "O"
    UNDER = "U"

    @property
    def flipped(self) -> "Role":
        return Role.UNDER if self is Role.OVER else Role.OVER


@dataclass(frozen=True)
class Passage:
    crossing: int
    role: Role
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ConsistencyError(f"sign must be +1 or -1, got {self.sign!r}")

    def __str__(self) -> str:
        return f"{self.role.value}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class CrossingRecord:
    id: int
    sign: int
    over_component: int
    under_component: int

    @property
    def is_self_crossing(self) -> bool:
        return self.over_component == self.under_component


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable oriented link diagram. Equality compares passages only."""

    components: tuple[tuple[Passage, ...], ...]
    crossings: Mapping[int, CrossingRecord] = field(init=False, compare=False, repr=False)
    # crossing id -> ((component, index) of the over passage, same for under)
    _where: Mapping[int, tuple[tuple[int, int], tuple[int, int]]] = field(
        init=False, compare=False, repr=False
    )

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        seen: dict[int, dict[Role, tuple[int, int, int]]] = {}
        for ci, comp in enumerate(comps):
            for pi, p in enumerate(comp):
                if not isinstance(p.crossing, int) or p.crossing < 1:
                    raise ConsistencyError(f"crossing ids must be positive integers, got {p.crossing!r}")
                slot = seen.setdefault(p.crossing, {})
                if p.role in slot:
                    raise ConsistencyError(
                        f"crossing {p.crossing} has two {p.role.name.lower()} passages"
                    )
                slot[p.role] = (ci, pi, p.sign)
        records = {}
        where = {}
        for cid in sorted(seen):
            slot = seen[cid]
            if len(slot) != 2:
                (role,) = slot
                raise ConsistencyError(
                    f"crossing {cid} appears only as {role.name.lower()}; "
                    "each crossing needs one over and one under passage"
                )
            oc, oi, osign = slot[Role.OVER]
            uc, ui, usign = slot[Role.UNDER]
            if osign != usign:
                raise ConsistencyError(f"crossing {cid} has mismatched signs at its two passages")
            records[cid] = CrossingRecord(cid, osign, oc, uc)
            where[cid] = ((oc, oi), (uc, ui))
        # Two closed curves in the plane meet an even number of times.
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                count = sum(
                    1 for r in records.values() if {r.over_component, r.under_component} == {i, j}
                )
                if count % 2:
                    raise ConsistencyError(
                        f"components {i} and {j} cross an odd number of times ({count})"
                    )
        object.__setattr__(self, "crossings", MappingProxyType(records))
        object.__setattr__(self, "_where", MappingProxyType(where))

    def __hash__(self):
        return hash(self.components)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def __len__(self) -> int:
        return len(self.components)

    def locate(self, crossing: int, role: Role) -> tuple[int, int]:
        """(component, index) of the passage of ``crossing`` with ``role``."""
        try:
            over, under = self._where[crossing]
        except KeyError:
            raise InvalidLocation(f"no crossing with id {crossing}") from None
        return over if role is Role.OVER else under

    def passages(self) -> Iterator[tuple[int, int, Passage]]:
        for ci, comp in enumerate(self.components):
            for pi, p in enumerate(comp):
                yield ci, pi, p

    def next_crossing_id(self) -> int:
        return max(self.crossings, default=0) + 1

    def relabeled(self, mapping: Mapping[int, int]) -> "LinkDiagram":
        """Rename crossing ids through ``mapping`` (ids not in it are kept)."""
        return LinkDiagram(
            tuple(
                tuple(Passage(mapping.get(p.crossing, p.crossing), p.role, p.sign) for p in comp)
                for comp in self.components
            )
        )

    def reordered(self, order) -> "LinkDiagram":
        """Components permuted so that new component i is old component order[i]."""
        return LinkDiagram(tuple(self.components[i] for i in order))

    def __str__(self) -> str:
        return serialize_gauss(self)


# --------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(?P<passage>([OU])(\d+)([+-]))|(?P<punct>[();]))")


def parse_gauss(text: str) -> LinkDiagram:
    """Parse a signed Gauss code such as ``"(O1+ U2+);(U1+ O2+)"``.

    A bare passage list without parentheses is read as a single component.
    """
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GaussSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start("passage") if m.group("passage") else m.start("punct")
        if m.group("passage"):
            role, num, sign = m.group(2), m.group(3), m.group(4)
            tokens.append(("P", start, Passage(int(num), Role(role), 1 if sign == "+" else -1)))
        else:
            tokens.append((m.group("punct"), start, None))
        pos = m.end()

    if not tokens:
        raise GaussSyntaxError("empty diagram", text, 0)

    if tokens[0][0] == "P":
        for kind, at, _ in tokens:
            if kind != "P":
                raise GaussSyntaxError(
                    f"unexpected {kind!r} in a diagram without parentheses", text, at
                )
        return LinkDiagram((tuple(p for _, _, p in tokens),))

    components = []
    i = 0
    while True:
        kind, at, _ = tokens[i] if i < len(tokens) else ("EOF", len(text), None)
        if kind != "(":
            raise GaussSyntaxError("expected '('", text, at)
        i += 1
        current = []
        while i < len(tokens) and tokens[i][0] == "P":
            current.append(tokens[i][2])
            i += 1
        kind, at, _ = tokens[i] if i < len(tokens) else ("EOF", len(text), None)
        if kind != ")":
            raise GaussSyntaxError("expected ')' or a passage", text, at)
        i += 1
        components.append(tuple(current))
        if i == len(tokens):
            break
        kind, at, _ = tokens[i]
        if kind != ";":
            raise GaussSyntaxError("expected ';' between components", text, at)
        i += 1
    return LinkDiagram(tuple(components))


def serialize_gauss(d: LinkDiagram) -> str:
    return ";".join("(" + " ".join(str(p) for p in comp) + ")" for comp in d.components)


# --------------------------------------------------------------------------
# Reidemeister moves


class MoveKind(enum.Enum):
    R1_INSERT = "R1Insert"
    R1_DELETE = "R1Delete"
    R2_INSERT = "R2Insert"
    R2_DELETE = "R2Delete"
    R3_SLIDE = "R3Slide"


@dataclass(frozen=True)
class MoveSpec:
    """One Reidemeister move.

    ``location`` holds arcs ``(component, position)`` for insertions and
    crossing ids for deletions and slides. ``parameters`` holds the sign and
    handedness choices as ``(name, value)`` pairs.
    """

    kind: MoveKind
    location: tuple
    parameters: tuple = ()

    def param(self, name, default=None):
        return dict(self.parameters).get(name, default)

    @classmethod
    def r1_insert(cls, arc, sign=1, over_first=True):
        return cls(MoveKind.R1_INSERT, (tuple(arc),), (("sign", sign), ("over_first", over_first)))

    @classmethod
    def r1_delete(cls, crossing):
        return cls(MoveKind.R1_DELETE, (crossing,))

    @classmethod
    def r2_insert(cls, over_arc, under_arc, sign=1, parallel=True):
        """Push ``over_arc`` across ``under_arc``, creating a bigon.

        The first new crossing met along ``over_arc`` gets ``sign``, the second
        the opposite sign. With ``parallel`` the under strand meets the two
        crossings in the same order as the over strand.
        """
        return cls(
            MoveKind.R2_INSERT,
            (tuple(over_arc), tuple(under_arc)),
            (("sign", sign), ("parallel", parallel)),
        )

    @classmethod
    def r2_delete(cls, first, second):
        return cls(MoveKind.R2_DELETE, (first, second))

    @classmethod
    def r3_slide(cls, a, b, c):
        return cls(MoveKind.R3_SLIDE, (a, b, c))


def _check_arc(d: LinkDiagram, arc) -> tuple[int, int]:
    try:
        ci, pos = arc
    except (TypeError, ValueError):
        raise InvalidLocation(f"arc must be a (component, position) pair, got {arc!r}") from None
    if not 0 <= ci < len(d.components):
        raise InvalidLocation(f"no component {ci}")
    size = len(d.components[ci])
    if not (0 <= pos < max(size, 1)):
        raise InvalidLocation(f"component {ci} has no arc at position {pos}")
    return ci, pos


def _adjacent(d: LinkDiagram, a: tuple[int, int], b: tuple[int, int]) -> bool:
    """True if passage b immediately follows passage a on the same component."""
    if a[0] != b[0]:
        return False
    size = len(d.components[a[0]])
    return size >= 2 and (a[1] + 1) % size == b[1]


def _drop(d: LinkDiagram, doomed: set[int]) -> LinkDiagram:
    return LinkDiagram(
        tuple(tuple(p for p in comp if p.crossing not in doomed) for comp in d.components)
    )


def _r1_insert(d, m):
    (arc,) = m.location
    ci, pos = _check_arc(d, arc)
    sign = m.param("sign", 1)
    over_first = m.param("over_first", True)
    c = d.next_crossing_id()
    first, second = (Role.OVER, Role.UNDER) if over_first else (Role.UNDER, Role.OVER)
    comps = [list(comp) for comp in d.components]
    at = pos + 1 if comps[ci] else 0
    comps[ci][at:at] = [Passage(c, first, sign), Passage(c, second, sign)]
    return LinkDiagram(tuple(map(tuple, comps)))


def _r1_delete(d, m):
    (c,) = m.location
    over = d.locate(c, Role.OVER)
    under = d.locate(c, Role.UNDER)
    if not (_adjacent(d, over, under) or _adjacent(d, under, over)):
        raise InvalidLocation(f"crossing {c} is not a kink")
    return _drop(d, {c})


def _r2_insert(d, m):
    over_arc, under_arc = (_check_arc(d, a) for a in m.location)
    if over_arc == under_arc:
        raise InvalidLocation("R2 needs two distinct arcs")
    sign = m.param("sign", 1)
    parallel = m.param("parallel", True)
    c1 = d.next_crossing_id()
    c2 = c1 + 1
    comps = [list(comp) for comp in d.components]
    over_seq = [Passage(c1, Role.OVER, sign), Passage(c2, Role.OVER, -sign)]
    under_seq = [Passage(c1, Role.UNDER, sign), Passage(c2, Role.UNDER, -sign)]
    if not parallel:
        under_seq.reverse()
    # Insert the later position first so the earlier index stays valid.
    inserts = [(over_arc, over_seq), (under_arc, under_seq)]
    inserts.sort(key=lambda item: item[0], reverse=True)
    for (ci, pos), seq in inserts:
        at = pos + 1 if comps[ci] else 0
        comps[ci][at:at] = seq
    return LinkDiagram(tuple(map(tuple, comps)))


def _r2_delete(d, m):
    c1, c2 = m.location
    if c1 == c2:
        raise InvalidLocation("R2 deletion needs two different crossings")
    for c in (c1, c2):
        if c not in d.crossings:
            raise InvalidLocation(f"no crossing with id {c}")
    if d.crossings[c1].sign == d.crossings[c2].sign:
        raise InvalidLocation(f"crossings {c1} and {c2} have the same sign")
    o1, o2 = d.locate(c1, Role.OVER), d.locate(c2, Role.OVER)
    u1, u2 = d.locate(c1, Role.UNDER), d.locate(c2, Role.UNDER)
    if not (_adjacent(d, o1, o2) or _adjacent(d, o2, o1)):
        raise InvalidLocation(f"over passages of {c1} and {c2} are not adjacent")
    if not (_adjacent(d, u1, u2) or _adjacent(d, u2, u1)):
        raise InvalidLocation(f"under passages of {c1} and {c2} are not adjacent")
    return _drop(d, {c1, c2})


def _r3_pairs(d: LinkDiagram, crossings):
    """Find the three strand segments of a triangle on ``crossings``.

    Returns three pairs of passage positions (each pair adjacent along one
    strand): one with two over passages, one with two under passages and one
    mixed. Returns None when the crossings do not bound a triangle.
    """
    ids = set(crossings)
    if len(ids) != 3 or not ids <= set(d.crossings):
        return None
    slots = [(d.locate(c, role), c, role) for c in ids for role in Role]
    pairs = []
    for a in slots:
        for b in slots:
            if a[1] != b[1] and _adjacent(d, a[0], b[0]):
                pairs.append((a, b))

    def search(chosen, used):
        if len(chosen) == 3:
            kinds = sorted(tuple(sorted(s[2].value for s in pair)) for pair in chosen)
            return chosen if kinds == [("O", "O"), ("O", "U"), ("U", "U")] else None
        for pair in pairs:
            key = {pair[0][0], pair[1][0]}
            if key & used:
                continue
            if chosen and pairs.index(pair) <= pairs.index(chosen[-1]):
                continue
            found = search(chosen + [pair], used | key)
            if found:
                return found
        return None

    found = search([], set())
    if found is None or not _planar_triangle(d, found):
        return None
    return [(a[0], b[0]) for a, b in found]


def _planar_triangle(d: LinkDiagram, pairs) -> bool:
    """Check the crossing signs against the orders in which the strands meet them.

    Call the strands top, middle and bottom, and the crossings TM, TB, MB.
    For three straight lines in the plane, sign(TM)*sign(TB) equals the product
    of the order indicators of the middle and bottom strands, and
    sign(TM)*sign(MB) equals that of the top and bottom strands. Here an
    indicator is +1 when the strand meets the crossing it shares with the
    higher strand first.
    """
    by_kind = {}
    for a, b in pairs:
        by_kind["".join(sorted(a[2].value + b[2].value))] = (a, b)
    top, middle, bottom = by_kind["OO"], by_kind["OU"], by_kind["UU"]
    tm = next(s[1] for s in middle if s[2] is Role.UNDER)
    mb = next(s[1] for s in middle if s[2] is Role.OVER)
    tb = next(s[1] for s in top if s[1] != tm)
    x_top = 1 if top[0][1] == tm else -1
    x_mid = 1 if middle[0][1] == tm else -1
    x_bot = 1 if bottom[0][1] == tb else -1
    sign = {c: d.crossings[c].sign for c in (tm, tb, mb)}
    return (
        sign[tm] * sign[tb] == x_mid * x_bot
        and sign[tm] * sign[mb] == x_top * x_bot
    )


def _r3_slide(d, m):
    pairs = _r3_pairs(d, m.location)
    if pairs is None:
        raise InvalidLocation(f"crossings {m.location} do not bound a triangle")
    comps = [list(comp) for comp in d.components]
    for (ci, i), (_, j) in pairs:
        comps[ci][i], comps[ci][j] = comps[ci][j], comps[ci][i]
    return LinkDiagram(tuple(map(tuple, comps)))


_MOVES = {
    MoveKind.R1_INSERT: _r1_insert,
    MoveKind.R1_DELETE: _r1_delete,
    MoveKind.R2_INSERT: _r2_insert,
    MoveKind.R2_DELETE: _r2_delete,
    MoveKind.R3_SLIDE: _r3_slide,
}


def apply_move(d: LinkDiagram, m: MoveSpec) -> LinkDiagram:
    """Return the diagram obtained from ``d`` by the move ``m``."""
    return _MOVES[m.kind](d, m)


def arcs(d: LinkDiagram) -> list[tuple[int, int]]:
    return [(ci, pos) for ci, comp in enumerate(d.components) for pos in range(max(len(comp), 1))]


def deletable_kinks(d: LinkDiagram) -> list[int]:
    out = []
    for c in d.crossings:
        over, under = d.locate(c, Role.OVER), d.locate(c, Role.UNDER)
        if _adjacent(d, over, under) or _adjacent(d, under, over):
            out.append(c)
    return out


def deletable_bigons(d: LinkDiagram) -> list[tuple[int, int]]:
    out = []
    for ci, comp in enumerate(d.components):
        size = len(comp)
        if size < 2:
            continue
        for i in range(size):
            a, b = comp[i], comp[(i + 1) % size]
            if size == 2 and i == 1:
                break
            if a.role is Role.OVER and b.role is Role.OVER and a.crossing != b.crossing:
                if a.sign == -b.sign:
                    ua = d.locate(a.crossing, Role.UNDER)
                    ub = d.locate(b.crossing, Role.UNDER)
                    if _adjacent(d, ua, ub) or _adjacent(d, ub, ua):
                        out.append((a.crossing, b.crossing))
    return out


def slidable_triangles(d: LinkDiagram) -> list[tuple[int, int, int]]:
    """Crossing triples where an R3 slide applies."""
    out = []
    # A triangle's top strand has two adjacent over passages.
    for ci, comp in enumerate(d.components):
        size = len(comp)
        for i in range(size if size > 2 else min(size - 1, 1)):
            a, b = comp[i], comp[(i + 1) % size]
            if not (a.role is Role.OVER and b.role is Role.OVER and a.crossing != b.crossing):
                continue
            # The third crossing sits next to one of the under passages of a or b.
            candidates = set()
            for c in (a.crossing, b.crossing):
                uc, ui = d.locate(c, Role.UNDER)
                n = len(d.components[uc])
                for j in (ui - 1, ui + 1):
                    candidates.add(d.components[uc][j % n].crossing)
            candidates -= {a.crossing, b.crossing}
            for c in sorted(candidates):
                triple = tuple(sorted((a.crossing, b.crossing, c)))
                if triple not in out and _r3_pairs(d, triple) is not None:
                    out.append(triple)
    return out


def triangle_is_cyclic(d: LinkDiagram, crossings) -> bool:
    """True when the triangle's three sides are oriented head to tail.

    Each strand's side runs from the first to the second triangle crossing it
    meets. Oriented smoothing of a cyclic triangle leaves a small circle inside
    it, and the slide permutes the outside connections, so the Seifert circle
    count is only guaranteed to survive slides of non-cyclic triangles.
    """
    pairs = _r3_pairs(d, crossings)
    if pairs is None:
        raise InvalidLocation(f"crossings {tuple(crossings)} do not bound a triangle")
    heads = []
    for (ci, i), (_, j) in pairs:
        heads.append(d.components[ci][j].crossing)
    return len(set(heads)) == 3
