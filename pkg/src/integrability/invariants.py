"""Linking data, Seifert circles and mod-2 framing classes of a link diagram."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LinkDiagram, Role
from .verdicts import PropertyVerdict, RuleHit, Tri, Verdict


@dataclass(frozen=True)
class LinkingMatrix:
    """Linking numbers off the diagonal, Whitney numbers on it."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i][j]

    def off_diagonal(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(0 if i == j else v for j, v in enumerate(row)) for i, row in enumerate(self.entries)
        )

    def whitney_numbers(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(self.size))

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class SeifertDecomposition:
    circles: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def circle_count(self) -> int:
        return len(self.circles)


@dataclass(frozen=True)
class ComponentClasses:
    index: int
    whitney: int
    curvatura_integra_mod2: int
    relative_class: int
    seifert_normal_class: int


def linking_matrix(d: LinkDiagram) -> LinkingMatrix:
    r = len(d.components)
    signed = [[0] * r for _ in range(r)]
    for rec in d.crossings.values():
        i, j = rec.over_component, rec.under_component
        signed[i][j] += rec.sign
        if i != j:
            signed[j][i] += rec.sign
    # Off-diagonal counts are even: parse rejects an odd number of crossings
    # between two components.
    entries = tuple(
        tuple(signed[i][j] if i == j else signed[i][j] // 2 for j in range(r)) for i in range(r)
    )
    return LinkingMatrix(entries)


def _check_index(d: LinkDiagram, i: int) -> None:
    if not 0 <= i < len(d.components):
        raise IndexError(f"component index {i} out of range for {len(d.components)} components")


def whitney_number(d: LinkDiagram, i: int) -> int:
    _check_index(d, i)
    return sum(r.sign for r in d.crossings.values() if r.over_component == r.under_component == i)


def _linking_sum(d: LinkDiagram, i: int) -> int:
    lm = linking_matrix(d)
    return sum(lm[i, j] for j in range(lm.size) if j != i)


def curvatura_integra_mod2(d: LinkDiagram, i: int) -> int:
    """Class of the curvature normal map of component i, as (1 + W_i) mod 2."""
    return (1 + whitney_number(d, i)) % 2


def relative_class(d: LinkDiagram, i: int) -> int:
    """Twist of the Seifert frame against the curvature frame on component i."""
    return whitney_number(d, i) + _linking_sum(d, i)


def seifert_normal_class(d: LinkDiagram, i: int) -> int:
    _check_index(d, i)
    return (1 + _linking_sum(d, i)) % 2


def component_classes(d: LinkDiagram) -> list[ComponentClasses]:
    lm = linking_matrix(d)
    out = []
    for i in range(lm.size):
        w = lm[i, i]
        lk = sum(lm[i, j] for j in range(lm.size) if j != i)
        out.append(ComponentClasses(i, w, (1 + w) % 2, w + lk, (1 + lk) % 2))
    return out


def seifert_circles(d: LinkDiagram) -> SeifertDecomposition:
    """Orbits of arc-following after the oriented smoothing of every crossing.

    Arriving at a crossing along one strand, we leave along the other strand.
    """
    successor = {}
    for ci, comp in enumerate(d.components):
        if not comp:
            successor[(ci, 0)] = (ci, 0)
            continue
        for j in range(len(comp)):
            nxt = comp[(j + 1) % len(comp)]
            role = nxt.role.flipped
            successor[(ci, j)] = d.locate(nxt.crossing, role)
    circles = []
    seen = set()
    for start in successor:
        if start in seen:
            continue
        cycle = []
        arc = start
        while arc not in seen:
            seen.add(arc)
            cycle.append(arc)
            arc = successor[arc]
        circles.append(tuple(cycle))
    return SeifertDecomposition(tuple(circles))


LINK_WI = (
    "link.wi",
    "weak integrability of links in E^3",
    "Every link in E^3 is weakly integrable.",
)
LINK_SI = (
    "link.si",
    "strong integrability of links in E^3",
    "A link in E^3 is SI iff each component has odd total linking number with the others, "
    "i.e. every Seifert normal class 1 + sum_{j != i} lk(L_i, L_j) vanishes mod 2.",
)


def si_link_verdict(d: LinkDiagram) -> Verdict:
    classes = component_classes(d)
    inputs = tuple((f"seifert_normal_class[{c.index}]", str(c.seifert_normal_class)) for c in classes)
    si = Tri.of(all(c.seifert_normal_class == 0 for c in classes))
    wi_hit = RuleHit(*LINK_WI, Tri.TRUE, (("components", str(len(classes))),))
    si_hit = RuleHit(*LINK_SI, si, inputs)
    return Verdict({"WI": PropertyVerdict(Tri.TRUE, (wi_hit,)), "SI": PropertyVerdict(si, (si_hit,))})
