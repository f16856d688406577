"""Rule table deciding integrability properties of a submanifold of E^n.

Every property is settled by an ordered list of rules. A rule looks at the
facts of an embedding context and either stays silent or answers True/False.
The first rule that answers decides; every rule that answers is kept in the
chain, and two rules answering differently is an error. If a disagreement
involves a fact the caller supplied (a custom manifold's data or a normal
bundle override) the context is rejected as invalid, otherwise the rule base
itself is inconsistent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .diagram import LinkDiagram
from .errors import (
    ContextInvalid,
    InternalInconsistency,
    MissingDiagram,
    OddCycleError,
    OutOfTableRange,
    ParseError,
    SelfLoop,
)
from .invariants import si_link_verdict
from .manifolds import (
    PARALLELIZABLE_SPHERES,
    ConnectedSum,
    Custom,
    ManifoldExpr,
    Product,
    Sphere,
    parallelizable_reason,
    semicharacteristic,
    summands,
    z2_betti,
)
from .verdicts import PROPERTIES, PropertyVerdict, RuleHit, Tri, Verdict

SPECIAL_DIMENSIONS = (3, 7)


def _contains_custom(m: ManifoldExpr) -> bool:
    if isinstance(m, Custom):
        return True
    if isinstance(m, Product):
        return any(_contains_custom(f) for f in m.factors)
    if isinstance(m, ConnectedSum):
        return any(_contains_custom(p) for p in m.pieces)
    return False


@dataclass(frozen=True)
class EmbeddingContext:
    """A manifold embedded in Euclidean n-space, plus what the caller knows about it.

    ``open_manifold`` defaults to what the manifold expression implies.
    ``normal_bundle_trivial`` is an override; UNKNOWN means none.
    """

    manifold: ManifoldExpr
    n: int
    open_manifold: Tri | None = None
    normal_bundle_trivial: Tri = Tri.UNKNOWN
    diagram: LinkDiagram | None = None
    open_supplied: bool = field(init=False, default=False, compare=False)

    def __post_init__(self):
        m = self.manifold
        k = m.dim
        if not self.n > k >= 1:
            raise ContextInvalid(f"need n > k >= 1, got k = {k}, n = {self.n}")
        object.__setattr__(self, "normal_bundle_trivial", Tri.of(self.normal_bundle_trivial))
        derived = Tri.FALSE if m.compact else (Tri.TRUE if m.connected else Tri.UNKNOWN)
        given = self.open_manifold
        if given is None or Tri.of(given) is Tri.UNKNOWN:
            object.__setattr__(self, "open_manifold", derived)
        else:
            given = Tri.of(given)
            if derived.known and given is not derived:
                kind = "compact" if m.compact else "connected and non-compact"
                raise ContextInvalid(f"{m} is {kind}, so it cannot be flagged open={given.value}")
            object.__setattr__(self, "open_manifold", given)
            object.__setattr__(self, "open_supplied", not derived.known)
        if self.diagram is not None:
            if (k, self.n) != (1, 3):
                raise ContextInvalid("a link diagram only applies to curves in 3-space")
            if m.compact and z2_betti(m)[0] != len(self.diagram.components):
                raise ContextInvalid(
                    f"{m} has {z2_betti(m)[0]} components but the diagram has "
                    f"{len(self.diagram.components)}"
                )

    @classmethod
    def for_link(cls, diagram: LinkDiagram) -> "EmbeddingContext":
        r = len(diagram.components)
        m = Sphere(1) if r == 1 else Custom(1, (r, r), True, False, Tri.TRUE)
        return cls(m, 3, diagram=diagram)

    @property
    def k(self) -> int:
        return self.manifold.dim

    @property
    def codim(self) -> int:
        return self.n - self.k

    @property
    def compact(self) -> bool:
        return self.manifold.compact

    @property
    def connected(self) -> bool:
        return self.manifold.connected


# --------------------------------------------------------------------------
# facts


class _Facts:
    """Lazily evaluated facts about one context (or just a manifold, for TWI)."""

    def __init__(self, manifold: ManifoldExpr, ctx: EmbeddingContext | None = None, open_=None):
        self.ctx = ctx
        self.manifold = manifold
        self.k = manifold.dim
        self.n = ctx.n if ctx else None
        self.codim = self.n - self.k if ctx else None
        self.compact = manifold.compact
        self.connected = manifold.connected
        if ctx is not None:
            self.open = ctx.open_manifold
        elif open_ is not None and Tri.of(open_).known:
            self.open = Tri.of(open_)
        else:
            self.open = Tri.FALSE if manifold.compact else (Tri.TRUE if manifold.connected else Tri.UNKNOWN)
        self.par, self.par_reason = parallelizable_reason(manifold)
        self.nt_override = ctx.normal_bundle_trivial if ctx else Tri.UNKNOWN
        self.chi_even = Tri.UNKNOWN
        self.chi_star = None
        if manifold.compact and self.k % 2 == 1:
            self.chi_star = semicharacteristic(manifold)
            self.chi_even = Tri.of(self.chi_star % 2 == 0)
        self.tainted = set()
        if _contains_custom(manifold):
            self.tainted |= {"par", "chi_even", "open", "compact", "connected"}
        if self.nt_override.known:
            self.tainted.add("nt_override")
        if ctx is not None and ctx.open_supplied:
            self.tainted.add("open")
        self.results: dict[str, PropertyVerdict] = {}

    def value(self, name):
        if name in PROPERTY_ATTRS:
            return self.results[PROPERTY_ATTRS[name]].value
        return getattr(self, name)

    # property values, available once evaluated
    @property
    def twi(self):
        return self.results["TWI"].value

    @property
    def nt(self):
        return self.results["NormalTrivial"].value

    @property
    def wi(self):
        return self.results["WI"].value

    @property
    def ci(self):
        return self.results["CI"].value

    @property
    def si(self):
        return self.results["SI"].value


PROPERTY_ATTRS = {"twi": "TWI", "nt": "NormalTrivial", "wi": "WI", "ci": "CI", "si": "SI"}
FACT_NAMES = {prop: fact for fact, prop in PROPERTY_ATTRS.items()} | {"Leaf": "leaf", "Critical": "critical"}


@dataclass(frozen=True)
class Rule:
    rule_id: str
    prop: str
    theorem: str
    quote: str
    uses: tuple[str, ...]
    fn: Callable[[_Facts], object]

    def fire(self, f: _Facts) -> Tri:
        return Tri.of(self.fn(f))

    def hit(self, f: _Facts, value: Tri) -> RuleHit:
        inputs = tuple((name, _show(f.value(name))) for name in self.uses)
        return RuleHit(self.rule_id, self.theorem, self.quote, value, inputs)


def _show(v) -> str:
    if isinstance(v, Tri):
        return v.value
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _when(cond, value):
    """``value`` if ``cond`` holds, else silence."""
    return value if cond else None


def _tri(value: Tri):
    return value.as_bool()


# --------------------------------------------------------------------------
# TWI


def _sum_parity(f: _Facts):
    m = f.manifold
    if not isinstance(m, ConnectedSum) or f.k % 2 == 0:
        return None
    pieces = summands(m)
    if not all(parallelizable_reason(p)[0] is Tri.TRUE for p in pieces):
        return None
    r = len(pieces)
    if f.k in SPECIAL_DIMENSIONS:
        total = sum(semicharacteristic(p) for p in pieces)
        return total % 2 == (r - 1) % 2
    return r % 2 == 1


def _sum_of_non_twi(f: _Facts):
    m = f.manifold
    if not isinstance(m, ConnectedSum) or f.k % 2 == 0:
        return None
    if all(twi_verdict(p).value is Tri.FALSE for p in summands(m)):
        return False
    return None


def _semichar_twi(f: _Facts):
    if f.k not in SPECIAL_DIMENSIONS or not f.compact:
        return None
    if f.chi_even is Tri.FALSE:
        return False
    if f.connected and f.chi_even is Tri.TRUE and f.par is Tri.TRUE:
        return True
    return None


TWI_RULES = [
    Rule(
        "twi.open", "TWI", "open manifolds are TWI",
        "A manifold without compact components is TWI.",
        ("open",), lambda f: _when(f.open is Tri.TRUE, True),
    ),
    Rule(
        "twi.not-parallelizable", "TWI", "TWI presupposes parallelizability",
        "TWI is only defined for parallelizable manifolds; a non-parallelizable L with a "
        "compact component is not TWI.",
        ("par", "open"), lambda f: _when(f.par is Tri.FALSE and f.open is not Tri.TRUE, False),
    ),
    Rule(
        "twi.connected-sum", "TWI", "parity rule for connected sums",
        "For odd k and parallelizable pieces L_1..L_r, the sum #L_j is TWI iff "
        "sum_j Ci(f_j) = r - 1 mod 2, with Ci(f_j) = chi*(L_j) mod 2 when k is 3 or 7 "
        "and Ci(f_j) = 0 mod 2 otherwise.",
        ("k", "par"), _sum_parity,
    ),
    Rule(
        "twi.connected-sum-none", "TWI", "connected sums of non-TWI pieces",
        "For odd k, a connected sum none of whose pieces is TWI is not TWI.",
        ("k",), _sum_of_non_twi,
    ),
    Rule(
        "twi.dimension", "TWI", "TWI outside dimensions 3 and 7",
        "For k not in {3, 7}, a parallelizable k-manifold is TWI.",
        ("k", "par"), lambda f: _when(f.k not in SPECIAL_DIMENSIONS and f.par is Tri.TRUE, True),
    ),
    Rule(
        "twi.semicharacteristic", "TWI", "semicharacteristic criterion in dimensions 3 and 7",
        "For k in {3, 7}, L is TWI iff each compact component is parallelizable with even "
        "semicharacteristic chi*.",
        ("k", "par", "chi_even", "connected"), _semichar_twi,
    ),
]


# --------------------------------------------------------------------------
# normal bundle

NT_RULES = [
    Rule(
        "nt.override", "NormalTrivial", "caller-supplied normal bundle",
        "Triviality of the normal bundle as supplied with the context.",
        ("nt_override",), lambda f: _tri(f.nt_override),
    ),
    Rule(
        "nt.codim1", "NormalTrivial", "oriented line bundles",
        "In codimension 1 the normal bundle is an oriented line bundle, hence trivial.",
        ("codim",), lambda f: _when(f.codim == 1, True),
    ),
    Rule(
        "nt.codim2", "NormalTrivial", "normal bundles in codimension two",
        "Every codimension two submanifold of E^n has trivial normal bundle.",
        ("codim",), lambda f: _when(f.codim == 2, True),
    ),
    Rule(
        "nt.parallelizable", "NormalTrivial", "normal bundles of parallelizable manifolds",
        "A parallelizable k-submanifold of E^n with n >= 2k has trivial normal bundle.",
        ("par", "k", "n"), lambda f: _when(f.par is Tri.TRUE and f.n >= 2 * f.k, True),
    ),
    Rule(
        "nt.sphere", "NormalTrivial", "embedded parallelizable spheres",
        "Every embedding of S^k, k in {1, 3, 7}, in E^n has trivial normal bundle, "
        "except that the case S^7 in E^11 is undecided.",
        ("k", "n"),
        lambda f: _when(
            isinstance(f.manifold, Sphere)
            and f.k in PARALLELIZABLE_SPHERES
            and (f.k, f.n) != (7, 11),
            True,
        ),
    ),
]

NT_NOTES = {
    (7, 11): "nt.sphere-7-11: whether S^7 embeds in E^11 with non-trivial normal bundle is open",
}


# --------------------------------------------------------------------------
# WI

WI_RULES = [
    Rule(
        "wi.codim1", "WI", "codimension one",
        "For n = k + 1: L is WI iff L is SI iff no component of L is compact.",
        ("codim", "open"), lambda f: _when(f.codim == 1, _tri(f.open)),
    ),
    Rule(
        "wi.not-parallelizable", "WI", "WI forces parallelizability",
        "A WI submanifold of E^n is parallelizable.",
        ("par",), lambda f: _when(f.par is Tri.FALSE, False),
    ),
    Rule(
        "wi.normal", "WI", "WI forces a trivial normal bundle",
        "A WI submanifold has trivial normal bundle.",
        ("codim", "nt"), lambda f: _when(f.codim >= 2 and f.nt is Tri.FALSE, False),
    ),
    Rule(
        "wi.open", "WI", "open submanifolds",
        "For n >= k + 2, an open submanifold L of E^n is WI iff its normal bundle is trivial.",
        ("codim", "open", "nt"),
        lambda f: _when(f.codim >= 2 and f.open is Tri.TRUE and f.nt is Tri.TRUE, True),
    ),
    Rule(
        "wi.large", "WI", "large codimension",
        "For n >= 2k + 1, L is WI iff L is parallelizable, whatever the embedding.",
        ("k", "n", "par"), lambda f: _when(f.n >= 2 * f.k + 1, _tri(f.par)),
    ),
    Rule(
        "wi.twi", "WI", "the TWI dichotomy",
        "For k + 2 <= n <= 2k: if L is TWI then every embedding with trivial normal bundle "
        "is WI; if L is not TWI then no embedding is WI.",
        ("k", "n", "twi", "nt"),
        lambda f: _when(
            f.k + 2 <= f.n <= 2 * f.k,
            False if f.twi is Tri.FALSE else (True if f.twi is Tri.TRUE and f.nt is Tri.TRUE else None),
        ),
    ),
]


# --------------------------------------------------------------------------
# CI

CI_BASE_RULES = [
    Rule(
        "ci.codim12", "CI", "complete intersections in codimension 1 and 2",
        "Every submanifold of E^n of codimension 1 or 2 is a complete intersection.",
        ("codim",), lambda f: _when(f.codim in (1, 2), True),
    ),
    Rule(
        "ci.normal", "CI", "CI forces a trivial normal bundle",
        "A complete intersection has trivial normal bundle.",
        ("nt",), lambda f: _when(f.nt is Tri.FALSE, False),
    ),
    Rule(
        "ci.codim48", "CI", "complete intersections in codimension 4 and 8",
        "In codimension 2, 4 or 8, a submanifold with trivial normal bundle is a complete "
        "intersection.",
        ("codim", "nt"), lambda f: _when(f.codim in (4, 8) and f.nt is Tri.TRUE, True),
    ),
    Rule(
        "ci.boundary", "CI", "connected submanifolds of E^(2k+1)",
        "A connected k-submanifold of E^(2k+1) with trivial normal bundle is a complete "
        "intersection.",
        ("k", "n", "connected", "nt"),
        lambda f: _when(f.n == 2 * f.k + 1 and f.connected and f.nt is Tri.TRUE, True),
    ),
]

CI_SI_RULE = Rule(
    "ci.si", "CI", "SI implies CI",
    "An SI submanifold is the regular zero set of a submersion, hence a complete intersection.",
    ("si",), lambda f: _when(f.si is Tri.TRUE, True),
)


# --------------------------------------------------------------------------
# SI


def _semichar_boundary(f: _Facts):
    if f.n != 2 * f.k + 1 or f.k not in SPECIAL_DIMENSIONS or not (f.compact and f.connected):
        return None
    if f.chi_even is Tri.FALSE:
        return False
    if f.chi_even is Tri.TRUE and f.par is Tri.TRUE:
        return True
    return None


def _link_si(f: _Facts):
    if (f.k, f.n) != (1, 3) or not f.compact:
        return None
    if f.ctx.diagram is None:
        raise MissingDiagram("an SI verdict for curves in 3-space needs a link diagram")
    return si_link_verdict(f.ctx.diagram).value("SI").as_bool()


SI_RULES = [
    Rule(
        "si.codim1", "SI", "codimension one",
        "For n = k + 1: L is WI iff L is SI iff no component of L is compact.",
        ("codim", "open"), lambda f: _when(f.codim == 1, _tri(f.open)),
    ),
    Rule(
        "si.not-wi", "SI", "SI implies WI",
        "An SI submanifold is in particular WI.",
        ("wi",), lambda f: _when(f.wi is Tri.FALSE, False),
    ),
    Rule(
        "si.not-ci", "SI", "SI implies CI",
        "An SI submanifold is in particular a complete intersection.",
        ("ci",), lambda f: _when(f.ci is Tri.FALSE, False),
    ),
    Rule(
        "si.large", "SI", "SI in large codimension",
        "For n >= 2k + 2, a parallelizable k-submanifold of E^n is SI, hence a tame complete "
        "intersection.",
        ("k", "n", "par"), lambda f: _when(f.n >= 2 * f.k + 2 and f.par is Tri.TRUE, True),
    ),
    Rule(
        "si.open-boundary", "SI", "open submanifolds of E^(2k+1)",
        "A parallelizable open k-submanifold of E^(2k+1) is SI.",
        ("k", "n", "open", "par"),
        lambda f: _when(f.n == 2 * f.k + 1 and f.open is Tri.TRUE and f.par is Tri.TRUE, True),
    ),
    Rule(
        "si.semicharacteristic-boundary", "SI", "semicharacteristic criterion in E^(2k+1)",
        "For k in {3, 7} and L compact, connected and parallelizable in E^(2k+1): L is SI iff "
        "chi*(L) is even (for every embedding).",
        ("k", "n", "compact", "connected", "par", "chi_even"), _semichar_boundary,
    ),
    Rule(
        "si.twi-boundary", "SI", "TWI manifolds in E^(2k+1)",
        "For k >= 2, k not in {3, 7}: a compact connected TWI k-submanifold of E^(2k+1) is SI.",
        ("k", "n", "compact", "connected", "twi"),
        lambda f: _when(
            f.n == 2 * f.k + 1
            and f.k >= 2
            and f.k not in SPECIAL_DIMENSIONS
            and f.compact
            and f.connected
            and f.twi is Tri.TRUE,
            True,
        ),
    ),
    Rule(
        "si.link", "SI", "strong integrability of links in E^3",
        "A link in E^3 is SI iff every component has odd total linking number with the others.",
        ("k", "n", "compact"), _link_si,
    ),
    Rule(
        "si.lowdim", "SI", "SI between k + 2 and 2k",
        "For k + 2 <= n <= 2k: L is SI iff L is both WI and CI.",
        ("k", "n", "wi", "ci"),
        lambda f: _when(
            f.k + 2 <= f.n <= 2 * f.k and f.wi is Tri.TRUE and f.ci is Tri.TRUE, True
        ),
    ),
]

SI_NOTES = {
    "several-components": "si.several-components: for several compact components in E^(2k+1), "
    "whether SI follows from parallelizability is an open question",
}


# --------------------------------------------------------------------------
# leaves and criticality


def _leaf_value(*parts: Tri):
    out = Tri.TRUE
    for p in parts:
        out = out & p
    return out.as_bool()


def _leaf_applies(f: _Facts) -> bool:
    return f.compact and f.connected and f.n >= f.k + 2


LEAF_RULES = [
    Rule(
        "leaf.generic", "Leaf", "leaves of foliations of E^n",
        "For k not in {3, 7} and n >= k + 2: a compact connected k-submanifold is a leaf of a "
        "foliation of E^n iff it is parallelizable with trivial normal bundle.",
        ("k", "n", "par", "nt"),
        lambda f: _when(
            _leaf_applies(f) and f.k not in SPECIAL_DIMENSIONS, _leaf_value(f.par, f.nt)
        ),
    ),
    Rule(
        "leaf.semicharacteristic", "Leaf", "leaves in dimensions 3 and 7",
        "For k in {3, 7} and k + 2 <= n <= 2k: a compact connected k-submanifold is a leaf of a "
        "foliation of E^n iff it is parallelizable, has trivial normal bundle and even chi*.",
        ("k", "n", "par", "nt", "chi_even"),
        lambda f: _when(
            _leaf_applies(f) and f.k in SPECIAL_DIMENSIONS and f.n <= 2 * f.k,
            _leaf_value(f.par, f.nt, f.chi_even),
        ),
    ),
    Rule(
        "leaf.large", "Leaf", "leaves in large codimension",
        "For n >= 2k + 1: a compact connected k-submanifold is a leaf of a foliation of E^n iff "
        "it is parallelizable.",
        ("k", "n", "par"),
        lambda f: _when(_leaf_applies(f) and f.n >= 2 * f.k + 1, _tri(f.par)),
    ),
    Rule(
        "leaf.proper", "Leaf", "WI sets are unions of proper leaves",
        "L is WI iff it is a union of proper leaves of a simple foliation; a connected WI "
        "submanifold is therefore a leaf.",
        ("connected", "open", "wi"),
        lambda f: _when(
            not f.compact and f.connected and f.open is Tri.TRUE and f.wi is Tri.TRUE, True
        ),
    ),
]

CRITICAL_RULES = [
    Rule(
        "critical.si", "Critical", "SI sets are critical",
        "An SI submanifold is the critical set of some smooth function.",
        ("si",), lambda f: _when(f.si is Tri.TRUE, True),
    ),
]

ALL_RULES = {
    r.rule_id: r
    for r in TWI_RULES + NT_RULES + WI_RULES + CI_BASE_RULES + [CI_SI_RULE] + SI_RULES
    + LEAF_RULES + CRITICAL_RULES
}


# --------------------------------------------------------------------------
# evaluation


def _resolve(f: _Facts, prop: str, rules, notes=()) -> PropertyVerdict:
    hits = []
    for rule in rules:
        value = rule.fire(f)
        if value.known:
            hits.append((rule, value))
    if not hits:
        unfired = tuple(r.rule_id for r in rules) + tuple(notes)
        return PropertyVerdict(Tri.UNKNOWN, (), unfired)
    values = {v for _, v in hits}
    if len(values) > 1:
        detail = ", ".join(f"{r.rule_id}={v.value}" for r, v in hits)
        if any(set(r.uses) & f.tainted for r, _ in hits):
            raise ContextInvalid(f"supplied facts contradict the rules for {prop}: {detail}")
        raise InternalInconsistency(f"rules disagree on {prop}: {detail}")
    if any(set(r.uses) & f.tainted for r, _ in hits):
        f.tainted.add(FACT_NAMES[prop])
    value = hits[0][1]
    return PropertyVerdict(value, tuple(r.hit(f, v) for r, v in hits))


def _upgrade_par(f: _Facts, condition: bool, reason: str, taint_from: str):
    if f.par is Tri.UNKNOWN and condition:
        f.par, f.par_reason = Tri.TRUE, reason
        if taint_from in f.tainted:
            f.tainted.add("par")


def _evaluate_twi(f: _Facts):
    f.results["TWI"] = _resolve(f, "TWI", TWI_RULES)
    _upgrade_par(f, f.twi is Tri.TRUE, "TWI manifolds are parallelizable", "twi")


def _evaluate(ctx: EmbeddingContext, upto: str = "Critical") -> _Facts:
    f = _Facts(ctx.manifold, ctx)
    _evaluate_twi(f)
    notes = [NT_NOTES[(f.k, f.n)]] if isinstance(f.manifold, Sphere) and (f.k, f.n) in NT_NOTES else []
    f.results["NormalTrivial"] = _resolve(f, "NormalTrivial", NT_RULES, notes)
    # An open submanifold with trivial normal bundle in E^n is WI, hence parallelizable.
    _upgrade_par(
        f,
        f.open is Tri.TRUE and f.nt is Tri.TRUE and f.codim >= 2,
        "open with trivial normal bundle",
        "nt",
    )
    if upto == "NormalTrivial":
        return f
    f.results["WI"] = _resolve(f, "WI", WI_RULES)
    f.results["CI"] = _resolve(f, "CI", CI_BASE_RULES)
    notes = []
    if f.n == 2 * f.k + 1 and f.compact and not f.connected and f.k != 1:
        notes.append(SI_NOTES["several-components"])
    f.results["SI"] = _resolve(f, "SI", SI_RULES, notes)
    f.results["CI"] = _resolve(f, "CI", CI_BASE_RULES + [CI_SI_RULE])
    f.results["Leaf"] = _resolve(f, "Leaf", LEAF_RULES)
    f.results["Critical"] = _resolve(f, "Critical", CRITICAL_RULES)
    return f


def twi_verdict(m: ManifoldExpr, open_manifold: Tri | None = None) -> PropertyVerdict:
    """Whether every embedding of m with trivial normal bundle, in every n >= k + 2, is WI."""
    f = _Facts(m, None, open_manifold)
    _evaluate_twi(f)
    return f.results["TWI"]


def normal_bundle_trivial(ctx: EmbeddingContext) -> PropertyVerdict:
    return _evaluate(ctx, "NormalTrivial").results["NormalTrivial"]


def wi_verdict(ctx: EmbeddingContext) -> PropertyVerdict:
    return _evaluate(ctx).results["WI"]


def ci_verdict(ctx: EmbeddingContext) -> PropertyVerdict:
    return _evaluate(ctx).results["CI"]


def si_verdict(ctx: EmbeddingContext) -> PropertyVerdict:
    return _evaluate(ctx).results["SI"]


def leaf_verdict(ctx: EmbeddingContext) -> PropertyVerdict:
    """Leaf realizability for a compact connected manifold with n >= k + 2."""
    if not ctx.compact:
        raise ContextInvalid(
            "leaf realizability is decided for compact manifolds; for open ones WI is "
            "equivalent to being a union of proper leaves"
        )
    if not ctx.connected:
        raise ContextInvalid("leaf realizability is decided for connected manifolds")
    if ctx.n < ctx.k + 2:
        raise ContextInvalid("leaf realizability is decided for n >= k + 2")
    return _evaluate(ctx).results["Leaf"]


def critical_verdict(ctx: EmbeddingContext) -> PropertyVerdict:
    return _evaluate(ctx).results["Critical"]


def classify(ctx: EmbeddingContext) -> Verdict:
    """All seven property verdicts for one context."""
    f = _evaluate(ctx)
    return Verdict({name: f.results[name] for name in PROPERTIES})


def replay(ctx: EmbeddingContext, prop: str, verdict: PropertyVerdict) -> bool:
    """Re-run the rules named in a verdict's chain and check they give the same answers."""
    f = _evaluate(ctx)
    for hit in verdict.chain:
        if ALL_RULES[hit.rule_id].fire(f) is not hit.value:
            return False
    if verdict.chain:
        return verdict.chain[0].value is verdict.value
    return verdict.value is Tri.UNKNOWN


# --------------------------------------------------------------------------
# homotopy of Stiefel manifolds


@dataclass(frozen=True)
class Group:
    name: str

    def __str__(self):
        return self.name


TRIVIAL = Group("trivial")
INTEGERS = Group("Z")
Z2 = Group("Z2")
UNKNOWN_GROUP = Group("unknown")


@dataclass(frozen=True)
class PowerOf:
    base: Group
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("PowerOf needs r >= 1")

    def __str__(self):
        return f"{self.base}^{self.r}"


def stiefel_pi(k: int, n: int) -> Group:
    """pi_k of the Stiefel manifold of (n-k)-frames in R^n."""
    if not n > k >= 1:
        raise ContextInvalid(f"need n > k >= 1, got k = {k}, n = {n}")
    if k % 2 == 0 or n == k + 1:
        return INTEGERS
    return Z2


def _power(base: Group, r: int):
    if r == 0 or base is TRIVIAL:
        return TRIVIAL
    return PowerOf(base, r)


def homotopy_classes(r: int, k: int, n: int, which: str):
    """Homotopy classes of tangent or normal frame data on r compact components.

    ``which`` is "tangent" or "normal".
    """
    if r < 0:
        raise ContextInvalid("the number of compact components is nonnegative")
    if not n > k >= 1:
        raise ContextInvalid(f"need n > k >= 1, got k = {k}, n = {n}")
    if which == "tangent":
        if n >= 2 * k + 1:
            return TRIVIAL
        if n == 2 * k:
            return _power(stiefel_pi(k, 2 * k), r)
        raise OutOfTableRange(f"tangent frame classes are tabulated for n >= 2k, got k = {k}, n = {n}")
    if which == "normal":
        return _power(stiefel_pi(k, n), r)
    raise ValueError(f"frame kind must be 'tangent' or 'normal', got {which!r}")


# --------------------------------------------------------------------------
# alternating orientations of tilings


@dataclass(frozen=True)
class DualGraph:
    """Tiles of a codimension-one tiling as vertices, separating components as edges."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))
        if self.vertex_count < 1:
            raise ValueError("a dual graph has at least one vertex")
        for a, b in self.edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise ValueError(f"edge ({a}, {b}) uses a vertex outside 0..{self.vertex_count - 1}")
            if a == b:
                raise SelfLoop(f"edge ({a}, {a}) is a self-loop")

    @classmethod
    def parse(cls, text: str) -> "DualGraph":
        """First line: vertex count. Then one ``j k`` pair per line."""
        lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines()) if ln.strip()]
        if not lines:
            raise ParseError("empty edge list", text, 0)
        offsets = [0]
        for ln in text.splitlines(keepends=True):
            offsets.append(offsets[-1] + len(ln))

        def number(tok, lineno):
            try:
                return int(tok)
            except ValueError:
                raise ParseError(f"expected an integer, found {tok!r}", text, offsets[lineno]) from None

        count = number(lines[0][1], lines[0][0])
        edges = []
        for lineno, ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ParseError("expected two vertex numbers", text, offsets[lineno])
            edges.append((number(parts[0], lineno), number(parts[1], lineno)))
        return cls(count, tuple(edges))

    def neighbours(self) -> list[list[int]]:
        adj = [[] for _ in range(self.vertex_count)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def alternating_orientation(g: DualGraph) -> tuple[int, ...]:
    """Signs +1/-1 per tile, opposite across every wall.

    Signs spread from each component's first vertex (which gets +1) along a
    breadth-first spanning tree; a non-tree edge joining equal signs closes an
    odd cycle, which is raised as an OddCycleError.
    """
    adj = g.neighbours()
    sign = [0] * g.vertex_count
    parent = [-1] * g.vertex_count
    depth = [0] * g.vertex_count
    for root in range(g.vertex_count):
        if sign[root]:
            continue
        sign[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not sign[v]:
                    sign[v] = -sign[u]
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
    for a, b in g.edges:
        if sign[a] == sign[b]:
            raise OddCycleError(_tree_cycle(a, b, parent, depth))
    return tuple(sign)


def _tree_cycle(a, b, parent, depth):
    left, right = [a], [b]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return left + right[-2::-1]
