"""Three-valued answers and the rule chains that justify them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Tri(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value) -> "Tri":
        if isinstance(value, Tri):
            return value
        if value is None:
            return cls.UNKNOWN
        return cls.TRUE if value else cls.FALSE

    @classmethod
    def parse(cls, text: str) -> "Tri":
        key = str(text).strip().lower()
        if key in ("true", "yes", "y", "1"):
            return cls.TRUE
        if key in ("false", "no", "n", "0"):
            return cls.FALSE
        if key in ("unknown", "?", "maybe"):
            return cls.UNKNOWN
        raise ValueError(f"not a tristate: {text!r}")

    @property
    def known(self) -> bool:
        return self is not Tri.UNKNOWN

    def as_bool(self):
        """True/False, or None when unknown."""
        return None if self is Tri.UNKNOWN else self is Tri.TRUE

    def __invert__(self) -> "Tri":
        return {Tri.TRUE: Tri.FALSE, Tri.FALSE: Tri.TRUE}.get(self, Tri.UNKNOWN)

    def __and__(self, other: "Tri") -> "Tri":
        if Tri.FALSE in (self, other):
            return Tri.FALSE
        if self is Tri.TRUE and other is Tri.TRUE:
            return Tri.TRUE
        return Tri.UNKNOWN

    def __or__(self, other: "Tri") -> "Tri":
        if Tri.TRUE in (self, other):
            return Tri.TRUE
        if self is Tri.FALSE and other is Tri.FALSE:
            return Tri.FALSE
        return Tri.UNKNOWN

    def __str__(self) -> str:
        return self.value


PROPERTIES = ("WI", "SI", "CI", "TWI", "NormalTrivial", "Leaf", "Critical")


@dataclass(frozen=True)
class RuleHit:
    """One applied rule: which rule, the result it gave and the facts it read."""

    rule_id: str
    theorem: str
    quote: str
    value: Tri
    inputs: tuple[tuple[str, str], ...] = ()

    def citation(self) -> dict:
        return {"rule_id": self.rule_id, "theorem": self.theorem, "quote": self.quote}


@dataclass(frozen=True)
class PropertyVerdict:
    value: Tri
    chain: tuple[RuleHit, ...] = ()
    unfired: tuple[str, ...] = ()

    def __post_init__(self):
        if self.value.known and not self.chain:
            raise ValueError("a decided verdict needs at least one rule in its chain")

    def to_dict(self) -> dict:
        return {
            "value": self.value.value,
            "chain": [
                {**hit.citation(), "value": hit.value.value, "inputs": dict(hit.inputs)}
                for hit in self.chain
            ],
            "unfired": list(self.unfired),
        }

    @classmethod
    def from_dict(cls, data: dict, citations: dict | None = None) -> "PropertyVerdict":
        chain = tuple(
            RuleHit(
                h["rule_id"],
                h["theorem"],
                h["quote"],
                Tri(h["value"]),
                tuple(h.get("inputs", {}).items()),
            )
            for h in data["chain"]
        )
        return cls(Tri(data["value"]), chain, tuple(data.get("unfired", ())))


@dataclass(frozen=True)
class Verdict:
    """Answers for a subset of the seven properties, keyed by property name."""

    properties: dict[str, PropertyVerdict] = field(default_factory=dict)

    def __getitem__(self, name: str) -> PropertyVerdict:
        return self.properties[name]

    def __contains__(self, name: str) -> bool:
        return name in self.properties

    def value(self, name: str) -> Tri:
        return self.properties[name].value

    def citations(self) -> list[dict]:
        seen = {}
        for pv in self.properties.values():
            for hit in pv.chain:
                seen.setdefault(hit.rule_id, hit.citation())
        return [seen[k] for k in sorted(seen)]

    def to_dict(self) -> dict:
        return {name: self.properties[name].to_dict() for name in PROPERTIES if name in self.properties}

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls({name: PropertyVerdict.from_dict(v) for name, v in data.items()})
