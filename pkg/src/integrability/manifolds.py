"""Closed and open oriented manifolds as small expression trees.

Each expression knows its dimension, compactness and connectedness. Z2 Betti
numbers, the semicharacteristic and a rule-based parallelizability answer are
computed from the tree. Non-orientable manifolds cannot be expressed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DimensionMismatch,
    EmptyListError,
    EvenDimension,
    ExpressionSyntaxError,
    NonCompact,
)
from .verdicts import Tri

PARALLELIZABLE_SPHERES = (1, 3, 7)


class ManifoldExpr:
    """Base class; subclasses are frozen dataclasses."""

    @property
    def dim(self) -> int:
        raise NotImplementedError

    @property
    def compact(self) -> bool:
        return True

    @property
    def connected(self) -> bool:
        return True

    def _betti(self) -> list[int]:
        raise NotImplementedError

    def _child_text(self) -> str:
        return str(self)


@dataclass(frozen=True)
class Sphere(ManifoldExpr):
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DimensionMismatch(f"sphere dimension must be >= 1, got {self.k}")

    @property
    def dim(self):
        return self.k

    def _betti(self):
        return [1] + [0] * (self.k - 1) + [1]

    def __str__(self):
        return f"S{self.k}"


@dataclass(frozen=True)
class Torus(ManifoldExpr):
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DimensionMismatch(f"torus dimension must be >= 1, got {self.k}")

    @property
    def dim(self):
        return self.k

    def _betti(self):
        return [math.comb(self.k, i) for i in range(self.k + 1)]

    def __str__(self):
        return f"T{self.k}"


@dataclass(frozen=True)
class LensSpace(ManifoldExpr):
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or math.gcd(self.p, self.q) != 1:
            raise DimensionMismatch(f"L({self.p},{self.q}) needs p >= 1 and gcd(p, q) = 1")

    @property
    def dim(self):
        return 3

    def _betti(self):
        # H1(L(p,q); Z) = Z/p, so Z2 coefficients see it exactly when p is even.
        return [1, 1, 1, 1] if self.p % 2 == 0 else [1, 0, 0, 1]

    def __str__(self):
        return f"L({self.p},{self.q})"


@dataclass(frozen=True)
class OrientedSurface(ManifoldExpr):
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise DimensionMismatch(f"genus must be >= 0, got {self.genus}")

    @property
    def dim(self):
        return 2

    def _betti(self):
        return [1, 2 * self.genus, 1]

    def __str__(self):
        return f"Sigma({self.genus})"


@dataclass(frozen=True)
class Product(ManifoldExpr):
    factors: tuple[ManifoldExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise DimensionMismatch("a product needs at least two factors")

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    @property
    def compact(self):
        return all(f.compact for f in self.factors)

    @property
    def connected(self):
        return all(f.connected for f in self.factors)

    def _betti(self):
        out = [1]
        for f in self.factors:
            out = kunneth(out, z2_betti(f))
        return out

    def _child_text(self):
        return f"({self})"

    def __str__(self):
        return "x".join(f._child_text() for f in self.factors)


@dataclass(frozen=True)
class ConnectedSum(ManifoldExpr):
    pieces: tuple[ManifoldExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise DimensionMismatch("a connected sum needs at least one piece")
        dims = {p.dim for p in self.pieces}
        if len(dims) != 1:
            raise DimensionMismatch(f"connected sum of pieces with dimensions {sorted(dims)}")
        (k,) = dims
        if k < 2:
            raise DimensionMismatch("connected sums need dimension >= 2")
        for p in self.pieces:
            if not p.compact:
                raise NonCompact(f"connected sum piece {p} is not compact")
            if not p.connected:
                raise DimensionMismatch(f"connected sum piece {p} is not connected")

    @property
    def dim(self):
        return self.pieces[0].dim

    def _betti(self):
        k = self.dim
        out = [1] + [0] * (k - 1) + [1]
        for p in self.pieces:
            b = z2_betti(p)
            for i in range(1, k):
                out[i] += b[i]
        return out

    def _child_text(self):
        return f"({self})"

    def __str__(self):
        return " # ".join(p._child_text() for p in self.pieces)


@dataclass(frozen=True)
class Custom(ManifoldExpr):
    """A manifold described only by its data, for inputs outside the other constructors."""

    k: int
    betti: tuple[int, ...]
    is_compact: bool = True
    is_connected: bool = True
    parallelizable: Tri = Tri.UNKNOWN

    def __post_init__(self):
        object.__setattr__(self, "betti", tuple(self.betti))
        object.__setattr__(self, "parallelizable", Tri.of(self.parallelizable))
        b = self.betti
        if self.k < 1:
            raise DimensionMismatch(f"dimension must be >= 1, got {self.k}")
        if len(b) != self.k + 1:
            raise DimensionMismatch(f"expected {self.k + 1} Betti numbers, got {len(b)}")
        if any(x < 0 for x in b) or b[0] < 1:
            raise DimensionMismatch("Betti numbers must be nonnegative with b0 >= 1")
        if self.is_connected and b[0] != 1:
            raise DimensionMismatch("a connected manifold has b0 = 1")
        if self.is_compact and list(b) != list(reversed(b)):
            raise DimensionMismatch(f"closed manifold Betti vector {list(b)} is not palindromic")

    @property
    def dim(self):
        return self.k

    @property
    def compact(self):
        return self.is_compact

    @property
    def connected(self):
        return self.is_connected

    def _betti(self):
        return list(self.betti)

    def __str__(self):
        flag = lambda v: "true" if v else "false"
        return (
            f"custom({self.k};{','.join(map(str, self.betti))};{flag(self.is_compact)};"
            f"{flag(self.is_connected)};{self.parallelizable.value})"
        )


def connected_sum(*pieces: ManifoldExpr) -> ManifoldExpr:
    """Connected sum, flattening nested sums; a single piece is returned as is."""
    flat = []
    for p in pieces:
        flat.extend(p.pieces if isinstance(p, ConnectedSum) else [p])
    if len(flat) == 1:
        return flat[0]
    return ConnectedSum(tuple(flat))


def product(*factors: ManifoldExpr) -> ManifoldExpr:
    flat = []
    for f in factors:
        flat.extend(f.factors if isinstance(f, Product) else [f])
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def summands(m: ManifoldExpr) -> list[ManifoldExpr]:
    """Pieces of a connected sum, nested sums flattened; [m] otherwise."""
    if not isinstance(m, ConnectedSum):
        return [m]
    return [q for p in m.pieces for q in summands(p)]


def factors(m: ManifoldExpr) -> list[ManifoldExpr]:
    if not isinstance(m, Product):
        return [m]
    return [q for f in m.factors for q in factors(f)]


# --------------------------------------------------------------------------
# homology


def kunneth(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Betti vector of a product over a field: the convolution of the factors'."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def z2_betti(m: ManifoldExpr) -> list[int]:
    if not m.compact:
        raise NonCompact(f"{m} is not compact")
    return m._betti()


def euler_characteristic(m: ManifoldExpr) -> int:
    return sum((-1) ** i * b for i, b in enumerate(z2_betti(m)))


def semicharacteristic(m: ManifoldExpr) -> int:
    """Sum of the Z2 Betti numbers b_0 .. b_{(k-1)/2} of an odd-dimensional closed manifold."""
    if not m.compact:
        raise NonCompact(f"{m} is not compact")
    k = m.dim
    if k % 2 == 0:
        raise EvenDimension(f"semicharacteristic needs odd dimension, {m} has dimension {k}")
    return sum(z2_betti(m)[: (k - 1) // 2 + 1])


def milnor_sum(values: Sequence[int]) -> int:
    """Curvatura integra of a connected sum from those of its pieces."""
    if not values:
        raise EmptyListError("milnor_sum needs at least one value")
    return sum(values) - (len(values) - 1)


@dataclass(frozen=True)
class CurvaturaConstraint:
    """What is known about the curvatura integra of a codimension-one immersion of a k-manifold."""

    kind: str  # "exact", "even" or "free"
    value: int | None
    note: str

    def __str__(self):
        if self.kind == "exact":
            return str(self.value)
        if self.kind == "even":
            return "0 mod 2"
        return self.note


def bredon_kosinski_ci(k: int) -> CurvaturaConstraint:
    if k < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {k}")
    if k % 2 == 0:
        return CurvaturaConstraint("exact", 0, "0")
    if k not in PARALLELIZABLE_SPHERES:
        return CurvaturaConstraint("even", 0, "0 mod 2")
    return CurvaturaConstraint(
        "free", None, "unconstrained; chi* mod 2 for compressions of embeddings"
    )


# --------------------------------------------------------------------------
# parallelizability


def _stably_parallelizable_standard(m: ManifoldExpr) -> bool:
    return isinstance(m, (Sphere, Torus, OrientedSurface, LensSpace))


def parallelizable_reason(m: ManifoldExpr) -> tuple[Tri, str]:
    """Parallelizability with a one-line justification."""
    if isinstance(m, Custom) and m.parallelizable.known:
        return m.parallelizable, "supplied with the custom manifold"
    if isinstance(m, Sphere):
        return Tri.of(m.k in PARALLELIZABLE_SPHERES), "only S1, S3 and S7 are parallelizable spheres"
    if isinstance(m, Torus):
        return Tri.TRUE, "tori are Lie groups"
    if m.dim in (1, 3):
        # Stiefel for closed 3-manifolds; open ones and curves are easier.
        return Tri.TRUE, "orientable manifolds of dimension 1 or 3 are parallelizable"
    if m.dim == 2 and not m.compact and m.connected:
        return Tri.TRUE, "open orientable surfaces are parallelizable"
    if isinstance(m, OrientedSurface):
        return Tri.of(m.genus == 1), "a closed orientable surface is parallelizable iff its Euler characteristic is 0"
    if isinstance(m, Custom) and m.dim == 2 and m.compact and m.connected:
        return Tri.of(m.betti[1] == 2), "a closed orientable surface is parallelizable iff its Euler characteristic is 0"
    if isinstance(m, Product):
        parts = factors(m)
        answers = [parallelizable(f) for f in parts]
        if all(a is Tri.TRUE for a in answers):
            return Tri.TRUE, "product of parallelizable factors"
        if all(_stably_parallelizable_standard(f) for f in parts) and any(
            euler_characteristic(f) == 0 for f in parts
        ):
            # Every factor is stably parallelizable; a factor with a nowhere-zero
            # vector field supplies the trivial line that absorbs the rest. For
            # spheres this is the odd-dimensional-factor rule.
            return Tri.TRUE, "product of spheres, tori, surfaces and lens spaces with a factor of Euler characteristic 0"
        if m.compact and euler_characteristic(m) != 0:
            return Tri.FALSE, "closed manifold with nonzero Euler characteristic has no nowhere-zero vector field"
    return Tri.UNKNOWN, "no rule decides"


def parallelizable(m: ManifoldExpr) -> Tri:
    return parallelizable_reason(m)[0]


# --------------------------------------------------------------------------
# text grammar

_EXPR_TOKEN = re.compile(r"Sigma|custom|true|false|yes|no|unknown|[STLx#(),;]|\d+")


def parse_manifold(text: str) -> ManifoldExpr:
    """Parse e.g. ``"S3"``, ``"T3 # T3"``, ``"Sigma(2) x S1"``, ``"L(4,1)"``.

    ``#`` binds looser than ``x``; parentheses group.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _EXPR_TOKEN.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        tokens.append((m.group(), m.start()))
        pos = m.end()
    return _ExprParser(text, tokens).parse()


class _ExprParser:
    def __init__(self, text, tokens):
        self.text = text
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def where(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def fail(self, message):
        raise ExpressionSyntaxError(message, self.text, self.where())

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            self.fail(f"expected {expected or 'a token'!r}, found {tok or 'end of input'!r}")
        self.i += 1
        return tok

    def number(self):
        tok = self.peek()
        if tok is None or not tok.isdigit():
            self.fail(f"expected a number, found {tok or 'end of input'!r}")
        self.i += 1
        return int(tok)

    def flag(self):
        tok = self.peek()
        if tok not in ("true", "false", "yes", "no", "unknown", "1", "0"):
            self.fail(f"expected a flag, found {tok or 'end of input'!r}")
        self.i += 1
        return Tri.parse(tok)

    def parse(self):
        if not self.tokens:
            self.fail("empty manifold expression")
        expr = self.sum()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return expr

    def sum(self):
        start = self.where()
        pieces = [self.prod()]
        while self.peek() == "#":
            self.take("#")
            pieces.append(self.prod())
        if len(pieces) == 1:
            return pieces[0]
        try:
            return ConnectedSum(tuple(pieces))
        except (DimensionMismatch, NonCompact) as exc:
            raise ExpressionSyntaxError(str(exc), self.text, start) from exc

    def prod(self):
        parts = [self.atom()]
        while self.peek() == "x":
            self.take("x")
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else Product(tuple(parts))

    def atom(self):
        start = self.where()
        tok = self.peek()
        try:
            if tok == "S":
                self.take()
                return Sphere(self.number())
            if tok == "T":
                self.take()
                return Torus(self.number())
            if tok == "L":
                self.take()
                self.take("(")
                p = self.number()
                self.take(",")
                q = self.number()
                self.take(")")
                return LensSpace(p, q)
            if tok == "Sigma":
                self.take()
                self.take("(")
                g = self.number()
                self.take(")")
                return OrientedSurface(g)
            if tok == "custom":
                return self.custom()
        except DimensionMismatch as exc:
            raise ExpressionSyntaxError(str(exc), self.text, start) from exc
        if tok == "(":
            self.take("(")
            inner = self.sum()
            self.take(")")
            return inner
        self.fail(f"expected a manifold, found {tok or 'end of input'!r}")

    def custom(self):
        start = self.where()
        self.take("custom")
        self.take("(")
        k = self.number()
        self.take(";")
        betti = [self.number()]
        while self.peek() == ",":
            self.take(",")
            betti.append(self.number())
        self.take(";")
        compact = self.flag()
        self.take(";")
        connected = self.flag()
        self.take(";")
        par = self.flag()
        self.take(")")
        if not compact.known or not connected.known:
            raise ExpressionSyntaxError("compact and connected flags must be true or false", self.text, start)
        try:
            return Custom(k, tuple(betti), compact is Tri.TRUE, connected is Tri.TRUE, par)
        except DimensionMismatch as exc:
            raise ExpressionSyntaxError(str(exc), self.text, start) from exc
