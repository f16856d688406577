"""Random manifold expressions and embedding contexts."""

from __future__ import annotations

import math
import random

from integrability import corpus
from integrability.engine import EmbeddingContext
from integrability.manifolds import (
    z2_betti,
    ConnectedSum,
    Custom,
    LensSpace,
    OrientedSurface,
    Product,
    Sphere,
    Torus,
)
from integrability.verdicts import Tri

LINKS_BY_COMPONENTS = {
    1: ["unknot", "trefoil", "figure_eight"],
    2: ["hopf", "whitehead", "split_unlink"],
    3: ["borromean"],
}


def random_simple(rng: random.Random, dim: int | None = None):
    """A sphere, torus, lens space or surface, optionally of a given dimension."""
    choices = []
    if dim is None or dim >= 1:
        choices += ["S", "T"]
    if dim in (None, 3):
        choices.append("L")
    if dim in (None, 2):
        choices.append("Sigma")
    kind = rng.choice(choices)
    k = dim if dim is not None else rng.randint(1, 7)
    if kind == "S":
        return Sphere(k)
    if kind == "T":
        return Torus(k)
    if kind == "L":
        p = rng.randint(1, 10)
        q = rng.choice([q for q in range(1, p + 2) if math.gcd(p, q) == 1])
        return LensSpace(p, q)
    return OrientedSurface(rng.randint(0, 4))


def random_product(rng: random.Random, max_dim: int = 8):
    while True:
        parts = [random_simple(rng) for _ in range(rng.randint(2, 3))]
        if sum(p.dim for p in parts) <= max_dim:
            return Product(tuple(parts))


def random_custom(rng: random.Random):
    k = rng.randint(1, 8)
    compact = rng.random() < 0.7
    connected = rng.random() < 0.8
    b0 = 1 if connected else rng.randint(2, 3)
    half = [b0] + [rng.randint(0, 3) for _ in range(k // 2)]
    if compact:
        betti = half + list(reversed(half[: k + 1 - len(half)]))
    else:
        betti = [b0] + [rng.randint(0, 3) for _ in range(k)]
    par = rng.choice([Tri.TRUE, Tri.FALSE, Tri.UNKNOWN])
    return Custom(k, tuple(betti[: k + 1]), compact, connected, par)


def random_manifold(rng: random.Random):
    kind = rng.choice(["simple", "simple", "product", "sum", "custom"])
    if kind == "simple":
        return random_simple(rng)
    if kind == "product":
        return random_product(rng)
    if kind == "sum":
        k = rng.choice([2, 3, 3, 5, 7])
        pieces = [random_simple(rng, k) for _ in range(rng.randint(2, 4))]
        return ConnectedSum(tuple(pieces))
    return random_custom(rng)


def random_context(rng: random.Random) -> EmbeddingContext:
    if rng.random() < 0.1:
        r = rng.choice([1, 2, 3])
        d = corpus.load(rng.choice(LINKS_BY_COMPONENTS[r]))
        return EmbeddingContext.for_link(d)
    m = random_manifold(rng)
    n = rng.randint(m.dim + 1, 2 * m.dim + 4)
    override = rng.choices([Tri.UNKNOWN, Tri.TRUE, Tri.FALSE], weights=[6, 3, 1])[0]
    open_flag = None
    if not m.compact and not m.connected and rng.random() < 0.5:
        open_flag = Tri.TRUE
    diagram = None
    if (m.dim, n) == (1, 3) and m.compact:
        r = z2_betti(m)[0]
        if r in LINKS_BY_COMPONENTS:
            diagram = corpus.load(rng.choice(LINKS_BY_COMPONENTS[r]))
        else:
            n = 4
    return EmbeddingContext(m, n, open_flag, override, diagram)
