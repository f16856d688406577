"""Integrability of submanifolds of Euclidean space: link invariants, manifold
algebra and a cited rule engine for WI/SI/CI/TWI verdicts."""

from .diagram import (
    CrossingRecord,
    LinkDiagram,
    MoveKind,
    MoveSpec,
    Passage,
    Role,
    apply_move,
    parse_gauss,
    serialize_gauss,
)
from .engine import (
    DualGraph,
    EmbeddingContext,
    alternating_orientation,
    ci_verdict,
    classify,
    critical_verdict,
    homotopy_classes,
    leaf_verdict,
    normal_bundle_trivial,
    si_verdict,
    stiefel_pi,
    twi_verdict,
    wi_verdict,
)
from .invariants import (
    curvatura_integra_mod2,
    linking_matrix,
    relative_class,
    seifert_circles,
    seifert_normal_class,
    si_link_verdict,
    whitney_number,
)
from .manifolds import (
    ConnectedSum,
    Custom,
    LensSpace,
    OrientedSurface,
    Product,
    Sphere,
    Torus,
    bredon_kosinski_ci,
    milnor_sum,
    parallelizable,
    parse_manifold,
    semicharacteristic,
    z2_betti,
)
from .verdicts import PropertyVerdict, Tri, Verdict

__version__ = "0.1.0"
