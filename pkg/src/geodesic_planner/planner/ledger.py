"""Known bounds on geodesic complexity next to the constructed piece counts."""

from __future__ import annotations

from ..spaces.models import ManifoldKind, ModelManifold
from .decomposition import build_decomposition
from .models import GcLedger


def topological_complexity(manifold: ModelManifold) -> int:
    """Non-reduced TC, a lower bound for GC.

    TC(S^n) is 2 for odd n and 3 for even n; TC(CP^n) = TC(HP^n) = 2n + 1;
    TC(L(p;1)) = 6.
    """
    if manifold.kind is ManifoldKind.SPHERE:
        return 2 if manifold.n % 2 == 1 else 3
    if manifold.is_projective:
        return 2 * manifold.n + 1
    return 6


def gc_ledger(manifold: ModelManifold) -> GcLedger:
    """Lower bound, constructed piece count and best known upper bound."""
    decomposition = build_decomposition(manifold)
    constructed = len(decomposition.pieces)
    lower = topological_complexity(manifold)
    reference = decomposition.ledger.reference_bound
    if constructed > reference:
        note = f"constructive gap: {constructed} pieces built, {reference} known to suffice"
    elif constructed < reference:
        note = (
            f"{constructed} pieces built, below the known bound {reference}; "
            "continuity of the extra sections is validated numerically only"
        )
    else:
        note = "constructed count matches the known bound"
    return GcLedger(lower=lower, upper_constructed=constructed, upper_reference=reference, note=note)
