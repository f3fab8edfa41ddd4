"""Dirichlet-domain machinery for the lens spaces L(p;1)."""

from .domain import (
    BoundaryStratum,
    DeckAction,
    DomainMembership,
    DomainRegion,
    constraint_set_feasible,
    covering_degree,
    in_half_space,
    in_normal_domain,
    sigma,
    u_vector,
)
from .verify import check_consistency, verify_emptiness, verify_trig_inequality

__all__ = [
    "DeckAction",
    "BoundaryStratum",
    "DomainRegion",
    "DomainMembership",
    "u_vector",
    "sigma",
    "in_normal_domain",
    "in_half_space",
    "covering_degree",
    "constraint_set_feasible",
    "verify_emptiness",
    "verify_trig_inequality",
    "check_consistency",
]
