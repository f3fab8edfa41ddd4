"""Geodesic motion planners built from explicit decompositions of M x M."""

from .decomposition import build_decomposition
from .ledger import gc_ledger
from .models import ContinuitySweep, Decomposition, GcLedger, Ledger, MotionPlan, Piece, ProbeReport
from .plan import continuity_probe, continuity_sweep, plan, velocity_of

__all__ = [
    "Piece",
    "Ledger",
    "Decomposition",
    "MotionPlan",
    "GcLedger",
    "ProbeReport",
    "ContinuitySweep",
    "build_decomposition",
    "plan",
    "velocity_of",
    "continuity_probe",
    "continuity_sweep",
    "gc_ledger",
]
