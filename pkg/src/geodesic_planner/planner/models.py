"""Data models for fibered decompositions and motion plans."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from ..errors import NoPiece
from ..geometry.models import GeodesicSegment
from ..spaces.models import ManifoldPoint, ModelManifold, StratumLabel

Membership = Callable[[ManifoldPoint, ManifoldPoint], bool]
Section = Callable[[ManifoldPoint, ManifoldPoint], GeodesicSegment]
Motion = Callable[[float, np.random.Generator], np.ndarray]


@dataclass(frozen=True)
class Piece:
    """A locally compact subset of M x M with a continuous geodesic section.

    Attributes:
        id: Position in the decomposition; piece 0 is always the off-cut piece.
        description: Short human readable summary.
        membership: Predicate on ordered pairs.
        section: Geodesic from x to y for accepted pairs.
        motion: Draws a real isometry matrix that maps the piece into itself
            and moves every lift by at most radius / sqrt(2). None when any
            near-identity isometry does.
    """

    id: int
    description: str
    membership: Membership = field(repr=False)
    section: Section = field(repr=False)
    motion: Motion | None = field(default=None, repr=False)

    def accepts(self, x: ManifoldPoint, y: ManifoldPoint) -> bool:
        return self.membership(x, y)

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "description": self.description}


@dataclass(frozen=True)
class Ledger:
    """Constructed piece count next to the best known upper bound."""

    constructed_count: int
    reference_bound: int
    note: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "constructed_count": self.constructed_count,
            "reference_bound": self.reference_bound,
            "note": self.note,
        }


@dataclass(frozen=True)
class Decomposition:
    """Ordered partition of M x M into pieces with sections."""

    manifold: ModelManifold
    pieces: tuple[Piece, ...]
    ledger: Ledger

    def accepting(self, x: ManifoldPoint, y: ManifoldPoint) -> tuple[int, ...]:
        """Ids of every piece accepting the pair."""
        return tuple(piece.id for piece in self.pieces if piece.accepts(x, y))

    def locate(self, x: ManifoldPoint, y: ManifoldPoint) -> Piece:
        """The unique piece containing (x, y).

        Raises:
            NoPiece: When zero or several pieces accept the pair.
        """
        accepted = self.accepting(x, y)
        if len(accepted) != 1:
            raise NoPiece(f"{len(accepted)} pieces of {self.manifold.spec} accept the pair", accepted)
        return self.pieces[accepted[0]]

    def to_dict(self) -> dict[str, Any]:
        return {
            "manifold": self.manifold.spec,
            "pieces": [piece.to_dict() for piece in self.pieces],
            "ledger": self.ledger.to_dict(),
        }


@dataclass(frozen=True)
class MotionPlan:
    """A planned geodesic together with its discretized path."""

    manifold: ModelManifold
    x: ManifoldPoint
    y: ManifoldPoint
    stratum: StratumLabel
    piece_id: int
    segment: GeodesicSegment
    samples: list[ManifoldPoint]

    @property
    def distance(self) -> float:
        return self.segment.length

    def sample_array(self) -> np.ndarray:
        return np.stack([pt.coords for pt in self.samples])

    def to_dict(self) -> dict[str, Any]:
        return {
            "manifold": self.manifold.spec,
            "x": self.x.to_list(),
            "y": self.y.to_list(),
            "distance": self.distance,
            "stratum": self.stratum.to_dict(),
            "piece_id": self.piece_id,
            "start": self.segment.start.to_list(),
            "initial_velocity": self.segment.initial_velocity.to_list(),
            "samples": [pt.coords.tolist() for pt in self.samples],
        }


@dataclass(frozen=True)
class GcLedger:
    """Lower bound, constructed count and best known upper bound for GC(M)."""

    lower: int
    upper_constructed: int
    upper_reference: int
    note: str = ""

    @property
    def consistent(self) -> bool:
        """Neither upper bound falls below the lower bound."""
        return self.lower <= min(self.upper_reference, self.upper_constructed)

    @property
    def constructive_gap(self) -> int:
        """Pieces built beyond the known bound; negative when fewer were needed."""
        return self.upper_constructed - self.upper_reference

    def to_dict(self) -> dict[str, Any]:
        return {
            "lower": self.lower,
            "upper_constructed": self.upper_constructed,
            "upper_reference": self.upper_reference,
            "constructive_gap": self.constructive_gap,
            "consistent": self.consistent,
            "note": self.note,
        }


@dataclass(frozen=True)
class ProbeReport:
    """Empirical continuity of a section around a center pair.

    max_velocity_deviation is None when every perturbed pair left the piece,
    so nothing was measured.
    """

    piece_id: int
    radius: float
    samples: int
    max_velocity_deviation: float | None
    escaped_samples: int

    @property
    def retained_samples(self) -> int:
        return self.samples - self.escaped_samples

    @property
    def conclusive(self) -> bool:
        return self.max_velocity_deviation is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "piece_id": self.piece_id,
            "radius": self.radius,
            "samples": self.samples,
            "max_velocity_deviation": self.max_velocity_deviation,
            "escaped_samples": self.escaped_samples,
            "retained_samples": self.retained_samples,
            "conclusive": self.conclusive,
        }


@dataclass(frozen=True)
class ContinuitySweep:
    """Continuity reports for one center pair over increasing radii.

    Attributes:
        piece_id: Piece whose section was measured.
        reports: One report per radius, radii increasing.
        gain: Largest accepted deviation per unit of radius.
        slack: Factor on the radius ratio allowed between consecutive deviations.
        floor: Absolute allowance added to every growth check.
    """

    piece_id: int
    reports: tuple[ProbeReport, ...]
    gain: float
    slack: float
    floor: float

    @property
    def deviations(self) -> list[float] | None:
        """Measured deviations in radius order, None if any report is inconclusive."""
        values = [r.max_velocity_deviation for r in self.reports]
        if any(v is None for v in values):
            return None
        return [float(v) for v in values if v is not None]

    @property
    def conclusive(self) -> bool:
        return self.deviations is not None

    @property
    def bounded(self) -> bool:
        """Every deviation is at most gain times its radius."""
        devs = self.deviations
        if devs is None:
            return False
        return all(d <= self.gain * r.radius for d, r in zip(devs, self.reports))

    @property
    def linear(self) -> bool:
        """Deviations grow no faster than the radii, up to slack and floor."""
        devs = self.deviations
        if devs is None:
            return False
        radii = [r.radius for r in self.reports]
        for i in range(1, len(devs)):
            allowed = radii[i] / radii[i - 1] * self.slack * devs[i - 1] + self.floor
            if devs[i] > allowed:
                return False
        return True

    @property
    def passed(self) -> bool:
        return self.bounded and self.linear

    def to_dict(self) -> dict[str, Any]:
        return {
            "piece_id": self.piece_id,
            "reports": [r.to_dict() for r in self.reports],
            "conclusive": self.conclusive,
            "bounded": self.bounded,
            "linear": self.linear,
        }
