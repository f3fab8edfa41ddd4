"""Numerical verification sweeps for the lens normal domain."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..constants import (
    BOUNDARY_TOL,
    CONSISTENCY_SAMPLES,
    EMPTINESS_SAMPLES,
    TIE_TOL,
    TRIG_MARGIN_TOL,
)
from ..errors import GeodesicPlannerError, InequalityViolation, InvalidInputError, LemmaViolation
from ..geometry.models import UnitVector
from ..spaces.manifolds import classify_pair, distance
from ..spaces.models import ManifoldPoint, ModelManifold, StratumTag
from .domain import (
    Q0,
    BoundaryStratum,
    constraint_set_feasible,
    in_half_space,
    is_allowed_pattern,
    iter_index_sets,
    sigma,
    u_matrix,
)

logger = logging.getLogger(__name__)

STRATUM_KEYS = ("D(1)_1", "D(1)_p-1", "D(p-1)")


@dataclass
class EmptinessReport:
    """Outcome of the boundary-strata emptiness check for one p."""

    p: int
    samples: int
    index_sets_checked: int = 0
    violations: int = 0
    stratum_hits: dict[str, int] = field(default_factory=lambda: dict.fromkeys(STRATUM_KEYS, 0))
    min_margin: float | None = None
    counterexample: list[float] | None = None
    counterexample_indices: list[int] | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "samples": self.samples,
            "index_sets_checked": self.index_sets_checked,
            "violations": self.violations,
            "stratum_hits": dict(self.stratum_hits),
            "min_margin": self.min_margin,
            "counterexample": self.counterexample,
            "counterexample_indices": self.counterexample_indices,
        }


def _record_violation(report: EmptinessReport, point: np.ndarray, indices: tuple[int, ...]) -> None:
    report.violations += 1
    if report.counterexample is None:
        report.counterexample = [float(c) for c in point]
        report.counterexample_indices = list(indices)


def _stratum_key(p: int, indices: tuple[int, ...]) -> str:
    return BoundaryStratum.from_indices(p, indices).label


def verify_emptiness(
    p: int,
    sample_count: int = EMPTINESS_SAMPLES,
    seed: int | np.random.Generator = 0,
    strict: bool = True,
) -> EmptinessReport:
    """Check that only D(1)_1, D(1)_{p-1} and the circle D(p-1) are nonempty.

    Two passes: every candidate index set is solved exactly in the (a, b)
    plane, then uniform samples of S^3 are projected onto each bisector and
    onto the circle and their zero patterns are recorded.

    Args:
        p: Lens parameter, at least 3.
        sample_count: Number of uniform S^3 samples.
        seed: Seed or generator for the samples.
        strict: Raise LemmaViolation instead of returning a failing report.
    """
    if p < 3:
        raise InvalidInputError(f"lens parameter p must be at least 3, got {p}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    report = EmptinessReport(p=p, samples=sample_count)

    for indices in iter_index_sets(p):
        report.index_sets_checked += 1
        feasible = constraint_set_feasible(p, indices)
        if feasible != is_allowed_pattern(p, indices):
            _record_violation(report, np.zeros(4), indices)
            logger.warning("index set %s on p=%d has feasibility %s", indices, p, feasible)

    u = u_matrix(p)
    samples = rng.standard_normal((sample_count, 4))
    samples /= np.linalg.norm(samples, axis=1, keepdims=True)

    projections = []
    for row in u:
        unit = row / np.linalg.norm(row)
        projections.append(samples - np.outer(samples @ unit, unit))
    circle = samples.copy()
    circle[:, :2] = 0.0
    projections.append(circle)

    for proj in projections:
        norms = np.linalg.norm(proj, axis=1)
        keep = norms > BOUNDARY_TOL
        pts = proj[keep] / norms[keep, None]
        inner = pts @ u.T
        closed = np.all(inner > -BOUNDARY_TOL, axis=1)
        for pt, row in zip(pts[closed], inner[closed]):
            zeros = tuple(int(k) + 1 for k in np.nonzero(np.abs(row) <= BOUNDARY_TOL)[0])
            if not is_allowed_pattern(p, zeros):
                _record_violation(report, pt, zeros)
                continue
            report.stratum_hits[_stratum_key(p, zeros)] += 1
            positive = row[np.abs(row) > BOUNDARY_TOL]
            if positive.size:
                low = float(np.min(positive))
                if report.min_margin is None or low < report.min_margin:
                    report.min_margin = low

    logger.info(
        "p=%d: %d index sets, %d samples, %d violations, hits %s",
        p,
        report.index_sets_checked,
        sample_count,
        report.violations,
        report.stratum_hits,
    )
    if strict and report.violations:
        raise LemmaViolation(
            f"forbidden boundary pattern for p={p}",
            report.counterexample or [],
            tuple(report.counterexample_indices or ()),
        )
    return report


@dataclass
class TrigReport:
    """Minimum of (1 - cos 2 phi) / sin 2 phi - tan(pi / p) over the scanned range."""

    p_max: int
    checks: int = 0
    min_margin: float | None = None
    argmin: tuple[int, int] | None = None

    @property
    def passed(self) -> bool:
        return self.min_margin is None or self.min_margin > TRIG_MARGIN_TOL

    def to_dict(self) -> dict[str, Any]:
        return {
            "p_max": self.p_max,
            "checks": self.checks,
            "min_margin": self.min_margin,
            "argmin": list(self.argmin) if self.argmin else None,
        }


def verify_trig_inequality(p_max: int, strict: bool = True) -> TrigReport:
    """Scan every p <= p_max and 2 <= m < p / 2 for the tangent inequality."""
    if p_max < 3:
        raise InvalidInputError(f"p_max must be at least 3, got {p_max}")
    report = TrigReport(p_max=p_max)
    for p in range(3, p_max + 1):
        ms = np.arange(2, (p + 1) // 2)
        ms = ms[2 * ms < p]
        if ms.size == 0:
            continue
        theta = 2.0 * math.pi * ms / p
        margins = (1.0 - np.cos(theta)) / np.sin(theta) - math.tan(math.pi / p)
        report.checks += int(ms.size)
        idx = int(np.argmin(margins))
        if report.min_margin is None or float(margins[idx]) < report.min_margin:
            report.min_margin = float(margins[idx])
            report.argmin = (p, int(ms[idx]))
    logger.info("trig scan to p=%d: %d checks, min margin %s at %s", p_max, report.checks, report.min_margin, report.argmin)
    if strict and not report.passed:
        assert report.argmin is not None and report.min_margin is not None
        p, m = report.argmin
        raise InequalityViolation(f"tangent inequality fails at p={p}, m={m}", p, m, report.min_margin)
    return report


@dataclass
class ConsistencyReport:
    """Cross-checks between the normal domain and the lens classifier."""

    p: int
    samples: int
    half_space_disagreements: int = 0
    c1_misclassified: int = 0
    circle_misclassified: int = 0

    @property
    def passed(self) -> bool:
        return not (self.half_space_disagreements or self.c1_misclassified or self.circle_misclassified)

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "samples": self.samples,
            "half_space_disagreements": self.half_space_disagreements,
            "c1_misclassified": self.c1_misclassified,
            "circle_misclassified": self.circle_misclassified,
        }


def _classified_as(manifold: ModelManifold, x: ManifoldPoint, coords: np.ndarray, tag: StratumTag) -> bool:
    y = ManifoldPoint.from_coords(manifold, coords)
    try:
        return classify_pair(manifold, x, y, TIE_TOL).tag is tag
    except GeodesicPlannerError:
        return False


def check_consistency(
    p: int,
    sample_count: int = CONSISTENCY_SAMPLES,
    seed: int | np.random.Generator = 0,
) -> ConsistencyReport:
    """Agreement of the half-space test, boundary strata and pair classification.

    Samples whose sphere-distance gap is below 1e-9 are skipped in the
    half-space comparison.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    report = ConsistencyReport(p=p, samples=sample_count)
    manifold = ModelManifold.lens(p)

    # half-space membership against the distance comparison
    for _ in range(sample_count):
        q, r, v = (UnitVector.normalized(rng.standard_normal(4)) for _ in range(3))
        dq = math.acos(max(-1.0, min(1.0, v.dot(q))))
        dr = math.acos(max(-1.0, min(1.0, v.dot(r))))
        if abs(dq - dr) <= TIE_TOL:
            continue
        if in_half_space(q.coords, r.coords, v.coords) != (dq < dr):
            report.half_space_disagreements += 1

    x = ManifoldPoint.from_coords(manifold, Q0)
    s1 = sigma(p, 1)
    for _ in range(sample_count):
        a = rng.uniform(0.05, 1.0)
        tail = rng.standard_normal(2)
        if not _classified_as(manifold, x, np.array([a, s1 * a, tail[0], tail[1]]), StratumTag.LENS_C1):
            report.c1_misclassified += 1
        theta = rng.uniform(0.0, 2.0 * math.pi)
        circle = np.array([0.0, 0.0, math.cos(theta), math.sin(theta)])
        if not _classified_as(manifold, x, circle, StratumTag.LENS_CP_MINUS_1):
            report.circle_misclassified += 1
        elif abs(distance(manifold, x, ManifoldPoint.from_coords(manifold, circle)) - math.pi / 2.0) > TIE_TOL:
            report.circle_misclassified += 1

    logger.info("consistency p=%d: %s", p, report.to_dict())
    return report
