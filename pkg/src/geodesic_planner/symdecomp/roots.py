"""Restricted root data and the index sets of the cut-locus decomposition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..constants import ROOT_RANK_TOL
from ..errors import DegenerateRootData, IndexOutOfRange, InvalidInputError


@dataclass(frozen=True, eq=False)
class RootSystemInput:
    """Simple roots and highest root of a restricted root system.

    Attributes:
        simple_roots: (r, r) array, one simple root per row.
        highest_root: Highest root as a vector in R^r.
        labels: One label per simple root.
    """

    simple_roots: np.ndarray
    highest_root: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        roots = np.atleast_2d(np.array(self.simple_roots, dtype=float))
        delta = np.array(self.highest_root, dtype=float).reshape(-1)
        r = roots.shape[0]
        if r < 1 or roots.shape != (r, r) or delta.shape != (r,):
            raise InvalidInputError(
                f"need r simple roots in R^r and a highest root in R^r, got {roots.shape} and {delta.shape}"
            )
        if np.linalg.matrix_rank(roots, tol=ROOT_RANK_TOL) != r:
            raise DegenerateRootData("simple roots are linearly dependent")
        labels = tuple(self.labels) or tuple(f"a{i + 1}" for i in range(r))
        if len(labels) != r or len(set(labels)) != r:
            raise InvalidInputError(f"need {r} distinct labels, got {labels}")
        object.__setattr__(self, "simple_roots", roots)
        object.__setattr__(self, "highest_root", delta)
        object.__setattr__(self, "labels", labels)
        if np.any(self.highest_coefficients < -ROOT_RANK_TOL):
            raise InvalidInputError(f"highest root has negative coefficients {self.highest_coefficients}")

    @property
    def rank(self) -> int:
        return int(self.simple_roots.shape[0])

    @property
    def highest_coefficients(self) -> np.ndarray:
        """Coefficients of the highest root over the simple roots."""
        return np.linalg.solve(self.simple_roots.T, self.highest_root)

    @property
    def simple_highest_label(self) -> str | None:
        """Label of the simple root equal to the highest root, if any."""
        for label, root in zip(self.labels, self.simple_roots):
            if np.allclose(root, self.highest_root, atol=ROOT_RANK_TOL):
                return label
        return None

    def root(self, label: str) -> np.ndarray:
        try:
            return self.simple_roots[self.labels.index(label)]
        except ValueError as exc:
            raise IndexOutOfRange(f"unknown simple root {label!r}") from exc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> RootSystemInput:
        """Build from {"simple_roots": [[...]], "highest_root": [...], "labels": [...]}."""
        try:
            return cls(
                simple_roots=np.array(doc["simple_roots"], dtype=float),
                highest_root=np.array(doc["highest_root"], dtype=float),
                labels=tuple(doc.get("labels", ())),
            )
        except KeyError as exc:
            raise InvalidInputError(f"root data is missing {exc.args[0]!r}") from exc

    def to_dict(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "labels": list(self.labels),
            "simple_roots": self.simple_roots.tolist(),
            "highest_root": self.highest_root.tolist(),
        }


@dataclass(frozen=True)
class DeltaSubset:
    """A nonempty set of simple roots indexing one face of the cut-locus polytope."""

    members: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise InvalidInputError("index set must be nonempty")

    @property
    def cardinality(self) -> int:
        return len(self.members)


def enumerate_D(rs: RootSystemInput) -> list[DeltaSubset]:
    """All nonempty sets of simple roots not containing the highest root.

    In rank one the single simple root is kept even when it is the highest
    root, giving exactly one set.
    """
    if rs.rank == 1:
        return [DeltaSubset(rs.labels)]
    excluded = rs.simple_highest_label
    usable = [label for label in rs.labels if label != excluded]
    return [
        DeltaSubset(combo)
        for size in range(1, len(usable) + 1)
        for combo in itertools.combinations(usable, size)
    ]


def group_by_cardinality(subsets: list[DeltaSubset]) -> dict[int, list[DeltaSubset]]:
    groups: dict[int, list[DeltaSubset]] = {}
    for subset in subsets:
        groups.setdefault(subset.cardinality, []).append(subset)
    return dict(sorted(groups.items()))


def s_delta_dim(rs: RootSystemInput, subset: DeltaSubset) -> int:
    """Dimension of the face {X : <g, X> = 0 for g not in subset, 2 <delta, X> = 1}.

    Raises:
        DegenerateRootData: When the constraint rank differs from r - |subset| + 1
            or the affine system has no solution.
    """
    for label in subset.members:
        rs.root(label)
    if rs.rank > 1 and rs.simple_highest_label in subset.members:
        raise InvalidInputError("index set contains the highest root")
    vanishing = [root for label, root in zip(rs.labels, rs.simple_roots) if label not in subset.members]
    rows = np.array([*vanishing, 2.0 * rs.highest_root])
    rhs = np.zeros(rows.shape[0])
    rhs[-1] = 1.0
    expected = rs.rank - subset.cardinality + 1
    rank = int(np.linalg.matrix_rank(rows, tol=ROOT_RANK_TOL))
    if rank != expected:
        raise DegenerateRootData(f"constraint rank {rank} differs from the generic count {expected}")
    solution, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    if not np.allclose(rows @ solution, rhs, atol=ROOT_RANK_TOL):
        raise DegenerateRootData("face equations are inconsistent")
    return rs.rank - rank


def root_system(kind: str, rank: int) -> RootSystemInput:
    """Standard simple roots and highest root of a classical restricted root system.

    Args:
        kind: One of "A", "B", "C", "BC".
        rank: Rank r >= 1.
    """
    kind = kind.upper()
    if rank < 1:
        raise InvalidInputError(f"rank must be positive, got {rank}")
    eye = np.eye(rank)
    if kind == "A":
        gram = 2.0 * np.eye(rank) - np.eye(rank, k=1) - np.eye(rank, k=-1)
        roots = np.linalg.cholesky(gram)
        return RootSystemInput(roots, roots.sum(axis=0))
    if kind not in ("B", "C", "BC"):
        raise InvalidInputError(f"unknown root system type {kind!r}")
    roots = np.array([eye[i] - eye[i + 1] for i in range(rank - 1)] + [eye[rank - 1]])
    if kind == "C":
        roots[-1] = 2.0 * eye[rank - 1]
        return RootSystemInput(roots, 2.0 * eye[0])
    if kind == "BC":
        return RootSystemInput(roots, 2.0 * eye[0])
    highest = eye[0] + eye[1] if rank >= 2 else eye[0]
    return RootSystemInput(roots, highest)
