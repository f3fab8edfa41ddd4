"""Run configuration for the command-line front end."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any

from .constants import (
    CONSISTENCY_SAMPLES,
    CONTINUITY_RADII,
    CONTINUITY_SAMPLES,
    DEFAULT_GRID_SIZE,
    DEFAULT_SEED,
    EMPTINESS_SAMPLES,
    LAND_TOL,
    PATH_SAMPLES,
    TIE_TOL,
    TRIG_P_MAX,
)


@dataclass
class RunConfig:
    """Effective settings of one command invocation.

    Built from parsed flags only; unspecified fields keep their defaults.

    Attributes:
        command: Subcommand name.
        manifold: Manifold spec string, when the command takes one.
        tie_tol: Tolerance for minimizer ties.
        land_tol: Oracle landing tolerance.
        seed: Seed for every random draw of the run.
        samples: Path samples per plan.
        grid_size: Oracle tangent grid size.
        emptiness_samples: S^3 samples for the emptiness sweep.
        consistency_samples: Samples for the cross-module consistency check.
        trig_p_max: Largest p of the tangent inequality scan.
        continuity_samples: Perturbed pairs per radius for the continuity sweep.
        radii: Perturbation radii of the continuity sweep.
        output: JSON destination, stdout when None.
        csv: CSV destination for plan samples.
    """

    command: str
    manifold: str | None = None
    tie_tol: float = TIE_TOL
    land_tol: float = LAND_TOL
    seed: int = DEFAULT_SEED
    samples: int = PATH_SAMPLES
    grid_size: int = DEFAULT_GRID_SIZE
    emptiness_samples: int = EMPTINESS_SAMPLES
    consistency_samples: int = CONSISTENCY_SAMPLES
    trig_p_max: int = TRIG_P_MAX
    continuity_samples: int = CONTINUITY_SAMPLES
    radii: tuple[float, ...] = CONTINUITY_RADII
    output: Path | None = None
    csv: Path | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        """Take every field the namespace carries and default the rest."""
        values = {f.name: getattr(args, f.name) for f in fields(cls) if getattr(args, f.name, None) is not None}
        if "manifold" not in values and getattr(args, "p", None) is not None:
            values["manifold"] = f"lens{args.p}"
        return cls(**values)

    def effective(self) -> dict[str, Any]:
        """Settings echoed into every emitted document."""
        doc: dict[str, Any] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            doc[f.name] = str(value) if isinstance(value, Path) else value
        return doc
