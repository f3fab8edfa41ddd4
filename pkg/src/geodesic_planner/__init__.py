"""Geodesic Planner - cut loci and geodesic motion planners for model spaces."""

__version__ = "0.1.0"
