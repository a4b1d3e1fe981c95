"""Numerical laboratory for nonexpansive mappings on unbounded geodesic spaces."""

from hyplab._hyplab import *  # noqa: F401,F403
