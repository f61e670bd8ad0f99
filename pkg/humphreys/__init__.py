"""Humphreys support-variety predictor and co-t-structure engine."""

__version__ = "1.0.0"
