"""Dynamics of shift spaces and their induced maps on finite hyperspace points."""

__version__ = "0.1.0"
