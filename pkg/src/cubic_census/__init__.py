"""Exhaustive verification of intersection counts for plane conics and cubics over finite fields."""

__version__ = "0.1.0"
