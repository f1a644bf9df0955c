"""Headless deterministic driving-simulation backbone and analysis toolkit."""

__version__ = "0.1.0"
