"""Simulators and analysis tools for push&pull rumour spreading on graphs."""

__version__ = "0.1.0"
