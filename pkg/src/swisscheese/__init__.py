"""Combinatorial workbench for complete graph operads, their Swiss-cheese
plus construction and Hochschild-Pirashvili cochains."""

__version__ = "0.1.0"
