"""Constant-normal sets and semigroups in the free Carnot group of rank 2 and step 3."""

__version__ = "0.1.0"
