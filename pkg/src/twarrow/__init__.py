"""Twisted arrow constructions for finite categories, simplicial sets and simplicial spaces."""

__version__ = "0.1.0"
